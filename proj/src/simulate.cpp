#include "wpg/simulate.hpp"

#include <atomic>
#include <cmath>

#include "wpg/boundary.hpp"
#include "wpg/rng.hpp"

namespace wpg {

std::string ProcessSpec::name() const {
  switch (kind) {
    case Kind::Bernoulli: return "bernoulli(theta=" + std::to_string(theta) + ")";
    case Kind::Polya: return "polya(a=" + std::to_string(a) + ",b=" + std::to_string(b) + ")";
    case Kind::Friedman: return "friedman(a=" + std::to_string(a) + ",b=" + std::to_string(b) + ")";
    case Kind::Crp:
      return "crp(alpha=" + std::to_string(alpha) + ",theta=" + std::to_string(theta) + ")";
    case Kind::CrpGamma: return "crp_gamma(gamma=" + std::to_string(gamma) + ")";
    case Kind::Stirling1: return "stirling1(theta=" + std::to_string(theta) + ")";
    case Kind::SpaceTimeWalk: return "spacetime(a=" + a_seq.describe() + ",theta=" + std::to_string(theta) + ")";
    case Kind::Stirling2Theta:
      return "stirling2(b=" + b_seq.describe() + ",theta=" + std::to_string(theta) + ")";
    case Kind::QPascalExtreme:
      return "qpascal_qm(q=" + std::to_string(q) + ",m=" + std::to_string(m) + ")";
    case Kind::QPolya:
      return "qpolya(q=" + std::to_string(q) + ",alpha=" + std::to_string(qp_alpha) +
             ",beta=" + std::to_string(qp_beta) + ")";
  }
  return "?";
}

namespace {

double checked_p(double p, const char* what, int h, int t) {
  if (!(p >= -1e-12) || !(p <= 1.0 + 1e-12))
    raise(errc::kernel_out_of_support, std::string(what) + ": head probability " +
                                           std::to_string(p) + " at (" + std::to_string(h) + "," +
                                           std::to_string(t) + ")");
  return p < 0 ? 0.0 : (p > 1 ? 1.0 : p);
}

}  // namespace

TransitionKernel<double> process_kernel(const ProcessSpec& spec) {
  TransitionKernel<double> k;
  k.name = spec.name();
  switch (spec.kind) {
    case ProcessSpec::Kind::Bernoulli: {
      if (spec.theta < 0) raise(errc::invalid_parameter, "theta must be >= 0");
      double p = spec.theta / (1.0 + spec.theta);
      k.p = [p](int, int) { return p; };
      break;
    }
    case ProcessSpec::Kind::Polya: {
      if (spec.a <= 0 || spec.b <= 0) raise(errc::invalid_parameter, "Polya needs a,b > 0");
      double a = spec.a, b = spec.b;
      k.p = [a, b](int h, int t) { return (h + a) / (h + t + a + b); };
      break;
    }
    case ProcessSpec::Kind::Friedman: {
      if (spec.a <= 0 || spec.b <= 0) raise(errc::invalid_parameter, "Friedman needs a,b > 0");
      double a = spec.a, b = spec.b;
      k.p = [a, b](int h, int t) { return (t + a) / (h + t + a + b); };
      break;
    }
    case ProcessSpec::Kind::Crp: {
      double al = spec.alpha, th = spec.theta;
      if (al >= 1) raise(errc::invalid_parameter, "CRP requires alpha < 1");
      if (al >= 0 && th < 0) raise(errc::invalid_parameter, "CRP requires theta >= 0 for alpha >= 0");
      if (al < 0) {
        double ratio = -th / al;
        if (ratio < 0.5 || std::abs(ratio - std::round(ratio)) > 1e-9)
          raise(errc::invalid_parameter, "CRP with alpha < 0 requires -theta/alpha a positive integer");
        k.support = Support::heads_at_most(static_cast<int>(std::round(ratio)) - 1);
      }
      k.p = [al, th](int h, int t) {
        return checked_p((th + al * (h + 1)) / (h + t + 1 + th), "crp", h, t);
      };
      break;
    }
    case ProcessSpec::Kind::CrpGamma: {
      double g = spec.gamma;
      if (!(g > 0 && g < 1)) raise(errc::invalid_parameter, "gamma-CRP requires 0 < gamma < 1");
      k.p = [g](int h, int t) {
        double n1 = h + t + 1.0;
        return (h + 1.0) * (h + 1.0 - g) / (n1 * (n1 + g));
      };
      break;
    }
    case ProcessSpec::Kind::Stirling1: {
      if (spec.theta < 0) raise(errc::invalid_parameter, "theta must be >= 0");
      double th = spec.theta;
      k.p = [th](int h, int t) { return th / (th + h + t + 1.0); };
      break;
    }
    case ProcessSpec::Kind::SpaceTimeWalk: {
      if (spec.theta <= 0) raise(errc::invalid_parameter, "theta must be > 0");
      double th = spec.theta;
      SeqSpec as = spec.a_seq;
      k.p = [th, as](int h, int t) {
        double a = as.eval<double>(h + t);
        if (a <= 0) raise(errc::kernel_out_of_support, "a_n <= 0 at level " + std::to_string(h + t));
        return th / (th + a);
      };
      break;
    }
    case ProcessSpec::Kind::Stirling2Theta: {
      if (spec.theta <= 0) raise(errc::invalid_parameter, "theta must be > 0");
      double th = spec.theta;
      SeqSpec bs = spec.b_seq;
      k.p = [th, bs](int h, int t) {
        return checked_p((th - bs.eval<double>(h)) / th, "stirling2", h, t);
      };
      break;
    }
    case ProcessSpec::Kind::QPascalExtreme: {
      if (!(spec.q > 0 && spec.q < 1)) raise(errc::invalid_parameter, "requires 0 < q < 1");
      if (spec.m < 0) raise(errc::invalid_parameter, "m must be >= 0");
      double q = spec.q;
      int m = spec.m;
      k.support = Support::tails_at_most(m);
      k.p = [q, m](int h, int t) {
        if (t > m)
          raise(errc::kernel_out_of_support,
                "qpascal extreme reached t=" + std::to_string(t) + " > m");
        (void)h;
        return std::pow(q, m - t);
      };
      break;
    }
    case ProcessSpec::Kind::QPolya: {
      if (!(spec.q > 0) || spec.q == 1.0) raise(errc::invalid_parameter, "q-Polya requires q > 0, q != 1");
      if (spec.qp_alpha < 1 || spec.qp_beta < 1)
        raise(errc::invalid_parameter, "q-Polya requires integer alpha, beta >= 1");
      double q = spec.q;
      long a = spec.qp_alpha, b = spec.qp_beta;
      auto bracket = [q](long mm) { return (1.0 - std::pow(q, static_cast<double>(mm))) / (1.0 - q); };
      k.p = [q, a, b, bracket](int h, int t) { return bracket(a + h) / bracket(a + b + h + t); };
      break;
    }
  }
  k.q = [p = k.p](int h, int t) { return 1.0 - p(h, t); };
  return k;
}

namespace {

// Runs `reps` independent chains; fn(rep, rng) must be thread-safe and write
// only to replicate-indexed slots. Failures inside the region are collected
// and rethrown so OpenMP never unwinds across the parallel boundary.
template <class Fn>
void for_each_replicate(long long reps, uint64_t seed, bool parallel, Fn&& fn) {
  std::atomic<bool> failed{false};
  std::string message;
#pragma omp parallel for schedule(static) if (parallel)
  for (long long r = 0; r < reps; ++r) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      Xoshiro256pp rng(seed, static_cast<uint64_t>(r));
      fn(r, rng);
    } catch (const std::exception& e) {
#pragma omp critical
      {
        failed.store(true, std::memory_order_relaxed);
        message = e.what();
      }
    }
  }
  if (failed.load()) raise(errc::kernel_out_of_support, message);
}

}  // namespace

EndpointHistogram sample_paths(const TransitionKernel<double>& kernel, int n, long long reps,
                               uint64_t seed, bool parallel) {
  if (n < 1 || reps < 1) raise(errc::invalid_parameter, "need n >= 1 and reps >= 1");
  EndpointHistogram hist;
  hist.n = n;
  hist.total = reps;
  hist.counts.assign(static_cast<size_t>(n) + 1, 0);
  std::vector<long long> endpoint(static_cast<size_t>(reps), 0);
  for_each_replicate(reps, seed, parallel, [&](long long r, Xoshiro256pp& rng) {
    int h = 0, t = 0;
    for (int step = 0; step < n; ++step) {
      if (rng.bernoulli(kernel.p(h, t)))
        ++h;
      else
        ++t;
    }
    endpoint[static_cast<size_t>(r)] = h;
  });
  for (long long h : endpoint) ++hist.counts[static_cast<size_t>(h)];
  return hist;
}

std::vector<long long> sample_path_bitmasks(const TransitionKernel<double>& kernel, int n,
                                            long long reps, uint64_t seed, bool parallel) {
  if (n < 1 || n > 20) raise(errc::invalid_parameter, "full-path census needs 1 <= n <= 20");
  std::vector<long long> counts(static_cast<size_t>(1) << n, 0);
  std::vector<uint32_t> masks(static_cast<size_t>(reps), 0);
  for_each_replicate(reps, seed, parallel, [&](long long r, Xoshiro256pp& rng) {
    int h = 0, t = 0;
    uint32_t mask = 0;
    for (int step = 0; step < n; ++step) {
      if (rng.bernoulli(kernel.p(h, t))) {
        mask |= (1u << step);
        ++h;
      } else {
        ++t;
      }
    }
    masks[static_cast<size_t>(r)] = mask;
  });
  for (uint32_t m : masks) ++counts[m];
  return counts;
}

std::vector<double> exact_path_probabilities(const TransitionKernel<double>& kernel, int n) {
  if (n < 1 || n > 20) raise(errc::invalid_parameter, "need 1 <= n <= 20");
  std::vector<double> probs(static_cast<size_t>(1) << n, 0.0);
  for (uint32_t mask = 0; mask < probs.size(); ++mask) {
    double p = 1.0;
    int h = 0, t = 0;
    bool ok = true;
    for (int step = 0; step < n && ok && p > 0; ++step) {
      try {
        double ph = kernel.p(h, t);
        if (mask & (1u << step)) {
          p *= ph;
          ++h;
        } else {
          p *= 1.0 - ph;
          ++t;
        }
      } catch (const Error&) {
        ok = false;  // state unreachable under this kernel
      }
    }
    probs[mask] = ok ? p : 0.0;
  }
  return probs;
}

GofReport empirical_vs_exact(const EndpointHistogram& hist, const std::vector<double>& exact_pmf,
                             double alpha) {
  if (static_cast<int>(exact_pmf.size()) != hist.n + 1)
    raise(errc::horizon_mismatch, "exact pmf must cover h = 0..n");
  return goodness_of_fit(hist.counts, exact_pmf, alpha);
}

LlnReport lln_diagnostic(const ProcessSpec& spec, Scaler scaler, double pow_alpha, int n,
                         long long reps, uint64_t seed, bool parallel) {
  if (n < 1 || reps < 1) raise(errc::invalid_parameter, "need n >= 1 and reps >= 1");
  double sc = 1.0;
  switch (scaler) {
    case Scaler::N: sc = static_cast<double>(n); break;
    case Scaler::LogN: sc = std::log(static_cast<double>(n)); break;
    case Scaler::PowAlpha: sc = std::pow(static_cast<double>(n), pow_alpha); break;
  }
  if (!(sc > 0)) raise(errc::invalid_parameter, "scaler must be positive at n");
  auto kernel = process_kernel(spec);
  LlnReport rep;
  rep.values.assign(static_cast<size_t>(reps), 0.0);
  for_each_replicate(reps, seed, parallel, [&](long long r, Xoshiro256pp& rng) {
    int h = 0, t = 0;
    for (int step = 0; step < n; ++step) {
      if (rng.bernoulli(kernel.p(h, t)))
        ++h;
      else
        ++t;
    }
    rep.values[static_cast<size_t>(r)] = static_cast<double>(h) / sc;
  });
  rep.mean = mean_of(rep.values);
  rep.sd = sd_of(rep.values);
  if (spec.kind == ProcessSpec::Kind::Stirling1) {
    double s = 0;
    for (int j = 0; j < n; ++j) s += spec.theta / (spec.theta + j + 1.0);
    rep.exact_mean_hn = s;
  }
  return rep;
}

ZEstimate z_estimate(const SeqSpec& a_spec, double theta, int n, long long reps, uint64_t seed,
                     bool parallel) {
  if (theta <= 0) raise(errc::invalid_parameter, "theta must be > 0");
  if (n < 1 || reps < 1) raise(errc::invalid_parameter, "need n >= 1 and reps >= 1");
  ClassifyResult cls = classify_gstirling1(a_spec, 64);
  if (cls.verdict == BoundaryClass::Continuous)
    raise(errc::divergent_case, "Z does not stabilize: " + cls.reason);
  if (cls.verdict == BoundaryClass::Inconclusive)
    raise(errc::truncation_failure, "cannot certify convergence: " + cls.reason);
  std::vector<double> p(static_cast<size_t>(n));
  long m_count = 0;
  for (int j = 0; j < n; ++j) {
    double a = a_spec.eval<double>(j);
    if (a <= 0) raise(errc::invalid_parameter, "a_n must be positive");
    p[static_cast<size_t>(j)] = theta / (theta + a);
    if (p[static_cast<size_t>(j)] > 0.5) ++m_count;
  }
  std::vector<long> z(static_cast<size_t>(reps), 0);
  for_each_replicate(reps, seed, parallel, [&](long long r, Xoshiro256pp& rng) {
    long heads = 0;
    for (int j = 0; j < n; ++j)
      if (rng.bernoulli(p[static_cast<size_t>(j)])) ++heads;
    z[static_cast<size_t>(r)] = heads - m_count;
  });
  ZEstimate est;
  est.z_min = -m_count;
  est.counts.assign(static_cast<size_t>(n) + 1, 0);
  est.total = reps;
  for (long v : z) ++est.counts[static_cast<size_t>(v - est.z_min)];
  while (est.counts.size() > 1 && est.counts.back() == 0) est.counts.pop_back();
  return est;
}

CrpSample crp_sample(double alpha, double theta, int n, uint64_t seed, uint64_t stream) {
  if (n < 1) raise(errc::invalid_parameter, "n must be >= 1");
  if (alpha >= 1) raise(errc::invalid_parameter, "CRP requires alpha < 1");
  if (alpha >= 0 && theta < 0) raise(errc::invalid_parameter, "theta must be >= 0");
  if (alpha < 0) {
    double ratio = -theta / alpha;
    if (ratio < 0.5 || std::abs(ratio - std::round(ratio)) > 1e-9)
      raise(errc::invalid_parameter, "CRP with alpha < 0 requires -theta/alpha a positive integer");
  }
  Xoshiro256pp rng(seed, stream);
  CrpSample s;
  s.block_sizes = {1};  // partition of {1}
  for (int j = 1; j < n; ++j) {
    double u = rng.u01() * (j + theta);
    long h1 = static_cast<long>(s.block_sizes.size());
    double p_new = theta + static_cast<double>(h1) * alpha;
    bool fresh = u < p_new;
    if (fresh) {
      s.block_sizes.push_back(1);
    } else {
      double acc = p_new;
      size_t pick = s.block_sizes.size() - 1;
      for (size_t i = 0; i < s.block_sizes.size(); ++i) {
        acc += static_cast<double>(s.block_sizes[i]) - alpha;
        if (u < acc) {
          pick = i;
          break;
        }
      }
      ++s.block_sizes[pick];
    }
    s.new_block.push_back(fresh);
  }
  return s;
}

CrpSample crp_gamma_sample(double gamma, int n, uint64_t seed, uint64_t stream) {
  if (!(gamma > 0 && gamma < 1)) raise(errc::invalid_parameter, "requires 0 < gamma < 1");
  if (n < 1) raise(errc::invalid_parameter, "n must be >= 1");
  Xoshiro256pp rng(seed, stream);
  CrpSample s;
  s.block_sizes = {1};
  for (int j = 1; j < n; ++j) {
    double total = static_cast<double>(j) * (j + gamma);
    double u = rng.u01() * total;
    long h1 = static_cast<long>(s.block_sizes.size());
    double p_new = static_cast<double>(h1) * (static_cast<double>(h1) - gamma);
    bool fresh = u < p_new;
    if (fresh) {
      s.block_sizes.push_back(1);
    } else {
      double join_factor = static_cast<double>(j) - static_cast<double>(h1) + gamma;
      double acc = p_new;
      size_t pick = s.block_sizes.size() - 1;
      for (size_t i = 0; i < s.block_sizes.size(); ++i) {
        acc += (static_cast<double>(s.block_sizes[i]) + 1.0) * join_factor;
        if (u < acc) {
          pick = i;
          break;
        }
      }
      ++s.block_sizes[pick];
    }
    s.new_block.push_back(fresh);
  }
  return s;
}

std::vector<int> coupon_collector_sample(const SeqSpec& b_seq, double theta, int n, uint64_t seed,
                                         uint64_t stream) {
  if (theta <= 0) raise(errc::invalid_parameter, "theta must be > 0");
  if (n < 0) raise(errc::invalid_parameter, "n must be >= 0");
  Xoshiro256pp rng(seed, stream);
  std::vector<long> jumps;  // times at which H increments
  long tau = 0;
  int h = 0;
  while (tau <= n) {
    double lam = b_seq.eval<double>(h) / theta;
    if (lam < 0) raise(errc::invalid_parameter, "b_h must be >= 0");
    if (lam >= 1.0) break;  // waiting time is infinite; no more heads
    long xi;
    if (lam == 0.0) {
      xi = 1;
    } else {
      double u = 1.0 - rng.u01();  // in (0,1]
      xi = std::max<long>(1, static_cast<long>(std::ceil(std::log(u) / std::log(lam))));
    }
    tau += xi;
    if (tau > n) break;
    jumps.push_back(tau);
    ++h;
  }
  std::vector<int> path(static_cast<size_t>(n) + 1, 0);
  int level = 0;
  size_t j = 0;
  for (long time = 0; time <= n; ++time) {
    if (j < jumps.size() && jumps[j] == time) {
      ++level;
      ++j;
    }
    path[static_cast<size_t>(time)] = level;
  }
  return path;
}

std::vector<std::vector<long long>> sample_conditioned_heads(const DimensionTable<double>& dims,
                                                             GridPoint terminal, long long reps,
                                                             uint64_t seed, bool parallel) {
  const int n = terminal.level();
  if (n < 1 || n > dims.max_level()) raise(errc::horizon_mismatch, "terminal beyond the dimension table");
  if (reps < 1) raise(errc::invalid_parameter, "reps must be >= 1");
  const auto& g = dims.graph();
  // head-counts per replicate, flattened as reps x (n+1)
  std::vector<int> heads(static_cast<size_t>(reps) * (n + 1));
  for_each_replicate(reps, seed, parallel, [&](long long r, Xoshiro256pp& rng) {
    int h = terminal.h, t = terminal.t;
    int* row = &heads[static_cast<size_t>(r) * (n + 1)];
    row[n] = h;
    for (int m = n; m >= 1; --m) {
      double p_head = 0.0;
      if (h > 0)
        p_head = g.w1(h - 1, t) * dims.at(h - 1, t) / dims.at(h, t);
      if (rng.bernoulli(p_head))
        --h;
      else
        --t;
      row[m - 1] = h;
    }
  });
  std::vector<std::vector<long long>> counts(static_cast<size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) counts[static_cast<size_t>(m)].assign(static_cast<size_t>(m) + 1, 0);
  for (long long r = 0; r < reps; ++r)
    for (int m = 0; m <= n; ++m)
      ++counts[static_cast<size_t>(m)][static_cast<size_t>(heads[static_cast<size_t>(r) * (n + 1) + m])];
  return counts;
}

ExchangeabilityReport exchangeability_check(const TransitionKernel<double>& kernel,
                                            const PascalGraph<double>& g, int n, long long reps,
                                            uint64_t seed) {
  if (n < 2 || n > 10) raise(errc::invalid_parameter, "exchangeability check needs 2 <= n <= 10");
  auto counts = sample_path_bitmasks(kernel, n, reps, seed);
  ExchangeabilityReport rep;
  rep.total = reps;

  // Within-endpoint uniformity: chi-square of path counts against equal
  // shares of the endpoint-class total.
  double chi2 = 0.0;
  long dof = 0;
  for (int h = 0; h <= n; ++h) {
    std::vector<uint32_t> members;
    long long class_total = 0;
    for (uint32_t mask = 0; mask < counts.size(); ++mask)
      if (__builtin_popcount(mask) == h) {
        members.push_back(mask);
        class_total += counts[mask];
      }
    double expect = static_cast<double>(class_total) / static_cast<double>(members.size());
    if (expect < 5.0) continue;
    for (uint32_t mask : members) {
      double d = static_cast<double>(counts[mask]) - expect;
      chi2 += d * d / expect;
    }
    dof += static_cast<long>(members.size()) - 1;
  }
  rep.uniformity_p_value = dof >= 1 ? chi2_sf(chi2, static_cast<double>(dof)) : 1.0;

  // Transposition pairs: a head-tail at steps (k, k+1) swapped to tail-head
  // multiplies the path probability by the cocycle at the pre-state.
  const long long min_count = 50;
  for (uint32_t mask = 0; mask < counts.size(); ++mask) {
    for (int k = 0; k + 1 < n; ++k) {
      bool head_first = (mask >> k) & 1u, then_tail = !((mask >> (k + 1)) & 1u);
      if (!(head_first && then_tail)) continue;
      uint32_t partner = (mask & ~(1u << k)) | (1u << (k + 1));
      if (counts[mask] < min_count || counts[partner] < min_count) continue;
      int h = 0;
      for (int i = 0; i < k; ++i) h += (mask >> i) & 1u;
      double coc = transposition_cocycle(g, GridPoint{h, k - h});
      double ratio = static_cast<double>(counts[partner]) / static_cast<double>(counts[mask]);
      rep.max_pair_ratio_error = std::max(rep.max_pair_ratio_error, std::abs(ratio / coc - 1.0));
      ++rep.pairs_checked;
    }
  }
  return rep;
}

}  // namespace wpg

#include "wpg/boundary.hpp"

#include <cmath>
#include <sstream>

#include "wpg/dims.hpp"
#include "wpg/phi_families.hpp"

namespace wpg {

std::string to_string(BoundaryClass c) {
  switch (c) {
    case BoundaryClass::Continuous: return "continuous";
    case BoundaryClass::Discrete: return "discrete";
    case BoundaryClass::MixedEndpoints: return "mixed-endpoints";
    case BoundaryClass::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

enum class V3 { Yes, No, Unknown };

// Tail behaviour of a positive preset sequence. File-backed sequences take
// their verdicts from the attached tail rule; without one everything is
// Unknown (a finite prefix decides nothing).
struct SeqFacts {
  V3 sup_infinite = V3::Unknown;
  std::optional<double> sup_value;  // finite sup (attained or limit)
  V3 sum_finite = V3::Unknown;
  V3 tends_to_zero = V3::Unknown;
};

SeqFacts analyze_seq(const SeqSpec& s) {
  SeqFacts f;
  auto finite_sup = [&](double v) {
    f.sup_infinite = V3::No;
    f.sup_value = v;
  };
  switch (s.kind()) {
    case SeqSpec::Kind::Constant: {
      double c = s.param(0).as_double();
      finite_sup(c);
      f.sum_finite = c == 0 ? V3::Yes : V3::No;
      f.tends_to_zero = c == 0 ? V3::Yes : V3::No;
      break;
    }
    case SeqSpec::Kind::Linear: {
      double c = s.param(0).as_double(), d = s.param(1).as_double();
      if (c > 0) {
        f.sup_infinite = V3::Yes;
        f.sum_finite = V3::No;
        f.tends_to_zero = V3::No;
      } else if (c == 0) {
        finite_sup(d);
        f.sum_finite = d == 0 ? V3::Yes : V3::No;
        f.tends_to_zero = d == 0 ? V3::Yes : V3::No;
      }
      break;
    }
    case SeqSpec::Kind::Power: {
      double beta = s.param(0).as_double();
      if (beta > 0) {
        f.sup_infinite = V3::Yes;
        f.sum_finite = V3::No;
        f.tends_to_zero = V3::No;
      } else {
        finite_sup(1.0);  // (n+1)^beta decreasing from 1
        f.tends_to_zero = beta < 0 ? V3::Yes : V3::No;
        f.sum_finite = beta < -1 ? V3::Yes : V3::No;
      }
      break;
    }
    case SeqSpec::Kind::Geometric: {
      double c = s.param(0).as_double(), r = s.param(1).as_double();
      if (c <= 0 || r <= 0) break;
      if (r > 1) {
        f.sup_infinite = V3::Yes;
        f.sum_finite = V3::No;
        f.tends_to_zero = V3::No;
      } else if (r == 1) {
        finite_sup(c);
        f.sum_finite = V3::No;
        f.tends_to_zero = V3::No;
      } else {
        finite_sup(c);
        f.sum_finite = V3::Yes;
        f.tends_to_zero = V3::Yes;
      }
      break;
    }
    case SeqSpec::Kind::AffineGeometric: {
      double c = s.param(0).as_double(), d = s.param(1).as_double(), r = s.param(2).as_double();
      if (r <= 0) break;
      if (r < 1) {
        if (d >= 0)
          finite_sup(c + d);  // decreasing to c
        else
          finite_sup(c);  // increasing to c (sup is the limit)
        f.tends_to_zero = c == 0 && d >= 0 ? V3::Yes : V3::No;
        f.sum_finite = c == 0 && d >= 0 ? V3::Yes : V3::No;
      } else if (r == 1) {
        finite_sup(c + d);
        f.sum_finite = c + d == 0 ? V3::Yes : V3::No;
        f.tends_to_zero = c + d == 0 ? V3::Yes : V3::No;
      } else if (d > 0) {
        f.sup_infinite = V3::Yes;
        f.sum_finite = V3::No;
        f.tends_to_zero = V3::No;
      }
      break;
    }
    case SeqSpec::Kind::File: {
      if (!s.tail()) break;
      SeqFacts tail = analyze_seq(*s.tail());
      f = tail;
      if (f.sup_infinite == V3::No && f.sup_value) {
        double m = *f.sup_value;
        for (long n = 0; n < s.file_length(); ++n) m = std::max(m, s.eval<double>(n));
        f.sup_value = m;
      }
      break;
    }
  }
  return f;
}

bool is_const_zero(const SeqSpec& s) {
  return s.kind() == SeqSpec::Kind::Constant && s.param(0).as_double() == 0.0;
}

std::optional<double> const_value(const SeqSpec& s) {
  if (s.kind() == SeqSpec::Kind::Constant) return s.param(0).as_double();
  if (s.kind() == SeqSpec::Kind::Linear && s.param(0).as_double() == 0.0) return s.param(1).as_double();
  return std::nullopt;
}

}  // namespace

ClassifyResult classify_gstirling1(const SeqSpec& a_spec, int n_probe) {
  ClassifyResult res;
  long probe_to = n_probe;
  if (a_spec.file_backed() && !a_spec.tail()) probe_to = std::min<long>(probe_to, a_spec.file_length());
  double acc = 0.0;
  long step = std::max<long>(1, probe_to / 10);
  for (long n = 0; n < probe_to; ++n) {
    double a = a_spec.eval<double>(n);
    if (a <= 0) raise(errc::invalid_parameter, "a_n must be positive (a_" + std::to_string(n) + " <= 0)");
    acc += a / ((1.0 + a) * (1.0 + a));
    if ((n + 1) % step == 0 || n + 1 == probe_to) res.partial_sums.push_back(acc);
  }

  switch (a_spec.kind()) {
    case SeqSpec::Kind::Constant:
      res.verdict = BoundaryClass::Continuous;
      res.reason = "constant positive a_n: the criterion series diverges";
      return res;
    case SeqSpec::Kind::Linear: {
      double c = a_spec.param(0).as_double();
      res.verdict = BoundaryClass::Continuous;
      res.reason = c > 0 ? "a_n grows linearly: terms ~ 1/a_n, harmonic divergence"
                         : "constant positive a_n: the criterion series diverges";
      return res;
    }
    case SeqSpec::Kind::Power: {
      double beta = a_spec.param(0).as_double();
      if (std::abs(beta) <= 1.0) {
        res.verdict = BoundaryClass::Continuous;
        res.reason = "a_n = (n+1)^beta with |beta| <= 1: series diverges";
      } else {
        res.verdict = BoundaryClass::Discrete;
        res.reason = "a_n = (n+1)^beta with |beta| > 1: series converges";
      }
      return res;
    }
    case SeqSpec::Kind::Geometric: {
      double r = a_spec.param(1).as_double();
      if (r == 1.0) {
        res.verdict = BoundaryClass::Continuous;
        res.reason = "geometric ratio 1: constant sequence";
      } else {
        res.verdict = BoundaryClass::Discrete;
        res.reason = r < 1 ? "a_n -> 0 geometrically: series converges"
                           : "a_n -> infinity geometrically: series converges";
      }
      return res;
    }
    case SeqSpec::Kind::AffineGeometric: {
      double c = a_spec.param(0).as_double(), d = a_spec.param(1).as_double(),
             r = a_spec.param(2).as_double();
      if (r == 1.0 || c > 0.0) {
        res.verdict = BoundaryClass::Continuous;
        res.reason = "a_n has a positive limit: terms are bounded below";
      } else if (c == 0.0 && d > 0.0) {
        res.verdict = r < 1 ? BoundaryClass::Discrete : BoundaryClass::Discrete;
        res.reason = "pure geometric behaviour: series converges";
      } else {
        res.verdict = BoundaryClass::Inconclusive;
        res.reason = "affine-geometric parameters outside the analyzed range";
      }
      return res;
    }
    case SeqSpec::Kind::File: {
      if (a_spec.tail()) {
        ClassifyResult tail_res = classify_gstirling1(*a_spec.tail(), n_probe);
        res.verdict = tail_res.verdict;
        res.reason = "finite prefix from file; verdict from tail rule: " + tail_res.reason;
        return res;
      }
      res.verdict = BoundaryClass::Inconclusive;
      res.reason = "file-backed sequence without a tail rule: divergence undecidable from finite data";
      return res;
    }
  }
  return res;
}

double ZDistribution::total() const {
  double s = 0;
  for (double w : weights) s += w;
  return s;
}

namespace {

// Certified bound on sum_{n >= from} min(p(n), q(n)) for p = theta/(theta+a),
// using min(p,q) <= min(theta/a_n, a_n/theta).
std::optional<double> tail_min_pq_bound(const SeqSpec& a_spec, double theta, long from) {
  switch (a_spec.kind()) {
    case SeqSpec::Kind::Geometric: {
      double c = a_spec.param(0).as_double(), r = a_spec.param(1).as_double();
      if (c <= 0 || r <= 0 || r == 1) return std::nullopt;
      if (r > 1) return theta / (c * std::pow(r, static_cast<double>(from))) * (r / (r - 1.0));
      return c * std::pow(r, static_cast<double>(from)) / (theta * (1.0 - r));
    }
    case SeqSpec::Kind::AffineGeometric: {
      if (a_spec.param(0).as_double() != 0.0) return std::nullopt;
      SeqSpec as_geom = SeqSpec::geometric(a_spec.param(1), a_spec.param(2));
      return tail_min_pq_bound(as_geom, theta, from);
    }
    case SeqSpec::Kind::Power: {
      double beta = a_spec.param(0).as_double();
      if (from < 1) return std::nullopt;
      if (beta > 1)
        return theta * std::pow(static_cast<double>(from), 1.0 - beta) / (beta - 1.0);
      if (beta < -1)
        return std::pow(static_cast<double>(from), 1.0 + beta) / (theta * (-1.0 - beta));
      return std::nullopt;
    }
    case SeqSpec::Kind::File: {
      if (!a_spec.tail()) return std::nullopt;
      if (from < a_spec.file_length()) return std::nullopt;  // callers cut past the file
      return tail_min_pq_bound(*a_spec.tail(), theta, from);
    }
    default:
      return std::nullopt;
  }
}

struct ZPolys {
  std::vector<double> coef_l;  // coefficients of prod_{l in L} (q_l + p_l x)
  std::vector<double> coef_m;  // coefficients of prod_{m in M} (p_m + q_m y)
  long l_count = 0, m_count = 0;
};

ZPolys build_z_polys(const SeqSpec& a_spec, double theta, long cut, long skip_index = -1) {
  ZPolys zp;
  zp.coef_l = {1.0};
  zp.coef_m = {1.0};
  for (long n = 0; n < cut; ++n) {
    if (n == skip_index) continue;
    double a = a_spec.eval<double>(n);
    if (a <= 0) raise(errc::invalid_parameter, "a_" + std::to_string(n) + " <= 0");
    double p = theta / (theta + a);
    double q = a / (theta + a);
    if (p <= q) {
      ++zp.l_count;
      zp.coef_l.push_back(0.0);
      for (size_t i = zp.coef_l.size() - 1; i >= 1; --i)
        zp.coef_l[i] = zp.coef_l[i] * q + zp.coef_l[i - 1] * p;
      zp.coef_l[0] *= q;
    } else {
      ++zp.m_count;
      zp.coef_m.push_back(0.0);
      for (size_t j = zp.coef_m.size() - 1; j >= 1; --j)
        zp.coef_m[j] = zp.coef_m[j] * p + zp.coef_m[j - 1] * q;
      zp.coef_m[0] *= p;
    }
  }
  return zp;
}

std::vector<double> cross_correlate(const ZPolys& zp) {
  // weight of z = i - j, offset by m_count: index z + m_count
  std::vector<double> w(zp.coef_l.size() + zp.coef_m.size() - 1, 0.0);
  for (size_t i = 0; i < zp.coef_l.size(); ++i)
    for (size_t j = 0; j < zp.coef_m.size(); ++j)
      w[i + (zp.coef_m.size() - 1 - j)] += zp.coef_l[i] * zp.coef_m[j];
  return w;
}

constexpr long kMaxZCut = 20000;

long choose_z_cut(const SeqSpec& a_spec, double theta, double tol, double* bound_out) {
  long start = a_spec.file_backed() ? std::max<long>(a_spec.file_length(), 4) : 4;
  for (long cut = start; cut <= kMaxZCut; cut = cut < 16 ? cut + 4 : cut * 2) {
    auto b = tail_min_pq_bound(a_spec, theta, cut);
    if (b && *b <= tol * 0.5) {
      *bound_out = *b;
      return cut;
    }
  }
  raise(errc::truncation_failure,
        "cannot certify a truncation bound <= " + scalar_traits<double>::to_string(tol) +
            " within cut " + std::to_string(kMaxZCut));
}

}  // namespace

ZDistribution z_distribution(const SeqSpec& a_spec, const ScalarSpec& theta, double tol) {
  double th = theta.as_double();
  if (th <= 0) raise(errc::invalid_parameter, "theta must be positive");
  if (tol <= 0) raise(errc::invalid_parameter, "tolerance must be positive");
  ClassifyResult cls = classify_gstirling1(a_spec, 64);
  if (cls.verdict == BoundaryClass::Continuous)
    raise(errc::divergent_case, "sum p(n)q(n) diverges: " + cls.reason);
  if (cls.verdict == BoundaryClass::Inconclusive)
    raise(errc::truncation_failure, "cannot certify convergence: " + cls.reason);

  ZDistribution dist;
  double bound = 0.0;
  dist.cut = choose_z_cut(a_spec, th, tol, &bound);
  dist.truncation_error_bound = bound;
  ZPolys zp = build_z_polys(a_spec, th, dist.cut);
  dist.l_count = zp.l_count;
  dist.m_count = zp.m_count;
  dist.weights = cross_correlate(zp);
  dist.z_min = -zp.m_count;
  return dist;
}

namespace {

void push_trivial(BoundaryReport& rep, double pi, const std::string& note) {
  ExtremeDesc e;
  e.kind = "trivial";
  e.pi = pi;
  e.note = note;
  rep.extremes.push_back(e);
}

// Report for a generalized Stirling-I class (w0 = a_{h+t} [+ const shift]).
// pi(P_theta) = theta/(theta + a_0); the convergent case decomposes the
// reference P_1 over the tail variable Z.
void report_gstirling1(BoundaryReport& rep, const SeqSpec& a_spec, double shift,
                       const BoundaryOptions& opts, bool attach_z,
                       std::optional<ClassifyResult> pre = std::nullopt) {
  ClassifyResult cls = pre ? *pre : classify_gstirling1(a_spec, opts.n_probe);
  rep.evidence.push_back("criterion series sum a_n/(1+a_n)^2: " + cls.reason);
  if (!cls.partial_sums.empty()) {
    std::ostringstream os;
    os << "partial sums up to n=" << opts.n_probe << ":";
    for (double v : cls.partial_sums) os << " " << v;
    rep.evidence.push_back(os.str());
  }
  rep.classification = cls.verdict;
  double a0 = a_spec.eval<double>(0) + shift;
  push_trivial(rep, 0.0, "Q_{0,infty}, all tails");
  if (cls.verdict == BoundaryClass::Continuous) {
    ExtremeDesc fam;
    fam.kind = "P_theta_family";
    fam.pi = 0.0;
    fam.pi_hi = 1.0;
    fam.note = "pi = theta/(theta + " + std::to_string(a0) + "), theta in [0, infinity]";
    rep.extremes.push_back(fam);
  } else if (cls.verdict == BoundaryClass::Discrete) {
    SeqFacts f = analyze_seq(a_spec);
    if (f.tends_to_zero == V3::Yes)
      rep.accumulation_points.push_back(0.0);
    else
      rep.accumulation_points.push_back(1.0);
    if (attach_z) {
      try {
        ZDistribution dist = z_distribution(a_spec, ScalarSpec(opts.z_theta), opts.z_tol);
        double p0 = opts.z_theta / (opts.z_theta + a_spec.eval<double>(0));
        bool zero_in_l = p0 <= 1.0 - p0;
        ZPolys reduced = build_z_polys(a_spec, opts.z_theta, dist.cut, 0);
        std::vector<double> w_red = cross_correlate(reduced);
        long red_off = reduced.m_count;
        for (size_t i = 0; i < dist.weights.size(); ++i) {
          double w = dist.weights[i];
          if (w < 1e-12) continue;
          long z = dist.z_min + static_cast<long>(i);
          ExtremeDesc e;
          e.kind = "P_z";
          e.z = z;
          e.weight = w;
          long zr = z - (zero_in_l ? 1 : 0);
          double num = 0.0;
          long ri = zr + red_off;
          if (ri >= 0 && ri < static_cast<long>(w_red.size())) num = w_red[static_cast<size_t>(ri)];
          e.pi = p0 * num / w;
          e.note = "conditional component of the reference measure given Z=" + std::to_string(z);
          rep.extremes.push_back(e);
        }
        rep.z_weights = dist;
      } catch (const Error& err) {
        rep.evidence.push_back(std::string("Z decomposition unavailable: ") + err.what());
      }
    }
  }
  push_trivial(rep, 1.0, "Q_{infty,0}, all heads");
}

void report_qpascal(BoundaryReport& rep, const ScalarSpec& q, const BoundaryOptions& opts) {
  double qd = q.as_double();
  if (qd == 1.0) {
    report_gstirling1(rep, SeqSpec::constant(ScalarSpec(1L)), 0.0, opts, false);
    return;
  }
  rep.classification = BoundaryClass::Discrete;
  if (qd < 1.0) {
    push_trivial(rep, 0.0, "Q_{0,infty}, all tails; accumulation point of {q^m}");
    for (int m = 0; m <= opts.m_display; ++m) {
      ExtremeDesc e;
      e.kind = "Q_inf_m";
      e.m = m;
      e.pi = std::pow(qd, m);
      if (q.exact_representable()) e.pi_exact = rat_pow(q.as_rational(), m).get_str();
      e.note = "at most " + std::to_string(m) + " tails; pi = q^m";
      rep.extremes.push_back(e);
    }
    rep.accumulation_points.push_back(0.0);
    rep.evidence.push_back("boundary {q^m, m >= 0} together with 0");
    rep.evidence.push_back(
        "the level-weight walks p(n) = theta/(theta + q^n) and the q-Polya urns belong to the class "
        "but are not ergodic");
  } else {
    // q > 1 reduces to 1/q by reweighting and transposition; here b_h = q^h
    // is increasing and unbounded, so the heads-bounded extremes exist.
    push_trivial(rep, 1.0, "Q_{infty,0}, all heads; accumulation point");
    for (int m = 0; m <= opts.m_display; ++m) {
      ExtremeDesc e;
      e.kind = "Q_m_inf";
      e.m = m;
      e.pi = 1.0 - std::pow(qd, -m);
      if (q.exact_representable())
        e.pi_exact = Rational(Rational(1) - rat_pow(q.as_rational(), -m)).get_str();
      e.note = "at most " + std::to_string(m) + " heads; pi = 1 - q^{-m}";
      rep.extremes.push_back(e);
    }
    rep.accumulation_points.push_back(1.0);
    rep.evidence.push_back("q > 1: equivalent to the 1/q graph after reweighting and transposition");
  }
}

void report_unbounded_b(BoundaryReport& rep, const SeqSpec& a_spec, const SeqSpec& b_spec,
                        const BoundaryOptions& opts) {
  rep.classification = BoundaryClass::Discrete;
  push_trivial(rep, 0.0, "Q_{0,infty}, all tails");
  for (int m = 0; m <= opts.m_display; ++m) {
    auto qm = qm_exists_gstirling<double>(b_spec, a_spec, m);
    if (qm.status != QmStatus::Exists) continue;
    ExtremeDesc e;
    e.kind = "Q_m_inf";
    e.m = m;
    e.theta = b_spec.eval<double>(m);
    e.pi = qm.pi;
    e.note = "pi = (b_m - b_0)/(b_m + a_0)";
    rep.extremes.push_back(e);
  }
  push_trivial(rep, 1.0, "Q_{infty,0}, all heads; accumulation point");
  rep.accumulation_points.push_back(1.0);
  rep.evidence.push_back("sup b_h = infinity: heads-bounded extremes at running maxima, pi -> 1");
}

// Generalized Stirling-II (a == 0) with bounded b.
void report_gstirling2_bounded(BoundaryReport& rep, const SeqSpec& b_spec, const SeqFacts& facts,
                               const BoundaryOptions& opts) {
  double sup = facts.sup_value.value_or(0.0);
  double b0 = b_spec.eval<double>(0);
  double accum = 1.0 - b0 / sup;
  if (facts.sum_finite == V3::Yes) {
    rep.classification = BoundaryClass::Discrete;
    for (int m = 0; m <= opts.m_display; ++m) {
      auto qm = qm_exists_gstirling<double>(b_spec, SeqSpec::constant(ScalarSpec(0L)), m);
      if (qm.status != QmStatus::Exists) continue;
      ExtremeDesc e;
      e.kind = "Q_m_inf";
      e.m = m;
      e.theta = b_spec.eval<double>(m);
      e.pi = qm.pi;
      e.note = "pi = (b_m - b_0)/b_m";
      rep.extremes.push_back(e);
    }
    // Tails-bounded extremes exist for every m; pi estimated by a Martin
    // limit along the path with m tails. Entries whose limit does not
    // stabilize within the budget are reported in the evidence instead.
    PascalGraph<double> g = make_graph<double>(
        FamilySpec::gen_stirling(SeqSpec::constant(ScalarSpec(0L)), b_spec));
    for (int m = 0; m <= opts.m_display; ++m) {
      auto lim = martin_limit<double>(g, paths::fixed_tails(m), 1, 1e-9, 4000);
      if (lim.status != LimitStatus::Converged) {
        rep.evidence.push_back("Martin limit for the m=" + std::to_string(m) +
                               " tails-bounded extreme did not stabilize within budget");
        continue;
      }
      ExtremeDesc e;
      e.kind = "Q_inf_m";
      e.m = m;
      e.pi = g.w1(0, 0) * lim.phi.at(1, 0);
      e.note = "pi from Martin limit along (n-m, m)";
      rep.extremes.push_back(e);
    }
    rep.accumulation_points.push_back(accum);
    rep.evidence.push_back("sum b_h finite: only finitely supported extremes; accumulation at 1 - b_0/sup b_h");
  } else if (facts.sum_finite == V3::No) {
    rep.classification = BoundaryClass::MixedEndpoints;
    for (int m = 0; m <= opts.m_display; ++m) {
      auto qm = qm_exists_gstirling<double>(b_spec, SeqSpec::constant(ScalarSpec(0L)), m);
      if (qm.status != QmStatus::Exists) continue;
      ExtremeDesc e;
      e.kind = "Q_m_inf";
      e.m = m;
      e.theta = b_spec.eval<double>(m);
      e.pi = qm.pi;
      e.note = "pi = (b_m - b_0)/b_m";
      rep.extremes.push_back(e);
    }
    ExtremeDesc fam;
    fam.kind = "P_theta_family";
    fam.pi = accum;
    fam.pi_hi = 1.0;
    fam.note = "fully supported P_theta, theta > sup b_h; pi = 1 - b_0/theta";
    rep.extremes.push_back(fam);
    rep.accumulation_points.push_back(accum);
    rep.evidence.push_back(
        "sum b_h = infinity with bounded b: the boundary contains the interval [1 - b_0/sup b_h, 1] (reported as stated)");
  } else {
    rep.classification = BoundaryClass::Inconclusive;
    rep.evidence.push_back("sum b_h undecidable for this sequence spec");
  }
  push_trivial(rep, 0.0, "Q_{0,infty}, all tails");
  push_trivial(rep, 1.0, "Q_{infty,0}, all heads");
}

void report_eulerian(BoundaryReport& rep, const ScalarSpec& a, const ScalarSpec& b,
                     const BoundaryOptions& opts) {
  double av = a.as_double(), bv = b.as_double();
  rep.classification = BoundaryClass::Discrete;
  double pi_star = av / (av + bv);
  for (int m = 0; m <= opts.m_display; ++m) {
    ExtremeDesc e;
    e.kind = "Q_m_inf";
    e.m = m;
    e.pi = m * av / ((m + bv) * (av + bv));
    e.note = "at most m heads";
    rep.extremes.push_back(e);
  }
  for (int m = 0; m <= opts.m_display; ++m) {
    ExtremeDesc e;
    e.kind = "Q_inf_m";
    e.m = m;
    e.pi = av * (m + av + bv) / ((m + av) * (av + bv));
    e.note = "at most m tails";
    rep.extremes.push_back(e);
  }
  ExtremeDesc star;
  star.kind = "P_star";
  star.pi = pi_star;
  if (a.exact_representable() && b.exact_representable())
    star.pi_exact = Rational(a.as_rational() / (a.as_rational() + b.as_rational())).get_str();
  star.note = "fully supported urn measure; both finitely supported families converge to it";
  rep.extremes.push_back(star);
  rep.accumulation_points.push_back(pi_star);
  rep.evidence.push_back("finitely supported extremes plus the fully supported urn measure");
}

}  // namespace

BoundaryReport boundary_report(const FamilySpec& family, const BoundaryOptions& opts) {
  BoundaryReport rep;
  switch (family.kind) {
    case FamilySpec::Kind::Pascal:
      report_gstirling1(rep, SeqSpec::constant(ScalarSpec(1L)), 0.0, opts, false);
      rep.evidence.push_back("exchangeable trials: boundary [0,1]");
      return rep;
    case FamilySpec::Kind::Stirling1:
      report_gstirling1(rep, SeqSpec::linear(ScalarSpec(1L), ScalarSpec(1L)), 0.0, opts, false);
      return rep;
    case FamilySpec::Kind::Stirling2:
      report_unbounded_b(rep, SeqSpec::constant(ScalarSpec(0L)),
                         SeqSpec::linear(ScalarSpec(1L), ScalarSpec(1L)), opts);
      return rep;
    case FamilySpec::Kind::QPascal:
      report_qpascal(rep, family.q, opts);
      return rep;
    case FamilySpec::Kind::Eulerian:
      report_eulerian(rep, family.a, family.b, opts);
      return rep;
    case FamilySpec::Kind::GenStirling: {
      const SeqSpec& a = family.a_seq;
      const SeqSpec& b = family.b_seq;
      if (is_const_zero(b)) {
        report_gstirling1(rep, a, 0.0, opts, true);
        return rep;
      }
      if (auto c = const_value(b)) {
        // Constant b shifts the level weights: same class as a_n + c.
        SeqFacts fa = analyze_seq(a);
        ClassifyResult cls;
        if (fa.sup_infinite == V3::Yes) {
          cls = classify_gstirling1(a, opts.n_probe);  // a shift does not change the tail
        } else if (fa.sup_infinite == V3::No) {
          cls.verdict = BoundaryClass::Continuous;
          cls.reason = "shifted level weights stay bounded: series diverges";
        } else {
          cls.verdict = BoundaryClass::Inconclusive;
          cls.reason = "cannot decide boundedness of the shifted level weights";
        }
        report_gstirling1(rep, a, *c, opts, false, cls);
        rep.evidence.push_back("b constant: class equals the level-weight graph with a_n + b shift");
        return rep;
      }
      SeqFacts fb = analyze_seq(b);
      if (fb.sup_infinite == V3::Yes) {
        report_unbounded_b(rep, a, b, opts);
        return rep;
      }
      if (is_const_zero(a) && fb.sup_infinite == V3::No) {
        report_gstirling2_bounded(rep, b, fb, opts);
        return rep;
      }
      rep.classification = BoundaryClass::Inconclusive;
      rep.evidence.push_back("general (a,b) with bounded non-constant b is outside the analyzed cases");
      return rep;
    }
    case FamilySpec::Kind::Custom: {
      // w0 = v0(n), w1 = v1(n): the class of a level-weight walk with
      // a_n = v0(n)/v1(n). Reduce preset ratios where the quotient is again
      // a preset; otherwise report partial sums of the symmetric criterion.
      const SeqSpec& v0 = family.v0_seq;
      const SeqSpec& v1 = family.v1_seq;
      std::optional<SeqSpec> ratio;
      if (v0.kind() == SeqSpec::Kind::Constant && v1.kind() == SeqSpec::Kind::Constant) {
        ratio = SeqSpec::constant(ScalarSpec(v0.param(0).as_double() / v1.param(0).as_double()));
      } else if (v0.kind() == SeqSpec::Kind::Geometric && v1.kind() == SeqSpec::Kind::Geometric) {
        ratio = SeqSpec::geometric(
            ScalarSpec(v0.param(0).as_double() / v1.param(0).as_double()),
            ScalarSpec(v0.param(1).as_double() / v1.param(1).as_double()));
      } else if (v0.kind() == SeqSpec::Kind::Power && v1.kind() == SeqSpec::Kind::Power) {
        ratio = SeqSpec::power(ScalarSpec(v0.param(0).as_double() - v1.param(0).as_double()));
      } else if (const_value(v1)) {
        if (v0.kind() == SeqSpec::Kind::Constant)
          ratio = SeqSpec::constant(ScalarSpec(v0.param(0).as_double() / *const_value(v1)));
      }
      if (ratio) {
        report_gstirling1(rep, *ratio, 0.0, opts, !ratio->file_backed());
        rep.evidence.push_back("custom level weights reduced to odds sequence a_n = v0(n)/v1(n)");
        return rep;
      }
      rep.classification = BoundaryClass::Inconclusive;
      long probe_to = opts.n_probe;
      if (v0.file_backed() && !v0.tail()) probe_to = std::min<long>(probe_to, v0.file_length());
      if (v1.file_backed() && !v1.tail()) probe_to = std::min<long>(probe_to, v1.file_length());
      double acc = 0.0;
      std::ostringstream os;
      os << "partial sums of sum v0 v1/(v0+v1)^2:";
      for (long n = 0; n < probe_to; ++n) {
        double w0 = v0.eval<double>(n), w1 = v1.eval<double>(n);
        acc += w0 * w1 / ((w0 + w1) * (w0 + w1));
        if ((n + 1) % std::max<long>(1, probe_to / 10) == 0) os << " " << acc;
      }
      rep.evidence.push_back(os.str());
      return rep;
    }
  }
  raise(errc::invalid_parameter, "corrupt family spec");
}

}  // namespace wpg

#pragma once

#include <climits>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wpg/dims.hpp"
#include "wpg/graph.hpp"
#include "wpg/grid.hpp"

namespace wpg {

// Support of a probability function. Finitely supported measures live on
// I_m = {h <= m} or J_m = {t <= m}; kernel evaluation outside the support
// is an error rather than 0/0.
struct Support {
  enum class Kind { Full, HeadsAtMost, TailsAtMost };
  Kind kind = Kind::Full;
  int m = -1;

  static Support full() { return {}; }
  static Support heads_at_most(int m) { return {Kind::HeadsAtMost, m}; }
  static Support tails_at_most(int m) { return {Kind::TailsAtMost, m}; }

  bool contains(int h, int t) const {
    switch (kind) {
      case Kind::Full: return true;
      case Kind::HeadsAtMost: return h <= m;
      case Kind::TailsAtMost: return t <= m;
    }
    return false;
  }
  std::string describe() const {
    switch (kind) {
      case Kind::Full: return "full";
      case Kind::HeadsAtMost: return "heads<=" + std::to_string(m);
      case Kind::TailsAtMost: return "tails<=" + std::to_string(m);
    }
    return "?";
  }
};

struct Provenance {
  std::string family;
  std::vector<std::pair<std::string, std::string>> params;
};

// A probability function phi on a truncation: phi(0,0) = 1, phi >= 0, and
// the probability of a path ending at (h,t) is weight(path) * phi(h,t).
template <class S>
struct Phi {
  PascalGraph<S> graph;
  TriArray<S> values;
  Support support;
  Provenance provenance;

  int max_level() const { return values.max_level(); }
  const S& at(int h, int t) const { return values.at(h, t); }
};

template <class S>
struct PhiCheckReport {
  S max_recursion_residual = scalar_traits<S>::zero();
  S max_level_sum_error = scalar_traits<S>::zero();
  std::optional<GridPoint> negativity_witness;

  bool exact_ok() const {
    return max_recursion_residual == scalar_traits<S>::zero() &&
           max_level_sum_error == scalar_traits<S>::zero() && !negativity_witness;
  }
  bool ok(double tol) const {
    return scalar_traits<S>::to_double(max_recursion_residual) < tol &&
           scalar_traits<S>::to_double(max_level_sum_error) < tol && !negativity_witness;
  }
};

// Diagnostic: residuals of the forward recursion
// phi(h,t) = w0(h,t) phi(h,t+1) + w1(h,t) phi(h+1,t) over the truncation,
// and of the level normalization sum_h phi(h,n-h) d(h,n-h) = 1.
template <class S>
PhiCheckReport<S> check_probability_function(const Phi<S>& phi) {
  const int N = phi.max_level();
  if (N < 1) raise(errc::invalid_parameter, "need horizon >= 1 to check a probability function");
  PhiCheckReport<S> rep;
  for (int n = 0; n <= N; ++n)
    for (int h = 0; h <= n; ++h) {
      int t = n - h;
      if (phi.at(h, t) < scalar_traits<S>::zero() && !rep.negativity_witness)
        rep.negativity_witness = GridPoint{h, t};
      if (n < N) {
        S r = phi.at(h, t) - phi.graph.w0(h, t) * phi.at(h, t + 1) -
              phi.graph.w1(h, t) * phi.at(h + 1, t);
        r = scalar_traits<S>::abs(r);
        if (r > rep.max_recursion_residual) rep.max_recursion_residual = r;
      }
    }
  DimensionTable<S> dims(phi.graph, N, FillMode::Serial);
  for (int n = 0; n <= N; ++n) {
    S sum = scalar_traits<S>::zero();
    for (int h = 0; h <= n; ++h) sum += phi.at(h, n - h) * dims.at(h, n - h);
    S err = scalar_traits<S>::abs(sum - scalar_traits<S>::one());
    if (err > rep.max_level_sum_error) rep.max_level_sum_error = err;
  }
  return rep;
}

// Markov transition functions p (head) and q (tail) on the lattice.
template <class S>
struct TransitionKernel {
  std::function<S(int h, int t)> p, q;
  Support support;
  long max_level = LONG_MAX;  // largest level at which p,q may be evaluated
  std::string name;

  void require_state(int h, int t) const {
    if (h < 0 || t < 0 || h + t > max_level)
      raise(errc::horizon_mismatch, name + ": state (" + std::to_string(h) + "," +
                                        std::to_string(t) + ") beyond kernel horizon");
    if (!support.contains(h, t))
      raise(errc::outside_support,
            name + ": state (" + std::to_string(h) + "," + std::to_string(t) + ") outside support");
  }
};

// p = w1 phi(h+1,t)/phi(h,t), q = w0 phi(h,t+1)/phi(h,t).
// The forward recursion makes p + q = 1 wherever phi solves it.
template <class S>
TransitionKernel<S> kernel_from_phi(const Phi<S>& phi) {
  auto ptr = std::make_shared<const Phi<S>>(phi);
  TransitionKernel<S> k;
  k.support = ptr->support;
  k.max_level = ptr->max_level() - 1;
  k.name = "kernel(" + ptr->provenance.family + ")";
  std::string name = k.name;
  auto denom = [ptr, name](int h, int t) -> const S& {
    const S& v = ptr->at(h, t);
    if (v == scalar_traits<S>::zero())
      raise(errc::outside_support, name + ": phi vanishes at (" + std::to_string(h) + "," +
                                       std::to_string(t) + ")");
    return v;
  };
  k.p = [ptr, denom](int h, int t) -> S {
    return ptr->graph.w1(h, t) * ptr->at(h + 1, t) / denom(h, t);
  };
  k.q = [ptr, denom](int h, int t) -> S {
    return ptr->graph.w0(h, t) * ptr->at(h, t + 1) / denom(h, t);
  };
  return k;
}

// For balanced weights (w0 + w1 = sigma(h+t)) the canonical fully supported
// measure moves with p = w1/sigma, q = w0/sigma.
template <class S>
TransitionKernel<S> kernel_from_balance(const PascalGraph<S>& g, int horizon) {
  auto bal = is_balanced(g, horizon);
  if (!bal)
    raise(errc::not_balanced, g.tag() + " is not balanced: levels of (" +
                                  std::to_string(bal.witness_a.h) + "," + std::to_string(bal.witness_a.t) +
                                  ") and (" + std::to_string(bal.witness_b.h) + "," +
                                  std::to_string(bal.witness_b.t) + ") have different weight sums");
  auto sigma = std::make_shared<const std::vector<S>>(std::move(*bal.sigma));
  TransitionKernel<S> k;
  k.max_level = horizon;
  k.name = "balance(" + g.tag() + ")";
  auto sig = [sigma, horizon](int h, int t) -> const S& {
    if (h + t > horizon)
      raise(errc::horizon_mismatch,
            "balance kernel queried at level " + std::to_string(h + t) + " beyond its horizon");
    return (*sigma)[static_cast<size_t>(h) + t];
  };
  k.p = [g, sig](int h, int t) -> S { return g.w1(h, t) / sig(h, t); };
  k.q = [g, sig](int h, int t) -> S { return g.w0(h, t) / sig(h, t); };
  return k;
}

// Doob h-transform: phi = psi * phi_star for a phi_star-harmonic psi with
// psi(0,0) = 1. Harmonicity is verified on the truncation.
template <class S>
Phi<S> doob_transform(const Phi<S>& phi_star, const std::function<S(int, int)>& psi, double tol) {
  const int N = phi_star.max_level();
  S tolerance = scalar_traits<S>::tolerance(tol);
  if (scalar_traits<S>::abs(psi(0, 0) - scalar_traits<S>::one()) > tolerance)
    raise(errc::not_harmonic, "psi(0,0) must equal 1");
  auto kernel = kernel_from_phi(phi_star);
  S worst = scalar_traits<S>::zero();
  GridPoint worst_at{0, 0};
  for (int n = 0; n < N; ++n)
    for (int h = 0; h <= n; ++h) {
      int t = n - h;
      if (!phi_star.support.contains(h, t) || phi_star.at(h, t) == scalar_traits<S>::zero()) continue;
      S r = scalar_traits<S>::abs(psi(h, t) - kernel.p(h, t) * psi(h + 1, t) -
                                  kernel.q(h, t) * psi(h, t + 1));
      if (r > worst) {
        worst = r;
        worst_at = GridPoint{h, t};
      }
    }
  if (worst > tolerance)
    raise(errc::not_harmonic, "worst residual " + scalar_traits<S>::to_string(worst) + " at (" +
                                  std::to_string(worst_at.h) + "," + std::to_string(worst_at.t) + ")");
  Phi<S> out{phi_star.graph, TriArray<S>(N, scalar_traits<S>::zero()), phi_star.support,
             {"doob(" + phi_star.provenance.family + ")", phi_star.provenance.params}};
  for (int n = 0; n <= N; ++n)
    for (int h = 0; h <= n; ++h) {
      int t = n - h;
      S v = psi(h, t) * phi_star.at(h, t);
      if (v < scalar_traits<S>::zero())
        raise(errc::not_harmonic, "psi * phi negative at (" + std::to_string(h) + "," +
                                      std::to_string(t) + ")");
      out.values.at(h, t) = v;
    }
  return out;
}

// pi(P) = P(H_1 = 1) = w1(0,0) phi(1,0).
template <class S>
S pi_first_head(const Phi<S>& phi) {
  if (phi.max_level() < 1) raise(errc::invalid_parameter, "phi horizon must be >= 1");
  return phi.graph.w1(0, 0) * phi.at(1, 0);
}

enum class StochOrder { Equal, FirstDominates, SecondDominates, Incomparable };

template <class S>
struct StochCompareReport {
  StochOrder order = StochOrder::Equal;
  std::optional<std::pair<int, int>> strict_witness;  // (m, h) with a strict inequality
  // tails[x][m][h] = P_x(H_m >= h) for x in {first, second}
  std::vector<std::vector<S>> tails_first, tails_second;
};

// Compares the elementary measures Q_A and Q_B (exact computation of all
// P(H_m >= h) for m <= level). Terminals must sit on the same level.
template <class S>
StochCompareReport<S> stochastic_compare(const PascalGraph<S>& g, GridPoint a, GridPoint b) {
  if (a.level() != b.level()) raise(errc::level_mismatch, "terminals must be on the same level");
  const int n = a.level();
  DimensionTable<S> dims(g, n, FillMode::Serial);
  auto ea = extension_to_terminal(g, a);
  auto eb = extension_to_terminal(g, b);

  auto tails = [&](const RectArray<S>& e, GridPoint x) {
    std::vector<std::vector<S>> out(static_cast<size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) {
      std::vector<S> pmf(static_cast<size_t>(m) + 1, scalar_traits<S>::zero());
      for (int h = 0; h <= m; ++h) {
        int t = m - h;
        if (h <= x.h && t <= x.t) pmf[h] = dims.at(h, t) * e.at(h, t) / e.at(0, 0);
      }
      std::vector<S> tail(static_cast<size_t>(m) + 1, scalar_traits<S>::zero());
      S acc = scalar_traits<S>::zero();
      for (int h = m; h >= 0; --h) {
        acc += pmf[h];
        tail[h] = acc;
      }
      out[m] = std::move(tail);
    }
    return out;
  };

  StochCompareReport<S> rep;
  rep.tails_first = tails(ea, a);
  rep.tails_second = tails(eb, b);

  bool a_ge = true, b_ge = true;
  for (int m = 0; m <= n && (a_ge || b_ge); ++m)
    for (int h = 1; h <= m; ++h) {
      const S& ta = rep.tails_first[m][h];
      const S& tb = rep.tails_second[m][h];
      if (ta < tb) a_ge = false;
      if (tb < ta) b_ge = false;
      if (ta != tb && !rep.strict_witness) rep.strict_witness = std::make_pair(m, h);
    }
  if (a_ge && b_ge)
    rep.order = StochOrder::Equal;
  else if (a_ge)
    rep.order = StochOrder::FirstDominates;
  else if (b_ge)
    rep.order = StochOrder::SecondDominates;
  else
    rep.order = StochOrder::Incomparable;
  return rep;
}

// The distribution of S_n: masses phi(h,n-h) d(h,n-h), h = 0..n.
template <class S>
std::vector<S> endpoint_distribution(const Phi<S>& phi, const DimensionTable<S>& dims, int n) {
  if (n > phi.max_level() || n > dims.max_level())
    raise(errc::horizon_mismatch, "endpoint level beyond truncation");
  std::vector<S> out(static_cast<size_t>(n) + 1);
  for (int h = 0; h <= n; ++h) out[h] = phi.at(h, n - h) * dims.at(h, n - h);
  return out;
}

}  // namespace wpg

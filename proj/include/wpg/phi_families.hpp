#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "wpg/family.hpp"
#include "wpg/measures.hpp"

namespace wpg {

// Closed-form probability functions for the named measure families. All of
// them satisfy the forward recursion identically, which is what the checks
// in tests and self-check assert (with exactly zero residuals in rational
// mode).

namespace detail {

// prods[k] = x(0) * x(1) * ... * x(k-1), k = 0..count.
template <class S>
std::vector<S> prefix_products(int count, const std::function<S(int)>& x) {
  std::vector<S> out;
  out.reserve(static_cast<size_t>(count) + 1);
  out.push_back(scalar_traits<S>::one());
  for (int k = 0; k < count; ++k) out.push_back(out.back() * x(k));
  return out;
}

}  // namespace detail

// Homogeneous Bernoulli measure on the Pascal graph, phi = theta^h/(1+theta)^n.
template <class S>
Phi<S> bernoulli_phi(const ScalarSpec& theta, int N) {
  S th = theta.as<S>();
  if (th < scalar_traits<S>::zero()) raise(errc::invalid_parameter, "Bernoulli family requires theta >= 0");
  PascalGraph<S> g = make_graph<S>(FamilySpec::pascal());
  Phi<S> phi{g, TriArray<S>(N, scalar_traits<S>::zero()),
             th == scalar_traits<S>::zero() ? Support::heads_at_most(0) : Support::full(),
             {"bernoulli", {{"theta", theta.describe()}}}};
  auto pow_th = detail::prefix_products<S>(N, [&](int) -> S { return th; });
  auto pow_sig = detail::prefix_products<S>(N, [&](int) -> S { return scalar_traits<S>::one() + th; });
  for (int n = 0; n <= N; ++n)
    for (int h = 0; h <= n; ++h) phi.values.at(h, n - h) = pow_th[h] / pow_sig[n];
  return phi;
}

// Polya urn with starting configuration (a,b), attached to the Pascal graph:
// phi(h,t) = (a)_h (b)_t / (a+b)_{h+t}.
template <class S>
Phi<S> polya_phi(const ScalarSpec& a, const ScalarSpec& b, int N) {
  S av = a.as<S>(), bv = b.as<S>();
  if (!(av > scalar_traits<S>::zero()) || !(bv > scalar_traits<S>::zero()))
    raise(errc::invalid_parameter, "Polya family requires a > 0, b > 0");
  PascalGraph<S> g = make_graph<S>(FamilySpec::pascal());
  Phi<S> phi{g, TriArray<S>(N, scalar_traits<S>::zero()), Support::full(),
             {"polya", {{"a", a.describe()}, {"b", b.describe()}}}};
  auto rise_a = detail::prefix_products<S>(N, [&](int k) -> S { return av + scalar_traits<S>::from_long(k); });
  auto rise_b = detail::prefix_products<S>(N, [&](int k) -> S { return bv + scalar_traits<S>::from_long(k); });
  auto rise_ab =
      detail::prefix_products<S>(N, [&](int k) -> S { return av + bv + scalar_traits<S>::from_long(k); });
  for (int n = 0; n <= N; ++n)
    for (int h = 0; h <= n; ++h) phi.values.at(h, n - h) = rise_a[h] * rise_b[n - h] / rise_ab[n];
  return phi;
}

// Generalized Stirling measure P_theta: phi_theta(h,t) = B_h(theta)/A_{h+t}(theta)
// with A_n = prod_{j<n}(theta + a_j), B_h = prod_{j<h}(theta - b_j).
// Valid when theta exceeds every b_j on the horizon, or equals a strict
// running maximum b_m, in which case the support is {h <= m}.
template <class S>
Phi<S> gstirling_theta_phi(const SeqSpec& a_seq, const SeqSpec& b_seq, const ScalarSpec& theta, int N,
                           std::string family_name = "gstirling_theta") {
  S th = theta.as<S>();
  FamilySpec fam = FamilySpec::gen_stirling(a_seq, b_seq);
  PascalGraph<S> g = make_graph<S>(fam);

  std::vector<S> a_fac, b_fac;
  for (int j = 0; j < N; ++j) {
    S f = th + a_seq.eval<S>(j);
    if (!(f > scalar_traits<S>::zero()))
      raise(errc::invalid_parameter, "theta + a_" + std::to_string(j) + " <= 0");
    a_fac.push_back(f);
  }
  Support support = Support::full();
  for (int j = 0; j < N; ++j) {
    S f = th - b_seq.eval<S>(j);
    if (f < scalar_traits<S>::zero())
      raise(errc::invalid_parameter,
            "theta < b_" + std::to_string(j) + "; requires theta > sup b_h or theta = b_m at a strict running maximum");
    if (f == scalar_traits<S>::zero()) {
      support = Support::heads_at_most(j);
      break;
    }
    b_fac.push_back(f);
  }

  Phi<S> phi{g, TriArray<S>(N, scalar_traits<S>::zero()), support,
             {std::move(family_name),
              {{"a", a_seq.describe()}, {"b", b_seq.describe()}, {"theta", theta.describe()}}}};
  std::vector<S> A = detail::prefix_products<S>(N, [&](int k) -> S { return a_fac[static_cast<size_t>(k)]; });
  int h_max = support.kind == Support::Kind::HeadsAtMost ? support.m : N;
  std::vector<S> B = detail::prefix_products<S>(
      std::min(h_max, N), [&](int k) -> S { return b_fac[static_cast<size_t>(k)]; });
  for (int n = 0; n <= N; ++n)
    for (int h = 0; h <= n; ++h)
      if (h <= h_max) phi.values.at(h, n - h) = B[h] / A[n];
  return phi;
}

// Space-time random walk: generalized Stirling-I (b == 0),
// phi_theta(h,t) = theta^h / prod_{j<h+t}(theta + a_j).
template <class S>
Phi<S> spacetime_walk_phi(const SeqSpec& a_seq, const ScalarSpec& theta, int N) {
  return gstirling_theta_phi<S>(a_seq, SeqSpec::constant(ScalarSpec(0L)), theta, N, "spacetime_walk");
}

// Chinese restaurant process measure (a_n = n+1, b_h = -alpha(h+1)):
// phi_theta(h,t) = (theta+alpha)(theta+2 alpha)...(theta+h alpha)/(theta+1)_{h+t}.
// Positivity: theta >= 0 for 0 <= alpha < 1, and -theta/alpha a positive
// integer for alpha < 0.
template <class S>
Phi<S> crp_phi(const ScalarSpec& alpha, const ScalarSpec& theta, int N) {
  double ad = alpha.as_double();
  if (ad >= 1.0) raise(errc::invalid_parameter, "CRP requires alpha < 1");
  if (ad >= 0.0) {
    if (theta.as_double() < 0) raise(errc::invalid_parameter, "CRP with 0 <= alpha < 1 requires theta >= 0");
  } else {
    // -theta/alpha must be a positive integer; exact check when possible.
    if (alpha.exact_representable() && theta.exact_representable()) {
      Rational ratio = -theta.as_rational() / alpha.as_rational();
      if (ratio.get_den() != 1 || ratio <= 0)
        raise(errc::invalid_parameter, "CRP with alpha < 0 requires -theta/alpha a positive integer");
    } else {
      double ratio = -theta.as_double() / ad;
      if (ratio < 0.5 || std::abs(ratio - std::round(ratio)) > 1e-9)
        raise(errc::invalid_parameter, "CRP with alpha < 0 requires -theta/alpha a positive integer");
    }
  }
  SeqSpec a_seq = SeqSpec::linear(ScalarSpec(1L), ScalarSpec(1L));  // n+1
  ScalarSpec minus_alpha = alpha.exact_representable() ? ScalarSpec(Rational(-alpha.as_rational()))
                                                       : ScalarSpec(-alpha.as_double());
  SeqSpec b_seq = SeqSpec::linear(minus_alpha, minus_alpha);  // -alpha(h+1)
  Phi<S> phi = gstirling_theta_phi<S>(a_seq, b_seq, theta, N, "crp");
  phi.provenance.params = {{"alpha", alpha.describe()}, {"theta", theta.describe()}};
  return phi;
}

// The gamma-variant of the CRP at alpha = -1: represented by its kernel
// p = (h+1)(h+1-gamma)/((n+1)(n+1+gamma)); its probability function is
// path probability divided by path weight on the CRP(-1) graph:
// phi(h,t) = h! (1-gamma)_h (gamma)_t / (n! (1+gamma)_n).
template <class S>
Phi<S> crp_gamma_phi(const ScalarSpec& gamma, int N) {
  S gv = gamma.as<S>();
  if (!(gv > scalar_traits<S>::zero()) || !(gv < scalar_traits<S>::one()))
    raise(errc::invalid_parameter, "gamma-CRP requires 0 < gamma < 1");
  SeqSpec a_seq = SeqSpec::linear(ScalarSpec(1L), ScalarSpec(1L));
  SeqSpec b_seq = SeqSpec::linear(ScalarSpec(1L), ScalarSpec(1L));
  PascalGraph<S> g = make_graph<S>(FamilySpec::gen_stirling(a_seq, b_seq));
  Phi<S> phi{g, TriArray<S>(N, scalar_traits<S>::zero()), Support::full(),
             {"crp_gamma", {{"gamma", gamma.describe()}}}};
  auto num_h = detail::prefix_products<S>(N, [&](int k) -> S {
    return scalar_traits<S>::from_long(k + 1) * (scalar_traits<S>::from_long(k + 1) - gv);
  });
  auto num_t = detail::prefix_products<S>(N, [&](int k) -> S { return gv + scalar_traits<S>::from_long(k); });
  auto den_n = detail::prefix_products<S>(N, [&](int k) -> S {
    return scalar_traits<S>::from_long(k + 1) * (scalar_traits<S>::from_long(k + 1) + gv);
  });
  for (int n = 0; n <= N; ++n)
    for (int h = 0; h <= n; ++h) phi.values.at(h, n - h) = num_h[h] * num_t[n - h] / den_n[n];
  return phi;
}

// The finitely supported extremes of the q-Pascal triangle (0 < q < 1):
// phi(h,t) = q^{(m-t)h} prod_{j<t}(1 - q^{m-j}), supported on {t <= m},
// with first-head probability q^m.
template <class S>
Phi<S> qpascal_extreme_phi(const ScalarSpec& q, int m, int N) {
  S qv = q.as<S>();
  if (!(qv > scalar_traits<S>::zero()) || !(qv < scalar_traits<S>::one()))
    raise(errc::invalid_parameter, "q-Pascal extremes require 0 < q < 1");
  if (m < 0) raise(errc::invalid_parameter, "m must be >= 0");
  PascalGraph<S> g = make_graph<S>(FamilySpec::q_pascal(q));
  Phi<S> phi{g, TriArray<S>(N, scalar_traits<S>::zero()), Support::tails_at_most(m),
             {"qpascal_extreme", {{"q", q.describe()}, {"m", std::to_string(m)}}}};
  // tail_prod[t] = prod_{j<t}(1 - q^{m-j})
  std::vector<S> tail_prod = detail::prefix_products<S>(
      std::min(m, N), [&](int j) -> S { return scalar_traits<S>::one() - rat_pow(qv, m - j); });
  for (int n = 0; n <= N; ++n)
    for (int h = 0; h <= n; ++h) {
      int t = n - h;
      if (t <= m) phi.values.at(h, t) = rat_pow(qv, static_cast<long>(m - t) * h) * tail_prod[t];
    }
  return phi;
}

// q-analogue of the Polya urn on the q-Pascal graph, with integer alpha,
// beta >= 1 and [m]_q = 1 + q + ... + q^{m-1}:
// p = [alpha+h]_q/[alpha+beta+n]_q, q-step = [beta+t]_q q^{alpha+h}/[alpha+beta+n]_q,
// phi(h,t) = q^{alpha t} prod_{i<h}[alpha+i]_q prod_{j<t}[beta+j]_q / prod_{k<n}[alpha+beta+k]_q.
template <class S>
Phi<S> qpolya_phi(const ScalarSpec& q, long alpha, long beta, int N) {
  S qv = q.as<S>();
  if (!(qv > scalar_traits<S>::zero()) || qv == scalar_traits<S>::one())
    raise(errc::invalid_parameter, "q-Polya requires q > 0, q != 1");
  if (alpha < 1 || beta < 1) raise(errc::invalid_parameter, "q-Polya requires integer alpha, beta >= 1");
  PascalGraph<S> g = make_graph<S>(FamilySpec::q_pascal(q));
  Phi<S> phi{g, TriArray<S>(N, scalar_traits<S>::zero()), Support::full(),
             {"qpolya",
              {{"q", q.describe()}, {"alpha", std::to_string(alpha)}, {"beta", std::to_string(beta)}}}};
  auto bracket = [&qv](long m) -> S {
    return (scalar_traits<S>::one() - rat_pow(qv, m)) / (scalar_traits<S>::one() - qv);
  };
  auto rise_a = detail::prefix_products<S>(N, [&](int k) -> S { return bracket(alpha + k); });
  auto rise_b = detail::prefix_products<S>(N, [&](int k) -> S { return bracket(beta + k); });
  auto rise_ab = detail::prefix_products<S>(N, [&](int k) -> S { return bracket(alpha + beta + k); });
  for (int n = 0; n <= N; ++n)
    for (int h = 0; h <= n; ++h) {
      int t = n - h;
      phi.values.at(h, t) = rat_pow(qv, alpha * static_cast<long>(t)) * rise_a[h] * rise_b[t] / rise_ab[n];
    }
  return phi;
}

// Eulerian graph extremes. Q_{m,infty} is pinned down by requiring the head
// probability to vanish at h = m, which forces theta = m + b and
// phi(h,t) = [m!/(m-h)!] (m+a+b)_t / ((m+b)^n (a+b)_n) on {h <= m}.
template <class S>
Phi<S> eulerian_qm_phi(const ScalarSpec& a, const ScalarSpec& b, int m, int N) {
  S av = a.as<S>(), bv = b.as<S>();
  if (!(av > scalar_traits<S>::zero()) || !(bv > scalar_traits<S>::zero()))
    raise(errc::invalid_parameter, "Eulerian family requires a > 0, b > 0");
  if (m < 0) raise(errc::invalid_parameter, "m must be >= 0");
  PascalGraph<S> g = make_graph<S>(FamilySpec::eulerian(a, b));
  Phi<S> phi{g, TriArray<S>(N, scalar_traits<S>::zero()), Support::heads_at_most(m),
             {"eulerian_qm", {{"a", a.describe()}, {"b", b.describe()}, {"m", std::to_string(m)}}}};
  S theta = scalar_traits<S>::from_long(m) + bv;
  auto falling_m = detail::prefix_products<S>(std::min(m, N),
                                              [&](int k) -> S { return scalar_traits<S>::from_long(m - k); });
  auto rise_t = detail::prefix_products<S>(
      N, [&](int k) -> S { return scalar_traits<S>::from_long(m + k) + av + bv; });
  auto den = detail::prefix_products<S>(
      N, [&](int k) -> S { return theta * (av + bv + scalar_traits<S>::from_long(k)); });
  for (int n = 0; n <= N; ++n)
    for (int h = 0; h <= n; ++h)
      if (h <= m) phi.values.at(h, n - h) = falling_m[h] * rise_t[n - h] / den[n];
  return phi;
}

// Transposed construction: Q_{infty,m} on the Eulerian graph, supported on {t <= m}.
template <class S>
Phi<S> eulerian_qinf_phi(const ScalarSpec& a, const ScalarSpec& b, int m, int N) {
  S av = a.as<S>(), bv = b.as<S>();
  if (!(av > scalar_traits<S>::zero()) || !(bv > scalar_traits<S>::zero()))
    raise(errc::invalid_parameter, "Eulerian family requires a > 0, b > 0");
  if (m < 0) raise(errc::invalid_parameter, "m must be >= 0");
  PascalGraph<S> g = make_graph<S>(FamilySpec::eulerian(a, b));
  Phi<S> phi{g, TriArray<S>(N, scalar_traits<S>::zero()), Support::tails_at_most(m),
             {"eulerian_qinf", {{"a", a.describe()}, {"b", b.describe()}, {"m", std::to_string(m)}}}};
  S theta = scalar_traits<S>::from_long(m) + av;
  auto falling_m = detail::prefix_products<S>(std::min(m, N),
                                              [&](int k) -> S { return scalar_traits<S>::from_long(m - k); });
  auto rise_h = detail::prefix_products<S>(
      N, [&](int k) -> S { return scalar_traits<S>::from_long(m + k) + av + bv; });
  auto den = detail::prefix_products<S>(
      N, [&](int k) -> S { return theta * (av + bv + scalar_traits<S>::from_long(k)); });
  for (int n = 0; n <= N; ++n)
    for (int h = 0; h <= n; ++h) {
      int t = n - h;
      if (t <= m) phi.values.at(h, t) = falling_m[t] * rise_h[h] / den[n];
    }
  return phi;
}

// The natural fully supported measure of the Eulerian graph (Friedman urn):
// phi*(h,t) = 1/(a+b)_{h+t}.
template <class S>
Phi<S> eulerian_star_phi(const ScalarSpec& a, const ScalarSpec& b, int N) {
  S av = a.as<S>(), bv = b.as<S>();
  if (!(av > scalar_traits<S>::zero()) || !(bv > scalar_traits<S>::zero()))
    raise(errc::invalid_parameter, "Eulerian family requires a > 0, b > 0");
  PascalGraph<S> g = make_graph<S>(FamilySpec::eulerian(a, b));
  Phi<S> phi{g, TriArray<S>(N, scalar_traits<S>::zero()), Support::full(),
             {"eulerian_star", {{"a", a.describe()}, {"b", b.describe()}}}};
  auto den = detail::prefix_products<S>(
      N, [&](int k) -> S { return av + bv + scalar_traits<S>::from_long(k); });
  for (int n = 0; n <= N; ++n)
    for (int h = 0; h <= n; ++h) phi.values.at(h, n - h) = scalar_traits<S>::one() / den[n];
  return phi;
}

}  // namespace wpg

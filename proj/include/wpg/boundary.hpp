#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "wpg/family.hpp"
#include "wpg/graph.hpp"
#include "wpg/grid.hpp"
#include "wpg/measures.hpp"

namespace wpg {

// --- elementary symmetric functions -------------------------------------

// All of e_0..e_{k_max} of xs, by the stable column recurrence. Exact in
// rational mode; for nonnegative inputs every float operation adds
// nonnegative terms, so no cancellation occurs.
template <class S>
std::vector<S> elementary_symmetric_all(const std::vector<S>& xs, int k_max) {
  if (k_max < 0) raise(errc::invalid_parameter, "k must be >= 0");
  std::vector<S> e(static_cast<size_t>(k_max) + 1, scalar_traits<S>::zero());
  e[0] = scalar_traits<S>::one();
  for (size_t i = 0; i < xs.size(); ++i)
    for (int j = std::min<int>(k_max, static_cast<int>(i) + 1); j >= 1; --j)
      e[static_cast<size_t>(j)] += xs[i] * e[static_cast<size_t>(j) - 1];
  return e;
}

template <class S>
S elementary_symmetric(const std::vector<S>& xs, int k) {
  if (k < 0) raise(errc::invalid_parameter, "k must be >= 0");
  if (k > static_cast<int>(xs.size())) return scalar_traits<S>::zero();
  return elementary_symmetric_all(xs, k)[static_cast<size_t>(k)];
}

// --- boundary classification ---------------------------------------------

enum class BoundaryClass { Continuous, Discrete, MixedEndpoints, Inconclusive };

std::string to_string(BoundaryClass c);

struct ClassifyResult {
  BoundaryClass verdict = BoundaryClass::Inconclusive;
  std::string reason;
  // cumulative partial sums of sum a_n/(1+a_n)^2 at probe checkpoints
  std::vector<double> partial_sums;
};

// Decides divergence of sum a_n/(1+a_n)^2 analytically for closed-form
// presets; file-backed sequences without a tail rule are inconclusive and
// come back with partial sums up to n_probe.
ClassifyResult classify_gstirling1(const SeqSpec& a_spec, int n_probe = 200);

// --- finitely supported extremes ------------------------------------------

enum class QmStatus { Exists, Absent, AmbiguousTie };

template <class S>
struct QmResult {
  QmStatus status = QmStatus::Absent;
  S pi = scalar_traits<S>::zero();  // (b_m - b_0)/(b_m + a_0) when it exists
};

// Q_{m,infty} exists iff b_m is a strict maximum of b_0..b_m. Ties within
// 1e-12 (relative) are reported as ambiguous in float mode; rational mode
// compares exactly.
template <class S>
QmResult<S> qm_exists_gstirling(const SeqSpec& b_spec, const SeqSpec& a_spec, int m) {
  if (m < 0) raise(errc::invalid_parameter, "m must be >= 0");
  QmResult<S> res;
  S bm = b_spec.eval<S>(m);
  for (int h = 0; h < m; ++h) {
    S bh = b_spec.eval<S>(h);
    if constexpr (!scalar_traits<S>::exact) {
      double scale = std::max({1.0, std::abs(scalar_traits<S>::to_double(bm)),
                               std::abs(scalar_traits<S>::to_double(bh))});
      if (std::abs(scalar_traits<S>::to_double(bm - bh)) <= 1e-12 * scale) {
        res.status = QmStatus::AmbiguousTie;
        return res;
      }
    }
    if (!(bm > bh)) {
      res.status = QmStatus::Absent;
      return res;
    }
  }
  S denom = bm + a_spec.eval<S>(0);
  if (!(denom > scalar_traits<S>::zero()))
    raise(errc::invalid_parameter, "b_m + a_0 must be positive");
  res.status = QmStatus::Exists;
  res.pi = (bm - b_spec.eval<S>(0)) / denom;
  return res;
}

// --- the tail variable Z of the space-time walk ---------------------------

// Law of Z = lim (H_n - #M_n) under P_theta on a generalized Stirling-I
// graph in the convergent case sum p(n) q(n) < infinity.
struct ZDistribution {
  long z_min = 0;
  std::vector<double> weights;  // weight of z = z_min + i
  double truncation_error_bound = 0.0;
  long cut = 0;      // trials 0..cut-1 expanded exactly
  long l_count = 0;  // |L| within the prefix (p <= q)
  long m_count = 0;  // |M| within the prefix (p > q)

  double weight_at(long z) const {
    long i = z - z_min;
    if (i < 0 || i >= static_cast<long>(weights.size())) return 0.0;
    return weights[static_cast<size_t>(i)];
  }
  double total() const;
};

ZDistribution z_distribution(const SeqSpec& a_spec, const ScalarSpec& theta, double tol);

// --- assembled boundary reports -------------------------------------------

struct ExtremeDesc {
  std::string kind;  // trivial | Q_m_inf | Q_inf_m | P_theta_family | P_star | P_z
  std::optional<long> m;
  std::optional<long> z;
  std::optional<double> theta;  // Q_{m,infty} is the measure at theta = b_m
  double pi = 0.0;                // for families: lower end of the pi range
  std::optional<double> pi_hi;    // families: upper end
  std::optional<double> weight;   // decomposition weight (P_z)
  std::optional<std::string> pi_exact;
  std::string note;
};

struct BoundaryReport {
  BoundaryClass classification = BoundaryClass::Inconclusive;
  std::vector<ExtremeDesc> extremes;
  std::vector<double> accumulation_points;
  std::vector<std::string> evidence;
  std::optional<ZDistribution> z_weights;
};

struct BoundaryOptions {
  int m_display = 8;       // finitely supported extremes listed per side
  double z_theta = 1.0;    // reference theta for the Z-decomposition
  double z_tol = 1e-9;
  int n_probe = 200;       // partial-sum probe for inconclusive cases
};

BoundaryReport boundary_report(const FamilySpec& family, const BoundaryOptions& opts = {});

// --- moment problems -------------------------------------------------------

template <class S>
struct HausdorffResult {
  std::optional<TriArray<S>> array;   // present iff nonnegative throughout
  std::optional<GridPoint> witness;   // first violation in level order
  S witness_value = scalar_traits<S>::zero();
};

// Reconstructs the bivariate array from its level-0 row by weighted
// differencing: phi(h,t+1) = (phi(h,t) - w1(h,t) phi(h+1,t)) / w0(h,t).
// Returns the array if every entry is >= 0 (>= -tol in float mode), else
// the first violation scanning levels upward (t ascending within a level).
template <class S>
HausdorffResult<S> hausdorff_check(const PascalGraph<S>& g, const std::vector<S>& seq, int N,
                                   double tol = 0.0) {
  if (static_cast<int>(seq.size()) < N + 1)
    raise(errc::invalid_parameter, "sequence shorter than horizon + 1");
  TriArray<S> phi(N, scalar_traits<S>::zero());
  for (int h = 0; h <= N; ++h) phi.at(h, 0) = seq[static_cast<size_t>(h)];
  for (int t = 1; t <= N; ++t)
    for (int h = 0; h + t <= N; ++h)
      phi.at(h, t) =
          (phi.at(h, t - 1) - g.w1(h, t - 1) * phi.at(h + 1, t - 1)) / g.w0(h, t - 1);

  S floor_val = scalar_traits<S>::exact ? scalar_traits<S>::zero() : -scalar_traits<S>::tolerance(tol);
  HausdorffResult<S> res;
  for (int n = 0; n <= N; ++n)
    for (int h = n; h >= 0; --h) {  // t ascending within the level
      int t = n - h;
      if (phi.at(h, t) < floor_val) {
        res.witness = GridPoint{h, t};
        res.witness_value = phi.at(h, t);
        return res;
      }
    }
  res.array = std::move(phi);
  return res;
}

template <class S>
struct AtomRecovery {
  std::vector<S> atom_weights;  // mu({q^m}), m = 0..m_max
  S zero_mass = scalar_traits<S>::zero();  // mu({0})
  S max_residual = scalar_traits<S>::zero();
};

// Inverts seq(n) = sum_m mu_m q^{mn} (+ mu({0}) at n=0) by annihilation
// peeling: the operator (K_i f)(n) = f(n) - f(n+1)/q^i kills the atom at q^i
// and scales atom j by 1 - q^{j-i}. Exact in rational mode, which is the
// only way to hit tight tolerances: the atom system's conditioning amplifies
// double-input quantization to around 1e-9 already at six atoms. Throws
// NotAMixture when residuals or recovered masses violate the tolerance.
template <class S>
AtomRecovery<S> q_atom_recovery(const std::vector<S>& seq, const S& q, int m_max, double tol) {
  using T = scalar_traits<S>;
  using Acc = std::conditional_t<T::exact, Rational, long double>;
  if (!(q > T::zero() && q < T::one())) raise(errc::invalid_parameter, "atom recovery requires 0 < q < 1");
  if (m_max < 0) raise(errc::invalid_parameter, "m_max must be >= 0");
  if (static_cast<int>(seq.size()) < m_max + 2)
    raise(errc::invalid_parameter, "need at least m_max + 2 sequence values");
  if (tol < 0) raise(errc::invalid_parameter, "tolerance must be >= 0");
  S tolerance = T::tolerance(tol);
  if (T::abs(seq[0] - T::one()) > tolerance) raise(errc::not_a_mixture, "seq(0) must equal 1");

  const int M = m_max;
  Acc qa = static_cast<Acc>(q);
  AtomRecovery<S> out;
  out.atom_weights.assign(static_cast<size_t>(M) + 1, T::zero());
  std::vector<Acc> qpow(static_cast<size_t>(M) + 1);
  for (int i = 0; i <= M; ++i) qpow[static_cast<size_t>(i)] = rat_pow_acc(qa, i);
  for (int m = 0; m <= M; ++m) {
    std::vector<Acc> g(seq.size() - 1);
    for (size_t n = 1; n < seq.size(); ++n) g[n - 1] = static_cast<Acc>(seq[n]);
    Acc scale = rat_pow_acc(qa, m);  // evaluation at n = 1 contributes q^m
    for (int i = 0; i <= M; ++i) {
      if (i == m) continue;
      for (size_t n = 0; n + 1 < g.size(); ++n) g[n] -= g[n + 1] / qpow[static_cast<size_t>(i)];
      g.pop_back();
      scale *= Acc(1) - rat_pow_acc(qa, m - i);
    }
    out.atom_weights[static_cast<size_t>(m)] = static_cast<S>(g[0] / scale);
  }

  S mass = T::zero();
  for (const S& w : out.atom_weights) {
    if (w < -tolerance)
      raise(errc::not_a_mixture, "recovered atom weight " + T::to_string(w) + " below -tol");
    mass += w;
  }
  out.zero_mass = T::one() - mass;
  if (out.zero_mass < -tolerance)
    raise(errc::not_a_mixture, "atom masses exceed 1 by " + T::to_string(-out.zero_mass));

  for (size_t n = 1; n < seq.size(); ++n) {
    Acc s = 0;
    for (int m = 0; m <= M; ++m)
      s += static_cast<Acc>(out.atom_weights[static_cast<size_t>(m)]) *
           rat_pow_acc(qa, static_cast<long>(m) * static_cast<long>(n));
    S r = T::abs(static_cast<S>(s) - seq[n]);
    if (r > out.max_residual) out.max_residual = r;
  }
  if (out.max_residual > tolerance)
    raise(errc::not_a_mixture,
          "reconstruction residual " + T::to_string(out.max_residual) + " exceeds tol");
  return out;
}

}  // namespace wpg

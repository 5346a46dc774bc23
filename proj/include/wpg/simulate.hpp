#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wpg/measures.hpp"
#include "wpg/sequence.hpp"
#include "wpg/stats.hpp"

namespace wpg {

// Named coin-tossing processes with closed-form kernels. These are the
// processes the simulator can run at large horizons without tables.
struct ProcessSpec {
  enum class Kind {
    Bernoulli,       // p = theta/(1+theta)
    Polya,           // p = (h+a)/(n+a+b)
    Friedman,        // p = (t+a)/(n+a+b)
    Crp,             // p = (theta+alpha(h+1))/(n+1+theta)
    CrpGamma,        // p = (h+1)(h+1-gamma)/((n+1)(n+1+gamma))
    Stirling1,       // p = theta/(theta+n+1)
    SpaceTimeWalk,   // p = theta/(theta+a_n)
    Stirling2Theta,  // p = (theta-b_h)/theta
    QPascalExtreme,  // p = q^{m-t} on {t <= m}
    QPolya,          // p = [alpha+h]_q/[alpha+beta+n]_q
  };

  Kind kind = Kind::Bernoulli;
  double theta = 1.0, alpha = 0.0, gamma = 0.5, a = 1.0, b = 1.0, q = 0.5;
  int m = 0;
  long qp_alpha = 1, qp_beta = 1;  // q-Polya integer parameters
  SeqSpec a_seq = SeqSpec::linear(ScalarSpec(1L), ScalarSpec(1L));
  SeqSpec b_seq = SeqSpec::linear(ScalarSpec(1L), ScalarSpec(1L));

  std::string name() const;
};

TransitionKernel<double> process_kernel(const ProcessSpec& spec);

struct EndpointHistogram {
  int n = 0;
  std::vector<long long> counts;  // counts[h], h = 0..n
  long long total = 0;
};

// R independent chains of n steps; counts of the endpoint head count.
// Bit-identical for a fixed (seed, n, reps) whatever the thread count.
EndpointHistogram sample_paths(const TransitionKernel<double>& kernel, int n, long long reps,
                               uint64_t seed, bool parallel = true);

// Full-path census for small n: counts per increment bitmask, bit i set
// meaning a head at step i. Requires n <= 20.
std::vector<long long> sample_path_bitmasks(const TransitionKernel<double>& kernel, int n,
                                            long long reps, uint64_t seed, bool parallel = true);

// Exact kernel-product probability of every increment bitmask; paths that
// leave the kernel's support get probability zero.
std::vector<double> exact_path_probabilities(const TransitionKernel<double>& kernel, int n);

// Endpoint histogram against the exact masses phi(h,n-h) d(h,n-h).
GofReport empirical_vs_exact(const EndpointHistogram& hist, const std::vector<double>& exact_pmf,
                             double alpha = 1e-3);

enum class Scaler { N, LogN, PowAlpha };

struct LlnReport {
  double mean = 0.0, sd = 0.0;
  std::vector<double> values;  // per-replicate H_n / scaler, indexed by replicate
  std::optional<double> exact_mean_hn;  // Stirling-1: sum_{j<n} theta/(theta+j+1)
};

LlnReport lln_diagnostic(const ProcessSpec& spec, Scaler scaler, double pow_alpha, int n,
                         long long reps, uint64_t seed, bool parallel = true);

struct ZEstimate {
  long z_min = 0;
  std::vector<long long> counts;
  long long total = 0;
};

// Empirical law of H_n - #M_n under the space-time walk P_theta.
ZEstimate z_estimate(const SeqSpec& a_spec, double theta, int n, long long reps, uint64_t seed,
                     bool parallel = true);

struct CrpSample {
  std::vector<long long> block_sizes;
  std::vector<bool> new_block;  // one entry per inserted element 2..n
};

// Partition-valued growth processes; n is the number of elements partitioned.
// `stream` selects the replicate substream of the seed.
CrpSample crp_sample(double alpha, double theta, int n, uint64_t seed, uint64_t stream = 0);
CrpSample crp_gamma_sample(double gamma, int n, uint64_t seed, uint64_t stream = 0);

// Coupon-collector sampling scheme with geometric waiting times between
// head increments; returns H_0..H_n.
std::vector<int> coupon_collector_sample(const SeqSpec& b_seq, double theta, int n, uint64_t seed,
                                         uint64_t stream = 0);

// Samples paths of the elementary measure Q_terminal by running the exact
// backward chain from the dimension table (no rejection): the step into
// (h,t) came through the head edge with probability w1(h-1,t) d(h-1,t)/d(h,t).
// counts[m][h] = number of replicates with H_m = h, for every m <= level.
std::vector<std::vector<long long>> sample_conditioned_heads(const DimensionTable<double>& dims,
                                                             GridPoint terminal, long long reps,
                                                             uint64_t seed, bool parallel = true);

struct ExchangeabilityReport {
  long long total = 0;
  double uniformity_p_value = 1.0;    // within-endpoint uniformity (exchangeable case)
  double max_pair_ratio_error = 0.0;  // empirical transposition ratios vs the cocycle
  long long pairs_checked = 0;
};

// Samples full paths and checks quasi-invariance under elementary
// transpositions: path-frequency ratios across a transposition should match
// the graph's cocycle (identically 1 for exchangeable families).
ExchangeabilityReport exchangeability_check(const TransitionKernel<double>& kernel,
                                            const PascalGraph<double>& g, int n, long long reps,
                                            uint64_t seed);

}  // namespace wpg

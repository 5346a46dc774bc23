#pragma once

#include <functional>
#include <vector>

#include "wpg/graph.hpp"
#include "wpg/grid.hpp"
#include "wpg/scalar.hpp"

namespace wpg {

// Test oracles, shipped in the library so the CLI can expose a self-check.
// They deliberately avoid the dimension-table recursion.

// counts[h] = permutations of [n+1] with h+1 lower records, by exhaustive
// enumeration. n <= 9 (factorial blowup).
std::vector<long long> record_count_oracle(int n);

// counts[h] = permutations of [n+1] with h descents, by exhaustive
// enumeration. n <= 9.
std::vector<long long> descent_count_oracle(int n);

// Unsigned Stirling numbers of the first kind via c(n+1,k) = c(n,k-1) + n c(n,k).
// Returns rows 0..n_max, row n holding c(n, 0..n).
std::vector<std::vector<Rational>> stirling1_oracle(int n_max);

// Gaussian binomial coefficients via the recurrence dual to the graph's:
// C_q(n,k) = q^k C_q(n-1,k) + C_q(n-1,k-1). Row n holds C_q(n, 0..n).
std::vector<std::vector<Rational>> qbinomial_oracle(int n_max, const Rational& q);

// Enumerates every monotone lattice path from `from` to `to`; the callback
// receives the step sequence (true = head) and the path's weight product.
template <class S>
void for_each_path(const PascalGraph<S>& g, GridPoint from, GridPoint to,
                   const std::function<void(const std::vector<bool>&, const S&)>& fn) {
  if (to.h < from.h || to.t < from.t) raise(errc::unreachable_pair, "endpoint does not dominate start");
  std::vector<bool> steps;
  std::function<void(GridPoint, const S&)> rec = [&](GridPoint at, const S& weight) {
    if (at == to) {
      fn(steps, weight);
      return;
    }
    if (at.h < to.h) {
      steps.push_back(true);
      rec(GridPoint{at.h + 1, at.t}, weight * g.w1(at.h, at.t));
      steps.pop_back();
    }
    if (at.t < to.t) {
      steps.push_back(false);
      rec(GridPoint{at.h, at.t + 1}, weight * g.w0(at.h, at.t));
      steps.pop_back();
    }
  };
  rec(from, scalar_traits<S>::one());
}

// Brute-force dimension: sum of path-weight products over all paths.
template <class S>
S path_weight_sum(const PascalGraph<S>& g, GridPoint from, GridPoint to) {
  S total = scalar_traits<S>::zero();
  for_each_path<S>(g, from, to, [&](const std::vector<bool>&, const S& w) { total += w; });
  return total;
}

}  // namespace wpg

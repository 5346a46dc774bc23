#include "wpg/oracles.hpp"

#include <algorithm>
#include <numeric>

namespace wpg {

namespace {

void check_small(int n) {
  if (n < 0) raise(errc::invalid_parameter, "oracle index must be >= 0");
  if (n > 9) raise(errc::too_large, "permutation oracle limited to n <= 9");
}

}  // namespace

std::vector<long long> record_count_oracle(int n) {
  check_small(n);
  std::vector<int> perm(n + 1);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<long long> counts(n + 1, 0);
  do {
    int records = 0;
    int running_min = perm[0] + 1;
    for (int v : perm)
      if (v < running_min) {
        ++records;
        running_min = v;
      }
    ++counts[records - 1];  // h+1 records -> label h
  } while (std::next_permutation(perm.begin(), perm.end()));
  return counts;
}

std::vector<long long> descent_count_oracle(int n) {
  check_small(n);
  std::vector<int> perm(n + 1);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<long long> counts(n + 1, 0);
  do {
    int descents = 0;
    for (size_t i = 0; i + 1 < perm.size(); ++i)
      if (perm[i] > perm[i + 1]) ++descents;
    ++counts[descents];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return counts;
}

std::vector<std::vector<Rational>> stirling1_oracle(int n_max) {
  std::vector<std::vector<Rational>> rows;
  rows.push_back({Rational(1)});  // c(0,0) = 1
  for (int n = 0; n < n_max; ++n) {
    const auto& prev = rows.back();
    std::vector<Rational> row(n + 2, Rational(0));
    for (int k = 0; k <= n + 1; ++k) {
      if (k >= 1) row[k] += prev[k - 1];
      if (k <= n) row[k] += Rational(n) * prev[k];
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::vector<Rational>> qbinomial_oracle(int n_max, const Rational& q) {
  std::vector<std::vector<Rational>> rows;
  rows.push_back({Rational(1)});
  for (int n = 1; n <= n_max; ++n) {
    const auto& prev = rows.back();
    std::vector<Rational> row(n + 1, Rational(0));
    for (int k = 0; k <= n; ++k) {
      if (k <= n - 1) row[k] += rat_pow(q, k) * prev[k];
      if (k >= 1) row[k] += prev[k - 1];
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace wpg

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "wpg/graph.hpp"
#include "wpg/grid.hpp"

namespace wpg {

enum class FillMode { Auto, Serial, Parallel };

// Weighted path counts d(h,t) from the origin, on a triangular truncation.
// d(h,t) = w1(h-1,t) d(h-1,t) + w0(h,t-1) d(h,t-1), d(0,0) = 1.
//
// Entries on a level depend only on the previous level, so levels fill in
// order with the entries of each level computed independently; the parallel
// fill partitions a level across threads and gives results identical to the
// serial reference. The per-level barrier dominates at the table sizes the
// benchmark covers, so Auto stays serial; Parallel is opt-in.
template <class S>
class DimensionTable {
 public:
  DimensionTable(PascalGraph<S> g, int max_level, FillMode mode = FillMode::Auto)
      : g_(std::move(g)), d_(max_level, scalar_traits<S>::zero()) {
    fill(mode == FillMode::Parallel);
  }

  const PascalGraph<S>& graph() const { return g_; }
  int max_level() const { return d_.max_level(); }
  const S& at(int h, int t) const { return d_.at(h, t); }
  const S& at(GridPoint p) const { return d_.at(p.h, p.t); }

 private:
  void compute_entry(int h, int t) {
    S acc = scalar_traits<S>::zero();
    if (h > 0) acc += g_.w1(h - 1, t) * d_.at(h - 1, t);
    if (t > 0) acc += g_.w0(h, t - 1) * d_.at(h, t - 1);
    d_.at(h, t) = acc;
  }

  void fill(bool parallel);

  PascalGraph<S> g_;
  TriArray<S> d_;
};

template <class S>
void DimensionTable<S>::fill(bool parallel) {
  d_.at(0, 0) = scalar_traits<S>::one();
  for (int n = 1; n <= d_.max_level(); ++n) {
    if (parallel) {
#pragma omp parallel for schedule(static)
      for (int h = 0; h <= n; ++h) compute_entry(h, n - h);
    } else {
      for (int h = 0; h <= n; ++h) compute_entry(h, n - h);
    }
  }
}

// Sum of path weights from `from` to `to` (1 for the empty path).
template <class S>
S extended_dimension(const PascalGraph<S>& g, GridPoint from, GridPoint to) {
  if (to.h < from.h || to.t < from.t)
    raise(errc::unreachable_pair, "(" + std::to_string(to.h) + "," + std::to_string(to.t) +
                                      ") does not dominate (" + std::to_string(from.h) + "," +
                                      std::to_string(from.t) + ")");
  int dh = to.h - from.h, dt = to.t - from.t;
  RectArray<S> e(dh, dt, scalar_traits<S>::zero());
  e.at(0, 0) = scalar_traits<S>::one();
  for (int i = 0; i <= dh; ++i)
    for (int j = 0; j <= dt; ++j) {
      if (i == 0 && j == 0) continue;
      S acc = scalar_traits<S>::zero();
      if (i > 0) acc += g.w1(from.h + i - 1, from.t + j) * e.at(i - 1, j);
      if (j > 0) acc += g.w0(from.h + i, from.t + j - 1) * e.at(i, j - 1);
      e.at(i, j) = acc;
    }
  return e.at(dh, dt);
}

// One backward sweep from a fixed terminal: result.at(h,t) is the sum of
// path weights from (h,t) to the terminal, for every (h,t) it dominates.
// result.at(0,0) is the terminal's dimension.
template <class S>
RectArray<S> extension_to_terminal(const PascalGraph<S>& g, GridPoint terminal) {
  RectArray<S> e(terminal.h, terminal.t, scalar_traits<S>::zero());
  for (int h = terminal.h; h >= 0; --h)
    for (int t = terminal.t; t >= 0; --t) {
      if (h == terminal.h && t == terminal.t) {
        e.at(h, t) = scalar_traits<S>::one();
        continue;
      }
      S acc = scalar_traits<S>::zero();
      if (h < terminal.h) acc += g.w1(h, t) * e.at(h + 1, t);
      if (t < terminal.t) acc += g.w0(h, t) * e.at(h, t + 1);
      e.at(h, t) = acc;
    }
  return e;
}

// Martin kernel d(query; terminal) / d(terminal). Equals the elementary
// measure Q_terminal's probability function at the query point.
template <class S>
S martin_kernel(const PascalGraph<S>& g, GridPoint query, GridPoint terminal) {
  if (terminal.h < query.h || terminal.t < query.t)
    raise(errc::unreachable_pair, "terminal must dominate query");
  auto e = extension_to_terminal(g, terminal);
  return e.at(query.h, query.t) / e.at(0, 0);
}

// Martin-kernel values e(q)/e(0,0) at every query point h+t <= query_horizon
// for one terminal. In float mode each anti-diagonal of the backward sweep is
// renormalized (with log-scale bookkeeping) so that path sums far beyond the
// double range still give finite kernel ratios; exact mode sweeps directly.
template <class S>
TriArray<S> martin_kernel_estimates(const PascalGraph<S>& g, GridPoint terminal, int query_horizon) {
  TriArray<S> out(query_horizon, scalar_traits<S>::zero());
  if constexpr (scalar_traits<S>::exact) {
    auto e = extension_to_terminal(g, terminal);
    const S& denom = e.at(0, 0);
    for (int lvl = 0; lvl <= query_horizon; ++lvl)
      for (int h = 0; h <= lvl; ++h) {
        int t = lvl - h;
        if (h <= terminal.h && t <= terminal.t) out.at(h, t) = e.at(h, t) / denom;
      }
  } else {
    const int H = terminal.h, T = terminal.t;
    std::vector<double> prev(static_cast<size_t>(H) + 2, 0.0), cur(static_cast<size_t>(H) + 2, 0.0);
    TriArray<double> stored(query_horizon, 0.0);
    TriArray<double> stored_ls(query_horizon, 0.0);
    double logscale = 0.0;
    double denom_val = 1.0, denom_ls = 0.0;
    for (int lvl = H + T; lvl >= 0; --lvl) {
      int h_lo = std::max(0, lvl - T), h_hi = std::min(H, lvl);
      double vmax = 0.0;
      for (int h = h_lo; h <= h_hi; ++h) {
        int t = lvl - h;
        double v;
        if (lvl == H + T) {
          v = 1.0;
        } else {
          v = 0.0;
          if (h < H) v += scalar_traits<S>::to_double(g.w1(h, t)) * prev[static_cast<size_t>(h) + 1];
          if (t < T) v += scalar_traits<S>::to_double(g.w0(h, t)) * prev[static_cast<size_t>(h)];
        }
        cur[static_cast<size_t>(h)] = v;
        if (v > vmax) vmax = v;
      }
      if (vmax > 0 && (vmax > 1e200 || vmax < 1e-200)) {
        for (int h = h_lo; h <= h_hi; ++h) cur[static_cast<size_t>(h)] /= vmax;
        logscale += std::log(vmax);
      }
      if (lvl <= query_horizon)
        for (int h = h_lo; h <= h_hi; ++h) {
          stored.at(h, lvl - h) = cur[static_cast<size_t>(h)];
          stored_ls.at(h, lvl - h) = logscale;
        }
      if (lvl == 0) {
        denom_val = cur[0];
        denom_ls = logscale;
      }
      std::swap(prev, cur);
    }
    for (int lvl = 0; lvl <= query_horizon; ++lvl)
      for (int h = 0; h <= lvl; ++h) {
        int t = lvl - h;
        if (h > H || t > T) continue;
        out.at(h, t) = static_cast<S>(stored.at(h, t) / denom_val *
                                      std::exp(stored_ls.at(h, t) - denom_ls));
      }
  }
  return out;
}

enum class LimitStatus { Converged, NotConverged, BudgetExhausted };

// A standard infinite path: path(n) must be at level n and each step must
// increment h or t by one.
using PathGenerator = std::function<GridPoint(long)>;

namespace paths {

PathGenerator fixed_heads(int m);          // heads ramp to m, then tails forever
PathGenerator fixed_tails(int m);          // tails ramp to m, then heads forever
PathGenerator ratio(long num, long den);   // h_n = floor(n*num/den)
PathGenerator diagonal();                  // ratio 1/2

}  // namespace paths

template <class S>
struct MartinLimitResult {
  LimitStatus status = LimitStatus::NotConverged;
  TriArray<S> phi;  // kernel estimates over the query grid (h+t <= N)
  GridPoint last_terminal{};
  long terminals_used = 0;
  std::vector<double> diff_history;  // successive max-norm differences
};

// Evaluates the Martin kernel at all query points h+t <= query_horizon
// against terminals path(n) for growing n. Declares convergence when the
// max-norm difference between successive estimate arrays stays below tol
// for `window` consecutive terminals. In exact mode differences are compared
// to tol exactly. Budget exhaustion is reported, not thrown.
template <class S>
MartinLimitResult<S> martin_limit(const PascalGraph<S>& g, const PathGenerator& path,
                                  int query_horizon, double tol, long budget, int window = 5) {
  if (query_horizon < 1) raise(errc::invalid_parameter, "query horizon must be >= 1");
  if (budget < window + 1) raise(errc::invalid_parameter, "budget too small for the window");
  MartinLimitResult<S> res;
  res.phi = TriArray<S>(query_horizon, scalar_traits<S>::zero());
  S tolerance = scalar_traits<S>::tolerance(tol);

  GridPoint prev_pt = path(0);
  if (prev_pt.level() != 0) raise(errc::invalid_parameter, "path(0) must be at level 0");
  int streak = 0;
  bool have_prev = false;
  for (long n = 1; n <= budget; ++n) {
    GridPoint pt = path(n);
    if (pt.level() != static_cast<long>(n) ||
        !((pt.h == prev_pt.h + 1 && pt.t == prev_pt.t) || (pt.h == prev_pt.h && pt.t == prev_pt.t + 1)))
      raise(errc::invalid_parameter, "path generator must make unit increments");
    prev_pt = pt;

    TriArray<S> est = martin_kernel_estimates(g, pt, query_horizon);
    S diff = scalar_traits<S>::zero();
    for (int lvl = 0; lvl <= query_horizon; ++lvl)
      for (int h = 0; h <= lvl; ++h) {
        int t = lvl - h;
        if (have_prev) {
          S delta = scalar_traits<S>::abs(est.at(h, t) - res.phi.at(h, t));
          if (delta > diff) diff = delta;
        }
        res.phi.at(h, t) = est.at(h, t);
      }
    res.last_terminal = pt;
    res.terminals_used = n;
    if (have_prev) {
      res.diff_history.push_back(scalar_traits<S>::to_double(diff));
      streak = diff < tolerance ? streak + 1 : 0;
      if (streak >= window) {
        res.status = LimitStatus::Converged;
        return res;
      }
    }
    have_prev = true;
  }
  res.status = LimitStatus::BudgetExhausted;
  return res;
}

}  // namespace wpg

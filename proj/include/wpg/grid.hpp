#pragma once

#include <cstddef>
#include <vector>

#include "wpg/error.hpp"

namespace wpg {

// A state of the walk: h heads and t tails seen so far.
struct GridPoint {
  int h = 0;
  int t = 0;
  int level() const { return h + t; }
  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

// Triangular array over {(h,t): h,t >= 0, h+t <= N}, stored level by level.
template <class S>
class TriArray {
 public:
  TriArray() : max_level_(-1) {}
  explicit TriArray(int max_level, const S& init = S{})
      : max_level_(max_level),
        v_(static_cast<size_t>(max_level + 1) * (max_level + 2) / 2, init) {
    if (max_level < 0) raise(errc::invalid_parameter, "negative horizon");
  }

  int max_level() const { return max_level_; }
  bool contains(int h, int t) const { return h >= 0 && t >= 0 && h + t <= max_level_; }

  S& at(int h, int t) { return v_[index(h, t)]; }
  const S& at(int h, int t) const { return v_[index(h, t)]; }
  S& at(GridPoint p) { return at(p.h, p.t); }
  const S& at(GridPoint p) const { return at(p.h, p.t); }

 private:
  size_t index(int h, int t) const {
    if (!contains(h, t)) raise(errc::invalid_parameter, "grid point outside truncation");
    int n = h + t;
    return static_cast<size_t>(n) * (n + 1) / 2 + h;
  }

  int max_level_;
  std::vector<S> v_;
};

// Dense rectangle [0..H] x [0..T]; used for extended-dimension sweeps.
template <class S>
class RectArray {
 public:
  RectArray(int max_h, int max_t, const S& init = S{})
      : max_h_(max_h), max_t_(max_t),
        v_(static_cast<size_t>(max_h + 1) * (max_t + 1), init) {}

  int max_h() const { return max_h_; }
  int max_t() const { return max_t_; }
  S& at(int h, int t) { return v_[static_cast<size_t>(h) * (max_t_ + 1) + t]; }
  const S& at(int h, int t) const { return v_[static_cast<size_t>(h) * (max_t_ + 1) + t]; }

 private:
  int max_h_, max_t_;
  std::vector<S> v_;
};

}  // namespace wpg

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wpg/family.hpp"
#include "wpg/grid.hpp"
#include "wpg/scalar.hpp"

namespace wpg {

// The lattice Z+^2 with positive edge weights. w1 weighs the head edge
// (h,t)->(h+1,t), w0 the tail edge (h,t)->(h,t+1). Weights are evaluated
// lazily and validated at evaluation time; graphs are immutable and cheap
// to copy (two closures and a tag).
template <class S>
class PascalGraph {
 public:
  using WeightFn = std::function<S(int h, int t)>;

  PascalGraph(WeightFn w0, WeightFn w1, std::string tag)
      : w0_(std::move(w0)), w1_(std::move(w1)), tag_(std::move(tag)) {}

  S w0(int h, int t) const { return checked(w0_, h, t, "w0"); }
  S w1(int h, int t) const { return checked(w1_, h, t, "w1"); }
  const std::string& tag() const { return tag_; }

 private:
  S checked(const WeightFn& f, int h, int t, const char* which) const {
    if (h < 0 || t < 0) raise(errc::invalid_parameter, "weight queried off the lattice");
    S v = f(h, t);
    if (!(v > scalar_traits<S>::zero()))
      raise(errc::non_positive_weight,
            std::string(which) + "(" + std::to_string(h) + "," + std::to_string(t) + ") <= 0 in " + tag_);
    return v;
  }

  WeightFn w0_, w1_;
  std::string tag_;
};

template <class S>
PascalGraph<S> make_graph(const FamilySpec& spec) {
  if constexpr (scalar_traits<S>::exact) {
    if (!spec.exact_representable())
      raise(errc::invalid_parameter,
            "family " + spec.tag() + " has non-rational parameters; exact mode unavailable");
  }
  using T = scalar_traits<S>;
  switch (spec.kind) {
    case FamilySpec::Kind::Pascal:
      return PascalGraph<S>([](int, int) { return T::one(); }, [](int, int) { return T::one(); },
                            spec.tag());
    case FamilySpec::Kind::Stirling1:
      return PascalGraph<S>([](int h, int t) { return T::from_long(h + t + 1); },
                            [](int, int) { return T::one(); }, spec.tag());
    case FamilySpec::Kind::Stirling2:
      return PascalGraph<S>([](int h, int) { return T::from_long(h + 1); },
                            [](int, int) { return T::one(); }, spec.tag());
    case FamilySpec::Kind::QPascal: {
      S q = spec.q.as<S>();
      if (!(q > T::zero())) raise(errc::invalid_parameter, "q-Pascal requires q > 0");
      return PascalGraph<S>([q](int h, int) { return rat_pow(q, h); },
                            [](int, int) { return T::one(); }, spec.tag());
    }
    case FamilySpec::Kind::Eulerian: {
      S a = spec.a.as<S>();
      S b = spec.b.as<S>();
      if (!(a > T::zero()) || !(b > T::zero()))
        raise(errc::invalid_parameter, "Eulerian family requires a > 0, b > 0");
      return PascalGraph<S>([b](int h, int) -> S { return T::from_long(h) + b; },
                            [a](int, int t) -> S { return T::from_long(t) + a; }, spec.tag());
    }
    case FamilySpec::Kind::GenStirling: {
      SeqSpec as = spec.a_seq, bs = spec.b_seq;
      return PascalGraph<S>(
          [as, bs](int h, int t) -> S { return as.template eval<S>(h + t) + bs.template eval<S>(h); },
          [](int, int) { return T::one(); }, spec.tag());
    }
    case FamilySpec::Kind::Custom: {
      SeqSpec v0 = spec.v0_seq, v1 = spec.v1_seq;
      return PascalGraph<S>([v0](int h, int t) { return v0.template eval<S>(h + t); },
                            [v1](int h, int t) { return v1.template eval<S>(h + t); }, spec.tag());
    }
  }
  raise(errc::invalid_parameter, "corrupt family spec");
}

// Edge reweighting w'(s,s') = w(s,s') f(s)/f(s'). Preserves the conditional
// law of paths given their endpoints.
template <class S>
PascalGraph<S> gauge_transform(const PascalGraph<S>& g, std::function<S(int, int)> f) {
  auto fp = [f](int h, int t) {
    S v = f(h, t);
    if (!(v > scalar_traits<S>::zero()))
      raise(errc::non_positive_weight, "gauge function <= 0 at (" + std::to_string(h) + "," +
                                           std::to_string(t) + ")");
    return v;
  };
  return PascalGraph<S>(
      [g, fp](int h, int t) -> S { return g.w0(h, t) * fp(h, t) / fp(h, t + 1); },
      [g, fp](int h, int t) -> S { return g.w1(h, t) * fp(h, t) / fp(h + 1, t); },
      "gauge(" + g.tag() + ")");
}

// w0'(h,t) = g0(t) gn(h+t) w0(h,t), w1'(h,t) = g1(h) gn(h+t) w1(h,t).
template <class S>
PascalGraph<S> family_transform(const PascalGraph<S>& g, std::function<S(int)> g0,
                                std::function<S(int)> g1, std::function<S(int)> gn) {
  return PascalGraph<S>(
      [g, g0, gn](int h, int t) -> S { return g0(t) * gn(h + t) * g.w0(h, t); },
      [g, g1, gn](int h, int t) -> S { return g1(h) * gn(h + t) * g.w1(h, t); },
      "transform(" + g.tag() + ")");
}

// Swaps the roles of heads and tails: d'(h,t) = d(t,h).
template <class S>
PascalGraph<S> transpose(const PascalGraph<S>& g) {
  return PascalGraph<S>([g](int h, int t) { return g.w1(t, h); },
                        [g](int h, int t) { return g.w0(t, h); }, "transpose(" + g.tag() + ")");
}

// Multiplicative factor applied to a path probability when the fragment
// (h,t)->(h+1,t)->(h+1,t+1) is switched to (h,t)->(h,t+1)->(h+1,t+1).
template <class S>
S transposition_cocycle(const PascalGraph<S>& g, GridPoint p) {
  return g.w0(p.h, p.t) * g.w1(p.h, p.t + 1) / (g.w1(p.h, p.t) * g.w0(p.h + 1, p.t));
}

template <class S>
struct BalanceResult {
  std::optional<std::vector<S>> sigma;  // sigma[n] = w0+w1 on level n, n <= N
  GridPoint witness_a{}, witness_b{};   // level-mates with different sums, when unbalanced
  explicit operator bool() const { return sigma.has_value(); }
};

// Checks whether w0+w1 depends on the level only, over levels 0..N.
template <class S>
BalanceResult<S> is_balanced(const PascalGraph<S>& g, int horizon) {
  if (horizon < 1) raise(errc::invalid_parameter, "balance horizon must be >= 1");
  std::vector<S> sigma;
  sigma.reserve(static_cast<size_t>(horizon) + 1);
  for (int n = 0; n <= horizon; ++n) {
    S s0 = g.w0(0, n) + g.w1(0, n);
    for (int h = 1; h <= n; ++h) {
      S sh = g.w0(h, n - h) + g.w1(h, n - h);
      if (sh != s0) {
        BalanceResult<S> r;
        r.witness_a = GridPoint{0, n};
        r.witness_b = GridPoint{h, n - h};
        return r;
      }
    }
    sigma.push_back(s0);
  }
  BalanceResult<S> r;
  r.sigma = std::move(sigma);
  return r;
}

}  // namespace wpg

#include <memory>

#include "doctest.h"
#include "wpg/dims.hpp"
#include "wpg/oracles.hpp"
#include "wpg/phi_families.hpp"
#include "wpg/rng.hpp"

using namespace wpg;

namespace {

Rational binomial(int n, int k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

}  // namespace

TEST_CASE("pascal dimensions are binomials") {
  auto g = make_graph<Rational>(FamilySpec::pascal());
  DimensionTable<Rational> d(g, 12, FillMode::Serial);
  CHECK(d.at(2, 2) == 6);
  for (int n = 0; n <= 12; ++n)
    for (int h = 0; h <= n; ++h) CHECK(d.at(h, n - h) == binomial(n, h));
}

TEST_CASE("stirling-1 dimensions against the recurrence and record oracles") {
  auto g = make_graph<Rational>(FamilySpec::stirling1());
  DimensionTable<Rational> d(g, 10, FillMode::Serial);
  CHECK(d.at(1, 1) == 3);
  CHECK(d.at(0, 2) == 2);
  auto c = stirling1_oracle(11);
  for (int n = 0; n <= 10; ++n)
    for (int h = 0; h <= n; ++h) CHECK(d.at(h, n - h) == c[n + 1][h + 1]);

  for (int n = 0; n <= 6; ++n) {
    auto counts = record_count_oracle(n);
    for (int h = 0; h <= n; ++h) CHECK(d.at(h, n - h) == Rational(static_cast<long>(counts[h])));
  }
}

TEST_CASE("eulerian dimensions against the descent oracle") {
  auto g = make_graph<Rational>(FamilySpec::eulerian(ScalarSpec(1L), ScalarSpec(1L)));
  DimensionTable<Rational> d(g, 7, FillMode::Serial);
  CHECK(d.at(1, 1) == 4);
  for (int n = 0; n <= 6; ++n) {
    auto counts = descent_count_oracle(n);
    for (int h = 0; h <= n; ++h) CHECK(d.at(h, n - h) == Rational(static_cast<long>(counts[h])));
  }
  CHECK_THROWS_AS(record_count_oracle(10), Error);
  CHECK(record_count_oracle(0) == std::vector<long long>{1});
  CHECK(descent_count_oracle(0) == std::vector<long long>{1});
  CHECK(descent_count_oracle(3) == std::vector<long long>{1, 11, 11, 1});
  CHECK(record_count_oracle(3) == std::vector<long long>{6, 11, 6, 1});
}

TEST_CASE("q-pascal dimensions are q-binomials") {
  for (const char* qs : {"1/2", "2/3"}) {
    Rational q = parse_rational(qs);
    auto g = make_graph<Rational>(FamilySpec::q_pascal(ScalarSpec(q)));
    DimensionTable<Rational> d(g, 12, FillMode::Serial);
    auto rows = qbinomial_oracle(12, q);
    for (int n = 0; n <= 12; ++n)
      for (int h = 0; h <= n; ++h) CHECK(d.at(h, n - h) == rows[n][n - h]);
  }
}

TEST_CASE("path-sum identity") {
  std::vector<FamilySpec> fams = {
      FamilySpec::stirling1(),
      FamilySpec::q_pascal(ScalarSpec::parse("1/2")),
      FamilySpec::eulerian(ScalarSpec(2L), ScalarSpec(3L)),
      FamilySpec::gen_stirling(SeqSpec::parse("linear:1,1"), SeqSpec::parse("geom:1,1/2")),
  };
  for (const auto& fam : fams) {
    auto g = make_graph<Rational>(fam);
    DimensionTable<Rational> d(g, 7, FillMode::Serial);
    for (int n = 0; n <= 7; ++n)
      for (int h = 0; h <= n; ++h)
        CHECK(d.at(h, n - h) == path_weight_sum<Rational>(g, {0, 0}, {h, n - h}));
  }
}

TEST_CASE("extended dimensions") {
  auto pascal = make_graph<Rational>(FamilySpec::pascal());
  CHECK(extended_dimension<Rational>(pascal, {2, 3}, {2, 3}) == 1);
  CHECK(extended_dimension<Rational>(pascal, {1, 1}, {3, 2}) == 3);
  CHECK_THROWS_AS(extended_dimension<Rational>(pascal, {2, 1}, {1, 5}), Error);

  auto qp = make_graph<Rational>(FamilySpec::q_pascal(ScalarSpec::parse("1/2")));
  CHECK(extended_dimension<Rational>(qp, {0, 0}, {1, 1}) == Rational(3, 2));

  // Chapman-Kolmogorov through intermediate levels
  auto s1 = make_graph<Rational>(FamilySpec::stirling1());
  DimensionTable<Rational> d(s1, 9, FillMode::Serial);
  GridPoint target{4, 5};
  for (int n = 0; n <= target.level(); ++n) {
    Rational sum = 0;
    for (int h = 0; h <= n; ++h) {
      GridPoint mid{h, n - h};
      if (mid.h > target.h || mid.t > target.t) continue;
      sum += d.at(mid.h, mid.t) * extended_dimension<Rational>(s1, mid, target);
    }
    CHECK(sum == d.at(target.h, target.t));
  }

  // one backward sweep agrees with individual extended dimensions
  auto e = extension_to_terminal<Rational>(s1, target);
  for (int h = 0; h <= target.h; ++h)
    for (int t = 0; t <= target.t; ++t)
      CHECK(e.at(h, t) == extended_dimension<Rational>(s1, {h, t}, target));
}

TEST_CASE("martin kernel") {
  auto pascal = make_graph<Rational>(FamilySpec::pascal());
  CHECK(martin_kernel<Rational>(pascal, {1, 1}, {2, 2}) == Rational(1, 3));
  CHECK(martin_kernel<Rational>(pascal, {0, 0}, {5, 7}) == 1);

  auto s1 = make_graph<Rational>(FamilySpec::stirling1());
  Rational direct = path_weight_sum<Rational>(s1, {1, 0}, {2, 1}) / path_weight_sum<Rational>(s1, {0, 0}, {2, 1});
  CHECK(martin_kernel<Rational>(s1, {1, 0}, {2, 1}) == direct);
  CHECK(martin_kernel<Rational>(s1, {0, 0}, {1, 1}) == 1);
}

TEST_CASE("martin limit: pascal diagonal tends to the fair-coin measure") {
  auto g = make_graph<double>(FamilySpec::pascal());
  // successive estimates differ by ~1/(2n) along the diagonal, so the
  // tolerance sets the horizon the walk must reach
  auto res = martin_limit<double>(g, paths::diagonal(), 2, 2e-3, 2000);
  CHECK(res.status == LimitStatus::Converged);
  for (int n = 0; n <= 2; ++n)
    for (int h = 0; h <= n; ++h)
      CHECK(std::abs(res.phi.at(h, n - h) - std::pow(0.5, n)) < 0.01);
}

TEST_CASE("martin limit: q-pascal tails-bounded extremes, exact mode") {
  auto g = make_graph<Rational>(FamilySpec::q_pascal(ScalarSpec::parse("1/2")));
  for (int m = 0; m <= 2; ++m) {
    auto res = martin_limit<Rational>(g, paths::fixed_tails(m), 6, 1e-10, 200);
    REQUIRE(res.status == LimitStatus::Converged);
    auto phi = qpascal_extreme_phi<Rational>(ScalarSpec::parse("1/2"), m, 6);
    Rational tol = scalar_traits<Rational>::tolerance(1e-9);
    for (int n = 0; n <= 6; ++n)
      for (int h = 0; h <= n; ++h)
        CHECK(abs(res.phi.at(h, n - h) - phi.at(h, n - h)) <= tol);
  }
}

TEST_CASE("martin limit: all-tails path induces the trivial measure") {
  auto s1 = make_graph<Rational>(FamilySpec::stirling1());
  auto res = martin_limit<Rational>(s1, paths::fixed_heads(0), 4, 1e-10, 50);
  CHECK(res.status == LimitStatus::Converged);
  for (int n = 1; n <= 4; ++n)
    for (int h = 1; h <= n; ++h) CHECK(res.phi.at(h, n - h) == 0);
  CHECK(res.phi.at(0, 3) > 0);
}

TEST_CASE("martin limit: budget exhaustion is reported") {
  auto g = make_graph<double>(FamilySpec::pascal());
  auto res = martin_limit<double>(g, paths::diagonal(), 3, 1e-13, 40);
  CHECK(res.status == LimitStatus::BudgetExhausted);
  CHECK(res.terminals_used == 40);
}

TEST_CASE("parallel fill matches the serial reference") {
  auto s1 = make_graph<Rational>(FamilySpec::stirling1());
  DimensionTable<Rational> serial(s1, 60, FillMode::Serial);
  DimensionTable<Rational> parallel(s1, 60, FillMode::Parallel);
  for (int n = 0; n <= 60; ++n)
    for (int h = 0; h <= n; ++h) CHECK(serial.at(h, n - h) == parallel.at(h, n - h));

  auto pf = make_graph<double>(FamilySpec::eulerian(ScalarSpec(1L), ScalarSpec(2L)));
  DimensionTable<double> sd(pf, 200, FillMode::Serial);
  DimensionTable<double> pd(pf, 200, FillMode::Parallel);
  for (int n = 0; n <= 200; ++n)
    for (int h = 0; h <= n; ++h) CHECK(sd.at(h, n - h) == pd.at(h, n - h));
}

TEST_CASE("backward recursion residuals are exactly zero for the catalog") {
  std::vector<FamilySpec> fams = {
      FamilySpec::pascal(),
      FamilySpec::stirling1(),
      FamilySpec::stirling2(),
      FamilySpec::q_pascal(ScalarSpec::parse("1/2")),
      FamilySpec::eulerian(ScalarSpec(2L), ScalarSpec(3L)),
      FamilySpec::gen_stirling(SeqSpec::parse("linear:1,1"), SeqSpec::parse("geom:1,1/3")),
  };
  for (const auto& fam : fams) {
    auto g = make_graph<Rational>(fam);
    DimensionTable<Rational> d(g, 25, FillMode::Serial);
    for (int n = 1; n <= 25; ++n)
      for (int h = 0; h <= n; ++h) {
        Rational acc = 0;
        if (h > 0) acc += g.w1(h - 1, n - h) * d.at(h - 1, n - h);
        if (n - h > 0) acc += g.w0(h, n - h - 1) * d.at(h, n - h - 1);
        CHECK(d.at(h, n - h) == acc);
      }
  }
}

TEST_CASE("converged martin estimates satisfy the forward recursion") {
  auto g = make_graph<Rational>(FamilySpec::q_pascal(ScalarSpec::parse("1/2")));
  auto res = martin_limit<Rational>(g, paths::fixed_tails(2), 6, 1e-10, 300);
  REQUIRE(res.status == LimitStatus::Converged);
  Rational bound = scalar_traits<Rational>::tolerance(1e-9);  // 10 * tol
  for (int n = 0; n < 6; ++n)
    for (int h = 0; h <= n; ++h) {
      Rational r = res.phi.at(h, n - h) - g.w0(h, n - h) * res.phi.at(h, n - h + 1) -
                   g.w1(h, n - h) * res.phi.at(h + 1, n - h);
      CHECK(abs(r) <= bound);
    }
}

TEST_CASE("random weight tables: path sums, factorization, kernels") {
  // seeded random rational weights on a small truncation
  Xoshiro256pp rng(20240808, 0);
  auto rand_rat = [&rng]() {
    long num = 1 + static_cast<long>(rng.next() % 9);
    long den = 1 + static_cast<long>(rng.next() % 4);
    return scalar_traits<Rational>::from_ratio(num, den);
  };
  for (int rep = 0; rep < 3; ++rep) {
    auto w0 = std::make_shared<TriArray<Rational>>(12, Rational(1));
    auto w1 = std::make_shared<TriArray<Rational>>(12, Rational(1));
    for (int n = 0; n <= 12; ++n)
      for (int h = 0; h <= n; ++h) {
        w0->at(h, n - h) = rand_rat();
        w1->at(h, n - h) = rand_rat();
      }
    PascalGraph<Rational> g([w0](int h, int t) { return w0->at(h, t); },
                            [w1](int h, int t) { return w1->at(h, t); }, "random");

    DimensionTable<Rational> d(g, 7, FillMode::Serial);
    for (int n = 0; n <= 7; ++n)
      for (int h = 0; h <= n; ++h)
        CHECK(d.at(h, n - h) == path_weight_sum<Rational>(g, {0, 0}, {h, n - h}));

    // Chapman-Kolmogorov through level 3
    GridPoint target{4, 3};
    Rational sum = 0;
    for (int h = 0; h <= 3; ++h) {
      GridPoint mid{h, 3 - h};
      if (mid.h > target.h || mid.t > target.t) continue;
      sum += d.at(mid.h, mid.t) * extended_dimension<Rational>(g, mid, target);
    }
    CHECK(sum == d.at(target.h, target.t));

    // gauge transform with a random positive function preserves the
    // conditional path law
    auto f = std::make_shared<TriArray<Rational>>(12, Rational(1));
    for (int n = 0; n <= 12; ++n)
      for (int h = 0; h <= n; ++h) f->at(h, n - h) = rand_rat();
    auto g2 = gauge_transform<Rational>(g, [f](int h, int t) { return f->at(h, t); });
    DimensionTable<Rational> d2(g2, 6, FillMode::Serial);
    for (int n = 1; n <= 5; ++n)
      for (int h = 0; h <= n; ++h) {
        GridPoint to{h, n - h};
        for_each_path<Rational>(g, {0, 0}, to,
                                [&](const std::vector<bool>& steps, const Rational& wa) {
                                  Rational wb = 1;
                                  int ch = 0, ct = 0;
                                  for (bool head : steps) {
                                    wb *= head ? g2.w1(ch, ct) : g2.w0(ch, ct);
                                    head ? ++ch : ++ct;
                                  }
                                  CHECK(wa / d.at(to.h, to.t) == wb / d2.at(to.h, to.t));
                                });
      }

    // cocycle equals the two-step fragment ratio everywhere it is defined
    for (int h = 0; h <= 5; ++h)
      for (int t = 0; t <= 5; ++t)
        CHECK(transposition_cocycle(g, GridPoint{h, t}) ==
              (g.w0(h, t) * g.w1(h, t + 1)) / (g.w1(h, t) * g.w0(h + 1, t)));
  }
}

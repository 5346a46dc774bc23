#include "doctest.h"
#include "wpg/oracles.hpp"
#include "wpg/phi_families.hpp"

using namespace wpg;

namespace {

ScalarSpec rat(const char* s) { return ScalarSpec::parse(s); }

std::vector<Phi<Rational>> catalog(int N) {
  std::vector<Phi<Rational>> phis;
  phis.push_back(bernoulli_phi<Rational>(rat("2"), N));
  phis.push_back(polya_phi<Rational>(rat("1"), rat("1"), N));
  phis.push_back(polya_phi<Rational>(rat("2"), rat("3"), N));
  phis.push_back(crp_phi<Rational>(rat("1/2"), rat("3/2"), N));
  phis.push_back(crp_phi<Rational>(rat("-1/2"), rat("1"), N));   // -theta/alpha = 2
  phis.push_back(crp_phi<Rational>(rat("-2"), rat("6"), N));     // -theta/alpha = 3
  phis.push_back(crp_phi<Rational>(rat("0"), rat("1"), N));      // Stirling-1, theta = 1
  phis.push_back(crp_gamma_phi<Rational>(rat("1/3"), N));
  phis.push_back(gstirling_theta_phi<Rational>(SeqSpec::parse("const:0"),
                                               SeqSpec::parse("linear:1,1"), rat("4"), N));
  phis.push_back(spacetime_walk_phi<Rational>(SeqSpec::parse("geom:1,4"), rat("1"), N));
  phis.push_back(spacetime_walk_phi<Rational>(SeqSpec::parse("linear:1,1"), rat("2"), N));
  for (int m = 0; m <= 3; ++m) phis.push_back(qpascal_extreme_phi<Rational>(rat("1/2"), m, N));
  phis.push_back(eulerian_qm_phi<Rational>(rat("1"), rat("1"), 2, N));
  phis.push_back(eulerian_qm_phi<Rational>(rat("2"), rat("3"), 3, N));
  phis.push_back(eulerian_qinf_phi<Rational>(rat("1"), rat("1"), 2, N));
  phis.push_back(eulerian_star_phi<Rational>(rat("1"), rat("1"), N));
  phis.push_back(eulerian_star_phi<Rational>(rat("2"), rat("3"), N));
  return phis;
}

}  // namespace

TEST_CASE("catalog probability functions have exactly zero residuals") {
  for (const auto& phi : catalog(12)) {
    auto rep = check_probability_function(phi);
    INFO(phi.provenance.family);
    CHECK(rep.exact_ok());
  }
}

TEST_CASE("spot values") {
  auto polya = polya_phi<Rational>(rat("1"), rat("1"), 4);
  CHECK(polya.at(1, 1) == Rational(1, 6));

  auto st1 = crp_phi<Rational>(rat("0"), rat("1"), 4);  // theta^h/(theta+1)_{n}
  CHECK(st1.at(1, 1) == Rational(1, 6));

  auto qp = qpascal_extreme_phi<Rational>(rat("1/2"), 1, 4);
  CHECK(qp.at(1, 0) == Rational(1, 2));
  CHECK(qp.at(0, 1) == Rational(1, 2));
  CHECK(qp.at(0, 2) == 0);  // support {t <= 1}
  CHECK(qp.support.kind == Support::Kind::TailsAtMost);

  // deliberately broken phi is detected
  auto broken = polya;
  broken.values.at(1, 1) = Rational(1, 5);
  auto rep = check_probability_function(broken);
  CHECK_FALSE(rep.exact_ok());

  auto ones = Phi<Rational>{make_graph<Rational>(FamilySpec::pascal()), TriArray<Rational>(3, Rational(1)),
                            Support::full(), {"ones", {}}};
  auto rep2 = check_probability_function(ones);
  CHECK(rep2.max_recursion_residual == 1);
}

TEST_CASE("family parameter validation") {
  CHECK_THROWS_AS(polya_phi<Rational>(rat("0"), rat("1"), 4), Error);
  CHECK_THROWS_AS(crp_phi<Rational>(rat("3/2"), rat("1"), 4), Error);    // alpha >= 1
  CHECK_THROWS_AS(crp_phi<Rational>(rat("1/2"), rat("-1"), 4), Error);   // theta < 0
  CHECK_THROWS_AS(crp_phi<Rational>(rat("-1"), rat("3/2"), 4), Error);   // -theta/alpha not integral
  CHECK_THROWS_AS(crp_phi<double>(ScalarSpec(-1.0), ScalarSpec(1.5), 4), Error);
  CHECK_THROWS_AS(qpascal_extreme_phi<Rational>(rat("2"), 1, 4), Error);  // q >= 1
  CHECK_THROWS_AS(crp_gamma_phi<Rational>(rat("1"), 4), Error);
  // theta below a later strict maximum of b: factor goes negative
  CHECK_THROWS_AS(gstirling_theta_phi<Rational>(SeqSpec::parse("const:0"),
                                                SeqSpec::parse("linear:1,1"), rat("5/2"), 6),
                  Error);
}

TEST_CASE("finite support emerges from zero factors") {
  // Stirling-2 with theta = b_3 = 4: support {h <= 3}
  auto phi = gstirling_theta_phi<Rational>(SeqSpec::parse("const:0"), SeqSpec::parse("linear:1,1"),
                                           rat("4"), 10);
  CHECK(phi.support.kind == Support::Kind::HeadsAtMost);
  CHECK(phi.support.m == 3);
  CHECK(phi.at(4, 2) == 0);
  CHECK(phi.at(3, 2) > 0);

  // CRP with alpha=-1, theta=3: support {h <= 2}
  auto crp = crp_phi<Rational>(rat("-1"), rat("3"), 8);
  CHECK(crp.support.kind == Support::Kind::HeadsAtMost);
  CHECK(crp.support.m == 2);
}

TEST_CASE("kernels from phi") {
  // theta-Bernoulli on Pascal: p = theta/(1+theta) everywhere
  auto bern = bernoulli_phi<Rational>(rat("3"), 8);
  auto k = kernel_from_phi(bern);
  for (int h = 0; h < 4; ++h)
    for (int t = 0; h + t < 7; ++t) {
      CHECK(k.p(h, t) == Rational(3, 4));
      CHECK(k.p(h, t) + k.q(h, t) == 1);
    }

  // CRP kernel display
  Rational alpha(-1, 2), theta(1);
  auto crp = crp_phi<Rational>(rat("-1/2"), rat("1"), 8);
  auto kc = kernel_from_phi(crp);
  for (int h = 0; h <= 1; ++h)
    for (int t = 0; h + t < 7; ++t) {
      Rational expect = (theta + alpha * (h + 1)) / (Rational(h + t + 1) + theta);
      CHECK(kc.p(h, t) == expect);
    }

  // q-Pascal extreme: tail probability dies at t = m
  auto qp = qpascal_extreme_phi<Rational>(rat("1/2"), 1, 8);
  auto kq = kernel_from_phi(qp);
  CHECK(kq.p(2, 1) == 1);
  CHECK(kq.q(2, 1) == 0);
  CHECK(kq.p(0, 0) == Rational(1, 2));
  CHECK_THROWS_AS(kq.p(0, 2), Error);  // outside the support
}

TEST_CASE("kernel from balance") {
  auto pascal = make_graph<Rational>(FamilySpec::pascal());
  auto kp = kernel_from_balance(pascal, 10);
  CHECK(kp.p(3, 4) == Rational(1, 2));

  auto eul = make_graph<Rational>(FamilySpec::eulerian(rat("2"), rat("3")));
  auto ke = kernel_from_balance(eul, 10);
  CHECK(ke.p(1, 2) == Rational(1, 2));  // (t+a)/(n+a+b)

  // theta-transformed Stirling-1: w1 = theta, w0 = n+1, p = theta/(theta+n+1)
  Rational theta(2);
  auto s1 = make_graph<Rational>(FamilySpec::stirling1());
  auto transformed = family_transform<Rational>(
      s1, [](int) { return Rational(1); }, [theta](int) { return theta; },
      [](int) { return Rational(1); });
  auto ks = kernel_from_balance(transformed, 10);
  CHECK(ks.p(2, 3) == Rational(1, 4));

  auto s2 = make_graph<Rational>(FamilySpec::stirling2());
  CHECK_THROWS_AS(kernel_from_balance(s2, 10), Error);
}

TEST_CASE("doob transform") {
  auto base = bernoulli_phi<Rational>(rat("1"), 8);  // fair coin
  auto same = doob_transform<Rational>(base, [](int, int) { return Rational(1); }, 0.0);
  for (int n = 0; n <= 8; ++n)
    for (int h = 0; h <= n; ++h) CHECK(same.at(h, n - h) == base.at(h, n - h));

  // psi = 2^n pi^h (1-pi)^t turns the fair coin into Bernoulli(pi)
  Rational pi(1, 3);
  auto tilted = doob_transform<Rational>(
      base,
      [pi](int h, int t) -> Rational {
        return rat_pow(Rational(2), h + t) * rat_pow(pi, h) * rat_pow(Rational(1 - pi), t);
      },
      0.0);
  auto expect = bernoulli_phi<Rational>(rat("1/2"), 8);  // theta/(1+theta) = 1/3
  for (int n = 0; n <= 8; ++n)
    for (int h = 0; h <= n; ++h) CHECK(tilted.at(h, n - h) == expect.at(h, n - h));
  CHECK(check_probability_function(tilted).exact_ok());

  CHECK_THROWS_AS(doob_transform<Rational>(
                      base,
                      [pi](int h, int t) -> Rational {
                        Rational v =
                            rat_pow(Rational(2), h + t) * rat_pow(pi, h) * rat_pow(Rational(1 - pi), t);
                        if (h == 2 && t == 1) v += Rational(1, 100);
                        return v;
                      },
                      1e-12),
                  Error);
}

TEST_CASE("pi of the first head") {
  auto polya = polya_phi<Rational>(rat("2"), rat("3"), 4);
  CHECK(pi_first_head(polya) == Rational(2, 5));

  auto st2 = gstirling_theta_phi<Rational>(SeqSpec::parse("const:0"), SeqSpec::parse("linear:1,1"),
                                           rat("4"), 4);
  CHECK(pi_first_head(st2) == Rational(3, 4));  // (b_3 - b_0)/(b_3 + 0)

  for (int m = 0; m <= 4; ++m) {
    auto qp = qpascal_extreme_phi<Rational>(rat("1/2"), m, 4);
    CHECK(pi_first_head(qp) == rat_pow(Rational(1, 2), m));
  }

  auto trivial = bernoulli_phi<Rational>(rat("0"), 4);
  CHECK(pi_first_head(trivial) == 0);
}

TEST_CASE("stochastic comparison of elementary measures") {
  auto pascal = make_graph<Rational>(FamilySpec::pascal());
  auto rep = stochastic_compare<Rational>(pascal, {3, 1}, {1, 3});
  CHECK(rep.order == StochOrder::FirstDominates);
  REQUIRE(rep.strict_witness.has_value());
  CHECK(rep.strict_witness->first == 1);  // strict already at level 1, state (1,0)
  CHECK(rep.strict_witness->second == 1);
  CHECK(rep.tails_first[1][1] == Rational(3, 4));
  CHECK(rep.tails_second[1][1] == Rational(1, 4));

  auto eq = stochastic_compare<Rational>(pascal, {2, 2}, {2, 2});
  CHECK(eq.order == StochOrder::Equal);

  auto s1 = make_graph<Rational>(FamilySpec::stirling1());
  auto rep2 = stochastic_compare<Rational>(s1, {2, 2}, {1, 3});
  CHECK(rep2.order == StochOrder::FirstDominates);
  // all-heads probabilities are ordered strictly while both are positive
  for (int m = 1; m <= 2; ++m) CHECK(rep2.tails_first[m][m] > rep2.tails_second[m][m]);

  CHECK_THROWS_AS(stochastic_compare<Rational>(pascal, {2, 1}, {1, 1}), Error);
}

TEST_CASE("endpoint distribution and elementary conditional law") {
  auto polya = polya_phi<Rational>(rat("1"), rat("1"), 6);
  DimensionTable<Rational> dims(polya.graph, 6, FillMode::Serial);
  auto dist = endpoint_distribution(polya, dims, 3);
  for (const auto& mass : dist) CHECK(mass == Rational(1, 4));

  // kernel products along a path telescope to weight * phi(endpoint)
  auto kernel = kernel_from_phi(polya);
  for (int n = 1; n <= 5; ++n)
    for (int h = 0; h <= n; ++h) {
      GridPoint to{h, n - h};
      Rational total = 0;
      for_each_path<Rational>(polya.graph, {0, 0}, to,
                              [&](const std::vector<bool>& steps, const Rational& w) {
                                Rational prob = 1;
                                int ch = 0, ct = 0;
                                for (bool head : steps) {
                                  prob *= head ? kernel.p(ch, ct) : kernel.q(ch, ct);
                                  head ? ++ch : ++ct;
                                }
                                CHECK(prob == w * polya.at(to.h, to.t));
                                total += prob;
                              });
      CHECK(total == polya.at(to.h, to.t) * dims.at(to.h, to.t));
    }
}

TEST_CASE("quasi-invariance: transposed fragments follow the cocycle") {
  auto phis = catalog(8);
  for (const auto& phi : {phis[3], phis[12]}) {  // a CRP and a q-Pascal extreme
    const auto& g = phi.graph;
    for (int h = 0; h + 2 <= 4; ++h)
      for (int t = 0; h + t + 2 <= 6; ++t) {
        Rational ht = g.w1(h, t) * g.w0(h + 1, t);
        Rational th = g.w0(h, t) * g.w1(h, t + 1);
        CHECK(th == transposition_cocycle(g, GridPoint{h, t}) * ht);
      }
  }
}

TEST_CASE("kernels sum to one exactly on the support") {
  for (const auto& phi : catalog(8)) {
    auto k = kernel_from_phi(phi);
    for (int n = 0; n < 7; ++n)
      for (int h = 0; h <= n; ++h) {
        if (!phi.support.contains(h, n - h) || phi.at(h, n - h) == 0) continue;
        CHECK(k.p(h, n - h) + k.q(h, n - h) == 1);
      }
  }
}

TEST_CASE("balance kernel refuses levels beyond its horizon") {
  auto pascal = make_graph<Rational>(FamilySpec::pascal());
  auto k = kernel_from_balance(pascal, 6);
  CHECK(k.p(3, 3) == Rational(1, 2));
  CHECK_THROWS_AS(k.p(4, 3), Error);
}

TEST_CASE("q-polya urn") {
  auto phi = qpolya_phi<Rational>(rat("1/2"), 2, 3, 12);
  CHECK(check_probability_function(phi).exact_ok());

  // kernel matches the bracket-ratio displays
  auto k = kernel_from_phi(phi);
  Rational q(1, 2);
  auto bracket = [&q](long m) -> Rational {
    return (Rational(1) - rat_pow(q, m)) / (Rational(1) - q);
  };
  for (int h = 0; h <= 4; ++h)
    for (int t = 0; h + t <= 8; ++t) {
      CHECK(k.p(h, t) == bracket(2 + h) / bracket(5 + h + t));
      CHECK(k.q(h, t) == bracket(3 + t) * rat_pow(q, 2 + h) / bracket(5 + h + t));
    }

  CHECK_THROWS_AS(qpolya_phi<Rational>(rat("1"), 1, 1, 4), Error);
  CHECK_THROWS_AS(qpolya_phi<Rational>(rat("1/2"), 0, 1, 4), Error);

  // q > 1 is admissible for the urn
  auto phi2 = qpolya_phi<Rational>(rat("2"), 1, 1, 10);
  CHECK(check_probability_function(phi2).exact_ok());
}

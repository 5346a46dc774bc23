#include <fstream>

#include "doctest.h"
#include "wpg/phi_families.hpp"
#include "wpg/scalar.hpp"
#include "wpg/sequence.hpp"

using namespace wpg;

TEST_CASE("rational literals") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-5/10") == Rational(-1, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-1.5") == Rational(-3, 2));
  CHECK(parse_rational("1e-3") == Rational(1, 1000));
  CHECK(parse_rational("2.5e2") == Rational(250));
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("rational to_string round-trips") {
  for (long num = -7; num <= 7; ++num)
    for (long den = 1; den <= 9; ++den) {
      Rational r(num, den);
      r.canonicalize();
      CHECK(parse_rational(scalar_traits<Rational>::to_string(r)) == r);
    }
}

TEST_CASE("rat_pow") {
  CHECK(rat_pow(Rational(2, 3), 3) == Rational(8, 27));
  CHECK(rat_pow(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(rat_pow(Rational(5), 0) == Rational(1));
  CHECK(rat_pow(2.0, 10) == doctest::Approx(1024.0));
  CHECK(rat_pow(2.0, -2) == doctest::Approx(0.25));
}

TEST_CASE("scalar spec exactness") {
  ScalarSpec e = ScalarSpec::parse("2/3");
  CHECK(e.exact_representable());
  CHECK(e.as<Rational>() == Rational(2, 3));
  CHECK(e.as<double>() == doctest::Approx(2.0 / 3.0));

  ScalarSpec f(0.333);
  CHECK_FALSE(f.exact_representable());
  CHECK_THROWS_AS(f.as<Rational>(), Error);
  CHECK(f.as<double>() == doctest::Approx(0.333));
}

TEST_CASE("sequence presets") {
  SeqSpec c = SeqSpec::parse("const:3/2");
  CHECK(c.eval<Rational>(5) == Rational(3, 2));

  SeqSpec lin = SeqSpec::parse("linear:1,1");  // n+1
  CHECK(lin.eval<Rational>(4) == Rational(5));

  SeqSpec pw = SeqSpec::parse("power:2");  // (n+1)^2
  CHECK(pw.eval<Rational>(3) == Rational(16));
  SeqSpec pw_neg = SeqSpec::parse("power:-2");
  CHECK(pw_neg.eval<Rational>(1) == Rational(1, 4));
  SeqSpec pw_frac = SeqSpec::parse("power:1/2");
  CHECK_FALSE(pw_frac.exact_representable());
  CHECK(pw_frac.eval<double>(3) == doctest::Approx(2.0));
  CHECK_THROWS_AS(pw_frac.eval<Rational>(3), Error);

  SeqSpec ge = SeqSpec::parse("geom:1,1/4");
  CHECK(ge.eval<Rational>(2) == Rational(1, 16));

  SeqSpec ag = SeqSpec::parse("affgeom:2,-1,1/2");  // 2 - 2^-n
  CHECK(ag.eval<Rational>(0) == Rational(1));
  CHECK(ag.eval<Rational>(3) == Rational(15, 8));
}

TEST_CASE("sequence files and tails") {
  const char* path = "/tmp/wpg_seq_test.csv";
  {
    std::ofstream out(path);
    out << "n,value\n0,1\n1,1/2\n2,0.25\n";
  }
  SeqSpec s = SeqSpec::from_file(path);
  CHECK(s.file_length() == 3);
  CHECK(s.eval<Rational>(2) == Rational(1, 4));
  CHECK_THROWS_AS(s.eval<Rational>(3), Error);

  SeqSpec with_tail = s.with_tail(SeqSpec::parse("geom:1,2"));
  CHECK(with_tail.eval<Rational>(1) == Rational(1, 2));
  CHECK(with_tail.eval<Rational>(4) == Rational(16));  // tail evaluated at absolute n

  CHECK_THROWS_AS(SeqSpec::from_file("/tmp/wpg_no_such_file.csv"), Error);
  {
    std::ofstream out(path);
    out << "x,value\n0,1\n";
  }
  CHECK_THROWS_AS(SeqSpec::from_file(path), Error);
  {
    std::ofstream out(path);
    out << "n,value\n0,1\n2,1\n";  // gap
  }
  CHECK_THROWS_AS(SeqSpec::from_file(path), Error);
}

TEST_CASE("long double instantiation of the numeric core") {
  auto g = make_graph<long double>(FamilySpec::stirling1());
  DimensionTable<long double> d(g, 8, FillMode::Serial);
  CHECK(static_cast<double>(d.at(1, 1)) == doctest::Approx(3.0));
  auto phi = polya_phi<long double>(ScalarSpec(2L), ScalarSpec(3L), 6);
  CHECK(check_probability_function(phi).ok(1e-15));
}

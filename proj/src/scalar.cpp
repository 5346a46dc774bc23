#include "wpg/scalar.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

namespace wpg {

const char* errc_name(errc c) {
  switch (c) {
    case errc::non_positive_weight: return "NonPositiveWeight";
    case errc::invalid_parameter: return "InvalidParameter";
    case errc::unreachable_pair: return "UnreachablePair";
    case errc::too_large: return "TooLarge";
    case errc::outside_support: return "OutsideSupport";
    case errc::not_harmonic: return "NotHarmonic";
    case errc::level_mismatch: return "LevelMismatch";
    case errc::horizon_mismatch: return "HorizonMismatch";
    case errc::not_balanced: return "NotBalanced";
    case errc::divergent_case: return "DivergentCase";
    case errc::truncation_failure: return "TruncationFailure";
    case errc::not_a_mixture: return "NotAMixture";
    case errc::kernel_out_of_support: return "KernelOutOfSupport";
    case errc::budget_exhausted: return "BudgetExhausted";
    case errc::parse_error: return "ParseError";
    case errc::io_error: return "IoError";
  }
  return "UnknownError";
}

Rational scalar_traits<Rational>::from_ratio(long num, long den) {
  if (den == 0) raise(errc::invalid_parameter, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string scalar_traits<double>::to_string(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string scalar_traits<long double>::to_string(long double v) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%.21Lg", v);
  return buf;
}

Rational rat_pow(const Rational& v, long e) {
  if (e == 0) return Rational(1);
  bool invert = e < 0;
  unsigned long k = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  if (invert && v == 0) raise(errc::invalid_parameter, "negative power of zero");
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), v.get_num().get_mpz_t(), k);
  mpz_pow_ui(den.get_mpz_t(), v.get_den().get_mpz_t(), k);
  Rational r;
  if (invert) {
    r = Rational(den, num);
  } else {
    r = Rational(num, den);
  }
  r.canonicalize();
  return r;
}

double rat_pow(double v, long e) {
  double r = 1.0;
  double base = e < 0 ? 1.0 / v : v;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  while (k) {
    if (k & 1) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

long double rat_pow(long double v, long e) { return rat_pow_acc(v, e); }

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) raise(errc::parse_error, "empty scalar literal");

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational r;
    if (r.set_str(s, 10) != 0) raise(errc::parse_error, "bad rational literal '" + text + "'");
    if (r.get_den() == 0) raise(errc::parse_error, "zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
  }

  auto dot = s.find('.');
  auto epos = s.find_first_of("eE");
  long exp10 = 0;
  std::string digits = s;
  if (epos != std::string::npos) {
    try {
      exp10 = std::stol(s.substr(epos + 1));
    } catch (...) {
      raise(errc::parse_error, "bad exponent in '" + text + "'");
    }
    digits = s.substr(0, epos);
    dot = digits.find('.');
  }
  if (dot != std::string::npos) {
    exp10 -= static_cast<long>(digits.size() - dot - 1);
    digits.erase(dot, 1);
  }
  if (digits.empty() || digits == "-" || digits == "+") raise(errc::parse_error, "bad literal '" + text + "'");
  mpz_class mant;
  if (mant.set_str(digits, 10) != 0) raise(errc::parse_error, "bad numeric literal '" + text + "'");
  Rational r(mant);
  if (exp10 > 0) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exp10));
    r *= Rational(p);
  } else if (exp10 < 0) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(-exp10));
    r /= Rational(p);
  }
  r.canonicalize();
  return r;
}

ScalarSpec ScalarSpec::parse(const std::string& text) {
  Rational r = parse_rational(text);
  return ScalarSpec(r);
}

const Rational& ScalarSpec::as_rational() const {
  if (!exact_) raise(errc::invalid_parameter, "parameter is not exactly representable; use float mode");
  return *exact_;
}

std::string ScalarSpec::describe() const {
  if (exact_) return exact_->get_str();
  return scalar_traits<double>::to_string(approx_);
}

}  // namespace wpg

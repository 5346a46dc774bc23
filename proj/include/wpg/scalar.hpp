#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "wpg/error.hpp"

namespace wpg {

// Exact scalar for rational mode. GMP rationals are always kept canonical.
using Rational = mpq_class;

// Scalar trait layer so the numeric core can be instantiated with either
// exact rationals or floating point.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_long(long v) { return Rational(v); }
  static Rational from_ratio(long num, long den);
  static double to_double(const Rational& v) { return v.get_d(); }
  static Rational abs(const Rational& v) { return ::abs(v); }
  static std::string to_string(const Rational& v) { return v.get_str(); }
  // Exact binary expansion of the double; used to compare exact residuals
  // against floating tolerances.
  static Rational tolerance(double tol) { return Rational(tol); }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_long(long v) { return static_cast<double>(v); }
  static double from_ratio(long num, long den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double to_double(double v) { return v; }
  static double abs(double v) { return v < 0 ? -v : v; }
  static std::string to_string(double v);
  static double tolerance(double tol) { return tol; }
};

template <>
struct scalar_traits<long double> {
  static constexpr bool exact = false;
  static long double zero() { return 0.0L; }
  static long double one() { return 1.0L; }
  static long double from_long(long v) { return static_cast<long double>(v); }
  static long double from_ratio(long num, long den) {
    return static_cast<long double>(num) / static_cast<long double>(den);
  }
  static double to_double(long double v) { return static_cast<double>(v); }
  static long double abs(long double v) { return v < 0 ? -v : v; }
  static std::string to_string(long double v);
  static long double tolerance(double tol) { return tol; }
};

// Integer power with negative exponents allowed (v != 0 for e < 0).
Rational rat_pow(const Rational& v, long e);
double rat_pow(double v, long e);

inline Rational rat_pow_acc(const Rational& v, long e) { return rat_pow(v, e); }
inline long double rat_pow_acc(long double v, long e) {
  long double r = 1.0L;
  long double base = e < 0 ? 1.0L / v : v;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  while (k) {
    if (k & 1) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

// Parses "p/q", integer, or decimal literals into an exact rational.
// Decimals are rationalized losslessly (e.g. "0.25" -> 1/4).
Rational parse_rational(const std::string& text);

// A runtime scalar parameter: exact when the source text was a rational or
// decimal literal, float-only when it came from a float expression.
class ScalarSpec {
 public:
  ScalarSpec() : approx_(0.0) {}
  ScalarSpec(long v) : exact_(Rational(v)), approx_(static_cast<double>(v)) {}
  ScalarSpec(const Rational& v) : exact_(v), approx_(v.get_d()) {}
  explicit ScalarSpec(double v) : approx_(v) {}

  static ScalarSpec parse(const std::string& text);

  bool exact_representable() const { return exact_.has_value(); }
  double as_double() const { return approx_; }
  const Rational& as_rational() const;

  template <class S>
  S as() const {
    if constexpr (scalar_traits<S>::exact) {
      return as_rational();
    } else {
      return static_cast<S>(approx_);
    }
  }

  std::string describe() const;

 private:
  std::optional<Rational> exact_;
  double approx_;
};

}  // namespace wpg

long double rat_pow(long double v, long e);

#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "wpg/scalar.hpp"

namespace wpg {

// A nonnegative-integer-indexed scalar sequence: either a closed-form preset
// or a finite list ingested from a file. File-backed sequences error past
// their last row unless an explicit closed-form tail was attached.
//
// Preset grammar (also accepted by the CLI):
//   const:c        ->  a_n = c
//   linear:c,d     ->  a_n = c*n + d
//   power:beta     ->  a_n = (n+1)^beta
//   geom:c,r       ->  a_n = c * r^n
//   affgeom:c,d,r  ->  a_n = c + d * r^n
//   file:PATH      ->  rows of PATH (CSV "n,value")
class SeqSpec {
 public:
  enum class Kind { Constant, Linear, Power, Geometric, AffineGeometric, File };

  static SeqSpec constant(ScalarSpec c);
  static SeqSpec linear(ScalarSpec c, ScalarSpec d);
  static SeqSpec power(ScalarSpec beta);
  static SeqSpec geometric(ScalarSpec c, ScalarSpec ratio);
  static SeqSpec affine_geometric(ScalarSpec c, ScalarSpec d, ScalarSpec ratio);
  static SeqSpec from_values(std::vector<ScalarSpec> values, std::string label = "list");
  static SeqSpec from_file(const std::string& path);
  static SeqSpec parse(const std::string& text);

  SeqSpec with_tail(SeqSpec tail) const;

  Kind kind() const { return kind_; }
  bool file_backed() const { return kind_ == Kind::File; }
  const SeqSpec* tail() const { return tail_.get(); }
  long file_length() const { return static_cast<long>(values_.size()); }
  const ScalarSpec& param(int i) const { return params_.at(i); }

  // True when every value the spec can produce is an exact rational.
  bool exact_representable() const;

  template <class S>
  S eval(long n) const;

  std::string describe() const;

 private:
  SeqSpec(Kind k, std::vector<ScalarSpec> params) : kind_(k), params_(std::move(params)) {}

  Kind kind_;
  std::vector<ScalarSpec> params_;
  std::vector<ScalarSpec> values_;  // file-backed only
  std::string label_;
  std::shared_ptr<const SeqSpec> tail_;
};

// Reads a two-column CSV ("n,value" or "h,value"); rows must be consecutive
// from 0. Values may be rationals "p/q" or decimal literals.
std::vector<ScalarSpec> parse_sequence_csv(const std::string& path);

bool is_integer(const ScalarSpec& s);

template <class S>
S SeqSpec::eval(long n) const {
  if (n < 0) raise(errc::invalid_parameter, "negative sequence index");
  using T = scalar_traits<S>;
  switch (kind_) {
    case Kind::Constant:
      return params_[0].as<S>();
    case Kind::Linear:
      return params_[0].as<S>() * T::from_long(n) + params_[1].as<S>();
    case Kind::Power: {
      if (is_integer(params_[0])) {
        long beta = static_cast<long>(params_[0].as_double());
        if constexpr (T::exact) {
          return rat_pow(Rational(n + 1), beta);
        } else {
          return static_cast<S>(rat_pow(static_cast<double>(n + 1), beta));
        }
      }
      if constexpr (T::exact) {
        raise(errc::invalid_parameter, "power preset with non-integer exponent requires float mode");
      } else {
        return static_cast<S>(std::pow(static_cast<double>(n + 1), params_[0].as_double()));
      }
    }
    case Kind::Geometric: {
      if constexpr (T::exact) {
        return params_[0].as<S>() * rat_pow(params_[1].as<Rational>(), n);
      } else {
        return params_[0].as<S>() * static_cast<S>(std::pow(params_[1].as_double(), static_cast<double>(n)));
      }
    }
    case Kind::AffineGeometric: {
      if constexpr (T::exact) {
        return params_[0].as<S>() + params_[1].as<S>() * rat_pow(params_[2].as<Rational>(), n);
      } else {
        return params_[0].as<S>() +
               params_[1].as<S>() * static_cast<S>(std::pow(params_[2].as_double(), static_cast<double>(n)));
      }
    }
    case Kind::File: {
      if (n < static_cast<long>(values_.size())) return values_[static_cast<size_t>(n)].as<S>();
      if (tail_) return tail_->eval<S>(n);
      raise(errc::invalid_parameter,
            "sequence '" + label_ + "' has no value at n=" + std::to_string(n) +
                " (file length " + std::to_string(values_.size()) + ", no tail rule)");
    }
  }
  raise(errc::invalid_parameter, "corrupt sequence spec");
}

}  // namespace wpg

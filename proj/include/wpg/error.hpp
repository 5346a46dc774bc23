#pragma once

#include <stdexcept>
#include <string>

namespace wpg {

// Library-wide error codes. The CLI maps these onto exit codes
// (validation -> 2, numeric non-convergence -> 3, I/O -> 1).
enum class errc {
  non_positive_weight,
  invalid_parameter,
  unreachable_pair,
  too_large,
  outside_support,
  not_harmonic,
  level_mismatch,
  horizon_mismatch,
  not_balanced,
  divergent_case,
  truncation_failure,
  not_a_mixture,
  kernel_out_of_support,
  budget_exhausted,
  parse_error,
  io_error,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace wpg

#pragma once

#include <string>

#include "wpg/scalar.hpp"
#include "wpg/sequence.hpp"

namespace wpg {

// Catalog of weighted Pascal graphs. Custom graphs take level-indexed tail
// and head weights w0(h,t) = v0(h+t), w1(h,t) = v1(h+t).
struct FamilySpec {
  enum class Kind { Pascal, Stirling1, Stirling2, GenStirling, QPascal, Eulerian, Custom };

  Kind kind = Kind::Pascal;
  ScalarSpec q;            // QPascal
  ScalarSpec a, b;         // Eulerian
  SeqSpec a_seq = SeqSpec::constant(ScalarSpec(0L));  // GenStirling
  SeqSpec b_seq = SeqSpec::constant(ScalarSpec(0L));
  SeqSpec v0_seq = SeqSpec::constant(ScalarSpec(1L));  // Custom
  SeqSpec v1_seq = SeqSpec::constant(ScalarSpec(1L));

  static FamilySpec pascal();
  static FamilySpec stirling1();
  static FamilySpec stirling2();
  static FamilySpec gen_stirling(SeqSpec a_seq, SeqSpec b_seq);
  static FamilySpec q_pascal(ScalarSpec q);
  static FamilySpec eulerian(ScalarSpec a, ScalarSpec b);
  static FamilySpec custom(SeqSpec v0, SeqSpec v1);

  // Generalized-Stirling view where one exists: Stirling1/Stirling2/QPascal
  // are instances of w0 = a_{h+t} + b_h, w1 = 1.
  bool has_gstirling_form() const;
  SeqSpec gstirling_a() const;
  SeqSpec gstirling_b() const;

  bool exact_representable() const;
  std::string tag() const;
};

}  // namespace wpg

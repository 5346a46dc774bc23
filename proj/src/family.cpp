#include "wpg/family.hpp"

namespace wpg {

FamilySpec FamilySpec::pascal() {
  FamilySpec f;
  f.kind = Kind::Pascal;
  return f;
}

FamilySpec FamilySpec::stirling1() {
  FamilySpec f;
  f.kind = Kind::Stirling1;
  return f;
}

FamilySpec FamilySpec::stirling2() {
  FamilySpec f;
  f.kind = Kind::Stirling2;
  return f;
}

FamilySpec FamilySpec::gen_stirling(SeqSpec a_seq, SeqSpec b_seq) {
  FamilySpec f;
  f.kind = Kind::GenStirling;
  f.a_seq = std::move(a_seq);
  f.b_seq = std::move(b_seq);
  return f;
}

FamilySpec FamilySpec::q_pascal(ScalarSpec q) {
  if (q.as_double() <= 0) raise(errc::invalid_parameter, "q-Pascal requires q > 0");
  FamilySpec f;
  f.kind = Kind::QPascal;
  f.q = q;
  return f;
}

FamilySpec FamilySpec::eulerian(ScalarSpec a, ScalarSpec b) {
  if (a.as_double() <= 0 || b.as_double() <= 0)
    raise(errc::invalid_parameter, "Eulerian family requires a > 0 and b > 0");
  FamilySpec f;
  f.kind = Kind::Eulerian;
  f.a = a;
  f.b = b;
  return f;
}

FamilySpec FamilySpec::custom(SeqSpec v0, SeqSpec v1) {
  FamilySpec f;
  f.kind = Kind::Custom;
  f.v0_seq = std::move(v0);
  f.v1_seq = std::move(v1);
  return f;
}

bool FamilySpec::has_gstirling_form() const {
  switch (kind) {
    case Kind::Stirling1:
    case Kind::Stirling2:
    case Kind::GenStirling:
    case Kind::QPascal:
      return true;
    default:
      return false;
  }
}

SeqSpec FamilySpec::gstirling_a() const {
  switch (kind) {
    case Kind::Stirling1: return SeqSpec::linear(ScalarSpec(1L), ScalarSpec(1L));  // n+1
    case Kind::Stirling2: return SeqSpec::constant(ScalarSpec(0L));
    case Kind::QPascal: return SeqSpec::constant(ScalarSpec(0L));
    case Kind::GenStirling: return a_seq;
    default: raise(errc::invalid_parameter, "family has no generalized-Stirling form");
  }
}

SeqSpec FamilySpec::gstirling_b() const {
  switch (kind) {
    case Kind::Stirling1: return SeqSpec::constant(ScalarSpec(0L));
    case Kind::Stirling2: return SeqSpec::linear(ScalarSpec(1L), ScalarSpec(1L));  // h+1
    case Kind::QPascal: return SeqSpec::geometric(ScalarSpec(1L), q);              // q^h
    case Kind::GenStirling: return b_seq;
    default: raise(errc::invalid_parameter, "family has no generalized-Stirling form");
  }
}

bool FamilySpec::exact_representable() const {
  switch (kind) {
    case Kind::Pascal:
    case Kind::Stirling1:
    case Kind::Stirling2:
      return true;
    case Kind::QPascal:
      return q.exact_representable();
    case Kind::Eulerian:
      return a.exact_representable() && b.exact_representable();
    case Kind::GenStirling:
      return a_seq.exact_representable() && b_seq.exact_representable();
    case Kind::Custom:
      return v0_seq.exact_representable() && v1_seq.exact_representable();
  }
  return false;
}

std::string FamilySpec::tag() const {
  switch (kind) {
    case Kind::Pascal: return "pascal";
    case Kind::Stirling1: return "stirling1";
    case Kind::Stirling2: return "stirling2";
    case Kind::QPascal: return "qpascal(q=" + q.describe() + ")";
    case Kind::Eulerian: return "eulerian(a=" + a.describe() + ",b=" + b.describe() + ")";
    case Kind::GenStirling:
      return "gstirling(a=" + a_seq.describe() + ",b=" + b_seq.describe() + ")";
    case Kind::Custom:
      return "custom(v0=" + v0_seq.describe() + ",v1=" + v1_seq.describe() + ")";
  }
  return "unknown";
}

}  // namespace wpg

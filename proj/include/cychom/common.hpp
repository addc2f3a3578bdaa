#pragma once
#include <stdexcept>
#include <string>

namespace cychom {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
};
struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& m) : Error("dimension mismatch: " + m) {}
};
struct ScalarParseError : Error {
  explicit ScalarParseError(const std::string& m) : Error(m) {}
};
struct AlreadyUnital : Error {
  AlreadyUnital() : Error("category already has identities") {}
};
struct NotInvertible : Error {
  explicit NotInvertible(const std::string& obj) : Error("component at object '" + obj + "' is not invertible") {}
};
struct SizeLimitExceeded : Error {
  long long estimate;
  explicit SizeLimitExceeded(long long est)
      : Error("basis size estimate " + std::to_string(est) + " exceeds the configured limit"), estimate(est) {}
};
struct IndexOutOfRange : Error {
  explicit IndexOutOfRange(const std::string& m) : Error("index out of range: " + m) {}
};
struct SemicategoryHasNoIdentities : Error {
  SemicategoryHasNoIdentities() : Error("operation needs identity morphisms; category is a semicategory") {}
};
struct NotLambdaInvariant : Error {
  NotLambdaInvariant() : Error("cochain is not invariant under the signed cyclic operator") {}
};
struct NotACocycle : Error {
  explicit NotACocycle(const std::string& which) : Error("not a cocycle: " + which) {}
};
struct NotComposable : Error {
  explicit NotComposable(const std::string& m) : Error("not composable: " + m) {}
};
struct DegreeOverflow : Error {
  explicit DegreeOverflow(int bound) : Error("degree exceeds truncation bound " + std::to_string(bound)) {}
};
struct TraceAxiomViolated : Error {
  explicit TraceAxiomViolated(const std::string& probe) : Error("trace axiom violated at probe: " + probe) {}
};
struct NotHomogeneous : Error {
  NotHomogeneous() : Error("operator is not homogeneous") {}
};
struct VerificationFailed : Error {
  explicit VerificationFailed(const std::string& m) : Error("internal verification failed: " + m) {}
};
struct AssertionFailed : Error {
  explicit AssertionFailed(const std::string& m) : Error("assertion failed: " + m) {}
};
struct ClassesDiffer : Error {
  int sample_a, sample_b;
  ClassesDiffer(int a, int b)
      : Error("cohomology classes differ between samples " + std::to_string(a) + " and " + std::to_string(b)),
        sample_a(a), sample_b(b) {}
};
struct NotCocommutative : Error {
  NotCocommutative() : Error("Hopf algebra is not cocommutative") {}
};
struct CotensorNotSubmodule : Error {
  CotensorNotSubmodule() : Error("cotensor space is not closed under the diagonal action") {}
};
struct NotAGroup : Error {
  explicit NotAGroup(const std::string& m) : Error("not a group: " + m) {}
};
// Identity exists but is not a single basis element; some constructions
// (degeneracy-aligned functionals) require basis-aligned identities.
struct IdentityNotBasisAligned : Error {
  explicit IdentityNotBasisAligned(const std::string& obj)
      : Error("identity at object '" + obj + "' is not a single basis element") {}
};
// Input document shape errors; `where` is a JSON-pointer-style location.
struct SchemaError : Error {
  std::string where;
  SchemaError(const std::string& pointer, const std::string& m)
      : Error("schema error at " + pointer + ": " + m), where(pointer) {}
};

}  // namespace cychom

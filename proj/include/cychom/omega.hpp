#pragma once
#include <map>
#include <utility>
#include <vector>

#include "cychom/cohomology.hpp"

namespace cychom {

// Leading-slot marker for a pure adjoined-unit factor.
inline constexpr int kUnitLead = -1;

// Basis symbol (f0 + mu) df1 ... dfn of the graded envelope: `lead` is the
// global id of f0, or kUnitLead when the leading factor is the adjoined
// unit; `tail` holds the global ids f1..fn.  Degree = tail length.
struct OmegaSymbol {
  int lead = kUnitLead;
  std::vector<int> tail;
  int degree() const { return static_cast<int>(tail.size()); }
  auto operator<=>(const OmegaSymbol&) const = default;
};

// Homogeneous element of the degree-graded hom space src -> dst.
struct OmegaElement {
  int src = 0;
  int dst = 0;
  int degree = 0;
  std::map<OmegaSymbol, Scalar> coords;  // nonzero coefficients only
  bool is_zero() const { return coords.empty(); }
};

bool operator==(const OmegaElement& a, const OmegaElement& b);

// Closed graded trace of one fixed dimension: values on endomorphism basis
// symbols, zero entries omitted.  Valid traces vanish on unit-lead symbols
// (forced by the closure axiom), so conversions only populate morphism
// leads.
struct GradedTrace {
  int dimension = 0;
  std::map<OmegaSymbol, Scalar> values;
};

bool operator==(const GradedTrace& a, const GradedTrace& b);

// Workspace for the graded envelope of one category, truncated at a fixed
// degree bound.  Caches per-(degree, src, dst) hom bases and owns the nerve
// workspace used by the trace <-> cochain conversions.  Operations reject
// results above the bound (DegreeOverflow) instead of truncating.
class OmegaContext {
 public:
  explicit OmegaContext(const LinCategory& C, int degree_bound,
                        long long basis_limit = default_basis_limit());

  const LinCategory& category() const { return nerve_.category(); }
  int degree_bound() const { return bound_; }
  NerveContext& nerve() { return nerve_; }

  OmegaElement zero(int src, int dst, int degree) const;
  OmegaElement from_morphism(int mor_id) const;  // degree-0 basis element
  // Builds an element after validating every symbol's composability chain,
  // unit placement, and degree (NotComposable on violation).
  OmegaElement make(int src, int dst, int degree, std::map<OmegaSymbol, Scalar> coords) const;

  OmegaElement add(const OmegaElement& a, const OmegaElement& b) const;
  OmegaElement scale(const OmegaElement& a, const Scalar& c) const;
  // a . b with b applied first; requires src(a) == dst(b).
  OmegaElement compose(const OmegaElement& a, const OmegaElement& b) const;
  // Degree n -> n+1: kills unit leads, otherwise moves the lead to the tail.
  OmegaElement differential(const OmegaElement& a) const;

  // Basis of the degree-n hom space src -> dst, ordered lexicographically by
  // (object tuple, lead, tail locals with f1 most significant); within each
  // object tuple the unit lead sorts after all morphism leads.
  const std::vector<OmegaSymbol>& hom_basis(int n, int src, int dst);
  // Exact basis count (saturating); what the basis limit guards.
  long long hom_size_estimate(int n, int src, int dst) const;

  // Evaluate a trace on an endomorphism element of degree == dimension.
  Scalar eval(const GradedTrace& T, const OmegaElement& w) const;
  // Check every axiom instance on basis probes: T(d omega) = 0 for all
  // endomorphism symbols omega one degree down, and the graded law
  // T(g'g) = (-1)^{ij} T(gg') over all complementary-degree basis pairs.
  // Throws TraceAxiomViolated naming the first failing probe.
  void verify_trace(const GradedTrace& T);

 private:
  NerveContext nerve_;
  int bound_;
  long long basis_limit_;
  std::map<std::tuple<int, int, int>, std::vector<OmegaSymbol>> basis_cache_;

  void check_symbol(int n, int src, int dst, const OmegaSymbol& s) const;
  std::vector<std::pair<int, Scalar>> compose_global(int g, int f) const;
};

enum class OmegaOp { compose, differentiate };

// Single-entry arithmetic surface; differentiate applies to `a` alone.
OmegaElement omega_algebra(OmegaContext& ctx, const OmegaElement& a, const OmegaElement& b,
                           OmegaOp op);

// Lambda-invariant cocycle at level n -> probe-verified trace of dimension n
// with values phi(f0,...,fn) on morphism-lead symbols and 0 on unit leads.
// NotACocycle names the failing cocycle condition.
GradedTrace cocycle_to_trace(OmegaContext& ctx, const Cochain& phi);

// Probe-verified trace of dimension n -> cochain phi(f0,...,fn) =
// T(f0 df1 ... dfn), verified to be a cyclic cocycle before returning.
// Throws TraceAxiomViolated when the probes fail.
Cochain trace_to_cocycle(OmegaContext& ctx, const GradedTrace& T);

// Character of a degree-0 realization carrying a closed graded trace: the
// level-n cochain  tuple -> trace(rho(f0) d rho(f1) ... d rho(fn)),
// verified to be a cyclic cocycle before returning.  A realization provides
// apply(mor_id) -> Elem, differential(Elem), compose(Elem, Elem) (second
// argument first), and trace(Elem) -> Scalar on top-degree endomorphisms.
template <class Realization>
Cochain cycle_character(NerveContext& nctx, const Realization& real, int n) {
  const NerveBasis& basis = nctx.basis(n);
  SparseVec coords;
  for (int k = 0; k < basis.size(); ++k) {
    const NerveTuple& t = basis.tuple(k);
    auto acc = real.apply(t[0]);
    for (std::size_t s = 1; s < t.size(); ++s)
      acc = real.compose(acc, real.differential(real.apply(t[s])));
    Scalar v = real.trace(acc);
    if (!v.is_zero()) coords.emplace_back(k, v);
  }
  Cochain phi{n, coords};
  if (!is_cyclic_cocycle(nctx, phi))
    throw VerificationFailed("realization character is not a cyclic cocycle");
  return phi;
}

// The identity realization of a category inside its own graded envelope.
struct OmegaRealization {
  OmegaContext& ctx;
  GradedTrace T;
  OmegaElement apply(int mor_id) const { return ctx.from_morphism(mor_id); }
  OmegaElement differential(const OmegaElement& a) const { return ctx.differential(a); }
  OmegaElement compose(const OmegaElement& a, const OmegaElement& b) const {
    return ctx.compose(a, b);
  }
  Scalar trace(const OmegaElement& w) const { return ctx.eval(T, w); }
};

}  // namespace cychom

#pragma once
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cychom/morita.hpp"
#include "cychom/omega.hpp"
#include "cychom/omega_tensor.hpp"

namespace cychom {

// ---------------------------------------------------------------------------
// Finite groups presented by multiplication tables.
// ---------------------------------------------------------------------------

// table[a][b] = index of the product a*b.  Validated by group_algebra.
struct GroupTable {
  std::vector<std::string> names;
  std::vector<std::vector<int>> table;
  int dim() const { return static_cast<int>(names.size()); }
};

GroupTable trivial_group();
GroupTable cyclic_group(int n);
GroupTable symmetric_group_3();

// ---------------------------------------------------------------------------
// Hopf algebras presented by structure tables over the scalar field.
// ---------------------------------------------------------------------------

// Everything is stored over the ordered basis: mult[a][b] holds the
// coordinates of e_a e_b, comult[a] holds the expansion of e_a over the pair
// index p * dim + q, counit holds the scalar at each basis index, and the
// antipode matrices hold S(e_a) respectively S^{-1}(e_a) in column a.
struct HopfAlgebra {
  std::vector<std::string> basis;
  SparseVec unit;
  std::vector<std::vector<SparseVec>> mult;
  std::vector<SparseVec> comult;
  SparseVec counit;
  SparseMatrix antipode;
  SparseMatrix antipode_inverse;
  int dim() const { return static_cast<int>(basis.size()); }
};

bool operator==(const HopfAlgebra& a, const HopfAlgebra& b);

Scalar hopf_counit(const HopfAlgebra& H, const SparseVec& x);
SparseVec hopf_mult(const HopfAlgebra& H, const SparseVec& x, const SparseVec& y);
SparseVec hopf_comult(const HopfAlgebra& H, const SparseVec& x);  // pair index
bool is_cocommutative(const HopfAlgebra& H);

// Terms of the r-fold comultiplication of x: basis tuples of length r + 1
// with exact coefficients, duplicates merged, expanded in the last slot at
// every step.
std::vector<std::pair<std::vector<int>, Scalar>> comult_iterate(const HopfAlgebra& H,
                                                                const SparseVec& x, int r);

// Group algebra with grouplike basis: the comultiplication duplicates each
// element, the counit is 1 everywhere, and the antipode inverts.  Throws
// NotAGroup when the table is not a group (malformed shape, no identity,
// associativity failure, or a missing inverse).
HopfAlgebra group_algebra(const GroupTable& G);
// The four-dimensional Hopf algebra {1, g, x, gx} with g^2 = 1, x^2 = 0,
// xg = -gx: the smallest example whose comultiplication is not symmetric
// (and whose antipode has order four).
HopfAlgebra sweedler_hopf();

// ---------------------------------------------------------------------------
// Stable anti-Yetter-Drinfeld coefficients and module categories.
// ---------------------------------------------------------------------------

// Right module / left comodule coefficients: action[h] holds m . e_h in
// column m, coaction[m] expands over the pair index h * dim + m'.
struct SAYDModule {
  HopfAlgebra hopf;
  std::vector<std::string> basis;
  std::vector<SparseMatrix> action;
  std::vector<SparseVec> coaction;
  int dim() const { return static_cast<int>(basis.size()); }
};

// One-dimensional coefficients: the counit action and the unit coaction.
SAYDModule trivial_sayd(const HopfAlgebra& H);
// The group algebra over itself: coaction by duplication, action by
// conjugation m . h = h^{-1} m h.
SAYDModule conjugation_sayd(const GroupTable& G);

// Category with an action of H on every hom space: action[h] holds h . f in
// column f over global morphism ids (hom blocks are preserved).
struct HCategory {
  HopfAlgebra hopf;
  LinCategory cat;
  std::vector<SparseMatrix> action;
};

// h . f = counit(h) f on any category.
HCategory trivial_hcategory(const HopfAlgebra& H, const LinCategory& C);
// One object whose endomorphisms are the group algebra, with
// e_b . e_a = e_{b a b^{-1}}.
HCategory conjugation_hcategory(const GroupTable& G);
// The matrix amplification D ⊗ M_r with the action on the category factor
// only.
HCategory matrix_amplification(const HCategory& D, int r, MatrixTensorInfo* info_out = nullptr);
// Componentwise tensor category with the diagonal action h1 ⊗ h2; requires a
// cocommutative Hopf algebra (NotCocommutative) on both factors
// (DimensionMismatch when they differ).
HCategory tensor_hcategory(const HCategory& A, const HCategory& B,
                           CategoryTensorInfo* info_out = nullptr);

// ---------------------------------------------------------------------------
// Axiom validation.  Reports list every violated probe; nothing throws.
// ---------------------------------------------------------------------------

// Associativity, unit, coassociativity, counit, the bialgebra compatibility
// of comultiplication and counit with the product, both antipode identities,
// and that the two antipode matrices invert each other.
ValidationReport validate_hopf(const HopfAlgebra& H);
// Right-module and left-comodule axioms, the anti-Yetter-Drinfeld
// compatibility on all basis probes, and stability.
ValidationReport validate_sayd(const HopfAlgebra& H, const SAYDModule& M);
// Hom-block preservation, the left-module axioms, h(id) = counit(h) id, and
// h(g f) = (h1 g)(h2 f) on all composable basis pairs.
ValidationReport validate_hcategory(const HopfAlgebra& H, const HCategory& D);
// All of the above for a full coefficient package, with prefixed messages;
// also checks that the module and the category are over the given Hopf
// algebra.
ValidationReport validate_hopf_inputs(const HopfAlgebra& H, const SAYDModule& M,
                                      const HCategory& D);

// ---------------------------------------------------------------------------
// The twisted cyclic complex of M ⊗ CN(D).
// ---------------------------------------------------------------------------

// Diagonal action of the basis element e_h on the level-n nerve of an
// H-module category, as a chain matrix (row k = image of the basis tuple k).
SparseMatrix nerve_diagonal_action(NerveContext& nctx, const HCategory& D, int n, int h);

// Workspace for the coefficient complex M ⊗ CN_n(D): level-n basis index
// m * |CN_n| + k over (coefficient basis m, nerve tuple k).  All operator
// matrices follow the nerve convention: row (m, k) holds the image chain's
// coordinates, and cochain operators act on coordinate vectors via apply.
// Cochains over this space reuse the Cochain type.
class HopfNerveContext {
 public:
  HopfNerveContext(const HopfAlgebra& H, const SAYDModule& M, const HCategory& D,
                   long long limit = default_basis_limit(), ExecMode mode = ExecMode::parallel);

  const HopfAlgebra& hopf() const { return H_; }
  const SAYDModule& coefficients() const { return M_; }
  const HCategory& hcategory() const { return D_; }
  NerveContext& nerve() { return nerve_; }
  ExecMode mode() const { return mode_; }
  long long limit() const { return limit_; }

  int coefficient_dim() const { return static_cast<int>(M_.basis.size()); }
  // dim M * |CN_n|; throws SizeLimitExceeded when the product passes the
  // limit.
  int space_dim(int n);
  int index_of(int n, int m, int k);

  // Right action of e_h on M ⊗ CN_n: (m ⊗ x) . h = m h1 ⊗ S(h2) x.
  const SparseMatrix& right_action(int n, int h);

  // Face family at level n: slot composition for i < n, and the twisted
  // wrap-around m ⊗ (f^0..f^n) -> m0 ⊗ ((S^{-1}(m_{-1}) f^n) f^0, f^1, ...)
  // at i = n.  Rows at level n, columns at level n - 1.
  const SparseMatrix& delta(int n, int i);
  // Degeneracies insert identities; rows at level n, columns at level n + 1.
  const SparseMatrix& sigma(int n, int i);
  // Twisted rotation m ⊗ (f^0..f^n) -> m0 ⊗ (S^{-1}(m_{-1}) f^n, f^0, ...).
  const SparseMatrix& tau(int n);
  SparseMatrix b(int n);        // alternating faces at level n + 1
  SparseMatrix b_prime(int n);  // last face omitted
  SparseMatrix lambda(int n);   // (-1)^n tau

  // Columns span the coefficient space of the equivariant functionals at
  // level n: the joint kernel of right_action(n, h) - counit(h) id.
  const SparseMatrix& equivariant_basis(int n);

  // Coinvariant quotient of M ⊗ CN_n by the relations
  // (m . h) ⊗ x - m ⊗ (h . x): `relations` rows span the divided subspace,
  // `section` lists the representative coordinates (deterministically, the
  // echelon's free columns in ascending order), and `projection` rows
  // express the quotient coordinates of any full vector.
  struct QuotientData {
    SparseMatrix relations;
    std::vector<int> section;
    SparseMatrix projection;  // quotient dim x full dim
  };
  const QuotientData& quotient(int n);

  // Restriction of a structure matrix (rows at rows_level, columns at
  // cols_level) to the equivariant coefficient bases; VerificationFailed
  // when the subspace is not preserved.
  SparseMatrix equivariant_restriction(const SparseMatrix& full, int rows_level, int cols_level);
  // Induced map on the coinvariant quotients; VerificationFailed when the
  // relations do not descend.
  SparseMatrix quotient_map(const SparseMatrix& full, int rows_level, int cols_level);

 private:
  HopfAlgebra H_;
  SAYDModule M_;
  HCategory D_;
  long long limit_;
  ExecMode mode_;
  NerveContext nerve_;

  // Precomputed columns of the structural matrices and the comultiplication
  // pair lists, one per basis element.
  std::vector<std::vector<SparseVec>> act_m_cols_, act_d_cols_;
  std::vector<SparseVec> antipode_cols_, antipode_inv_cols_;
  struct ComultTerm {
    int left, right;
    Scalar coeff;
  };
  std::vector<std::vector<ComultTerm>> comult_pairs_;
  struct CoactTerm {
    int h, m;
    Scalar coeff;
  };
  std::vector<std::vector<CoactTerm>> coaction_terms_;

  std::map<std::pair<int, int>, SparseMatrix> nerve_action_cache_, right_action_cache_;
  std::map<std::pair<int, int>, SparseMatrix> delta_cache_, sigma_cache_;
  std::map<int, SparseMatrix> tau_cache_, equivariant_cache_;
  std::map<int, QuotientData> quotient_cache_;

  const SparseMatrix& nerve_action(int n, int h);
  SparseMatrix assemble(int rows, int cols, const std::function<SparseVec(int)>& row_of);
  // Twisted last slot of tuple k at level n: terms (m0, g, coeff) of
  // m0 ⊗ S^{-1}(m_{-1}) f^n.
  struct TwistTerm {
    int m0, g;
    Scalar coeff;
  };
  std::vector<TwistTerm> twist_last_slot(int n, int m, int k);
};

// ---------------------------------------------------------------------------
// Structure maps, identity checks, cohomology.
// ---------------------------------------------------------------------------

enum class HopfSide { cochain, chain };

// Structure maps at one level in restricted coordinates: the equivariant
// functionals for the cochain side, the coinvariant quotient for the chain
// side.  deltas[i] has rows at restricted level n and columns at level
// n - 1 (empty list when n = 0), sigmas[i] has rows at n and columns at
// n + 1, tau is square at n.  Construction verifies the full cyclic identity
// set on a window around n — faces against faces, degeneracies, the mixed
// relations, the rotation relations, the (n+1)-st power of tau being the
// identity, invertibility of tau, b squaring to zero, and the coboundary
// rotation compatibility — and records one line per verified family.
struct HopfStructure {
  int n = 0;
  HopfSide side = HopfSide::cochain;
  int dim_low = 0, dim_mid = 0, dim_high = 0;
  std::vector<SparseMatrix> deltas;
  std::vector<SparseMatrix> sigmas;
  SparseMatrix tau;
  std::vector<std::string> checks;
};

HopfStructure hopf_cocyclic_structure(HopfNerveContext& ctx, int n, HopfSide side);

// The same identity families on the full space M ⊗ CN, where the rotation
// need not have finite order: every relation except the tau power must hold
// (AssertionFailed otherwise); whether tau^{n+1} = id already holds
// unrestricted is reported, not required.
struct ParacyclicReport {
  bool tau_power_is_identity = false;
  std::vector<std::string> checks;
};

ParacyclicReport paracyclic_identity_check(HopfNerveContext& ctx, int n);

// Equivariance under the right action, rotation invariance, and closedness.
bool is_hopf_cocycle(HopfNerveContext& ctx, const Cochain& phi);

// Basis of the equivariant cyclic cocycles at level n (full coordinates).
std::vector<Cochain> hopf_cocycles(HopfNerveContext& ctx, int n);

// Cohomology of the equivariant rotation-invariant subcomplex, with
// membership of the coboundaries in the cocycle span verified exactly.
CohomologyReport hopf_cyclic_cohomology(HopfNerveContext& ctx, int n);

// ---------------------------------------------------------------------------
// Cotensor pairing.
// ---------------------------------------------------------------------------

// Product of two equivariant cyclic cocycles over the cotensor coefficients:
// the kernel of the coaction-matching map inside M ⊗ M', which must be
// closed under the diagonal action (CotensorNotSubmodule) and is re-validated
// as stable anti-Yetter-Drinfeld data.  The value lives at level p + q over
// the componentwise tensor category and is verified to be an equivariant
// cyclic cocycle before returning.  Requires a cocommutative Hopf algebra
// (NotCocommutative); inputs are re-verified (NotACocycle).
struct CotensorPairing {
  SAYDModule cotensor;
  SparseMatrix cotensor_basis;  // columns embed the cotensor into M ⊗ M'
  HCategory product;
  CategoryTensorInfo info;
  Cochain value;
  std::vector<std::string> checks;
};

CotensorPairing cotensor_pairing(const HopfAlgebra& H, const SAYDModule& M, const SAYDModule& Mp,
                                 const HCategory& D, const HCategory& Dp, const Cochain& phi,
                                 const Cochain& phi_b, long long basis_limit = default_basis_limit());

// ---------------------------------------------------------------------------
// Graded traces with coefficients.
// ---------------------------------------------------------------------------

// Dimension-homogeneous trace on the graded envelope with coefficients in M:
// one symbol-value table per coefficient basis vector, zero on unit leads.
struct HopfGradedTrace {
  int dimension = 0;
  std::vector<std::map<OmegaSymbol, Scalar>> values;
};

// Action of an element of H (given by coordinates) on an envelope element:
// h . ((f0 + mu) df1 ... dfn) = (h1 f0 + mu counit(h1)) d(h2 f1) ... applied
// slotwise through the iterated comultiplication.
OmegaElement hopf_omega_action(OmegaContext& octx, const HCategory& D, const SparseVec& hcoords,
                               const OmegaElement& w);

// Pairing of a coefficient vector and an envelope element against the trace.
Scalar hopf_trace_eval(const HopfGradedTrace& T, const SparseVec& mcoords, const OmegaElement& w);

// Checks every axiom instance on basis probes: equivariance
// T(m h1 ⊗ S(h2) w) = counit(h) T(m ⊗ w), closure T(m ⊗ dw) = 0, and the
// twisted graded law T(m ⊗ a b) = (-1)^{ij} T(m0 ⊗ (S^{-1}(m_{-1}) b) a)
// over all complementary-degree basis pairs.  Throws TraceAxiomViolated
// naming the first failing probe.
void verify_hopf_trace(OmegaContext& octx, const SAYDModule& M, const HCategory& D,
                       const HopfGradedTrace& T);

// Equivariant cyclic cocycle -> probe-verified coefficient trace -> cocycle
// again; the roundtrip is checked to reproduce the input exactly.
struct HopfTraceReport {
  HopfGradedTrace trace;
  Cochain roundtrip;
  std::vector<std::string> checks;
};

HopfTraceReport omega_h_action_trace(OmegaContext& octx, const SAYDModule& M, const HCategory& D,
                                     const Cochain& phi);

// ---------------------------------------------------------------------------
// Matrix amplification compatibility.
// ---------------------------------------------------------------------------

// Verifies that the amplified category is again an H-module category and
// that the corner inclusions and the matrix-trace chain maps intertwine the
// diagonal actions at every level up to nmax.
MoritaCertificate hopf_morita_check(const HCategory& D, int r, int nmax,
                                    long long limit = default_basis_limit());

}  // namespace cychom

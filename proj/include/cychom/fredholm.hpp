#pragma once
#include <random>
#include <utility>
#include <vector>

#include "cychom/cohomology.hpp"
#include "cychom/omega.hpp"

namespace cychom {

// Dense exact matrix between Z/2-graded spaces.  Indices are split
// even-first: rows < rows_even() address the even summand of the target,
// the remainder the odd summand; columns likewise for the source.
class BlockMatrix {
 public:
  BlockMatrix() = default;
  BlockMatrix(int rows_even, int rows_odd, int cols_even, int cols_odd);
  static BlockMatrix identity(int even, int odd);

  int rows() const { return re_ + ro_; }
  int cols() const { return ce_ + co_; }
  int rows_even() const { return re_; }
  int rows_odd() const { return ro_; }
  int cols_even() const { return ce_; }
  int cols_odd() const { return co_; }

  Scalar& at(int r, int c);
  const Scalar& at(int r, int c) const;

  bool operator==(const BlockMatrix& o) const;
  bool operator!=(const BlockMatrix& o) const { return !(*this == o); }
  BlockMatrix operator+(const BlockMatrix& o) const;
  BlockMatrix operator-(const BlockMatrix& o) const;
  // Graded composition: the column split of *this must equal the row split
  // of o (DimensionMismatch otherwise).
  BlockMatrix operator*(const BlockMatrix& o) const;
  BlockMatrix scaled(const Scalar& c) const;

  bool is_zero() const;
  // Syntactic degree checks; the zero matrix passes both.
  bool is_even() const;  // both off-diagonal blocks vanish
  bool is_odd() const;   // both diagonal blocks vanish

  Scalar trace() const;  // plain trace; DimensionMismatch unless square
  // Composition with the grading sign on the target: odd rows negated.
  BlockMatrix eps_left() const;
  // trace(eps . T): even diagonal minus odd diagonal.
  Scalar eps_trace() const { return eps_left().trace(); }

 private:
  int re_ = 0, ro_ = 0, ce_ = 0, co_ = 0;
  std::vector<Scalar> data_;
  void check_same_shape(const BlockMatrix& o) const;
};

// Degree-0 matrix representation of a category on graded spaces: dims[x] =
// (even, odd) dimensions of H(x); action[f] maps H(src f) -> H(dst f) and
// is block-diagonal.  Representations must be genuine functors: identities
// act as identity matrices and composition is respected exactly.
struct GradedRep {
  LinCategory category;
  std::vector<std::pair<int, int>> dims;
  std::vector<BlockMatrix> action;
};

// Graded representation together with one odd involution F_x per object
// (only the two off-diagonal blocks are nonzero; F_x * F_x = id).
struct FredholmModule {
  GradedRep rep;
  std::vector<BlockMatrix> F;
};

// validate_fredholm outcome.  In finite dimension every commutator lies in
// every Schatten class, so summability holds with nothing to check.
struct FredholmReport {
  bool ok = true;
  std::vector<std::string> violations;
  bool summable_for_all_p = true;
  void fail(std::string what) {
    ok = false;
    violations.push_back(std::move(what));
  }
};

// Block matrix of a coordinate vector over hom(x, y).
BlockMatrix rep_action(const GradedRep& rep, int x, int y, const SparseVec& coords);

// Shape, degree-0, functoriality (identity laws included), and F
// oddness/involutivity checks; failures are reported, not thrown.
FredholmReport validate_fredholm(const FredholmModule& FM);

// [F, T] = F_dst T - (-1)^{|T|} T F_src for homogeneous T: H(src) -> H(dst).
// The result has opposite parity; throws NotHomogeneous on mixed input.
BlockMatrix graded_commutator(const FredholmModule& FM, int src, int dst, const BlockMatrix& T);

// (1/2) trace(eps F_x [F, T]) for a homogeneous endomorphism T at x.
// Equals eps_trace on even T and vanishes on odd T.
Scalar supertrace(const FredholmModule& FM, int x, const BlockMatrix& T);

// Level-2m cochain  (f0,...,f2m) -> supertrace(H(f0)[F,f1]...[F,f2m]),
// evaluated per basis tuple (parallel under the context mode) and verified
// to be a cyclic cocycle.  The context must present the same category.
Cochain chern_character(NerveContext& nctx, const FredholmModule& FM, int m);

// Float-only view: singular values of [F, H(f)] and their Schatten p-norm.
// Informational output; nothing downstream consumes these numbers.
struct SchattenReport {
  std::vector<double> singular_values;  // descending
  double p = 1.0;
  double norm = 0.0;
};
SchattenReport schatten_diagnostic(const FredholmModule& FM, int f, double p);

// A graded matrix with remembered endpoints and total degree.
struct RealizedElement {
  int src = 0, dst = 0, degree = 0;
  BlockMatrix M;
};

// Realization of the graded envelope in blocked matrices: a symbol maps to
// H(lead-or-identity) [F,H(f1)] ... [F,H(fn)] and the differential is
// [F, -].  Provides the cycle_character realization interface.
struct FredholmRealization {
  const FredholmModule* FM = nullptr;

  RealizedElement apply(int mor_id) const;
  RealizedElement differential(const RealizedElement& T) const;
  // a . b with b applied first; requires a.src == b.dst.
  RealizedElement compose(const RealizedElement& a, const RealizedElement& b) const;
  // Supertrace at the endpoint; requires src == dst.
  Scalar trace(const RealizedElement& T) const;

  RealizedElement realize(const OmegaSymbol& s) const;
  RealizedElement realize(const OmegaElement& w) const;
};
FredholmRealization omega_realization(const FredholmModule& FM);

// --- stock modules -------------------------------------------------------
// R(x) = (+)_w hom(w, x) with morphisms acting by postcomposition: the
// canonical exact representation available on every unital category.

// H(x) = R(x) (+) R(x), F = swap.  Every commutator [F, H(f)] vanishes.
FredholmModule regular_swap_module(const LinCategory& C);
// Same representation; F_x = [[0, Q_x], [Q_x^{-1}, 0]] for random
// invertible Q_x, giving generically nonzero commutators.
FredholmModule random_regular_module(const LinCategory& C, std::mt19937_64& rng);
// Even block R, odd block P R P^{-1} for random invertible P; F = swap.
FredholmModule conjugated_pair_module(const LinCategory& C, std::mt19937_64& rng);
// H'(f) = T_dst H(f) T_src^{-1}, F' = T F T^{-1} for even invertible T;
// NotInvertible when some T_x is singular.
FredholmModule conjugate_module(const FredholmModule& FM, const std::vector<BlockMatrix>& T);
std::vector<BlockMatrix> random_even_conjugators(const FredholmModule& FM,
                                                 std::mt19937_64& rng);
// Valid module over a random small category (single point, dual numbers,
// order-2 group algebra, 2-chain poset, 2-object chaotic); dims <= (2|2).
FredholmModule random_fredholm_module(std::mt19937_64& rng);

}  // namespace cychom

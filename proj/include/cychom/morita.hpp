#pragma once
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cychom/cohomology.hpp"

namespace cychom {

// Chain map between two nerve complexes, one matrix per level; row k holds
// the image chain's coordinates over the target basis.
struct ChainMap {
  std::vector<SparseMatrix> matrices;  // index = level
};

// One passed identity per entry; the ops below throw AssertionFailed naming
// the first identity that fails, so holding a certificate means every listed
// check was verified exactly.
struct MoritaCertificate {
  std::vector<std::string> checks;
};

// Matrix-linearization workspace: a category C, the tensor category C⊗M_r,
// both nerves, and the inclusion / trace / homotopy chain maps between them.
class MoritaContext {
 public:
  MoritaContext(const LinCategory& C, int r, long long limit = default_basis_limit(),
                ExecMode mode = ExecMode::parallel);

  NerveContext& base() { return base_; }
  NerveContext& tensor() { return tensor_; }
  const MatrixTensorInfo& info() const { return info_; }
  int r() const { return r_; }

  // inc_p at level n: C_n(C) -> C_n(C⊗M_r), tuples mapped slotwise to
  // f ⊗ E_pp (1 <= p <= r; IndexOutOfRange otherwise).
  const SparseMatrix& inc(int p, int n);
  // Trace map at level n: C_n(C⊗M_r) -> C_n(C), scaling by the trace of the
  // product of the matrix parts (zero unless they chain cyclically).
  const SparseMatrix& tr(int n);
  // Homotopy piece at level n: C_n(C⊗M_r) -> C_{n+1}(C⊗M_r), 0 <= i <= n.
  // Splits the matrix parts of slots 0..i through the first row/column and
  // inserts an identity slot carrying the dangling column index.
  const SparseMatrix& hbar(int i, int n);
  // Alternating sum of the homotopy pieces at level n.
  SparseMatrix hbar_sum(int n);

 private:
  int r_;
  MatrixTensorInfo info_;
  NerveContext base_, tensor_;
  std::map<std::pair<int, int>, SparseMatrix> inc_cache_, hbar_cache_;
  std::map<int, SparseMatrix> tr_cache_;
};

// Materializes inc_p and tr at levels 0..nmax, verifying per level that both
// commute with the faces, the rotation, and b, that tr also commutes with
// the degeneracies, and that tr∘inc_p = id.  (inc_p is not compatible with
// degeneracies: it inserts f ⊗ E_pp, not the full tensor identity.)
std::pair<ChainMap, ChainMap> morita_chain_maps(MoritaContext& mctx, int p, int nmax);

// Checks every homotopy relation at level n — d_i ħ_{i'} = ħ_{i'-1} d_i for
// i < i', d_i ħ_i = d_i ħ_{i-1} for 0 < i <= n, d_i ħ_{i'} = ħ_{i'} d_{i-1}
// for i > i'+1, d_0 ħ_0 = id, d_{n+1} ħ_n = inc_1∘tr — plus the summed
// identity b ħ + ħ b = id − inc_1∘tr, all as exact matrix equalities.
MoritaCertificate presimplicial_homotopy_check(MoritaContext& mctx, int n);

// Asserts dim HC^k(C) = dim HC^k(C⊗M_r) for k <= nmax, that the pullback
// composite along (inc then tr) is the identity on base cocycles, and that
// the composite along (tr then inc) fixes every tensor-side representative's
// class with an explicit coboundary witness.
MoritaCertificate morita_cohomology_check(MoritaContext& mctx, int nmax);

// Chain matrix of the functor Phi at level n: a tuple maps to the
// multilinear expansion of the slotwise images.  Source rows, target
// columns; contexts must present Phi's source and target categories.
SparseMatrix functor_chain_matrix(NerveContext& src, NerveContext& dst, const LinFunctor& Phi,
                                  int n);

// Asserts that conjugation by eta fixes every cyclic cohomology class up to
// level nmax, recording an explicit coboundary witness for each
// representative.
MoritaCertificate inner_identity_check(NerveContext& nctx, const AutFamily& eta, int nmax);

}  // namespace cychom

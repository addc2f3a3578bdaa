#pragma once
#include <string>
#include <utility>
#include <vector>

#include "cychom/fredholm.hpp"
#include "cychom/omega.hpp"

namespace cychom {

// Family of Fredholm modules over one category with matching graded
// dimensions.  `conjugators` is empty or holds one row per sample: an even
// invertible block matrix per object used for the similarity check.
struct FredholmFamily {
  std::vector<FredholmModule> samples;
  std::vector<std::vector<BlockMatrix>> conjugators;
};

// phi # phi': pairing of cyclic cocycles into the tensor category, computed
// by converting both factors to graded traces, forming the tensor trace on
// the tensor envelope, and taking the character of the resulting cycle.  The
// output is indexed by the nerve of tensor_category(A, B); pass `tensor_out`
// / `info_out` to receive that category and its pair bookkeeping.  Inputs
// are re-verified (NotACocycle); the output is verified before returning.
Cochain cup_product(const LinCategory& A, const LinCategory& B, const Cochain& phi,
                    const Cochain& phi_b, LinCategory* tensor_out = nullptr,
                    CategoryTensorInfo* info_out = nullptr,
                    long long basis_limit = default_basis_limit());

// Periodicity shift: S(phi) at level r+2 by the contracted-slot sum
//   S(phi)(f0,...,f{r+2}) = sum_i T(f0 df1 ... (f^i f^{i+1}) ... df^{r+2}),
// plus the explicit witness at level r+1 (bare slot j, sign (-1)^{j-1})
// satisfying b(witness) == S(phi) exactly.  With `cross_check` set, S(phi)
// is recomputed as the cup product with the canonical level-2 generator on
// the one-object identity category and compared entrywise.
struct PeriodicityResult {
  Cochain S;        // verified cyclic cocycle, level r+2
  Cochain witness;  // level r+1, b(witness) == S
};
PeriodicityResult periodicity_S(OmegaContext& ctx, const Cochain& phi, bool cross_check = true);

// Exact certificate for the periodicity identity of a Fredholm module's
// characters: with ch_low / ch_high the level-2m / level-(2m+2) characters,
// the rotation-invariant witness at level 2m+1 satisfies
//   S(ch_low) + (m+1) ch_high == b(witness)
// entrywise, so S(ch_low) = -(m+1) ch_high in cyclic cohomology.
struct PeriodicityCertificate {
  int m = 0;
  Cochain ch_low;
  Cochain ch_high;
  Cochain S_low;
  Cochain witness;
};
PeriodicityCertificate verify_periodicity_theorem(const FredholmModule& FM, int m,
                                                  bool cross_check = true,
                                                  long long basis_limit = default_basis_limit());

// Certificate for S(B psi) == n(n+1) b(psi) modulo exact coboundaries: psi
// lives at level n >= 1 and must have a rotation-invariant coboundary.
// Produces B psi (a verified cyclic cocycle scaled by n under the averaging
// operator), S(B psi), and a rotation-invariant zeta at level n with
//   b(zeta) == S(B psi) - n(n+1) b(psi).
// An independent coboundary solve re-derives a witness as a cross-check.
struct SBCertificate {
  Cochain B_psi;  // level n-1
  Cochain S_B;    // level n+1
  Cochain zeta;   // level n
  std::vector<std::string> checks;
};
SBCertificate sb_relation_check(OmegaContext& ctx, const Cochain& psi);

// Discrete homotopy-invariance check: every sample's level-(2m+2) character
// must lie in one cyclic cohomology class; ClassesDiffer(i, j) reports a
// genuine negative.  When conjugators are given, each conjugated sample must
// reproduce its character cochain identically (trace similarity invariance).
struct HomotopyCertificate {
  int m = 0;
  std::vector<Cochain> characters;      // per sample, level 2m+2
  std::vector<Cochain> pair_witnesses;  // b(w) == characters[i] - characters[j], pairs (i,j), i<j
  std::vector<std::string> checks;
};
HomotopyCertificate homotopy_family_check(NerveContext& nctx, const FredholmFamily& family, int m);

}  // namespace cychom

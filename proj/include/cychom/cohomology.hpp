#pragma once
#include <optional>

#include "cychom/nerve.hpp"

namespace cychom {

// Exact dimension counts at one level plus a chosen representative basis of
// the cohomology.  representatives extend the coboundary span inside the
// cocycle space, so their classes are linearly independent.
struct CohomologyReport {
  int n = 0;
  int dim_cocycles = 0;
  int dim_coboundaries = 0;
  int dim_cohomology = 0;
  bool differential_squares_to_zero = true;
  std::vector<Cochain> representatives;
};

// Cohomology of the complex (Ker(1-lambda), b) at level n.
CohomologyReport cyclic_cohomology(NerveContext& ctx, int n);

// Cohomology of the full complex (CN^*, b) at level n.
CohomologyReport hochschild_cohomology(NerveContext& ctx, int n);

// Is phi lambda-invariant?  (Throws nothing; used as a guard by callers.)
bool is_lambda_invariant(NerveContext& ctx, const Cochain& phi);
// Is phi a cocycle of the lambda-complex (b phi = 0 and lambda phi = phi)?
bool is_cyclic_cocycle(NerveContext& ctx, const Cochain& phi);

// Solve b psi = phi with psi lambda-invariant at level n-1.  Requires phi
// lambda-invariant (NotLambdaInvariant otherwise); nullopt when phi is not a
// coboundary.  The returned witness satisfies b psi = phi exactly.
std::optional<Cochain> coboundary_witness(NerveContext& ctx, const Cochain& phi);

struct ClassComparison {
  bool equal = false;
  Cochain witness;  // b(witness) = phi1 - phi2 when equal
};

// Do two lambda-invariant cocycles at the same level represent the same
// cyclic cohomology class?  Throws NotACocycle / NotLambdaInvariant on bad
// inputs.
ClassComparison class_equal(NerveContext& ctx, const Cochain& phi1, const Cochain& phi2);

// Explicit preimage under Connes' B: given lambda-invariant phi at level n,
// returns psi at level n+1 with B psi = 2(n+1) phi, built from the
// functional that is 1 on identity basis elements and 0 elsewhere.  Requires
// every identity to be basis-aligned (IdentityNotBasisAligned).  The identity
// B psi = 2(n+1) phi is re-verified before returning (VerificationFailed).
Cochain b0_image_witness(NerveContext& ctx, const Cochain& phi);

// Columns of `candidates` that enlarge the column span of `base`, greedily
// left to right.
std::vector<int> extend_column_span(const SparseMatrix& base, const SparseMatrix& candidates,
                                    ExecMode mode = ExecMode::parallel);

// Apply a cochain-operator matrix to a cochain at the appropriate level.
Cochain apply_op(const SparseMatrix& M, const Cochain& phi, int target_level);

}  // namespace cychom

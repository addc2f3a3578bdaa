#pragma once
#include <random>

#include "cychom/lincat.hpp"

namespace cychom {

// Small concrete categories used as defaults, in documentation, and as seeds
// for randomized property tests.  All are valid presentations by
// construction.

// One object "pt", hom basis {"id"}.
LinCategory point_category();

// One object, basis {"id","x"} with x∘x = 0.
LinCategory dual_numbers_category();

// One object, basis {"e","g"} with g∘g = e, e the identity (group algebra of
// the order-2 group).
LinCategory z2_group_category();

// Objects O1..On; hom(i,j) one-dimensional for i <= j; composites collapse.
LinCategory poset_chain_category(int n);

// Objects O1..On; every hom one-dimensional, u∘u = u (pair groupoid
// linearized).
LinCategory chaotic_category(int n);

// Unitalization of a quiver whose arrows compose to zero.  arrows[k] =
// (src, dst) object indices.
LinCategory truncated_quiver_category(int num_objects,
                                      const std::vector<std::pair<int, int>>& arrows);

// Deterministic mixture of the recipes above (including small tensor
// products); every draw is unital, valid, and has basis-aligned identities.
LinCategory random_category(std::mt19937_64& rng);

}  // namespace cychom

#pragma once
#include <map>
#include <utility>

#include "cychom/omega.hpp"

namespace cychom {

// Element of the graded tensor product of two envelope workspaces, stored as
// exact coefficients on pairs of component symbols.  Zero entries may linger
// after cancellation; consumers skip them.
struct OmegaTensorElem {
  std::map<std::pair<OmegaSymbol, OmegaSymbol>, Scalar> coords;
};

// Arithmetic of the graded tensor product driven by a componentwise tensor
// category: `apply` realizes a tensor-category morphism as a symbol pair,
// `differential` and `compose` carry the graded signs, and `expand` walks a
// nerve tuple as t0 · d(t1) · ... · d(tn).
class OmegaTensorWalk {
 public:
  OmegaTensorWalk(const OmegaContext& left, const OmegaContext& right,
                  const CategoryTensorInfo& info)
      : left_(left), right_(right), info_(info) {}

  OmegaTensorElem apply(int tensor_mor_id) const;
  OmegaTensorElem differential(const OmegaTensorElem& a) const;
  // a · b with b applied first.
  OmegaTensorElem compose(const OmegaTensorElem& a, const OmegaTensorElem& b) const;
  OmegaTensorElem expand(const NerveTuple& t) const;

 private:
  const OmegaContext& left_;
  const OmegaContext& right_;
  const CategoryTensorInfo& info_;
};

}  // namespace cychom

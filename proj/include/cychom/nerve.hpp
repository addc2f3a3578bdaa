#pragma once
#include <functional>
#include <map>
#include <unordered_map>
#include <vector>

#include "cychom/lincat.hpp"

namespace cychom {

// Level-n basis tuple of the cyclic nerve: morphism global ids
// (f^0,...,f^n) with f^0: X1 -> X0, f^i: X_{i+1} -> X_i, f^n: X0 -> Xn.
// Objects are recovered as X_i = dst(f^i).
using NerveTuple = std::vector<int>;

// Complete enumeration of the level-n cyclic-nerve basis, ordered
// lexicographically by (object tuple, then local morphism indices with f^0
// most significant).
class NerveBasis {
 public:
  NerveBasis() = default;
  NerveBasis(const LinCategory& C, int n, long long limit);

  int level() const { return n_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const NerveTuple& tuple(int k) const { return elements_[k]; }
  // Index of a tuple; IndexOutOfRange when it is not a basis element.
  int index_of(const NerveTuple& t) const;
  int object_at(const LinCategory& C, int k, int slot) const;

 private:
  int n_ = -1;
  std::vector<NerveTuple> elements_;
  std::unordered_map<std::string, int> lookup_;
  static std::string key(const NerveTuple& t);
};

// Default per-level basis cap (overridable via CYCHOM_BASIS_LIMIT).
long long default_basis_limit();

// Exact basis count at level n (saturating); what the limit guards.
long long nerve_size_estimate(const LinCategory& C, int n);

// Sparse cochain at one nerve level: coordinates over basis indices.
struct Cochain {
  int n = 0;
  SparseVec coords;
};

// Cyclic-nerve workspace for one category: caches bases and materialized
// operator matrices.  All cochain operators are matrices acting on cochain
// coordinate vectors; an operator O defined by (O phi)(x) = phi(D x) for a
// chain map D has row x equal to the coordinates of D(x).
class NerveContext {
 public:
  explicit NerveContext(const LinCategory& C, long long limit = default_basis_limit(),
                        ExecMode mode = ExecMode::parallel);

  const LinCategory& category() const { return C_; }
  long long limit() const { return limit_; }
  ExecMode mode() const { return mode_; }
  const NerveBasis& basis(int n);

  // Coface delta_i: C^{n-1} -> C^n (dual to composing slots i,i+1; the last
  // one wraps around), 0 <= i <= n.
  const SparseMatrix& delta(int n, int i);
  // Codegeneracy sigma_i: C^{n+1} -> C^n (dual to inserting an identity),
  // 0 <= i <= n.
  const SparseMatrix& sigma(int n, int i);
  // Cyclic rotation tau_n: C^n -> C^n.
  const SparseMatrix& tau(int n);

  // Hochschild coboundary b: C^n -> C^{n+1} and its last-face-free variant.
  SparseMatrix b(int n);
  SparseMatrix b_prime(int n);
  // Signed cyclic operator lambda = (-1)^n tau_n and its averaging sum
  // A = 1 + lambda + ... + lambda^n.
  SparseMatrix lambda(int n);
  SparseMatrix A(int n);
  // Connes operators: B0: C^{n+1} -> C^n and B = A B0.
  SparseMatrix B0(int n);
  SparseMatrix Bop(int n);

  // Chain-side images as sparse combinations of basis indices.
  SparseVec chain_face(int n, int i, int k);        // d_i of level-n tuple k
  SparseVec chain_degeneracy(int n, int i, int k);  // s_i of level-n tuple k
  int chain_rotation(int n, int k);                 // t_n of tuple k (a permutation)

 private:
  LinCategory C_;
  long long limit_;
  ExecMode mode_;
  std::map<int, NerveBasis> bases_;
  std::map<std::pair<int, int>, SparseMatrix> delta_cache_, sigma_cache_;
  std::map<int, SparseMatrix> tau_cache_;

  SparseMatrix assemble(int rows_level, int cols_level,
                        const std::function<SparseVec(int)>& row_of);
};

// Evaluate a cochain against a sparse chain combination at the same level.
Scalar pair_cochain(const Cochain& phi, const SparseVec& chain);

}  // namespace cychom

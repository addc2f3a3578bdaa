#pragma once
#include <optional>
#include <vector>

#include "cychom/sparse.hpp"

namespace cychom {

// Parallel kernels produce results identical to the serial reference; the
// serial path is kept for testing and benchmarking.
enum class ExecMode { serial, parallel };

// Fraction-free row echelon over Q(i): rows are rescaled to primitive
// Gaussian-integer vectors after every update.  Deterministic by
// construction: columns are processed left to right and the pivot within a
// column is the candidate of smallest bit size (ties broken by original row
// order).  An optional trailing block of `aug_cols` columns is carried along
// but never pivoted on (augmented right-hand sides).
class RowEchelon {
 public:
  RowEchelon(const SparseMatrix& A, int aug_cols = 0, ExecMode mode = ExecMode::parallel);

  int rank() const { return static_cast<int>(pivot_cols_.size()); }
  // Pivot columns in ascending order.
  const std::vector<int>& pivot_cols() const { return pivot_cols_; }
  // Non-pivot columns of the main block, ascending.
  std::vector<int> free_cols() const;

  // Kernel of the main block; columns are the basis vectors, one per free
  // column in ascending order, with the free coordinate set to 1.
  SparseMatrix kernel_basis() const;

  // Solve main * x = aug-column k (free variables set to zero); nullopt when
  // inconsistent.
  std::optional<std::vector<Scalar>> solve(int k = 0) const;

 private:
  int main_cols_ = 0, aug_cols_ = 0;
  // Echelon rows in pivot order; each row's leading main-block entry sits at
  // pivot_cols_[i].  Inconsistent remainder rows (support only in the
  // augmented block) are kept separately.
  std::vector<SparseVec> pivot_rows_;
  std::vector<int> pivot_cols_;
  std::vector<SparseVec> aug_only_rows_;
};

int matrix_rank(const SparseMatrix& A, ExecMode mode = ExecMode::parallel);
SparseMatrix kernel_basis(const SparseMatrix& A, ExecMode mode = ExecMode::parallel);
std::optional<std::vector<Scalar>> linear_solve(const SparseMatrix& A, const std::vector<Scalar>& rhs,
                                                ExecMode mode = ExecMode::parallel);
// Solve A * X = B columnwise; nullopt when any column is inconsistent.
std::optional<SparseMatrix> linear_solve_multi(const SparseMatrix& A, const SparseMatrix& B,
                                               ExecMode mode = ExecMode::parallel);

}  // namespace cychom

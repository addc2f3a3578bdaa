#pragma once
#include <utility>
#include <vector>

#include "cychom/scalar.hpp"

namespace cychom {

// Sparse coordinate vector: (index, value) pairs sorted by index, no zeros.
using SparseVec = std::vector<std::pair<int, Scalar>>;

// Sort by index, merge duplicates, drop zeros.
void sv_normalize(SparseVec& v);
SparseVec sv_scaled(const SparseVec& v, const Scalar& c);
// y += c * x; both sides normalized.
void sv_axpy(SparseVec& y, const Scalar& c, const SparseVec& x);
SparseVec sv_add(const SparseVec& a, const SparseVec& b);
SparseVec sv_sub(const SparseVec& a, const SparseVec& b);
Scalar sv_get(const SparseVec& v, int idx);
inline bool sv_is_zero(const SparseVec& v) { return v.empty(); }
SparseVec sv_unit(int idx);  // single entry with value 1

struct Triplet {
  int row, col;
  Scalar value;
};

// Exact sparse matrix, row-major; each row is a normalized SparseVec.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols);
  static SparseMatrix identity(int n);
  // Duplicate triplets are summed; zero results dropped.
  static SparseMatrix from_triplets(int rows, int cols, std::vector<Triplet> ts);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t nnz() const;
  bool is_zero() const;

  const SparseVec& row(int r) const { return data_[r]; }
  void set_row(int r, SparseVec v);  // v is normalized by this call
  Scalar at(int r, int c) const;
  void add_at(int r, int c, const Scalar& v);  // accumulate a single entry

  bool operator==(const SparseMatrix& o) const;
  bool operator!=(const SparseMatrix& o) const { return !(*this == o); }

  SparseMatrix operator+(const SparseMatrix& o) const;
  SparseMatrix operator-(const SparseMatrix& o) const;
  SparseMatrix operator*(const SparseMatrix& o) const;
  SparseMatrix scaled(const Scalar& c) const;
  SparseMatrix transpose() const;

  static SparseMatrix vstack(const SparseMatrix& top, const SparseMatrix& bottom);
  static SparseMatrix hstack(const SparseMatrix& left, const SparseMatrix& right);

  // Matrix-vector products; x over column indices.
  SparseVec apply(const SparseVec& x) const;
  std::vector<Scalar> apply_dense(const std::vector<Scalar>& x) const;

  // Extract a column as a SparseVec over row indices.
  SparseVec col(int c) const;

  template <class F>
  void for_each(F f) const {
    for (int r = 0; r < rows_; ++r)
      for (const auto& [c, v] : data_[r]) f(r, c, v);
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<SparseVec> data_;
  void check_rc(int r, int c) const;
};

}  // namespace cychom

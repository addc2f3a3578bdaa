#include "cychom/linalg.hpp"

#include <algorithm>

namespace cychom {
namespace {

// Rescale a row to a primitive Gaussian-integer vector: clear denominators,
// then divide out the integer content.  Row scaling by a positive rational
// leaves rank/kernel/solve sets unchanged.
void normalize_row(SparseVec& row) {
  if (row.empty()) return;
  mpz_class l(1);
  for (const auto& [c, v] : row) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.re().get_den_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.im().get_den_mpz_t());
  }
  mpz_class g(0);
  std::vector<std::pair<mpz_class, mpz_class>> scaled;
  scaled.reserve(row.size());
  for (const auto& [c, v] : row) {
    mpz_class re = v.re().get_num() * (l / v.re().get_den());
    mpz_class im = v.im().get_num() * (l / v.im().get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), re.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), im.get_mpz_t());
    scaled.emplace_back(std::move(re), std::move(im));
  }
  if (g == 0) g = 1;
  for (std::size_t k = 0; k < row.size(); ++k) {
    row[k].second = Scalar(mpq_class(scaled[k].first / g), mpq_class(scaled[k].second / g));
  }
}

struct WorkRow {
  int orig;
  SparseVec v;  // sorted by column
  int lead() const { return v.empty() ? -1 : v.front().first; }
};

}  // namespace

RowEchelon::RowEchelon(const SparseMatrix& A, int aug_cols, ExecMode mode) {
  aug_cols_ = aug_cols;
  main_cols_ = A.cols() - aug_cols;
  if (main_cols_ < 0) throw DimensionMismatch("augmented block wider than the matrix");

  std::vector<WorkRow> rows;
  rows.reserve(A.rows());
  for (int r = 0; r < A.rows(); ++r) {
    if (A.row(r).empty()) continue;
    WorkRow w{r, A.row(r)};
    normalize_row(w.v);
    rows.push_back(std::move(w));
  }

  // Buckets keyed by leading column; indices into `rows`.
  std::vector<std::vector<int>> bucket(A.cols() + 1);
  for (std::size_t k = 0; k < rows.size(); ++k) bucket[rows[k].lead()].push_back(static_cast<int>(k));

  for (int c = 0; c < main_cols_; ++c) {
    auto& cand = bucket[c];
    if (cand.empty()) continue;
    std::sort(cand.begin(), cand.end(),
              [&](int a, int b) { return rows[a].orig < rows[b].orig; });
    int pivot = cand[0];
    std::size_t best = rows[pivot].v.front().second.bit_size();
    for (int k : cand) {
      std::size_t s = rows[k].v.front().second.bit_size();
      if (s < best) {
        best = s;
        pivot = k;
      }
    }
    const Scalar lead_p = rows[pivot].v.front().second;
    const SparseVec& pv = rows[pivot].v;

    std::vector<int> others;
    others.reserve(cand.size() - 1);
    for (int k : cand)
      if (k != pivot) others.push_back(k);

    // Fraction-free update: row_r <- lead_p * row_r - lead_r * row_p, then
    // renormalized.  Rows are independent, so the loop parallelizes with
    // results identical to the serial reference.
    auto update = [&](int k) {
      WorkRow& w = rows[k];
      Scalar lead_r = w.v.front().second;
      SparseVec nv = sv_scaled(w.v, lead_p);
      sv_axpy(nv, -lead_r, pv);
      normalize_row(nv);
      w.v = std::move(nv);
    };
    if (mode == ExecMode::parallel) {
#pragma omp parallel for schedule(dynamic)
      for (std::size_t idx = 0; idx < others.size(); ++idx) update(others[idx]);
    } else {
      for (int k : others) update(k);
    }

    cand.clear();
    for (int k : others) {
      int l = rows[k].lead();
      if (l >= 0) bucket[l].push_back(k);
    }
    pivot_cols_.push_back(c);
    pivot_rows_.push_back(rows[pivot].v);
  }

  // Whatever is left leads inside the augmented block (if any).
  for (int c = main_cols_; c < static_cast<int>(bucket.size()); ++c)
    for (int k : bucket[c])
      if (!rows[k].v.empty()) aug_only_rows_.push_back(rows[k].v);
}

std::vector<int> RowEchelon::free_cols() const {
  std::vector<int> out;
  std::size_t p = 0;
  for (int c = 0; c < main_cols_; ++c) {
    if (p < pivot_cols_.size() && pivot_cols_[p] == c)
      ++p;
    else
      out.push_back(c);
  }
  return out;
}

SparseMatrix RowEchelon::kernel_basis() const {
  std::vector<int> free = free_cols();
  SparseMatrix out(main_cols_, static_cast<int>(free.size()));
  for (std::size_t fk = 0; fk < free.size(); ++fk) {
    std::vector<Scalar> x(main_cols_, Scalar(0));
    x[free[fk]] = Scalar(1);
    for (std::size_t p = pivot_cols_.size(); p-- > 0;) {
      const SparseVec& row = pivot_rows_[p];
      int pc = pivot_cols_[p];
      Scalar s(0);
      for (const auto& [c, v] : row) {
        if (c <= pc || c >= main_cols_) continue;
        if (!x[c].is_zero()) s += v * x[c];
      }
      x[pc] = -s / row.front().second;
    }
    for (int r = 0; r < main_cols_; ++r)
      if (!x[r].is_zero()) out.add_at(r, static_cast<int>(fk), x[r]);
  }
  return out;
}

std::optional<std::vector<Scalar>> RowEchelon::solve(int k) const {
  if (k < 0 || k >= aug_cols_) throw DimensionMismatch("augmented column index");
  const int bc = main_cols_ + k;
  for (const auto& row : aug_only_rows_)
    if (!sv_get(row, bc).is_zero()) return std::nullopt;
  std::vector<Scalar> x(main_cols_, Scalar(0));
  for (std::size_t p = pivot_cols_.size(); p-- > 0;) {
    const SparseVec& row = pivot_rows_[p];
    int pc = pivot_cols_[p];
    Scalar s = sv_get(row, bc);
    for (const auto& [c, v] : row) {
      if (c <= pc || c >= main_cols_) continue;
      if (!x[c].is_zero()) s -= v * x[c];
    }
    x[pc] = s / row.front().second;
  }
  return x;
}

int matrix_rank(const SparseMatrix& A, ExecMode mode) { return RowEchelon(A, 0, mode).rank(); }

SparseMatrix kernel_basis(const SparseMatrix& A, ExecMode mode) {
  return RowEchelon(A, 0, mode).kernel_basis();
}

std::optional<std::vector<Scalar>> linear_solve(const SparseMatrix& A, const std::vector<Scalar>& rhs,
                                                ExecMode mode) {
  if (static_cast<int>(rhs.size()) != A.rows()) throw DimensionMismatch("right-hand side length");
  SparseMatrix aug(A.rows(), A.cols() + 1);
  for (int r = 0; r < A.rows(); ++r) {
    SparseVec row = A.row(r);
    if (!rhs[r].is_zero()) row.emplace_back(A.cols(), rhs[r]);
    aug.set_row(r, std::move(row));
  }
  return RowEchelon(aug, 1, mode).solve(0);
}

std::optional<SparseMatrix> linear_solve_multi(const SparseMatrix& A, const SparseMatrix& B,
                                               ExecMode mode) {
  if (A.rows() != B.rows()) throw DimensionMismatch("solve_multi row counts");
  SparseMatrix aug(A.rows(), A.cols() + B.cols());
  for (int r = 0; r < A.rows(); ++r) {
    SparseVec row = A.row(r);
    for (const auto& [c, v] : B.row(r)) row.emplace_back(A.cols() + c, v);
    aug.set_row(r, std::move(row));
  }
  RowEchelon ech(aug, B.cols(), mode);
  SparseMatrix X(A.cols(), B.cols());
  for (int k = 0; k < B.cols(); ++k) {
    auto x = ech.solve(k);
    if (!x) return std::nullopt;
    for (int r = 0; r < A.cols(); ++r)
      if (!(*x)[r].is_zero()) X.add_at(r, k, (*x)[r]);
  }
  return X;
}

}  // namespace cychom

#include "cychom/sparse.hpp"

#include <algorithm>

namespace cychom {

void sv_normalize(SparseVec& v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec out;
  out.reserve(v.size());
  for (auto& [idx, val] : v) {
    if (!out.empty() && out.back().first == idx)
      out.back().second += val;
    else
      out.emplace_back(idx, val);
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& p) { return p.second.is_zero(); }),
            out.end());
  v = std::move(out);
}

SparseVec sv_scaled(const SparseVec& v, const Scalar& c) {
  SparseVec out;
  if (c.is_zero()) return out;
  out.reserve(v.size());
  for (const auto& [idx, val] : v) out.emplace_back(idx, val * c);
  return out;
}

void sv_axpy(SparseVec& y, const Scalar& c, const SparseVec& x) {
  if (c.is_zero() || x.empty()) return;
  SparseVec out;
  out.reserve(y.size() + x.size());
  std::size_t a = 0, b = 0;
  while (a < y.size() || b < x.size()) {
    if (b == x.size() || (a < y.size() && y[a].first < x[b].first)) {
      out.push_back(y[a++]);
    } else if (a == y.size() || x[b].first < y[a].first) {
      out.emplace_back(x[b].first, c * x[b].second);
      ++b;
    } else {
      Scalar s = y[a].second + c * x[b].second;
      if (!s.is_zero()) out.emplace_back(y[a].first, s);
      ++a;
      ++b;
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& p) { return p.second.is_zero(); }),
            out.end());
  y = std::move(out);
}

SparseVec sv_add(const SparseVec& a, const SparseVec& b) {
  SparseVec out = a;
  sv_axpy(out, Scalar(1), b);
  return out;
}

SparseVec sv_sub(const SparseVec& a, const SparseVec& b) {
  SparseVec out = a;
  sv_axpy(out, Scalar(-1), b);
  return out;
}

Scalar sv_get(const SparseVec& v, int idx) {
  auto it = std::lower_bound(v.begin(), v.end(), idx,
                             [](const auto& p, int i) { return p.first < i; });
  if (it != v.end() && it->first == idx) return it->second;
  return Scalar(0);
}

SparseVec sv_unit(int idx) { return SparseVec{{idx, Scalar(1)}}; }

SparseMatrix::SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {
  if (rows < 0 || cols < 0) throw DimensionMismatch("negative matrix dimensions");
}

SparseMatrix SparseMatrix::identity(int n) {
  SparseMatrix m(n, n);
  for (int k = 0; k < n; ++k) m.data_[k] = sv_unit(k);
  return m;
}

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, std::vector<Triplet> ts) {
  SparseMatrix m(rows, cols);
  for (auto& t : ts) {
    m.check_rc(t.row, t.col);
    m.data_[t.row].emplace_back(t.col, std::move(t.value));
  }
  for (auto& r : m.data_) sv_normalize(r);
  return m;
}

void SparseMatrix::check_rc(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw DimensionMismatch("entry (" + std::to_string(r) + "," + std::to_string(c) +
                            ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
}

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

bool SparseMatrix::is_zero() const { return nnz() == 0; }

void SparseMatrix::set_row(int r, SparseVec v) {
  if (r < 0 || r >= rows_) throw DimensionMismatch("row index " + std::to_string(r));
  sv_normalize(v);
  if (!v.empty() && (v.back().first >= cols_ || v.front().first < 0))
    throw DimensionMismatch("row entries outside column range");
  data_[r] = std::move(v);
}

Scalar SparseMatrix::at(int r, int c) const {
  check_rc(r, c);
  return sv_get(data_[r], c);
}

void SparseMatrix::add_at(int r, int c, const Scalar& v) {
  check_rc(r, c);
  if (v.is_zero()) return;
  auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& p, int i) { return p.first < i; });
  if (it != row.end() && it->first == c) {
    it->second += v;
    if (it->second.is_zero()) row.erase(it);
  } else {
    row.insert(it, {c, v});
  }
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix addition");
  SparseMatrix out = *this;
  for (int r = 0; r < rows_; ++r) sv_axpy(out.data_[r], Scalar(1), o.data_[r]);
  return out;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix subtraction");
  SparseMatrix out = *this;
  for (int r = 0; r < rows_; ++r) sv_axpy(out.data_[r], Scalar(-1), o.data_[r]);
  return out;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
  if (cols_ != o.rows_) throw DimensionMismatch("matrix product");
  SparseMatrix out(rows_, o.cols_);
  for (int r = 0; r < rows_; ++r) {
    SparseVec acc;
    for (const auto& [k, v] : data_[r]) sv_axpy(acc, v, o.data_[k]);
    out.data_[r] = std::move(acc);
  }
  return out;
}

SparseMatrix SparseMatrix::scaled(const Scalar& c) const {
  SparseMatrix out(rows_, cols_);
  if (c.is_zero()) return out;
  for (int r = 0; r < rows_; ++r) out.data_[r] = sv_scaled(data_[r], c);
  return out;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Triplet> ts;
  ts.reserve(nnz());
  for_each([&](int r, int c, const Scalar& v) { ts.push_back({c, r, v}); });
  return from_triplets(cols_, rows_, std::move(ts));
}

SparseMatrix SparseMatrix::vstack(const SparseMatrix& top, const SparseMatrix& bottom) {
  if (top.cols_ != bottom.cols_) throw DimensionMismatch("vstack");
  SparseMatrix out(top.rows_ + bottom.rows_, top.cols_);
  for (int r = 0; r < top.rows_; ++r) out.data_[r] = top.data_[r];
  for (int r = 0; r < bottom.rows_; ++r) out.data_[top.rows_ + r] = bottom.data_[r];
  return out;
}

SparseMatrix SparseMatrix::hstack(const SparseMatrix& left, const SparseMatrix& right) {
  if (left.rows_ != right.rows_) throw DimensionMismatch("hstack");
  SparseMatrix out(left.rows_, left.cols_ + right.cols_);
  for (int r = 0; r < left.rows_; ++r) {
    SparseVec row = left.data_[r];
    for (const auto& [c, v] : right.data_[r]) row.emplace_back(left.cols_ + c, v);
    out.data_[r] = std::move(row);
  }
  return out;
}

SparseVec SparseMatrix::apply(const SparseVec& x) const {
  if (!x.empty() && x.back().first >= cols_) throw DimensionMismatch("matrix-vector product");
  SparseVec y;
  for (int r = 0; r < rows_; ++r) {
    Scalar s(0);
    const auto& row = data_[r];
    std::size_t a = 0, b = 0;
    while (a < row.size() && b < x.size()) {
      if (row[a].first < x[b].first)
        ++a;
      else if (x[b].first < row[a].first)
        ++b;
      else {
        s += row[a].second * x[b].second;
        ++a;
        ++b;
      }
    }
    if (!s.is_zero()) y.emplace_back(r, s);
  }
  return y;
}

std::vector<Scalar> SparseMatrix::apply_dense(const std::vector<Scalar>& x) const {
  if (static_cast<int>(x.size()) != cols_) throw DimensionMismatch("matrix-vector product");
  std::vector<Scalar> y(rows_, Scalar(0));
  for (int r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r]) y[r] += v * x[c];
  return y;
}

SparseVec SparseMatrix::col(int c) const {
  if (c < 0 || c >= cols_) throw DimensionMismatch("column index " + std::to_string(c));
  SparseVec out;
  for (int r = 0; r < rows_; ++r) {
    Scalar v = sv_get(data_[r], c);
    if (!v.is_zero()) out.emplace_back(r, v);
  }
  return out;
}

}  // namespace cychom

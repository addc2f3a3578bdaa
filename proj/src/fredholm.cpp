#include "cychom/fredholm.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>

#include "cychom/builtin.hpp"

namespace cychom {
namespace {

std::string mor_label(const LinCategory& C, int f) { return "'" + C.mor(f).name + "'"; }
std::string obj_label(const LinCategory& C, int x) { return "'" + C.object_name(x) + "'"; }

// Dense square block, row-major.
using Dense = std::vector<std::vector<Scalar>>;

Dense dense_identity(int n) {
  Dense I(n, std::vector<Scalar>(n, Scalar(0)));
  for (int k = 0; k < n; ++k) I[k][k] = Scalar(1);
  return I;
}

Dense dense_mul(const Dense& A, const Dense& B) {
  const int n = static_cast<int>(A.size());
  const int m = static_cast<int>(B.empty() ? 0 : B.front().size());
  const int k = static_cast<int>(B.size());
  Dense R(n, std::vector<Scalar>(m, Scalar(0)));
  for (int r = 0; r < n; ++r)
    for (int t = 0; t < k; ++t) {
      if (A[r][t].is_zero()) continue;
      for (int c = 0; c < m; ++c) R[r][c] += A[r][t] * B[t][c];
    }
  return R;
}

SparseMatrix dense_to_sparse(const Dense& A) {
  const int n = static_cast<int>(A.size());
  const int m = n == 0 ? 0 : static_cast<int>(A.front().size());
  SparseMatrix M(n, m);
  for (int r = 0; r < n; ++r) {
    SparseVec row;
    for (int c = 0; c < m; ++c)
      if (!A[r][c].is_zero()) row.emplace_back(c, A[r][c]);
    M.set_row(r, std::move(row));
  }
  return M;
}

// Two-sided inverse of a square dense block, if any.
std::optional<Dense> dense_inverse(const Dense& A) {
  const int n = static_cast<int>(A.size());
  auto X = linear_solve_multi(dense_to_sparse(A), SparseMatrix::identity(n), ExecMode::serial);
  if (!X) return std::nullopt;
  Dense R(n, std::vector<Scalar>(n, Scalar(0)));
  X->for_each([&](int r, int c, const Scalar& v) { R[r][c] = v; });
  return R;
}

int dense_cols(const Dense& A) { return A.empty() ? 0 : static_cast<int>(A.front().size()); }

BlockMatrix block_diag(const Dense& even, const Dense& odd) {
  const int re = static_cast<int>(even.size()), ce = dense_cols(even);
  const int ro = static_cast<int>(odd.size()), co = dense_cols(odd);
  BlockMatrix M(re, ro, ce, co);
  for (int r = 0; r < re; ++r)
    for (int c = 0; c < ce; ++c) M.at(r, c) = even[r][c];
  for (int r = 0; r < ro; ++r)
    for (int c = 0; c < co; ++c) M.at(re + r, ce + c) = odd[r][c];
  return M;
}

// Odd matrix from its even<-odd and odd<-even blocks.
BlockMatrix block_off_diag(const Dense& eo, const Dense& oe) {
  const int re = static_cast<int>(eo.size()), co = dense_cols(eo);
  const int ro = static_cast<int>(oe.size()), ce = dense_cols(oe);
  BlockMatrix M(re, ro, ce, co);
  for (int r = 0; r < re; ++r)
    for (int c = 0; c < co; ++c) M.at(r, ce + c) = eo[r][c];
  for (int r = 0; r < ro; ++r)
    for (int c = 0; c < ce; ++c) M.at(re + r, c) = oe[r][c];
  return M;
}

// Basis bookkeeping for R(x) = (+)_w hom(w, x): global ids with target x in
// global order; pos[f] = slot of f inside R(dst f).
struct RegularRep {
  std::vector<std::vector<int>> basis;
  std::vector<int> pos;
  explicit RegularRep(const LinCategory& C) {
    basis.resize(C.num_objects());
    pos.assign(C.num_morphisms(), -1);
    for (int f = 0; f < C.num_morphisms(); ++f) {
      pos[f] = static_cast<int>(basis[C.mor(f).dst].size());
      basis[C.mor(f).dst].push_back(f);
    }
  }
  // Postcomposition by basis morphism f as a matrix R(src f) -> R(dst f).
  Dense matrix(const LinCategory& C, int f) const {
    const int x = C.mor(f).src, y = C.mor(f).dst;
    Dense M(basis[y].size(), std::vector<Scalar>(basis[x].size(), Scalar(0)));
    for (std::size_t j = 0; j < basis[x].size(); ++j) {
      const int g = basis[x][j];
      const int w = C.mor(g).src;
      for (const auto& [l, c] : C.compose_basis(f, g)) M[pos[C.hom(w, y)[l]]][j] += c;
    }
    return M;
  }
};

const Scalar kHalf(mpq_class(1, 2));

// Random invertible dense block: lower unitriangular * diagonal * upper
// unitriangular with small exact entries.
Dense random_invertible(int n, std::mt19937_64& rng) {
  const Scalar pool[] = {Scalar(0), Scalar(0), Scalar(1),
                         Scalar(-1), Scalar::i(), Scalar(mpq_class(1, 2))};
  const Scalar diag_pool[] = {Scalar(1), Scalar(-1), Scalar(2), Scalar(mpq_class(1, 2)),
                              Scalar::i()};
  std::uniform_int_distribution<int> off(0, 5), dg(0, 4);
  Dense L = dense_identity(n), U = dense_identity(n), D = dense_identity(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      if (r > c) L[r][c] = pool[off(rng)];
      if (r < c) U[r][c] = pool[off(rng)];
    }
  for (int k = 0; k < n; ++k) D[k][k] = diag_pool[dg(rng)];
  return dense_mul(dense_mul(L, D), U);
}

}  // namespace

// --- BlockMatrix -----------------------------------------------------------

BlockMatrix::BlockMatrix(int rows_even, int rows_odd, int cols_even, int cols_odd)
    : re_(rows_even), ro_(rows_odd), ce_(cols_even), co_(cols_odd) {
  if (re_ < 0 || ro_ < 0 || ce_ < 0 || co_ < 0)
    throw DimensionMismatch("negative graded dimension");
  data_.assign(static_cast<std::size_t>(rows()) * cols(), Scalar(0));
}

BlockMatrix BlockMatrix::identity(int even, int odd) {
  BlockMatrix M(even, odd, even, odd);
  for (int k = 0; k < M.rows(); ++k) M.at(k, k) = Scalar(1);
  return M;
}

Scalar& BlockMatrix::at(int r, int c) {
  if (r < 0 || r >= rows() || c < 0 || c >= cols()) throw IndexOutOfRange("block matrix entry");
  return data_[static_cast<std::size_t>(r) * cols() + c];
}

const Scalar& BlockMatrix::at(int r, int c) const {
  if (r < 0 || r >= rows() || c < 0 || c >= cols()) throw IndexOutOfRange("block matrix entry");
  return data_[static_cast<std::size_t>(r) * cols() + c];
}

void BlockMatrix::check_same_shape(const BlockMatrix& o) const {
  if (re_ != o.re_ || ro_ != o.ro_ || ce_ != o.ce_ || co_ != o.co_)
    throw DimensionMismatch("graded shapes differ");
}

bool BlockMatrix::operator==(const BlockMatrix& o) const {
  return re_ == o.re_ && ro_ == o.ro_ && ce_ == o.ce_ && co_ == o.co_ && data_ == o.data_;
}

BlockMatrix BlockMatrix::operator+(const BlockMatrix& o) const {
  check_same_shape(o);
  BlockMatrix R = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) R.data_[k] += o.data_[k];
  return R;
}

BlockMatrix BlockMatrix::operator-(const BlockMatrix& o) const {
  check_same_shape(o);
  BlockMatrix R = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) R.data_[k] -= o.data_[k];
  return R;
}

BlockMatrix BlockMatrix::operator*(const BlockMatrix& o) const {
  if (ce_ != o.re_ || co_ != o.ro_)
    throw DimensionMismatch("graded composition shapes differ");
  BlockMatrix R(re_, ro_, o.ce_, o.co_);
  for (int r = 0; r < rows(); ++r)
    for (int t = 0; t < cols(); ++t) {
      const Scalar& a = at(r, t);
      if (a.is_zero()) continue;
      for (int c = 0; c < o.cols(); ++c) R.at(r, c) += a * o.at(t, c);
    }
  return R;
}

BlockMatrix BlockMatrix::scaled(const Scalar& c) const {
  BlockMatrix R = *this;
  for (auto& v : R.data_) v = v * c;
  return R;
}

bool BlockMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& v) { return v.is_zero(); });
}

bool BlockMatrix::is_even() const {
  for (int r = 0; r < rows(); ++r)
    for (int c = 0; c < cols(); ++c)
      if ((r < re_) != (c < ce_) && !at(r, c).is_zero()) return false;
  return true;
}

bool BlockMatrix::is_odd() const {
  for (int r = 0; r < rows(); ++r)
    for (int c = 0; c < cols(); ++c)
      if ((r < re_) == (c < ce_) && !at(r, c).is_zero()) return false;
  return true;
}

Scalar BlockMatrix::trace() const {
  if (re_ != ce_ || ro_ != co_) throw DimensionMismatch("trace of a non-square graded matrix");
  Scalar t(0);
  for (int k = 0; k < rows(); ++k) t += at(k, k);
  return t;
}

BlockMatrix BlockMatrix::eps_left() const {
  BlockMatrix R = *this;
  for (int r = re_; r < rows(); ++r)
    for (int c = 0; c < cols(); ++c) R.at(r, c) = -R.at(r, c);
  return R;
}

// --- representation and validation ----------------------------------------

BlockMatrix rep_action(const GradedRep& rep, int x, int y, const SparseVec& coords) {
  BlockMatrix M(rep.dims[y].first, rep.dims[y].second, rep.dims[x].first, rep.dims[x].second);
  const std::vector<int>& hom = rep.category.hom(x, y);
  for (const auto& [l, c] : coords) M = M + rep.action[hom[l]].scaled(c);
  return M;
}

FredholmReport validate_fredholm(const FredholmModule& FM) {
  FredholmReport report;
  const LinCategory& C = FM.rep.category;
  const int nobj = C.num_objects(), nmor = C.num_morphisms();
  if (static_cast<int>(FM.rep.dims.size()) != nobj ||
      static_cast<int>(FM.rep.action.size()) != nmor ||
      static_cast<int>(FM.F.size()) != nobj) {
    report.fail("dims/action/F tables do not match the object and morphism counts");
    return report;
  }
  if (C.is_semicategory())
    report.fail("category has no identities; representations must be genuine functors");

  bool shapes_ok = true;
  for (int f = 0; f < nmor; ++f) {
    const MorInfo& m = C.mor(f);
    const BlockMatrix& M = FM.rep.action[f];
    if (M.rows_even() != FM.rep.dims[m.dst].first || M.rows_odd() != FM.rep.dims[m.dst].second ||
        M.cols_even() != FM.rep.dims[m.src].first || M.cols_odd() != FM.rep.dims[m.src].second) {
      report.fail("action of " + mor_label(C, f) + " has the wrong graded shape");
      shapes_ok = false;
    } else if (!M.is_even()) {
      report.fail("action of " + mor_label(C, f) + " is not degree 0");
    }
  }
  for (int x = 0; x < nobj; ++x) {
    const auto [e, o] = FM.rep.dims[x];
    const BlockMatrix& Fx = FM.F[x];
    if (Fx.rows_even() != e || Fx.rows_odd() != o || Fx.cols_even() != e || Fx.cols_odd() != o) {
      report.fail("F at " + obj_label(C, x) + " has the wrong graded shape");
      continue;
    }
    if (!Fx.is_odd()) report.fail("F at " + obj_label(C, x) + " is not odd");
    if (Fx * Fx != BlockMatrix::identity(e, o))
      report.fail("F at " + obj_label(C, x) + " does not square to the identity");
  }
  if (!shapes_ok) return report;

  if (!C.is_semicategory())
    for (int x = 0; x < nobj; ++x) {
      const auto [e, o] = FM.rep.dims[x];
      if (rep_action(FM.rep, x, x, C.identity_coords(x)) != BlockMatrix::identity(e, o))
        report.fail("identity at " + obj_label(C, x) + " does not act as the identity");
    }
  for (int g = 0; g < nmor; ++g)
    for (int f = 0; f < nmor; ++f) {
      if (C.mor(f).dst != C.mor(g).src) continue;
      const BlockMatrix lhs = rep_action(FM.rep, C.mor(f).src, C.mor(g).dst,
                                         C.compose_basis(g, f));
      if (lhs != FM.rep.action[g] * FM.rep.action[f])
        report.fail("action breaks composition at " + mor_label(C, g) + " after " +
                    mor_label(C, f));
    }
  return report;
}

// --- commutator, supertrace, Chern character -------------------------------

BlockMatrix graded_commutator(const FredholmModule& FM, int src, int dst, const BlockMatrix& T) {
  const auto [se, so] = FM.rep.dims[src];
  const auto [de, dobj] = FM.rep.dims[dst];
  if (T.cols_even() != se || T.cols_odd() != so || T.rows_even() != de || T.rows_odd() != dobj)
    throw DimensionMismatch("operator shape does not match the graded spaces");
  const bool even = T.is_even(), odd = T.is_odd();
  if (!even && !odd) throw NotHomogeneous();
  const BlockMatrix left = FM.F[dst] * T, right = T * FM.F[src];
  return even ? left - right : left + right;
}

Scalar supertrace(const FredholmModule& FM, int x, const BlockMatrix& T) {
  const auto [e, o] = FM.rep.dims[x];
  if (T.rows_even() != e || T.rows_odd() != o || T.cols_even() != e || T.cols_odd() != o)
    throw DimensionMismatch("supertrace needs an endomorphism at one object");
  return ((FM.F[x] * graded_commutator(FM, x, x, T)).eps_left().trace()) * kHalf;
}

Cochain chern_character(NerveContext& nctx, const FredholmModule& FM, int m) {
  if (m < 0) throw IndexOutOfRange("chern character level");
  const LinCategory& C = FM.rep.category;
  const int n = 2 * m;
  const NerveBasis& basis = nctx.basis(n);
  std::vector<Scalar> values(basis.size(), Scalar(0));
  auto value_of = [&](int k) {
    const NerveTuple& t = basis.tuple(k);
    BlockMatrix acc = FM.rep.action[t[0]];
    for (std::size_t s = 1; s < t.size(); ++s) {
      const MorInfo& mi = C.mor(t[s]);
      acc = acc * graded_commutator(FM, mi.src, mi.dst, FM.rep.action[t[s]]);
    }
    return supertrace(FM, C.mor(t[0]).dst, acc);
  };
  if (nctx.mode() == ExecMode::parallel) {
    // Exceptions may not escape the parallel region; capture and rethrow.
    std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic, 16)
    for (int k = 0; k < basis.size(); ++k) {
      try {
        values[k] = value_of(k);
      } catch (...) {
#pragma omp critical
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
  } else {
    for (int k = 0; k < basis.size(); ++k) values[k] = value_of(k);
  }
  SparseVec coords;
  for (int k = 0; k < basis.size(); ++k)
    if (!values[k].is_zero()) coords.emplace_back(k, values[k]);
  Cochain phi{n, std::move(coords)};
  if (!is_cyclic_cocycle(nctx, phi))
    throw VerificationFailed("chern character is not a cyclic cocycle");
  return phi;
}

SchattenReport schatten_diagnostic(const FredholmModule& FM, int f, double p) {
  const MorInfo& m = FM.rep.category.mor(f);
  const BlockMatrix& T = FM.rep.action[f];
  // Degree-0 commutator form; the diagnostic never feeds exact pipelines.
  const BlockMatrix K = FM.F[m.dst] * T - T * FM.F[m.src];
  Eigen::MatrixXcd A(K.rows(), K.cols());
  for (int r = 0; r < K.rows(); ++r)
    for (int c = 0; c < K.cols(); ++c)
      A(r, c) = std::complex<double>(K.at(r, c).re().get_d(), K.at(r, c).im().get_d());
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  SchattenReport rep;
  rep.p = p;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
    rep.singular_values.push_back(svd.singularValues()(k));
  double sum = 0.0;
  for (double s : rep.singular_values) sum += std::pow(s, p);
  rep.norm = sum == 0.0 ? 0.0 : std::pow(sum, 1.0 / p);
  return rep;
}

// --- realization of the graded envelope ------------------------------------

RealizedElement FredholmRealization::apply(int mor_id) const {
  const MorInfo& m = FM->rep.category.mor(mor_id);
  return {m.src, m.dst, 0, FM->rep.action[mor_id]};
}

RealizedElement FredholmRealization::differential(const RealizedElement& T) const {
  return {T.src, T.dst, T.degree + 1, graded_commutator(*FM, T.src, T.dst, T.M)};
}

RealizedElement FredholmRealization::compose(const RealizedElement& a,
                                             const RealizedElement& b) const {
  if (a.src != b.dst) throw NotComposable("realized elements have mismatched endpoints");
  return {b.src, a.dst, a.degree + b.degree, a.M * b.M};
}

Scalar FredholmRealization::trace(const RealizedElement& T) const {
  if (T.src != T.dst) throw DimensionMismatch("trace of a non-endomorphism realization");
  return supertrace(*FM, T.src, T.M);
}

RealizedElement FredholmRealization::realize(const OmegaSymbol& s) const {
  RealizedElement acc;
  if (s.lead == kUnitLead) {
    if (s.tail.empty()) throw NotComposable("degree-0 symbols cannot have a unit lead");
    const int x1 = FM->rep.category.mor(s.tail.front()).dst;
    acc = {x1, x1, 0, BlockMatrix::identity(FM->rep.dims[x1].first, FM->rep.dims[x1].second)};
  } else {
    acc = apply(s.lead);
  }
  for (int t : s.tail) acc = compose(acc, differential(apply(t)));
  return acc;
}

RealizedElement FredholmRealization::realize(const OmegaElement& w) const {
  RealizedElement acc{w.src, w.dst, w.degree,
                      BlockMatrix(FM->rep.dims[w.dst].first, FM->rep.dims[w.dst].second,
                                  FM->rep.dims[w.src].first, FM->rep.dims[w.src].second)};
  for (const auto& [s, c] : w.coords) acc.M = acc.M + realize(s).M.scaled(c);
  return acc;
}

FredholmRealization omega_realization(const FredholmModule& FM) { return {&FM}; }

// --- stock modules ----------------------------------------------------------

FredholmModule regular_swap_module(const LinCategory& C) {
  RegularRep R(C);
  FredholmModule FM;
  FM.rep.category = C;
  for (int x = 0; x < C.num_objects(); ++x) {
    const int d = static_cast<int>(R.basis[x].size());
    FM.rep.dims.emplace_back(d, d);
    FM.F.push_back(block_off_diag(dense_identity(d), dense_identity(d)));
  }
  for (int f = 0; f < C.num_morphisms(); ++f) {
    Dense M = R.matrix(C, f);
    FM.rep.action.push_back(block_diag(M, M));
  }
  return FM;
}

FredholmModule random_regular_module(const LinCategory& C, std::mt19937_64& rng) {
  FredholmModule FM = regular_swap_module(C);
  for (int x = 0; x < C.num_objects(); ++x) {
    const int d = FM.rep.dims[x].first;
    Dense Q = random_invertible(d, rng);
    FM.F[x] = block_off_diag(Q, *dense_inverse(Q));
  }
  return FM;
}

FredholmModule conjugated_pair_module(const LinCategory& C, std::mt19937_64& rng) {
  RegularRep R(C);
  FredholmModule FM;
  FM.rep.category = C;
  std::vector<Dense> P, Pinv;
  for (int x = 0; x < C.num_objects(); ++x) {
    const int d = static_cast<int>(R.basis[x].size());
    FM.rep.dims.emplace_back(d, d);
    FM.F.push_back(block_off_diag(dense_identity(d), dense_identity(d)));
    P.push_back(random_invertible(d, rng));
    Pinv.push_back(*dense_inverse(P.back()));
  }
  for (int f = 0; f < C.num_morphisms(); ++f) {
    const MorInfo& m = C.mor(f);
    Dense M = R.matrix(C, f);
    FM.rep.action.push_back(block_diag(M, dense_mul(dense_mul(P[m.dst], M), Pinv[m.src])));
  }
  return FM;
}

FredholmModule conjugate_module(const FredholmModule& FM, const std::vector<BlockMatrix>& T) {
  const LinCategory& C = FM.rep.category;
  std::vector<BlockMatrix> Tinv;
  for (int x = 0; x < C.num_objects(); ++x) {
    const auto [e, o] = FM.rep.dims[x];
    Dense even(e, std::vector<Scalar>(e)), odd(o, std::vector<Scalar>(o));
    for (int r = 0; r < e; ++r)
      for (int c = 0; c < e; ++c) even[r][c] = T[x].at(r, c);
    for (int r = 0; r < o; ++r)
      for (int c = 0; c < o; ++c) odd[r][c] = T[x].at(e + r, e + c);
    auto ei = dense_inverse(even), oi = dense_inverse(odd);
    if (!T[x].is_even() || !ei || !oi) throw NotInvertible(C.object_name(x));
    Tinv.push_back(block_diag(*ei, *oi));
  }
  FredholmModule R = FM;
  for (int f = 0; f < C.num_morphisms(); ++f) {
    const MorInfo& m = C.mor(f);
    R.rep.action[f] = T[m.dst] * FM.rep.action[f] * Tinv[m.src];
  }
  for (int x = 0; x < C.num_objects(); ++x) R.F[x] = T[x] * FM.F[x] * Tinv[x];
  return R;
}

std::vector<BlockMatrix> random_even_conjugators(const FredholmModule& FM,
                                                 std::mt19937_64& rng) {
  std::vector<BlockMatrix> T;
  for (const auto& [e, o] : FM.rep.dims)
    T.push_back(block_diag(random_invertible(e, rng), random_invertible(o, rng)));
  return T;
}

FredholmModule random_fredholm_module(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick_cat(0, 4), pick_kind(0, 2), coin(0, 1);
  LinCategory C;
  switch (pick_cat(rng)) {
    case 0: C = point_category(); break;
    case 1: C = dual_numbers_category(); break;
    case 2: C = z2_group_category(); break;
    case 3: C = poset_chain_category(2); break;
    default: C = chaotic_category(2); break;
  }
  FredholmModule FM;
  switch (pick_kind(rng)) {
    case 0: FM = regular_swap_module(C); break;
    case 1: FM = random_regular_module(C, rng); break;
    default: FM = conjugated_pair_module(C, rng); break;
  }
  if (coin(rng)) FM = conjugate_module(FM, random_even_conjugators(FM, rng));
  return FM;
}

}  // namespace cychom

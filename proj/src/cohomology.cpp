#include "cychom/cohomology.hpp"

namespace cychom {

namespace {

SparseMatrix one_minus_lambda(NerveContext& ctx, int n) {
  return SparseMatrix::identity(ctx.basis(n).size()) - ctx.lambda(n);
}

// Dense coordinate vector of a cochain.
std::vector<Scalar> dense_coords(const Cochain& phi, int dim) {
  std::vector<Scalar> v(dim, Scalar(0));
  for (const auto& [k, c] : phi.coords) v[k] = c;
  return v;
}

Cochain from_dense(int n, const std::vector<Scalar>& v) {
  Cochain out{n, {}};
  for (int k = 0; k < static_cast<int>(v.size()); ++k)
    if (!v[k].is_zero()) out.coords.emplace_back(k, v[k]);
  return out;
}

CohomologyReport finish_report(NerveContext& ctx, int n, const SparseMatrix& cocycle_basis,
                               const SparseMatrix& coboundary_image) {
  CohomologyReport rep;
  rep.n = n;
  rep.dim_cocycles = cocycle_basis.cols();
  rep.dim_coboundaries = matrix_rank(coboundary_image, ctx.mode());
  rep.dim_cohomology = rep.dim_cocycles - rep.dim_coboundaries;
  if (n >= 1)
    rep.differential_squares_to_zero = (ctx.b(n) * ctx.b(n - 1)).is_zero();
  for (int j : extend_column_span(coboundary_image, cocycle_basis, ctx.mode())) {
    Cochain c{n, cocycle_basis.col(j)};
    rep.representatives.push_back(std::move(c));
  }
  if (static_cast<int>(rep.representatives.size()) != rep.dim_cohomology)
    throw VerificationFailed("representative count disagrees with dimension count");
  return rep;
}

}  // namespace

std::vector<int> extend_column_span(const SparseMatrix& base, const SparseMatrix& candidates,
                                    ExecMode mode) {
  std::vector<int> chosen;
  SparseMatrix W = base;
  int r = matrix_rank(W, mode);
  for (int j = 0; j < candidates.cols(); ++j) {
    SparseMatrix col(candidates.rows(), 1);
    for (const auto& [row, v] : candidates.col(j)) col.add_at(row, 0, v);
    SparseMatrix Wj = SparseMatrix::hstack(W, col);
    int rj = matrix_rank(Wj, mode);
    if (rj > r) {
      chosen.push_back(j);
      W = std::move(Wj);
      r = rj;
    }
  }
  return chosen;
}

Cochain apply_op(const SparseMatrix& M, const Cochain& phi, int target_level) {
  // Operator matrices act on cochain coordinate vectors directly.
  Cochain out{target_level, M.apply(phi.coords)};
  return out;
}

CohomologyReport cyclic_cohomology(NerveContext& ctx, int n) {
  if (n < 0) throw IndexOutOfRange("cohomology level");
  SparseMatrix constraints = SparseMatrix::vstack(ctx.b(n), one_minus_lambda(ctx, n));
  SparseMatrix Z = kernel_basis(constraints, ctx.mode());
  SparseMatrix image(ctx.basis(n).size(), 0);
  if (n >= 1) {
    SparseMatrix K = kernel_basis(one_minus_lambda(ctx, n - 1), ctx.mode());
    image = ctx.b(n - 1) * K;
  }
  return finish_report(ctx, n, Z, image);
}

CohomologyReport hochschild_cohomology(NerveContext& ctx, int n) {
  if (n < 0) throw IndexOutOfRange("cohomology level");
  SparseMatrix Z = kernel_basis(ctx.b(n), ctx.mode());
  SparseMatrix image(ctx.basis(n).size(), 0);
  if (n >= 1) image = ctx.b(n - 1);
  return finish_report(ctx, n, Z, image);
}

bool is_lambda_invariant(NerveContext& ctx, const Cochain& phi) {
  Cochain moved = apply_op(ctx.lambda(phi.n), phi, phi.n);
  return moved.coords == phi.coords;
}

bool is_cyclic_cocycle(NerveContext& ctx, const Cochain& phi) {
  if (!is_lambda_invariant(ctx, phi)) return false;
  return apply_op(ctx.b(phi.n), phi, phi.n + 1).coords.empty();
}

std::optional<Cochain> coboundary_witness(NerveContext& ctx, const Cochain& phi) {
  const int n = phi.n;
  if (!is_lambda_invariant(ctx, phi)) throw NotLambdaInvariant();
  if (n == 0) {
    if (phi.coords.empty()) return Cochain{0, {}};
    return std::nullopt;
  }
  SparseMatrix K = kernel_basis(one_minus_lambda(ctx, n - 1), ctx.mode());
  SparseMatrix M = ctx.b(n - 1) * K;
  auto y = linear_solve(M, dense_coords(phi, ctx.basis(n).size()), ctx.mode());
  if (!y) return std::nullopt;
  Cochain psi = from_dense(n - 1, K.apply_dense(*y));
  Cochain check = apply_op(ctx.b(n - 1), psi, n);
  if (check.coords != phi.coords) throw VerificationFailed("coboundary witness does not reproduce the input");
  return psi;
}

ClassComparison class_equal(NerveContext& ctx, const Cochain& phi1, const Cochain& phi2) {
  if (phi1.n != phi2.n) throw DimensionMismatch("cochain levels differ");
  if (!is_cyclic_cocycle(ctx, phi1)) throw NotACocycle("first argument");
  if (!is_cyclic_cocycle(ctx, phi2)) throw NotACocycle("second argument");
  Cochain diff{phi1.n, sv_sub(phi1.coords, phi2.coords)};
  auto w = coboundary_witness(ctx, diff);
  ClassComparison out;
  out.equal = w.has_value();
  if (w) out.witness = std::move(*w);
  return out;
}

Cochain b0_image_witness(NerveContext& ctx, const Cochain& phi) {
  const LinCategory& C = ctx.category();
  const int n = phi.n;
  if (C.is_semicategory()) throw SemicategoryHasNoIdentities();
  if (!is_lambda_invariant(ctx, phi)) throw NotLambdaInvariant();
  // The eta functional: 1 on each identity basis element, 0 elsewhere.
  std::vector<int> id_elem(C.num_objects());
  for (int x = 0; x < C.num_objects(); ++x) id_elem[x] = C.identity_elem(x);
  auto eta = [&](int f) {
    const MorInfo& m = C.mor(f);
    return m.src == m.dst && id_elem[m.src] == f;
  };

  const NerveBasis& Bn1 = ctx.basis(n + 1);
  const NerveBasis& Bn = ctx.basis(n);
  const Scalar sn = (n % 2 == 0) ? Scalar(1) : Scalar(-1);
  Cochain psi{n + 1, {}};
  for (int k = 0; k < Bn1.size(); ++k) {
    const NerveTuple& t = Bn1.tuple(k);
    const bool head = eta(t.front());
    const bool tail = eta(t.back());
    if (!head && !tail) continue;
    Scalar val(0);
    if (head) {
      NerveTuple u(t.begin() + 1, t.end());
      val += sv_get(phi.coords, Bn.index_of(u));
    }
    if (tail) {
      NerveTuple u(t.begin(), t.end() - 1);
      val += sn * sv_get(phi.coords, Bn.index_of(u));
      if (head) {
        NerveTuple v;
        v.reserve(t.size() - 1);
        v.push_back(id_elem[C.mor(t[1]).dst]);  // identity at X_1
        v.insert(v.end(), t.begin() + 1, t.end() - 1);
        val -= sn * sv_get(phi.coords, Bn.index_of(v));
      }
    }
    if (!val.is_zero()) psi.coords.emplace_back(k, val);
  }
  sv_normalize(psi.coords);

  Cochain reproduced = apply_op(ctx.Bop(n), psi, n);
  SparseVec expect = sv_scaled(phi.coords, Scalar(2 * (n + 1)));
  if (reproduced.coords != expect)
    throw VerificationFailed("B psi != 2(n+1) phi for the constructed witness");
  return psi;
}

}  // namespace cychom

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cychom/builtin.hpp"
#include "cychom/nerve.hpp"

using namespace cychom;

namespace {

bool is_zero_map(const SparseMatrix& M) { return M.is_zero(); }

// All cocyclic-module identities as exact matrix equations around level n.
void check_cocyclic_identities(NerveContext& ctx, int n) {
  // coface-coface
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n + 1; ++j)
      CHECK(ctx.delta(n + 1, j) * ctx.delta(n, i) == ctx.delta(n + 1, i) * ctx.delta(n, j - 1));
  // codegeneracy-codegeneracy
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      CHECK(ctx.sigma(n, j) * ctx.sigma(n + 1, i) == ctx.sigma(n, i) * ctx.sigma(n + 1, j + 1));
  // mixed
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n + 1; ++i) {
      SparseMatrix lhs = ctx.sigma(n, j) * ctx.delta(n + 1, i);
      if (i < j)
        CHECK(lhs == ctx.delta(n, i) * ctx.sigma(n - 1, j - 1));
      else if (i == j || i == j + 1)
        CHECK(lhs == SparseMatrix::identity(ctx.basis(n).size()));
      else if (n >= 1)
        CHECK(lhs == ctx.delta(n, i - 1) * ctx.sigma(n - 1, j));
    }
  // cyclic vs cofaces / codegeneracies
  for (int i = 1; i <= n; ++i) {
    if (n >= 1)
      CHECK(ctx.tau(n) * ctx.delta(n, i) == ctx.delta(n, i - 1) * ctx.tau(n - 1));
    CHECK(ctx.tau(n) * ctx.sigma(n, i) == ctx.sigma(n, i - 1) * ctx.tau(n + 1));
  }
  if (n >= 1) CHECK(ctx.tau(n) * ctx.delta(n, 0) == ctx.delta(n, n));
  CHECK(ctx.tau(n) * ctx.sigma(n, 0) == ctx.sigma(n, n) * ctx.tau(n + 1) * ctx.tau(n + 1));
  // tau has order n+1
  SparseMatrix P = SparseMatrix::identity(ctx.basis(n).size());
  for (int k = 0; k <= n; ++k) P = P * ctx.tau(n);
  CHECK(P == SparseMatrix::identity(ctx.basis(n).size()));
}

}  // namespace

TEST_CASE("nerve sizes") {
  LinCategory P = point_category();
  NerveContext ctx(P);
  for (int n = 0; n <= 4; ++n) CHECK(ctx.basis(n).size() == 1);

  LinCategory D = dual_numbers_category();
  NerveContext dctx(D);
  CHECK(dctx.basis(1).size() == 4);
  CHECK(nerve_size_estimate(D, 1) == 4);
  CHECK(nerve_size_estimate(D, 3) == 16);

  // two objects: loop c on X plus arrows a: X->Y, b: Y->X, then unitalized
  LinCategory Q = truncated_quiver_category(2, {{0, 1}, {1, 0}, {0, 0}});
  long long expect = 0;  // sum over pairs of d(B,A)·d(A,B)
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      expect += static_cast<long long>(Q.hom_dim(b, a)) * Q.hom_dim(a, b);
  NerveContext qctx(Q);
  CHECK(qctx.basis(1).size() == expect);
  CHECK(nerve_size_estimate(Q, 1) == expect);
}

TEST_CASE("size limit guard") {
  LinCategory C = chaotic_category(3);
  NerveContext tight(C, 8);
  CHECK(tight.basis(0).size() == 3);  // 3 <= 8
  CHECK_THROWS_AS(tight.basis(2), SizeLimitExceeded);
  try {
    tight.basis(2);
  } catch (const SizeLimitExceeded& e) {
    CHECK(e.estimate == 27);
  }
}

TEST_CASE("tuple enumeration order and lookup") {
  LinCategory D = dual_numbers_category();
  NerveContext ctx(D);
  const NerveBasis& B1 = ctx.basis(1);
  int id = D.mor_index("id"), x = D.mor_index("x");
  CHECK(B1.index_of({id, id}) == 0);
  CHECK(B1.index_of({id, x}) == 1);
  CHECK(B1.index_of({x, id}) == 2);
  CHECK(B1.index_of({x, x}) == 3);
  CHECK_THROWS_AS(ctx.basis(0).index_of({id, id}), IndexOutOfRange);
}

TEST_CASE("point category operators") {
  LinCategory P = point_category();
  NerveContext ctx(P);
  for (int n = 0; n <= 3; ++n) {
    CHECK(ctx.tau(n) == SparseMatrix::identity(1));
    CHECK(ctx.lambda(n) == SparseMatrix::identity(1).scaled(n % 2 ? Scalar(-1) : Scalar(1)));
    SparseMatrix bn = ctx.b(n);
    if (n % 2 == 0)
      CHECK(bn.is_zero());
    else
      CHECK(bn == SparseMatrix::identity(1));
  }
  // two insertion terms coincide at level 0: B0 row = 2
  CHECK(ctx.B0(0) == SparseMatrix::identity(1).scaled(Scalar(2)));
}

TEST_CASE("face kills tuples whose composite vanishes") {
  LinCategory D = dual_numbers_category();
  NerveContext ctx(D);
  const SparseMatrix d0 = ctx.delta(1, 0);
  CHECK(d0.rows() == 4);
  CHECK(d0.cols() == 2);  // level-0 basis: (id), (x)
  CHECK(d0.row(3).empty());          // (x,x) -> x² = 0
  CHECK(d0.row(0) == sv_unit(0));    // (id,id) -> id
  CHECK(d0.row(1) == sv_unit(1));    // (id,x) -> x
}

TEST_CASE("differentials square to zero and interact with A, B as required") {
  std::mt19937_64 rng(1234u);
  for (int trial = 0; trial < 6; ++trial) {
    LinCategory C = random_category(rng);
    NerveContext ctx(C);
    for (int n = 0; n <= 2; ++n) {
      CHECK(is_zero_map(ctx.b(n + 1) * ctx.b(n)));
      CHECK(is_zero_map(ctx.b_prime(n + 1) * ctx.b_prime(n)));
      SparseMatrix one = SparseMatrix::identity(ctx.basis(n).size());
      SparseMatrix L = ctx.lambda(n);
      CHECK(is_zero_map((one - L) * ctx.A(n)));
      CHECK(is_zero_map(ctx.A(n) * (one - L)));
      CHECK(ctx.b(n) * ctx.A(n) == ctx.A(n + 1) * ctx.b_prime(n));
      CHECK(is_zero_map(ctx.b(n) * ctx.Bop(n) + ctx.Bop(n + 1) * ctx.b(n + 1)));
    }
  }
}

TEST_CASE("full cocyclic identity battery on random categories") {
  std::mt19937_64 rng(987u);
  for (int trial = 0; trial < 5; ++trial) {
    LinCategory C = random_category(rng);
    NerveContext ctx(C);
    for (int n = 1; n <= 2; ++n) check_cocyclic_identities(ctx, n);
  }
  // one deeper sweep on a fixed small category
  LinCategory D = dual_numbers_category();
  NerveContext ctx(D);
  check_cocyclic_identities(ctx, 3);
}

TEST_CASE("parallel assembly matches the serial reference") {
  std::mt19937_64 rng(555u);
  for (int trial = 0; trial < 4; ++trial) {
    LinCategory C = random_category(rng);
    NerveContext par(C, default_basis_limit(), ExecMode::parallel);
    NerveContext ser(C, default_basis_limit(), ExecMode::serial);
    for (int n = 1; n <= 2; ++n) {
      for (int i = 0; i <= n; ++i) {
        CHECK(par.delta(n, i) == ser.delta(n, i));
        CHECK(par.sigma(n, i) == ser.sigma(n, i));
      }
      CHECK(par.tau(n) == ser.tau(n));
      CHECK(par.Bop(n) == ser.Bop(n));
    }
  }
}

TEST_CASE("semicategories cannot build degeneracies") {
  LinCategory S;
  int pt = S.add_object("pt");
  S.add_morphism("x", pt, pt);
  S.mark_semicategory();
  NerveContext ctx(S);
  CHECK(ctx.basis(1).size() == 1);
  CHECK_THROWS_AS(ctx.sigma(0, 0), SemicategoryHasNoIdentities);
  CHECK_THROWS_AS(ctx.B0(0), SemicategoryHasNoIdentities);
  CHECK(ctx.b(0).rows() == 1);  // faces still fine
}

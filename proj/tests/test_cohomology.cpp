#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cychom/builtin.hpp"
#include "cychom/cohomology.hpp"

using namespace cychom;

namespace {

Cochain random_cochain(std::mt19937_64& rng, NerveContext& ctx, int n) {
  Cochain out{n, {}};
  std::uniform_int_distribution<long> coef(-3, 3);
  for (int k = 0; k < ctx.basis(n).size(); ++k) {
    long c = coef(rng);
    if (c != 0) out.coords.emplace_back(k, Scalar(c));
  }
  return out;
}

Cochain lambda_invariant_cochain(std::mt19937_64& rng, NerveContext& ctx, int n) {
  // A maps onto Ker(1-lambda), so averaging any cochain lands there.
  return apply_op(ctx.A(n), random_cochain(rng, ctx, n), n);
}

}  // namespace

TEST_CASE("point category cyclic dimensions alternate") {
  LinCategory P = point_category();
  NerveContext ctx(P);
  int expect[5] = {1, 0, 1, 0, 1};
  for (int n = 0; n <= 4; ++n) {
    CohomologyReport rep = cyclic_cohomology(ctx, n);
    CHECK(rep.dim_cohomology == expect[n]);
    CHECK(rep.dim_cocycles - rep.dim_coboundaries == rep.dim_cohomology);
    CHECK(rep.differential_squares_to_zero);
    CHECK(static_cast<int>(rep.representatives.size()) == rep.dim_cohomology);
    for (const Cochain& r : rep.representatives) CHECK(is_cyclic_cocycle(ctx, r));
  }
  CHECK(cyclic_cohomology(ctx, 0).dim_coboundaries == 0);
}

TEST_CASE("matrix ampliation keeps HC^0 one-dimensional") {
  LinCategory T = tensor_matrix(point_category(), 2);
  NerveContext ctx(T);
  CHECK(cyclic_cohomology(ctx, 0).dim_cohomology == 1);
}

TEST_CASE("degree zero: cyclic equals Hochschild, coboundaries vanish") {
  std::mt19937_64 rng(2026u);
  for (int trial = 0; trial < 5; ++trial) {
    LinCategory C = random_category(rng);
    NerveContext ctx(C);
    CohomologyReport hc = cyclic_cohomology(ctx, 0);
    CohomologyReport hh = hochschild_cohomology(ctx, 0);
    CHECK(hc.dim_coboundaries == 0);
    CHECK(hc.dim_cohomology == hh.dim_cohomology);  // lambda = id at level 0
  }
}

TEST_CASE("point category Hochschild dimension at level 0") {
  LinCategory P = point_category();
  NerveContext ctx(P);
  CHECK(hochschild_cohomology(ctx, 0).dim_cohomology == 1);
}

TEST_CASE("coboundary witnesses are exact") {
  LinCategory D = dual_numbers_category();
  NerveContext ctx(D);
  std::mt19937_64 rng(7u);

  SUBCASE("zero maps to zero") {
    Cochain zero{2, {}};
    auto w = coboundary_witness(ctx, zero);
    REQUIRE(w.has_value());
    CHECK(w->coords.empty());
  }

  SUBCASE("coboundaries by construction are recognized") {
    for (int n = 1; n <= 2; ++n)
      for (int trial = 0; trial < 5; ++trial) {
        Cochain psi0 = lambda_invariant_cochain(rng, ctx, n - 1);
        Cochain phi = apply_op(ctx.b(n - 1), psi0, n);
        auto w = coboundary_witness(ctx, phi);
        REQUIRE(w.has_value());
        CHECK(is_lambda_invariant(ctx, *w));
        CHECK(apply_op(ctx.b(n - 1), *w, n).coords == phi.coords);
      }
  }

  SUBCASE("non-invariant input is rejected") {
    Cochain skew{1, {}};
    // (id,x) alone is not lambda-invariant on dual numbers
    skew.coords = sv_unit(1);
    CHECK_THROWS_AS(coboundary_witness(ctx, skew), NotLambdaInvariant);
  }
}

TEST_CASE("nontrivial classes are not coboundaries") {
  LinCategory P = point_category();
  NerveContext ctx(P);
  CohomologyReport rep = cyclic_cohomology(ctx, 2);
  REQUIRE(rep.dim_cohomology == 1);
  const Cochain& gen = rep.representatives.front();
  CHECK_FALSE(coboundary_witness(ctx, gen).has_value());

  ClassComparison same = class_equal(ctx, gen, gen);
  CHECK(same.equal);
  CHECK(same.witness.coords.empty());

  Cochain zero{2, {}};
  CHECK_FALSE(class_equal(ctx, zero, gen).equal);

  // shifting by a coboundary does not change the class
  NerveContext dctx(dual_numbers_category());
  std::mt19937_64 rng(11u);
  CohomologyReport drep = cyclic_cohomology(dctx, 2);
  for (const Cochain& r : drep.representatives) {
    Cochain psi0 = lambda_invariant_cochain(rng, dctx, 1);
    Cochain shifted{2, sv_add(r.coords, apply_op(dctx.b(1), psi0, 2).coords)};
    CHECK(class_equal(dctx, r, shifted).equal);
  }
}

TEST_CASE("explicit preimages under B") {
  LinCategory P = point_category();
  NerveContext ctx(P);

  SUBCASE("zero input") {
    Cochain zero{1, {}};
    CHECK(b0_image_witness(ctx, zero).coords.empty());
  }

  SUBCASE("point generator at level 0") {
    Cochain phi{0, sv_unit(0)};  // phi(id) = 1
    Cochain psi = b0_image_witness(ctx, phi);
    REQUIRE(psi.n == 1);
    CHECK(psi.coords == sv_unit(0));  // psi(id,id) = 1
    CHECK(apply_op(ctx.Bop(0), psi, 0).coords == sv_scaled(phi.coords, Scalar(2)));
  }

  SUBCASE("random categories and levels") {
    std::mt19937_64 rng(31u);
    for (int trial = 0; trial < 6; ++trial) {
      LinCategory C = random_category(rng);
      NerveContext cctx(C);
      for (int n = 0; n <= 2; ++n) {
        Cochain phi = lambda_invariant_cochain(rng, cctx, n);
        Cochain psi = b0_image_witness(cctx, phi);
        CHECK(apply_op(cctx.Bop(n), psi, n).coords ==
              sv_scaled(phi.coords, Scalar(2 * (n + 1))));
      }
    }
  }

  SUBCASE("non-aligned identities are refused") {
    LinCategory T = tensor_matrix(point_category(), 2);
    NerveContext tctx(T);
    std::mt19937_64 trng(3u);
    Cochain phi = lambda_invariant_cochain(trng, tctx, 1);
    CHECK_THROWS_AS(b0_image_witness(tctx, phi), IdentityNotBasisAligned);
  }
}

TEST_CASE("image of B fills the invariant subspace") {
  std::mt19937_64 rng(41u);
  for (int trial = 0; trial < 5; ++trial) {
    LinCategory C = random_category(rng);
    NerveContext ctx(C);
    for (int n = 0; n <= 2; ++n) {
      int dim = ctx.basis(n).size();
      SparseMatrix one_minus = SparseMatrix::identity(dim) - ctx.lambda(n);
      int invariant_dim = dim - matrix_rank(one_minus);
      CHECK(matrix_rank(ctx.Bop(n)) == invariant_dim);
      CHECK((one_minus * ctx.Bop(n)).is_zero());
    }
  }
}

TEST_CASE("dimensions are invariant under declaration reordering") {
  // dual numbers with the basis declared in the opposite order
  LinCategory D2;
  int pt = D2.add_object("pt");
  int x = D2.add_morphism("x", pt, pt);
  int id = D2.add_morphism("id", pt, pt);
  D2.set_composition(id, id, sv_unit(1));
  D2.set_composition(id, x, sv_unit(0));
  D2.set_composition(x, id, sv_unit(0));
  D2.set_identity(pt, sv_unit(1));
  REQUIRE(validate_presentation(D2).ok);

  NerveContext a(dual_numbers_category());
  NerveContext b(D2);
  for (int n = 0; n <= 3; ++n) {
    CohomologyReport ra = cyclic_cohomology(a, n);
    CohomologyReport rb = cyclic_cohomology(b, n);
    CHECK(ra.dim_cocycles == rb.dim_cocycles);
    CHECK(ra.dim_coboundaries == rb.dim_coboundaries);
    CHECK(ra.dim_cohomology == rb.dim_cohomology);
  }
}

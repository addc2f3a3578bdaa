#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <string>

#include "cychom/builtin.hpp"
#include "cychom/omega.hpp"

using namespace cychom;

namespace {

bool message_mentions(const Error& e, const std::string& needle) {
  return std::string(e.what()).find(needle) != std::string::npos;
}

OmegaElement random_element(std::mt19937_64& rng, OmegaContext& octx, int src, int dst, int deg) {
  OmegaElement e = octx.zero(src, dst, deg);
  const std::vector<OmegaSymbol>& basis = octx.hom_basis(deg, src, dst);
  if (basis.empty()) return e;
  std::uniform_int_distribution<int> pick(0, static_cast<int>(basis.size()) - 1);
  std::uniform_int_distribution<long> coef(-2, 2);
  std::map<OmegaSymbol, Scalar> coords;
  for (int t = 0; t < 3; ++t) {
    long c = coef(rng);
    if (c == 0) continue;
    auto [it, inserted] = coords.emplace(basis[pick(rng)], Scalar(c));
    if (!inserted) it->second = it->second + Scalar(c);
  }
  return octx.make(src, dst, deg, std::move(coords));
}

}  // namespace

TEST_CASE("degree zero embeds the category") {
  LinCategory M2 = tensor_matrix(point_category(), 2);
  OmegaContext octx(M2, 2);
  int e11 = M2.mor_index("id#E1_1"), e12 = M2.mor_index("id#E1_2");
  int e21 = M2.mor_index("id#E2_1"), e22 = M2.mor_index("id#E2_2");
  CHECK(octx.compose(octx.from_morphism(e12), octx.from_morphism(e21)) ==
        octx.from_morphism(e11));
  CHECK(octx.compose(octx.from_morphism(e21), octx.from_morphism(e12)) ==
        octx.from_morphism(e22));
  CHECK(octx.compose(octx.from_morphism(e12), octx.from_morphism(e12)).is_zero());

  LinCategory P3 = poset_chain_category(3);
  OmegaContext poctx(P3, 2);
  int u12 = P3.hom(0, 1)[0];
  CHECK_THROWS_AS(poctx.compose(poctx.from_morphism(u12), poctx.from_morphism(u12)),
                  NotComposable);
}

TEST_CASE("differential of the lead interacts with a right factor") {
  LinCategory Z = z2_group_category();
  OmegaContext octx(Z, 3);
  int e = Z.mor_index("e"), g = Z.mor_index("g");
  OmegaElement lhs = octx.compose(octx.differential(octx.from_morphism(g)), octx.from_morphism(g));
  OmegaElement expect = octx.make(
      0, 0, 1, {{OmegaSymbol{kUnitLead, {e}}, Scalar(1)}, {OmegaSymbol{g, {g}}, Scalar(-1)}});
  CHECK(lhs == expect);
  // Same identity written through the graded Leibniz rule.
  OmegaElement rhs =
      octx.add(octx.differential(octx.compose(octx.from_morphism(g), octx.from_morphism(g))),
               octx.scale(octx.compose(octx.from_morphism(g),
                                       octx.differential(octx.from_morphism(g))),
                          Scalar(-1)));
  CHECK(lhs == rhs);
  CHECK(octx.differential(octx.differential(octx.make(
                              0, 0, 1, {{OmegaSymbol{g, {g}}, Scalar(1)}})))
            .is_zero());

  LinCategory D = dual_numbers_category();
  OmegaContext doctx(D, 3);
  int x = D.mor_index("x");
  // x has square zero, so only the transported term survives.
  OmegaElement xdx = doctx.make(0, 0, 1, {{OmegaSymbol{x, {x}}, Scalar(-1)}});
  CHECK(doctx.compose(doctx.differential(doctx.from_morphism(x)), doctx.from_morphism(x)) == xdx);
}

TEST_CASE("single object single morphism unit identities") {
  LinCategory P = point_category();
  OmegaContext octx(P, 4);
  OmegaElement one = octx.from_morphism(0);
  OmegaElement d1 = octx.differential(one);

  CHECK(octx.compose(octx.compose(one, d1), one).is_zero());
  CHECK(d1 == octx.add(octx.compose(d1, one), octx.compose(one, d1)));
  OmegaElement dd = octx.compose(d1, d1);
  CHECK(octx.compose(one, dd) == octx.compose(dd, one));
  CHECK(octx.compose(one, dd) ==
        octx.make(0, 0, 2, {{OmegaSymbol{0, {0, 0}}, Scalar(1)}}));

  CHECK(omega_algebra(octx, one, d1, OmegaOp::compose) == octx.compose(one, d1));
  CHECK(omega_algebra(octx, one, one, OmegaOp::differentiate) == d1);
}

TEST_CASE("degree bound rejects overflowing results") {
  LinCategory P = point_category();
  OmegaContext octx(P, 2);
  OmegaElement d1 = octx.differential(octx.from_morphism(0));
  OmegaElement dd = octx.compose(d1, d1);
  CHECK_THROWS_AS(octx.differential(dd), DegreeOverflow);
  CHECK_THROWS_AS(octx.compose(dd, d1), DegreeOverflow);
  CHECK_THROWS_AS(octx.hom_basis(3, 0, 0), DegreeOverflow);
}

TEST_CASE("symbol validation enforces composability") {
  LinCategory P3 = poset_chain_category(3);
  OmegaContext octx(P3, 2);
  int u12 = P3.hom(0, 1)[0], u23 = P3.hom(1, 2)[0];
  CHECK_NOTHROW(octx.make(0, 2, 1, {{OmegaSymbol{u23, {u12}}, Scalar(1)}}));
  CHECK_THROWS_AS(octx.make(0, 2, 1, {{OmegaSymbol{u23, {u23}}, Scalar(1)}}), NotComposable);
  CHECK_THROWS_AS(octx.make(0, 2, 1, {{OmegaSymbol{kUnitLead, {u12}}, Scalar(1)}}),
                  NotComposable);
  CHECK_THROWS_AS(octx.make(0, 0, 0, {{OmegaSymbol{kUnitLead, {}}, Scalar(1)}}), NotComposable);
  CHECK_THROWS_AS(octx.make(0, 0, 0, {{OmegaSymbol{u12, {}}, Scalar(1)}}), NotComposable);
}

TEST_CASE("hom bases enumerate morphism leads before the unit lead") {
  LinCategory P = point_category();
  OmegaContext octx(P, 4);
  CHECK(octx.hom_basis(0, 0, 0).size() == 1);
  CHECK(octx.hom_basis(1, 0, 0).size() == 2);
  CHECK(octx.hom_basis(3, 0, 0).size() == 2);

  LinCategory D = dual_numbers_category();
  OmegaContext doctx(D, 2);
  int id = D.mor_index("id"), x = D.mor_index("x");
  CHECK(doctx.hom_size_estimate(1, 0, 0) == 6);
  CHECK(doctx.hom_size_estimate(2, 0, 0) == 12);
  const std::vector<OmegaSymbol>& b1 = doctx.hom_basis(1, 0, 0);
  REQUIRE(b1.size() == 6);
  CHECK(b1[0] == OmegaSymbol{id, {id}});
  CHECK(b1[1] == OmegaSymbol{id, {x}});
  CHECK(b1[2] == OmegaSymbol{x, {id}});
  CHECK(b1[3] == OmegaSymbol{x, {x}});
  CHECK(b1[4] == OmegaSymbol{kUnitLead, {id}});
  CHECK(b1[5] == OmegaSymbol{kUnitLead, {x}});
  CHECK(doctx.hom_basis(2, 0, 0).size() == 12);

  LinCategory K3 = chaotic_category(3);
  OmegaContext koctx(K3, 2, 8);
  CHECK(koctx.hom_size_estimate(2, 0, 1) == 12);
  try {
    koctx.hom_basis(2, 0, 1);
    CHECK(false);
  } catch (const SizeLimitExceeded& e) {
    CHECK(e.estimate == 12);
  }
}

TEST_CASE("graded calculus laws hold on random elements") {
  std::mt19937_64 rng(7u);
  for (int draw = 0; draw < 5; ++draw) {
    LinCategory C = random_category(rng);
    OmegaContext octx(C, 6);
    std::uniform_int_distribution<int> obj(0, C.num_objects() - 1);
    std::uniform_int_distribution<int> deg(0, 2);
    for (int trial = 0; trial < 6; ++trial) {
      int x = obj(rng), y = obj(rng), z = obj(rng), w = obj(rng);
      OmegaElement a = random_element(rng, octx, z, w, deg(rng));
      OmegaElement b = random_element(rng, octx, y, z, deg(rng));
      OmegaElement c = random_element(rng, octx, x, y, deg(rng));

      CHECK(octx.differential(octx.differential(a)).is_zero());

      OmegaElement ab = octx.compose(a, b);
      OmegaElement leibniz =
          octx.add(octx.compose(octx.differential(a), b),
                   octx.scale(octx.compose(a, octx.differential(b)),
                              Scalar(a.degree % 2 == 0 ? 1 : -1)));
      CHECK(octx.differential(ab) == leibniz);

      CHECK(octx.compose(ab, c) == octx.compose(a, octx.compose(b, c)));
    }
  }
}

TEST_CASE("dimension two trace on the one morphism category") {
  LinCategory P = point_category();
  OmegaContext octx(P, 3);
  GradedTrace T{2, {{OmegaSymbol{0, {0, 0}}, Scalar(1)}}};
  CHECK_NOTHROW(octx.verify_trace(T));

  OmegaElement one = octx.from_morphism(0);
  OmegaElement d1 = octx.differential(one);
  OmegaElement dd = octx.compose(d1, d1);
  CHECK(octx.eval(T, octx.compose(one, dd)) == Scalar(1));
  CHECK(octx.eval(T, octx.compose(dd, one)) == Scalar(1));
  CHECK(octx.eval(T, dd) == Scalar(0));

  Cochain phi = trace_to_cocycle(octx, T);
  REQUIRE(phi.coords.size() == 1);
  CHECK(phi.coords[0].first == 0);
  CHECK(phi.coords[0].second == Scalar(1));

  CohomologyReport rep = cyclic_cohomology(octx.nerve(), 2);
  REQUIRE(rep.dim_cohomology == 1);
  CHECK(cocycle_to_trace(octx, rep.representatives[0]) == T);
  CHECK(cocycle_to_trace(octx, phi) == T);

  GradedTrace zero{2, {}};
  CHECK(trace_to_cocycle(octx, zero).coords.empty());
  CHECK(cocycle_to_trace(octx, Cochain{2, {}}) == zero);
}

TEST_CASE("axiom probes reject broken traces") {
  LinCategory P = point_category();
  OmegaContext octx(P, 3);
  GradedTrace leaky{2, {{OmegaSymbol{kUnitLead, {0, 0}}, Scalar(1)}}};
  try {
    octx.verify_trace(leaky);
    CHECK(false);
  } catch (const TraceAxiomViolated& e) {
    CHECK(message_mentions(e, "closure"));
  }

  LinCategory M2 = tensor_matrix(point_category(), 2);
  OmegaContext moctx(M2, 1);
  int e11 = M2.mor_index("id#E1_1"), e22 = M2.mor_index("id#E2_2");
  GradedTrace skew{0, {{OmegaSymbol{e11, {}}, Scalar(1)}}};
  try {
    moctx.verify_trace(skew);
    CHECK(false);
  } catch (const TraceAxiomViolated& e) {
    CHECK(message_mentions(e, "graded law"));
  }
  GradedTrace matrix_trace{0,
                           {{OmegaSymbol{e11, {}}, Scalar(1)}, {OmegaSymbol{e22, {}}, Scalar(1)}}};
  CHECK_NOTHROW(moctx.verify_trace(matrix_trace));
  Cochain tr = trace_to_cocycle(moctx, matrix_trace);
  CHECK(tr.coords.size() == 2);

  LinCategory P2 = poset_chain_category(2);
  OmegaContext poctx(P2, 1);
  GradedTrace offdiag{0, {{OmegaSymbol{P2.hom(0, 1)[0], {}}, Scalar(1)}}};
  CHECK_THROWS_AS(poctx.verify_trace(offdiag), NotComposable);
}

TEST_CASE("conversion rejects non cocycles naming the failed condition") {
  LinCategory Z = z2_group_category();
  OmegaContext octx(Z, 2);
  NerveContext& nctx = octx.nerve();

  Cochain skew{1, {{1, Scalar(1)}}};
  REQUIRE(!is_lambda_invariant(nctx, skew));
  try {
    cocycle_to_trace(octx, skew);
    CHECK(false);
  } catch (const NotACocycle& e) {
    CHECK(message_mentions(e, "lambda"));
  }

  Cochain invariant = apply_op(nctx.A(1), skew, 1);
  REQUIRE(is_lambda_invariant(nctx, invariant));
  REQUIRE(!apply_op(nctx.b(1), invariant, 2).coords.empty());
  try {
    cocycle_to_trace(octx, invariant);
    CHECK(false);
  } catch (const NotACocycle& e) {
    CHECK(message_mentions(e, "b phi"));
  }
}

TEST_CASE("trace and cocycle conversions invert each other") {
  std::mt19937_64 rng(11u);
  for (int draw = 0; draw < 4; ++draw) {
    LinCategory C = random_category(rng);
    for (int n = 1; n <= 2; ++n) {
      OmegaContext octx(C, n + 1);
      NerveContext& nctx = octx.nerve();
      int dim = nctx.basis(n).size();
      SparseMatrix constraints = SparseMatrix::vstack(
          nctx.b(n), SparseMatrix::identity(dim) - nctx.lambda(n));
      SparseMatrix Zbasis = kernel_basis(constraints);
      int take = std::min(Zbasis.cols(), 2);
      for (int j = 0; j < take; ++j) {
        Cochain phi{n, Zbasis.col(j)};
        GradedTrace T = cocycle_to_trace(octx, phi);
        Cochain back = trace_to_cocycle(octx, T);
        CHECK(back.coords == phi.coords);
        CHECK(cocycle_to_trace(octx, back) == T);
      }
    }
  }
}

TEST_CASE("identity realization characters reproduce their cocycles") {
  LinCategory P = point_category();
  OmegaContext octx(P, 3);
  Cochain phi{2, {{0, Scalar(1)}}};
  OmegaRealization real{octx, cocycle_to_trace(octx, phi)};
  CHECK(cycle_character(octx.nerve(), real, 2).coords == phi.coords);

  OmegaRealization zero{octx, GradedTrace{2, {}}};
  CHECK(cycle_character(octx.nerve(), zero, 2).coords.empty());

  std::mt19937_64 rng(13u);
  LinCategory C = random_category(rng);
  OmegaContext roctx(C, 2);
  NerveContext& nctx = roctx.nerve();
  int dim = nctx.basis(1).size();
  SparseMatrix constraints =
      SparseMatrix::vstack(nctx.b(1), SparseMatrix::identity(dim) - nctx.lambda(1));
  SparseMatrix Zbasis = kernel_basis(constraints);
  for (int j = 0; j < std::min(Zbasis.cols(), 2); ++j) {
    Cochain psi{1, Zbasis.col(j)};
    OmegaRealization r{roctx, cocycle_to_trace(roctx, psi)};
    CHECK(cycle_character(roctx.nerve(), r, 1).coords == psi.coords);
  }
}

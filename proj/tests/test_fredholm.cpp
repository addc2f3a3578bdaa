#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <string>

#include "cychom/builtin.hpp"
#include "cychom/fredholm.hpp"

using namespace cychom;

namespace {

BlockMatrix diag2(long a, long b) {
  BlockMatrix M(1, 1, 1, 1);
  M.at(0, 0) = Scalar(a);
  M.at(1, 1) = Scalar(b);
  return M;
}

BlockMatrix swap2() {
  BlockMatrix M(1, 1, 1, 1);
  M.at(0, 1) = Scalar(1);
  M.at(1, 0) = Scalar(1);
  return M;
}

// One object, H = C^{1|1}, e -> id, g -> diag(1,-1), F = swap.
FredholmModule z2_sign_module() {
  FredholmModule FM;
  FM.rep.category = z2_group_category();
  FM.rep.dims = {{1, 1}};
  FM.rep.action.assign(2, BlockMatrix());
  FM.rep.action[FM.rep.category.mor_index("e")] = BlockMatrix::identity(1, 1);
  FM.rep.action[FM.rep.category.mor_index("g")] = diag2(1, -1);
  FM.F = {swap2()};
  return FM;
}

// Two-object chain, both H = C^{1|1}, the connecting arrow -> diag(1,0).
FredholmModule chain_projection_module() {
  FredholmModule FM;
  FM.rep.category = poset_chain_category(2);
  FM.rep.dims = {{1, 1}, {1, 1}};
  FM.rep.action.assign(FM.rep.category.num_morphisms(), BlockMatrix());
  FM.rep.action[FM.rep.category.identity_elem(0)] = BlockMatrix::identity(1, 1);
  FM.rep.action[FM.rep.category.identity_elem(1)] = BlockMatrix::identity(1, 1);
  FM.rep.action[FM.rep.category.hom(0, 1)[0]] = diag2(1, 0);
  FM.F = {swap2(), swap2()};
  return FM;
}

FredholmModule dual_zero_module() {
  FredholmModule FM;
  FM.rep.category = dual_numbers_category();
  FM.rep.dims = {{1, 1}};
  FM.rep.action.assign(2, BlockMatrix());
  FM.rep.action[FM.rep.category.mor_index("id")] = BlockMatrix::identity(1, 1);
  FM.rep.action[FM.rep.category.mor_index("x")] = BlockMatrix(1, 1, 1, 1);
  FM.F = {swap2()};
  return FM;
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

TEST_CASE("block matrices respect the graded shape algebra") {
  BlockMatrix I = BlockMatrix::identity(2, 1);
  CHECK(I.is_even());
  CHECK_FALSE(I.is_odd());
  CHECK(I.trace() == Scalar(3));
  CHECK(I.eps_trace() == Scalar(1));

  BlockMatrix F = swap2();
  CHECK(F.is_odd());
  CHECK_FALSE(F.is_even());
  CHECK(F * F == BlockMatrix::identity(1, 1));
  CHECK(F.eps_trace() == Scalar(0));

  BlockMatrix T = diag2(2, 3);
  CHECK((F * T).is_odd());
  CHECK((T + T) == T.scaled(Scalar(2)));
  CHECK((T - T).is_zero());
  CHECK((T - T).is_even());
  CHECK((T - T).is_odd());

  BlockMatrix wide(1, 1, 2, 2);
  CHECK_THROWS_AS(wide.trace(), DimensionMismatch);
  CHECK_THROWS_AS(F * wide.eps_left() * F, DimensionMismatch);
  CHECK_THROWS_AS(F + wide, DimensionMismatch);
  CHECK_THROWS_AS(wide.at(5, 0), IndexOutOfRange);
}

TEST_CASE("validation accepts stock modules and names violations") {
  FredholmModule pt;
  pt.rep.category = point_category();
  pt.rep.dims = {{1, 1}};
  pt.rep.action = {BlockMatrix::identity(1, 1)};
  pt.F = {swap2()};
  CHECK(validate_fredholm(pt).ok);
  CHECK(validate_fredholm(pt).summable_for_all_p);

  CHECK(validate_fredholm(z2_sign_module()).ok);
  CHECK(validate_fredholm(dual_zero_module()).ok);
  CHECK(validate_fredholm(chain_projection_module()).ok);

  FredholmModule bad = pt;
  bad.F = {diag2(1, -1)};
  FredholmReport r = validate_fredholm(bad);
  CHECK_FALSE(r.ok);
  CHECK(r.violations.front().find("not odd") != std::string::npos);

  bad = pt;
  bad.F = {swap2().scaled(Scalar(2))};
  r = validate_fredholm(bad);
  CHECK_FALSE(r.ok);
  CHECK(r.violations.front().find("square") != std::string::npos);

  bad = z2_sign_module();
  bad.rep.action[bad.rep.category.mor_index("g")] = diag2(2, 1);
  r = validate_fredholm(bad);
  CHECK_FALSE(r.ok);
  CHECK(!r.violations.empty());
  bool composition_flagged = false;
  for (const std::string& v : r.violations)
    composition_flagged = composition_flagged || v.find("composition") != std::string::npos;
  CHECK(composition_flagged);

  bad = pt;
  bad.rep.action = {diag2(2, 2)};
  r = validate_fredholm(bad);
  CHECK_FALSE(r.ok);
  CHECK(r.violations.front().find("identity") != std::string::npos);

  LinCategory semi;
  semi.add_object("s");
  semi.add_morphism("n", 0, 0);
  semi.mark_semicategory();
  FredholmModule sm;
  sm.rep.category = semi;
  sm.rep.dims = {{1, 1}};
  sm.rep.action = {BlockMatrix(1, 1, 1, 1)};
  sm.F = {swap2()};
  r = validate_fredholm(sm);
  CHECK_FALSE(r.ok);
  CHECK(r.violations.front().find("genuine functors") != std::string::npos);

  bad = pt;
  bad.rep.action = {swap2()};
  r = validate_fredholm(bad);
  CHECK_FALSE(r.ok);
  CHECK(r.violations.front().find("degree 0") != std::string::npos);
}

TEST_CASE("graded commutator flips parity and is killed by a second pass") {
  FredholmModule pt;
  pt.rep.category = point_category();
  pt.rep.dims = {{1, 1}};
  pt.rep.action = {BlockMatrix::identity(1, 1)};
  pt.F = {swap2()};

  BlockMatrix T = diag2(1, 0);
  BlockMatrix K = graded_commutator(pt, 0, 0, T);
  CHECK(K.is_odd());
  CHECK(K.at(0, 1) == Scalar(-1));
  CHECK(K.at(1, 0) == Scalar(1));
  CHECK(graded_commutator(pt, 0, 0, K).is_zero());

  CHECK(graded_commutator(pt, 0, 0, BlockMatrix::identity(1, 1)).is_zero());
  // Odd inputs use the anticommutator: [F, F] = 2 F^2.
  CHECK(graded_commutator(pt, 0, 0, swap2()) == BlockMatrix::identity(1, 1).scaled(Scalar(2)));

  BlockMatrix mixed = diag2(1, 1);
  mixed.at(0, 1) = Scalar(1);
  CHECK_THROWS_AS(graded_commutator(pt, 0, 0, mixed), NotHomogeneous);
  CHECK_THROWS_AS(graded_commutator(pt, 0, 0, BlockMatrix(2, 2, 2, 2)), DimensionMismatch);
}

TEST_CASE("supertrace matches the signed trace on even operators and kills odd ones") {
  FredholmModule pt;
  pt.rep.category = point_category();
  pt.rep.dims = {{1, 1}};
  pt.rep.action = {BlockMatrix::identity(1, 1)};
  pt.F = {swap2()};

  CHECK(supertrace(pt, 0, diag2(2, 3)) == Scalar(-1));
  CHECK(supertrace(pt, 0, BlockMatrix::identity(1, 1)) == Scalar(0));
  CHECK(supertrace(pt, 0, swap2()) == Scalar(0));
  BlockMatrix odd(1, 1, 1, 1);
  odd.at(0, 1) = Scalar(5);
  odd.at(1, 0) = Scalar(7);
  CHECK(supertrace(pt, 0, odd) == Scalar(0));
  CHECK_THROWS_AS(supertrace(pt, 0, BlockMatrix(2, 1, 1, 1)), DimensionMismatch);

  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> entry(-3, 3);
  for (int trial = 0; trial < 6; ++trial) {
    FredholmModule FM = random_fredholm_module(rng);
    REQUIRE(validate_fredholm(FM).ok);
    for (int x = 0; x < FM.rep.category.num_objects(); ++x) {
      const auto [e, o] = FM.rep.dims[x];
      BlockMatrix T(e, o, e, o);
      for (int r = 0; r < e; ++r)
        for (int c = 0; c < e; ++c) T.at(r, c) = Scalar(entry(rng));
      for (int r = 0; r < o; ++r)
        for (int c = 0; c < o; ++c) T.at(e + r, e + c) = Scalar(entry(rng));
      CHECK(supertrace(FM, x, T) == T.eps_trace());
    }
  }
}

TEST_CASE("chern character level zero reads the supertrace of the action") {
  FredholmModule FM = z2_sign_module();
  NerveContext nctx(FM.rep.category);
  Cochain phi = chern_character(nctx, FM, 0);
  int idx_g = nctx.basis(0).index_of({FM.rep.category.mor_index("g")});
  REQUIRE(phi.n == 0);
  REQUIRE(phi.coords.size() == 1);
  CHECK(phi.coords.front().first == idx_g);
  CHECK(phi.coords.front().second == Scalar(2));

  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 4; ++trial) {
    FredholmModule M = random_fredholm_module(rng);
    NerveContext ctx(M.rep.category);
    Cochain p0 = chern_character(ctx, M, 0);
    const NerveBasis& basis = ctx.basis(0);
    for (int k = 0; k < basis.size(); ++k) {
      int f = basis.tuple(k)[0];
      CHECK(sv_get(p0.coords, k) == supertrace(M, M.rep.category.mor(f).dst, M.rep.action[f]));
    }
  }
}

TEST_CASE("modules whose F commutes with the action have zero characters") {
  std::mt19937_64 rng(5);
  for (const LinCategory& C :
       {z2_group_category(), chaotic_category(2), dual_numbers_category()}) {
    FredholmModule FM = regular_swap_module(C);
    REQUIRE(validate_fredholm(FM).ok);
    NerveContext nctx(C);
    CHECK(chern_character(nctx, FM, 0).coords.empty());
    CHECK(chern_character(nctx, FM, 1).coords.empty());
    for (int f = 0; f < C.num_morphisms(); ++f) {
      SchattenReport rep = schatten_diagnostic(FM, f, 1.0);
      for (double s : rep.singular_values) CHECK(s <= 1e-12);
    }
  }
}

TEST_CASE("hand-computed degree-two character of the sign module") {
  FredholmModule FM = z2_sign_module();
  NerveContext nctx(FM.rep.category);
  int g = FM.rep.category.mor_index("g");
  Cochain phi = chern_character(nctx, FM, 1);
  REQUIRE(phi.coords.size() == 1);
  CHECK(phi.coords.front().first == nctx.basis(2).index_of({g, g, g}));
  CHECK(phi.coords.front().second == Scalar(-8));
}

TEST_CASE("random modules produce verified cyclic cocycles at levels 0 and 2") {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 12; ++trial) {
    FredholmModule FM = random_fredholm_module(rng);
    REQUIRE(validate_fredholm(FM).ok);
    NerveContext nctx(FM.rep.category);
    for (int m = 0; m <= 1; ++m) {
      Cochain phi = chern_character(nctx, FM, m);
      CHECK(is_cyclic_cocycle(nctx, phi));
    }
  }
}

TEST_CASE("the realization is a differential graded semifunctor") {
  FredholmModule FM = z2_sign_module();
  FredholmRealization R = omega_realization(FM);
  const LinCategory& Z = FM.rep.category;
  int g = Z.mor_index("g");

  RealizedElement gdg = R.realize(OmegaSymbol{g, {g}});
  BlockMatrix expect = FM.rep.action[g] * graded_commutator(FM, 0, 0, FM.rep.action[g]);
  CHECK(gdg.M == expect);
  CHECK(gdg.degree == 1);
  CHECK(R.realize(OmegaSymbol{g, {}}).M == FM.rep.action[g]);
  CHECK(R.realize(OmegaSymbol{kUnitLead, {g}}).M ==
        graded_commutator(FM, 0, 0, FM.rep.action[g]));
  CHECK_THROWS_AS(R.realize(OmegaSymbol{kUnitLead, {}}), NotComposable);

  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 6; ++trial) {
    FredholmModule M = random_fredholm_module(rng);
    const LinCategory& C = M.rep.category;
    OmegaContext octx(C, 4);
    FredholmRealization real = omega_realization(M);
    std::uniform_int_distribution<int> obj(0, C.num_objects() - 1);
    for (int deg = 0; deg <= 2; ++deg) {
      int x = obj(rng), y = obj(rng), z = obj(rng);
      OmegaElement a = random_element(rng, octx, y, z, deg);
      OmegaElement b = random_element(rng, octx, x, y, 2 - deg);
      // differential intertwining: realize(da) = [F, realize(a)].
      CHECK(real.realize(octx.differential(a)).M == real.differential(real.realize(a)).M);
      // multiplicativity across the graded composition rule.
      CHECK(real.realize(octx.compose(a, b)).M ==
            real.compose(real.realize(a), real.realize(b)).M);
      // the square of the differential vanishes on realizations.
      CHECK(real.differential(real.differential(real.realize(a))).M.is_zero());
    }
  }
}

TEST_CASE("realized trace satisfies closure and the graded law on probes") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 5; ++trial) {
    FredholmModule FM = random_fredholm_module(rng);
    const LinCategory& C = FM.rep.category;
    OmegaContext octx(C, 3);
    FredholmRealization real = omega_realization(FM);
    const int n = 2;
    for (int x = 0; x < C.num_objects(); ++x)
      for (const OmegaSymbol& s : octx.hom_basis(n - 1, x, x))
        CHECK(real.trace(real.differential(real.realize(s))) == Scalar(0));
    for (int x = 0; x < C.num_objects(); ++x)
      for (int y = 0; y < C.num_objects(); ++y)
        for (int i = 0; i <= n; ++i) {
          const int j = n - i;
          for (const OmegaSymbol& a : octx.hom_basis(i, x, y))
            for (const OmegaSymbol& b : octx.hom_basis(j, y, x)) {
              RealizedElement ra = real.realize(a), rb = real.realize(b);
              Scalar lhs = real.trace(real.compose(ra, rb));
              Scalar rhs = real.trace(real.compose(rb, ra));
              if (i % 2 == 1 && j % 2 == 1) rhs = -rhs;
              CHECK(lhs == rhs);
            }
        }
  }
}

TEST_CASE("chern character equals the envelope character of the realization") {
  std::mt19937_64 rng(8);
  std::vector<FredholmModule> modules;
  modules.push_back(z2_sign_module());
  modules.push_back(chain_projection_module());
  for (int trial = 0; trial < 3; ++trial) modules.push_back(random_fredholm_module(rng));
  for (const FredholmModule& FM : modules) {
    NerveContext nctx(FM.rep.category);
    FredholmRealization real = omega_realization(FM);
    for (int m = 0; m <= 1; ++m) {
      Cochain phi = chern_character(nctx, FM, m);
      Cochain chi = cycle_character(nctx, real, 2 * m);
      CHECK(phi.n == chi.n);
      CHECK(phi.coords == chi.coords);
    }
  }
}

TEST_CASE("schatten diagnostics report float singular values") {
  FredholmModule FM = chain_projection_module();
  int u = FM.rep.category.hom(0, 1)[0];
  SchattenReport rep = schatten_diagnostic(FM, u, 1.0);
  REQUIRE(rep.singular_values.size() == 2);
  CHECK(rep.singular_values[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.singular_values[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.norm == doctest::Approx(2.0).epsilon(1e-9));

  FredholmModule Z = z2_sign_module();
  int g = Z.rep.category.mor_index("g");
  double last = schatten_diagnostic(Z, g, 1.0).norm;
  for (double p : {2.0, 3.0, 4.0}) {
    double now = schatten_diagnostic(Z, g, p).norm;
    CHECK(now <= last + 1e-9);
    last = now;
  }

  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 4; ++trial) {
    FredholmModule M = random_fredholm_module(rng);
    for (int f = 0; f < M.rep.category.num_morphisms(); ++f) {
      double n1 = schatten_diagnostic(M, f, 1.0).norm;
      double n2 = schatten_diagnostic(M, f, 2.0).norm;
      double n4 = schatten_diagnostic(M, f, 4.0).norm;
      CHECK(n2 <= n1 + 1e-9);
      CHECK(n4 <= n2 + 1e-9);
    }
  }
}

TEST_CASE("conjugated modules yield identical characters") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 4; ++trial) {
    FredholmModule FM = random_fredholm_module(rng);
    FredholmModule CJ = conjugate_module(FM, random_even_conjugators(FM, rng));
    REQUIRE(validate_fredholm(CJ).ok);
    NerveContext nctx(FM.rep.category);
    for (int m = 0; m <= 1; ++m) {
      Cochain a = chern_character(nctx, FM, m);
      Cochain b = chern_character(nctx, CJ, m);
      CHECK(a.coords == b.coords);
    }
  }

  FredholmModule FM = z2_sign_module();
  BlockMatrix T(1, 1, 1, 1);
  T.at(0, 0) = Scalar(1);
  CHECK_THROWS_AS(conjugate_module(FM, {T}), NotInvertible);
}

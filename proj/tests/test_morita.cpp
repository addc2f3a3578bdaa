#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "cychom/builtin.hpp"
#include "cychom/morita.hpp"

using namespace cychom;

namespace {

// Global tensor-category id of f ⊗ E_{pq} (1-based block indices).
int pq(const MoritaContext& m, int f, int p, int q) {
  return m.info().pair_id[f][(p - 1) * m.r() + (q - 1)];
}

bool has_check(const MoritaCertificate& cert, const std::string& needle) {
  for (const auto& c : cert.checks)
    if (c.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("trace keeps exactly the cyclically index-matched chains") {
  MoritaContext m(point_category(), 2);
  const NerveBasis& tb = m.tensor().basis(1);
  const NerveBasis& bb = m.base().basis(1);
  const SparseMatrix& T1 = m.tr(1);
  int matched = tb.index_of({pq(m, 0, 1, 2), pq(m, 0, 2, 1)});
  int broken = tb.index_of({pq(m, 0, 1, 2), pq(m, 0, 1, 2)});
  CHECK(T1.row(matched) == sv_unit(bb.index_of({0, 0})));
  CHECK(T1.row(broken).empty());

  // Round trips: every slot inclusion is a section of the trace.
  for (int p = 1; p <= 2; ++p)
    for (int n = 0; n <= 2; ++n)
      CHECK(m.inc(p, n) * m.tr(n) == SparseMatrix::identity(m.base().basis(n).size()));
  CHECK_THROWS_AS(m.inc(0, 0), IndexOutOfRange);
  CHECK_THROWS_AS(m.inc(3, 0), IndexOutOfRange);
  CHECK_THROWS_AS(m.hbar(1, 0), IndexOutOfRange);
}

TEST_CASE("inclusion respects faces and rotation but not degeneracies") {
  MoritaContext m(z2_group_category(), 2);
  auto [I, T] = morita_chain_maps(m, 1, 2);  // throws if any compatibility fails
  CHECK(I.matrices.size() == 3);
  CHECK(T.matrices.size() == 3);
  morita_chain_maps(m, 2, 2);

  // The slot inclusion is not unital: it sends id to id ⊗ E_pp, not to the
  // tensor identity.  Inserting identities therefore does not commute with it.
  SparseMatrix lhs = m.inc(1, 0) * m.tensor().sigma(0, 0);
  SparseMatrix rhs = m.base().sigma(0, 0) * m.inc(1, 1);
  CHECK(lhs != rhs);
}

TEST_CASE("face relations of the homotopy pieces hold exactly") {
  for (int r = 1; r <= 3; ++r) {
    MoritaContext m(point_category(), r);
    for (int n = 0; n <= 2; ++n) {
      MoritaCertificate cert = presimplicial_homotopy_check(m, n);
      CHECK(has_check(cert, "d_0 h_0 = id"));
      CHECK(has_check(cert, "b h + h b = id - inc_1 tr"));
    }
  }
  MoritaContext mz(z2_group_category(), 2);
  for (int n = 0; n <= 2; ++n) presimplicial_homotopy_check(mz, n);
  MoritaContext md(dual_numbers_category(), 2);
  for (int n = 0; n <= 1; ++n) presimplicial_homotopy_check(md, n);
  MoritaContext mp(poset_chain_category(3), 2);
  for (int n = 0; n <= 2; ++n) presimplicial_homotopy_check(mp, n);
}

TEST_CASE("summed homotopy identity pinned as one matrix equation") {
  MoritaContext m(point_category(), 2);
  const int n = 2;
  int dim = m.tensor().basis(n).size();
  CHECK(dim == 64);  // (2x2 elementary pairs)^{n+1}
  SparseMatrix total = m.hbar_sum(n) * m.tensor().b(n) + m.tensor().b(n - 1) * m.hbar_sum(n - 1);
  SparseMatrix defect = SparseMatrix::identity(dim) - m.tr(n) * m.inc(1, n);
  CHECK(total == defect);
}

TEST_CASE("matrix amplification preserves cyclic cohomology") {
  MoritaContext m(point_category(), 2);
  int expect[3] = {1, 0, 1};
  for (int n = 0; n <= 2; ++n) {
    CHECK(cyclic_cohomology(m.base(), n).dim_cohomology == expect[n]);
    CHECK(cyclic_cohomology(m.tensor(), n).dim_cohomology == expect[n]);
  }
  MoritaCertificate cert = morita_cohomology_check(m, 2);
  CHECK(has_check(cert, "dim HC = 1 on both sides at level 0"));
  CHECK(has_check(cert, "dim HC = 0 on both sides at level 1"));
  CHECK(has_check(cert, "dim HC = 1 on both sides at level 2"));
  CHECK(has_check(cert, "base representatives exactly"));
  CHECK(has_check(cert, "tensor-side classes up to witnessed coboundaries"));

  MoritaContext mz(z2_group_category(), 2);
  morita_cohomology_check(mz, 1);
}

TEST_CASE("r = 1 amplification is an isomorphism on the nose") {
  MoritaContext m(dual_numbers_category(), 1);
  for (int n = 0; n <= 2; ++n) {
    int dim = m.base().basis(n).size();
    CHECK(m.tensor().basis(n).size() == dim);
    CHECK(m.inc(1, n) * m.tr(n) == SparseMatrix::identity(dim));
    CHECK(m.tr(n) * m.inc(1, n) == SparseMatrix::identity(dim));
  }
  morita_chain_maps(m, 1, 2);
  for (int n = 0; n <= 1; ++n) presimplicial_homotopy_check(m, n);
  morita_cohomology_check(m, 1);
}

TEST_CASE("conjugation pulls back to the identity on classes") {
  LinCategory M2 = tensor_matrix(point_category(), 2);
  NerveContext nctx(M2);

  // eta = id#E1_1 + 2 id#E2_2 conjugates E_12 to E_12/2: not the identity.
  AutFamily eta{{SparseVec{{0, Scalar(1)}, {3, Scalar(2)}}}};
  LinFunctor Phi = inner_automorphism(M2, eta);
  CHECK_FALSE(is_identity_functor(Phi));
  CHECK(Phi.apply(0, 0, sv_unit(1)) == sv_scaled(sv_unit(1), Scalar(mpq_class(1, 2))));

  MoritaCertificate cert = inner_identity_check(nctx, eta, 2);
  CHECK(cert.checks.size() == 3);

  // A central family conjugates trivially: the chain matrix is the identity.
  LinCategory Z = z2_group_category();
  NerveContext zctx(Z);
  AutFamily central{{SparseVec{{0, Scalar(2)}}}};
  LinFunctor Psi = inner_automorphism(Z, central);
  CHECK(is_identity_functor(Psi));
  for (int n = 0; n <= 2; ++n)
    CHECK(functor_chain_matrix(zctx, zctx, Psi, n) ==
          SparseMatrix::identity(zctx.basis(n).size()));
  inner_identity_check(zctx, central, 2);
}

TEST_CASE("coboundary witnesses compose along conjugations") {
  LinCategory M2 = tensor_matrix(point_category(), 2);
  NerveContext nctx(M2);
  AutFamily eta1{{SparseVec{{0, Scalar(1)}, {3, Scalar(2)}}}};
  AutFamily eta2{{SparseVec{{0, Scalar(1)}, {3, Scalar(3)}}}};
  LinFunctor Phi1 = inner_automorphism(M2, eta1);
  LinFunctor Phi2 = inner_automorphism(M2, eta2);

  const int n = 2;
  SparseMatrix M1 = functor_chain_matrix(nctx, nctx, Phi1, n);
  SparseMatrix M2n = functor_chain_matrix(nctx, nctx, Phi2, n);
  SparseMatrix M1low = functor_chain_matrix(nctx, nctx, Phi1, n - 1);

  CohomologyReport rep = cyclic_cohomology(nctx, n);
  REQUIRE(rep.dim_cohomology == 1);
  const Cochain& phi = rep.representatives.front();

  Cochain p1 = apply_op(M1, phi, n);
  Cochain p2 = apply_op(M2n, phi, n);
  Cochain p12 = apply_op(M1 * M2n, phi, n);

  ClassComparison c1 = class_equal(nctx, phi, p1);
  ClassComparison c2 = class_equal(nctx, phi, p2);
  REQUIRE(c1.equal);
  REQUIRE(c2.equal);

  // phi - (Phi2 Phi1)* phi = (phi - Phi2* phi) ∘ CN(Phi1) + (phi - Phi1* phi),
  // so pulling one witness back along Phi1 and adding the other witnesses the
  // composite conjugation.
  Cochain w{n - 1, sv_add(apply_op(M1low, c2.witness, n - 1).coords, c1.witness.coords)};
  Cochain bw = apply_op(nctx.b(n - 1), w, n);
  CHECK(bw.coords == sv_sub(phi.coords, p12.coords));
  // The composed witness stays in the cyclic subcomplex.
  Cochain tw = apply_op(nctx.tau(n - 1), w, n - 1);
  CHECK(tw.coords == sv_scaled(w.coords, Scalar(-1)));
}

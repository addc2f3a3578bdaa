#include "cychom/hopf.hpp"

#include <omp.h>

#include <array>
#include <exception>
#include <functional>
#include <set>
#include <tuple>
#include <unordered_map>
#include <utility>

namespace cychom {
namespace {

Scalar sign_of(int i) { return (i % 2 == 0) ? Scalar(1) : Scalar(-1); }

std::string at_level(int n) { return " at level " + std::to_string(n); }

// Row-parallel assembly with the usual exception capture.
SparseMatrix assemble_rows(int rows, int cols, ExecMode mode,
                           const std::function<SparseVec(int)>& row_of) {
  SparseMatrix M(rows, cols);
  if (mode == ExecMode::parallel) {
    std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic, 16)
    for (int k = 0; k < rows; ++k) {
      try {
        M.set_row(k, row_of(k));
      } catch (...) {
#pragma omp critical
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
  } else {
    for (int k = 0; k < rows; ++k) M.set_row(k, row_of(k));
  }
  return M;
}

std::vector<SparseVec> matrix_columns(const SparseMatrix& M) {
  std::vector<SparseVec> cols(M.cols());
  M.for_each([&](int r, int c, const Scalar& v) { cols[c].emplace_back(r, v); });
  for (auto& col : cols) sv_normalize(col);
  return cols;
}

SparseVec map_to_sv(const std::map<int, Scalar>& m) {
  SparseVec out;
  out.reserve(m.size());
  for (const auto& [i, c] : m)
    if (!c.is_zero()) out.emplace_back(i, c);
  return out;
}

int find_identity(const std::vector<std::vector<int>>& t) {
  const int n = static_cast<int>(t.size());
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = (t[e][a] == a && t[a][e] == a);
    if (ok) return e;
  }
  return -1;
}

std::vector<int> group_inverses(const std::vector<std::vector<int>>& t, int e) {
  const int n = static_cast<int>(t.size());
  std::vector<int> inv(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (t[a][b] == e && t[b][a] == e) {
        inv[a] = b;
        break;
      }
  return inv;
}

SparseVec local_to_global(const LinCategory& C, int x, int y, const SparseVec& local) {
  const auto& ids = C.hom(x, y);
  SparseVec out;
  out.reserve(local.size());
  for (const auto& [l, c] : local) out.emplace_back(ids[l], c);
  sv_normalize(out);
  return out;
}

SparseVec global_to_local(const LinCategory& C, int x, int y, const SparseVec& global) {
  const auto& ids = C.hom(x, y);
  std::unordered_map<int, int> pos;
  pos.reserve(ids.size());
  for (int l = 0; l < static_cast<int>(ids.size()); ++l) pos[ids[l]] = l;
  SparseVec out;
  for (const auto& [g, c] : global) {
    auto it = pos.find(g);
    if (it == pos.end()) throw IndexOutOfRange("coordinate outside the hom block");
    out.emplace_back(it->second, c);
  }
  sv_normalize(out);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Groups.
// ---------------------------------------------------------------------------

GroupTable trivial_group() {
  GroupTable G;
  G.names = {"e"};
  G.table = {{0}};
  return G;
}

GroupTable cyclic_group(int n) {
  if (n < 1) throw NotAGroup("cyclic order must be positive");
  GroupTable G;
  for (int a = 0; a < n; ++a)
    G.names.push_back(a == 0 ? "e" : (a == 1 ? "g" : "g" + std::to_string(a)));
  G.table.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) G.table[a][b] = (a + b) % n;
  return G;
}

GroupTable symmetric_group_3() {
  // Permutations of {0,1,2} in lexicographic one-line order.
  const std::array<std::array<int, 3>, 6> perms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  GroupTable G;
  G.names = {"e", "s021", "s102", "s120", "s201", "s210"};
  G.table.assign(6, std::vector<int>(6, -1));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c;
      for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
      for (int k = 0; k < 6; ++k)
        if (perms[k] == c) G.table[a][b] = k;
    }
  return G;
}

// ---------------------------------------------------------------------------
// Hopf algebra basics.
// ---------------------------------------------------------------------------

bool operator==(const HopfAlgebra& a, const HopfAlgebra& b) {
  return a.basis == b.basis && a.unit == b.unit && a.mult == b.mult && a.comult == b.comult &&
         a.counit == b.counit && a.antipode == b.antipode &&
         a.antipode_inverse == b.antipode_inverse;
}

Scalar hopf_counit(const HopfAlgebra& H, const SparseVec& x) {
  Scalar s(0);
  for (const auto& [a, c] : x) s += c * sv_get(H.counit, a);
  return s;
}

SparseVec hopf_mult(const HopfAlgebra& H, const SparseVec& x, const SparseVec& y) {
  SparseVec out;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) sv_axpy(out, ca * cb, H.mult[a][b]);
  return out;
}

SparseVec hopf_comult(const HopfAlgebra& H, const SparseVec& x) {
  SparseVec out;
  for (const auto& [a, c] : x) sv_axpy(out, c, H.comult[a]);
  return out;
}

bool is_cocommutative(const HopfAlgebra& H) {
  const int d = H.dim();
  for (int a = 0; a < d; ++a) {
    SparseVec swapped;
    for (const auto& [pq, c] : H.comult[a]) swapped.emplace_back((pq % d) * d + pq / d, c);
    sv_normalize(swapped);
    if (swapped != H.comult[a]) return false;
  }
  return true;
}

std::vector<std::pair<std::vector<int>, Scalar>> comult_iterate(const HopfAlgebra& H,
                                                                const SparseVec& x, int r) {
  const int d = H.dim();
  std::map<std::vector<int>, Scalar> acc;
  for (const auto& [a, c] : x) acc[{a}] += c;
  for (int step = 0; step < r; ++step) {
    std::map<std::vector<int>, Scalar> next;
    for (const auto& [t, c] : acc)
      for (const auto& [pq, c2] : H.comult[t.back()]) {
        std::vector<int> u = t;
        u.back() = pq / d;
        u.push_back(pq % d);
        next[u] += c * c2;
      }
    acc = std::move(next);
  }
  std::vector<std::pair<std::vector<int>, Scalar>> out;
  out.reserve(acc.size());
  for (auto& [t, c] : acc)
    if (!c.is_zero()) out.emplace_back(t, c);
  return out;
}

HopfAlgebra group_algebra(const GroupTable& G) {
  const int n = G.dim();
  if (n == 0) throw NotAGroup("empty carrier");
  if (static_cast<int>(G.table.size()) != n) throw NotAGroup("table size differs from the carrier");
  for (const auto& row : G.table) {
    if (static_cast<int>(row.size()) != n) throw NotAGroup("table rows have uneven length");
    for (int v : row)
      if (v < 0 || v >= n) throw NotAGroup("table entry outside the carrier");
  }
  {
    std::set<std::string> seen(G.names.begin(), G.names.end());
    if (static_cast<int>(seen.size()) != n) throw NotAGroup("duplicate element names");
  }
  const int e = find_identity(G.table);
  if (e < 0) throw NotAGroup("no identity element");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (G.table[G.table[a][b]][c] != G.table[a][G.table[b][c]])
          throw NotAGroup("associativity fails at (" + G.names[a] + ", " + G.names[b] + ", " +
                          G.names[c] + ")");
  const std::vector<int> inv = group_inverses(G.table, e);
  for (int a = 0; a < n; ++a)
    if (inv[a] < 0) throw NotAGroup("element '" + G.names[a] + "' has no inverse");

  HopfAlgebra H;
  H.basis = G.names;
  H.unit = sv_unit(e);
  H.mult.assign(n, std::vector<SparseVec>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) H.mult[a][b] = sv_unit(G.table[a][b]);
  H.comult.resize(n);
  for (int a = 0; a < n; ++a) H.comult[a] = sv_unit(a * n + a);
  for (int a = 0; a < n; ++a) H.counit.emplace_back(a, Scalar(1));
  std::vector<Triplet> ts;
  for (int a = 0; a < n; ++a) ts.push_back({inv[a], a, Scalar(1)});
  H.antipode = SparseMatrix::from_triplets(n, n, ts);
  H.antipode_inverse = H.antipode;
  return H;
}

HopfAlgebra sweedler_hopf() {
  // Basis order: 1, g, x, gx.
  HopfAlgebra H;
  H.basis = {"1", "g", "x", "gx"};
  H.unit = sv_unit(0);
  H.mult.assign(4, std::vector<SparseVec>(4));
  auto put = [&](int a, int b, int r, long coeff) {
    if (coeff != 0) H.mult[a][b] = {{r, Scalar(coeff)}};
  };
  for (int b = 0; b < 4; ++b) put(0, b, b, 1);
  put(1, 0, 1, 1);
  put(1, 1, 0, 1);
  put(1, 2, 3, 1);
  put(1, 3, 2, 1);
  put(2, 0, 2, 1);
  put(2, 1, 3, -1);
  put(3, 0, 3, 1);
  put(3, 1, 2, -1);
  H.comult.resize(4);
  H.comult[0] = sv_unit(0 * 4 + 0);
  H.comult[1] = sv_unit(1 * 4 + 1);
  H.comult[2] = {{1 * 4 + 2, Scalar(1)}, {2 * 4 + 0, Scalar(1)}};
  H.comult[3] = {{0 * 4 + 3, Scalar(1)}, {3 * 4 + 1, Scalar(1)}};
  H.counit = {{0, Scalar(1)}, {1, Scalar(1)}};
  H.antipode = SparseMatrix::from_triplets(
      4, 4, {{0, 0, Scalar(1)}, {1, 1, Scalar(1)}, {3, 2, Scalar(-1)}, {2, 3, Scalar(1)}});
  H.antipode_inverse = SparseMatrix::from_triplets(
      4, 4, {{0, 0, Scalar(1)}, {1, 1, Scalar(1)}, {3, 2, Scalar(1)}, {2, 3, Scalar(-1)}});
  return H;
}

// ---------------------------------------------------------------------------
// Coefficient modules and module categories.
// ---------------------------------------------------------------------------

SAYDModule trivial_sayd(const HopfAlgebra& H) {
  SAYDModule M;
  M.hopf = H;
  M.basis = {"1"};
  for (int h = 0; h < H.dim(); ++h) {
    const Scalar e = sv_get(H.counit, h);
    std::vector<Triplet> ts;
    if (!e.is_zero()) ts.push_back({0, 0, e});
    M.action.push_back(SparseMatrix::from_triplets(1, 1, ts));
  }
  SparseVec co;
  for (const auto& [h, c] : H.unit) co.emplace_back(h, c);
  sv_normalize(co);
  M.coaction.push_back(co);
  return M;
}

SAYDModule conjugation_sayd(const GroupTable& G) {
  SAYDModule M;
  M.hopf = group_algebra(G);
  M.basis = G.names;
  const int n = G.dim();
  const int e = find_identity(G.table);
  const std::vector<int> inv = group_inverses(G.table, e);
  for (int h = 0; h < n; ++h) {
    std::vector<Triplet> ts;
    for (int m = 0; m < n; ++m) ts.push_back({G.table[G.table[inv[h]][m]][h], m, Scalar(1)});
    M.action.push_back(SparseMatrix::from_triplets(n, n, ts));
  }
  M.coaction.resize(n);
  for (int m = 0; m < n; ++m) M.coaction[m] = sv_unit(m * n + m);
  return M;
}

HCategory trivial_hcategory(const HopfAlgebra& H, const LinCategory& C) {
  HCategory D;
  D.hopf = H;
  D.cat = C;
  const int N = C.num_morphisms();
  for (int h = 0; h < H.dim(); ++h) {
    const Scalar e = sv_get(H.counit, h);
    std::vector<Triplet> ts;
    if (!e.is_zero())
      for (int f = 0; f < N; ++f) ts.push_back({f, f, e});
    D.action.push_back(SparseMatrix::from_triplets(N, N, ts));
  }
  return D;
}

HCategory conjugation_hcategory(const GroupTable& G) {
  HCategory D;
  D.hopf = group_algebra(G);
  const int n = G.dim();
  const int e = find_identity(G.table);
  const std::vector<int> inv = group_inverses(G.table, e);
  LinCategory C;
  const int pt = C.add_object("pt");
  for (const std::string& nm : G.names) C.add_morphism(nm, pt, pt);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) C.set_composition(a, b, sv_unit(G.table[a][b]));
  C.set_identity(pt, sv_unit(e));
  D.cat = std::move(C);
  for (int h = 0; h < n; ++h) {
    std::vector<Triplet> ts;
    for (int a = 0; a < n; ++a) ts.push_back({G.table[G.table[h][a]][inv[h]], a, Scalar(1)});
    D.action.push_back(SparseMatrix::from_triplets(n, n, ts));
  }
  return D;
}

HCategory matrix_amplification(const HCategory& D, int r, MatrixTensorInfo* info_out) {
  MatrixTensorInfo info;
  HCategory out;
  out.hopf = D.hopf;
  out.cat = tensor_matrix(D.cat, r, &info);
  const int N = out.cat.num_morphisms();
  for (int h = 0; h < D.hopf.dim(); ++h) {
    const std::vector<SparseVec> cols = matrix_columns(D.action[h]);
    std::vector<Triplet> ts;
    for (int t = 0; t < N; ++t) {
      const auto& part = info.decompose[t];
      for (const auto& [f2, c] : cols[part.f])
        ts.push_back({info.pair_id[f2][part.i * r + part.j], t, c});
    }
    out.action.push_back(SparseMatrix::from_triplets(N, N, std::move(ts)));
  }
  if (info_out) *info_out = info;
  return out;
}

HCategory tensor_hcategory(const HCategory& A, const HCategory& B, CategoryTensorInfo* info_out) {
  if (!(A.hopf == B.hopf))
    throw DimensionMismatch("tensor factors are declared over different Hopf algebras");
  if (!is_cocommutative(A.hopf)) throw NotCocommutative();
  const HopfAlgebra& H = A.hopf;
  const int d = H.dim();
  CategoryTensorInfo info;
  HCategory out;
  out.hopf = H;
  out.cat = tensor_category(A.cat, B.cat, &info);
  const int N = out.cat.num_morphisms();
  std::vector<std::vector<SparseVec>> colsA, colsB;
  colsA.reserve(d);
  colsB.reserve(d);
  for (int h = 0; h < d; ++h) {
    colsA.push_back(matrix_columns(A.action[h]));
    colsB.push_back(matrix_columns(B.action[h]));
  }
  for (int h = 0; h < d; ++h) {
    std::vector<Triplet> ts;
    for (int t = 0; t < N; ++t) {
      const auto& part = info.decompose[t];
      for (const auto& [pq, c] : H.comult[h])
        for (const auto& [f2, cf] : colsA[pq / d][part.f])
          for (const auto& [g2, cg] : colsB[pq % d][part.g])
            ts.push_back({info.pair_id[f2][g2], t, c * cf * cg});
    }
    out.action.push_back(SparseMatrix::from_triplets(N, N, std::move(ts)));
  }
  if (info_out) *info_out = info;
  return out;
}

// ---------------------------------------------------------------------------
// Axiom validation.
// ---------------------------------------------------------------------------

ValidationReport validate_hopf(const HopfAlgebra& H) {
  ValidationReport rep;
  const int d = H.dim();
  if (d == 0) {
    rep.fail("empty basis");
    return rep;
  }
  if (static_cast<int>(H.mult.size()) != d || static_cast<int>(H.comult.size()) != d ||
      H.antipode.rows() != d || H.antipode.cols() != d || H.antipode_inverse.rows() != d ||
      H.antipode_inverse.cols() != d) {
    rep.fail("structure tables have the wrong shape");
    return rep;
  }
  for (const auto& row : H.mult) {
    if (static_cast<int>(row.size()) != d) {
      rep.fail("multiplication table has the wrong shape");
      return rep;
    }
    for (const auto& v : row)
      for (const auto& [i, c] : v)
        if (i < 0 || i >= d) {
          rep.fail("multiplication entry outside the basis");
          return rep;
        }
  }
  for (const auto& v : H.comult)
    for (const auto& [i, c] : v)
      if (i < 0 || i >= d * d) {
        rep.fail("comultiplication entry outside the pair range");
        return rep;
      }
  for (const auto& [i, c] : H.unit)
    if (i < 0 || i >= d) {
      rep.fail("unit entry outside the basis");
      return rep;
    }
  for (const auto& [i, c] : H.counit)
    if (i < 0 || i >= d) {
      rep.fail("counit entry outside the basis");
      return rep;
    }

  const auto nm = [&](int a) { return H.basis[a]; };
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        if (hopf_mult(H, H.mult[a][b], sv_unit(c)) != hopf_mult(H, sv_unit(a), H.mult[b][c]))
          rep.fail("associativity fails at (" + nm(a) + ", " + nm(b) + ", " + nm(c) + ")");
  for (int a = 0; a < d; ++a) {
    if (hopf_mult(H, H.unit, sv_unit(a)) != sv_unit(a)) rep.fail("left unit law fails at " + nm(a));
    if (hopf_mult(H, sv_unit(a), H.unit) != sv_unit(a))
      rep.fail("right unit law fails at " + nm(a));
  }
  for (int a = 0; a < d; ++a) {
    std::map<std::tuple<int, int, int>, Scalar> lhs, rhs;
    for (const auto& [pq, c] : H.comult[a]) {
      const int p = pq / d, q = pq % d;
      for (const auto& [rs, c2] : H.comult[p]) lhs[{rs / d, rs % d, q}] += c * c2;
      for (const auto& [rs, c2] : H.comult[q]) rhs[{p, rs / d, rs % d}] += c * c2;
    }
    for (auto& [k, v] : lhs) rhs[k] -= v;
    for (const auto& [k, v] : rhs)
      if (!v.is_zero()) {
        rep.fail("coassociativity fails at " + nm(a));
        break;
      }
  }
  for (int a = 0; a < d; ++a) {
    SparseVec left, right;
    for (const auto& [pq, c] : H.comult[a]) {
      sv_axpy(left, c * sv_get(H.counit, pq / d), sv_unit(pq % d));
      sv_axpy(right, c * sv_get(H.counit, pq % d), sv_unit(pq / d));
    }
    if (left != sv_unit(a)) rep.fail("left counit law fails at " + nm(a));
    if (right != sv_unit(a)) rep.fail("right counit law fails at " + nm(a));
  }
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      std::map<int, Scalar> prod;
      for (const auto& [p1q1, c1] : H.comult[a])
        for (const auto& [p2q2, c2] : H.comult[b])
          for (const auto& [pp, cp] : H.mult[p1q1 / d][p2q2 / d])
            for (const auto& [qq, cq] : H.mult[p1q1 % d][p2q2 % d])
              prod[pp * d + qq] += c1 * c2 * cp * cq;
      if (map_to_sv(prod) != hopf_comult(H, H.mult[a][b]))
        rep.fail("comultiplication is not multiplicative at (" + nm(a) + ", " + nm(b) + ")");
      if (hopf_counit(H, H.mult[a][b]) != sv_get(H.counit, a) * sv_get(H.counit, b))
        rep.fail("counit is not multiplicative at (" + nm(a) + ", " + nm(b) + ")");
    }
  {
    std::map<int, Scalar> uu;
    for (const auto& [p, cp] : H.unit)
      for (const auto& [q, cq] : H.unit) uu[p * d + q] += cp * cq;
    if (map_to_sv(uu) != hopf_comult(H, H.unit))
      rep.fail("comultiplication does not preserve the unit");
    if (hopf_counit(H, H.unit) != Scalar(1)) rep.fail("counit does not preserve the unit");
  }
  for (int a = 0; a < d; ++a) {
    SparseVec left, right;
    for (const auto& [pq, c] : H.comult[a]) {
      sv_axpy(left, c, hopf_mult(H, H.antipode.col(pq / d), sv_unit(pq % d)));
      sv_axpy(right, c, hopf_mult(H, sv_unit(pq / d), H.antipode.col(pq % d)));
    }
    const SparseVec target = sv_scaled(H.unit, sv_get(H.counit, a));
    if (left != target) rep.fail("antipode convolution identity fails at " + nm(a) + " (left)");
    if (right != target) rep.fail("antipode convolution identity fails at " + nm(a) + " (right)");
  }
  if (H.antipode * H.antipode_inverse != SparseMatrix::identity(d))
    rep.fail("antipode times its declared inverse is not the identity");
  if (H.antipode_inverse * H.antipode != SparseMatrix::identity(d))
    rep.fail("declared inverse times the antipode is not the identity");
  return rep;
}

ValidationReport validate_sayd(const HopfAlgebra& H, const SAYDModule& M) {
  ValidationReport rep;
  const int d = H.dim();
  const int dm = M.dim();
  if (!(M.hopf == H)) rep.fail("module is declared over a different Hopf algebra");
  if (static_cast<int>(M.action.size()) != d || static_cast<int>(M.coaction.size()) != dm) {
    rep.fail("action or coaction table has the wrong shape");
    return rep;
  }
  for (const auto& A : M.action)
    if (A.rows() != dm || A.cols() != dm) {
      rep.fail("action matrix has the wrong shape");
      return rep;
    }
  for (const auto& v : M.coaction)
    for (const auto& [i, c] : v)
      if (i < 0 || i >= d * dm) {
        rep.fail("coaction entry outside the pair range");
        return rep;
      }

  std::vector<std::vector<SparseVec>> acols;
  acols.reserve(d);
  for (int h = 0; h < d; ++h) acols.push_back(matrix_columns(M.action[h]));
  const std::vector<SparseVec> scols = matrix_columns(H.antipode);

  {
    SparseMatrix u(dm, dm);
    for (const auto& [h, c] : H.unit) u = u + M.action[h].scaled(c);
    if (u != SparseMatrix::identity(dm)) rep.fail("the unit does not act as the identity");
  }
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      SparseMatrix lhs(dm, dm);
      for (const auto& [e2, c] : H.mult[a][b]) lhs = lhs + M.action[e2].scaled(c);
      if (lhs != M.action[b] * M.action[a])
        rep.fail("right module law fails at (" + H.basis[a] + ", " + H.basis[b] + ")");
    }
  for (int m = 0; m < dm; ++m) {
    SparseVec acc;
    for (const auto& [pair, c] : M.coaction[m])
      sv_axpy(acc, c * sv_get(H.counit, pair / dm), sv_unit(pair % dm));
    if (acc != sv_unit(m)) rep.fail("comodule counit law fails at " + M.basis[m]);
  }
  for (int m = 0; m < dm; ++m) {
    std::map<std::tuple<int, int, int>, Scalar> lhs, rhs;
    for (const auto& [pair, c] : M.coaction[m]) {
      const int h = pair / dm, m2 = pair % dm;
      for (const auto& [rs, c2] : H.comult[h]) lhs[{rs / d, rs % d, m2}] += c * c2;
      for (const auto& [pair2, c2] : M.coaction[m2]) rhs[{h, pair2 / dm, pair2 % dm}] += c * c2;
    }
    for (auto& [k, v] : lhs) rhs[k] -= v;
    for (const auto& [k, v] : rhs)
      if (!v.is_zero()) {
        rep.fail("comodule coassociativity fails at " + M.basis[m]);
        break;
      }
  }
  for (int m = 0; m < dm; ++m)
    for (int h = 0; h < d; ++h) {
      std::map<std::pair<int, int>, Scalar> lhs, rhs;
      for (const auto& [m2, cm] : acols[h][m])
        for (const auto& [pair, c] : M.coaction[m2]) lhs[{pair / dm, pair % dm}] += cm * c;
      for (const auto& [triple, g] : comult_iterate(H, sv_unit(h), 2))
        for (const auto& [pair, c] : M.coaction[m]) {
          const SparseVec hp = hopf_mult(
              H, hopf_mult(H, scols[triple[2]], sv_unit(pair / dm)), sv_unit(triple[0]));
          const SparseVec& mp = acols[triple[1]][pair % dm];
          for (const auto& [hh, ch] : hp)
            for (const auto& [mm, cmm] : mp) rhs[{hh, mm}] += g * c * ch * cmm;
        }
      for (auto& [k, v] : lhs) rhs[k] -= v;
      for (const auto& [k, v] : rhs)
        if (!v.is_zero()) {
          rep.fail("anti-Yetter-Drinfeld compatibility fails at (" + M.basis[m] + ", " +
                   H.basis[h] + ")");
          break;
        }
    }
  for (int m = 0; m < dm; ++m) {
    SparseVec acc;
    for (const auto& [pair, c] : M.coaction[m]) sv_axpy(acc, c, acols[pair / dm][pair % dm]);
    if (acc != sv_unit(m)) rep.fail("stability fails at " + M.basis[m]);
  }
  return rep;
}

ValidationReport validate_hcategory(const HopfAlgebra& H, const HCategory& D) {
  ValidationReport rep;
  const int d = H.dim();
  const LinCategory& C = D.cat;
  const int N = C.num_morphisms();
  if (!(D.hopf == H)) rep.fail("category is declared over a different Hopf algebra");
  if (static_cast<int>(D.action.size()) != d) {
    rep.fail("action table has the wrong shape");
    return rep;
  }
  for (const auto& A : D.action)
    if (A.rows() != N || A.cols() != N) {
      rep.fail("action matrix has the wrong shape");
      return rep;
    }

  std::vector<std::vector<SparseVec>> acols;
  acols.reserve(d);
  for (int h = 0; h < d; ++h) acols.push_back(matrix_columns(D.action[h]));

  for (int h = 0; h < d && rep.ok; ++h)
    for (int f = 0; f < N && rep.ok; ++f)
      for (const auto& [f2, c] : acols[h][f])
        if (C.mor(f2).src != C.mor(f).src || C.mor(f2).dst != C.mor(f).dst) {
          rep.fail("action of " + H.basis[h] + " does not preserve the hom block of '" +
                   C.mor(f).name + "'");
          break;
        }
  if (!rep.ok) return rep;

  {
    SparseMatrix u(N, N);
    for (const auto& [h, c] : H.unit) u = u + D.action[h].scaled(c);
    if (u != SparseMatrix::identity(N)) rep.fail("the unit does not act as the identity");
  }
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      SparseMatrix lhs(N, N);
      for (const auto& [e2, c] : H.mult[a][b]) lhs = lhs + D.action[e2].scaled(c);
      if (lhs != D.action[a] * D.action[b])
        rep.fail("left module law fails at (" + H.basis[a] + ", " + H.basis[b] + ")");
    }
  if (!C.is_semicategory())
    for (int x = 0; x < C.num_objects(); ++x) {
      const SparseVec idg = local_to_global(C, x, x, C.identity_coords(x));
      for (int h = 0; h < d; ++h)
        if (D.action[h].apply(idg) != sv_scaled(idg, sv_get(H.counit, h)))
          rep.fail("action of " + H.basis[h] + " does not rescale the identity at object '" +
                   C.object_name(x) + "' by its counit");
    }
  for (int g = 0; g < N; ++g)
    for (int f = 0; f < N; ++f) {
      if (C.mor(g).src != C.mor(f).dst) continue;
      const int x = C.mor(f).src, y = C.mor(f).dst, z = C.mor(g).dst;
      const SparseVec comp_global = local_to_global(C, x, z, C.compose_basis(g, f));
      for (int h = 0; h < d; ++h) {
        SparseVec rhs_local;
        for (const auto& [pq, c] : H.comult[h]) {
          const SparseVec gl = global_to_local(C, y, z, acols[pq / d][g]);
          const SparseVec fl = global_to_local(C, x, y, acols[pq % d][f]);
          sv_axpy(rhs_local, c, C.compose_coords(gl, y, z, fl, x));
        }
        if (global_to_local(C, x, z, D.action[h].apply(comp_global)) != rhs_local) {
          rep.fail("composition compatibility fails for " + H.basis[h] + " at ('" +
                   C.mor(g).name + "', '" + C.mor(f).name + "')");
          break;
        }
      }
    }
  return rep;
}

ValidationReport validate_hopf_inputs(const HopfAlgebra& H, const SAYDModule& M,
                                      const HCategory& D) {
  ValidationReport rep;
  const auto merge = [&](const ValidationReport& r, const std::string& prefix) {
    for (const auto& v : r.violations) rep.fail(prefix + v);
  };
  merge(validate_hopf(H), "hopf: ");
  if (!(M.hopf == H))
    rep.fail("coefficients: declared over a different Hopf algebra");
  else
    merge(validate_sayd(H, M), "coefficients: ");
  if (!(D.hopf == H))
    rep.fail("category: declared over a different Hopf algebra");
  else
    merge(validate_hcategory(H, D), "category: ");
  return rep;
}

// ---------------------------------------------------------------------------
// Diagonal nerve action.
// ---------------------------------------------------------------------------

SparseMatrix nerve_diagonal_action(NerveContext& nctx, const HCategory& D, int n, int h) {
  if (h < 0 || h >= static_cast<int>(D.action.size()))
    throw IndexOutOfRange("Hopf basis index for the nerve action");
  const NerveBasis& B = nctx.basis(n);
  const int dim = B.size();
  const HopfAlgebra& H = D.hopf;
  std::vector<std::vector<SparseVec>> cols;
  cols.reserve(H.dim());
  for (int u = 0; u < H.dim(); ++u) cols.push_back(matrix_columns(D.action[u]));
  const auto terms = comult_iterate(H, sv_unit(h), n);
  const auto row_of = [&](int k) {
    const NerveTuple& t = B.tuple(k);
    std::map<int, Scalar> acc;
    for (const auto& [hs, g] : terms) {
      std::vector<std::pair<NerveTuple, Scalar>> partial{{NerveTuple{}, g}};
      for (int s = 0; s <= n; ++s) {
        std::vector<std::pair<NerveTuple, Scalar>> next;
        for (const auto& [pt, pc] : partial)
          for (const auto& [f2, c] : cols[hs[s]][t[s]]) {
            NerveTuple u = pt;
            u.push_back(f2);
            next.emplace_back(std::move(u), pc * c);
          }
        partial = std::move(next);
        if (partial.empty()) break;
      }
      for (const auto& [u, c] : partial) acc[B.index_of(u)] += c;
    }
    return map_to_sv(acc);
  };
  return assemble_rows(dim, dim, nctx.mode(), row_of);
}

// ---------------------------------------------------------------------------
// HopfNerveContext.
// ---------------------------------------------------------------------------

HopfNerveContext::HopfNerveContext(const HopfAlgebra& H, const SAYDModule& M, const HCategory& D,
                                   long long limit, ExecMode mode)
    : H_(H), M_(M), D_(D), limit_(limit), mode_(mode), nerve_(D.cat, limit, mode) {
  if (!(M_.hopf == H_))
    throw DimensionMismatch("coefficient module is declared over a different Hopf algebra");
  if (!(D_.hopf == H_))
    throw DimensionMismatch("module category is declared over a different Hopf algebra");
  const int d = H_.dim();
  const int dm = M_.dim();
  const int N = D_.cat.num_morphisms();
  if (static_cast<int>(M_.action.size()) != d || static_cast<int>(M_.coaction.size()) != dm)
    throw DimensionMismatch("coefficient tables have the wrong shape");
  for (const auto& A : M_.action)
    if (A.rows() != dm || A.cols() != dm)
      throw DimensionMismatch("coefficient action matrix has the wrong shape");
  if (static_cast<int>(D_.action.size()) != d)
    throw DimensionMismatch("category action table has the wrong shape");
  for (const auto& A : D_.action)
    if (A.rows() != N || A.cols() != N)
      throw DimensionMismatch("category action matrix has the wrong shape");
  if (H_.antipode.rows() != d || H_.antipode.cols() != d || H_.antipode_inverse.rows() != d ||
      H_.antipode_inverse.cols() != d)
    throw DimensionMismatch("antipode matrices have the wrong shape");

  act_m_cols_.reserve(d);
  act_d_cols_.reserve(d);
  for (int h = 0; h < d; ++h) act_m_cols_.push_back(matrix_columns(M_.action[h]));
  for (int h = 0; h < d; ++h) act_d_cols_.push_back(matrix_columns(D_.action[h]));
  antipode_cols_ = matrix_columns(H_.antipode);
  antipode_inv_cols_ = matrix_columns(H_.antipode_inverse);
  comult_pairs_.resize(d);
  for (int h = 0; h < d; ++h)
    for (const auto& [pq, c] : H_.comult[h]) {
      if (pq < 0 || pq >= d * d) throw IndexOutOfRange("comultiplication entry");
      comult_pairs_[h].push_back({pq / d, pq % d, c});
    }
  coaction_terms_.resize(dm);
  for (int m = 0; m < dm; ++m)
    for (const auto& [pair, c] : M_.coaction[m]) {
      if (pair < 0 || pair >= d * dm) throw IndexOutOfRange("coaction entry");
      coaction_terms_[m].push_back({pair / dm, pair % dm, c});
    }
}

int HopfNerveContext::space_dim(int n) {
  const long long nerve_dim = nerve_.basis(n).size();
  const long long total = static_cast<long long>(coefficient_dim()) * nerve_dim;
  if (total > limit_) throw SizeLimitExceeded(total);
  return static_cast<int>(total);
}

int HopfNerveContext::index_of(int n, int m, int k) { return m * nerve_.basis(n).size() + k; }

SparseMatrix HopfNerveContext::assemble(int rows, int cols,
                                        const std::function<SparseVec(int)>& row_of) {
  return assemble_rows(rows, cols, mode_, row_of);
}

const SparseMatrix& HopfNerveContext::nerve_action(int n, int h) {
  const auto key = std::make_pair(n, h);
  auto it = nerve_action_cache_.find(key);
  if (it != nerve_action_cache_.end()) return it->second;
  return nerve_action_cache_.emplace(key, nerve_diagonal_action(nerve_, D_, n, h)).first->second;
}

const SparseMatrix& HopfNerveContext::right_action(int n, int h) {
  const auto key = std::make_pair(n, h);
  auto it = right_action_cache_.find(key);
  if (it != right_action_cache_.end()) return it->second;
  const int nerve_dim = nerve_.basis(n).size();
  const int dim = space_dim(n);
  for (int u = 0; u < H_.dim(); ++u) nerve_action(n, u);
  const auto row_of = [this, n, nerve_dim, h](int rk) {
    const int m = rk / nerve_dim, k = rk % nerve_dim;
    std::map<int, Scalar> acc;
    for (const ComultTerm& ct : comult_pairs_[h])
      for (const auto& [m2, cm] : act_m_cols_[ct.left][m])
        for (const auto& [u, cu] : antipode_cols_[ct.right]) {
          const SparseVec& img = nerve_action_cache_.at({n, u}).row(k);
          for (const auto& [k2, ck] : img) acc[m2 * nerve_dim + k2] += ct.coeff * cm * cu * ck;
        }
    return map_to_sv(acc);
  };
  return right_action_cache_.emplace(key, assemble_rows(dim, dim, mode_, row_of)).first->second;
}

std::vector<HopfNerveContext::TwistTerm> HopfNerveContext::twist_last_slot(int n, int m, int k) {
  const NerveTuple& t = nerve_.basis(n).tuple(k);
  std::vector<TwistTerm> out;
  for (const CoactTerm& ca : coaction_terms_[m])
    for (const auto& [u, cu] : antipode_inv_cols_[ca.h])
      for (const auto& [g2, cg] : act_d_cols_[u][t[n]]) out.push_back({ca.m, g2, ca.coeff * cu * cg});
  return out;
}

const SparseMatrix& HopfNerveContext::delta(int n, int i) {
  if (n < 1 || i < 0 || i > n) throw IndexOutOfRange("face operator index");
  const auto key = std::make_pair(n, i);
  auto it = delta_cache_.find(key);
  if (it != delta_cache_.end()) return it->second;
  const NerveBasis& Bn = nerve_.basis(n);
  const NerveBasis& Blow = nerve_.basis(n - 1);
  const int nerve_dim = Bn.size();
  const int low_dim = Blow.size();
  const int rows = space_dim(n);
  const int cols = coefficient_dim() * low_dim;
  std::function<SparseVec(int)> row_of;
  if (i < n) {
    row_of = [this, n, i, nerve_dim, low_dim](int rk) {
      const int m = rk / nerve_dim, k = rk % nerve_dim;
      const SparseVec face = nerve_.chain_face(n, i, k);
      SparseVec out;
      out.reserve(face.size());
      for (const auto& [k2, c] : face) out.emplace_back(m * low_dim + k2, c);
      return out;
    };
  } else {
    const LinCategory& C = D_.cat;
    row_of = [this, &Bn, &Blow, &C, n, nerve_dim, low_dim](int rk) {
      const int m = rk / nerve_dim, k = rk % nerve_dim;
      const NerveTuple& t = Bn.tuple(k);
      std::map<int, Scalar> acc;
      for (const TwistTerm& tt : twist_last_slot(n, m, k)) {
        const SparseVec& comp = C.compose_basis(tt.g, t[0]);
        const auto& space = C.hom(C.mor(t[0]).src, C.mor(tt.g).dst);
        for (const auto& [l, cc] : comp) {
          NerveTuple u;
          u.reserve(t.size() - 1);
          u.push_back(space[l]);
          u.insert(u.end(), t.begin() + 1, t.end() - 1);
          acc[tt.m0 * low_dim + Blow.index_of(u)] += tt.coeff * cc;
        }
      }
      return map_to_sv(acc);
    };
  }
  return delta_cache_.emplace(key, assemble_rows(rows, cols, mode_, row_of)).first->second;
}

const SparseMatrix& HopfNerveContext::sigma(int n, int i) {
  if (n < 0 || i < 0 || i > n) throw IndexOutOfRange("degeneracy operator index");
  if (D_.cat.is_semicategory()) throw SemicategoryHasNoIdentities();
  const auto key = std::make_pair(n, i);
  auto it = sigma_cache_.find(key);
  if (it != sigma_cache_.end()) return it->second;
  const int nerve_dim = nerve_.basis(n).size();
  const int high_dim = nerve_.basis(n + 1).size();
  const int rows = space_dim(n);
  const int cols = coefficient_dim() * high_dim;
  const auto row_of = [this, n, i, nerve_dim, high_dim](int rk) {
    const int m = rk / nerve_dim, k = rk % nerve_dim;
    const SparseVec deg = nerve_.chain_degeneracy(n, i, k);
    SparseVec out;
    out.reserve(deg.size());
    for (const auto& [k2, c] : deg) out.emplace_back(m * high_dim + k2, c);
    return out;
  };
  return sigma_cache_.emplace(key, assemble_rows(rows, cols, mode_, row_of)).first->second;
}

const SparseMatrix& HopfNerveContext::tau(int n) {
  auto it = tau_cache_.find(n);
  if (it != tau_cache_.end()) return it->second;
  const NerveBasis& Bn = nerve_.basis(n);
  const int nerve_dim = Bn.size();
  const int dim = space_dim(n);
  const auto row_of = [this, &Bn, n, nerve_dim](int rk) {
    const int m = rk / nerve_dim, k = rk % nerve_dim;
    const NerveTuple& t = Bn.tuple(k);
    std::map<int, Scalar> acc;
    for (const TwistTerm& tt : twist_last_slot(n, m, k)) {
      NerveTuple u;
      u.reserve(t.size());
      u.push_back(tt.g);
      u.insert(u.end(), t.begin(), t.end() - 1);
      acc[tt.m0 * nerve_dim + Bn.index_of(u)] += tt.coeff;
    }
    return map_to_sv(acc);
  };
  return tau_cache_.emplace(n, assemble_rows(dim, dim, mode_, row_of)).first->second;
}

SparseMatrix HopfNerveContext::b(int n) {
  SparseMatrix M(space_dim(n + 1), space_dim(n));
  for (int i = 0; i <= n + 1; ++i) M = M + delta(n + 1, i).scaled(sign_of(i));
  return M;
}

SparseMatrix HopfNerveContext::b_prime(int n) {
  SparseMatrix M(space_dim(n + 1), space_dim(n));
  for (int i = 0; i <= n; ++i) M = M + delta(n + 1, i).scaled(sign_of(i));
  return M;
}

SparseMatrix HopfNerveContext::lambda(int n) { return tau(n).scaled(sign_of(n)); }

const SparseMatrix& HopfNerveContext::equivariant_basis(int n) {
  auto it = equivariant_cache_.find(n);
  if (it != equivariant_cache_.end()) return it->second;
  const int dim = space_dim(n);
  SparseMatrix stack(0, dim);
  for (int h = 0; h < H_.dim(); ++h) {
    SparseMatrix block = right_action(n, h);
    const Scalar e = sv_get(H_.counit, h);
    if (!e.is_zero()) block = block - SparseMatrix::identity(dim).scaled(e);
    stack = SparseMatrix::vstack(stack, block);
  }
  return equivariant_cache_.emplace(n, kernel_basis(stack, mode_)).first->second;
}

const HopfNerveContext::QuotientData& HopfNerveContext::quotient(int n) {
  auto it = quotient_cache_.find(n);
  if (it != quotient_cache_.end()) return it->second;
  const int nerve_dim = nerve_.basis(n).size();
  const int dim = space_dim(n);
  const int dm = coefficient_dim();
  const int dh = H_.dim();
  for (int u = 0; u < dh; ++u) nerve_action(n, u);
  const long long rows_ll = static_cast<long long>(dm) * dh * nerve_dim;
  if (rows_ll > limit_ * static_cast<long long>(dh)) throw SizeLimitExceeded(rows_ll);
  const int rows = static_cast<int>(rows_ll);
  const auto row_of = [this, n, nerve_dim, dh](int idx) {
    const int k = idx % nerve_dim;
    const int rest = idx / nerve_dim;
    const int h = rest % dh;
    const int m = rest / dh;
    std::map<int, Scalar> acc;
    for (const auto& [m2, cm] : act_m_cols_[h][m]) acc[m2 * nerve_dim + k] += cm;
    const SparseVec& img = nerve_action_cache_.at({n, h}).row(k);
    for (const auto& [k2, ck] : img) acc[m * nerve_dim + k2] -= ck;
    return map_to_sv(acc);
  };
  QuotientData qd;
  qd.relations = assemble_rows(rows, dim, mode_, row_of);
  RowEchelon ech(qd.relations, 0, mode_);
  qd.section = ech.free_cols();
  qd.projection = ech.kernel_basis().transpose();
  return quotient_cache_.emplace(n, std::move(qd)).first->second;
}

SparseMatrix HopfNerveContext::equivariant_restriction(const SparseMatrix& full, int rows_level,
                                                       int cols_level) {
  const SparseMatrix& Kr = equivariant_basis(rows_level);
  const SparseMatrix& Kc = equivariant_basis(cols_level);
  if (full.rows() != Kr.rows() || full.cols() != Kc.rows())
    throw DimensionMismatch("structure matrix shape disagrees with the stated levels");
  auto X = linear_solve_multi(Kr, full * Kc, mode_);
  if (!X)
    throw VerificationFailed("the equivariant functionals are not preserved by the structure map");
  return *X;
}

SparseMatrix HopfNerveContext::quotient_map(const SparseMatrix& full, int rows_level,
                                            int cols_level) {
  const QuotientData& qr = quotient(rows_level);
  const QuotientData& qc = quotient(cols_level);
  if (full.rows() != qr.relations.cols() || full.cols() != qc.relations.cols())
    throw DimensionMismatch("structure matrix shape disagrees with the stated levels");
  const SparseMatrix KcT = qc.projection.transpose();
  if (!((qr.relations * full) * KcT).is_zero())
    throw VerificationFailed("the coinvariant relations do not descend along the structure map");
  SparseMatrix sel(static_cast<int>(qr.section.size()), full.cols());
  for (int j = 0; j < static_cast<int>(qr.section.size()); ++j)
    sel.set_row(j, full.row(qr.section[j]));
  return sel * KcT;
}

// ---------------------------------------------------------------------------
// Identity families on a window around one level.
// ---------------------------------------------------------------------------

namespace {

enum class Kind { full, equivariant, quotient };

// Uniform access to the structure maps in full, equivariant-restricted, or
// coinvariant-quotient coordinates; the identity equations below have the
// same matrix form in all three.
struct OpsProvider {
  HopfNerveContext& ctx;
  Kind kind;
  std::string label;
  std::map<std::pair<int, int>, SparseMatrix> dcache, scache;
  std::map<int, SparseMatrix> tcache;

  SparseMatrix restricted(const SparseMatrix& full, int rl, int cl) {
    switch (kind) {
      case Kind::full:
        return full;
      case Kind::equivariant:
        return ctx.equivariant_restriction(full, rl, cl);
      case Kind::quotient:
        return ctx.quotient_map(full, rl, cl);
    }
    return full;
  }
  int dim(int n) {
    switch (kind) {
      case Kind::full:
        return ctx.space_dim(n);
      case Kind::equivariant:
        return ctx.equivariant_basis(n).cols();
      case Kind::quotient:
        return static_cast<int>(ctx.quotient(n).section.size());
    }
    return 0;
  }
  const SparseMatrix& D(int n, int i) {
    const auto key = std::make_pair(n, i);
    auto it = dcache.find(key);
    if (it == dcache.end()) it = dcache.emplace(key, restricted(ctx.delta(n, i), n, n - 1)).first;
    return it->second;
  }
  const SparseMatrix& S(int n, int i) {
    const auto key = std::make_pair(n, i);
    auto it = scache.find(key);
    if (it == scache.end()) it = scache.emplace(key, restricted(ctx.sigma(n, i), n, n + 1)).first;
    return it->second;
  }
  const SparseMatrix& T(int n) {
    auto it = tcache.find(n);
    if (it == tcache.end()) it = tcache.emplace(n, restricted(ctx.tau(n), n, n)).first;
    return it->second;
  }
  SparseMatrix coboundary(int r) {
    SparseMatrix M(dim(r + 1), dim(r));
    for (int i = 0; i <= r + 1; ++i) M = M + D(r + 1, i).scaled(sign_of(i));
    return M;
  }
  SparseMatrix coboundary_prime(int r) {
    SparseMatrix M(dim(r + 1), dim(r));
    for (int i = 0; i <= r; ++i) M = M + D(r + 1, i).scaled(sign_of(i));
    return M;
  }
  SparseMatrix lam(int r) { return T(r).scaled(sign_of(r)); }
};

std::string at_pair(int i, int j) {
  return " with (i, j) = (" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

// Verifies the face, degeneracy, and rotation identity families on the window
// around level n, plus the coboundary identities.  The rotation-power family
// is enforced only when `require_tau_power`; its outcome is returned either
// way.  Appends one line per family to `checks`.
bool run_identity_checks(OpsProvider& P, int n, bool require_tau_power,
                         std::vector<std::string>& checks) {
  const std::string& L = P.label;
  const auto require = [&](bool ok, const std::string& what) {
    if (!ok) throw AssertionFailed(L + what);
  };
  const std::string window = " (window around level " + std::to_string(n) + ")";

  int count = 0;
  for (int r = 2; r <= n + 1; ++r)
    for (int j = 1; j <= r; ++j)
      for (int i = 0; i < j; ++i, ++count)
        require(P.D(r, j) * P.D(r - 1, i) == P.D(r, i) * P.D(r - 1, j - 1),
                "face-face identity fails" + at_level(r) + at_pair(i, j));
  checks.push_back(L + "face-face identities hold, " + std::to_string(count) + " instances" +
                   window);

  count = 0;
  for (int r = 0; r <= n; ++r)
    for (int i = 0; i <= r; ++i)
      for (int j = i; j <= r; ++j, ++count)
        require(P.S(r, j) * P.S(r + 1, i) == P.S(r, i) * P.S(r + 1, j + 1),
                "degeneracy-degeneracy identity fails" + at_level(r) + at_pair(i, j));
  checks.push_back(L + "degeneracy-degeneracy identities hold, " + std::to_string(count) +
                   " instances" + window);

  count = 0;
  for (int r = 0; r <= n; ++r)
    for (int j = 0; j <= r; ++j)
      for (int i = 0; i <= r + 1; ++i, ++count) {
        const SparseMatrix lhs = P.S(r, j) * P.D(r + 1, i);
        if (i < j)
          require(lhs == P.D(r, i) * P.S(r - 1, j - 1),
                  "face-degeneracy identity fails" + at_level(r) + at_pair(i, j));
        else if (i == j || i == j + 1)
          require(lhs == SparseMatrix::identity(P.dim(r)),
                  "face-degeneracy identity fails" + at_level(r) + at_pair(i, j));
        else
          require(lhs == P.D(r, i - 1) * P.S(r - 1, j),
                  "face-degeneracy identity fails" + at_level(r) + at_pair(i, j));
      }
  checks.push_back(L + "face-degeneracy identities hold, " + std::to_string(count) + " instances" +
                   window);

  count = 0;
  for (int r = 1; r <= n + 1; ++r) {
    require(P.T(r) * P.D(r, 0) == P.D(r, r),
            "rotation-face identity fails" + at_level(r) + " with i = 0");
    ++count;
    for (int i = 1; i <= r; ++i, ++count)
      require(P.T(r) * P.D(r, i) == P.D(r, i - 1) * P.T(r - 1),
              "rotation-face identity fails" + at_level(r) + " with i = " + std::to_string(i));
  }
  checks.push_back(L + "rotation-face identities hold, " + std::to_string(count) + " instances" +
                   window);

  count = 0;
  for (int r = 0; r <= n; ++r) {
    require(P.T(r) * P.S(r, 0) == P.S(r, r) * P.T(r + 1) * P.T(r + 1),
            "rotation-degeneracy identity fails" + at_level(r) + " with i = 0");
    ++count;
    for (int i = 1; i <= r; ++i, ++count)
      require(
          P.T(r) * P.S(r, i) == P.S(r, i - 1) * P.T(r + 1),
          "rotation-degeneracy identity fails" + at_level(r) + " with i = " + std::to_string(i));
  }
  checks.push_back(L + "rotation-degeneracy identities hold, " + std::to_string(count) +
                   " instances" + window);

  bool tau_ok = true;
  int first_fail = -1;
  for (int r = 0; r <= n; ++r) {
    SparseMatrix pw = SparseMatrix::identity(P.dim(r));
    for (int s = 0; s <= r; ++s) pw = pw * P.T(r);
    const bool ok = (pw == SparseMatrix::identity(P.dim(r)));
    if (!ok) {
      tau_ok = false;
      if (first_fail < 0) first_fail = r;
    }
    if (require_tau_power)
      require(ok, "rotation power identity fails" + at_level(r));
  }
  if (require_tau_power)
    checks.push_back(L + "rotation powers equal the identity" + window);
  else
    checks.push_back(tau_ok ? L + "rotation powers equal the identity" + window
                            : L + "rotation power differs from the identity, first" +
                                  at_level(first_fail) + window);

  for (int r = 0; r <= n; ++r)
    require((P.coboundary(r + 1) * P.coboundary(r)).is_zero(),
            "coboundary fails to square to zero" + at_level(r));
  checks.push_back(L + "coboundary squares to zero" + window);

  for (int r = 0; r <= n; ++r) {
    const SparseMatrix lhs =
        (SparseMatrix::identity(P.dim(r + 1)) - P.lam(r + 1)) * P.coboundary(r);
    const SparseMatrix rhs =
        P.coboundary_prime(r) * (SparseMatrix::identity(P.dim(r)) - P.lam(r));
    require(lhs == rhs, "coboundary rotation compatibility fails" + at_level(r));
  }
  checks.push_back(L + "both coboundaries agree through the rotation" + window);

  return tau_ok;
}

}  // namespace

HopfStructure hopf_cocyclic_structure(HopfNerveContext& ctx, int n, HopfSide side) {
  if (n < 0) throw IndexOutOfRange("structure level");
  OpsProvider P{ctx,
                side == HopfSide::cochain ? Kind::equivariant : Kind::quotient,
                side == HopfSide::cochain ? "equivariant functionals: " : "coinvariant quotient: ",
                {},
                {},
                {}};
  HopfStructure out;
  out.n = n;
  out.side = side;
  run_identity_checks(P, n, /*require_tau_power=*/true, out.checks);
  out.dim_low = n > 0 ? P.dim(n - 1) : 0;
  out.dim_mid = P.dim(n);
  out.dim_high = P.dim(n + 1);
  if (n > 0)
    for (int i = 0; i <= n; ++i) out.deltas.push_back(P.D(n, i));
  for (int i = 0; i <= n; ++i) out.sigmas.push_back(P.S(n, i));
  out.tau = P.T(n);
  return out;
}

ParacyclicReport paracyclic_identity_check(HopfNerveContext& ctx, int n) {
  if (n < 0) throw IndexOutOfRange("structure level");
  OpsProvider P{ctx, Kind::full, "full coefficient space: ", {}, {}, {}};
  ParacyclicReport rep;
  rep.tau_power_is_identity = run_identity_checks(P, n, /*require_tau_power=*/false, rep.checks);
  for (int r = 0; r <= n; ++r)
    if (matrix_rank(P.T(r), ctx.mode()) != P.dim(r))
      throw AssertionFailed("full coefficient space: rotation is not invertible" + at_level(r));
  rep.checks.push_back("full coefficient space: rotation operators are invertible (levels 0-" +
                       std::to_string(n) + ")");
  return rep;
}

// ---------------------------------------------------------------------------
// Cocycles and cohomology of the equivariant subcomplex.
// ---------------------------------------------------------------------------

bool is_hopf_cocycle(HopfNerveContext& ctx, const Cochain& phi) {
  const int n = phi.n;
  const int dim = ctx.space_dim(n);
  for (const auto& [i, c] : phi.coords)
    if (i < 0 || i >= dim) throw IndexOutOfRange("cochain coordinate outside the coefficient space");
  SparseVec coords = phi.coords;
  sv_normalize(coords);
  const HopfAlgebra& H = ctx.hopf();
  for (int h = 0; h < H.dim(); ++h)
    if (ctx.right_action(n, h).apply(coords) != sv_scaled(coords, sv_get(H.counit, h)))
      return false;
  if (ctx.lambda(n).apply(coords) != coords) return false;
  return ctx.b(n).apply(coords).empty();
}

namespace {

// Basis of the closed rotation-invariant equivariant functionals at level n,
// in full coordinates.
SparseMatrix hopf_cocycle_matrix(HopfNerveContext& ctx, int n) {
  const SparseMatrix& K = ctx.equivariant_basis(n);
  const SparseMatrix constraints = SparseMatrix::vstack(
      ctx.b(n) * K, (SparseMatrix::identity(ctx.space_dim(n)) - ctx.lambda(n)) * K);
  return K * kernel_basis(constraints, ctx.mode());
}

}  // namespace

std::vector<Cochain> hopf_cocycles(HopfNerveContext& ctx, int n) {
  const SparseMatrix Z = hopf_cocycle_matrix(ctx, n);
  std::vector<Cochain> out;
  out.reserve(Z.cols());
  for (int j = 0; j < Z.cols(); ++j) out.push_back(Cochain{n, Z.col(j)});
  return out;
}

CohomologyReport hopf_cyclic_cohomology(HopfNerveContext& ctx, int n) {
  if (n < 0) throw IndexOutOfRange("cohomology level");
  CohomologyReport rep;
  rep.n = n;
  const SparseMatrix Z = hopf_cocycle_matrix(ctx, n);
  SparseMatrix image(ctx.space_dim(n), 0);
  if (n >= 1) {
    const SparseMatrix& Km = ctx.equivariant_basis(n - 1);
    const SparseMatrix lam_k =
        (SparseMatrix::identity(ctx.space_dim(n - 1)) - ctx.lambda(n - 1)) * Km;
    image = ctx.b(n - 1) * (Km * kernel_basis(lam_k, ctx.mode()));
  }
  if (image.cols() > 0 && !linear_solve_multi(Z, image, ctx.mode()))
    throw VerificationFailed("coboundaries fall outside the computed cocycle space");
  rep.dim_cocycles = Z.cols();
  rep.dim_coboundaries = matrix_rank(image, ctx.mode());
  rep.dim_cohomology = rep.dim_cocycles - rep.dim_coboundaries;
  if (n >= 1) rep.differential_squares_to_zero = (ctx.b(n) * ctx.b(n - 1)).is_zero();
  for (int j : extend_column_span(image, Z, ctx.mode()))
    rep.representatives.push_back(Cochain{n, Z.col(j)});
  if (static_cast<int>(rep.representatives.size()) != rep.dim_cohomology)
    throw VerificationFailed("representative count disagrees with dimension count");
  return rep;
}

// ---------------------------------------------------------------------------
// Cotensor pairing.
// ---------------------------------------------------------------------------

CotensorPairing cotensor_pairing(const HopfAlgebra& H, const SAYDModule& M, const SAYDModule& Mp,
                                 const HCategory& D, const HCategory& Dp, const Cochain& phi,
                                 const Cochain& phi_b, long long basis_limit) {
  if (!(M.hopf == H) || !(Mp.hopf == H) || !(D.hopf == H) || !(Dp.hopf == H))
    throw DimensionMismatch("pairing inputs are declared over different Hopf algebras");
  if (!is_cocommutative(H)) throw NotCocommutative();
  CotensorPairing out;
  out.checks.push_back("Hopf algebra is cocommutative");

  HopfNerveContext ctxA(H, M, D, basis_limit);
  HopfNerveContext ctxB(H, Mp, Dp, basis_limit);
  if (!is_hopf_cocycle(ctxA, phi)) throw NotACocycle("first pairing argument");
  if (!is_hopf_cocycle(ctxB, phi_b)) throw NotACocycle("second pairing argument");
  out.checks.push_back("both arguments verified as equivariant cyclic cocycles");

  const int d = H.dim();
  const int dm = M.dim();
  const int dmp = Mp.dim();
  // Kernel of the coaction matching map M (x) M' -> M (x) H (x) M'.
  std::vector<Triplet> ts;
  for (int m = 0; m < dm; ++m)
    for (int mp = 0; mp < dmp; ++mp) {
      const int colidx = m * dmp + mp;
      for (const auto& [pair, c] : M.coaction[m])
        ts.push_back({((pair % dm) * d + pair / dm) * dmp + mp, colidx, c});
      for (const auto& [pair, c] : Mp.coaction[mp])
        ts.push_back({(m * d + pair / dmp) * dmp + pair % dmp, colidx, -c});
    }
  const SparseMatrix match =
      SparseMatrix::from_triplets(dm * d * dmp, dm * dmp, std::move(ts));
  SparseMatrix W = kernel_basis(match);
  out.cotensor_basis = W;
  const int w = W.cols();

  out.product = tensor_hcategory(D, Dp, &out.info);
  {
    const ValidationReport vr = validate_hcategory(H, out.product);
    if (!vr.ok)
      throw VerificationFailed("componentwise tensor category action: " + vr.violations.front());
  }
  out.checks.push_back("componentwise tensor category action verified");

  SAYDModule cot;
  cot.hopf = H;
  for (int j = 0; j < w; ++j) cot.basis.push_back("w" + std::to_string(j));
  if (w == 0) {
    for (int h = 0; h < d; ++h) cot.action.emplace_back(0, 0);
    out.cotensor = std::move(cot);
    out.value = Cochain{phi.n + phi_b.n, {}};
    out.checks.push_back("cotensor space is zero; the pairing value vanishes");
    return out;
  }

  std::vector<std::vector<SparseVec>> colsM, colsMp;
  colsM.reserve(d);
  colsMp.reserve(d);
  for (int h = 0; h < d; ++h) {
    colsM.push_back(matrix_columns(M.action[h]));
    colsMp.push_back(matrix_columns(Mp.action[h]));
  }
  for (int h = 0; h < d; ++h) {
    std::vector<Triplet> gh;
    for (int m = 0; m < dm; ++m)
      for (int mp = 0; mp < dmp; ++mp)
        for (const auto& [pq, c] : H.comult[h])
          for (const auto& [m2, c1] : colsM[pq / d][m])
            for (const auto& [mp2, c2] : colsMp[pq % d][mp])
              gh.push_back({m2 * dmp + mp2, m * dmp + mp, c * c1 * c2});
    const SparseMatrix Gh = SparseMatrix::from_triplets(dm * dmp, dm * dmp, std::move(gh));
    auto X = linear_solve_multi(W, Gh * W);
    if (!X) throw CotensorNotSubmodule();
    cot.action.push_back(std::move(*X));
  }
  out.checks.push_back("cotensor space of dimension " + std::to_string(w) +
                       " is closed under the diagonal action");

  {
    std::vector<Triplet> ys;
    for (int m = 0; m < dm; ++m)
      for (const auto& [pair, c] : M.coaction[m])
        for (int mp = 0; mp < dmp; ++mp)
          ys.push_back({((pair / dm) * dm + pair % dm) * dmp + mp, m * dmp + mp, c});
    const SparseMatrix Y = SparseMatrix::from_triplets(d * dm * dmp, dm * dmp, std::move(ys));
    const SparseMatrix YW = Y * W;
    cot.coaction.resize(w);
    for (int h = 0; h < d; ++h) {
      SparseMatrix Vh(dm * dmp, w);
      for (int m0 = 0; m0 < dm; ++m0)
        for (int mp = 0; mp < dmp; ++mp)
          Vh.set_row(m0 * dmp + mp, YW.row((h * dm + m0) * dmp + mp));
      auto Ch = linear_solve_multi(W, Vh);
      if (!Ch)
        throw VerificationFailed("the coaction does not restrict to the cotensor space");
      Ch->for_each(
          [&](int j2, int j, const Scalar& c) { cot.coaction[j].emplace_back(h * w + j2, c); });
    }
    for (auto& co : cot.coaction) sv_normalize(co);
  }
  {
    const ValidationReport vr = validate_sayd(H, cot);
    if (!vr.ok) throw VerificationFailed("cotensor coefficients: " + vr.violations.front());
  }
  out.checks.push_back("cotensor coefficients verified as stable anti-Yetter-Drinfeld data");
  out.cotensor = cot;

  const int p = phi.n;
  const int q = phi_b.n;
  HopfNerveContext ctxT(H, cot, out.product, basis_limit);
  const NerveBasis& BT = ctxT.nerve().basis(p + q);
  const NerveBasis& BA = ctxA.nerve().basis(p);
  const NerveBasis& BB = ctxB.nerve().basis(q);
  std::vector<Scalar> phiA(ctxA.space_dim(p), Scalar(0));
  std::vector<Scalar> phiB(ctxB.space_dim(q), Scalar(0));
  for (const auto& [i, c] : phi.coords) phiA[i] += c;
  for (const auto& [i, c] : phi_b.coords) phiB[i] += c;
  const int nerveA = BA.size();
  const int nerveB = BB.size();
  OmegaContext octxA(D.cat, p + q, basis_limit);
  OmegaContext octxB(Dp.cat, p + q, basis_limit);
  const OmegaTensorWalk walk(octxA, octxB, out.info);
  const std::vector<SparseVec> wcols = matrix_columns(W);
  const int tdim = BT.size();
  std::vector<std::vector<std::pair<int, Scalar>>> per_k(tdim);
  std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic, 8)
  for (int k = 0; k < tdim; ++k) {
    try {
      const OmegaTensorElem el = walk.expand(BT.tuple(k));
      std::vector<std::tuple<int, int, Scalar>> terms;
      for (const auto& [syms, g] : el.coords) {
        const OmegaSymbol& sL = syms.first;
        const OmegaSymbol& sR = syms.second;
        if (sL.degree() != p || sR.degree() != q) continue;
        if (sL.lead == kUnitLead || sR.lead == kUnitLead) continue;
        NerveTuple tL, tR;
        tL.reserve(p + 1);
        tR.reserve(q + 1);
        tL.push_back(sL.lead);
        tL.insert(tL.end(), sL.tail.begin(), sL.tail.end());
        tR.push_back(sR.lead);
        tR.insert(tR.end(), sR.tail.begin(), sR.tail.end());
        terms.emplace_back(BA.index_of(tL), BB.index_of(tR), g);
      }
      if (terms.empty()) continue;
      for (int j = 0; j < w; ++j) {
        Scalar v(0);
        for (const auto& [ia, ib, g] : terms)
          for (const auto& [mm, c] : wcols[j])
            v += g * c * phiA[(mm / dmp) * nerveA + ia] * phiB[(mm % dmp) * nerveB + ib];
        if (!v.is_zero()) per_k[k].emplace_back(j, v);
      }
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  SparseVec coords;
  for (int k = 0; k < tdim; ++k)
    for (const auto& [j, v] : per_k[k]) coords.emplace_back(j * tdim + k, v);
  sv_normalize(coords);
  out.value = Cochain{p + q, std::move(coords)};
  if (!is_hopf_cocycle(ctxT, out.value))
    throw VerificationFailed("pairing value failed the equivariant cocycle check");
  out.checks.push_back("pairing value verified as an equivariant cyclic cocycle at level " +
                       std::to_string(p + q));
  return out;
}

// ---------------------------------------------------------------------------
// Graded traces with coefficients.
// ---------------------------------------------------------------------------

OmegaElement hopf_omega_action(OmegaContext& octx, const HCategory& D, const SparseVec& hcoords,
                               const OmegaElement& w) {
  const HopfAlgebra& H = D.hopf;
  if (octx.category().num_morphisms() != D.cat.num_morphisms())
    throw DimensionMismatch("envelope workspace does not present the acted-on category");
  for (const auto& [h, c] : hcoords)
    if (h < 0 || h >= H.dim()) throw IndexOutOfRange("Hopf coordinate index");
  const int n = w.degree;
  const auto terms = comult_iterate(H, hcoords, n);
  std::vector<std::vector<SparseVec>> cols;
  cols.reserve(H.dim());
  for (int u = 0; u < H.dim(); ++u) cols.push_back(matrix_columns(D.action[u]));
  std::map<OmegaSymbol, Scalar> acc;
  for (const auto& [sym, c] : w.coords)
    for (const auto& [hs, g] : terms) {
      std::vector<std::pair<OmegaSymbol, Scalar>> partial;
      if (sym.lead == kUnitLead) {
        const Scalar e = sv_get(H.counit, hs[0]);
        if (e.is_zero()) continue;
        partial.push_back({OmegaSymbol{kUnitLead, {}}, c * g * e});
      } else {
        for (const auto& [f2, cf] : cols[hs[0]][sym.lead])
          partial.push_back({OmegaSymbol{f2, {}}, c * g * cf});
      }
      for (int s = 0; s < n; ++s) {
        std::vector<std::pair<OmegaSymbol, Scalar>> next;
        for (const auto& [ps, pc] : partial)
          for (const auto& [f2, cf] : cols[hs[s + 1]][sym.tail[s]]) {
            OmegaSymbol u2 = ps;
            u2.tail.push_back(f2);
            next.push_back({std::move(u2), pc * cf});
          }
        partial = std::move(next);
        if (partial.empty()) break;
      }
      for (const auto& [ps, pc] : partial) acc[ps] += pc;
    }
  std::map<OmegaSymbol, Scalar> cleaned;
  for (const auto& [s, c] : acc)
    if (!c.is_zero()) cleaned.emplace(s, c);
  return octx.make(w.src, w.dst, n, std::move(cleaned));
}

Scalar hopf_trace_eval(const HopfGradedTrace& T, const SparseVec& mcoords,
                       const OmegaElement& w) {
  if (w.degree != T.dimension)
    throw DimensionMismatch("element degree differs from the trace dimension");
  Scalar out(0);
  for (const auto& [m, cm] : mcoords) {
    if (m < 0 || m >= static_cast<int>(T.values.size()))
      throw IndexOutOfRange("coefficient index outside the trace table");
    const auto& vals = T.values[m];
    for (const auto& [sym, c] : w.coords) {
      const auto it = vals.find(sym);
      if (it != vals.end()) out += cm * c * it->second;
    }
  }
  return out;
}

void verify_hopf_trace(OmegaContext& octx, const SAYDModule& M, const HCategory& D,
                       const HopfGradedTrace& T) {
  const HopfAlgebra& H = D.hopf;
  if (!(M.hopf == H))
    throw DimensionMismatch("coefficients and category disagree about the Hopf algebra");
  if (static_cast<int>(T.values.size()) != M.dim())
    throw DimensionMismatch("trace table size differs from the coefficient dimension");
  const int n = T.dimension;
  if (n > octx.degree_bound()) throw DegreeOverflow(octx.degree_bound());
  const LinCategory& C = octx.category();
  const int d = H.dim();
  const int dm = M.dim();
  std::vector<std::vector<SparseVec>> mcols;
  mcols.reserve(d);
  for (int h = 0; h < d; ++h) mcols.push_back(matrix_columns(M.action[h]));
  const std::vector<SparseVec> scols = matrix_columns(H.antipode);
  const std::vector<SparseVec> sinv = matrix_columns(H.antipode_inverse);

  if (n >= 1)
    for (int m = 0; m < dm; ++m)
      for (int x = 0; x < C.num_objects(); ++x)
        for (const OmegaSymbol& s : octx.hom_basis(n - 1, x, x)) {
          const OmegaElement el = octx.make(x, x, n - 1, {{s, Scalar(1)}});
          if (!hopf_trace_eval(T, sv_unit(m), octx.differential(el)).is_zero())
            throw TraceAxiomViolated("closure at coefficient " + M.basis[m] + ", object '" +
                                     C.object_name(x) + "'");
        }

  for (int h = 0; h < d; ++h)
    for (int m = 0; m < dm; ++m)
      for (int x = 0; x < C.num_objects(); ++x)
        for (const OmegaSymbol& s : octx.hom_basis(n, x, x)) {
          const OmegaElement el = octx.make(x, x, n, {{s, Scalar(1)}});
          Scalar lhs(0);
          for (const auto& [pq, c] : H.comult[h])
            lhs += c * hopf_trace_eval(T, mcols[pq / d][m],
                                       hopf_omega_action(octx, D, scols[pq % d], el));
          if (lhs != sv_get(H.counit, h) * hopf_trace_eval(T, sv_unit(m), el))
            throw TraceAxiomViolated("equivariance at (" + H.basis[h] + ", " + M.basis[m] +
                                     "), object '" + C.object_name(x) + "'");
        }

  for (int m = 0; m < dm; ++m)
    for (int x = 0; x < C.num_objects(); ++x)
      for (int y = 0; y < C.num_objects(); ++y)
        for (int i = 0; i <= n; ++i) {
          const int j = n - i;
          for (const OmegaSymbol& sa : octx.hom_basis(i, x, y))
            for (const OmegaSymbol& sb : octx.hom_basis(j, y, x)) {
              const OmegaElement a = octx.make(x, y, i, {{sa, Scalar(1)}});
              const OmegaElement b = octx.make(y, x, j, {{sb, Scalar(1)}});
              const Scalar lhs = hopf_trace_eval(T, sv_unit(m), octx.compose(a, b));
              Scalar rhs(0);
              for (const auto& [pair, c] : M.coaction[m])
                rhs += c * hopf_trace_eval(
                               T, sv_unit(pair % dm),
                               octx.compose(hopf_omega_action(octx, D, sinv[pair / dm], b), a));
              if ((i * j) % 2 == 1) rhs = -rhs;
              if (lhs != rhs)
                throw TraceAxiomViolated("graded symmetry at coefficient " + M.basis[m] +
                                         ", degrees (" + std::to_string(i) + ", " +
                                         std::to_string(j) + ")");
            }
        }
}

HopfTraceReport omega_h_action_trace(OmegaContext& octx, const SAYDModule& M, const HCategory& D,
                                     const Cochain& phi) {
  const HopfAlgebra& H = D.hopf;
  if (!(M.hopf == H))
    throw DimensionMismatch("coefficients and category disagree about the Hopf algebra");
  const int n = phi.n;
  if (n > octx.degree_bound()) throw DegreeOverflow(octx.degree_bound());
  HopfNerveContext ctx(H, M, D, octx.nerve().limit());
  if (!is_hopf_cocycle(ctx, phi)) throw NotACocycle("trace conversion input");
  SparseVec norm = phi.coords;
  sv_normalize(norm);

  HopfTraceReport rep;
  rep.trace.dimension = n;
  rep.trace.values.resize(M.dim());
  const NerveBasis& B = ctx.nerve().basis(n);
  const int nerve_dim = B.size();
  for (const auto& [idx, c] : norm) {
    const NerveTuple& t = B.tuple(idx % nerve_dim);
    OmegaSymbol s;
    s.lead = t[0];
    s.tail.assign(t.begin() + 1, t.end());
    rep.trace.values[idx / nerve_dim].emplace(std::move(s), c);
  }
  rep.checks.push_back("input verified as an equivariant cyclic cocycle at level " +
                       std::to_string(n));
  verify_hopf_trace(octx, M, D, rep.trace);
  rep.checks.push_back("trace axioms verified on all basis probes");

  rep.roundtrip.n = n;
  for (int m = 0; m < M.dim(); ++m)
    for (const auto& [sym, c] : rep.trace.values[m]) {
      NerveTuple t;
      t.reserve(sym.tail.size() + 1);
      t.push_back(sym.lead);
      t.insert(t.end(), sym.tail.begin(), sym.tail.end());
      rep.roundtrip.coords.emplace_back(m * nerve_dim + B.index_of(t), c);
    }
  sv_normalize(rep.roundtrip.coords);
  if (rep.roundtrip.coords != norm)
    throw VerificationFailed("trace roundtrip does not reproduce the cocycle");
  rep.checks.push_back("cochain roundtrip reproduces the input exactly");
  return rep;
}

// ---------------------------------------------------------------------------
// Matrix amplification compatibility.
// ---------------------------------------------------------------------------

MoritaCertificate hopf_morita_check(const HCategory& D, int r, int nmax, long long limit) {
  const HopfAlgebra& H = D.hopf;
  MoritaContext mctx(D.cat, r, limit);
  MatrixTensorInfo info;
  const HCategory amp = matrix_amplification(D, r, &info);
  if (info.pair_id != mctx.info().pair_id)
    throw VerificationFailed("matrix tensor bookkeeping disagrees between the two constructions");
  MoritaCertificate cert;
  {
    const ValidationReport vr = validate_hcategory(H, amp);
    if (!vr.ok) throw VerificationFailed("amplified category action: " + vr.violations.front());
  }
  cert.checks.push_back("amplified category carries a verified action (r = " + std::to_string(r) +
                        ")");
  for (int n = 0; n <= nmax; ++n) {
    for (int h = 0; h < H.dim(); ++h) {
      const SparseMatrix Abase = nerve_diagonal_action(mctx.base(), D, n, h);
      const SparseMatrix Aamp = nerve_diagonal_action(mctx.tensor(), amp, n, h);
      if (Aamp * mctx.tr(n) != mctx.tr(n) * Abase)
        throw AssertionFailed("matrix trace does not intertwine the action of '" + H.basis[h] +
                              "'" + at_level(n));
      for (int p = 1; p <= r; ++p)
        if (Abase * mctx.inc(p, n) != mctx.inc(p, n) * Aamp)
          throw AssertionFailed("corner inclusion " + std::to_string(p) +
                                " does not intertwine the action of '" + H.basis[h] + "'" +
                                at_level(n));
    }
    cert.checks.push_back("diagonal action commutes with the matrix trace" + at_level(n));
    cert.checks.push_back("diagonal action commutes with all " + std::to_string(r) +
                          " corner inclusions" + at_level(n));
  }
  return cert;
}

}  // namespace cychom

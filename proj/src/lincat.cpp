#include "cychom/lincat.hpp"

#include <algorithm>

namespace cychom {

namespace {
const SparseVec kEmpty{};
}

int LinCategory::add_object(const std::string& name) {
  if (obj_index_.count(name)) throw Error("duplicate object '" + name + "'");
  int x = num_objects();
  obj_index_[name] = x;
  objects_.push_back(name);
  // Re-shape the hom grid to (x+1)^2, preserving existing spaces.
  std::vector<std::vector<int>> grid(static_cast<std::size_t>(x + 1) * (x + 1));
  for (int a = 0; a < x; ++a)
    for (int b = 0; b < x; ++b)
      grid[static_cast<std::size_t>(a) * (x + 1) + b] = std::move(homs_[static_cast<std::size_t>(a) * x + b]);
  homs_ = std::move(grid);
  identity_.emplace_back();
  return x;
}

int LinCategory::add_morphism(const std::string& name, int src, int dst) {
  if (src < 0 || src >= num_objects() || dst < 0 || dst >= num_objects())
    throw IndexOutOfRange("object index for morphism '" + name + "'");
  if (mor_index_.count(name)) throw Error("duplicate morphism '" + name + "'");
  auto& space = homs_[static_cast<std::size_t>(src) * num_objects() + dst];
  int id = num_morphisms();
  mor_index_[name] = id;
  mors_.push_back({name, src, dst, static_cast<int>(space.size())});
  space.push_back(id);
  return id;
}

void LinCategory::set_composition(int g, int f, SparseVec coords) {
  if (g < 0 || g >= num_morphisms() || f < 0 || f >= num_morphisms())
    throw IndexOutOfRange("morphism id in composition");
  const MorInfo& mg = mors_[g];
  const MorInfo& mf = mors_[f];
  if (mf.dst != mg.src)
    throw NotComposable("'" + mg.name + "' after '" + mf.name + "'");
  sv_normalize(coords);
  int dim = hom_dim(mf.src, mg.dst);
  if (!coords.empty() && (coords.front().first < 0 || coords.back().first >= dim))
    throw IndexOutOfRange("composition coordinates for '" + mg.name + "∘" + mf.name + "'");
  if (coords.empty())
    comp_.erase(comp_key(g, f));
  else
    comp_[comp_key(g, f)] = std::move(coords);
}

void LinCategory::set_identity(int x, SparseVec coords) {
  if (x < 0 || x >= num_objects()) throw IndexOutOfRange("object index for identity");
  sv_normalize(coords);
  int dim = hom_dim(x, x);
  if (!coords.empty() && (coords.front().first < 0 || coords.back().first >= dim))
    throw IndexOutOfRange("identity coordinates at '" + objects_[x] + "'");
  identity_[x] = std::move(coords);
}

int LinCategory::object_index(const std::string& name) const {
  auto it = obj_index_.find(name);
  if (it == obj_index_.end()) throw IndexOutOfRange("unknown object '" + name + "'");
  return it->second;
}

int LinCategory::mor_index(const std::string& name) const {
  auto it = mor_index_.find(name);
  if (it == mor_index_.end()) throw IndexOutOfRange("unknown morphism '" + name + "'");
  return it->second;
}

const std::vector<int>& LinCategory::hom(int x, int y) const {
  if (x < 0 || x >= num_objects() || y < 0 || y >= num_objects())
    throw IndexOutOfRange("hom space indices");
  return homs_[static_cast<std::size_t>(x) * num_objects() + y];
}

const SparseVec& LinCategory::identity_coords(int x) const {
  if (semicategory_) throw SemicategoryHasNoIdentities();
  if (x < 0 || x >= num_objects()) throw IndexOutOfRange("object index for identity");
  return identity_[x];
}

bool LinCategory::identity_is_basis_aligned(int x) const {
  const SparseVec& c = identity_coords(x);
  return c.size() == 1 && c.front().second.is_one();
}

int LinCategory::identity_elem(int x) const {
  const SparseVec& c = identity_coords(x);
  if (c.size() != 1 || !c.front().second.is_one()) throw IdentityNotBasisAligned(objects_[x]);
  return hom(x, x)[c.front().first];
}

const SparseVec& LinCategory::compose_basis(int g, int f) const {
  const MorInfo& mg = mors_[g];
  const MorInfo& mf = mors_[f];
  if (mf.dst != mg.src)
    throw NotComposable("'" + mg.name + "' after '" + mf.name + "'");
  auto it = comp_.find(comp_key(g, f));
  return it == comp_.end() ? kEmpty : it->second;
}

SparseVec LinCategory::compose_coords(const SparseVec& g_coords, int y, int z,
                                      const SparseVec& f_coords, int x) const {
  const auto& gs = hom(y, z);
  const auto& fs = hom(x, y);
  SparseVec out;
  for (const auto& [gl, cg] : g_coords) {
    if (gl < 0 || gl >= static_cast<int>(gs.size())) throw IndexOutOfRange("compose_coords g");
    for (const auto& [fl, cf] : f_coords) {
      if (fl < 0 || fl >= static_cast<int>(fs.size())) throw IndexOutOfRange("compose_coords f");
      sv_axpy(out, cg * cf, compose_basis(gs[gl], fs[fl]));
    }
  }
  return out;
}

ValidationReport validate_presentation(const LinCategory& C) {
  ValidationReport rep;
  if (C.num_objects() == 0) {
    rep.fail("category has no objects");
    return rep;
  }
  const int N = C.num_objects();

  // Associativity (h∘g)∘f = h∘(g∘f) on all composable basis triples.
  for (int w = 0; w < N; ++w)
    for (int x = 0; x < N; ++x)
      for (int y = 0; y < N; ++y)
        for (int z = 0; z < N; ++z)
          for (int f : C.hom(w, x))
            for (int g : C.hom(x, y))
              for (int h : C.hom(y, z)) {
                SparseVec hg = C.compose_basis(h, g);  // over hom(x,z)
                SparseVec gf = C.compose_basis(g, f);  // over hom(w,y)
                SparseVec left = C.compose_coords(hg, x, z, sv_unit(C.mor(f).local), w);
                SparseVec right = C.compose_coords(sv_unit(C.mor(h).local), y, z, gf, w);
                if (left != right)
                  rep.fail("associativity fails on (" + C.mor(h).name + ", " + C.mor(g).name +
                           ", " + C.mor(f).name + ")");
              }

  if (!C.is_semicategory()) {
    for (int x = 0; x < N; ++x)
      if (C.identity_coords(x).empty() && C.hom_dim(x, x) == 0)
        rep.fail("identity at '" + C.object_name(x) + "' lives in an empty endomorphism space");
    for (int x = 0; x < N; ++x)
      for (int y = 0; y < N; ++y)
        for (int f : C.hom(x, y)) {
          SparseVec unit = sv_unit(C.mor(f).local);
          if (C.compose_coords(C.identity_coords(y), y, y, unit, x) != unit)
            rep.fail("left identity law fails on '" + C.mor(f).name + "'");
          if (C.compose_coords(unit, x, y, C.identity_coords(x), x) != unit)
            rep.fail("right identity law fails on '" + C.mor(f).name + "'");
        }
  }
  return rep;
}

LinCategory unitalize(const LinCategory& C) {
  if (!C.is_semicategory()) throw AlreadyUnital();
  LinCategory U;
  for (int x = 0; x < C.num_objects(); ++x) U.add_object(C.object_name(x));
  for (int f = 0; f < C.num_morphisms(); ++f) {
    const MorInfo& m = C.mor(f);
    U.add_morphism(m.name, m.src, m.dst);
  }
  std::vector<int> unit(C.num_objects());
  for (int x = 0; x < C.num_objects(); ++x)
    unit[x] = U.add_morphism("id_" + C.object_name(x), x, x);

  // Old compositions carry over (locals within shared spaces are unchanged
  // because units are appended after all original morphisms).
  for (int g = 0; g < C.num_morphisms(); ++g)
    for (int f = 0; f < C.num_morphisms(); ++f) {
      if (C.mor(f).dst != C.mor(g).src) continue;
      SparseVec v = C.compose_basis(g, f);
      if (!v.empty()) U.set_composition(g, f, v);
    }
  // Unit laws define the rest.
  for (int f = 0; f < C.num_morphisms(); ++f) {
    const MorInfo& m = C.mor(f);
    U.set_composition(unit[m.dst], f, sv_unit(m.local));
    U.set_composition(f, unit[m.src], sv_unit(m.local));
  }
  for (int x = 0; x < C.num_objects(); ++x) {
    U.set_composition(unit[x], unit[x], sv_unit(U.mor(unit[x]).local));
    U.set_identity(x, sv_unit(U.mor(unit[x]).local));
  }
  return U;
}

LinCategory tensor_matrix(const LinCategory& C, int r, MatrixTensorInfo* info) {
  if (r < 1) throw IndexOutOfRange("matrix size must be positive");
  LinCategory T;
  for (int x = 0; x < C.num_objects(); ++x) T.add_object(C.object_name(x));

  MatrixTensorInfo local_info;
  MatrixTensorInfo& I = info ? *info : local_info;
  I.r = r;
  I.pair_id.assign(C.num_morphisms(), std::vector<int>(static_cast<std::size_t>(r) * r, -1));
  I.decompose.clear();

  // Per hom space, pairs (f, E_{ij}) ordered by f then (i,j); indices 1-based
  // in names.
  for (int x = 0; x < C.num_objects(); ++x)
    for (int y = 0; y < C.num_objects(); ++y)
      for (int f : C.hom(x, y))
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j) {
            int id = T.add_morphism(
                C.mor(f).name + "#E" + std::to_string(i + 1) + "_" + std::to_string(j + 1), x, y);
            I.pair_id[f][static_cast<std::size_t>(i) * r + j] = id;
            I.decompose.push_back({f, i, j});
          }

  // (g⊗E_{ij})∘(f⊗E_{kl}) = δ_{jk} (g∘f)⊗E_{il}; tensor locals follow the
  // f-major ordering above, so local(f⊗E_{ij}) = local(f)·r² + i·r + j.
  for (int g = 0; g < C.num_morphisms(); ++g)
    for (int f = 0; f < C.num_morphisms(); ++f) {
      if (C.mor(f).dst != C.mor(g).src) continue;
      const SparseVec& gf = C.compose_basis(g, f);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
          for (int l = 0; l < r; ++l) {
            SparseVec out;
            for (const auto& [hl, c] : gf)
              out.emplace_back(hl * r * r + i * r + l, c);
            if (out.empty()) continue;
            T.set_composition(I.pair_id[g][static_cast<std::size_t>(i) * r + j],
                              I.pair_id[f][static_cast<std::size_t>(j) * r + l], std::move(out));
          }
    }

  if (C.is_semicategory()) {
    T.mark_semicategory();
  } else {
    for (int x = 0; x < C.num_objects(); ++x) {
      SparseVec id;
      for (const auto& [l, c] : C.identity_coords(x))
        for (int p = 0; p < r; ++p) id.emplace_back(l * r * r + p * r + p, c);
      T.set_identity(x, std::move(id));
    }
  }
  return T;
}

LinCategory tensor_category(const LinCategory& A, const LinCategory& B, CategoryTensorInfo* info) {
  LinCategory T;
  for (int a = 0; a < A.num_objects(); ++a)
    for (int b = 0; b < B.num_objects(); ++b)
      T.add_object("(" + A.object_name(a) + "," + B.object_name(b) + ")");
  auto obj = [&](int a, int b) { return a * B.num_objects() + b; };

  CategoryTensorInfo local_info;
  CategoryTensorInfo& I = info ? *info : local_info;
  I.objects_b = B.num_objects();
  I.pair_id.assign(A.num_morphisms(), std::vector<int>(B.num_morphisms(), -1));
  I.decompose.clear();

  // hom((X,X'),(Y,Y')) basis = pairs (f,g), f-major; local = local(f)·dim' + local(g).
  for (int xa = 0; xa < A.num_objects(); ++xa)
    for (int xb = 0; xb < B.num_objects(); ++xb)
      for (int ya = 0; ya < A.num_objects(); ++ya)
        for (int yb = 0; yb < B.num_objects(); ++yb)
          for (int f : A.hom(xa, ya))
            for (int g : B.hom(xb, yb)) {
              int id = T.add_morphism(A.mor(f).name + "#" + B.mor(g).name, obj(xa, xb), obj(ya, yb));
              I.pair_id[f][g] = id;
              I.decompose.push_back({f, g});
            }

  for (int f2 = 0; f2 < A.num_morphisms(); ++f2)
    for (int f1 = 0; f1 < A.num_morphisms(); ++f1) {
      if (A.mor(f1).dst != A.mor(f2).src) continue;
      const SparseVec& fa = A.compose_basis(f2, f1);
      if (fa.empty()) continue;
      for (int g2 = 0; g2 < B.num_morphisms(); ++g2)
        for (int g1 = 0; g1 < B.num_morphisms(); ++g1) {
          if (B.mor(g1).dst != B.mor(g2).src) continue;
          const SparseVec& gb = B.compose_basis(g2, g1);
          if (gb.empty()) continue;
          int dim_b = B.hom_dim(B.mor(g1).src, B.mor(g2).dst);
          SparseVec out;
          for (const auto& [la, ca] : fa)
            for (const auto& [lb, cb] : gb) out.emplace_back(la * dim_b + lb, ca * cb);
          sv_normalize(out);
          T.set_composition(I.pair_id[f2][g2], I.pair_id[f1][g1], std::move(out));
        }
    }

  if (A.is_semicategory() || B.is_semicategory()) {
    T.mark_semicategory();
  } else {
    for (int a = 0; a < A.num_objects(); ++a)
      for (int b = 0; b < B.num_objects(); ++b) {
        int dim_b = B.hom_dim(b, b);
        SparseVec id;
        for (const auto& [la, ca] : A.identity_coords(a))
          for (const auto& [lb, cb] : B.identity_coords(b)) id.emplace_back(la * dim_b + lb, ca * cb);
        sv_normalize(id);
        T.set_identity(obj(a, b), std::move(id));
      }
  }
  return T;
}

ValidationReport verify_functor(const LinFunctor& F) {
  ValidationReport rep;
  const LinCategory& S = F.source;
  const LinCategory& T = F.target;
  const int N = S.num_objects();
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y)
      for (int z = 0; z < N; ++z)
        for (int f : S.hom(x, y))
          for (int g : S.hom(y, z)) {
            SparseVec via_source = F.apply(x, z, S.compose_basis(g, f));
            SparseVec via_target =
                T.compose_coords(F.apply(y, z, sv_unit(S.mor(g).local)), F.object_map[y],
                                 F.object_map[z], F.apply(x, y, sv_unit(S.mor(f).local)),
                                 F.object_map[x]);
            if (via_source != via_target)
              rep.fail("functor breaks composition on (" + S.mor(g).name + ", " + S.mor(f).name + ")");
          }
  if (!F.is_semifunctor && !S.is_semicategory() && !T.is_semicategory()) {
    for (int x = 0; x < N; ++x)
      if (F.apply(x, x, S.identity_coords(x)) != T.identity_coords(F.object_map[x]))
        rep.fail("functor breaks the identity at '" + S.object_name(x) + "'");
  }
  return rep;
}

LinFunctor identity_functor(const LinCategory& C) {
  LinFunctor F;
  F.source = C;
  F.target = C;
  F.object_map.resize(C.num_objects());
  F.mor_map.resize(static_cast<std::size_t>(C.num_objects()) * C.num_objects());
  for (int x = 0; x < C.num_objects(); ++x) {
    F.object_map[x] = x;
    for (int y = 0; y < C.num_objects(); ++y)
      F.mor_map[static_cast<std::size_t>(x) * C.num_objects() + y] =
          SparseMatrix::identity(C.hom_dim(x, y));
  }
  F.is_semifunctor = C.is_semicategory();
  return F;
}

LinFunctor compose_functors(const LinFunctor& G, const LinFunctor& F) {
  if (G.source.num_objects() != F.target.num_objects())
    throw DimensionMismatch("functor composition");
  LinFunctor H;
  H.source = F.source;
  H.target = G.target;
  H.is_semifunctor = F.is_semifunctor || G.is_semifunctor;
  const int N = F.source.num_objects();
  H.object_map.resize(N);
  H.mor_map.resize(static_cast<std::size_t>(N) * N);
  for (int x = 0; x < N; ++x) H.object_map[x] = G.object_map[F.object_map[x]];
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y)
      H.mor_map[static_cast<std::size_t>(x) * N + y] =
          G.matrix(F.object_map[x], F.object_map[y]) * F.matrix(x, y);
  return H;
}

bool is_identity_functor(const LinFunctor& F) {
  const int N = F.source.num_objects();
  if (F.target.num_objects() != N) return false;
  for (int x = 0; x < N; ++x)
    if (F.object_map[x] != x) return false;
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y)
      if (F.matrix(x, y) != SparseMatrix::identity(F.source.hom_dim(x, y))) return false;
  return true;
}

std::optional<SparseVec> endo_inverse(const LinCategory& C, int x, const SparseVec& coords) {
  const int d = C.hom_dim(x, x);
  // Left-multiplication matrix L(v) = coords∘v on End(x).
  SparseMatrix L(d, d);
  for (int k = 0; k < d; ++k) {
    SparseVec img = C.compose_coords(coords, x, x, sv_unit(k), x);
    for (const auto& [l, c] : img) L.add_at(l, k, c);
  }
  std::vector<Scalar> rhs(d, Scalar(0));
  for (const auto& [l, c] : C.identity_coords(x)) rhs[l] = c;
  auto sol = linear_solve(L, rhs);
  if (!sol) return std::nullopt;
  SparseVec inv;
  for (int k = 0; k < d; ++k)
    if (!(*sol)[k].is_zero()) inv.emplace_back(k, (*sol)[k]);
  // coords∘inv = id by construction; a one-sided inverse in a
  // finite-dimensional unital algebra is two-sided, but check anyway.
  SparseVec id = C.identity_coords(x);
  if (C.compose_coords(inv, x, x, coords, x) != id) return std::nullopt;
  return inv;
}

LinFunctor inner_automorphism(const LinCategory& C, const AutFamily& eta) {
  if (C.is_semicategory()) throw SemicategoryHasNoIdentities();
  if (static_cast<int>(eta.components.size()) != C.num_objects())
    throw DimensionMismatch("one automorphism component per object");
  const int N = C.num_objects();
  std::vector<SparseVec> inv(N);
  for (int x = 0; x < N; ++x) {
    auto ix = endo_inverse(C, x, eta.components[x]);
    if (!ix) throw NotInvertible(C.object_name(x));
    inv[x] = std::move(*ix);
  }
  LinFunctor F = identity_functor(C);
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) {
      const auto& basis = C.hom(x, y);
      SparseMatrix M(static_cast<int>(basis.size()), static_cast<int>(basis.size()));
      for (int k = 0; k < static_cast<int>(basis.size()); ++k) {
        SparseVec v = C.compose_coords(eta.components[y], y, y, sv_unit(k), x);
        v = C.compose_coords(v, x, y, inv[x], x);
        for (const auto& [l, c] : v) M.add_at(l, k, c);
      }
      F.mor_map[static_cast<std::size_t>(x) * N + y] = std::move(M);
    }
  ValidationReport rep = verify_functor(F);
  if (!rep.ok) throw VerificationFailed(rep.violations.front());
  return F;
}

}  // namespace cychom

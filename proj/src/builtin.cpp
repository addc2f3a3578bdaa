#include "cychom/builtin.hpp"

namespace cychom {

LinCategory point_category() {
  LinCategory C;
  int pt = C.add_object("pt");
  int id = C.add_morphism("id", pt, pt);
  C.set_composition(id, id, sv_unit(0));
  C.set_identity(pt, sv_unit(0));
  return C;
}

LinCategory dual_numbers_category() {
  LinCategory C;
  int pt = C.add_object("pt");
  int id = C.add_morphism("id", pt, pt);
  int x = C.add_morphism("x", pt, pt);
  C.set_composition(id, id, sv_unit(0));
  C.set_composition(id, x, sv_unit(1));
  C.set_composition(x, id, sv_unit(1));
  // x∘x = 0: no entry
  C.set_identity(pt, sv_unit(0));
  return C;
}

LinCategory z2_group_category() {
  LinCategory C;
  int pt = C.add_object("pt");
  int e = C.add_morphism("e", pt, pt);
  int g = C.add_morphism("g", pt, pt);
  C.set_composition(e, e, sv_unit(0));
  C.set_composition(e, g, sv_unit(1));
  C.set_composition(g, e, sv_unit(1));
  C.set_composition(g, g, sv_unit(0));
  C.set_identity(pt, sv_unit(0));
  return C;
}

LinCategory poset_chain_category(int n) {
  if (n < 1) throw IndexOutOfRange("poset chain needs at least one object");
  LinCategory C;
  for (int k = 0; k < n; ++k) C.add_object("O" + std::to_string(k + 1));
  std::vector<std::vector<int>> u(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      u[i][j] = C.add_morphism("u" + std::to_string(i + 1) + "_" + std::to_string(j + 1), i, j);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) C.set_composition(u[j][k], u[i][j], sv_unit(0));
  for (int i = 0; i < n; ++i) C.set_identity(i, sv_unit(0));
  return C;
}

LinCategory chaotic_category(int n) {
  if (n < 1) throw IndexOutOfRange("chaotic category needs at least one object");
  LinCategory C;
  for (int k = 0; k < n; ++k) C.add_object("O" + std::to_string(k + 1));
  std::vector<std::vector<int>> u(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      u[i][j] = C.add_morphism("u" + std::to_string(i + 1) + "_" + std::to_string(j + 1), i, j);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) C.set_composition(u[j][k], u[i][j], sv_unit(0));
  for (int i = 0; i < n; ++i) C.set_identity(i, sv_unit(0));
  return C;
}

LinCategory truncated_quiver_category(int num_objects,
                                      const std::vector<std::pair<int, int>>& arrows) {
  LinCategory S;
  for (int k = 0; k < num_objects; ++k) S.add_object("Q" + std::to_string(k + 1));
  int counter = 0;
  for (const auto& [src, dst] : arrows)
    S.add_morphism("a" + std::to_string(++counter), src, dst);
  // all composites of arrows vanish: no structure constants at all
  S.mark_semicategory();
  return unitalize(S);
}

LinCategory random_category(std::mt19937_64& rng) {
  switch (rng() % 7) {
    case 0:
      return point_category();
    case 1:
      return dual_numbers_category();
    case 2:
      return z2_group_category();
    case 3:
      return poset_chain_category(2 + static_cast<int>(rng() % 2));
    case 4:
      return chaotic_category(2 + static_cast<int>(rng() % 2));
    case 5: {
      int n = 2;
      int na = 1 + static_cast<int>(rng() % 3);
      std::vector<std::pair<int, int>> arrows;
      for (int k = 0; k < na; ++k)
        arrows.emplace_back(static_cast<int>(rng() % n), static_cast<int>(rng() % n));
      return truncated_quiver_category(n, arrows);
    }
    default:
      return tensor_category(z2_group_category(), dual_numbers_category());
  }
}

}  // namespace cychom

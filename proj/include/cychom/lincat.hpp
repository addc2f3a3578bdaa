#pragma once
#include <string>
#include <unordered_map>
#include <vector>

#include "cychom/linalg.hpp"

namespace cychom {

// One basis morphism: name, source/target object indices, and its position
// inside its hom space's ordered basis.
struct MorInfo {
  std::string name;
  int src = -1, dst = -1;
  int local = -1;
};

// Finite presented linear (semi)category over Q(i): ordered objects, ordered
// morphism bases per hom space, composition given by structure constants.
// Morphisms carry global ids (declaration order); each hom space lists its
// members' global ids in declaration order.  Missing composition entries are
// zero.  Hom spaces are oriented src -> dst.
class LinCategory {
 public:
  int add_object(const std::string& name);
  // Declares a basis morphism src -> dst; returns its global id.
  int add_morphism(const std::string& name, int src, int dst);
  // Structure constants of g∘f over the local basis of hom(src f, dst g).
  void set_composition(int g, int f, SparseVec coords);
  // Coordinates of id_X over the local basis of hom(X,X).
  void set_identity(int x, SparseVec coords);
  void mark_semicategory() { semicategory_ = true; }

  int num_objects() const { return static_cast<int>(objects_.size()); }
  int num_morphisms() const { return static_cast<int>(mors_.size()); }
  const std::string& object_name(int x) const { return objects_[x]; }
  int object_index(const std::string& name) const;  // IndexOutOfRange when absent
  const MorInfo& mor(int f) const { return mors_[f]; }
  int mor_index(const std::string& name) const;  // IndexOutOfRange when absent
  bool has_object(const std::string& name) const { return obj_index_.count(name) > 0; }
  bool has_mor(const std::string& name) const { return mor_index_.count(name) > 0; }

  // Ordered global ids of the basis of hom(x -> y).
  const std::vector<int>& hom(int x, int y) const;
  int hom_dim(int x, int y) const { return static_cast<int>(hom(x, y).size()); }

  bool is_semicategory() const { return semicategory_; }
  // Identity coordinates over hom(x,x); throws SemicategoryHasNoIdentities.
  const SparseVec& identity_coords(int x) const;
  // Global id of id_x when it is literally one basis element with coefficient
  // 1; throws IdentityNotBasisAligned otherwise.
  int identity_elem(int x) const;
  bool identity_is_basis_aligned(int x) const;

  // Structure constants of g∘f (local coords in hom(src f, dst g)); the zero
  // vector when no entry was declared.  Throws NotComposable on a type error.
  const SparseVec& compose_basis(int g, int f) const;
  // Bilinear extension: g_coords over hom(y,z) local basis, f_coords over
  // hom(x,y); result over hom(x,z).
  SparseVec compose_coords(const SparseVec& g_coords, int y, int z, const SparseVec& f_coords,
                           int x) const;

 private:
  std::vector<std::string> objects_;
  std::vector<MorInfo> mors_;
  std::vector<std::vector<int>> homs_;  // index x * num_objects + y
  std::unordered_map<std::string, int> obj_index_, mor_index_;
  std::unordered_map<long long, SparseVec> comp_;  // key g * num_morphisms + f
  std::vector<SparseVec> identity_;
  bool semicategory_ = false;

  long long comp_key(int g, int f) const {
    return static_cast<long long>(g) * num_morphisms() + f;
  }
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
  void fail(std::string what) {
    ok = false;
    violations.push_back(std::move(what));
  }
};

// Checks associativity on all composable basis triples and (for unital
// categories) both identity laws on every basis morphism.
ValidationReport validate_presentation(const LinCategory& C);

// Adjoin unit morphisms "id_<X>" to a semicategory (appended after the
// existing endomorphism basis).
LinCategory unitalize(const LinCategory& C);

// Bookkeeping for C ⊗ M_r: new basis elements are pairs (f, E_{ij}).
struct MatrixTensorInfo {
  int r = 0;
  // pair_id[f][i*r+j] = global id of f ⊗ E_{ij} in the tensor category.
  std::vector<std::vector<int>> pair_id;
  struct Part {
    int f, i, j;
  };
  std::vector<Part> decompose;  // indexed by tensor-category global id
};

// C ⊗ M_r(k): same objects, hom bases are pairs (f, E_{ij}) with
// (f⊗E_{ij})(g⊗E_{kl}) = δ_{jk} fg⊗E_{il} and id = Σ_p id⊗E_{pp}.
LinCategory tensor_matrix(const LinCategory& C, int r, MatrixTensorInfo* info = nullptr);

// Bookkeeping for C ⊗ C': objects and morphisms are pairs.
struct CategoryTensorInfo {
  int objects_b = 0;
  std::vector<std::vector<int>> pair_id;  // [f][g] -> tensor global id
  struct Part {
    int f, g;
  };
  std::vector<Part> decompose;
};

// C ⊗ C' with componentwise composition (no differential-graded signs here).
LinCategory tensor_category(const LinCategory& A, const LinCategory& B,
                            CategoryTensorInfo* info = nullptr);

// Linear (semi)functor presented by an object map and per-hom coordinate
// matrices (columns = source basis, rows = target basis).
struct LinFunctor {
  LinCategory source, target;
  std::vector<int> object_map;            // source object -> target object
  std::vector<SparseMatrix> mor_map;      // index x*N+y over source hom spaces
  bool is_semifunctor = false;

  const SparseMatrix& matrix(int x, int y) const {
    return mor_map[static_cast<std::size_t>(x) * source.num_objects() + y];
  }
  // Image of a coordinate vector over hom(x,y).
  SparseVec apply(int x, int y, const SparseVec& coords) const {
    return matrix(x, y).apply(coords);
  }
};

// F(g∘f) = F(g)∘F(f) on all composable basis pairs; identity preservation
// unless is_semifunctor.  Violations reported, not thrown.
ValidationReport verify_functor(const LinFunctor& F);

LinFunctor identity_functor(const LinCategory& C);
// G after F (source of G must structurally match target of F).
LinFunctor compose_functors(const LinFunctor& G, const LinFunctor& F);
bool is_identity_functor(const LinFunctor& F);

// Family of endomorphism coordinates eta(X) in hom(X,X), one per object.
struct AutFamily {
  std::vector<SparseVec> components;
};

// Conjugation functor f |-> eta(Y)∘f∘eta(X)^{-1}; objects fixed.  Throws
// NotInvertible when some component has no two-sided inverse, and
// VerificationFailed if the result were not functorial.
LinFunctor inner_automorphism(const LinCategory& C, const AutFamily& eta);

// Two-sided inverse of an endomorphism coordinate vector in End(x), if any.
std::optional<SparseVec> endo_inverse(const LinCategory& C, int x, const SparseVec& coords);

}  // namespace cychom

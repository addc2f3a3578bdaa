#include "cychom/nerve.hpp"

#include <climits>
#include <cstdlib>
#include <cstring>

namespace cychom {

namespace {
constexpr long long kSat = LLONG_MAX / 4;

long long sat_add(long long a, long long b) { return (a > kSat - b) ? kSat : a + b; }
long long sat_mul(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  return (a > kSat / b) ? kSat : a * b;
}

Scalar sign_of(int i) { return (i % 2 == 0) ? Scalar(1) : Scalar(-1); }
}  // namespace

long long default_basis_limit() {
  if (const char* env = std::getenv("CYCHOM_BASIS_LIMIT")) {
    long long v = std::atoll(env);
    if (v > 0) return v;
  }
  return 200000;
}

long long nerve_size_estimate(const LinCategory& C, int n) {
  const int N = C.num_objects();
  // E[a][b] = dim hom(b -> a); basis count at level n = tr(E^{n+1}).
  std::vector<std::vector<long long>> E(N, std::vector<long long>(N));
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) E[a][b] = C.hom_dim(b, a);
  std::vector<std::vector<long long>> P = E;
  for (int step = 0; step < n; ++step) {
    std::vector<std::vector<long long>> Q(N, std::vector<long long>(N, 0));
    for (int a = 0; a < N; ++a)
      for (int k = 0; k < N; ++k) {
        if (P[a][k] == 0) continue;
        for (int b = 0; b < N; ++b) Q[a][b] = sat_add(Q[a][b], sat_mul(P[a][k], E[k][b]));
      }
    P = std::move(Q);
  }
  long long tr = 0;
  for (int a = 0; a < N; ++a) tr = sat_add(tr, P[a][a]);
  return tr;
}

std::string NerveBasis::key(const NerveTuple& t) {
  return std::string(reinterpret_cast<const char*>(t.data()), t.size() * sizeof(int));
}

NerveBasis::NerveBasis(const LinCategory& C, int n, long long limit) : n_(n) {
  if (n < 0) throw IndexOutOfRange("nerve level must be nonnegative");
  long long est = nerve_size_estimate(C, n);
  if (est > limit) throw SizeLimitExceeded(est);
  elements_.reserve(static_cast<std::size_t>(est));

  const int N = C.num_objects();
  std::vector<int> obj(n + 1, 0);
  std::vector<const std::vector<int>*> spaces(n + 1);
  while (true) {
    bool nonempty = true;
    for (int i = 0; i <= n && nonempty; ++i) {
      // f^i: X_{i+1} -> X_i; the last slot wraps: f^n: X_0 -> X_n.
      int src = (i < n) ? obj[i + 1] : obj[0];
      spaces[i] = &C.hom(src, obj[i]);
      nonempty = !spaces[i]->empty();
    }
    if (nonempty) {
      std::vector<int> loc(n + 1, 0);
      while (true) {
        NerveTuple t(n + 1);
        for (int i = 0; i <= n; ++i) t[i] = (*spaces[i])[loc[i]];
        lookup_[key(t)] = static_cast<int>(elements_.size());
        elements_.push_back(std::move(t));
        int d = n;  // advance least-significant slot (f^n) first
        while (d >= 0 && ++loc[d] == static_cast<int>(spaces[d]->size())) loc[d--] = 0;
        if (d < 0) break;
      }
    }
    int d = n;
    while (d >= 0 && ++obj[d] == N) obj[d--] = 0;
    if (d < 0) break;
  }
}

int NerveBasis::index_of(const NerveTuple& t) const {
  auto it = lookup_.find(key(t));
  if (it == lookup_.end()) throw IndexOutOfRange("tuple is not a nerve basis element");
  return it->second;
}

int NerveBasis::object_at(const LinCategory& C, int k, int slot) const {
  return C.mor(elements_[k][slot]).dst;
}

NerveContext::NerveContext(const LinCategory& C, long long limit, ExecMode mode)
    : C_(C), limit_(limit), mode_(mode) {}

const NerveBasis& NerveContext::basis(int n) {
  auto it = bases_.find(n);
  if (it == bases_.end()) it = bases_.emplace(n, NerveBasis(C_, n, limit_)).first;
  return it->second;
}

SparseVec NerveContext::chain_face(int n, int i, int k) {
  if (n < 1 || i < 0 || i > n) throw IndexOutOfRange("face operator index");
  const NerveTuple& t = basis(n).tuple(k);
  const NerveBasis& target = basis(n - 1);
  SparseVec out;
  if (i < n) {
    // compose slots (i, i+1): f^i ∘ f^{i+1}, over hom(X_{i+2} -> X_i)
    const SparseVec& comp = C_.compose_basis(t[i], t[i + 1]);
    const auto& space = C_.hom(C_.mor(t[i + 1]).src, C_.mor(t[i]).dst);
    for (const auto& [l, c] : comp) {
      NerveTuple u;
      u.reserve(t.size() - 1);
      u.insert(u.end(), t.begin(), t.begin() + i);
      u.push_back(space[l]);
      u.insert(u.end(), t.begin() + i + 2, t.end());
      out.emplace_back(target.index_of(u), c);
    }
  } else {
    // wrap-around face: f^n ∘ f^0, over hom(X_1 -> X_n)
    const SparseVec& comp = C_.compose_basis(t[n], t[0]);
    const auto& space = C_.hom(C_.mor(t[0]).src, C_.mor(t[n]).dst);
    for (const auto& [l, c] : comp) {
      NerveTuple u;
      u.reserve(t.size() - 1);
      u.push_back(space[l]);
      u.insert(u.end(), t.begin() + 1, t.end() - 1);
      out.emplace_back(target.index_of(u), c);
    }
  }
  sv_normalize(out);
  return out;
}

SparseVec NerveContext::chain_degeneracy(int n, int i, int k) {
  if (i < 0 || i > n) throw IndexOutOfRange("degeneracy operator index");
  const NerveTuple& t = basis(n).tuple(k);
  const NerveBasis& target = basis(n + 1);
  // insert id at object X_{i+1} after slot i (append id_{X_0} when i = n)
  int x = (i < n) ? C_.mor(t[i + 1]).dst : C_.mor(t[0]).dst;
  const auto& space = C_.hom(x, x);
  SparseVec out;
  for (const auto& [l, c] : C_.identity_coords(x)) {
    NerveTuple u;
    u.reserve(t.size() + 1);
    u.insert(u.end(), t.begin(), t.begin() + i + 1);
    u.push_back(space[l]);
    u.insert(u.end(), t.begin() + i + 1, t.end());
    out.emplace_back(target.index_of(u), c);
  }
  sv_normalize(out);
  return out;
}

int NerveContext::chain_rotation(int n, int k) {
  const NerveTuple& t = basis(n).tuple(k);
  NerveTuple u;
  u.reserve(t.size());
  u.push_back(t.back());
  u.insert(u.end(), t.begin(), t.end() - 1);
  return basis(n).index_of(u);
}

SparseMatrix NerveContext::assemble(int rows_level, int cols_level,
                                    const std::function<SparseVec(int)>& row_of) {
  const int rows = basis(rows_level).size();
  const int cols = basis(cols_level).size();
  SparseMatrix M(rows, cols);
  if (mode_ == ExecMode::parallel) {
    // Exceptions may not escape the parallel region; capture and rethrow.
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

const SparseMatrix& NerveContext::delta(int n, int i) {
  if (n < 1 || i < 0 || i > n) throw IndexOutOfRange("coface index");
  auto key = std::make_pair(n, i);
  auto it = delta_cache_.find(key);
  if (it == delta_cache_.end()) {
    basis(n - 1);  // materialize before the parallel loop
    it = delta_cache_
             .emplace(key, assemble(n, n - 1, [&](int k) { return chain_face(n, i, k); }))
             .first;
  }
  return it->second;
}

const SparseMatrix& NerveContext::sigma(int n, int i) {
  if (n < 0 || i < 0 || i > n) throw IndexOutOfRange("codegeneracy index");
  if (C_.is_semicategory()) throw SemicategoryHasNoIdentities();
  auto key = std::make_pair(n, i);
  auto it = sigma_cache_.find(key);
  if (it == sigma_cache_.end()) {
    basis(n + 1);
    it = sigma_cache_
             .emplace(key, assemble(n, n + 1, [&](int k) { return chain_degeneracy(n, i, k); }))
             .first;
  }
  return it->second;
}

const SparseMatrix& NerveContext::tau(int n) {
  auto it = tau_cache_.find(n);
  if (it == tau_cache_.end()) {
    it = tau_cache_
             .emplace(n, assemble(n, n, [&](int k) { return sv_unit(chain_rotation(n, k)); }))
             .first;
  }
  return it->second;
}

SparseMatrix NerveContext::b(int n) {
  SparseMatrix M(basis(n + 1).size(), basis(n).size());
  for (int i = 0; i <= n + 1; ++i) M = M + delta(n + 1, i).scaled(sign_of(i));
  return M;
}

SparseMatrix NerveContext::b_prime(int n) {
  SparseMatrix M(basis(n + 1).size(), basis(n).size());
  for (int i = 0; i <= n; ++i) M = M + delta(n + 1, i).scaled(sign_of(i));
  return M;
}

SparseMatrix NerveContext::lambda(int n) { return tau(n).scaled(sign_of(n)); }

SparseMatrix NerveContext::A(int n) {
  SparseMatrix L = lambda(n);
  SparseMatrix acc = SparseMatrix::identity(basis(n).size());
  SparseMatrix power = acc;
  for (int j = 1; j <= n; ++j) {
    power = power * L;
    acc = acc + power;
  }
  return acc;
}

SparseMatrix NerveContext::B0(int n) {
  basis(n + 1);
  if (C_.is_semicategory()) throw SemicategoryHasNoIdentities();
  // row x = coords of (id_{X_0} ⊗ x) - (-1)^{n+1} (x ⊗ id_{X_0}) at level n+1
  const Scalar s = -sign_of(n + 1);
  return assemble(n, n + 1, [&](int k) {
    SparseVec append = chain_degeneracy(n, n, k);  // (x, id_{X_0})
    const NerveTuple& t = basis(n).tuple(k);
    int x0 = C_.mor(t[0]).dst;
    const auto& space = C_.hom(x0, x0);
    const NerveBasis& target = basis(n + 1);
    SparseVec out;
    for (const auto& [l, c] : C_.identity_coords(x0)) {
      NerveTuple u;
      u.reserve(t.size() + 1);
      u.push_back(space[l]);
      u.insert(u.end(), t.begin(), t.end());
      out.emplace_back(target.index_of(u), c);
    }
    sv_normalize(out);
    sv_axpy(out, s, append);
    return out;
  });
}

SparseMatrix NerveContext::Bop(int n) { return A(n) * B0(n); }

Scalar pair_cochain(const Cochain& phi, const SparseVec& chain) {
  Scalar s(0);
  std::size_t a = 0, b = 0;
  while (a < phi.coords.size() && b < chain.size()) {
    if (phi.coords[a].first < chain[b].first)
      ++a;
    else if (chain[b].first < phi.coords[a].first)
      ++b;
    else {
      s += phi.coords[a].second * chain[b].second;
      ++a;
      ++b;
    }
  }
  return s;
}

}  // namespace cychom

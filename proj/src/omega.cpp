#include "cychom/omega.hpp"

#include <limits>
#include <string>

namespace cychom {
namespace {

constexpr long long kSaturate = std::numeric_limits<long long>::max() / 4;

long long sat_add(long long a, long long b) {
  return (a >= kSaturate - b) ? kSaturate : a + b;
}
long long sat_mul(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  if (a >= kSaturate / b) return kSaturate;
  return a * b;
}

// Number of composable basis chains (g1,...,glen) with dst(g1) = dst and
// src(glen) = src, saturating.
long long chain_count(const LinCategory& C, int len, int src, int dst) {
  int m = C.num_objects();
  std::vector<long long> c(m, 0);
  c[dst] = 1;
  for (int step = 0; step < len; ++step) {
    std::vector<long long> next(m, 0);
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y)
        next[x] = sat_add(next[x], sat_mul(static_cast<long long>(C.hom_dim(x, y)), c[y]));
    c = std::move(next);
  }
  return c[src];
}

void add_term(std::map<OmegaSymbol, Scalar>& acc, OmegaSymbol&& s, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = acc.emplace(std::move(s), c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

std::string mor_label(const LinCategory& C, int id) {
  return "'" + C.mor(id).name + "'";
}

}  // namespace

bool operator==(const OmegaElement& a, const OmegaElement& b) {
  return a.src == b.src && a.dst == b.dst && a.degree == b.degree && a.coords == b.coords;
}

bool operator==(const GradedTrace& a, const GradedTrace& b) {
  return a.dimension == b.dimension && a.values == b.values;
}

OmegaContext::OmegaContext(const LinCategory& C, int degree_bound, long long basis_limit)
    : nerve_(C, basis_limit), bound_(degree_bound), basis_limit_(basis_limit) {
  if (degree_bound < 0) throw IndexOutOfRange("degree bound must be nonnegative");
}

OmegaElement OmegaContext::zero(int src, int dst, int degree) const {
  const LinCategory& C = category();
  if (src < 0 || src >= C.num_objects() || dst < 0 || dst >= C.num_objects())
    throw IndexOutOfRange("object id");
  if (degree < 0 || degree > bound_) throw DegreeOverflow(bound_);
  return OmegaElement{src, dst, degree, {}};
}

OmegaElement OmegaContext::from_morphism(int mor_id) const {
  const MorInfo& m = category().mor(mor_id);
  OmegaElement e = zero(m.src, m.dst, 0);
  e.coords.emplace(OmegaSymbol{mor_id, {}}, Scalar(1));
  return e;
}

void OmegaContext::check_symbol(int n, int src, int dst, const OmegaSymbol& s) const {
  const LinCategory& C = category();
  if (s.degree() != n) throw NotComposable("symbol degree does not match the element degree");
  if (n == 0) {
    if (s.lead == kUnitLead) throw NotComposable("degree-0 symbols cannot have a unit lead");
    const MorInfo& m = C.mor(s.lead);
    if (m.src != src || m.dst != dst)
      throw NotComposable("lead " + mor_label(C, s.lead) + " does not run " +
                          C.object_name(src) + " -> " + C.object_name(dst));
    return;
  }
  for (int k = 0; k + 1 < n; ++k)
    if (C.mor(s.tail[k]).src != C.mor(s.tail[k + 1]).dst)
      throw NotComposable("tail chain breaks between " + mor_label(C, s.tail[k]) + " and " +
                          mor_label(C, s.tail[k + 1]));
  if (C.mor(s.tail[n - 1]).src != src)
    throw NotComposable("tail chain does not start at " + C.object_name(src));
  int x1 = C.mor(s.tail[0]).dst;
  if (s.lead == kUnitLead) {
    if (x1 != dst)
      throw NotComposable("unit lead needs the tail to end at " + C.object_name(dst));
  } else {
    const MorInfo& m = C.mor(s.lead);
    if (m.src != x1 || m.dst != dst)
      throw NotComposable("lead " + mor_label(C, s.lead) + " does not run " +
                          C.object_name(x1) + " -> " + C.object_name(dst));
  }
}

OmegaElement OmegaContext::make(int src, int dst, int degree,
                                std::map<OmegaSymbol, Scalar> coords) const {
  OmegaElement e = zero(src, dst, degree);
  for (auto& [s, c] : coords) {
    check_symbol(degree, src, dst, s);
    if (!c.is_zero()) e.coords.emplace(s, c);
  }
  return e;
}

OmegaElement OmegaContext::add(const OmegaElement& a, const OmegaElement& b) const {
  if (a.src != b.src || a.dst != b.dst || a.degree != b.degree)
    throw DimensionMismatch("graded-envelope addition needs matching objects and degree");
  OmegaElement out = a;
  for (const auto& [s, c] : b.coords) add_term(out.coords, OmegaSymbol(s), c);
  return out;
}

OmegaElement OmegaContext::scale(const OmegaElement& a, const Scalar& c) const {
  OmegaElement out = zero(a.src, a.dst, a.degree);
  if (c.is_zero()) return out;
  for (const auto& [s, v] : a.coords) out.coords.emplace(s, v * c);
  return out;
}

std::vector<std::pair<int, Scalar>> OmegaContext::compose_global(int g, int f) const {
  const LinCategory& C = category();
  const SparseVec& loc = C.compose_basis(g, f);
  const std::vector<int>& target = C.hom(C.mor(f).src, C.mor(g).dst);
  std::vector<std::pair<int, Scalar>> out;
  out.reserve(loc.size());
  for (const auto& [l, c] : loc) out.emplace_back(target[l], c);
  return out;
}

OmegaElement OmegaContext::compose(const OmegaElement& a, const OmegaElement& b) const {
  if (a.src != b.dst)
    throw NotComposable("graded composition needs source(left) == target(right)");
  if (a.degree + b.degree > bound_) throw DegreeOverflow(bound_);
  OmegaElement out = zero(b.src, a.dst, a.degree + b.degree);

  for (const auto& [sa, ca] : a.coords) {
    int i = sa.degree();
    for (const auto& [sb, cb] : b.coords) {
      Scalar c = ca * cb;
      if (i == 0) {
        // f . (g0 + mu') dg1...dgj = (f g0 + mu' f) dg1...dgj
        if (sb.lead == kUnitLead) {
          add_term(out.coords, OmegaSymbol{sa.lead, sb.tail}, c);
        } else {
          for (const auto& [k, w] : compose_global(sa.lead, sb.lead))
            add_term(out.coords, OmegaSymbol{k, sb.tail}, c * w);
        }
        continue;
      }
      if (sb.lead == kUnitLead) {
        // Only the mu' term survives: the lead and every differential of the
        // right factor's (zero) morphism part vanish.
        OmegaSymbol s{sa.lead, sa.tail};
        s.tail.insert(s.tail.end(), sb.tail.begin(), sb.tail.end());
        add_term(out.coords, std::move(s), c);
        continue;
      }
      int b0 = sb.lead;
      // d(a^i b0): compose the last tail entry with the right lead.
      for (const auto& [k, w] : compose_global(sa.tail[i - 1], b0)) {
        OmegaSymbol s{sa.lead, {}};
        s.tail.reserve(i + sb.degree());
        s.tail.insert(s.tail.end(), sa.tail.begin(), sa.tail.end() - 1);
        s.tail.push_back(k);
        s.tail.insert(s.tail.end(), sb.tail.begin(), sb.tail.end());
        add_term(out.coords, std::move(s), c * w);
      }
      // Interior contractions d(a^l a^{l+1}), sign (-1)^{i-l}.
      for (int l = 1; l <= i - 1; ++l) {
        Scalar sign((i - l) % 2 == 0 ? 1 : -1);
        for (const auto& [k, w] : compose_global(sa.tail[l - 1], sa.tail[l])) {
          OmegaSymbol s{sa.lead, {}};
          s.tail.reserve(i + sb.degree());
          s.tail.insert(s.tail.end(), sa.tail.begin(), sa.tail.begin() + (l - 1));
          s.tail.push_back(k);
          s.tail.insert(s.tail.end(), sa.tail.begin() + (l + 1), sa.tail.end());
          s.tail.push_back(b0);
          s.tail.insert(s.tail.end(), sb.tail.begin(), sb.tail.end());
          add_term(out.coords, std::move(s), c * w * sign);
        }
      }
      // (a0 + mu) a1 absorbed into the lead, sign (-1)^i.
      Scalar sign(i % 2 == 0 ? 1 : -1);
      std::vector<int> rest(sa.tail.begin() + 1, sa.tail.end());
      rest.push_back(b0);
      rest.insert(rest.end(), sb.tail.begin(), sb.tail.end());
      if (sa.lead == kUnitLead) {
        add_term(out.coords, OmegaSymbol{sa.tail[0], rest}, c * sign);
      } else {
        for (const auto& [k, w] : compose_global(sa.lead, sa.tail[0]))
          add_term(out.coords, OmegaSymbol{k, rest}, c * w * sign);
      }
    }
  }
  return out;
}

OmegaElement OmegaContext::differential(const OmegaElement& a) const {
  if (a.degree + 1 > bound_) throw DegreeOverflow(bound_);
  OmegaElement out = zero(a.src, a.dst, a.degree + 1);
  for (const auto& [s, c] : a.coords) {
    if (s.lead == kUnitLead) continue;
    OmegaSymbol t{kUnitLead, {}};
    t.tail.reserve(s.tail.size() + 1);
    t.tail.push_back(s.lead);
    t.tail.insert(t.tail.end(), s.tail.begin(), s.tail.end());
    out.coords.emplace(std::move(t), c);
  }
  return out;
}

long long OmegaContext::hom_size_estimate(int n, int src, int dst) const {
  const LinCategory& C = category();
  long long total = chain_count(C, n + 1, src, dst);
  if (n >= 1) total = sat_add(total, chain_count(C, n, src, dst));
  return total;
}

const std::vector<OmegaSymbol>& OmegaContext::hom_basis(int n, int src, int dst) {
  if (n < 0 || n > bound_) throw DegreeOverflow(bound_);
  auto key = std::make_tuple(n, src, dst);
  auto hit = basis_cache_.find(key);
  if (hit != basis_cache_.end()) return hit->second;

  long long estimate = hom_size_estimate(n, src, dst);
  if (estimate > basis_limit_) throw SizeLimitExceeded(estimate);

  const LinCategory& C = category();
  std::vector<OmegaSymbol> symbols;
  if (n == 0) {
    for (int f : C.hom(src, dst)) symbols.push_back(OmegaSymbol{f, {}});
    return basis_cache_.emplace(key, std::move(symbols)).first->second;
  }

  int m = C.num_objects();
  std::vector<int> objs(n, 0);  // objs[k] = X_{k+1}; lexicographic odometer
  while (true) {
    int x1 = objs[0];
    bool feasible = true;
    for (int k = 1; k <= n && feasible; ++k) {
      int from = (k == n) ? src : objs[k];
      if (C.hom_dim(from, objs[k - 1]) == 0) feasible = false;
    }
    if (feasible) {
      int lead_count = C.hom_dim(x1, dst) + (x1 == dst ? 1 : 0);
      for (int lead_idx = 0; lead_idx < lead_count; ++lead_idx) {
        int lead = lead_idx < C.hom_dim(x1, dst) ? C.hom(x1, dst)[lead_idx] : kUnitLead;
        std::vector<int> locals(n, 0);
        while (true) {
          OmegaSymbol s{lead, {}};
          s.tail.reserve(n);
          for (int k = 1; k <= n; ++k) {
            int from = (k == n) ? src : objs[k];
            s.tail.push_back(C.hom(from, objs[k - 1])[locals[k - 1]]);
          }
          symbols.push_back(std::move(s));
          int pos = n - 1;  // advance with f1 most significant
          while (pos >= 0) {
            int from = (pos + 1 == n) ? src : objs[pos + 1];
            if (++locals[pos] < C.hom_dim(from, objs[pos])) break;
            locals[pos--] = 0;
          }
          if (pos < 0) break;
        }
      }
    }
    int pos = n - 1;
    while (pos >= 0 && ++objs[pos] == m) objs[pos--] = 0;
    if (pos < 0) break;
  }
  return basis_cache_.emplace(key, std::move(symbols)).first->second;
}

Scalar OmegaContext::eval(const GradedTrace& T, const OmegaElement& w) const {
  if (w.src != w.dst)
    throw DimensionMismatch("traces evaluate endomorphisms only");
  if (w.degree != T.dimension)
    throw DimensionMismatch("traces evaluate elements of their own dimension only");
  Scalar total(0);
  for (const auto& [s, c] : w.coords) {
    auto it = T.values.find(s);
    if (it != T.values.end()) total = total + c * it->second;
  }
  return total;
}

void OmegaContext::verify_trace(const GradedTrace& T) {
  const LinCategory& C = category();
  int n = T.dimension;
  if (n < 0 || n > bound_) throw DegreeOverflow(bound_);
  for (const auto& [s, v] : T.values) {
    if (s.lead == kUnitLead && s.tail.empty())
      throw NotComposable("degree-0 symbols cannot have a unit lead");
    int src = s.tail.empty() ? C.mor(s.lead).src : C.mor(s.tail.back()).src;
    int dst = s.lead == kUnitLead ? C.mor(s.tail.front()).dst : C.mor(s.lead).dst;
    if (src != dst) throw NotComposable("trace value on a non-endomorphism symbol");
    check_symbol(n, src, dst, s);
  }
  int m = C.num_objects();
  // Closure: the differential of every one-degree-down endomorphism symbol
  // pairs to zero.
  if (n >= 1) {
    for (int x = 0; x < m; ++x) {
      for (const OmegaSymbol& s : hom_basis(n - 1, x, x)) {
        if (s.lead == kUnitLead) continue;
        OmegaSymbol ds{kUnitLead, {}};
        ds.tail.reserve(n);
        ds.tail.push_back(s.lead);
        ds.tail.insert(ds.tail.end(), s.tail.begin(), s.tail.end());
        auto it = T.values.find(ds);
        if (it != T.values.end() && !it->second.is_zero())
          throw TraceAxiomViolated("closure at object '" + C.object_name(x) + "', degree " +
                                   std::to_string(n - 1));
      }
    }
  }
  // Graded law on every complementary-degree basis pair.
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      for (int i = 0; i <= n; ++i) {
        int j = n - i;
        const std::vector<OmegaSymbol>& gs = hom_basis(i, x, y);
        const std::vector<OmegaSymbol>& hs = hom_basis(j, y, x);
        for (const OmegaSymbol& g : gs) {
          OmegaElement ge = zero(x, y, i);
          ge.coords.emplace(g, Scalar(1));
          for (const OmegaSymbol& h : hs) {
            OmegaElement he = zero(y, x, j);
            he.coords.emplace(h, Scalar(1));
            Scalar lhs = eval(T, compose(he, ge));
            Scalar rhs = eval(T, compose(ge, he));
            if ((i * j) % 2 != 0) rhs = Scalar(0) - rhs;
            if (!(lhs == rhs))
              throw TraceAxiomViolated("graded law between '" + C.object_name(x) + "' and '" +
                                       C.object_name(y) + "' at degrees (" + std::to_string(i) +
                                       ", " + std::to_string(j) + ")");
          }
        }
      }
    }
  }
}

OmegaElement omega_algebra(OmegaContext& ctx, const OmegaElement& a, const OmegaElement& b,
                           OmegaOp op) {
  switch (op) {
    case OmegaOp::compose:
      return ctx.compose(a, b);
    case OmegaOp::differentiate:
      return ctx.differential(a);
  }
  throw IndexOutOfRange("graded-envelope operation");
}

GradedTrace cocycle_to_trace(OmegaContext& ctx, const Cochain& phi) {
  NerveContext& nctx = ctx.nerve();
  int n = phi.n;
  if (!is_lambda_invariant(nctx, phi)) throw NotACocycle("(1 - lambda) phi != 0");
  if (!apply_op(nctx.b(n), phi, n + 1).coords.empty()) throw NotACocycle("b phi != 0");
  const NerveBasis& basis = nctx.basis(n);
  GradedTrace T{n, {}};
  for (const auto& [k, c] : phi.coords) {
    const NerveTuple& t = basis.tuple(k);
    T.values.emplace(OmegaSymbol{t[0], {t.begin() + 1, t.end()}}, c);
  }
  try {
    ctx.verify_trace(T);
  } catch (const TraceAxiomViolated& e) {
    throw VerificationFailed(std::string("cocycle produced an invalid trace: ") + e.what());
  }
  return T;
}

Cochain trace_to_cocycle(OmegaContext& ctx, const GradedTrace& T) {
  ctx.verify_trace(T);
  NerveContext& nctx = ctx.nerve();
  int n = T.dimension;
  const NerveBasis& basis = nctx.basis(n);
  SparseVec coords;
  for (int k = 0; k < basis.size(); ++k) {
    const NerveTuple& t = basis.tuple(k);
    auto it = T.values.find(OmegaSymbol{t[0], {t.begin() + 1, t.end()}});
    if (it != T.values.end() && !it->second.is_zero()) coords.emplace_back(k, it->second);
  }
  Cochain phi{n, coords};
  if (!is_cyclic_cocycle(nctx, phi))
    throw VerificationFailed("trace character is not a cyclic cocycle");
  return phi;
}

}  // namespace cychom

#include "cychom/pairing.hpp"

#include <functional>
#include <omp.h>

#include "cychom/builtin.hpp"
#include "cychom/linalg.hpp"
#include "cychom/omega_tensor.hpp"

namespace cychom {
namespace {

std::string tuple_label(const LinCategory& C, const NerveTuple& t) {
  std::string out = "(";
  for (std::size_t s = 0; s < t.size(); ++s) {
    if (s) out += ", ";
    out += C.mor(t[s]).name;
  }
  return out + ")";
}

int first_difference(const SparseVec& a, const SparseVec& b) {
  SparseVec d = sv_sub(a, b);
  return d.empty() ? -1 : d.front().first;
}

// Per-tuple values evaluated in parallel, then folded into a cochain.
Cochain evaluate_level(NerveContext& nctx, int n, ExecMode mode,
                       const std::function<Scalar(const NerveTuple&)>& value_of) {
  const NerveBasis& basis = nctx.basis(n);
  std::vector<Scalar> values(basis.size());
  if (mode == ExecMode::parallel) {
    std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic, 16)
    for (int k = 0; k < basis.size(); ++k) {
      try {
        values[k] = value_of(basis.tuple(k));
      } catch (...) {
#pragma omp critical
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
  } else {
    for (int k = 0; k < basis.size(); ++k) values[k] = value_of(basis.tuple(k));
  }
  Cochain out{n, {}};
  for (int k = 0; k < basis.size(); ++k)
    if (!values[k].is_zero()) out.coords.emplace_back(k, values[k]);
  return out;
}

// T(f0 df1 ... df^{i-1} (f^i f^{i+1}) df^{i+2} ... df^{last}), 1 <= i <= last-1.
Scalar contracted_term(const OmegaContext& ctx, const GradedTrace& T, const NerveTuple& t, int i) {
  OmegaElement acc = ctx.from_morphism(t[0]);
  for (std::size_t s = 1; s < t.size(); ++s) {
    if (static_cast<int>(s) == i) {
      acc = ctx.compose(acc, ctx.compose(ctx.from_morphism(t[s]), ctx.from_morphism(t[s + 1])));
      ++s;
    } else {
      acc = ctx.compose(acc, ctx.differential(ctx.from_morphism(t[s])));
    }
  }
  return ctx.eval(T, acc);
}

// T(f0 df1 ... f^j ... df^{last}) with slot j left bare, 1 <= j <= last.
Scalar bare_slot_term(const OmegaContext& ctx, const GradedTrace& T, const NerveTuple& t, int j) {
  OmegaElement acc = ctx.from_morphism(t[0]);
  for (std::size_t s = 1; s < t.size(); ++s) {
    OmegaElement f = ctx.from_morphism(t[s]);
    acc = ctx.compose(acc, static_cast<int>(s) == j ? f : ctx.differential(f));
  }
  return ctx.eval(T, acc);
}

Scalar symbol_value(const GradedTrace& T, const OmegaSymbol& s) {
  auto it = T.values.find(s);
  return it == T.values.end() ? Scalar(0) : it->second;
}

struct TensorRealization {
  OmegaTensorWalk walk;
  const GradedTrace& TL;
  const GradedTrace& TR;

  OmegaTensorElem apply(int mor_id) const { return walk.apply(mor_id); }
  OmegaTensorElem differential(const OmegaTensorElem& a) const { return walk.differential(a); }
  OmegaTensorElem compose(const OmegaTensorElem& a, const OmegaTensorElem& b) const {
    return walk.compose(a, b);
  }

  Scalar trace(const OmegaTensorElem& w) const {
    Scalar total(0);
    for (const auto& [pr, c] : w.coords) {
      if (c.is_zero()) continue;
      if (pr.first.degree() != TL.dimension || pr.second.degree() != TR.dimension) continue;
      Scalar a = symbol_value(TL, pr.first);
      if (a.is_zero()) continue;
      total += c * a * symbol_value(TR, pr.second);
    }
    return total;
  }
};

// The level-2 cochain on the one-object identity category with value 1 on
// its unique basis tuple; the generator the periodicity shift cups with.
Cochain unit_degree_two() { return Cochain{2, {{0, Scalar(1)}}}; }

}  // namespace

Cochain cup_product(const LinCategory& A, const LinCategory& B, const Cochain& phi,
                    const Cochain& phi_b, LinCategory* tensor_out, CategoryTensorInfo* info_out,
                    long long basis_limit) {
  const int n = phi.n + phi_b.n;
  OmegaContext left(A, n, basis_limit);
  OmegaContext right(B, n, basis_limit);
  GradedTrace TL = cocycle_to_trace(left, phi);
  GradedTrace TR = cocycle_to_trace(right, phi_b);
  CategoryTensorInfo info;
  LinCategory T = tensor_category(A, B, &info);
  NerveContext tensor_nerve(T, basis_limit);
  TensorRealization real{OmegaTensorWalk(left, right, info), TL, TR};
  Cochain out = cycle_character(tensor_nerve, real, n);
  if (tensor_out) *tensor_out = std::move(T);
  if (info_out) *info_out = info;
  return out;
}

PeriodicityResult periodicity_S(OmegaContext& ctx, const Cochain& phi, bool cross_check) {
  if (ctx.degree_bound() < phi.n) throw DegreeOverflow(ctx.degree_bound());
  NerveContext& nctx = ctx.nerve();
  const int r = phi.n;
  GradedTrace T = cocycle_to_trace(ctx, phi);

  PeriodicityResult res;
  res.S = evaluate_level(nctx, r + 2, nctx.mode(), [&](const NerveTuple& t) {
    Scalar total(0);
    for (int i = 1; i <= r + 1; ++i) total += contracted_term(ctx, T, t, i);
    return total;
  });
  if (!is_cyclic_cocycle(nctx, res.S))
    throw VerificationFailed("periodicity shift did not produce a cyclic cocycle");

  res.witness = evaluate_level(nctx, r + 1, nctx.mode(), [&](const NerveTuple& t) {
    Scalar total(0);
    for (int j = 1; j <= r + 1; ++j) {
      Scalar v = bare_slot_term(ctx, T, t, j);
      total += (j % 2 == 1) ? v : -v;
    }
    return total;
  });
  Cochain bw = apply_op(nctx.b(r + 1), res.witness, r + 2);
  if (bw.coords != res.S.coords)
    throw VerificationFailed("periodicity witness does not cobound the shifted cocycle");

  if (cross_check) {
    LinCategory P = point_category();
    CategoryTensorInfo info;
    LinCategory T2;
    Cochain cup =
        cup_product(ctx.category(), P, phi, unit_degree_two(), &T2, &info, nctx.limit());
    NerveContext tn(T2, nctx.limit(), nctx.mode());
    const NerveBasis& basis = nctx.basis(r + 2);
    const NerveBasis& tbasis = tn.basis(r + 2);
    for (int k = 0; k < basis.size(); ++k) {
      NerveTuple u;
      for (int f : basis.tuple(k)) u.push_back(info.pair_id[f][0]);
      if (sv_get(cup.coords, tbasis.index_of(u)) != sv_get(res.S.coords, k))
        throw VerificationFailed("contracted-slot shift disagrees with the cup product at " +
                                 tuple_label(ctx.category(), basis.tuple(k)));
    }
  }
  return res;
}

PeriodicityCertificate verify_periodicity_theorem(const FredholmModule& FM, int m,
                                                  bool cross_check, long long basis_limit) {
  if (m < 0) throw IndexOutOfRange("character index must be nonnegative");
  FredholmReport rep = validate_fredholm(FM);
  if (!rep.ok) throw VerificationFailed(rep.violations.front());
  const LinCategory& C = FM.rep.category;
  OmegaContext octx(C, 2 * m, basis_limit);
  NerveContext& nctx = octx.nerve();

  PeriodicityCertificate cert;
  cert.m = m;
  cert.ch_low = chern_character(nctx, FM, m);
  cert.ch_high = chern_character(nctx, FM, m + 1);
  cert.S_low = periodicity_S(octx, cert.ch_low, cross_check).S;

  const int level = 2 * m + 1;
  const int slots = level + 1;
  const Scalar half(mpq_class(1, 2));
  cert.witness = evaluate_level(nctx, level, nctx.mode(), [&](const NerveTuple& t) {
    Scalar total(0);
    for (int j = 0; j < slots; ++j) {
      const MorInfo& mj = C.mor(t[j]);
      BlockMatrix acc = FM.F[mj.dst] * FM.rep.action[t[j]];
      for (int step = 1; step < slots; ++step) {
        int s = (j + step) % slots;
        const MorInfo& ms = C.mor(t[s]);
        acc = acc * graded_commutator(FM, ms.src, ms.dst, FM.rep.action[t[s]]);
      }
      Scalar v = acc.eps_trace();
      total += (j % 2 == 1) ? v : -v;
    }
    return total * half;
  });

  Cochain rotated = apply_op(nctx.lambda(level), cert.witness, level);
  int bad = first_difference(cert.witness.coords, rotated.coords);
  if (bad >= 0)
    throw AssertionFailed("periodicity witness is not rotation-invariant at " +
                          tuple_label(C, nctx.basis(level).tuple(bad)));

  SparseVec lhs = sv_add(cert.S_low.coords, sv_scaled(cert.ch_high.coords, Scalar(m + 1)));
  Cochain bw = apply_op(nctx.b(level), cert.witness, level + 1);
  bad = first_difference(lhs, bw.coords);
  if (bad >= 0)
    throw AssertionFailed("periodicity identity fails at " +
                          tuple_label(C, nctx.basis(level + 1).tuple(bad)));
  return cert;
}

SBCertificate sb_relation_check(OmegaContext& ctx, const Cochain& psi) {
  const int n = psi.n;
  if (n < 1) throw IndexOutOfRange("input level must be at least 1");
  NerveContext& nctx = ctx.nerve();
  Cochain bpsi = apply_op(nctx.b(n), psi, n + 1);
  if (!is_lambda_invariant(nctx, bpsi)) throw NotLambdaInvariant();

  SBCertificate cert;
  cert.B_psi = apply_op(nctx.Bop(n - 1), psi, n - 1);
  if (!is_cyclic_cocycle(nctx, cert.B_psi))
    throw AssertionFailed("B psi is not a cyclic cocycle");
  cert.checks.push_back("B psi is a rotation-invariant cocycle at level " + std::to_string(n - 1));

  Cochain averaged = apply_op(nctx.A(n - 1), cert.B_psi, n - 1);
  if (averaged.coords != sv_scaled(cert.B_psi.coords, Scalar(n)))
    throw AssertionFailed("averaging does not scale B psi by " + std::to_string(n));
  cert.checks.push_back("A(B psi) = " + std::to_string(n) + " B psi");

  PeriodicityResult shifted = periodicity_S(ctx, cert.B_psi, false);
  cert.S_B = shifted.S;

  // theta'' = B0 psi - B psi / n averages to zero, hence is a rotation
  // defect; peel it off psi so the bare-slot witness can close the gap.
  Cochain theta = apply_op(nctx.B0(n - 1), psi, n - 1);
  SparseVec theta_pp =
      sv_sub(theta.coords, sv_scaled(cert.B_psi.coords, Scalar(mpq_class(1, n))));
  const int dim = nctx.basis(n - 1).size();
  SparseMatrix defect = SparseMatrix::identity(dim) - nctx.lambda(n - 1);
  std::vector<Scalar> rhs(dim);
  for (const auto& [idx, c] : theta_pp) rhs[idx] = c;
  auto sol = linear_solve(defect, rhs, nctx.mode());
  if (!sol) throw VerificationFailed("rotation defect of B0 psi has no preimage under 1 - lambda");
  Cochain psi_one{n - 1, {}};
  for (int k = 0; k < dim; ++k)
    if (!(*sol)[k].is_zero()) psi_one.coords.emplace_back(k, (*sol)[k]);

  SparseVec psi_pp = sv_sub(psi.coords, apply_op(nctx.b(n - 1), psi_one, n).coords);
  cert.zeta = Cochain{n, sv_sub(shifted.witness.coords, sv_scaled(psi_pp, Scalar(n * (n + 1))))};
  if (!is_lambda_invariant(nctx, cert.zeta))
    throw AssertionFailed("zeta is not rotation-invariant");
  cert.checks.push_back("zeta at level " + std::to_string(n) + " is rotation-invariant");

  SparseVec target = sv_sub(cert.S_B.coords, sv_scaled(bpsi.coords, Scalar(n * (n + 1))));
  Cochain bzeta = apply_op(nctx.b(n), cert.zeta, n + 1);
  if (bzeta.coords != target)
    throw AssertionFailed("b(zeta) does not equal S(B psi) - n(n+1) b(psi)");
  cert.checks.push_back("b(zeta) = S(B psi) - " + std::to_string(n * (n + 1)) + " b(psi)");

  Cochain difference{n + 1, target};
  auto independent = coboundary_witness(nctx, difference);
  if (!independent)
    throw AssertionFailed("independent solve found no rotation-invariant witness");
  cert.checks.push_back("independent coboundary solve confirms the relation");
  return cert;
}

HomotopyCertificate homotopy_family_check(NerveContext& nctx, const FredholmFamily& family,
                                          int m) {
  const int count = static_cast<int>(family.samples.size());
  if (count < 2) throw DimensionMismatch("family needs at least two samples");
  if (!family.conjugators.empty() &&
      family.conjugators.size() != family.samples.size())
    throw DimensionMismatch("conjugator rows must match the sample count");
  for (int t = 0; t < count; ++t) {
    FredholmReport rep = validate_fredholm(family.samples[t]);
    if (!rep.ok)
      throw VerificationFailed("sample " + std::to_string(t) + ": " + rep.violations.front());
    if (family.samples[t].rep.dims != family.samples.front().rep.dims)
      throw DimensionMismatch("sample " + std::to_string(t) + " has mismatched graded dimensions");
  }

  HomotopyCertificate cert;
  cert.m = m;
  for (const FredholmModule& FM : family.samples)
    cert.characters.push_back(chern_character(nctx, FM, m + 1));

  for (int i = 0; i < count; ++i)
    for (int j = i + 1; j < count; ++j) {
      ClassComparison cc = class_equal(nctx, cert.characters[i], cert.characters[j]);
      if (!cc.equal) throw ClassesDiffer(i, j);
      cert.pair_witnesses.push_back(cc.witness);
      cert.checks.push_back("samples " + std::to_string(i) + " and " + std::to_string(j) +
                            " share one class");
    }

  for (std::size_t t = 0; t < family.conjugators.size(); ++t) {
    FredholmModule conj = conjugate_module(family.samples[t], family.conjugators[t]);
    Cochain chi = chern_character(nctx, conj, m + 1);
    if (chi.coords != cert.characters[t].coords)
      throw AssertionFailed("conjugated sample " + std::to_string(t) +
                            " changed its character cochain");
    cert.checks.push_back("conjugated sample " + std::to_string(t) +
                          " reproduces its character exactly");
  }
  return cert;
}

}  // namespace cychom

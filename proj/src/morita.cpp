#include "cychom/morita.hpp"

#include <functional>
#include <omp.h>

namespace cychom {
namespace {

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

void require(bool ok, const std::string& what) {
  if (!ok) throw AssertionFailed(what);
}

std::string at_level(int n) { return " at level " + std::to_string(n); }

}  // namespace

MoritaContext::MoritaContext(const LinCategory& C, int r, long long limit, ExecMode mode)
    : r_(r),
      base_(C, limit, mode),
      tensor_(tensor_matrix(C, r, &info_), limit, mode) {}

const SparseMatrix& MoritaContext::inc(int p, int n) {
  if (p < 1 || p > r_) throw IndexOutOfRange("inclusion slot index");
  auto key = std::make_pair(p, n);
  auto it = inc_cache_.find(key);
  if (it != inc_cache_.end()) return it->second;
  const NerveBasis& src = base_.basis(n);
  const NerveBasis& dst = tensor_.basis(n);
  const int slot = (p - 1) * r_ + (p - 1);
  auto row_of = [&](int k) {
    NerveTuple img;
    for (int f : src.tuple(k)) img.push_back(info_.pair_id[f][slot]);
    return sv_unit(dst.index_of(img));
  };
  return inc_cache_
      .emplace(key, assemble_rows(src.size(), dst.size(), base_.mode(), row_of))
      .first->second;
}

const SparseMatrix& MoritaContext::tr(int n) {
  auto it = tr_cache_.find(n);
  if (it != tr_cache_.end()) return it->second;
  const NerveBasis& src = tensor_.basis(n);
  const NerveBasis& dst = base_.basis(n);
  auto row_of = [&](int k) -> SparseVec {
    const NerveTuple& t = src.tuple(k);
    NerveTuple plain;
    for (std::size_t s = 0; s < t.size(); ++s) {
      const auto& part = info_.decompose[t[s]];
      const auto& next = info_.decompose[t[(s + 1) % t.size()]];
      if (part.j != next.i) return {};
      plain.push_back(part.f);
    }
    return sv_unit(dst.index_of(plain));
  };
  return tr_cache_.emplace(n, assemble_rows(src.size(), dst.size(), base_.mode(), row_of))
      .first->second;
}

const SparseMatrix& MoritaContext::hbar(int i, int n) {
  if (i < 0 || i > n) throw IndexOutOfRange("homotopy piece index");
  auto key = std::make_pair(i, n);
  auto it = hbar_cache_.find(key);
  if (it != hbar_cache_.end()) return it->second;
  const LinCategory& C = base_.category();
  const NerveBasis& src = tensor_.basis(n);
  const NerveBasis& dst = tensor_.basis(n + 1);
  auto row_of = [&](int k) -> SparseVec {
    const NerveTuple& t = src.tuple(k);
    std::vector<MatrixTensorInfo::Part> parts;
    for (int id : t) parts.push_back(info_.decompose[id]);
    for (int s = 0; s < i; ++s)
      if (parts[s].j != parts[s + 1].i) return {};
    NerveTuple img;
    img.push_back(info_.pair_id[parts[0].f][parts[0].i * r_ + 0]);
    for (int s = 1; s <= i; ++s) img.push_back(info_.pair_id[parts[s].f][0]);
    const int insert_obj = C.mor(parts[i].f).src;
    const int insert_at = i + 1;
    img.resize(t.size() + 1);
    for (std::size_t s = i + 1; s < t.size(); ++s) img[s + 1] = t[s];
    SparseVec row;
    for (const auto& [l, c] : C.identity_coords(insert_obj)) {
      img[insert_at] = info_.pair_id[C.hom(insert_obj, insert_obj)[l]][parts[i].j];
      row.emplace_back(dst.index_of(img), c);
    }
    sv_normalize(row);
    return row;
  };
  return hbar_cache_
      .emplace(key, assemble_rows(src.size(), dst.size(), base_.mode(), row_of))
      .first->second;
}

SparseMatrix MoritaContext::hbar_sum(int n) {
  SparseMatrix H = hbar(0, n);
  for (int i = 1; i <= n; ++i)
    H = (i % 2 == 0) ? H + hbar(i, n) : H - hbar(i, n);
  return H;
}

std::pair<ChainMap, ChainMap> morita_chain_maps(MoritaContext& mctx, int p, int nmax) {
  NerveContext& bc = mctx.base();
  NerveContext& tc = mctx.tensor();
  ChainMap I, T;
  for (int n = 0; n <= nmax; ++n) {
    I.matrices.push_back(mctx.inc(p, n));
    T.matrices.push_back(mctx.tr(n));
  }
  for (int n = 0; n <= nmax; ++n) {
    const SparseMatrix& In = I.matrices[n];
    const SparseMatrix& Tn = T.matrices[n];
    require(In * Tn == SparseMatrix::identity(bc.basis(n).size()),
            "tr after inc_" + std::to_string(p) + " is not the identity" + at_level(n));
    require(In * tc.tau(n) == bc.tau(n) * In,
            "inc does not commute with the rotation" + at_level(n));
    require(Tn * bc.tau(n) == tc.tau(n) * Tn,
            "tr does not commute with the rotation" + at_level(n));
    if (n >= 1) {
      for (int i = 0; i <= n; ++i) {
        require(In * tc.delta(n, i) == bc.delta(n, i) * I.matrices[n - 1],
                "inc does not commute with face " + std::to_string(i) + at_level(n));
        require(Tn * bc.delta(n, i) == tc.delta(n, i) * T.matrices[n - 1],
                "tr does not commute with face " + std::to_string(i) + at_level(n));
      }
      require(In * tc.b(n - 1) == bc.b(n - 1) * I.matrices[n - 1],
              "inc does not commute with b" + at_level(n));
      require(Tn * bc.b(n - 1) == tc.b(n - 1) * T.matrices[n - 1],
              "tr does not commute with b" + at_level(n));
    }
    if (n < nmax)
      for (int i = 0; i <= n; ++i)
        require(Tn * bc.sigma(n, i) == tc.sigma(n, i) * T.matrices[n + 1],
                "tr does not commute with degeneracy " + std::to_string(i) + at_level(n));
  }
  return {std::move(I), std::move(T)};
}

MoritaCertificate presimplicial_homotopy_check(MoritaContext& mctx, int n) {
  NerveContext& tc = mctx.tensor();
  MoritaCertificate cert;
  auto checked = [&](std::string what) { cert.checks.push_back(std::move(what)); };

  for (int ip = 1; ip <= n; ++ip)
    for (int i = 0; i < ip; ++i) {
      require(mctx.hbar(ip, n) * tc.delta(n + 1, i) == tc.delta(n, i) * mctx.hbar(ip - 1, n - 1),
              "face " + std::to_string(i) + " through homotopy piece " + std::to_string(ip) +
                  at_level(n));
      checked("d_" + std::to_string(i) + " h_" + std::to_string(ip) + " = h_" +
              std::to_string(ip - 1) + " d_" + std::to_string(i) + at_level(n));
    }
  for (int i = 1; i <= n; ++i) {
    require(mctx.hbar(i, n) * tc.delta(n + 1, i) == mctx.hbar(i - 1, n) * tc.delta(n + 1, i),
            "adjacent homotopy pieces under face " + std::to_string(i) + at_level(n));
    checked("d_" + std::to_string(i) + " h_" + std::to_string(i) + " = d_" + std::to_string(i) +
            " h_" + std::to_string(i - 1) + at_level(n));
  }
  for (int ip = 0; ip <= n; ++ip)
    for (int i = ip + 2; i <= n + 1; ++i) {
      require(mctx.hbar(ip, n) * tc.delta(n + 1, i) == tc.delta(n, i - 1) * mctx.hbar(ip, n - 1),
              "face " + std::to_string(i) + " past homotopy piece " + std::to_string(ip) +
                  at_level(n));
      checked("d_" + std::to_string(i) + " h_" + std::to_string(ip) + " = h_" +
              std::to_string(ip) + " d_" + std::to_string(i - 1) + at_level(n));
    }
  const SparseMatrix id_n = SparseMatrix::identity(tc.basis(n).size());
  require(mctx.hbar(0, n) * tc.delta(n + 1, 0) == id_n, "first face of the first piece" + at_level(n));
  checked("d_0 h_0 = id" + at_level(n));
  const SparseMatrix round_trip = mctx.tr(n) * mctx.inc(1, n);
  require(mctx.hbar(n, n) * tc.delta(n + 1, n + 1) == round_trip,
          "last face of the last piece" + at_level(n));
  checked("d_" + std::to_string(n + 1) + " h_" + std::to_string(n) + " = inc_1 tr" + at_level(n));

  SparseMatrix total = mctx.hbar_sum(n) * tc.b(n);
  if (n >= 1) total = total + tc.b(n - 1) * mctx.hbar_sum(n - 1);
  require(total == id_n - round_trip, "summed homotopy identity" + at_level(n));
  checked("b h + h b = id - inc_1 tr" + at_level(n));
  return cert;
}

MoritaCertificate morita_cohomology_check(MoritaContext& mctx, int nmax) {
  NerveContext& bc = mctx.base();
  NerveContext& tc = mctx.tensor();
  MoritaCertificate cert;
  for (int n = 0; n <= nmax; ++n) {
    CohomologyReport rb = cyclic_cohomology(bc, n);
    CohomologyReport rt = cyclic_cohomology(tc, n);
    require(rb.dim_cohomology == rt.dim_cohomology,
            "cyclic cohomology dimensions differ" + at_level(n) + ": " +
                std::to_string(rb.dim_cohomology) + " vs " + std::to_string(rt.dim_cohomology));
    cert.checks.push_back("dim HC = " + std::to_string(rb.dim_cohomology) + " on both sides" +
                          at_level(n));
    for (const Cochain& phi : rb.representatives) {
      Cochain lifted = apply_op(mctx.tr(n), phi, n);
      require(apply_op(mctx.inc(1, n), lifted, n).coords == phi.coords,
              "inc-after-tr pullback is not the identity on a representative" + at_level(n));
    }
    if (!rb.representatives.empty())
      cert.checks.push_back("inc*tr* fixed " + std::to_string(rb.representatives.size()) +
                            " base representatives exactly" + at_level(n));
    for (const Cochain& phi : rt.representatives) {
      Cochain back = apply_op(mctx.tr(n), apply_op(mctx.inc(1, n), phi, n), n);
      ClassComparison cc = class_equal(tc, phi, back);
      require(cc.equal, "tr-after-inc pullback moved a class" + at_level(n));
    }
    if (!rt.representatives.empty())
      cert.checks.push_back("tr*inc* fixed " + std::to_string(rt.representatives.size()) +
                            " tensor-side classes up to witnessed coboundaries" + at_level(n));
  }
  return cert;
}

SparseMatrix functor_chain_matrix(NerveContext& src, NerveContext& dst, const LinFunctor& Phi,
                                  int n) {
  const LinCategory& S = src.category();
  const LinCategory& D = dst.category();
  const NerveBasis& sb = src.basis(n);
  const NerveBasis& db = dst.basis(n);
  auto row_of = [&](int k) {
    const NerveTuple& t = sb.tuple(k);
    std::vector<std::pair<NerveTuple, Scalar>> partial{{NerveTuple{}, Scalar(1)}};
    for (int id : t) {
      const MorInfo& mi = S.mor(id);
      SparseVec img = Phi.apply(mi.src, mi.dst, sv_unit(mi.local));
      const std::vector<int>& homD = D.hom(Phi.object_map[mi.src], Phi.object_map[mi.dst]);
      std::vector<std::pair<NerveTuple, Scalar>> next;
      for (const auto& [tup, c] : partial)
        for (const auto& [l, cl] : img) {
          NerveTuple u = tup;
          u.push_back(homD[l]);
          next.emplace_back(std::move(u), c * cl);
        }
      partial = std::move(next);
      if (partial.empty()) break;
    }
    SparseVec row;
    for (const auto& [tup, c] : partial) row.emplace_back(db.index_of(tup), c);
    sv_normalize(row);
    return row;
  };
  return assemble_rows(sb.size(), db.size(), src.mode(), row_of);
}

MoritaCertificate inner_identity_check(NerveContext& nctx, const AutFamily& eta, int nmax) {
  LinFunctor Phi = inner_automorphism(nctx.category(), eta);
  MoritaCertificate cert;
  for (int n = 0; n <= nmax; ++n) {
    SparseMatrix M = functor_chain_matrix(nctx, nctx, Phi, n);
    CohomologyReport rep = cyclic_cohomology(nctx, n);
    int moved = 0;
    for (const Cochain& phi : rep.representatives) {
      Cochain pulled = apply_op(M, phi, n);
      if (pulled.coords != phi.coords) ++moved;
      ClassComparison cc = class_equal(nctx, phi, pulled);
      require(cc.equal, "conjugation moved a cyclic cohomology class" + at_level(n));
    }
    cert.checks.push_back("conjugation fixed " + std::to_string(rep.representatives.size()) +
                          " classes (" + std::to_string(moved) +
                          " via nonzero coboundary witnesses)" + at_level(n));
  }
  return cert;
}

}  // namespace cychom

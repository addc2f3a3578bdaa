#include "cychom/omega_tensor.hpp"

namespace cychom {
namespace {

void accumulate(OmegaTensorElem& e, std::pair<OmegaSymbol, OmegaSymbol> key, const Scalar& c) {
  Scalar& slot = e.coords[std::move(key)];
  slot += c;
  // Zero entries are dropped lazily by the consumers.
}

OmegaSymbol shift_to_tail(const OmegaSymbol& s) {
  OmegaSymbol out;
  out.lead = kUnitLead;
  out.tail.reserve(s.tail.size() + 1);
  out.tail.push_back(s.lead);
  out.tail.insert(out.tail.end(), s.tail.begin(), s.tail.end());
  return out;
}

OmegaElement as_element(const LinCategory& C, const OmegaSymbol& s, const Scalar& c) {
  OmegaElement e;
  e.dst = C.mor(s.lead != kUnitLead ? s.lead : s.tail.front()).dst;
  e.src = C.mor(s.tail.empty() ? s.lead : s.tail.back()).src;
  e.degree = s.degree();
  e.coords = {{s, c}};
  return e;
}

}  // namespace

OmegaTensorElem OmegaTensorWalk::apply(int tensor_mor_id) const {
  const auto& part = info_.decompose[tensor_mor_id];
  OmegaTensorElem e;
  e.coords[{OmegaSymbol{part.f, {}}, OmegaSymbol{part.g, {}}}] = Scalar(1);
  return e;
}

OmegaTensorElem OmegaTensorWalk::differential(const OmegaTensorElem& a) const {
  OmegaTensorElem out;
  for (const auto& [pr, c] : a.coords) {
    if (c.is_zero()) continue;
    if (pr.first.lead != kUnitLead) accumulate(out, {shift_to_tail(pr.first), pr.second}, c);
    if (pr.second.lead != kUnitLead)
      accumulate(out, {pr.first, shift_to_tail(pr.second)}, pr.first.degree() % 2 == 0 ? c : -c);
  }
  return out;
}

OmegaTensorElem OmegaTensorWalk::compose(const OmegaTensorElem& a, const OmegaTensorElem& b) const {
  OmegaTensorElem out;
  for (const auto& [pa, ca] : a.coords) {
    if (ca.is_zero()) continue;
    for (const auto& [pb, cb] : b.coords) {
      if (cb.is_zero()) continue;
      Scalar c = ca * cb;
      if ((pa.second.degree() * pb.first.degree()) % 2 != 0) c = -c;
      OmegaElement L = left_.compose(as_element(left_.category(), pa.first, Scalar(1)),
                                     as_element(left_.category(), pb.first, Scalar(1)));
      OmegaElement R = right_.compose(as_element(right_.category(), pa.second, Scalar(1)),
                                      as_element(right_.category(), pb.second, Scalar(1)));
      for (const auto& [sl, cl] : L.coords)
        for (const auto& [sr, cr] : R.coords) accumulate(out, {sl, sr}, c * cl * cr);
    }
  }
  return out;
}

OmegaTensorElem OmegaTensorWalk::expand(const NerveTuple& t) const {
  OmegaTensorElem acc = apply(t[0]);
  for (std::size_t s = 1; s < t.size(); ++s) acc = compose(acc, differential(apply(t[s])));
  return acc;
}

}  // namespace cychom

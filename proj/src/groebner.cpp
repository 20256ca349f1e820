#include "stendo/groebner.hpp"

#include <algorithm>

namespace stendo {

namespace {

PolyVec wrap(const Poly2& p) { return PolyVec{{p}}; }

std::vector<Poly2> unwrap(const std::vector<PolyVec>& vs) {
  std::vector<Poly2> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(v.c[0]);
  return out;
}

}  // namespace

bool GroebnerBasis::contains_one() const {
  for (const auto& g : gens)
    if (g.is_unit_constant()) return true;
  return false;
}

GroebnerBasis buchberger(Fp F, const std::vector<Poly2>& gens) {
  if (gens.empty()) throw InputError("buchberger: empty generator list");
  std::vector<PolyVec> in;
  bool any = false;
  for (const auto& g : gens) {
    if (!g.is_zero()) any = true;
    in.push_back(wrap(g));
  }
  if (!any) throw InputError("buchberger: all generators are zero");
  auto gb = module_groebner(in, F);
  GroebnerBasis out{F, unwrap(gb)};
  std::sort(out.gens.begin(), out.gens.end(),
            [](const Poly2& a, const Poly2& b) { return mono_less(a.lm(), b.lm()); });
  return out;
}

Poly2 normal_form(const Poly2& f, const GroebnerBasis& G) {
  std::vector<PolyVec> divs;
  for (const auto& g : G.gens) divs.push_back(wrap(g));
  return pv_divmod(wrap(f), divs, G.F).r.c[0];
}

bool ideal_contains(const GroebnerBasis& G, const Poly2& f) {
  return normal_form(f, G).is_zero();
}

StdMonomials standard_monomials(const GroebnerBasis& G) {
  StdMonomials out;
  if (G.contains_one()) {
    out.finite = true;
    return out;
  }
  // finite quotient iff the leading-term ideal contains a pure power of x
  // and a pure power of y
  std::optional<uint32_t> ax, by;
  for (const auto& g : G.gens) {
    Mono m = g.lm();
    if (m.ey == 0 && (!ax || m.ex < *ax)) ax = m.ex;
    if (m.ex == 0 && (!by || m.ey < *by)) by = m.ey;
  }
  if (!ax || !by) {
    out.finite = false;
    return out;
  }
  out.finite = true;
  for (uint32_t i = 0; i < *ax; ++i)
    for (uint32_t j = 0; j < *by; ++j) {
      Mono m{i, j};
      bool divisible = false;
      for (const auto& g : G.gens)
        if (g.lm().divides(m)) {
          divisible = true;
          break;
        }
      if (!divisible) out.monomials.push_back(m);
    }
  std::sort(out.monomials.begin(), out.monomials.end(), mono_less);
  return out;
}

GroebnerBasis colon_by_element(const GroebnerBasis& G, const Poly2& c) {
  if (c.is_zero()) throw InputError("colon_by_element: divisor is zero");
  const Fp& F = G.F;
  if (G.is_zero_ideal()) return G;  // (0 : c) = 0 in a domain
  std::vector<PolyVec> seq;
  for (const auto& g : G.gens) seq.push_back(wrap(g));
  seq.push_back(wrap(c));
  auto syz = syzygies(seq, F);
  std::vector<Poly2> quot;
  for (const auto& s : syz) {
    const Poly2& last = s.c.back();
    if (!last.is_zero()) quot.push_back(last);
  }
  // I is always contained in (I : c); the syzygy route produces those
  // generators too, but add them explicitly so degenerate cases stay covered.
  for (const auto& g : G.gens) quot.push_back(g);
  return buchberger(F, quot);
}

GroebnerBasis ideal_sum(const GroebnerBasis& G, const std::vector<Poly2>& extra) {
  std::vector<Poly2> gens = G.gens;
  for (const auto& e : extra) gens.push_back(e);
  return buchberger(G.F, gens);
}

}  // namespace stendo

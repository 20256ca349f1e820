#include "stendo/mf.hpp"

#include <algorithm>

#include "stendo/matrix.hpp"

namespace stendo {

namespace {

// associated: fi = c * fj for a nonzero scalar c
bool associates(const Fp& F, const Poly2& a, const Poly2& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (!(a.lm() == b.lm())) return false;
  uint32_t c = F.div(a.lc(), b.lc());
  return a == b.scaled(c);
}

// common positive weights making every factor weighted-homogeneous
bool common_quasi_homogeneous_weights(const std::vector<Poly2>& factors) {
  for (uint32_t wx = 1; wx <= 8; ++wx)
    for (uint32_t wy = 1; wy <= 8; ++wy) {
      bool ok = true;
      for (const auto& g : factors)
        if (!g.weighted_homogeneous(wx, wy)) {
          ok = false;
          break;
        }
      if (ok) return true;
    }
  return false;
}

}  // namespace

MFRing::MFRing(Fp F, std::vector<Poly2> factors, bool nonstandard_acknowledged)
    : F_(F), factors_(std::move(factors)), f_(Poly2::constant(F, 1)) {
  if (factors_.empty()) throw InputError("factor list must be nonempty");
  for (const auto& g : factors_) {
    if (g.is_zero()) throw InputError("zero factor");
    if (g.coeff({0, 0}) != 0)
      throw InputError("factor has a nonzero constant term (not in the maximal ideal)");
  }
  for (size_t i = 0; i < factors_.size(); ++i)
    for (size_t j = i + 1; j < factors_.size(); ++j)
      if (associates(F_, factors_[i], factors_[j]))
        throw InputError("factors " + std::to_string(i) + " and " + std::to_string(j) +
                         " are associates");
  if (!common_quasi_homogeneous_weights(factors_) && !nonstandard_acknowledged)
    throw InputError(
        "factors are not jointly quasi-homogeneous; polynomial results may differ from the "
        "formal-germ setting. Set the acknowledgement flag to proceed.");
  for (const auto& g : factors_) f_ = f_ * g;
}

Poly2 MFRing::product_of(const std::vector<int>& subset) const {
  Poly2 out = Poly2::constant(F_, 1);
  for (int i : subset) {
    STENDO_ASSERT(i >= 0 && i < nfactors(), "factor index out of range");
    out = out * factors_[i];
  }
  return out;
}

std::vector<int> MFRing::complement(const std::vector<int>& subset) const {
  std::vector<int> out;
  size_t k = 0;
  for (int i = 0; i < nfactors(); ++i) {
    if (k < subset.size() && subset[k] == i) {
      ++k;
      continue;
    }
    out.push_back(i);
  }
  return out;
}

MF1 MFRing::object(std::vector<int> subset) const {
  std::sort(subset.begin(), subset.end());
  for (size_t i = 0; i + 1 < subset.size(); ++i)
    if (subset[i] == subset[i + 1]) throw InputError("repeated factor index in object");
  if (!subset.empty() && (subset.front() < 0 || subset.back() >= nfactors()))
    throw InputError("factor index out of range");
  MF1 m{std::move(subset)};
  // invariant g * g' = f
  STENDO_ASSERT(g_of(m) * gprime_of(m) == f_, "g * g' must equal f");
  return m;
}

std::vector<MF1> bikr_tilting(const MFRingPtr& R) {
  std::vector<MF1> out;
  std::vector<int> prefix;
  for (int i = 0; i < R->nfactors(); ++i) {
    prefix.push_back(i);
    out.push_back(R->object(prefix));
  }
  return out;
}

StableMF1Hom::StableMF1Hom(const MFRingPtr& R, const MF1& src, const MF1& dst) : R_(R) {
  const Fp& F = R->field();
  // c = product of dst factors not in src
  std::vector<int> diff;
  std::set_difference(dst.subset.begin(), dst.subset.end(), src.subset.begin(), src.subset.end(),
                      std::back_inserter(diff));
  c_ = R->product_of(diff);
  Poly2 h = R->g_of(dst);
  Poly2 gp = R->gprime_of(src);
  // homotopy ideal (h, g'_src); guard the all-zero degenerate case
  std::vector<Poly2> gens;
  if (!h.is_zero()) gens.push_back(h);
  if (!gp.is_zero()) gens.push_back(gp);
  STENDO_ASSERT(!gens.empty(), "homotopy ideal needs a nonzero generator");
  auto H = buchberger(F, gens);
  ideal_ = colon_by_element(H, c_);
  auto sm = standard_monomials(ideal_);
  if (!sm.finite)
    throw Inconclusive("stable Hom space is not finite dimensional for this factor list");
  basis_ = sm.monomials;
}

Poly2 StableMF1Hom::rep(int t) const {
  return c_.times_mono(basis_[t]);
}

std::vector<uint32_t> StableMF1Hom::coords_of_multiplier(const Poly2& alpha) const {
  const Fp& F = R_->field();
  std::vector<uint32_t> out(basis_.size(), 0);
  if (alpha.is_zero()) return out;
  auto a = alpha.divided_by(c_);
  STENDO_ASSERT(a.has_value(), "chain-map multiplier not divisible by the colon generator");
  Poly2 nf = normal_form(*a, ideal_);
  for (const auto& [m, coef] : nf.terms()) {
    auto it = std::find_if(basis_.begin(), basis_.end(), [&](const Mono& b) { return b == m; });
    STENDO_ASSERT(it != basis_.end(), "normal form leaves the standard monomial basis");
    out[static_cast<size_t>(it - basis_.begin())] = coef;
  }
  (void)F;
  return out;
}

int brute_hom_bounded(const MFRingPtr& R, const MF1& src, const MF1& dst, int D) {
  if (D < 1) throw InputError("degree bound must be >= 1");
  const Fp& F = R->field();
  Poly2 g = R->g_of(src), gp = R->gprime_of(src), h = R->g_of(dst);
  int dg = static_cast<int>(g.total_degree());
  int dh = static_cast<int>(h.total_degree());
  auto monos_up_to = [&](int d) {
    std::vector<Mono> out;
    for (int t = 0; t <= d; ++t)
      for (int i = 0; i <= t; ++i) out.push_back({static_cast<uint32_t>(i), static_cast<uint32_t>(t - i)});
    return out;
  };
  auto index_map = [&](const std::vector<Mono>& ms) {
    auto idx = [ms](Mono m) -> int {
      for (size_t k = 0; k < ms.size(); ++k)
        if (ms[k] == m) return static_cast<int>(k);
      return -1;
    };
    return idx;
  };
  // chain maps: a (deg <= D) with a*g = b*h for some b (deg <= D + dg - dh)
  auto amons = monos_up_to(D);
  int bdeg = D + dg - dh;
  auto bmons = monos_up_to(std::max(bdeg, 0));
  if (bdeg < 0) bmons.clear();
  auto emons = monos_up_to(D + dg);
  auto eidx = index_map(emons);
  int na = static_cast<int>(amons.size()), nb = static_cast<int>(bmons.size());
  Matrix C(F, static_cast<int>(emons.size()), na + nb);
  for (int t = 0; t < na; ++t) {
    Poly2 ag = g.times_mono(amons[t]);
    for (const auto& [m, coef] : ag.terms()) C.at(eidx(m), t) = coef;
  }
  for (int t = 0; t < nb; ++t) {
    Poly2 bh = h.times_mono(bmons[t]);
    for (const auto& [m, coef] : bh.terms()) C.at(eidx(m), na + t) = F.neg(coef);
  }
  // projection of the kernel onto the a-coordinates
  RowSpace chain(F, na);
  for (const auto& k : right_kernel(C)) {
    std::vector<uint32_t> a(k.begin(), k.begin() + na);
    chain.add(a);
  }
  // homotopies h*s + g'*t with s, t inside the degree budget
  RowSpace htp(F, na);
  auto aidx = index_map(amons);
  int dgp = static_cast<int>(gp.total_degree());
  for (int t = 0; t <= D - dh; ++t)
    for (const auto& m : monos_up_to(t)) {
      if (static_cast<int>(m.deg()) != t) continue;
      Poly2 e = h.times_mono(m);
      std::vector<uint32_t> v(na, 0);
      bool ok = true;
      for (const auto& [mm, coef] : e.terms()) {
        int id = aidx(mm);
        if (id < 0) ok = false;
        if (ok) v[id] = coef;
      }
      if (ok) htp.add(v);
    }
  for (int t = 0; t <= D - dgp; ++t)
    for (const auto& m : monos_up_to(t)) {
      if (static_cast<int>(m.deg()) != t) continue;
      Poly2 e = gp.times_mono(m);
      std::vector<uint32_t> v(na, 0);
      bool ok = true;
      for (const auto& [mm, coef] : e.terms()) {
        int id = aidx(mm);
        if (id < 0) ok = false;
        if (ok) v[id] = coef;
      }
      if (ok) htp.add(v);
    }
  // homotopies are chain maps, so the difference is the answer at cutoff D
  Matrix HB = htp.basis_matrix();
  for (int i = 0; i < HB.rows(); ++i)
    STENDO_ASSERT(chain.contains(HB.row(i)), "homotopy escapes the chain-map space");
  return chain.dim() - htp.dim();
}

std::optional<int> brute_hom_stabilized(const MFRingPtr& R, const MF1& src, const MF1& dst) {
  int prev = -1;
  for (int D = 4; D <= 64; D *= 2) {
    int cur = brute_hom_bounded(R, src, dst, D);
    if (cur == prev) return cur;
    prev = cur;
  }
  return std::nullopt;
}

bool pair_generates_max_ideal(const Poly2& fi, const Poly2& fj) {
  for (const Poly2* f : {&fi, &fj}) {
    if (f->is_zero() || f->coeff({0, 0}) != 0)
      throw InputError("loop criterion needs factors in the maximal ideal");
    if (f->coeff({1, 0}) == 0 && f->coeff({0, 1}) == 0)
      throw InputError("loop criterion needs factors outside the square of the maximal ideal");
  }
  const Fp& F = fi.field();
  uint32_t a = fi.coeff({1, 0}), b = fi.coeff({0, 1});
  uint32_t c = fj.coeff({1, 0}), d = fj.coeff({0, 1});
  return F.sub(F.mul(a, d), F.mul(b, c)) != 0;
}

}  // namespace stendo

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stendo/fp.hpp"

namespace stendo {

// Monomial x^ex * y^ey; global order is graded lexicographic with x > y.
struct Mono {
  uint32_t ex = 0, ey = 0;
  uint32_t deg() const { return ex + ey; }
  bool operator==(const Mono& o) const { return ex == o.ex && ey == o.ey; }
  bool divides(const Mono& o) const { return ex <= o.ex && ey <= o.ey; }
  Mono operator*(const Mono& o) const { return {ex + o.ex, ey + o.ey}; }
  Mono operator/(const Mono& o) const {
    STENDO_ASSERT(o.divides(*this), "monomial division");
    return {ex - o.ex, ey - o.ey};
  }
};

inline bool mono_less(const Mono& a, const Mono& b) {
  if (a.deg() != b.deg()) return a.deg() < b.deg();
  return a.ex < b.ex;
}
inline Mono mono_lcm(const Mono& a, const Mono& b) {
  return {std::max(a.ex, b.ex), std::max(a.ey, b.ey)};
}
inline Mono mono_gcd(const Mono& a, const Mono& b) {
  return {std::min(a.ex, b.ex), std::min(a.ey, b.ey)};
}

// Polynomial in F_p[x, y]: nonzero terms sorted in descending grlex order.
class Poly2 {
 public:
  Poly2() = default;
  explicit Poly2(Fp F) : F_(F) {}
  static Poly2 zero(Fp F) { return Poly2(F); }
  static Poly2 constant(Fp F, uint32_t c);
  static Poly2 monomial(Fp F, Mono m, uint32_t c = 1);
  static Poly2 var_x(Fp F) { return monomial(F, {1, 0}); }
  static Poly2 var_y(Fp F) { return monomial(F, {0, 1}); }

  const Fp& field() const { return F_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_unit_constant() const;  // nonzero constant
  size_t nterms() const { return terms_.size(); }
  const std::vector<std::pair<Mono, uint32_t>>& terms() const { return terms_; }

  Mono lm() const;       // leading monomial
  uint32_t lc() const;   // leading coefficient
  uint32_t total_degree() const;
  uint32_t coeff(Mono m) const;

  Poly2 operator+(const Poly2& o) const;
  Poly2 operator-(const Poly2& o) const;
  Poly2 operator*(const Poly2& o) const;
  Poly2 scaled(uint32_t c) const;
  Poly2 times_mono(Mono m, uint32_t c = 1) const;
  Poly2 negated() const { return scaled(F_.neg(1)); }
  Poly2 monic() const;
  bool operator==(const Poly2& o) const { return terms_ == o.terms_; }

  // Exact division; nullopt if not divisible.
  std::optional<Poly2> divided_by(const Poly2& d) const;

  std::string str() const;

  // Grammar: terms joined by + and -, monomials like 3*x^2*y, implicit
  // coefficient 1; whitespace ignored.
  static Poly2 parse(Fp F, const std::string& s);

  // Weighted degree helpers (used for the quasi-homogeneity screen).
  bool weighted_homogeneous(uint32_t wx, uint32_t wy) const;

  void add_term(Mono m, uint32_t c);  // accumulate, then normalize()
  void normalize();

 private:
  Fp F_;
  std::vector<std::pair<Mono, uint32_t>> terms_;
};

}  // namespace stendo

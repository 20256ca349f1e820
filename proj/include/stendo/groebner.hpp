#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stendo/modpoly.hpp"
#include "stendo/poly2.hpp"

namespace stendo {

// Reduced Groebner basis for an ideal of F_p[x,y] under grlex with x > y.
// Generators are monic, pairwise inter-reduced, sorted by leading monomial.
struct GroebnerBasis {
  Fp F;
  std::vector<Poly2> gens;

  bool contains_one() const;
  bool is_zero_ideal() const { return gens.empty(); }
};

// Throws InputError if gens is empty or all zero.
GroebnerBasis buchberger(Fp F, const std::vector<Poly2>& gens);

Poly2 normal_form(const Poly2& f, const GroebnerBasis& G);
bool ideal_contains(const GroebnerBasis& G, const Poly2& f);

struct StdMonomials {
  bool finite = false;
  std::vector<Mono> monomials;  // ascending grlex; valid when finite
};

// Monomials outside the leading-term ideal; marks the infinite case.
StdMonomials standard_monomials(const GroebnerBasis& G);

// Groebner basis of (I : c) = {a : a*c in I}. Throws InputError for c = 0.
GroebnerBasis colon_by_element(const GroebnerBasis& G, const Poly2& c);

// Sum of ideals (I + J).
GroebnerBasis ideal_sum(const GroebnerBasis& G, const std::vector<Poly2>& extra);

}  // namespace stendo

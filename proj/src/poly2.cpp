#include "stendo/poly2.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace stendo {

Poly2 Poly2::constant(Fp F, uint32_t c) {
  Poly2 p(F);
  p.add_term({0, 0}, c % F.p());
  p.normalize();
  return p;
}

Poly2 Poly2::monomial(Fp F, Mono m, uint32_t c) {
  Poly2 p(F);
  p.add_term(m, c % F.p());
  p.normalize();
  return p;
}

bool Poly2::is_unit_constant() const {
  return terms_.size() == 1 && terms_[0].first == Mono{0, 0};
}

Mono Poly2::lm() const {
  STENDO_ASSERT(!terms_.empty(), "lm of zero polynomial");
  return terms_.front().first;
}

uint32_t Poly2::lc() const {
  STENDO_ASSERT(!terms_.empty(), "lc of zero polynomial");
  return terms_.front().second;
}

uint32_t Poly2::total_degree() const {
  uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.deg());
  return d;
}

uint32_t Poly2::coeff(Mono m) const {
  for (const auto& [mm, c] : terms_)
    if (mm == m) return c;
  return 0;
}

void Poly2::add_term(Mono m, uint32_t c) { terms_.emplace_back(m, c); }

void Poly2::normalize() {
  std::map<std::pair<uint32_t, uint32_t>, uint32_t> acc;  // keyed for determinism
  for (const auto& [m, c] : terms_) {
    auto& slot = acc[{m.ex, m.ey}];
    slot = F_.add(slot, c % F_.p());
  }
  terms_.clear();
  for (const auto& [k, c] : acc)
    if (c) terms_.push_back({Mono{k.first, k.second}, c});
  std::sort(terms_.begin(), terms_.end(),
            [](const auto& a, const auto& b) { return mono_less(b.first, a.first); });
}

Poly2 Poly2::operator+(const Poly2& o) const {
  Poly2 r(F_);
  r.terms_ = terms_;
  for (const auto& t : o.terms_) r.terms_.push_back(t);
  r.normalize();
  return r;
}

Poly2 Poly2::operator-(const Poly2& o) const { return *this + o.negated(); }

Poly2 Poly2::operator*(const Poly2& o) const {
  Poly2 r(F_);
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, F_.mul(c1, c2));
  r.normalize();
  return r;
}

Poly2 Poly2::scaled(uint32_t c) const {
  Poly2 r(F_);
  for (const auto& [m, cc] : terms_) r.add_term(m, F_.mul(cc, c));
  r.normalize();
  return r;
}

Poly2 Poly2::times_mono(Mono m, uint32_t c) const {
  Poly2 r(F_);
  for (const auto& [mm, cc] : terms_) r.add_term(mm * m, F_.mul(cc, c));
  r.normalize();
  return r;
}

Poly2 Poly2::monic() const {
  if (is_zero()) return *this;
  return scaled(F_.inv(lc()));
}

std::optional<Poly2> Poly2::divided_by(const Poly2& d) const {
  if (d.is_zero()) throw InputError("division by zero polynomial");
  Poly2 rem = *this;
  Poly2 q(F_);
  while (!rem.is_zero()) {
    if (!d.lm().divides(rem.lm())) return std::nullopt;
    Mono m = rem.lm() / d.lm();
    uint32_t c = F_.div(rem.lc(), d.lc());
    q.add_term(m, c);
    rem = rem - d.times_mono(m, c);
  }
  q.normalize();
  return q;
}

std::string Poly2::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out += " + ";
    first = false;
    std::string mono;
    if (m.ex) {
      mono += "x";
      if (m.ex > 1) mono += "^" + std::to_string(m.ex);
    }
    if (m.ey) {
      if (!mono.empty()) mono += "*";
      mono += "y";
      if (m.ey > 1) mono += "^" + std::to_string(m.ey);
    }
    if (mono.empty()) {
      out += std::to_string(c);
    } else if (c == 1) {
      out += mono;
    } else {
      out += std::to_string(c) + "*" + mono;
    }
  }
  return out;
}

namespace {

struct Parser {
  Fp F;
  const std::string& s;
  size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip();
    return i >= s.size();
  }
  char peek() {
    skip();
    return s[i];
  }

  uint32_t number() {
    skip();
    STENDO_ASSERT(i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])), "digit expected");
    uint64_t v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = v * 10 + (s[i] - '0');
      if (v > (1ull << 40)) throw InputError("numeric literal too large in polynomial");
      ++i;
    }
    return static_cast<uint32_t>(v % F.p());
  }

  // coefficient? (* var(^exp)?)* with implicit coefficient 1
  Poly2 term() {
    uint32_t c = 1 % F.p();
    Mono m{0, 0};
    bool any = false;
    skip();
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      c = number();
      any = true;
    }
    while (true) {
      skip();
      if (i < s.size() && s[i] == '*') {
        ++i;
        skip();
      }
      if (i >= s.size()) break;
      char ch = s[i];
      if (ch == 'x' || ch == 'y') {
        ++i;
        uint32_t e = 1;
        skip();
        if (i < s.size() && s[i] == '^') {
          ++i;
          e = 0;
          skip();
          uint64_t v = 0;
          STENDO_ASSERT(i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])),
                        "exponent expected");
          while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + (s[i] - '0');
            if (v > 10000) throw InputError("polynomial exponent too large");
            ++i;
          }
          e = static_cast<uint32_t>(v);
        }
        if (ch == 'x')
          m.ex += e;
        else
          m.ey += e;
        any = true;
      } else {
        break;
      }
    }
    if (!any) throw InputError("malformed polynomial term near position " + std::to_string(i));
    return Poly2::monomial(F, m, c);
  }

  Poly2 expr() {
    Poly2 acc(F);
    bool neg = false;
    skip();
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      neg = (s[i] == '-');
      ++i;
    }
    while (true) {
      Poly2 t = term();
      acc = neg ? acc - t : acc + t;
      if (eof()) break;
      char op = peek();
      if (op == '+' || op == '-') {
        neg = (op == '-');
        ++i;
      } else {
        throw InputError(std::string("unexpected character '") + op + "' in polynomial");
      }
    }
    return acc;
  }
};

}  // namespace

Poly2 Poly2::parse(Fp F, const std::string& s) {
  Parser p{F, s};
  if (p.eof()) throw InputError("empty polynomial string");
  return p.expr();
}

bool Poly2::weighted_homogeneous(uint32_t wx, uint32_t wy) const {
  if (terms_.empty()) return true;
  uint64_t w0 = static_cast<uint64_t>(terms_[0].first.ex) * wx +
                static_cast<uint64_t>(terms_[0].first.ey) * wy;
  for (const auto& [m, c] : terms_) {
    (void)c;
    if (static_cast<uint64_t>(m.ex) * wx + static_cast<uint64_t>(m.ey) * wy != w0) return false;
  }
  return true;
}

}  // namespace stendo

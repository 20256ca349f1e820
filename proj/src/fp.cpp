#include "stendo/fp.hpp"

namespace stendo {

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Fp::Fp(uint32_t p) : p_(p) {
  if (!is_prime(p)) throw InputError("field modulus " + std::to_string(p) + " is not prime");
}

uint32_t Fp::inv(uint32_t a) const {
  if (a == 0) throw InputError("division by zero in F_p");
  // extended Euclid
  int64_t t = 0, nt = 1, r = p_, nr = a;
  while (nr != 0) {
    int64_t q = r / nr;
    int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += p_;
  return static_cast<uint32_t>(t);
}

uint32_t Fp::pow(uint32_t a, uint64_t e) const {
  uint32_t r = 1 % p_;
  uint32_t b = a % p_;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

uint32_t Fp::from_int(long long v) const {
  long long m = v % static_cast<long long>(p_);
  if (m < 0) m += p_;
  return static_cast<uint32_t>(m);
}

}  // namespace stendo

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stendo {

// Thrown on malformed user input (bad dimensions, non-prime modulus, ...).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& m) : std::runtime_error(m) {}
};

// Thrown when a verification certificate fails.
class CheckFailure : public std::runtime_error {
 public:
  explicit CheckFailure(const std::string& m) : std::runtime_error(m) {}
};

// Thrown when a bounded search exhausts its budget without a verdict.
class Inconclusive : public std::runtime_error {
 public:
  explicit Inconclusive(const std::string& m) : std::runtime_error(m) {}
};

#define STENDO_ASSERT(cond, msg)                                             \
  do {                                                                       \
    if (!(cond)) throw std::logic_error(std::string("internal: ") + (msg)); \
  } while (0)

bool is_prime(uint32_t n);

// Prime field F_p. Elements are residues in [0, p) stored as uint32_t.
class Fp {
 public:
  explicit Fp(uint32_t p);
  Fp() : p_(2) {}

  uint32_t p() const { return p_; }

  uint32_t add(uint32_t a, uint32_t b) const {
    uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
  uint32_t neg(uint32_t a) const { return a ? p_ - a : 0; }
  uint32_t mul(uint32_t a, uint32_t b) const {
    return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % p_);
  }
  uint32_t inv(uint32_t a) const;
  uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }
  uint32_t pow(uint32_t a, uint64_t e) const;
  uint32_t from_int(long long v) const;

  bool operator==(const Fp& o) const { return p_ == o.p_; }
  bool operator!=(const Fp& o) const { return p_ != o.p_; }

 private:
  uint32_t p_;
};

// Deterministic PRNG (splitmix64); every randomized search takes one of
// these seeded from the scenario so runs are reproducible.
class Rng {
 public:
  explicit Rng(uint64_t seed) : s_(seed) {}
  uint64_t next() {
    uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // uniform in [0, n)
  uint64_t below(uint64_t n) { return n ? next() % n : 0; }
  uint32_t field_elt(const Fp& F) { return static_cast<uint32_t>(below(F.p())); }

 private:
  uint64_t s_;
};

}  // namespace stendo

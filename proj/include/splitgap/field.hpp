#pragma once

// Prime field arithmetic and deterministic randomness shared by every module.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace splitgap {

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// 2^31 - 1.
inline constexpr u64 kDefaultPrime = 2147483647ULL;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Raised when random data lands in a non-generic position; callers retry.
struct DegenerateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when an internal identity fails (a pipeline bug, never bad luck).
struct InvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    if (n % q == 0) return n == q;
  }
  for (u64 q = 17; q * q <= n; q += 2) {
    if (n % q == 0) return false;
  }
  return true;
}

/// Residues mod a prime p < 2^32, so that products fit in 64 bits.
class PrimeField {
 public:
  explicit PrimeField(u64 p = kDefaultPrime) : p_(p) {
    if (p >= (1ULL << 32) || !is_prime(p)) {
      throw DomainError("modulus must be a prime below 2^32, got " + std::to_string(p));
    }
  }

  u64 modulus() const { return p_; }

  u64 reduce(i64 v) const {
    i64 r = v % static_cast<i64>(p_);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(p_) : r);
  }
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
  u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
  u64 mul(u64 a, u64 b) const { return (a * b) % p_; }

  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    a %= p_;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  u64 inv(u64 a) const {
    if (a % p_ == 0) throw DomainError("inverse of zero");
    return pow(a, p_ - 2);
  }

  /// Centered representative in (-p/2, p/2], for readable output.
  i64 centered(u64 a) const {
    return a > p_ / 2 ? static_cast<i64>(a) - static_cast<i64>(p_) : static_cast<i64>(a);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  u64 p_;
};

/// Mixes a base seed with a stream tag (splitmix64 finalizer), so that
/// derived seeds are independent of the order in which they are requested.
inline u64 derive_seed(u64 seed, u64 tag) {
  u64 z = seed + 0x9E3779B97F4A7C15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Uniform residues from a seeded mt19937_64. Rejection sampling instead of
/// std::uniform_int_distribution keeps streams identical across standard libraries.
class ResidueSource {
 public:
  ResidueSource(const PrimeField& f, u64 seed) : field_(f), engine_(seed) {}

  u64 next() {
    const u64 p = field_.modulus();
    const u64 limit = ~0ULL - (~0ULL % p);
    for (;;) {
      u64 x = engine_();
      if (x < limit) return x % p;
    }
  }

  u64 next_nonzero() {
    for (;;) {
      u64 x = next();
      if (x != 0) return x;
    }
  }

  const PrimeField& field() const { return field_; }

 private:
  PrimeField field_;
  std::mt19937_64 engine_;
};

}  // namespace splitgap

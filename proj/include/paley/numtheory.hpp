#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "paley/error.hpp"

namespace paley {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

/// Deterministic Miller-Rabin; the first twelve prime bases are exact for all 64-bit n.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t b : kBases) {
    if (n % b == 0) return n == b;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t b : kBases) {
    std::uint64_t x = pow_mod(b, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// An odd prime modulus, verified at construction.
class OddPrime {
 public:
  explicit OddPrime(std::uint64_t n) : value_(n) {
    if (!is_prime(n)) fail(ErrorCode::NotPrime, std::to_string(n) + " is not prime");
    if (n == 2) fail(ErrorCode::ParameterRange, "p = 2 has no Legendre symbol");
    if (n > (std::uint64_t{1} << 62)) fail(ErrorCode::ParameterRange, "p exceeds 2^62");
  }

  std::uint64_t value() const noexcept { return value_; }
  std::int64_t signed_value() const noexcept { return static_cast<std::int64_t>(value_); }

  friend bool operator==(const OddPrime&, const OddPrime&) = default;

 private:
  std::uint64_t value_;
};

/// Prime p with p ≡ 3 (mod 4) and p ≥ 7: the moduli for which Paley Gramians are purely imaginary.
class PaleyPrime {
 public:
  explicit PaleyPrime(std::uint64_t n) : prime_(n) {
    if (n % 4 != 3) {
      fail(ErrorCode::WrongResidueClass, std::to_string(n) + " is not 3 mod 4");
    }
    if (n < 7) fail(ErrorCode::ParameterRange, "Paley prime must be at least 7");
  }

  std::uint64_t value() const noexcept { return prime_.value(); }
  std::int64_t signed_value() const noexcept { return prime_.signed_value(); }
  const OddPrime& prime() const noexcept { return prime_; }
  operator const OddPrime&() const noexcept { return prime_; }  // NOLINT

  friend bool operator==(const PaleyPrime&, const PaleyPrime&) = default;

 private:
  OddPrime prime_;
};

/// a mod p in [0, p), valid for negative a.
inline std::uint64_t reduce_mod(std::int64_t a, std::uint64_t p) {
  if (a >= 0) return static_cast<std::uint64_t>(a) % p;
  const std::uint64_t m = static_cast<std::uint64_t>(-(a + 1)) % p;
  return p - 1 - m;
}

/// Legendre symbol by Euler's criterion.
inline int legendre(std::int64_t a, const OddPrime& p) {
  const std::uint64_t n = p.value();
  const std::uint64_t r = reduce_mod(a, n);
  if (r == 0) return 0;
  return pow_mod(r, (n - 1) / 2, n) == 1 ? 1 : -1;
}

/// Row indices of the Paley frame: 0 followed by the nonzero quadratic residues, ascending.
inline std::vector<std::int64_t> row_index_set(const PaleyPrime& p) {
  std::vector<std::int64_t> rows;
  rows.reserve((p.value() + 1) / 2);
  rows.push_back(0);
  for (std::int64_t m = 1; m < p.signed_value(); ++m) {
    if (legendre(m, p) == 1) rows.push_back(m);
  }
  return rows;
}

/// Precomputed Legendre symbols for one prime. Built by squaring, immutable afterwards,
/// so it can be shared across threads.
class LegendreTable {
 public:
  static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 26;

  explicit LegendreTable(const OddPrime& p) : p_(p), table_(p.value(), -1) {
    if (p.value() > kMaxModulus) fail(ErrorCode::ParameterRange, "modulus too large for table");
    const std::uint64_t n = p.value();
    table_[0] = 0;
    for (std::uint64_t x = 1; x <= (n - 1) / 2; ++x) table_[x * x % n] = 1;
  }

  int operator()(std::int64_t a) const { return table_[reduce_mod(a, p_.value())]; }
  const OddPrime& prime() const noexcept { return p_; }

 private:
  OddPrime p_;
  std::vector<signed char> table_;
};

}  // namespace paley

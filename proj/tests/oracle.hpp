#pragma once

// Reference implementations that share no code with the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "paley/matrix.hpp"

namespace oracle {

using cd = std::complex<double>;

/// Ascending eigenvalues by LAPACK zheev.
inline std::vector<double> eigenvalues(const paley::ComplexMatrix& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<lapack_complex_double> a(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cd z = m(i, j);
      a[static_cast<std::size_t>(i) * n + j] = z;
    }
  std::vector<double> w(static_cast<std::size_t>(n));
  if (LAPACKE_zheev(LAPACK_ROW_MAJOR, 'N', 'U', n, a.data(), n, w.data()) != 0) {
    throw std::runtime_error("zheev failed");
  }
  return w;
}

/// Determinant by LAPACK zgetrf.
inline cd determinant(const paley::ComplexMatrix& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<lapack_complex_double> a(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cd z = m(i, j);
      a[static_cast<std::size_t>(i) * n + j] = z;
    }
  std::vector<lapack_int> piv(static_cast<std::size_t>(n));
  const int info = LAPACKE_zgetrf(LAPACK_ROW_MAJOR, n, n, a.data(), n, piv.data());
  if (info < 0) throw std::runtime_error("zgetrf failed");
  cd det = 1.0;
  for (int i = 0; i < n; ++i) {
    const auto& d = a[static_cast<std::size_t>(i) * n + i];
    det *= d;
    if (piv[static_cast<std::size_t>(i)] != i + 1) det = -det;
  }
  return det;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Legendre symbol by listing the squares mod p.
inline std::vector<int> legendre_table(std::int64_t p) {
  std::vector<int> t(static_cast<std::size_t>(p), -1);
  t[0] = 0;
  for (std::int64_t x = 1; x < p; ++x) t[static_cast<std::size_t>(x * x % p)] = 1;
  return t;
}

inline int legendre_by_squares(std::int64_t a, std::int64_t p) {
  const auto t = legendre_table(p);
  return t[static_cast<std::size_t>(((a % p) + p) % p)];
}

/// Jacobi symbol via quadratic reciprocity (for large moduli).
inline int jacobi(std::uint64_t a, std::uint64_t n) {
  a %= n;
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::uint64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

/// Frame entry straight from the definition, without reducing the phase.
inline cd frame_entry(std::int64_t row_pos, std::int64_t m, std::int64_t n, std::int64_t p) {
  const double scale = row_pos == 0 ? std::sqrt(1.0 / p) : std::sqrt(2.0 / p);
  return scale * std::exp(cd(0.0, 2.0 * std::numbers::pi * static_cast<double>(m) * n / p));
}

inline paley::ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  paley::ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = g(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = cd(g(rng), g(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

/// Random ±1 skew-symmetric matrix (an orientation of the complete graph).
inline paley::RealMatrix random_orientation(std::size_t n, std::mt19937_64& rng) {
  paley::RealMatrix c(n, n);
  std::bernoulli_distribution coin;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      c(i, j) = coin(rng) ? 1.0 : -1.0;
      c(j, i) = -c(i, j);
    }
  return c;
}

/// Every k-subset of {0..n-1} in lexicographic order.
template <typename F>
void for_each_subset(int n, int k, F&& f) {
  std::vector<int> mask(static_cast<std::size_t>(n), 0);
  std::fill(mask.end() - k, mask.end(), 1);
  do {
    std::vector<std::int64_t> s;
    for (int i = 0; i < n; ++i)
      if (mask[static_cast<std::size_t>(i)]) s.push_back(i);
    f(s);
  } while (std::next_permutation(mask.begin(), mask.end()));
}

}  // namespace oracle

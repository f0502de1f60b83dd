#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "paley/error.hpp"
#include "paley/matrix.hpp"
#include "paley/numtheory.hpp"

namespace paley {

/// Ordered set of distinct column indices in [0, p).
///
/// The canonical form is strictly increasing. The ordered variant keeps the caller's
/// order, which matters wherever the first elements of a support are singled out
/// (nested Gramians, one-sided difference sets).
class SupportSet {
 public:
  static SupportSet canonical(const OddPrime& p, std::vector<std::int64_t> indices) {
    std::sort(indices.begin(), indices.end());
    return SupportSet(p, std::move(indices), true);
  }

  static SupportSet ordered(const OddPrime& p, std::vector<std::int64_t> indices) {
    return SupportSet(p, std::move(indices), false);
  }

  /// Reduces each value mod p (so 1-based literal sets like {1..p} map p ↦ 0).
  /// `changed` reports whether any element was altered by the reduction.
  static SupportSet from_literal(const OddPrime& p, const std::vector<std::int64_t>& values,
                                 bool* changed = nullptr) {
    std::vector<std::int64_t> reduced;
    reduced.reserve(values.size());
    bool any = false;
    for (std::int64_t v : values) {
      const auto r = static_cast<std::int64_t>(reduce_mod(v, p.value()));
      any = any || r != v;
      reduced.push_back(r);
    }
    if (changed != nullptr) *changed = any;
    return ordered(p, std::move(reduced));
  }

  const OddPrime& prime() const noexcept { return p_; }
  std::size_t size() const noexcept { return indices_.size(); }
  std::int64_t operator[](std::size_t i) const { return indices_[i]; }
  const std::vector<std::int64_t>& indices() const noexcept { return indices_; }
  bool is_canonical() const noexcept { return canonical_; }

  SupportSet canonicalized() const { return canonical(p_, indices_); }

  /// First n elements, keeping order.
  SupportSet prefix(std::size_t n) const {
    return SupportSet(p_, {indices_.begin(), indices_.begin() + static_cast<std::ptrdiff_t>(n)},
                      canonical_);
  }

  /// Every element translated by c mod p; order preserved.
  SupportSet shifted(std::int64_t c) const {
    std::vector<std::int64_t> out;
    out.reserve(indices_.size());
    for (std::int64_t v : indices_) {
      out.push_back(static_cast<std::int64_t>(reduce_mod(v + c, p_.value())));
    }
    return ordered(p_, std::move(out));
  }

 private:
  SupportSet(const OddPrime& p, std::vector<std::int64_t> indices, bool canonical)
      : p_(p), indices_(std::move(indices)), canonical_(canonical) {
    if (indices_.empty() || indices_.size() > p.value()) {
      fail(ErrorCode::ParameterRange, "support size must be in [1, p]");
    }
    std::vector<bool> seen(p.value(), false);
    for (std::int64_t v : indices_) {
      if (v < 0 || static_cast<std::uint64_t>(v) >= p.value()) {
        fail(ErrorCode::IndexOutOfRange, "support index " + std::to_string(v) + " outside [0, p)");
      }
      if (seen[static_cast<std::size_t>(v)]) {
        fail(ErrorCode::DuplicateSupport, "duplicate support index " + std::to_string(v));
      }
      seen[static_cast<std::size_t>(v)] = true;
    }
  }

  OddPrime p_;
  std::vector<std::int64_t> indices_;
  bool canonical_;
};

/// Hermitian matrix with the strict lower triangle mirrored from the upper one.
class GramMatrix {
 public:
  GramMatrix() = default;

  explicit GramMatrix(ComplexMatrix m) : entries_(std::move(m)) {
    if (!entries_.square()) fail(ErrorCode::ParameterRange, "Gram matrix must be square");
    const std::size_t n = entries_.rows();
    for (std::size_t i = 0; i < n; ++i) {
      entries_(i, i) = Complex(entries_(i, i).real(), 0.0);
      for (std::size_t j = i + 1; j < n; ++j) entries_(j, i) = std::conj(entries_(i, j));
    }
  }

  std::size_t order() const noexcept { return entries_.rows(); }
  const Complex& operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  const ComplexMatrix& entries() const noexcept { return entries_; }

  GramMatrix leading(std::size_t n) const { return GramMatrix(entries_.leading(n)); }

 private:
  ComplexMatrix entries_;
};

/// The (p+1)/2 × p partial DFT with rows at 0 and the quadratic residues, scaled to unit columns.
struct PaleyFrame {
  PaleyPrime p;
  std::vector<std::int64_t> rows;
  ComplexMatrix entries;

  std::size_t num_rows() const noexcept { return entries.rows(); }
  std::size_t num_cols() const noexcept { return entries.cols(); }
};

inline PaleyFrame build_frame(const PaleyPrime& p) {
  const std::uint64_t n = p.value();
  std::vector<std::int64_t> rows = row_index_set(p);
  ComplexMatrix entries(rows.size(), n);
  const double p_real = static_cast<double>(n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const double scale = std::sqrt((r == 0 ? 1.0 : 2.0) / p_real);
    for (std::uint64_t col = 0; col < n; ++col) {
      // reduce the phase exactly before converting to an angle
      const std::uint64_t phase = mul_mod(static_cast<std::uint64_t>(rows[r]), col, n);
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(phase) / p_real;
      entries(r, col) = std::polar(scale, angle);
    }
  }
  return PaleyFrame{p, std::move(rows), std::move(entries)};
}

inline PaleyFrame build_frame(std::uint64_t p) { return build_frame(PaleyPrime(p)); }

/// ⟨column a, column b⟩ = Σ_r m(r, a)·conj(m(r, b)). With the e^{+2πi mn/p} kernel this is
/// the convention under which the closed form reads (a − b | p)·i/√p.
inline Complex column_inner(const ComplexMatrix& m, std::size_t a, std::size_t b) {
  Complex acc{};
  for (std::size_t r = 0; r < m.rows(); ++r) acc += m(r, a) * std::conj(m(r, b));
  return acc;
}

/// Gramian by explicit column dot products; the validation route.
inline GramMatrix gram_direct(const PaleyFrame& frame, const SupportSet& support) {
  if (support.prime().value() != frame.p.value()) {
    fail(ErrorCode::ParameterRange, "support and frame use different primes");
  }
  const std::size_t k = support.size();
  ComplexMatrix g(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto ci = static_cast<std::size_t>(support[i]);
    if (ci >= frame.num_cols()) fail(ErrorCode::IndexOutOfRange, "support index outside frame");
    for (std::size_t j = i; j < k; ++j) {
      g(i, j) = column_inner(frame.entries, ci, static_cast<std::size_t>(support[j]));
    }
  }
  return GramMatrix(std::move(g));
}

/// Gramian from the closed form: off-diagonal (T[i] − T[j] | p) · i/√p, unit diagonal.
inline GramMatrix gram_analytic(const PaleyPrime& p, const SupportSet& support) {
  if (support.prime().value() != p.value()) {
    fail(ErrorCode::ParameterRange, "support and frame use different primes");
  }
  const std::size_t k = support.size();
  const double mu = 1.0 / std::sqrt(static_cast<double>(p.value()));
  ComplexMatrix g(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    g(i, i) = 1.0;
    for (std::size_t j = i + 1; j < k; ++j) {
      g(i, j) = Complex(0.0, legendre(support[i] - support[j], p) * mu);
    }
  }
  return GramMatrix(std::move(g));
}

/// Same as gram_analytic, reading symbols from a precomputed table.
inline GramMatrix gram_analytic(const LegendreTable& table, const SupportSet& support) {
  const std::size_t k = support.size();
  const double mu = 1.0 / std::sqrt(static_cast<double>(table.prime().value()));
  ComplexMatrix g(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    g(i, i) = 1.0;
    for (std::size_t j = i + 1; j < k; ++j) {
      g(i, j) = Complex(0.0, table(support[i] - support[j]) * mu);
    }
  }
  return GramMatrix(std::move(g));
}

/// Largest |⟨φ_i, φ_j⟩| over distinct column pairs.
inline double coherence(const ComplexMatrix& columns) {
  double best = 0.0;
  for (std::size_t a = 0; a < columns.cols(); ++a)
    for (std::size_t b = a + 1; b < columns.cols(); ++b)
      best = std::max(best, std::abs(column_inner(columns, a, b)));
  return best;
}

inline double coherence(const PaleyFrame& frame) { return coherence(frame.entries); }

/// ℓ1-coherence μ₁(s); every off-diagonal inner product of a Paley frame has magnitude 1/√p.
inline double l1_coherence(const PaleyPrime& p, std::uint64_t s) {
  if (s < 1 || s > p.value() - 1) fail(ErrorCode::ParameterRange, "s must be in [1, p-1]");
  return static_cast<double>(s) / std::sqrt(static_cast<double>(p.value()));
}

}  // namespace paley

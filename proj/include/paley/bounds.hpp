#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "paley/error.hpp"
#include "paley/numtheory.hpp"

namespace paley {

/// c = 1/(2(2−√3)), the constant of the recursive Dembo bound.
inline const double kDemboConstant = 1.0 / (2.0 * (2.0 - std::numbers::sqrt3));
/// (2/3)(2−√3) = 1/(3c), the k-independent improvement of the generalized Dembo bound.
inline const double kGeneralizedDemboOffset = 2.0 / 3.0 * (2.0 - std::numbers::sqrt3);

enum class BoundFamily { Gershgorin, SkewCot, SkewLinear, DemboRecursive, GeneralizedDembo };

inline constexpr std::array<BoundFamily, 5> kUnconditionalFamilies{
    BoundFamily::Gershgorin, BoundFamily::SkewCot, BoundFamily::SkewLinear,
    BoundFamily::DemboRecursive, BoundFamily::GeneralizedDembo};

inline std::string_view to_string(BoundFamily f) {
  switch (f) {
    case BoundFamily::Gershgorin: return "gershgorin";
    case BoundFamily::SkewCot: return "skew_cot";
    case BoundFamily::SkewLinear: return "skew_linear";
    case BoundFamily::DemboRecursive: return "dembo_recursive";
    case BoundFamily::GeneralizedDembo: return "generalized_dembo";
  }
  return "unknown";
}

inline double inv_sqrt(const OddPrime& p) { return 1.0 / std::sqrt(static_cast<double>(p.value())); }

inline double bound_gershgorin(std::int64_t k, const OddPrime& p) {
  if (k < 1) fail(ErrorCode::ParameterRange, "k must be at least 1");
  return static_cast<double>(k - 1) * inv_sqrt(p);
}

/// cot(π/2k)/√p when exact, else the linearized (2/π)·k/√p.
inline double bound_skew(std::int64_t k, const OddPrime& p, bool exact) {
  if (k < 1 || static_cast<std::uint64_t>(k) > p.value()) {
    fail(ErrorCode::ParameterRange, "k must be in [1, p]");
  }
  const double kd = static_cast<double>(k);
  if (exact) return 1.0 / std::tan(std::numbers::pi / (2.0 * kd)) * inv_sqrt(p);
  return 2.0 * kd / std::numbers::pi * inv_sqrt(p);
}

inline void require_dembo_domain(std::int64_t k, const OddPrime& p) {
  if (k < 3) fail(ErrorCode::ParameterRange, "Dembo bounds need k ≥ 3");
  if (p.value() < 7) fail(ErrorCode::ParameterRange, "Dembo bounds need p ≥ 7");
}

inline double bound_dembo_recursive(std::int64_t k, const OddPrime& p) {
  require_dembo_domain(k, p);
  const double km1 = static_cast<double>(k - 1);
  return (km1 - 1.0 / (kDemboConstant * km1)) * inv_sqrt(p);
}

inline double bound_generalized_dembo(std::int64_t k, const OddPrime& p) {
  require_dembo_domain(k, p);
  return (static_cast<double>(k - 1) - kGeneralizedDemboOffset) * inv_sqrt(p);
}

/// k^β/√p. Holds only if the quadratic-residue conjecture does.
inline double bound_conjectural(std::int64_t k, const OddPrime& p, double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) fail(ErrorCode::ParameterRange, "beta must be in (0, 1]");
  if (k < 1) fail(ErrorCode::ParameterRange, "k must be at least 1");
  return std::pow(static_cast<double>(k), beta) * inv_sqrt(p);
}

/// Family value at k, or nullopt where the family is undefined (Dembo families below k = 3).
inline std::optional<double> bound_value(BoundFamily f, std::int64_t k, const OddPrime& p) {
  switch (f) {
    case BoundFamily::Gershgorin: return bound_gershgorin(k, p);
    case BoundFamily::SkewCot: return bound_skew(k, p, true);
    case BoundFamily::SkewLinear: return bound_skew(k, p, false);
    case BoundFamily::DemboRecursive:
      if (k < 3) return std::nullopt;
      return bound_dembo_recursive(k, p);
    case BoundFamily::GeneralizedDembo:
      if (k < 3) return std::nullopt;
      return bound_generalized_dembo(k, p);
  }
  return std::nullopt;
}

struct SparsityThreshold {
  BoundFamily family;
  /// Largest even s = 2k with bound(s, p) < 1/√2 (0 if none).
  std::int64_t largest_even;
  /// The closed-form floor expression printed for Gershgorin and skew-linear.
  std::optional<std::int64_t> printed_threshold;
};

/// Recovery needs δ_{2k} < 1/√2. At s = 2 the Dembo families fall back to the exact δ₂ = 1/√p.
inline SparsityThreshold max_sparsity(const OddPrime& p, BoundFamily family) {
  const double limit = 1.0 / std::numbers::sqrt2;
  std::int64_t best = 0;
  for (std::int64_t s = 2; static_cast<std::uint64_t>(s) <= p.value(); s += 2) {
    const double v = bound_value(family, s, p).value_or(inv_sqrt(p));
    if (!(v < limit)) break;
    best = s;
  }
  std::optional<std::int64_t> printed;
  const double root_half_p = std::sqrt(static_cast<double>(p.value()) / 2.0);
  if (family == BoundFamily::Gershgorin) {
    printed = static_cast<std::int64_t>(std::floor(root_half_p)) + 1;
  } else if (family == BoundFamily::SkewLinear) {
    printed = static_cast<std::int64_t>(std::floor(root_half_p * std::numbers::pi / 2.0));
  }
  return {family, best, printed};
}

/// (k − 1/(ck))/2 + √((k − 1/(ck))²/4 + k + 1) ≤ k + 1 − 1/(c(k+1)), with slack 1e-12.
/// Evaluated in extended precision: in double the two sides differ by less than one ulp
/// for k near 10⁴.
inline bool lemma_k_inequality(double c, std::int64_t k) {
  if (c < 1.0 || k < 1) fail(ErrorCode::ParameterRange, "lemma needs c ≥ 1 and k ≥ 1");
  const long double cl = c;
  const long double kl = static_cast<long double>(k);
  const long double t = kl - 1.0L / (cl * kl);
  const long double lhs = t / 2.0L + std::sqrt(t * t / 4.0L + kl + 1.0L);
  const long double rhs = kl + 1.0L - 1.0L / (cl * (kl + 1.0L));
  return lhs <= rhs + 1e-12L;
}

namespace detail {

/// 12c^{1+β} < (1−α)c² − 2c decided exactly: (1−α) is taken as a rational with
/// denominator 10⁹ and, when 10β is an integer b, both sides are raised to the tenth
/// power, giving (12d)^10 c^b < (nc − 2d)^10 in integers.
inline bool c_alpha_exact(std::uint64_t c, double alpha, double beta) {
  namespace mp = boost::multiprecision;
  constexpr std::int64_t kDen = 1'000'000'000;
  const auto num = static_cast<std::int64_t>(std::llround((1.0 - alpha) * kDen));
  const mp::cpp_int cc = c;
  const mp::cpp_int rhs_base = mp::cpp_int(num) * cc - 2 * mp::cpp_int(kDen);
  if (rhs_base <= 0) return false;
  const double b10 = beta * 10.0;
  if (std::abs(b10 - std::round(b10)) < 1e-12) {
    const auto b = static_cast<unsigned>(std::llround(b10));
    const mp::cpp_int lhs = mp::pow(mp::cpp_int(12) * kDen, 10) * mp::pow(cc, b);
    return lhs < mp::pow(rhs_base, 10);
  }
  using Float = mp::cpp_bin_float_100;
  const Float cf(c);
  const Float lhs = Float(12) * mp::pow(cf, Float(1) + Float(beta));
  const Float rhs = (Float(num) / Float(kDen)) * cf * cf - Float(2) * cf;
  return lhs < rhs;
}

}  // namespace detail

/// Whether 12c^{1+β} < (1−α)c² − 2c holds at integer c.
inline bool c_alpha_holds(std::uint64_t c, double alpha, double beta) {
  const long double cl = static_cast<long double>(c);
  const long double lhs = 12.0L * std::pow(cl, 1.0L + static_cast<long double>(beta));
  const long double rhs = (1.0L - static_cast<long double>(alpha)) * cl * cl - 2.0L * cl;
  const long double band = 1e-12L * std::max(std::abs(lhs), std::abs(rhs));
  if (lhs < rhs - band) return true;
  if (lhs > rhs + band) return false;
  return detail::c_alpha_exact(c, alpha, beta);
}

struct CAlphaResult {
  std::uint64_t c;
  bool holds_at_c;
  bool fails_below;
};

/// Smallest positive integer c with 12c^{1+β} < (1−α)c² − 2c, by doubling then bisection.
/// The admissible set is a half-line: (1−α)c − 12c^β − 2 is convex in c and negative at 0.
inline CAlphaResult find_c_alpha(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorCode::ParameterRange, "alpha must be in (0, 1)");
  if (!(beta > 0.0 && beta < 1.0)) fail(ErrorCode::ParameterRange, "beta must be in (0, 1)");
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
  std::uint64_t hi = 1;
  while (!c_alpha_holds(hi, alpha, beta)) {
    if (hi >= kLimit) fail(ErrorCode::Unsatisfiable, "c_alpha inequality unsatisfiable below 2^62");
    hi *= 2;
  }
  std::uint64_t lo = hi / 2;  // fails at lo (or lo == 0)
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (c_alpha_holds(mid, alpha, beta)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const bool holds = c_alpha_holds(hi, alpha, beta);
  const bool fails_below = hi == 1 || !c_alpha_holds(hi - 1, alpha, beta);
  return {hi, holds, fails_below};
}

/// Every bound family at (p, k), plus the conditional k^β/√p.
struct BoundReport {
  std::uint64_t p = 0;
  bool paley_prime = false;
  std::int64_t k = 0;
  double gershgorin = 0.0;
  double skew_cot = 0.0;
  double skew_linear = 0.0;
  std::optional<double> dembo_recursive;
  std::optional<double> generalized_dembo;
  std::optional<double> conjectural;
  double beta = 0.7;
  std::optional<double> empirical_lower;

  /// Pointwise minimum over the unconditional families defined at k.
  double best() const {
    double b = std::min({gershgorin, skew_cot, skew_linear});
    if (dembo_recursive) b = std::min(b, *dembo_recursive);
    if (generalized_dembo) b = std::min(b, *generalized_dembo);
    return b;
  }
};

inline BoundReport make_bound_report(const OddPrime& p, std::int64_t k, double beta) {
  if (k < 2) fail(ErrorCode::ParameterRange, "k must be at least 2");
  if (static_cast<std::uint64_t>(k) > p.value()) fail(ErrorCode::ParameterRange, "k must not exceed p");
  BoundReport r;
  r.p = p.value();
  r.paley_prime = p.value() % 4 == 3 && p.value() >= 7;
  r.k = k;
  r.gershgorin = bound_gershgorin(k, p);
  r.skew_cot = bound_skew(k, p, true);
  r.skew_linear = bound_skew(k, p, false);
  r.dembo_recursive = bound_value(BoundFamily::DemboRecursive, k, p);
  r.generalized_dembo = bound_value(BoundFamily::GeneralizedDembo, k, p);
  r.beta = beta;
  r.conjectural = bound_conjectural(k, p, beta);
  return r;
}

}  // namespace paley

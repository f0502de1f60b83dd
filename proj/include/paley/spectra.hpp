#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "paley/error.hpp"
#include "paley/frame.hpp"
#include "paley/matrix.hpp"
#include "paley/numtheory.hpp"

namespace paley {

inline constexpr double kHermitianTolerance = 1e-10;
namespace detail {

using EigenComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline Eigen::Map<const EigenComplexMatrix> as_eigen(const ComplexMatrix& m) {
  return {m.data().data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols())};
}

}  // namespace detail

/// Eigenvalues in ascending order.
struct Spectrum {
  std::vector<double> eigenvalues;

  std::size_t size() const noexcept { return eigenvalues.size(); }
  double min() const { return eigenvalues.front(); }
  double max() const { return eigenvalues.back(); }
  double sum() const {
    double s = 0.0;
    for (double v : eigenvalues) s += v;
    return s;
  }
  /// max{λ_max − 1, 1 − λ_min}: the RIP deviation of a unit-diagonal Gramian.
  double deviation_from_one() const { return std::max(max() - 1.0, 1.0 - min()); }
};

/// Eigenvalues of a Hermitian matrix (Householder tridiagonalization + implicit QR, via Eigen).
/// Only the lower triangle is read after the Hermitian check.
inline Spectrum hermitian_spectrum(const ComplexMatrix& input) {
  if (!input.square()) fail(ErrorCode::ParameterRange, "eigenvalues need a square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return {};
  const double dev = hermitian_deviation(input);
  if (dev > kHermitianTolerance) {
    fail(ErrorCode::NonHermitian, "matrix deviates from Hermitian by " + std::to_string(dev));
  }
  Eigen::SelfAdjointEigenSolver<detail::EigenComplexMatrix> solver(detail::as_eigen(input),
                                                                   Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) fail(ErrorCode::NoConvergence, "eigenvalue iteration did not converge");
  const auto& ev = solver.eigenvalues();
  Spectrum out;
  out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  return out;
}

inline Spectrum hermitian_spectrum(const GramMatrix& g) { return hermitian_spectrum(g.entries()); }

/// Pluggable eigensolver, so verification can run against a substitute.
using SpectrumSolver = std::function<Spectrum(const ComplexMatrix&)>;

inline Spectrum default_solver(const ComplexMatrix& m) { return hermitian_spectrum(m); }

/// Determinant by LU with partial pivoting.
inline Complex determinant(const ComplexMatrix& m) {
  if (!m.square()) fail(ErrorCode::ParameterRange, "determinant needs a square matrix");
  if (m.rows() == 0) return 1.0;
  return detail::as_eigen(m).partialPivLu().determinant();
}

/// max |det(G − xI) − [(1−x)³ − 3(1−x)/p]| over the grid; G must be an order-3 Paley Gramian.
inline double gram3_charpoly_check(const GramMatrix& g, const PaleyPrime& p,
                                   std::span<const double> grid) {
  if (g.order() != 3) fail(ErrorCode::ParameterRange, "characteristic check needs order 3");
  const double pr = static_cast<double>(p.value());
  double worst = 0.0;
  for (double x : grid) {
    ComplexMatrix shifted = g.entries();
    for (std::size_t i = 0; i < 3; ++i) shifted(i, i) -= x;
    const double y = 1.0 - x;
    const double expected = y * y * y - 3.0 * y / pr;
    worst = std::max(worst, std::abs(determinant(std::move(shifted)) - expected));
  }
  return worst;
}

inline double gram3_charpoly_check(const GramMatrix& g, const PaleyPrime& p) {
  static constexpr std::array<double, 5> kGrid{0.0, 0.5, 1.0, 1.5, 2.0};
  return gram3_charpoly_check(g, p, kGrid);
}

/// Skew adjacency of the transitive tournament: +1 above the diagonal, −1 below.
inline RealMatrix canonical_tournament(std::size_t n) {
  if (n == 0) fail(ErrorCode::ParameterRange, "tournament order must be positive");
  RealMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i, j) = i < j ? 1.0 : (i > j ? -1.0 : 0.0);
  return c;
}

/// Spectral radius of a real skew-symmetric matrix, taken as λ_max of the Hermitian i·C.
inline double skew_spectral_radius(const RealMatrix& c,
                                   const SpectrumSolver& solver = default_solver) {
  if (!c.square()) fail(ErrorCode::ParameterRange, "skew matrix must be square");
  const std::size_t n = c.rows();
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(c(i, j) + c(j, i)) > 1e-12) fail(ErrorCode::NonHermitian, "matrix is not skew");
      h(i, j) = Complex(0.0, c(i, j));
    }
  }
  const Spectrum s = solver(h);
  return std::max(std::abs(s.min()), std::abs(s.max()));
}

inline double dembo_upper(double c, double eta_k, double btb) {
  return 0.5 * (c + eta_k) + std::sqrt(0.25 * (c - eta_k) * (c - eta_k) + btb);
}

inline double dembo_lower(double c, double eta_1, double btb) {
  return 0.5 * (c + eta_1) - std::sqrt(0.25 * (c - eta_1) * (c - eta_1) + btb);
}

/// det [[a, b], [c, ηI_k]] = η^k (a − b·c/η) for a row b and column c.
inline Complex schur_bordered_det(Complex a, std::span<const Complex> b,
                                  std::span<const Complex> c, double eta, std::size_t k) {
  if (eta == 0.0) fail(ErrorCode::ParameterRange, "eta must be nonzero");
  if (b.size() != k || c.size() != k) fail(ErrorCode::ParameterRange, "border length mismatch");
  Complex bc{};
  for (std::size_t i = 0; i < k; ++i) bc += b[i] * c[i];
  return std::pow(eta, static_cast<double>(k)) * (a - bc / eta);
}

/// Σ_i |c_i|² (d_i d_i*) − Σ_i c_i d_i* (d_i c_i*), where d_i, c_i drop entry i.
inline double gamma_term(std::span<const Complex> c, std::span<const Complex> d) {
  if (c.size() != d.size() || c.empty()) fail(ErrorCode::ParameterRange, "gamma needs equal-length vectors");
  const std::size_t k = c.size();
  double dd_total = 0.0;
  Complex dc_total{};
  for (std::size_t m = 0; m < k; ++m) {
    dd_total += std::norm(d[m]);
    dc_total += d[m] * std::conj(c[m]);
  }
  double first = 0.0;
  Complex second{};
  double scale = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double dd_i = dd_total - std::norm(d[i]);
    const Complex dc_i = dc_total - d[i] * std::conj(c[i]);
    first += std::norm(c[i]) * dd_i;
    const Complex term = c[i] * std::conj(d[i]) * dc_i;
    second += term;
    scale += std::abs(term);
  }
  if (std::abs(second.imag()) > 1e-12 * std::max(1.0, scale)) {
    fail(ErrorCode::MalformedInput, "gamma has a non-negligible imaginary part");
  }
  return first - second.real();
}

/// R = [[a, b, c], [b*, a, d], [c*, d*, ηI_k]] in block form.
struct BorderedBlock {
  double a = 1.0;
  Complex b{};
  ComplexVector c;
  ComplexVector d;
  double eta = 1.0;

  std::size_t k() const noexcept { return c.size(); }
};

/// Splits a Gramian as [[1, b, c], [b*, 1, d], [c*, d*, Q]] and replaces Q by ηI.
inline BorderedBlock bordered_from_gram(const GramMatrix& g, double eta) {
  if (g.order() < 3) fail(ErrorCode::ParameterRange, "bordered split needs order ≥ 3");
  BorderedBlock blk;
  blk.a = g(0, 0).real();
  blk.b = g(0, 1);
  for (std::size_t j = 2; j < g.order(); ++j) {
    blk.c.push_back(g(0, j));
    blk.d.push_back(g(1, j));
  }
  blk.eta = eta;
  return blk;
}

/// The dense (k+2)×(k+2) matrix of a bordered block.
inline ComplexMatrix assemble(const BorderedBlock& blk) {
  const std::size_t k = blk.k();
  ComplexMatrix r(k + 2, k + 2);
  r(0, 0) = blk.a;
  r(1, 1) = blk.a;
  r(0, 1) = blk.b;
  r(1, 0) = std::conj(blk.b);
  for (std::size_t i = 0; i < k; ++i) {
    r(0, i + 2) = blk.c[i];
    r(1, i + 2) = blk.d[i];
    r(i + 2, 0) = std::conj(blk.c[i]);
    r(i + 2, 1) = std::conj(blk.d[i]);
    r(i + 2, i + 2) = blk.eta;
  }
  return r;
}

namespace detail {

struct BlockScalars {
  double cc = 0.0;     // c c*
  double dd = 0.0;     // d d*
  double bb = 0.0;     // b b*
  double re_bdc = 0.0; // Re(b d c*)
  double gamma = 0.0;
};

inline BlockScalars block_scalars(const BorderedBlock& blk) {
  if (blk.c.size() != blk.d.size() || blk.c.empty()) {
    fail(ErrorCode::ParameterRange, "border vectors must have equal positive length");
  }
  BlockScalars s;
  Complex dc{};
  for (std::size_t i = 0; i < blk.k(); ++i) {
    s.cc += std::norm(blk.c[i]);
    s.dd += std::norm(blk.d[i]);
    dc += blk.d[i] * std::conj(blk.c[i]);
  }
  s.bb = std::norm(blk.b);
  s.re_bdc = (blk.b * dc).real();
  s.gamma = gamma_term(blk.c, blk.d);
  return s;
}

using Poly = std::vector<double>;  // ascending coefficients

inline Poly mul(const Poly& x, const Poly& y) {
  Poly out(x.size() + y.size() - 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  return out;
}

inline void axpy(Poly& acc, double f, const Poly& x) {
  if (acc.size() < x.size()) acc.resize(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) acc[i] += f * x[i];
}

inline double horner(const Poly& poly, double x) {
  double v = 0.0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) v = v * x + *it;
  return v;
}

inline Poly derivative(const Poly& poly) {
  Poly out;
  for (std::size_t i = 1; i < poly.size(); ++i) out.push_back(static_cast<double>(i) * poly[i]);
  return out;
}

/// Bisection on a bracket [lo, hi] with a sign change of f, to width 1e-13.
template <typename F>
double bisect(F f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Closed-form det(R − xI) for the bordered block; requires k ≥ 2.
inline Complex block3_det(const BorderedBlock& blk, double x) {
  if (blk.k() < 2) fail(ErrorCode::ParameterRange, "block determinant needs k ≥ 2");
  const auto s = detail::block_scalars(blk);
  const double u = blk.a - x;
  const double v = blk.eta - x;
  const double bracket = u * u * v * v - u * v * (s.dd + s.cc) - s.bb * v * v +
                         2.0 * v * s.re_bdc + s.gamma;
  return std::pow(v, static_cast<double>(blk.k() - 2)) * bracket;
}

/// Coefficients (ascending in x) of the bracketed quartic factor of det(R − xI).
inline std::vector<double> block3_quartic(const BorderedBlock& blk) {
  using detail::Poly;
  const auto s = detail::block_scalars(blk);
  const Poly u{blk.a, -1.0};
  const Poly v{blk.eta, -1.0};
  const Poly uv = detail::mul(u, v);
  const Poly vv = detail::mul(v, v);
  Poly q = detail::mul(uv, uv);
  detail::axpy(q, -(s.dd + s.cc), uv);
  detail::axpy(q, -s.bb, vv);
  detail::axpy(q, 2.0 * s.re_bdc, v);
  detail::axpy(q, 1.0, Poly{s.gamma});
  return q;
}

/// Real roots of the block quartic, found by a 1e-4 scan over a bracket around η, then
/// refined to 1e-12. Roots of even multiplicity appear as critical points of the quartic
/// where it vanishes; they are located through sign changes of the derivative.
inline std::vector<double> block3_quartic_roots(const BorderedBlock& blk) {
  const auto poly = block3_quartic(blk);
  const auto dpoly = detail::derivative(poly);
  const auto s = detail::block_scalars(blk);
  const double radius = std::sqrt(2.0 * (s.bb + s.cc + s.dd));
  const double lo = std::min({blk.eta - 3.0, blk.a - radius - 1e-3, blk.eta - radius - 1e-3});
  const double hi = std::max({blk.eta + 3.0, blk.a + radius + 1e-3, blk.eta + radius + 1e-3});
  constexpr double kStep = 1e-4;
  const auto steps = static_cast<std::size_t>(std::ceil((hi - lo) / kStep));

  auto q = [&](double x) { return detail::horner(poly, x); };
  auto dq = [&](double x) { return detail::horner(dpoly, x); };
  auto magnitude = [&](double x) {
    const double u = blk.a - x;
    const double v = blk.eta - x;
    return std::abs(u * u * v * v) + std::abs(u * v * (s.cc + s.dd)) + std::abs(s.bb * v * v) +
           std::abs(2.0 * v * s.re_bdc) + std::abs(s.gamma) + 1e-300;
  };

  std::vector<double> roots;
  double x0 = lo;
  double q0 = q(x0);
  double d0 = dq(x0);
  if (q0 == 0.0) roots.push_back(x0);
  for (std::size_t i = 1; i <= steps; ++i) {
    const double x1 = lo + static_cast<double>(i) * kStep;
    const double q1 = q(x1);
    const double d1 = dq(x1);
    if (q1 == 0.0) {
      roots.push_back(x1);
    } else if (q0 != 0.0 && (q0 < 0.0) != (q1 < 0.0)) {
      roots.push_back(detail::bisect(q, x0, x1));
    } else if (d0 != 0.0 && d1 != 0.0 && (d0 < 0.0) != (d1 < 0.0)) {
      const double xc = detail::bisect(dq, x0, x1);
      if (std::abs(q(xc)) <= 1e-12 * magnitude(xc)) roots.push_back(xc);
    }
    x0 = x1;
    q0 = q1;
    d0 = d1;
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double r : roots) {
    if (unique.empty() || r - unique.back() > 1e-9) unique.push_back(r);
  }
  return unique;
}

struct EigenBounds {
  double upper;
  double lower;
};

/// Extreme-eigenvalue bounds from 3×3 block majorants: the largest root of det(R₁ − xI)
/// and the smallest root of det(R₂ − xI), where R₁, R₂ replace the trailing block by
/// blk_up.eta·I and blk_low.eta·I.
inline EigenBounds generalized_dembo_extremes(const BorderedBlock& blk_up,
                                              const BorderedBlock& blk_low) {
  if (blk_up.eta < blk_low.eta) fail(ErrorCode::ParameterRange, "upper eta below lower eta");
  if (blk_up.k() < 2 || blk_low.k() < 2) fail(ErrorCode::ParameterRange, "blocks need k ≥ 2");

  auto up_roots = block3_quartic_roots(blk_up);
  auto low_roots = block3_quartic_roots(blk_low);
  if (blk_up.k() > 2) up_roots.push_back(blk_up.eta);
  if (blk_low.k() > 2) low_roots.push_back(blk_low.eta);
  if (up_roots.empty() || low_roots.empty()) {
    fail(ErrorCode::NoRealRoot, "no real root of the block characteristic polynomial in bracket");
  }
  return {*std::max_element(up_roots.begin(), up_roots.end()),
          *std::min_element(low_roots.begin(), low_roots.end())};
}

}  // namespace paley

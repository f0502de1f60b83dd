#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "paley/frame.hpp"
#include "paley/random.hpp"
#include "paley/spectra.hpp"

using namespace paley;

namespace {

BorderedBlock random_block(std::size_t k, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin;
  std::uniform_real_distribution<double> eta(0.5, 2.5);
  const double mu = 1.0 / std::sqrt(p);
  auto pm = [&] { return Complex(0.0, coin(rng) ? mu : -mu); };
  BorderedBlock blk;
  blk.a = 1.0;
  blk.b = pm();
  for (std::size_t i = 0; i < k; ++i) {
    blk.c.push_back(pm());
    blk.d.push_back(pm());
  }
  blk.eta = eta(rng);
  return blk;
}

ComplexMatrix shifted(ComplexMatrix m, double x) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) -= x;
  return m;
}

}  // namespace

TEST(HermitianSpectrum, MatchesLapackOnRandomMatrices) {
  std::mt19937_64 rng(42);
  for (std::size_t n = 1; n <= 40; ++n) {
    for (int rep = 0; rep < 3; ++rep) {
      const auto m = oracle::random_hermitian(n, rng);
      const auto got = hermitian_spectrum(m).eigenvalues;
      const auto ref = oracle::eigenvalues(m);
      ASSERT_EQ(got.size(), ref.size());
      for (std::size_t i = 0; i < n; ++i) ASSERT_NEAR(got[i], ref[i], 1e-10 * (1.0 + std::abs(ref[i])));
    }
  }
}

TEST(HermitianSpectrum, AscendingAndTracePreserving) {
  std::mt19937_64 rng(7);
  for (std::size_t n = 2; n <= 25; ++n) {
    const auto m = oracle::random_hermitian(n, rng);
    const auto s = hermitian_spectrum(m);
    EXPECT_TRUE(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += m(i, i).real();
    EXPECT_NEAR(s.sum(), trace, 1e-10 * n);
  }
}

// Cauchy interlacing between a Hermitian matrix and its leading principal submatrix.
TEST(HermitianSpectrum, InterlacingProperty) {
  std::mt19937_64 rng(99);
  for (std::size_t n = 2; n <= 20; ++n) {
    const auto m = oracle::random_hermitian(n, rng);
    const auto big = hermitian_spectrum(m).eigenvalues;
    const auto small = hermitian_spectrum(m.leading(n - 1)).eigenvalues;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      EXPECT_LE(big[i], small[i] + 1e-10);
      EXPECT_LE(small[i], big[i + 1] + 1e-10);
    }
  }
}

TEST(HermitianSpectrum, RejectsNonHermitian) {
  ComplexMatrix m(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(hermitian_spectrum(m), Error);
  try {
    hermitian_spectrum(m);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonHermitian);
  }
}

TEST(HermitianSpectrum, PaleyGramiansAreSymmetricAboutOne) {
  const PaleyPrime p(43);
  for (std::uint64_t t = 0; t < 20; ++t) {
    const auto g = gram_analytic(p, SupportSet::ordered(p, random_subset(43, 3 + t, trial_seed(1, t))));
    const auto ev = hermitian_spectrum(g).eigenvalues;
    for (std::size_t i = 0; i < ev.size(); ++i) ASSERT_NEAR(ev[i] - 1.0, 1.0 - ev[ev.size() - 1 - i], 1e-12);
  }
}

// 3×3 Hermitian example with every upper entry iμ; extremes 1 ± √3μ.
TEST(HermitianSpectrum, ImaginaryThreeByThree) {
  const double mu = 0.2;
  ComplexMatrix m = ComplexMatrix::identity(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      m(i, j) = Complex(0.0, mu);
      m(j, i) = Complex(0.0, -mu);
    }
  const auto s = hermitian_spectrum(m);
  EXPECT_NEAR(s.max(), 1.0 + std::sqrt(3.0) * mu, 1e-14);
  EXPECT_NEAR(s.min(), 1.0 - std::sqrt(3.0) * mu, 1e-14);
  // the real all-μ version reaches 1 + 2μ
  ComplexMatrix r = ComplexMatrix::identity(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) r(i, j) = mu;
  EXPECT_NEAR(hermitian_spectrum(r).max(), 1.0 + 2.0 * mu, 1e-14);
}

TEST(Determinant, MatchesLapack) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (std::size_t n = 1; n <= 12; ++n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
    const Complex ref = oracle::determinant(m);
    EXPECT_LE(std::abs(determinant(m) - ref), 1e-10 * std::max(1.0, std::abs(ref)));
  }
}

TEST(Gram3Charpoly, ResidualVanishes) {
  for (std::uint64_t p : {7, 19, 103}) {
    const PaleyPrime prime(p);
    for (std::uint64_t t = 0; t < 100; ++t) {
      const auto g = gram_analytic(prime, SupportSet::ordered(prime, random_subset(p, 3, trial_seed(p, t))));
      ASSERT_LT(gram3_charpoly_check(g, prime), 1e-12);
    }
  }
}

TEST(Gram3Charpoly, DetectsWrongMatrix) {
  const PaleyPrime p(19);
  const auto g = GramMatrix(ComplexMatrix::identity(3));
  EXPECT_GT(gram3_charpoly_check(g, p), 1e-3);
}

TEST(SkewRadius, CanonicalTournamentIsCot) {
  for (std::size_t n = 2; n <= 12; ++n) {
    const double expected = 1.0 / std::tan(std::numbers::pi / (2.0 * static_cast<double>(n)));
    EXPECT_NEAR(skew_spectral_radius(canonical_tournament(n)), expected, 1e-8) << n;
  }
}

TEST(SkewRadius, RandomOrientationsBelowCot) {
  std::mt19937_64 rng(2024);
  for (std::size_t n = 2; n <= 10; ++n) {
    const double cap = 1.0 / std::tan(std::numbers::pi / (2.0 * static_cast<double>(n)));
    for (int t = 0; t < 200; ++t) {
      ASSERT_LE(skew_spectral_radius(oracle::random_orientation(n, rng)), cap + 1e-8);
    }
  }
}

TEST(SkewRadius, ExhaustiveOrientationsUpToFive) {
  // max over all 2^(n(n-1)/2) orientations equals the transitive tournament value
  for (std::size_t n = 2; n <= 5; ++n) {
    const std::size_t edges = n * (n - 1) / 2;
    double best = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges); ++mask) {
      RealMatrix c(n, n);
      std::size_t e = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++e) {
          c(i, j) = (mask >> e) & 1U ? 1.0 : -1.0;
          c(j, i) = -c(i, j);
        }
      best = std::max(best, skew_spectral_radius(c));
    }
    EXPECT_NEAR(best, 1.0 / std::tan(std::numbers::pi / (2.0 * static_cast<double>(n))), 1e-10);
  }
}

TEST(Dembo, BoundsBracketExtremeEigenvalues) {
  std::mt19937_64 rng(17);
  for (std::size_t n = 2; n <= 15; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      auto m = oracle::random_hermitian(n, rng);
      // shift to positive semidefinite
      const auto ev0 = oracle::eigenvalues(m);
      for (std::size_t i = 0; i < n; ++i) m(i, i) -= ev0.front();
      const auto ev = oracle::eigenvalues(m);
      ComplexMatrix q(n - 1, n - 1);
      double btb = 0.0;
      for (std::size_t i = 1; i < n; ++i) {
        btb += std::norm(m(i, 0));
        for (std::size_t j = 1; j < n; ++j) q(i - 1, j - 1) = m(i, j);
      }
      const auto qev = oracle::eigenvalues(q);
      const double c = m(0, 0).real();
      EXPECT_GE(dembo_upper(c, qev.back(), btb), ev.back() - 1e-10);
      EXPECT_LE(dembo_lower(c, qev.front(), btb), ev.front() + 1e-10);
    }
  }
}

TEST(Dembo, ExactForTwoByTwo) {
  // [[1, iμ], [−iμ, 1]] has extremes 1 ± μ
  const double mu = 1.0 / std::sqrt(103.0);
  EXPECT_NEAR(dembo_upper(1.0, 1.0, mu * mu), 1.0 + mu, 1e-15);
  EXPECT_NEAR(dembo_lower(1.0, 1.0, mu * mu), 1.0 - mu, 1e-15);
}

TEST(SchurBordered, MatchesDenseDeterminant) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (std::size_t k = 1; k <= 9; ++k) {
    const Complex a(g(rng), g(rng));
    ComplexVector b(k), c(k);
    for (std::size_t i = 0; i < k; ++i) {
      b[i] = Complex(g(rng), g(rng));
      c[i] = Complex(g(rng), g(rng));
    }
    const double eta = 0.7 + 0.1 * static_cast<double>(k);
    ComplexMatrix m(k + 1, k + 1);
    m(0, 0) = a;
    for (std::size_t i = 0; i < k; ++i) {
      m(0, i + 1) = b[i];
      m(i + 1, 0) = c[i];
      m(i + 1, i + 1) = eta;
    }
    const Complex ref = oracle::determinant(m);
    EXPECT_LE(std::abs(schur_bordered_det(a, b, c, eta, k) - ref), 1e-10 * std::max(1.0, std::abs(ref)));
  }
}

// γ equals cc*·dd* − |c·d*|² (Lagrange's identity), hence γ ≥ 0.
TEST(Gamma, LagrangeIdentity) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  for (std::size_t k = 1; k <= 12; ++k) {
    for (int rep = 0; rep < 20; ++rep) {
      ComplexVector c(k), d(k);
      for (std::size_t i = 0; i < k; ++i) {
        c[i] = Complex(g(rng), g(rng));
        d[i] = Complex(g(rng), g(rng));
      }
      double cc = 0.0, dd = 0.0;
      Complex cd{};
      for (std::size_t i = 0; i < k; ++i) {
        cc += std::norm(c[i]);
        dd += std::norm(d[i]);
        cd += c[i] * std::conj(d[i]);
      }
      const double expected = cc * dd - std::norm(cd);
      const double got = gamma_term(c, d);
      EXPECT_NEAR(got, expected, 1e-10 * (1.0 + cc * dd));
      EXPECT_GE(got, -1e-12 * (1.0 + cc * dd));
    }
  }
}

TEST(Gamma, ZeroForParallelVectors) {
  const ComplexVector c{Complex(0, 1), Complex(0, -1), Complex(0, 1)};
  EXPECT_NEAR(gamma_term(c, c), 0.0, 1e-15);
}

TEST(Block3, DeterminantMatchesLapack) {
  std::mt19937_64 rng(1234);
  for (int t = 0; t < 200; ++t) {
    const std::size_t k = 2 + static_cast<std::size_t>(t % 9);
    const auto blk = random_block(k, 19.0, rng);
    const auto dense = assemble(blk);
    for (double x : {-1.0, 0.0, 0.3, 1.0, 1.9, blk.eta + 0.01}) {
      const Complex ref = oracle::determinant(shifted(dense, x));
      ASSERT_LE(std::abs(block3_det(blk, x) - ref), 1e-10 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST(Block3, QuarticRootsAreEigenvalues) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 60; ++t) {
    const std::size_t k = 2 + static_cast<std::size_t>(t % 7);
    const auto blk = random_block(k, 7.0 + 4.0 * (t % 3), rng);
    const auto roots = block3_quartic_roots(blk);
    const auto ev = oracle::eigenvalues(assemble(blk));
    ASSERT_FALSE(roots.empty());
    for (double r : roots) {
      double nearest = 1e9;
      for (double e : ev) nearest = std::min(nearest, std::abs(e - r));
      EXPECT_LT(nearest, 1e-7) << r;
    }
    // the extreme eigenvalues are roots of the quartic or equal to η
    std::vector<double> candidates = roots;
    if (k > 2) candidates.push_back(blk.eta);
    EXPECT_NEAR(*std::max_element(candidates.begin(), candidates.end()), ev.back(), 1e-7);
    EXPECT_NEAR(*std::min_element(candidates.begin(), candidates.end()), ev.front(), 1e-7);
  }
}

TEST(Block3, DoubleRootFound) {
  // b = 0 and c = d = 0 give (a − x)²(η − x)², a tangent root at a
  BorderedBlock blk;
  blk.a = 1.0;
  blk.b = 0.0;
  blk.c = {0.0, 0.0};
  blk.d = {0.0, 0.0};
  blk.eta = 2.0;
  const auto roots = block3_quartic_roots(blk);
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_NEAR(roots[0], 1.0, 1e-9);
  EXPECT_NEAR(roots[1], 2.0, 1e-9);
}

// Replacing the trailing block by η·I with η ≥ λ_max (resp. ≤ λ_min) majorizes (minorizes) R.
TEST(GeneralizedDembo, ExtremesBracketGramSpectrum) {
  for (std::uint64_t p : {7, 19, 43, 103}) {
    const PaleyPrime prime(p);
    for (std::uint64_t t = 0; t < 20; ++t) {
      const std::size_t k = std::min<std::size_t>(4 + t % 10, p);
      const auto g = gram_analytic(prime, SupportSet::ordered(prime, random_subset(p, k, trial_seed(p, t))));
      ComplexMatrix q(k - 2, k - 2);
      for (std::size_t i = 2; i < k; ++i)
        for (std::size_t j = 2; j < k; ++j) q(i - 2, j - 2) = g(i, j);
      const auto qev = oracle::eigenvalues(q);
      const auto gev = oracle::eigenvalues(g.entries());
      const auto eb = generalized_dembo_extremes(bordered_from_gram(g, qev.back()),
                                                 bordered_from_gram(g, qev.front()));
      EXPECT_GE(eb.upper, gev.back() - 1e-9);
      EXPECT_LE(eb.lower, gev.front() + 1e-9);
    }
  }
}

TEST(GeneralizedDembo, RejectsInvertedEtas) {
  BorderedBlock up, low;
  up.c = low.c = {0.0, 0.0};
  up.d = low.d = {0.0, 0.0};
  up.eta = 1.0;
  low.eta = 2.0;
  EXPECT_THROW(generalized_dembo_extremes(up, low), Error);
}

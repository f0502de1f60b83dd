#include <gtest/gtest.h>

#include <algorithm>
#include <cstdint>
#include <limits>

#include "oracle.hpp"
#include "paley/numtheory.hpp"

using namespace paley;

TEST(Primality, AgreesWithTrialDivisionBelow20000) {
  for (std::uint64_t n = 0; n < 20000; ++n) ASSERT_EQ(is_prime(n), oracle::is_prime(n)) << n;
}

TEST(Primality, LargeKnownValues) {
  EXPECT_TRUE(is_prime((std::uint64_t{1} << 61) - 1));
  EXPECT_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
  EXPECT_FALSE(is_prime(std::uint64_t{4294967291ULL} * 4294967279ULL));
  EXPECT_TRUE(is_prime(1000000007ULL));
}

TEST(Legendre, MatchesSquaresForSmallPrimes) {
  for (std::int64_t p = 3; p < 200; ++p) {
    if (!oracle::is_prime(static_cast<std::uint64_t>(p))) continue;
    const OddPrime prime(static_cast<std::uint64_t>(p));
    const auto table = oracle::legendre_table(p);
    for (std::int64_t a = -2 * p; a <= 2 * p; ++a) {
      ASSERT_EQ(legendre(a, prime), table[static_cast<std::size_t>(((a % p) + p) % p)]) << a << " mod " << p;
    }
  }
}

TEST(Legendre, MatchesReciprocityForLargePrimes) {
  for (std::uint64_t p : {std::uint64_t{1000000007}, std::uint64_t{998244353}, (std::uint64_t{1} << 61) - 1}) {
    const OddPrime prime(p);
    for (std::uint64_t a = 1; a < 3000; a += 7) {
      ASSERT_EQ(legendre(static_cast<std::int64_t>(a), prime), oracle::jacobi(a, p)) << a;
    }
  }
}

TEST(Legendre, IsCompletelyMultiplicative) {
  const OddPrime p(103);
  for (std::int64_t a = -50; a < 150; ++a)
    for (std::int64_t b = -20; b < 120; b += 3) {
      ASSERT_EQ(legendre(a * b, p), legendre(a, p) * legendre(b, p));
    }
}

TEST(Legendre, MinusOneIsNonResidueForPaleyPrimes) {
  for (std::uint64_t p : {7, 11, 19, 23, 31, 43, 103, 1019}) {
    EXPECT_EQ(legendre(-1, OddPrime(p)), -1) << p;
  }
  EXPECT_EQ(legendre(-1, OddPrime(13)), 1);
}

TEST(Legendre, BalancedOverNonzeroResidues) {
  for (std::uint64_t p : {7, 11, 19, 43, 103}) {
    const OddPrime prime(p);
    int sum = 0;
    for (std::int64_t a = 0; a < static_cast<std::int64_t>(p); ++a) sum += legendre(a, prime);
    EXPECT_EQ(sum, 0) << p;
  }
}

TEST(LegendreTable, AgreesWithEulerCriterion) {
  for (std::uint64_t p : {3, 5, 7, 19, 103, 1009}) {
    const OddPrime prime(p);
    const LegendreTable t(prime);
    for (std::int64_t a = -3 * static_cast<std::int64_t>(p); a < 3 * static_cast<std::int64_t>(p); ++a) {
      ASSERT_EQ(t(a), legendre(a, prime));
    }
  }
}

TEST(PrimeTypes, RejectInvalidModuli) {
  auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::VerificationFailure;
  };
  EXPECT_EQ(code_of([] { PaleyPrime p(6); }), ErrorCode::NotPrime);
  EXPECT_EQ(code_of([] { PaleyPrime p(1); }), ErrorCode::NotPrime);
  EXPECT_EQ(code_of([] { PaleyPrime p(13); }), ErrorCode::WrongResidueClass);
  EXPECT_EQ(code_of([] { PaleyPrime p(3); }), ErrorCode::ParameterRange);
  EXPECT_EQ(code_of([] { OddPrime p(2); }), ErrorCode::ParameterRange);
  EXPECT_NO_THROW(OddPrime(5));
  EXPECT_NO_THROW(PaleyPrime(7));
  EXPECT_EQ(PaleyPrime(19).value(), 19u);
}

TEST(ErrorCodes, MapToDocumentedExitStatus) {
  EXPECT_EQ(Error(ErrorCode::NotPrime, "").exit_code(), 2);
  EXPECT_EQ(Error(ErrorCode::WrongResidueClass, "").exit_code(), 3);
  EXPECT_EQ(Error(ErrorCode::ParameterRange, "").exit_code(), 4);
  EXPECT_EQ(Error(ErrorCode::MalformedInput, "").exit_code(), 5);
  EXPECT_EQ(Error(ErrorCode::DuplicateSupport, "").exit_code(), 6);
  EXPECT_EQ(Error(ErrorCode::VerificationFailure, "").exit_code(), 7);
  EXPECT_EQ(Error(ErrorCode::IndexOutOfRange, "").exit_code(), 4);
  EXPECT_EQ(Error(ErrorCode::CombinatorialGuard, "").exit_code(), 4);
}

TEST(RowIndexSet, ZeroThenQuadraticResidues) {
  EXPECT_EQ(row_index_set(PaleyPrime(7)), (std::vector<std::int64_t>{0, 1, 2, 4}));
  for (std::uint64_t p : {11, 19, 43, 103}) {
    const auto rows = row_index_set(PaleyPrime(p));
    ASSERT_EQ(rows.size(), (p + 1) / 2);
    EXPECT_EQ(rows.front(), 0);
    EXPECT_TRUE(std::is_sorted(rows.begin(), rows.end()));
    const auto table = oracle::legendre_table(static_cast<std::int64_t>(p));
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(table[static_cast<std::size_t>(rows[i])], 1);
  }
}

TEST(ReduceMod, HandlesNegatives) {
  EXPECT_EQ(reduce_mod(-1, 7), 6u);
  EXPECT_EQ(reduce_mod(-14, 7), 0u);
  EXPECT_EQ(reduce_mod(19, 19), 0u);
  EXPECT_EQ(reduce_mod(std::numeric_limits<std::int64_t>::min(), 7),
            static_cast<std::uint64_t>(((std::numeric_limits<std::int64_t>::min() % 7) + 7) % 7));
}

// Copyright 2026 The mcl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mcl/sieve.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"

namespace mcl {
namespace {

TEST(FactorSieve, SmallRange) {
  const auto s = build_factor_sieve(2, 12);
  const std::vector<u64> want = {2, 3, 2, 5, 2, 7, 2, 3, 2, 11, 2};
  for (u64 n = 2; n <= 12; ++n) EXPECT_EQ(s.spf(n), want[n - 2]) << n;
}

TEST(FactorSieve, UnitIsSentinel) {
  const auto s = build_factor_sieve(1, 1);
  EXPECT_EQ(s.spf(1), 1u);
  EXPECT_FALSE(s.is_prime(1));
}

TEST(FactorSieve, OffsetSegmentMatchesTrialDivision) {
  const u64 lo = 1'000'000;
  const auto s = build_factor_sieve(lo, lo + 10);
  EXPECT_EQ(s.spf(lo), 2u);
  // 1000003 is prime; 1000006 = 2 * 7 * 71429.
  EXPECT_EQ(s.spf(lo + 3), lo + 3);
  EXPECT_TRUE(s.is_prime(lo + 3));
  for (u64 n = lo; n <= lo + 10; ++n)
    EXPECT_EQ(s.spf(n), testing::trial_factor(n).front().first) << n;
}

TEST(FactorSieve, Invariants) {
  const auto s = build_factor_sieve(1, 20'000);
  for (u64 n = 2; n <= 20'000; ++n) {
    const u64 p = s.spf(n);
    ASSERT_TRUE(testing::trial_is_prime(p));
    ASSERT_EQ(n % p, 0u);
    ASSERT_EQ(p == n, testing::trial_is_prime(n));
    for (u64 d = 2; d < p && d * d <= n; ++d) ASSERT_NE(n % d, 0u);
  }
}

TEST(FactorSieve, Errors) {
  EXPECT_THROW(build_factor_sieve(0, 10), DomainError);
  EXPECT_THROW(build_factor_sieve(10, 5), PreconditionError);
  SieveLimits tight;
  tight.max_entries = 100;
  EXPECT_THROW(build_factor_sieve(1, 1000, tight), CapacityError);
  EXPECT_THROW(build_factor_sieve(1, 20'000'000'000ULL), CapacityError);
  const auto s = build_factor_sieve(10, 20);
  EXPECT_THROW(s.spf(9), DomainError);
  EXPECT_THROW(factorize(21, s), DomainError);
}

TEST(Factorize, Examples) {
  const auto s = build_factor_sieve(1, 100);
  EXPECT_EQ(factorize(60, s), (std::vector<PrimePower>{{2, 2}, {3, 1}, {5, 1}}));
  EXPECT_TRUE(factorize(1, s).empty());
  EXPECT_EQ(factorize(97, s), (std::vector<PrimePower>{{97, 1}}));
}

TEST(Factorize, ReconstructsRandomLargeN) {
  // Segment near 10^8 so cofactors drop below lo and exercise trial division.
  const u64 lo = 99'000'000, hi = 100'000'000;
  const auto s = build_factor_sieve(lo, hi);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<u64> pick(lo, hi);
  for (int i = 0; i < 10'000; ++i) {
    const u64 n = pick(rng);
    const auto f = factorize(n, s);
    u64 prod = 1, prev = 1;
    for (const auto& [p, e] : f) {
      ASSERT_GT(p, prev);
      ASSERT_TRUE(testing::trial_is_prime(p)) << p;
      prev = p;
      for (unsigned k = 0; k < e; ++k) prod *= p;
    }
    ASSERT_EQ(prod, n);
  }
}

TEST(Liouville, Examples) {
  const auto b = liouville_block(1, 12);
  EXPECT_EQ(b.at(1), 1);
  EXPECT_EQ(b.at(12), -1);
  // lambda(1..10) = + - - + - + - - + +
  const std::vector<int> want = {1, -1, -1, 1, -1, 1, -1, -1, 1, 1};
  for (u64 n = 1; n <= 10; ++n) EXPECT_EQ(b.at(n), want[n - 1]);
}

TEST(Liouville, MatchesTrialDivisionOracle) {
  const u64 N = 1'000'000;
  const auto b = liouville_block(1, N);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<u64> pick(1, N);
  for (int i = 0; i < 10'000; ++i) {
    const u64 n = pick(rng);
    ASSERT_EQ(b.at(n), testing::trial_liouville(n)) << n;
  }
  long long full = 0, oracle = 0;
  for (u64 n = 1; n <= 100'000; ++n) {
    full += b.at(n);
    oracle += testing::trial_liouville(n);
  }
  EXPECT_EQ(full, oracle);
}

TEST(Liouville, CompleteMultiplicativity) {
  const u64 N = 1'000'000;
  const auto b = liouville_block(1, N);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<u64> pick(1, 1000);
  for (int i = 0; i < 10'000; ++i) {
    const u64 m = pick(rng), n = pick(rng);
    ASSERT_EQ(b.at(m * n), b.at(m) * b.at(n)) << m << " " << n;
  }
}

TEST(Liouville, SegmentationIsTransparent) {
  const u64 N = 300'000;
  const auto whole = liouville_block(1, N);
  SieveLimits small;
  small.segment = 4096 + 17;
  const auto streamed = liouville_block(1, N, small);
  EXPECT_EQ(whole.values, streamed.values);
  // Concatenating blocks over a partition reproduces the single block.
  std::vector<std::int8_t> cat;
  const std::vector<u64> cuts = {1, 2, 1000, 65'537, 200'000, N + 1};
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const auto part = liouville_block(cuts[i], cuts[i + 1] - 1);
    cat.insert(cat.end(), part.values.begin(), part.values.end());
  }
  EXPECT_EQ(cat, whole.values);
}

TEST(Moebius, Examples) {
  const auto b = moebius_block(1, 30);
  EXPECT_EQ(b.at(1), 1);
  EXPECT_EQ(b.at(4), 0);
  EXPECT_EQ(b.at(6), 1);
  EXPECT_EQ(b.at(30), -1);
}

TEST(Moebius, MatchesOracleAndLiouville) {
  const u64 N = 100'000;
  const auto mu = moebius_block(1, N);
  const auto lam = liouville_block(1, N);
  u64 squarefree = 0;
  for (u64 n = 1; n <= N; ++n) {
    ASSERT_EQ(mu.at(n), testing::trial_moebius(n)) << n;
    // lambda(n) mu(n)^2 = mu(n) on squarefree n.
    ASSERT_EQ(lam.at(n) * mu.at(n) * mu.at(n), mu.at(n));
    squarefree += mu.at(n) != 0;
  }
  EXPECT_EQ(squarefree, 60'794u);  // brute count of squarefree n <= 10^5
}

TEST(Moebius, SquarefreeDensity) {
  const u64 N = 1'000'000;
  const auto mu = moebius_block(1, N);
  u64 count = 0;
  for (auto v : mu.values) count += v != 0;
  const double want = 6.0 / (std::numbers::pi * std::numbers::pi) * static_cast<double>(N);
  EXPECT_NEAR(static_cast<double>(count) / want, 1.0, 0.002);
}

TEST(Primes, Examples) {
  EXPECT_EQ(primes_in(10, 50),
            (std::vector<u64>{11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}));
  EXPECT_TRUE(primes_in(1, 1).empty());
}

TEST(Primes, PiOfTenMillionMatchesBitsetOracle) {
  const u64 N = 10'000'000;
  const auto oracle = testing::bitset_sieve(N);
  u64 want = 0;
  for (u64 n = 0; n <= N; ++n) want += oracle[n];
  SieveLimits l;
  l.segment = 1 << 20;
  EXPECT_EQ(primes_in(1, N, l).size(), want);
  EXPECT_EQ(want, 664'579u);
}

TEST(PrimeTable, CountsAndWeights) {
  const auto t = PrimeTable::upto(100);
  EXPECT_EQ(t.size(), 25u);
  EXPECT_EQ(t.count_upto(10), 4u);
  EXPECT_DOUBLE_EQ(t.inv_p[0], 0.5);
}

}  // namespace
}  // namespace mcl

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

#include "mcl/characters.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <set>

namespace mcl {
namespace {

TEST(CharacterGroup, TrivialModulus) {
  const auto g = character_group(1);
  ASSERT_EQ(g.size(), 1u);
  for (u64 n = 0; n < 50; ++n) EXPECT_EQ(g[0](n), cplx(1.0));
}

TEST(CharacterGroup, ModFour) {
  const auto g = character_group(4);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_TRUE(g[0].is_principal());
  EXPECT_EQ(g[1](3), cplx(-1.0));
  EXPECT_EQ(g[1](1), cplx(1.0));
  EXPECT_EQ(g[1](2), cplx(0.0));
  EXPECT_TRUE(g[1].is_real());
}

TEST(CharacterGroup, ZeroModulusIsDomainError) {
  EXPECT_THROW(character_group(0), DomainError);
}

// Exhaustive structural checks in exact exponent arithmetic.
void check_group(u64 q) {
  const auto g = character_group(q);
  ASSERT_EQ(g.size(), euler_phi(q)) << q;
  std::set<std::vector<i64>> tables;
  bool principal = false;
  for (const auto& chi : g) {
    const auto t = chi.exponent_table();
    tables.insert(t);
    principal |= chi.is_principal();
    const auto L = static_cast<i64>(chi.order());
    ASSERT_EQ(chi.exponent(1 % q), 0);
    for (u64 a = 0; a < q; ++a) {
      ASSERT_EQ(t[a] < 0, q > 1 && std::gcd(a, q) != 1) << q << " " << a;
      if (t[a] < 0) continue;
      for (u64 b = 0; b < q; ++b) {
        if (t[b] < 0) continue;
        ASSERT_EQ(t[a * b % q], (t[a] + t[b]) % L) << "q=" << q << " a=" << a << " b=" << b;
      }
    }
  }
  EXPECT_TRUE(principal);
  EXPECT_EQ(tables.size(), g.size()) << "tables not pairwise distinct for q=" << q;
}

TEST(CharacterGroup, ModTwelveExhaustive) {
  ASSERT_EQ(character_group(12).size(), 4u);
  check_group(12);
}

TEST(CharacterGroup, AllSmallModuli) {
  for (u64 q = 1; q <= 130; ++q) check_group(q);
  for (u64 q : {256u, 243u, 1000u, 1024u}) check_group(q);
}

TEST(CharacterGroup, ComplexValuesAreRootsOfUnity) {
  const auto g = character_group(5);
  int order4 = 0;
  for (const auto& chi : g) {
    EXPECT_NEAR(std::abs(chi(2)), 1.0, 1e-15);
    order4 += !chi.is_real();
  }
  EXPECT_EQ(order4, 2);
}

TEST(Orthogonality, Examples) {
  EXPECT_EQ(verify_orthogonality(1, 0), 0.0);
  EXPECT_LE(verify_orthogonality(4, 3), 1e-12);
  EXPECT_THROW(verify_orthogonality(4, 2), PreconditionError);
}

TEST(Orthogonality, AllModuliUpToFifty) {
  double worst = 0;
  for (u64 q = 1; q <= 50; ++q)
    for (u64 b = 0; b < q; ++b)
      if (std::gcd(b, q) == 1 || q == 1) worst = std::max(worst, verify_orthogonality(q, b));
  EXPECT_LE(worst, 1e-9);
}

}  // namespace
}  // namespace mcl

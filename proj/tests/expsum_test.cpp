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

#include "mcl/expsum.hpp"

#include <gtest/gtest.h>

#include <map>
#include <numbers>
#include <numeric>
#include <random>

#include "oracles.hpp"

namespace mcl {
namespace {

using testing::trial_is_prime;
using testing::trial_liouville;

TEST(ShortSum, CountsIntegers) {
  const auto one = [](i64) { return cplx{1.0}; };
  EXPECT_NEAR(std::abs(short_sum(one, 0.5, 2.4, 0.0) - cplx(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(short_sum(one, 0.0, 4.0, 0.5) - cplx(1.0)), 0.0, 1e-14);
  // MultFn sums start at n = 1.
  EXPECT_NEAR(std::abs(short_sum(fns::one(), 0.0, 4.0, 0.5) - cplx(0.0)), 0.0, 1e-14);
}

TEST(ShortSum, Indicator) {
  const i64 n0 = 37;
  const auto delta = [&](i64 n) { return cplx{n == n0 ? 1.0 : 0.0}; };
  const double a = 0.123;
  EXPECT_NEAR(std::abs(short_sum(delta, 30, 10, a) - e(a * n0)), 0.0, 1e-15);
  EXPECT_EQ(short_sum(delta, 38, 10, a), cplx(0.0));
}

TEST(ShortSum, LiouvilleAgainstOracle) {
  const double a = 0.3183;
  cplx want = 0;
  for (u64 n = 1000; n <= 1100; ++n) want += static_cast<double>(trial_liouville(n)) * e(a * n);
  EXPECT_LE(std::abs(short_sum(fns::liouville(), 999.5, 100.7, a) - want), 1e-12);
}

TEST(Sweep, IndicatorOverTheLine) {
  const double H = 3.7;
  std::vector<cplx> g(10, 0.0);
  g[4] = e(0.3);
  EXPECT_NEAR(window_integral(1, g, H, -100, 100), H, 1e-14);
  EXPECT_NEAR(window_integral(1, g, H, -100, 100, 2), H, 1e-14);
}

// Midpoint Riemann sum of |S(x)| over [0, X] with S from prefix sums.
double riemann(const std::vector<cplx>& g, u64 X, double H, double step) {
  std::vector<cplx> pre(g.size() + 1, 0.0);  // pre[m] = sum_{n <= m} g(n), g[n-1] = g(n)
  for (std::size_t i = 0; i < g.size(); ++i) pre[i + 1] = pre[i] + g[i];
  const auto steps = static_cast<u64>(std::llround(static_cast<double>(X) / step));
  double s = 0;
  const auto top = static_cast<i64>(g.size());
  for (u64 k = 0; k < steps; ++k) {
    const double x = (static_cast<double>(k) + 0.5) * step;
    const i64 lo = std::max<i64>(1, static_cast<i64>(std::ceil(x)));
    const i64 hi = std::min<i64>(top, static_cast<i64>(std::floor(x + H)));
    if (hi >= lo) s += std::abs(pre[static_cast<std::size_t>(hi)] - pre[static_cast<std::size_t>(lo - 1)]);
  }
  return s * step;
}

std::vector<cplx> phased(const MultFn& f, u64 top, double alpha) {
  auto v = f.values(1, top);
  for (u64 n = 1; n <= top; ++n) v[n - 1] *= e(alpha * static_cast<double>(n));
  return v;
}

TEST(Sweep, OneAgainstRiemann) {
  const u64 X = 100;
  const double H = 10;
  const double got = sweep_integral(fns::one(), X, H, 0.0);
  const double want = riemann(phased(fns::one(), X + 10, 0.0), X, H, 1e-4);
  EXPECT_NEAR(got, want, 1e-3 * want);
  // Windows [x, x + 10] hold 10 integers between breakpoints, 11 at them:
  // near x = 0 the window misses n = 0, so the value is 10 X.
  EXPECT_NEAR(got, 1000.0, 1e-9);
}

TEST(Sweep, LiouvilleHalfAgainstRiemann) {
  const u64 X = 10000;
  const double H = 50;
  const double got = sweep_integral(fns::liouville(), X, H, 0.5);
  const double want = riemann(phased(fns::liouville(), X + 50, 0.5), X, H, 1e-4);
  EXPECT_NEAR(got, want, 1e-3 * want);
}

TEST(Sweep, RandomInstancesAgainstRiemann) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ua(0, 1), uh(1, 100);
  const u64 X = 2000;
  for (int i = 0; i < 8; ++i) {
    const double a = ua(rng), H = uh(rng);
    const auto& f = i % 2 ? fns::liouville() : fns::one();
    const double got = sweep_integral(f, X, H, a);
    const double want = riemann(phased(f, X + static_cast<u64>(H), a), X, H, 1e-4);
    EXPECT_NEAR(got, want, 1e-3 * want) << "alpha=" << a << " H=" << H;
  }
}

TEST(Sweep, PowerTwoIsWindowEnergy) {
  const u64 X = 500;
  const double H = 7.5;
  const double a = 0.77;
  const auto g = phased(fns::liouville(), X + 7, a);
  // Between breakpoints the integrand is constant; integrate on a fine
  // partition that contains every breakpoint.
  std::vector<double> cuts{0.0, static_cast<double>(X)};
  for (u64 n = 1; n <= X + 7; ++n) {
    cuts.push_back(static_cast<double>(n));
    cuts.push_back(static_cast<double>(n) - H);
  }
  std::sort(cuts.begin(), cuts.end());
  double want = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a0 = std::max(cuts[i], 0.0), a1 = std::min(cuts[i + 1], static_cast<double>(X));
    if (a1 <= a0) continue;
    const double mid = (a0 + a1) / 2;
    cplx s = 0;
    for (u64 n = 1; n <= X + 7; ++n)
      if (static_cast<double>(n) >= mid && static_cast<double>(n) <= mid + H) s += g[n - 1];
    want += std::norm(s) * (a1 - a0);
  }
  EXPECT_NEAR(sweep_integral(fns::liouville(), X, H, a, nullptr, 2), want, 1e-9 * want);
}

TEST(Sweep, RestrictionZeroesOutsideS) {
  const u64 X = 3000;
  const auto all = synthetic_system({}, 2 * X);
  const auto sys = synthetic_system({{5, 30}}, 2 * X);
  EXPECT_NEAR(sweep_integral(fns::one(), X, 20, 0.1, &all), sweep_integral(fns::one(), X, 20, 0.1),
              1e-9);
  EXPECT_LT(sweep_integral(fns::one(), X, 20, 0.0, &sys), sweep_integral(fns::one(), X, 20, 0.0));
}

TEST(DirichletApprox, Examples) {
  const auto a = dirichlet_approx(1.0 / 3, 10);
  EXPECT_EQ(a.a, 1);
  EXPECT_EQ(a.q, 3);
  EXPECT_EQ(a.err, 0.0);

  const auto b = dirichlet_approx(0.5 + 1e-9, 10);
  EXPECT_EQ(b.a, 1);
  EXPECT_EQ(b.q, 2);
  EXPECT_NEAR(b.err, 1e-9, 1e-15);

  const auto c = dirichlet_approx(std::numbers::pi, 120);
  EXPECT_EQ(c.a, 16);
  EXPECT_EQ(c.q, 113);
  EXPECT_NEAR(c.err, 2.667e-7, 1e-9);
  EXPECT_LE(c.err, 1.0 / (113.0 * 120.0));
}

TEST(DirichletApprox, ReducesModOne) {
  const auto a = dirichlet_approx(-0.25, 100);
  EXPECT_EQ(a.alpha, 0.75);
  EXPECT_EQ(a.a, 3);
  EXPECT_EQ(a.q, 4);
  const auto z = dirichlet_approx(7.0, 5);
  EXPECT_EQ(z.a, 0);
  EXPECT_EQ(z.q, 1);
  EXPECT_THROW(dirichlet_approx(0.1, 0), PreconditionError);
}

// Best approximation with denominator <= Q by exhaustive search.
std::pair<i64, i64> brute_best(double alpha, i64 Q) {
  std::pair<i64, i64> best{0, 1};
  double be = std::abs(alpha);
  for (i64 q = 1; q <= Q; ++q) {
    const auto a = static_cast<i64>(std::llround(alpha * static_cast<double>(q)));
    const double err = std::abs(alpha - static_cast<double>(a) / static_cast<double>(q));
    if (err < be) {
      be = err;
      best = {a, q};
    }
  }
  return best;
}

TEST(DirichletApprox, RandomInvariants) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  int fails = 0;
  for (int i = 0; i < 10000; ++i) {
    const double alpha = u(rng);
    for (u64 Q : {10u, 100u, 10000u}) {
      const auto r = dirichlet_approx(alpha, Q);
      const bool ok = std::gcd(r.a, r.q) == 1 && r.q >= 1 && static_cast<u64>(r.q) <= Q &&
                      r.err * static_cast<double>(r.q) * static_cast<double>(Q) <= 1.0 &&
                      r.err * static_cast<double>(r.q) * static_cast<double>(r.q) <= 1.0;
      fails += !ok;
    }
  }
  EXPECT_EQ(fails, 0);
}

TEST(DirichletApprox, ConvergentsAreBestApproximations) {
  // A convergent a/q is the best approximation with denominator <= q.
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 300; ++i) {
    const double alpha = u(rng);
    const auto r = dirichlet_approx(alpha, 500);
    const auto [a, q] = brute_best(alpha, r.q);
    EXPECT_EQ(r.q, q) << alpha;
    EXPECT_EQ(r.a, a) << alpha;
  }
}

TEST(Arcs, Classification) {
  RationalApprox a;
  a.q = 3;
  EXPECT_EQ(classify_arc(a, 10).kind, ArcKind::major);
  a.q = 113;
  EXPECT_EQ(classify_arc(a, 10).kind, ArcKind::minor);
  a.q = 10;
  EXPECT_EQ(classify_arc(a, 10).kind, ArcKind::major);
  EXPECT_EQ(arc_qcap(100, 10), 10u);
  EXPECT_EQ(arc_qcap(5, 10), 1u);
}

TEST(SupOverAlpha, OnePeaksAtZero) {
  const auto r = sup_over_alpha(fns::one(), 1000, 20, 200);
  EXPECT_LE(std::min(r.alpha, 1 - r.alpha), 1.0 / 200);
  EXPECT_EQ(r.value, r.value_at_zero);
  EXPECT_NEAR(r.value, 20.0 * 1000, 1e-6);
  EXPECT_EQ(r.arc.kind, ArcKind::major);
}

TEST(SupOverAlpha, GridValuesMatchSweep) {
  const u64 X = 3000;
  const auto r = sup_over_alpha(fns::liouville(), X, 30, 64);
  EXPECT_NEAR(r.value, sweep_integral(fns::liouville(), X, 30, r.alpha), 1e-9 * r.value);
  EXPECT_NEAR(r.value_at_zero, sweep_integral(fns::liouville(), X, 30, 0.0), 1e-9);
  EXPECT_GE(r.refined_value, r.value - 1e-9 * r.value);  // the finer grid contains the coarse one
}

TEST(Ramare, Examples) {
  const u64 X = 1000;
  const auto sys = synthetic_system({{10, 50}}, X);
  const auto sieve = build_factor_sieve(1, X);
  const auto t22 = ramare_decomposition(22, sys, sieve);
  EXPECT_EQ(t22.lhs, 1);
  EXPECT_EQ(t22.rhs, boost::rational<i64>(1));
  const auto t143 = ramare_decomposition(143, sys, sieve);
  EXPECT_EQ(t143.lhs, 1);
  EXPECT_EQ(t143.rhs, boost::rational<i64>(1));
  const auto t7 = ramare_decomposition(7, sys, sieve);
  EXPECT_EQ(t7.lhs, 0);
  EXPECT_EQ(t7.rhs, boost::rational<i64>(0));
}

TEST(Ramare, RepeatedPrimeConventions) {
  const u64 X = 2000;
  const auto sys = synthetic_system({{10, 50}}, X);
  const auto sieve = build_factor_sieve(1, X);
  EXPECT_TRUE(ramare_decomposition(121, sys, sieve).equal);
  const auto lit = ramare_decomposition(121, sys, sieve, RamareConvention::literal);
  EXPECT_EQ(lit.rhs, boost::rational<i64>(1, 2));
  EXPECT_FALSE(lit.equal);
  // 11^2 * 13: terms 1/(1+2) + 1/(1+1) under the literal count.
  EXPECT_EQ(ramare_decomposition(1573, sys, sieve, RamareConvention::literal).rhs,
            boost::rational<i64>(5, 6));
}

TEST(Ramare, ExhaustiveScan) {
  const u64 N = 100000;
  const auto sys = synthetic_system({{10, 1000}}, N);
  const auto exact = ramare_scan(sys, N);
  EXPECT_EQ(exact.checked, N);
  EXPECT_EQ(exact.mismatches, 0u);
  // The literal count fails exactly on n with p^2 | n for some p in [10, 1000].
  u64 squares = 0;
  for (u64 n = 1; n <= N; ++n)
    for (const auto& [p, e] : testing::trial_factor(n))
      if (p >= 10 && p <= 1000 && e >= 2) {
        ++squares;
        break;
      }
  EXPECT_EQ(ramare_scan(sys, N, RamareConvention::literal).mismatches, squares);
}

TEST(Ramare, LadderSystem) {
  // Two intervals: S requires both, S' only the second.
  const u64 X = 50000;
  const auto sys = synthetic_system({{3, 7}, {11, 40}}, X);
  EXPECT_EQ(ramare_scan(sys, X).mismatches, 0u);
}

TEST(Vinogradov, Examples) {
  EXPECT_NEAR(vinogradov_sum(4, 10, 0.5).sum, 24.0, 1e-12);
  EXPECT_NEAR(vinogradov_sum(4, 10, 1, 2).sum, 24.0, 1e-12);
  const double a = std::numbers::sqrt2 - 1;
  EXPECT_NEAR(vinogradov_sum(1, 1000, a).sum, 1.0 / std::min(a, 1 - a), 1e-12);
  EXPECT_EQ(vinogradov_sum(1, 2, a).sum, 2.0);
}

TEST(Vinogradov, RationalAgreesWithDouble) {
  const auto x = vinogradov_sum(1000, 50, 3, 7);
  const auto y = vinogradov_sum(1000, 50, 3.0 / 7);
  EXPECT_NEAR(x.sum, y.sum, 1e-9 * x.sum);
  EXPECT_EQ(x.approx.q, 7);
  EXPECT_EQ(y.approx.q, 7);
  EXPECT_EQ(x.paper_bound, y.paper_bound);
}

TEST(Vinogradov, RandomRatioCeiling) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0, 1);
  double worst = 0;
  for (int i = 0; i < 200; ++i) worst = std::max(worst, vinogradov_sum(10000, 1000, u(rng)).ratio);
  std::printf("max ratio over 200 alphas: %.4f\n", worst);
  EXPECT_LE(worst, 10.0);
}

std::map<i64, u64> brute_reps(u64 P) {
  std::vector<i64> ps;
  for (u64 n = 2; n <= 2 * P; ++n)
    if (trial_is_prime(n)) ps.push_back(static_cast<i64>(n));
  std::map<i64, u64> r;
  for (i64 a : ps)
    for (i64 b : ps)
      for (i64 c : ps)
        for (i64 d : ps) ++r[a + b - c - d];
  return r;
}

TEST(Representations, HistogramEqualsBruteForce) {
  for (u64 P = 1; P <= 20; ++P) {
    const auto rc = representation_counts(P);
    const auto br = brute_reps(P);
    u64 nonzero = 0;
    for (std::size_t i = 0; i < rc.counts.size(); ++i) {
      const i64 n = static_cast<i64>(i) - rc.offset;
      const auto it = br.find(n);
      ASSERT_EQ(rc.counts[i], it == br.end() ? 0 : it->second) << "P=" << P << " n=" << n;
      nonzero += rc.counts[i] != 0;
    }
    EXPECT_EQ(nonzero, br.size());
  }
}

TEST(Representations, ConservationAndSymmetry) {
  for (u64 P : {5u, 50u, 300u}) {
    const auto rc = representation_counts(P);
    const u64 pi = rc.prime_count;
    EXPECT_EQ(rc.total, pi * pi * pi * pi);
    for (i64 n = 0; n <= rc.offset; ++n) EXPECT_EQ(rc.at(n), rc.at(-n));
  }
  EXPECT_THROW(representation_counts(2001), PreconditionError);
}

TEST(Flask, AlphaZero) {
  const u64 P = 30;
  const auto rc = representation_counts(P);
  const auto f = min_sum_flask(P, 100, 0.0);
  EXPECT_NEAR(f.value, static_cast<double>(rc.total) * 100 / P, 1e-9 * f.value);
}

TEST(Flask, HistogramEqualsBruteQuadruples) {
  const u64 P = 5;
  const double H = 100, a = 1.0 / 3;
  const std::vector<i64> ps{2, 3, 5, 7};
  double want = 0;
  for (i64 p1 : ps)
    for (i64 p2 : ps)
      for (i64 p3 : ps)
        for (i64 p4 : ps) {
          const i64 n = p1 + p2 - p3 - p4;
          const i64 r = ((n % 3) + 3) % 3;  // ||n / 3|| exactly
          want += r == 0 ? H / P : std::min(H / P, 3.0 / static_cast<double>(std::min(r, 3 - r)));
        }
  EXPECT_NEAR(min_sum_flask(P, H, a).value, want, 1e-9 * want);
}

TEST(Flask, ArcLabels) {
  const auto major = min_sum_flask(200, 1e4, 1.0 / 3);
  const auto minor = min_sum_flask(200, 1e4, 37.0 / 101);
  EXPECT_EQ(major.arc.kind, ArcKind::major);
  EXPECT_EQ(minor.arc.kind, ArcKind::minor);
  EXPECT_EQ(minor.arc.approx.q, 101);
  std::printf("flask P=200 H=1e4: major %.6g minor %.6g\n", major.value, minor.value);
}

}  // namespace
}  // namespace mcl

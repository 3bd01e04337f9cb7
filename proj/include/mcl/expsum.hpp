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

// Short exponential sums and their x-integrals, rational approximation and
// arc labels, Ramare's identity, and the kernels of the minor-arc bound.

#pragma once

#include <boost/rational.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "mcl/characters.hpp"
#include "mcl/errors.hpp"
#include "mcl/multfn.hpp"
#include "mcl/numeric.hpp"
#include "mcl/sieve.hpp"
#include "mcl/sweep.hpp"
#include "mcl/typical.hpp"

namespace mcl {

/// sum over integers n in [x, x + H] of g(n) e(alpha n) for an arbitrary g.
inline cplx short_sum(const std::function<cplx(i64)>& g, double x, double H, double alpha) {
  detail::require(H >= 0, "short_sum requires H >= 0");
  CompensatedComplexSum s;
  const auto lo = static_cast<i64>(std::ceil(x)), hi = static_cast<i64>(std::floor(x + H));
  for (i64 n = lo; n <= hi; ++n) s += g(n) * e(alpha * static_cast<double>(n));
  return s.value();
}

/// sum over integers n in [x, x + H] of f(n) e(alpha n); f(0) is taken as 0.
inline cplx short_sum(const MultFn& f, double x, double H, double alpha,
                      const SieveLimits& limits = {}) {
  detail::require(x >= 0, "short_sum requires x >= 0");
  detail::require(H >= 0, "short_sum requires H >= 0");
  const auto lo = static_cast<u64>(std::max(1.0, std::ceil(x)));
  const auto hi = static_cast<u64>(std::floor(x + H));
  if (hi < lo) return 0.0;
  const auto v = f.values(lo, hi, limits);
  CompensatedComplexSum s;
  for (u64 n = lo; n <= hi; ++n) s += v[n - lo] * e(alpha * static_cast<double>(n));
  return s.value();
}

/// int_{x_lo}^{x_hi} |S(x)|^power dx for S(x) = sum_{x <= n <= x+H} g(n) with
/// g given on n_lo, n_lo + 1, ... and zero elsewhere.
inline double window_integral(i64 n_lo, const std::vector<cplx>& g, double H, double x_lo,
                              double x_hi, double power = 1) {
  CompensatedSum acc;
  window_sweep(n_lo, g.data(), g.size(), H, x_lo, x_hi, [&](cplx s, double len) {
    const double a = std::abs(s);
    acc += (power == 1 ? a : power == 2 ? a * a : std::pow(a, power)) * len;
  });
  return acc.value();
}

/// int_0^X |sum_{x <= n <= x+H} 1_S(n) f(n) e(alpha n)|^power dx, exact up to
/// rounding: the integrand only changes at x = n and x = n - H.
inline double sweep_integral(const MultFn& f, u64 X, double H, double alpha,
                             const IntervalSystem* restrict = nullptr, double power = 1,
                             const SieveLimits& limits = {}) {
  detail::require(X >= 1, "sweep_integral requires X >= 1");
  detail::require(H >= 0, "sweep_integral requires H >= 0");
  detail::require(power > 0, "sweep_integral requires a positive power");
  const u64 top = X + static_cast<u64>(std::floor(H));
  auto g = f.values(1, top, limits);
  if (restrict) {
    detail::require(top <= restrict->X(), "interval system must cover [1, X + H]");
    const auto in_s = s_indicator(*restrict, 1, top, limits);
    for (std::size_t i = 0; i < g.size(); ++i)
      if (!in_s[i]) g[i] = 0;
  }
  for (u64 n = 1; n <= top; ++n) g[n - 1] *= e(alpha * static_cast<double>(n));
  return window_integral(1, g, H, 0.0, static_cast<double>(X), power);
}

struct RationalApprox {
  double alpha = 0;  // reduced to [0, 1)
  i64 a = 0;
  i64 q = 1;
  double err = 0;  // |alpha - a/q|
  u64 Qcap = 1;
};

/// a/q with 1 <= q <= Qcap and |alpha - a/q| <= 1/(q Qcap) from the continued
/// fraction of alpha. The double is expanded exactly as M / 2^k, so the
/// convergents are those of the stored value. The last convergent with
/// q <= Qcap is returned unless the largest admissible intermediate fraction
/// is strictly closer and still meets the Dirichlet bound.
inline RationalApprox dirichlet_approx(double alpha, u64 Qcap) {
  detail::require(Qcap >= 1, "dirichlet_approx requires Qcap >= 1");
  detail::require(std::isfinite(alpha), "alpha must be finite");
  RationalApprox r;
  r.Qcap = Qcap;
  r.alpha = alpha - std::floor(alpha);
  if (r.alpha >= 1.0) r.alpha = 0.0;  // alpha just below an integer rounds up
  auto err_of = [&](i64 a, i64 q) {
    return std::abs(r.alpha - static_cast<double>(a) / static_cast<double>(q));
  };
  if (r.alpha < 0x1p-64) {
    // a1 = floor(1/alpha) exceeds any u64 Qcap: only 0/1 and 1/j remain.
    r.err = r.alpha;
    return r;
  }
  using u128 = unsigned __int128;
  int exp2 = 0;
  const double mant = std::frexp(r.alpha, &exp2);  // alpha = mant 2^exp2, mant in [1/2, 1)
  u128 num = static_cast<u128>(std::ldexp(mant, 53));
  u128 den = u128{1} << (53 - exp2);
  while ((num & 1) == 0 && (den & 1) == 0) {
    num >>= 1;
    den >>= 1;
  }
  const u128 cap = Qcap;
  u128 p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  bool semi = false;
  u128 sp = 0, sq = 0;
  for (;;) {
    const u128 a = num / den;
    const u128 p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > cap) {
      const u128 j = (cap - q0) / q1;
      if (j >= 1) {
        semi = true;
        sp = j * p1 + p0;
        sq = j * q1 + q0;
      }
      break;
    }
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const u128 rem = num - a * den;
    if (rem == 0) break;
    num = den;
    den = rem;
  }
  r.a = static_cast<i64>(p1);
  r.q = static_cast<i64>(q1);
  r.err = err_of(r.a, r.q);
  if (semi) {
    const auto a = static_cast<i64>(sp), q = static_cast<i64>(sq);
    const double e2 = err_of(a, q);
    if (e2 < r.err && e2 * static_cast<double>(q) * static_cast<double>(Qcap) <= 1.0) {
      r.a = a;
      r.q = q;
      r.err = e2;
    }
  }
  return r;
}

enum class ArcKind { major, minor };

inline const char* to_string(ArcKind k) { return k == ArcKind::major ? "major" : "minor"; }

struct ArcLabel {
  ArcKind kind = ArcKind::major;
  double W = 0;
  RationalApprox approx;
};

/// Major iff q <= W.
inline ArcLabel classify_arc(const RationalApprox& approx, double W) {
  return {static_cast<double>(approx.q) <= W ? ArcKind::major : ArcKind::minor, W, approx};
}

/// Qcap = max(1, floor(H / W)), the denominator range for frequency H windows.
inline u64 arc_qcap(double H, double W) {
  detail::require(W > 0, "W must be positive");
  return std::max<u64>(1, static_cast<u64>(std::floor(H / W)));
}

struct SupResult {
  double alpha = 0;
  double value = 0;  // lower bound on the sup over alpha
  std::size_t grid_size = 0;
  double value_at_zero = 0;
  double refined_value = 0;      // same scan on a grid twice as fine
  double refinement_change = 0;  // |refined - value| / value
  ArcLabel arc;
};

/// Maximum of sweep_integral over alpha = j / grid_size, j = 0 .. grid_size - 1.
/// Phases e(j n / grid) come from an exact residue table.
inline SupResult sup_over_alpha(const MultFn& f, u64 X, double H, std::size_t grid_size,
                                double W = 10, const IntervalSystem* restrict = nullptr,
                                const SieveLimits& limits = {}) {
  detail::require(grid_size >= 1, "grid_size must be positive");
  detail::require(X >= 1 && H >= 0, "sup_over_alpha requires X >= 1 and H >= 0");
  const u64 top = X + static_cast<u64>(std::floor(H));
  auto base = f.values(1, top, limits);
  if (restrict) {
    detail::require(top <= restrict->X(), "interval system must cover [1, X + H]");
    const auto in_s = s_indicator(*restrict, 1, top, limits);
    for (std::size_t i = 0; i < base.size(); ++i)
      if (!in_s[i]) base[i] = 0;
  }
  auto scan = [&](std::size_t grid, double& best_alpha, double& at_zero) {
    std::vector<cplx> table(grid), g(base.size());
    for (std::size_t k = 0; k < grid; ++k)
      table[k] = e(static_cast<double>(k) / static_cast<double>(grid));
    double best = -1;
    for (std::size_t j = 0; j < grid; ++j) {
      u64 idx = 0;  // j n mod grid, updated incrementally
      for (u64 n = 1; n <= top; ++n) {
        idx += j;
        if (idx >= grid) idx %= grid;
        g[n - 1] = base[n - 1] * table[idx];
      }
      const double v = window_integral(1, g, H, 0.0, static_cast<double>(X));
      if (j == 0) at_zero = v;
      if (v > best) {
        best = v;
        best_alpha = static_cast<double>(j) / static_cast<double>(grid);
      }
    }
    return best;
  };
  SupResult r;
  r.grid_size = grid_size;
  r.value = scan(grid_size, r.alpha, r.value_at_zero);
  double a2 = 0, z2 = 0;
  r.refined_value = scan(2 * grid_size, a2, z2);
  r.refinement_change = r.value > 0 ? std::abs(r.refined_value - r.value) / r.value : 0.0;
  r.arc = classify_arc(dirichlet_approx(r.alpha, arc_qcap(H, W)), W);
  return r;
}

/// How the inner count of Ramare's identity treats the prime p being summed.
enum class RamareConvention {
  /// #{q | n/p : q in P, q != p}, i.e. omega_P(n) - 1: exact for every n.
  exclude_p,
  /// #{q | n/p : q in P} with q = p allowed: fails when p^2 | n.
  literal,
};

struct RamareTerms {
  int lhs = 0;
  boost::rational<i64> rhs{0};
  bool equal = false;
};

/// 1_S(n) against sum_{p in P, p | n} 1_{S'}(n) / (1 + #{q | n/p : q in P}),
/// where P = primes in [P_1, Q_1], in exact rational arithmetic.
inline RamareTerms ramare_decomposition(u64 n, const IntervalSystem& sys, const FactorSieve& sieve,
                                        RamareConvention conv = RamareConvention::exclude_p) {
  detail::require(n >= 1 && n <= sys.X(), "ramare_decomposition requires 1 <= n <= X");
  detail::require(sys.J() >= 1, "Ramare's identity needs a first interval");
  const auto& b1 = sys.bounds().front();
  const auto fac = factorize(n, sieve);
  std::vector<PrimePower> in_p;
  for (const auto& pp : fac)
    if (pp.p >= b1.lo && pp.p <= b1.hi) in_p.push_back(pp);
  RamareTerms t;
  t.lhs = is_member_S(n, sys, sieve) ? 1 : 0;
  if (is_member_Sprime(n, sys, sieve)) {
    for (const auto& pp : in_p) {
      // Distinct P-primes of m = n / p.
      i64 count = static_cast<i64>(in_p.size()) - 1;
      if (conv == RamareConvention::literal && pp.e >= 2) ++count;
      t.rhs += boost::rational<i64>(1, 1 + count);
    }
  }
  t.equal = t.rhs == boost::rational<i64>(t.lhs);
  return t;
}

struct RamareScan {
  u64 checked = 0;
  u64 mismatches = 0;
  u64 first_mismatch = 0;  // 0 when none
};

/// ramare_decomposition for every n in [1, N].
inline RamareScan ramare_scan(const IntervalSystem& sys, u64 N,
                              RamareConvention conv = RamareConvention::exclude_p,
                              const SieveLimits& limits = {}) {
  detail::require(N >= 1 && N <= sys.X(), "scan range must lie in [1, X]");
  RamareScan s;
  const u64 block = std::min<u64>(u64{1} << 20, limits.max_entries);
  for (u64 lo = 1; lo <= N; lo += block) {
    const u64 hi = std::min(N, lo + block - 1);
    const auto sieve = build_factor_sieve(lo, hi, limits);
    for (u64 n = lo; n <= hi; ++n) {
      ++s.checked;
      if (!ramare_decomposition(n, sys, sieve, conv).equal) {
        if (s.mismatches++ == 0) s.first_mismatch = n;
      }
    }
  }
  return s;
}

struct VinogradovSum {
  double sum = 0;
  double paper_bound = 0;  // (N/q + 1)(A + q ln q)
  double ratio = 0;
  RationalApprox approx;   // q from dirichlet_approx(alpha, N)
};

namespace detail {

inline VinogradovSum finish_vinogradov(double sum, u64 N, double A, const RationalApprox& ap) {
  VinogradovSum v;
  v.sum = sum;
  v.approx = ap;
  const double q = static_cast<double>(ap.q);
  v.paper_bound = (static_cast<double>(N) / q + 1) * (A + q * std::log(q));
  v.ratio = v.sum / v.paper_bound;
  return v;
}

}  // namespace detail

/// sum_{1 <= n <= N} min(A, 1 / ||n alpha||), with min(A, 1/0) = A.
inline VinogradovSum vinogradov_sum(u64 N, double A, double alpha) {
  detail::require(N >= 1, "vinogradov_sum requires N >= 1");
  detail::require(A > 0, "vinogradov_sum requires A > 0");
  const double a = alpha - std::floor(alpha);
  CompensatedSum s;
  for (u64 n = 1; n <= N; ++n) {
    const double x = static_cast<double>(n) * a;
    const double d = std::abs(x - std::nearbyint(x));
    s += (d * A <= 1.0) ? A : 1.0 / d;
  }
  return detail::finish_vinogradov(s.value(), N, A, dirichlet_approx(alpha, N));
}

/// Exact-denominator variant for alpha = num / den: ||n alpha|| = min(r, den - r) / den
/// with r = n num mod den.
inline VinogradovSum vinogradov_sum(u64 N, double A, i64 num, i64 den) {
  detail::require(N >= 1, "vinogradov_sum requires N >= 1");
  detail::require(A > 0, "vinogradov_sum requires A > 0");
  detail::require(den >= 1, "denominator must be positive");
  const u64 d = static_cast<u64>(den);
  const u64 a = static_cast<u64>(((num % den) + den) % den);
  CompensatedSum s;
  u64 r = 0;
  for (u64 n = 1; n <= N; ++n) {
    r = (r + a) % d;
    const u64 dist = std::min(r, d - r);
    s += (dist == 0 || static_cast<double>(d) >= A * static_cast<double>(dist))
             ? A
             : static_cast<double>(d) / static_cast<double>(dist);
  }
  const i64 g = std::gcd(a, d);
  RationalApprox ap;
  ap.alpha = static_cast<double>(a) / static_cast<double>(d);
  ap.Qcap = N;
  if (d / static_cast<u64>(g) <= N) {
    ap.a = static_cast<i64>(a) / g;
    ap.q = den / g;
    ap.err = 0;
  } else {
    ap = dirichlet_approx(ap.alpha, N);
  }
  return detail::finish_vinogradov(s.value(), N, A, ap);
}

/// r(n) = #{(p1, p2, p3, p4) : p_i <= 2P prime, p1 + p2 - p3 - p4 = n}.
struct RepresentationCounts {
  u64 P = 0;
  std::size_t prime_count = 0;  // pi(2P)
  i64 offset = 0;               // counts[n + offset] = r(n)
  std::vector<u64> counts;
  u64 total = 0;
  double max_ratio = 0;  // max_n r(n) / (P^3 / ln^4 P)

  u64 at(i64 n) const {
    const i64 i = n + offset;
    return i < 0 || i >= static_cast<i64>(counts.size()) ? 0 : counts[static_cast<std::size_t>(i)];
  }
};

/// Pair-sum histogram s(m) = #{(p1, p2) : p1 + p2 = m}, then r(n) = sum_m s(m) s(m - n).
inline RepresentationCounts representation_counts(u64 P) {
  detail::require(P >= 1 && P <= 2000, "representation_counts requires 1 <= P <= 2000");
  RepresentationCounts r;
  r.P = P;
  const auto primes = small_primes(2 * P);
  r.prime_count = primes.size();
  const std::size_t M = 4 * P + 1;  // pair sums lie in [0, 4P]
  std::vector<u64> s(M, 0);
  for (u64 a : primes)
    for (u64 b : primes) ++s[a + b];
  r.offset = static_cast<i64>(4 * P);
  r.counts.assign(2 * M - 1, 0);
  for (std::size_t m1 = 0; m1 < M; ++m1) {
    if (!s[m1]) continue;
    for (std::size_t m2 = 0; m2 < M; ++m2)
      r.counts[m1 + (M - 1) - m2] += s[m1] * s[m2];
  }
  for (u64 c : r.counts) r.total += c;
  const double lp = std::log(static_cast<double>(P));
  const double scale = static_cast<double>(P) * P * P / (lp * lp * lp * lp);
  u64 mx = 0;
  for (u64 c : r.counts) mx = std::max(mx, c);
  r.max_ratio = P >= 2 ? static_cast<double>(mx) / scale : 0.0;
  return r;
}

struct FlaskResult {
  double value = 0;
  ArcLabel arc;
};

/// sum_{p_i <= 2P} min(H/P, 1/||(p1 + p2 - p3 - p4) alpha||) through the r(n) histogram.
inline FlaskResult min_sum_flask(u64 P, double H, double alpha, double W = 10) {
  detail::require(H > 0, "min_sum_flask requires H > 0");
  const auto rc = representation_counts(P);
  const double cap = H / static_cast<double>(P);
  const double a = alpha - std::floor(alpha);
  CompensatedSum s;
  for (std::size_t i = 0; i < rc.counts.size(); ++i) {
    if (!rc.counts[i]) continue;
    const double n = static_cast<double>(static_cast<i64>(i) - rc.offset);
    const double x = n * a;
    const double d = std::abs(x - std::nearbyint(x));
    s += static_cast<double>(rc.counts[i]) * ((d * cap <= 1.0) ? cap : 1.0 / d);
  }
  FlaskResult f;
  f.value = s.value();
  f.arc = classify_arc(dirichlet_approx(alpha, arc_qcap(H, W)), W);
  return f;
}

}  // namespace mcl

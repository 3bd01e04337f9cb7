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

// Numbers with typical factorization: a ladder of intervals [P_j, Q_j] and
// the sets S (a prime factor in every interval) and S' (every interval
// with j >= 2).
//
// The ladder lives in log space. For j >= 2
//
//   log P_j = j^{4j} (log Q_1)^{j-1} log P_1,   log Q_j = j^{4j+2} (log Q_1)^j,
//
// and P_2 already overflows every integer type for realistic P_1, so integer
// endpoints are only materialized for intervals with Q_j <= X.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mcl/errors.hpp"
#include "mcl/numeric.hpp"
#include "mcl/sieve.hpp"

namespace mcl {

struct LadderInterval {
  int j;
  long double log_p;
  long double log_q;
};

/// Log endpoints of the ladder for j = 1..count.
inline std::vector<LadderInterval> ladder_logs(long double log_p1, long double log_q1, int count) {
  std::vector<LadderInterval> out;
  for (int j = 1; j <= count; ++j) {
    if (j == 1) {
      out.push_back({1, log_p1, log_q1});
      continue;
    }
    const long double jj = j;
    const long double lp = std::pow(jj, 4 * jj) * std::pow(log_q1, jj - 1) * log_p1;
    const long double lq = std::pow(jj, 4 * jj + 2) * std::pow(log_q1, jj);
    out.push_back({j, lp, lq});
  }
  return out;
}

class IntervalSystem {
 public:
  struct Bounds {
    u64 lo;  // smallest integer >= P_j
    u64 hi;  // largest integer <= min(Q_j, X)
  };

  u64 P1() const { return p1_; }
  u64 Q1() const { return q1_; }
  u64 X0() const { return x0_; }
  u64 X() const { return x_; }
  int J() const { return static_cast<int>(ladder_.size()); }
  bool synthetic() const { return synthetic_; }
  const std::vector<LadderInterval>& ladder() const { return ladder_; }

  /// Integer prime ranges per interval; intervals beyond X are clipped.
  const std::vector<Bounds>& bounds() const { return bounds_; }

  /// Genuine ladder from (P1, Q1, X0, X) with the standing hypotheses checked.
  friend IntervalSystem build_interval_system(u64 P1, u64 Q1, u64 X0, u64 X);
  /// Hand-specified intervals with no standing hypotheses; an empty list
  /// gives S = S' = [1, X].
  friend IntervalSystem synthetic_system(const std::vector<std::pair<u64, u64>>& intervals, u64 X);

 private:
  void materialize();

  u64 p1_ = 0, q1_ = 0, x0_ = 0, x_ = 0;
  bool synthetic_ = false;
  std::vector<LadderInterval> ladder_;
  std::vector<std::pair<u64, u64>> raw_;  // synthetic endpoints
  std::vector<Bounds> bounds_;
};

inline void IntervalSystem::materialize() {
  bounds_.clear();
  const long double log_x = std::log(static_cast<long double>(x_));
  for (const auto& iv : ladder_) {
    if (synthetic_) {
      const auto& [lo, hi] = raw_[static_cast<std::size_t>(iv.j - 1)];
      bounds_.push_back({lo, std::min(hi, x_)});
      continue;
    }
    if (iv.j == 1) {
      bounds_.push_back({p1_, std::min(q1_, x_)});
      continue;
    }
    if (iv.log_p > log_x) {
      bounds_.push_back({x_ + 1, x_});  // no prime <= X can land here
      continue;
    }
    const auto lo = static_cast<u64>(std::ceil(std::exp(iv.log_p)));
    const u64 hi = iv.log_q >= log_x ? x_ : static_cast<u64>(std::floor(std::exp(iv.log_q)));
    bounds_.push_back({lo, hi});
  }
}

inline IntervalSystem build_interval_system(u64 P1, u64 Q1, u64 X0, u64 X) {
  using detail::require;
  require(10 < P1 && P1 < Q1 && Q1 <= X, "interval system requires 10 < P1 < Q1 <= X");
  require(X0 <= X && static_cast<long double>(X0) * X0 >= static_cast<long double>(X),
          "interval system requires sqrt(X) <= X0 <= X");
  const long double cap = std::sqrt(std::log(static_cast<long double>(X0)));
  const long double log_q1 = std::log(static_cast<long double>(Q1));
  require(log_q1 <= cap, "interval system requires Q1 <= exp(sqrt(log X0)): log Q1 = " +
                             std::to_string(static_cast<double>(log_q1)) +
                             " > " + std::to_string(static_cast<double>(cap)));
  const long double log_p1 = std::log(static_cast<long double>(P1));

  IntervalSystem s;
  s.p1_ = P1;
  s.q1_ = Q1;
  s.x0_ = X0;
  s.x_ = X;
  constexpr int kMaxJ = 8;
  auto all = ladder_logs(log_p1, log_q1, kMaxJ + 1);
  int J = 0;
  while (J < kMaxJ + 1 && all[J].log_q <= cap) ++J;
  require(J <= kMaxJ, "ladders with J > 8 are not supported");
  all.resize(J);
  s.ladder_ = std::move(all);
  s.materialize();
  for (const auto& b : s.bounds_)
    require(b.lo > b.hi || !primes_in(b.lo, b.hi).empty(), "ladder interval contains no prime");
  return s;
}

inline IntervalSystem synthetic_system(const std::vector<std::pair<u64, u64>>& intervals, u64 X) {
  using detail::require;
  require(X >= 1, "synthetic system requires X >= 1");
  IntervalSystem s;
  s.synthetic_ = true;
  s.x_ = X;
  s.x0_ = X;
  int j = 0;
  for (const auto& [p, q] : intervals) {
    require(2 <= p && p <= q, "synthetic interval requires 2 <= P <= Q");
    require(q <= X, "synthetic interval must lie below X");
    require(!primes_in(p, q).empty(),
            "interval [" + std::to_string(p) + ", " + std::to_string(q) + "] contains no prime");
    if (j > 0) {
      const auto& prev = s.ladder_.back();
      require(std::log(static_cast<long double>(p)) > prev.log_q,
              "synthetic intervals must be disjoint and increasing");
    }
    s.ladder_.push_back({++j, std::log(static_cast<long double>(p)),
                         std::log(static_cast<long double>(q))});
  }
  s.raw_ = intervals;
  if (!intervals.empty()) {
    s.p1_ = intervals.front().first;
    s.q1_ = intervals.front().second;
  }
  s.materialize();
  return s;
}

namespace detail {

inline u64 interval_mask(u64 n, const IntervalSystem& sys, const FactorSieve& sieve) {
  require_domain(n >= 1 && n <= sys.X(), "n = " + std::to_string(n) + " outside [1, X]");
  u64 mask = 0;
  const auto& b = sys.bounds();
  for (const auto& [p, e] : factorize(n, sieve))
    for (std::size_t j = 0; j < b.size(); ++j)
      if (p >= b[j].lo && p <= b[j].hi) mask |= u64{1} << j;
  return mask;
}

inline u64 full_mask(int J) { return J == 0 ? 0 : (~u64{0} >> (64 - J)); }

}  // namespace detail

/// n has a prime factor in [P_j, Q_j] for every j <= J.
inline bool is_member_S(u64 n, const IntervalSystem& sys, const FactorSieve& sieve) {
  const u64 want = detail::full_mask(sys.J());
  return (detail::interval_mask(n, sys, sieve) & want) == want;
}

/// As is_member_S, skipping j = 1.
inline bool is_member_Sprime(u64 n, const IntervalSystem& sys, const FactorSieve& sieve) {
  const u64 want = detail::full_mask(sys.J()) & ~u64{1};
  return (detail::interval_mask(n, sys, sieve) & want) == want;
}

/// Per-n interval masks for [lo, hi] by marking multiples of ladder primes.
/// Bit j-1 is set when n has a prime factor in [P_j, Q_j].
inline std::vector<std::uint8_t> interval_masks(const IntervalSystem& sys, u64 lo, u64 hi,
                                                const SieveLimits& limits = {}) {
  detail::check_range(lo, hi, limits);
  detail::require(sys.J() <= 8, "at most 8 ladder intervals");
  std::vector<std::uint8_t> mask(hi - lo + 1, 0);
  const auto& b = sys.bounds();
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (b[j].lo > b[j].hi || b[j].lo > hi) continue;
    const auto bit = static_cast<std::uint8_t>(1u << j);
    for (u64 p : primes_in(b[j].lo, std::min(b[j].hi, hi), limits))
      for (u64 m = (lo + p - 1) / p * p; m <= hi; m += p) mask[m - lo] |= bit;
  }
  return mask;
}

/// 1_S(n) for n in [lo, hi].
inline std::vector<char> s_indicator(const IntervalSystem& sys, u64 lo, u64 hi,
                                     const SieveLimits& limits = {}) {
  const auto mask = interval_masks(sys, lo, hi, limits);
  const auto want = static_cast<std::uint8_t>(detail::full_mask(sys.J()));
  std::vector<char> out(mask.size());
  for (std::size_t i = 0; i < mask.size(); ++i) out[i] = (mask[i] & want) == want;
  return out;
}

/// prod_{P <= p <= Q} (1 - 1/p), accumulated in log space.
inline double mertens_product(u64 P, u64 Q, const SieveLimits& limits = {}) {
  detail::require(2 <= P && P <= Q, "mertens_product requires 2 <= P <= Q");
  long double acc = 0;
  for (u64 p : primes_in(P, Q, limits)) acc += std::log1p(-1.0L / static_cast<long double>(p));
  return static_cast<double>(std::exp(acc));
}

struct DensityReport {
  u64 X = 0;
  double measured_deficit = 0;
  double standard_error = 0;  // zero for a full scan
  bool sampled = false;
  u64 samples = 0;
  double mertens_bound = 0;           // sum over j of the per-interval products
  std::vector<double> mertens_per_j;  // prod_{P_j <= p <= Q_j} (1 - 1/p)
};

/// Fraction of n <= X outside S, by full scan up to full_scan_limit and by
/// seeded sampling (trial division) above it.
inline DensityReport density_report(const IntervalSystem& sys, u64 X, std::uint64_t seed = 0,
                                    u64 samples = 200'000, u64 full_scan_limit = 10'000'000,
                                    const SieveLimits& limits = {}) {
  detail::require(X >= 1 && X <= sys.X(), "density_report requires 1 <= X <= system X");
  DensityReport r;
  r.X = X;
  for (const auto& b : sys.bounds()) {
    const double m = b.lo > b.hi ? 1.0 : mertens_product(std::max<u64>(b.lo, 2), b.hi, limits);
    r.mertens_per_j.push_back(m);
    r.mertens_bound += m;
  }
  if (X <= full_scan_limit) {
    const auto in_s = s_indicator(sys, 1, X, limits);
    u64 outside = 0;
    for (char c : in_s) outside += !c;
    r.measured_deficit = static_cast<double>(outside) / static_cast<double>(X);
    return r;
  }
  r.sampled = true;
  r.samples = samples;
  auto rng = make_rng(seed, {0xDE, X});
  std::uniform_int_distribution<u64> pick(1, X);
  const auto base = small_primes(isqrt(X));
  const auto& b = sys.bounds();
  const u64 want = detail::full_mask(sys.J());
  u64 outside = 0;
  for (u64 i = 0; i < samples; ++i) {
    u64 m = pick(rng);
    u64 mask = 0;
    auto mark = [&](u64 p) {
      for (std::size_t j = 0; j < b.size(); ++j)
        if (p >= b[j].lo && p <= b[j].hi) mask |= u64{1} << j;
    };
    for (u64 p : base) {
      if (p * p > m) break;
      if (m % p) continue;
      mark(p);
      while (m % p == 0) m /= p;
    }
    if (m > 1) mark(m);
    outside += (mask & want) != want;
  }
  const double f = static_cast<double>(outside) / static_cast<double>(samples);
  r.measured_deficit = f;
  r.standard_error = std::sqrt(f * (1 - f) / static_cast<double>(samples));
  return r;
}

}  // namespace mcl

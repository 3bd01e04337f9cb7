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

// Segmented sieves over [lo, hi]: smallest prime factors, Liouville and
// Moebius sign blocks, and prime lists.
//
// Every block is a pure function of (lo, hi) and the limits; blocks over
// disjoint segments may be built concurrently.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "mcl/errors.hpp"

namespace mcl {

using u64 = std::uint64_t;
using i64 = std::int64_t;

struct SieveLimits {
  /// Largest number of entries a single block may hold.
  u64 max_entries = u64{1} << 31;
  /// Hard cap on the upper end of any sieved range.
  u64 max_hi = 10'000'000'000ULL;
  /// Streaming segment length for the sign and prime sieves.
  u64 segment = u64{1} << 22;

  /// Limits for a memory budget in bytes, sized for the widest per-entry
  /// footprint (8 bytes of scratch per entry while sign sieving).
  static SieveLimits from_memory_budget(u64 bytes) {
    SieveLimits l;
    l.max_entries = std::max<u64>(bytes / 8, 1);
    l.segment = std::min(l.segment, l.max_entries);
    return l;
  }
};

inline u64 isqrt(u64 n) {
  auto r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// All primes <= limit by a plain sieve of Eratosthenes.
inline std::vector<u64> small_primes(u64 limit) {
  std::vector<u64> out;
  if (limit < 2) return out;
  std::vector<char> composite(limit + 1, 0);
  for (u64 i = 2; i * i <= limit; ++i)
    if (!composite[i])
      for (u64 j = i * i; j <= limit; j += i) composite[j] = 1;
  for (u64 i = 2; i <= limit; ++i)
    if (!composite[i]) out.push_back(i);
  return out;
}

namespace detail {

inline void check_range(u64 lo, u64 hi, const SieveLimits& limits) {
  require_domain(lo >= 1, "sieve range must start at lo >= 1");
  require(lo <= hi, "sieve range requires lo <= hi");
  if (hi > limits.max_hi)
    throw CapacityError("hi = " + std::to_string(hi) + " exceeds the sieve cap " +
                        std::to_string(limits.max_hi));
  if (hi - lo + 1 > limits.max_entries)
    throw CapacityError("range of " + std::to_string(hi - lo + 1) +
                        " entries exceeds the budget of " +
                        std::to_string(limits.max_entries));
}

}  // namespace detail

/// Smallest-prime-factor table for [lo, hi].
///
/// Composite entries store their smallest prime factor (always <= sqrt(hi),
/// so 32 bits suffice below the 10^10 cap); primes and 1 store 0 and are
/// resolved on lookup.
class FactorSieve {
 public:
  FactorSieve() = default;

  u64 lo() const { return lo_; }
  u64 hi() const { return hi_; }
  u64 size() const { return hi_ - lo_ + 1; }
  bool contains(u64 n) const { return n >= lo_ && n <= hi_; }

  /// Smallest prime factor of n; 1 for n = 1, n itself for primes.
  u64 spf(u64 n) const {
    detail::require_domain(contains(n), "n = " + std::to_string(n) + " outside sieve range");
    std::uint32_t v = spf_[n - lo_];
    return v == 0 ? n : v;
  }

  bool is_prime(u64 n) const { return n >= 2 && spf(n) == n; }

  /// Primes <= sqrt(hi), used for trial division of cofactors below lo.
  const std::vector<u64>& base_primes() const { return base_; }

 private:
  friend FactorSieve build_factor_sieve(u64, u64, const SieveLimits&);
  u64 lo_ = 1;
  u64 hi_ = 0;
  std::vector<std::uint32_t> spf_;
  std::vector<u64> base_;
};

inline FactorSieve build_factor_sieve(u64 lo, u64 hi, const SieveLimits& limits = {}) {
  detail::check_range(lo, hi, limits);
  FactorSieve s;
  s.lo_ = lo;
  s.hi_ = hi;
  s.base_ = small_primes(isqrt(hi));
  s.spf_.assign(hi - lo + 1, 0);
  for (u64 p : s.base_) {
    u64 start = std::max(p * p, (lo + p - 1) / p * p);
    for (u64 m = start; m <= hi; m += p)
      if (s.spf_[m - lo] == 0) s.spf_[m - lo] = static_cast<std::uint32_t>(p);
  }
  return s;
}

struct PrimePower {
  u64 p;
  unsigned e;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization of n in increasing prime order; empty for n = 1.
inline std::vector<PrimePower> factorize(u64 n, const FactorSieve& sieve) {
  detail::require_domain(sieve.contains(n), "n = " + std::to_string(n) + " outside sieve range");
  std::vector<PrimePower> out;
  auto strip = [&](u64& m, u64 p) {
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.push_back({p, e});
  };
  u64 m = n;
  u64 last = 1;
  while (m > 1 && sieve.contains(m)) {
    last = sieve.spf(m);
    strip(m, last);
  }
  // The cofactor fell below lo; its prime factors all exceed `last`.
  const auto& base = sieve.base_primes();
  auto it = std::upper_bound(base.begin(), base.end(), last);
  for (; m > 1 && it != base.end() && *it * *it <= m; ++it)
    if (m % *it == 0) strip(m, *it);
  if (m > 1) out.push_back({m, 1});
  return out;
}

enum class SignMode { liouville, moebius };

/// Values in {-1, 0, +1} for n in [lo, hi].
struct SignBlock {
  u64 lo = 1;
  u64 hi = 0;
  SignMode mode = SignMode::liouville;
  std::vector<std::int8_t> values;

  std::int8_t at(u64 n) const {
    detail::require_domain(n >= lo && n <= hi, "n outside sign block");
    return values[n - lo];
  }
};

namespace detail {

// Sign sieve for one segment [s, e] using base primes <= sqrt(hi). Each
// prime (power) flips a parity bit and multiplies a running product; a
// leftover cofactor above 1 is a single prime > sqrt(hi).
inline void sign_segment(u64 s, u64 e, const std::vector<u64>& base, SignMode mode,
                         std::int8_t* out) {
  const u64 len = e - s + 1;
  std::vector<u64> prod(len, 1);
  std::vector<std::uint8_t> parity(len, 0);
  std::vector<std::uint8_t> zero(mode == SignMode::moebius ? len : 0, 0);
  for (u64 p : base) {
    if (p > e) break;
    for (u64 m = (s + p - 1) / p * p; m <= e; m += p) {
      parity[m - s] ^= 1;
      prod[m - s] *= p;
    }
    if (p > e / p) continue;
    const u64 p2 = p * p;
    if (mode == SignMode::moebius) {
      for (u64 m = (s + p2 - 1) / p2 * p2; m <= e; m += p2) zero[m - s] = 1;
      continue;
    }
    for (u64 pk = p2;; pk *= p) {
      for (u64 m = (s + pk - 1) / pk * pk; m <= e; m += pk) {
        parity[m - s] ^= 1;
        prod[m - s] *= p;
      }
      if (pk > e / p) break;
    }
  }
  for (u64 i = 0; i < len; ++i) {
    const u64 n = s + i;
    if (mode == SignMode::moebius && zero[i]) {
      out[i] = 0;
      continue;
    }
    std::uint8_t par = parity[i];
    if (prod[i] != n) par ^= 1;
    out[i] = par ? -1 : 1;
  }
}

inline SignBlock sign_block(u64 lo, u64 hi, SignMode mode, const SieveLimits& limits) {
  check_range(lo, hi, limits);
  SignBlock b{lo, hi, mode, std::vector<std::int8_t>(hi - lo + 1)};
  const auto base = small_primes(isqrt(hi));
  const u64 seg = std::max<u64>(limits.segment, 1);
  for (u64 s = lo;; s += seg) {
    const u64 e = (hi - s < seg - 1) ? hi : s + seg - 1;
    sign_segment(s, e, base, mode, b.values.data() + (s - lo));
    if (e == hi) break;
  }
  return b;
}

}  // namespace detail

/// lambda(n) = (-1)^Omega(n) on [lo, hi].
inline SignBlock liouville_block(u64 lo, u64 hi, const SieveLimits& limits = {}) {
  return detail::sign_block(lo, hi, SignMode::liouville, limits);
}

/// mu(n) on [lo, hi]; zero exactly on non-squarefree n.
inline SignBlock moebius_block(u64 lo, u64 hi, const SieveLimits& limits = {}) {
  return detail::sign_block(lo, hi, SignMode::moebius, limits);
}

/// The primes in [lo, hi], ascending.
inline std::vector<u64> primes_in(u64 lo, u64 hi, const SieveLimits& limits = {}) {
  detail::require_domain(lo >= 1, "sieve range must start at lo >= 1");
  detail::require(lo <= hi, "sieve range requires lo <= hi");
  if (hi > limits.max_hi)
    throw CapacityError("hi = " + std::to_string(hi) + " exceeds the sieve cap");
  std::vector<u64> out;
  const auto base = small_primes(isqrt(hi));
  const u64 seg = std::max<u64>(limits.segment, 1);
  std::vector<char> composite;
  for (u64 s = lo;; s += seg) {
    const u64 e = (hi - s < seg - 1) ? hi : s + seg - 1;
    composite.assign(e - s + 1, 0);
    for (u64 p : base) {
      if (p * p > e) break;
      for (u64 m = std::max(p * p, (s + p - 1) / p * p); m <= e; m += p) composite[m - s] = 1;
    }
    for (u64 n = std::max<u64>(s, 2); n <= e; ++n)
      if (!composite[n - s]) out.push_back(n);
    if (e == hi) break;
  }
  return out;
}

/// Primes <= X with cached log p and 1/p, the common input of every prime sum.
struct PrimeTable {
  std::vector<u64> primes;
  std::vector<double> log_p;
  std::vector<double> inv_p;

  static PrimeTable upto(u64 X, const SieveLimits& limits = {}) {
    PrimeTable t;
    if (X >= 2) t.primes = primes_in(1, X, limits);
    t.log_p.reserve(t.primes.size());
    t.inv_p.reserve(t.primes.size());
    for (u64 p : t.primes) {
      t.log_p.push_back(std::log(static_cast<double>(p)));
      t.inv_p.push_back(1.0 / static_cast<double>(p));
    }
    return t;
  }

  std::size_t size() const { return primes.size(); }

  /// Number of leading entries with p <= X.
  std::size_t count_upto(u64 X) const {
    return static_cast<std::size_t>(std::upper_bound(primes.begin(), primes.end(), X) -
                                    primes.begin());
  }
};

}  // namespace mcl

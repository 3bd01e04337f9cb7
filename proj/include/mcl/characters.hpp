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

// Dirichlet characters mod q.
//
// (Z/q)^* is split by CRT into cyclic components: one per odd prime power
// (generated by a primitive root), and {+-1} x <5> for 2^k with k >= 3.
// A character is a vector of component indices; its value at r is
// e(k(r)/L) with L the group exponent, so every identity is exact integer
// arithmetic on k and complex values only appear at evaluation.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numeric>
#include <numbers>
#include <string>
#include <vector>

#include "mcl/errors.hpp"
#include "mcl/sieve.hpp"

namespace mcl {

using cplx = std::complex<double>;

/// e(x) = exp(2 pi i x), with x reduced mod 1 before scaling.
inline cplx e(double x) {
  const double a = 2.0 * std::numbers::pi * (x - std::nearbyint(x));
  return {std::cos(a), std::sin(a)};
}

namespace detail {

inline u64 powmod(u64 b, u64 e, u64 m) {
  unsigned __int128 r = 1 % m, x = b % m;
  for (; e; e >>= 1) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
  }
  return static_cast<u64>(r);
}

inline std::vector<u64> distinct_prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

inline u64 primitive_root_mod_p(u64 p) {
  if (p == 2) return 1;
  const auto fs = distinct_prime_factors(p - 1);
  for (u64 g = 2;; ++g) {
    bool ok = true;
    for (u64 r : fs)
      if (powmod(g, (p - 1) / r, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
}

struct CyclicComponent {
  u64 modulus;  // prime power carrying this component
  u64 order;    // cyclic order n_i
};

// Shared structure of (Z/q)^*: components and per-residue discrete logs.
struct GroupStructure {
  u64 q = 1;
  u64 exponent = 1;  // L = lcm of component orders
  std::vector<CyclicComponent> components;
  std::vector<std::int32_t> logs;  // q * components.size(); -1 on non-units
  std::vector<char> unit;

  std::size_t width() const { return components.size(); }
};

inline std::shared_ptr<const GroupStructure> build_structure(u64 q) {
  auto gs = std::make_shared<GroupStructure>();
  gs->q = q;
  gs->unit.assign(q, 0);
  for (u64 r = 0; r < q; ++r) gs->unit[r] = std::gcd(r, q) == 1;
  if (q == 1) gs->unit[0] = 1;

  // Per-component discrete log tables, indexed by residue mod the prime power.
  std::vector<std::vector<std::int32_t>> tables;
  u64 rest = q;
  for (u64 p : distinct_prime_factors(q)) {
    u64 pe = 1;
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      pe *= p;
      ++e;
    }
    if (p == 2) {
      if (e == 1) continue;
      if (e == 2) {
        std::vector<std::int32_t> t(pe, -1);
        t[1] = 0;
        t[3] = 1;
        gs->components.push_back({pe, 2});
        tables.push_back(std::move(t));
        continue;
      }
      // r = (-1)^s 5^a mod 2^e.
      std::vector<std::int32_t> sign(pe, -1), five(pe, -1);
      u64 x = 1;
      for (u64 a = 0; a < pe / 4; ++a) {
        sign[x] = 0;
        five[x] = static_cast<std::int32_t>(a);
        sign[pe - x] = 1;
        five[pe - x] = static_cast<std::int32_t>(a);
        x = x * 5 % pe;
      }
      gs->components.push_back({pe, 2});
      tables.push_back(std::move(sign));
      gs->components.push_back({pe, pe / 4});
      tables.push_back(std::move(five));
      continue;
    }
    u64 g = primitive_root_mod_p(p);
    if (e >= 2 && powmod(g, p - 1, p * p) == 1) g += p;
    const u64 order = pe / p * (p - 1);
    std::vector<std::int32_t> t(pe, -1);
    u64 x = 1;
    for (u64 a = 0; a < order; ++a) {
      t[x] = static_cast<std::int32_t>(a);
      x = static_cast<u64>(static_cast<unsigned __int128>(x) * g % pe);
    }
    gs->components.push_back({pe, order});
    tables.push_back(std::move(t));
  }
  for (const auto& c : gs->components) gs->exponent = std::lcm(gs->exponent, c.order);

  const std::size_t w = gs->width();
  gs->logs.assign(q * w, -1);
  for (u64 r = 0; r < q; ++r) {
    if (!gs->unit[r]) continue;
    for (std::size_t i = 0; i < w; ++i)
      gs->logs[r * w + i] = tables[i][r % gs->components[i].modulus];
  }
  return gs;
}

}  // namespace detail

class DirichletCharacter {
 public:
  DirichletCharacter(std::shared_ptr<const detail::GroupStructure> gs, std::vector<u64> index)
      : gs_(std::move(gs)), index_(std::move(index)) {}

  u64 modulus() const { return gs_->q; }

  /// Denominator of the exponent representation (the group exponent).
  u64 order() const { return gs_->exponent; }

  /// Mixed-radix coordinates of this character over the cyclic components.
  const std::vector<u64>& index() const { return index_; }

  /// k(r) with chi(r) = e(k(r)/order()), or -1 when gcd(r, q) > 1.
  i64 exponent(u64 r) const {
    r %= gs_->q;
    if (!gs_->unit[r]) return -1;
    const std::size_t w = gs_->width();
    u64 k = 0;
    for (std::size_t i = 0; i < w; ++i) {
      const auto& c = gs_->components[i];
      const u64 a = static_cast<u64>(gs_->logs[r * w + i]);
      k = (k + a * index_[i] % c.order * (gs_->exponent / c.order)) % gs_->exponent;
    }
    return static_cast<i64>(k);
  }

  /// The full exponent table, one entry per residue 0..q-1.
  std::vector<i64> exponent_table() const {
    std::vector<i64> t(gs_->q);
    for (u64 r = 0; r < gs_->q; ++r) t[r] = exponent(r);
    return t;
  }

  cplx operator()(u64 n) const {
    const i64 k = exponent(n);
    if (k < 0) return 0.0;
    if (k == 0) return 1.0;
    if (2 * static_cast<u64>(k) == gs_->exponent) return -1.0;
    return e(static_cast<double>(k) / static_cast<double>(gs_->exponent));
  }

  bool is_principal() const {
    for (u64 j : index_)
      if (j != 0) return false;
    return true;
  }

  /// True when chi^2 is principal, i.e. chi is real-valued.
  bool is_real() const {
    for (std::size_t i = 0; i < index_.size(); ++i)
      if ((2 * index_[i]) % gs_->components[i].order != 0) return false;
    return true;
  }

 private:
  std::shared_ptr<const detail::GroupStructure> gs_;
  std::vector<u64> index_;
};

/// All phi(q) characters mod q; the principal character comes first.
class CharacterGroup {
 public:
  u64 modulus() const { return q_; }
  std::size_t size() const { return chars_.size(); }
  const DirichletCharacter& operator[](std::size_t i) const { return chars_[i]; }
  const std::vector<DirichletCharacter>& characters() const { return chars_; }
  auto begin() const { return chars_.begin(); }
  auto end() const { return chars_.end(); }

 private:
  friend CharacterGroup character_group(u64);
  u64 q_ = 1;
  std::vector<DirichletCharacter> chars_;
};

inline CharacterGroup character_group(u64 q) {
  detail::require_domain(q >= 1, "character modulus must be >= 1");
  detail::require(q <= 1'000'000, "character modulus capped at 10^6");
  auto gs = detail::build_structure(q);
  CharacterGroup g;
  g.q_ = q;
  const std::size_t w = gs->width();
  std::vector<u64> idx(w, 0);
  for (;;) {
    g.chars_.emplace_back(gs, idx);
    std::size_t i = 0;
    while (i < w && ++idx[i] == gs->components[i].order) idx[i++] = 0;
    if (i == w) break;
  }
  return g;
}

inline u64 euler_phi(u64 q) {
  u64 r = q;
  for (u64 p : detail::distinct_prime_factors(q)) r = r / p * (p - 1);
  return r;
}

/// max over units m of |(1/phi(q)) sum_chi chi(b) conj(chi(m)) - [m == b mod q]|.
inline double verify_orthogonality(u64 q, u64 b) {
  detail::require_domain(q >= 1, "modulus must be >= 1");
  detail::require(std::gcd(b % q, q) == 1 || q == 1, "b must be coprime to q");
  const auto group = character_group(q);
  const double phi = static_cast<double>(group.size());
  double worst = 0.0;
  for (u64 m = 0; m < q; ++m) {
    if (q > 1 && std::gcd(m, q) != 1) continue;
    cplx s = 0.0;
    for (const auto& chi : group) s += chi(b) * std::conj(chi(m));
    const double want = (m == b % q) ? 1.0 : 0.0;
    worst = std::max(worst, std::abs(s / phi - want));
  }
  return worst;
}

}  // namespace mcl

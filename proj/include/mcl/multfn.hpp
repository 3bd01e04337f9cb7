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

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mcl/characters.hpp"
#include "mcl/sieve.hpp"

namespace mcl {

/// A 1-bounded multiplicative function given by its values on prime powers.
///
/// Completely multiplicative instances satisfy f(p^k) = f(p)^k. The sign
/// functions (lambda, mu, mu^2, 1) carry a tag so bulk evaluation can use the
/// sign sieves instead of factoring every n.
class MultFn {
 public:
  enum class Tag { one, liouville, moebius, mu_squared, general };
  using PrimePowerFn = std::function<cplx(u64 p, unsigned k)>;

  MultFn(std::string name, PrimePowerFn f, bool completely, bool real,
         Tag tag = Tag::general)
      : name_(std::move(name)), f_(std::move(f)), completely_(completely), real_(real),
        tag_(tag) {}

  /// Completely multiplicative function from its prime values.
  static MultFn completely(std::string name, std::function<cplx(u64)> at_prime,
                           bool real = false) {
    return MultFn(
        std::move(name),
        [g = std::move(at_prime)](u64 p, unsigned k) {
          const cplx v = g(p);
          cplx r = v;
          for (unsigned i = 1; i < k; ++i) r *= v;
          return r;
        },
        true, real);
  }

  const std::string& name() const { return name_; }
  bool is_completely() const { return completely_; }
  bool is_real() const { return real_; }
  Tag tag() const { return tag_; }

  cplx at_prime(u64 p) const { return f_(p, 1); }
  cplx at_prime_power(u64 p, unsigned k) const { return k == 0 ? cplx{1.0} : f_(p, k); }

  cplx operator()(u64 n, const FactorSieve& sieve) const {
    cplx v = 1.0;
    for (const auto& [p, k] : factorize(n, sieve)) v *= at_prime_power(p, k);
    return v;
  }

  /// f(n) for n in [lo, hi].
  std::vector<cplx> values(u64 lo, u64 hi, const SieveLimits& limits = {}) const {
    std::vector<cplx> out;
    switch (tag_) {
      case Tag::one:
        detail::check_range(lo, hi, limits);
        out.assign(hi - lo + 1, 1.0);
        return out;
      case Tag::liouville:
      case Tag::moebius:
      case Tag::mu_squared: {
        const auto b = tag_ == Tag::liouville ? liouville_block(lo, hi, limits)
                                              : moebius_block(lo, hi, limits);
        out.reserve(b.values.size());
        for (auto s : b.values)
          out.emplace_back(tag_ == Tag::mu_squared ? static_cast<double>(s * s)
                                                   : static_cast<double>(s));
        return out;
      }
      case Tag::general:
        break;
    }
    const auto sieve = build_factor_sieve(lo, hi, limits);
    out.reserve(hi - lo + 1);
    for (u64 n = lo; n <= hi; ++n) out.push_back((*this)(n, sieve));
    return out;
  }

  /// f(p) for every prime in the table.
  std::vector<cplx> prime_values(const PrimeTable& primes) const {
    std::vector<cplx> out;
    out.reserve(primes.size());
    for (u64 p : primes.primes) out.push_back(at_prime(p));
    return out;
  }

  MultFn conj() const {
    return MultFn("conj(" + name_ + ")",
                  [f = f_](u64 p, unsigned k) { return std::conj(f(p, k)); }, completely_,
                  real_, real_ ? tag_ : Tag::general);
  }

  friend MultFn operator*(const MultFn& a, const MultFn& b) {
    return MultFn(a.name_ + "*" + b.name_,
                  [f = a.f_, g = b.f_](u64 p, unsigned k) { return f(p, k) * g(p, k); },
                  a.completely_ && b.completely_, a.real_ && b.real_);
  }

 private:
  std::string name_;
  PrimePowerFn f_;
  bool completely_;
  bool real_;
  Tag tag_;
};

namespace fns {

inline MultFn one() {
  return MultFn("one", [](u64, unsigned) { return cplx{1.0}; }, true, true, MultFn::Tag::one);
}

inline MultFn liouville() {
  return MultFn(
      "liouville", [](u64, unsigned k) { return cplx{k % 2 ? -1.0 : 1.0}; }, true, true,
      MultFn::Tag::liouville);
}

inline MultFn moebius() {
  return MultFn(
      "moebius", [](u64, unsigned k) { return cplx{k == 1 ? -1.0 : 0.0}; }, false, true,
      MultFn::Tag::moebius);
}

inline MultFn mu_squared() {
  return MultFn(
      "mu_squared", [](u64, unsigned k) { return cplx{k == 1 ? 1.0 : 0.0}; }, false, true,
      MultFn::Tag::mu_squared);
}

/// n -> n^{it}.
inline MultFn archimedean(double t) {
  return MultFn::completely("n^{i*" + std::to_string(t) + "}", [t](u64 p) {
    return std::polar(1.0, t * std::log(static_cast<double>(p)));
  }, t == 0.0);
}

inline MultFn character(const DirichletCharacter& chi) {
  return MultFn::completely("chi_" + std::to_string(chi.modulus()), [chi](u64 p) { return chi(p); },
                            chi.is_real());
}

/// n -> chi(n) n^{it}.
inline MultFn twisted_character(const DirichletCharacter& chi, double t) {
  return MultFn::completely(
      "chi_" + std::to_string(chi.modulus()) + "*n^{it}",
      [chi, t](u64 p) { return chi(p) * std::polar(1.0, t * std::log(static_cast<double>(p))); },
      t == 0.0 && chi.is_real());
}

/// Multiplicative function supported on squarefree n with the given prime values.
inline MultFn squarefree_supported(std::string name, std::function<cplx(u64)> at_prime,
                                   bool real = false) {
  return MultFn(
      std::move(name),
      [g = std::move(at_prime)](u64 p, unsigned k) { return k == 1 ? g(p) : cplx{0.0}; },
      false, real);
}

/// Completely multiplicative function with f(p) = table[p]; primes past the
/// table are a precondition error.
inline MultFn tabulated(std::string name, std::vector<cplx> table, bool real = false) {
  auto t = std::make_shared<const std::vector<cplx>>(std::move(table));
  return MultFn::completely(std::move(name), [t](u64 p) {
    detail::require(p < t->size(), "prime outside the tabulated range");
    return (*t)[p];
  }, real);
}

}  // namespace fns
}  // namespace mcl

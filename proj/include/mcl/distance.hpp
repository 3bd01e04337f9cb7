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

// Pretentious distance
//
//   D(f, g; X)^2 = sum_{p <= X} (1 - Re f(p) conj(g(p))) / p
//
// and the derived quantities M(f; X) = inf_{|t| <= X} D(f, n^{it}; X)^2 and
// M(f; X, Q), which also ranges over characters of modulus q <= Q.
// Prime sums run over the sieved primes in increasing order with
// compensated accumulation, so results are reproducible bit for bit.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "mcl/characters.hpp"
#include "mcl/multfn.hpp"
#include "mcl/numeric.hpp"
#include "mcl/sieve.hpp"
#include "mcl/typical.hpp"

namespace mcl {

struct DistanceResult {
  double value = 0;    // D(f, g; X)
  double squared = 0;  // D(f, g; X)^2
  u64 X = 0;
  std::size_t term_count = 0;
};

namespace detail {

// sum_{p <= X} (1 - Re(a_p)) / p over the first `count` table entries.
template <class Coeff>
DistanceResult distance_sum(const PrimeTable& tab, u64 X, Coeff&& coeff) {
  const std::size_t count = tab.count_upto(X);
  CompensatedSum s;
  for (std::size_t i = 0; i < count; ++i) s += (1.0 - coeff(i).real()) * tab.inv_p[i];
  DistanceResult r;
  r.squared = std::max(0.0, s.value());
  r.value = std::sqrt(r.squared);
  r.X = X;
  r.term_count = count;
  return r;
}

}  // namespace detail

inline DistanceResult distance(const MultFn& f, const MultFn& g, const PrimeTable& tab, u64 X) {
  detail::require(X >= 2, "distance requires X >= 2");
  return detail::distance_sum(tab, X, [&](std::size_t i) {
    const u64 p = tab.primes[i];
    return f.at_prime(p) * std::conj(g.at_prime(p));
  });
}

inline DistanceResult distance(const MultFn& f, const MultFn& g, u64 X) {
  detail::require(X >= 2, "distance requires X >= 2");
  return distance(f, g, PrimeTable::upto(X), X);
}

/// D(f, n -> chi(n) n^{it}; X).
inline DistanceResult distance_twisted(const MultFn& f, const DirichletCharacter& chi, double t,
                                       const PrimeTable& tab, u64 X) {
  detail::require(X >= 2, "distance requires X >= 2");
  detail::require(std::abs(t) <= static_cast<double>(X), "twist requires |t| <= X");
  return detail::distance_sum(tab, X, [&](std::size_t i) {
    const u64 p = tab.primes[i];
    return f.at_prime(p) * std::conj(chi(p)) * std::polar(1.0, -t * tab.log_p[i]);
  });
}

inline DistanceResult distance_twisted(const MultFn& f, const DirichletCharacter& chi, double t,
                                       u64 X) {
  detail::require(X >= 2, "distance requires X >= 2");
  return distance_twisted(f, chi, t, PrimeTable::upto(X), X);
}

/// Search settings for M(f; X).
///
/// A proxy objective over the primes <= proxy_prime_cap is scanned on a
/// uniform grid covering [-X, X] (or [0, X] for real f, where the objective
/// is even in t) with spacing eps / log(largest proxy prime). The lowest
/// `candidates` local minima of the proxy are then re-scanned with the full
/// objective at spacing eps / log X and polished by golden-section search to
/// golden_tol. The returned M is an attained value, hence an upper bound on
/// the infimum.
struct BigMOptions {
  double eps = 0.1;
  u64 proxy_prime_cap = 100;
  std::size_t candidates = 32;
  double golden_tol = 1e-6;
};

struct BigMGrid {
  double t_lo = 0;
  double t_hi = 0;
  double proxy_spacing = 0;
  double refine_spacing = 0;
  std::size_t proxy_primes = 0;
  u64 proxy_points = 0;
  std::size_t candidates = 0;
  std::size_t full_evaluations = 0;
  double golden_tol = 0;
};

struct BigMResult {
  double M = 0;
  double argmin_t = 0;
  BigMGrid grid;
};

namespace detail {

// F(t) = sum_{p <= X} (1 - Re(w_p p^{-it})) / p.
class TwistObjective {
 public:
  TwistObjective(const PrimeTable& tab, u64 X, const std::vector<cplx>& w)
      : tab_(tab), count_(tab.count_upto(X)), w_(w) {}

  double operator()(double t) const {
    CompensatedSum s;
    for (std::size_t i = 0; i < count_; ++i) {
      const double a = -t * tab_.log_p[i];
      const double re = w_[i].real() * std::cos(a) - w_[i].imag() * std::sin(a);
      s += (1.0 - re) * tab_.inv_p[i];
    }
    return s.value();
  }

 private:
  const PrimeTable& tab_;
  std::size_t count_;
  const std::vector<cplx>& w_;
};

struct Candidate {
  double value;
  double t;
  bool operator<(const Candidate& o) const { return value < o.value; }
};

// Streams the proxy objective over the grid and keeps the lowest local minima.
inline std::vector<Candidate> proxy_scan(const PrimeTable& tab, const std::vector<cplx>& w,
                                         std::size_t k, double lo, double h, u64 points,
                                         std::size_t keep) {
  std::priority_queue<Candidate> best;  // max-heap of the `keep` lowest
  auto offer = [&](double v, double t) {
    if (best.size() < keep) {
      best.push({v, t});
    } else if (v < best.top().value) {
      best.pop();
      best.push({v, t});
    }
  };
  double base = 0;
  for (std::size_t i = 0; i < k; ++i) base += tab.inv_p[i];
  std::vector<cplx> z(k), rot(k);
  for (std::size_t i = 0; i < k; ++i) rot[i] = std::polar(1.0, -h * tab.log_p[i]);
  constexpr u64 kResync = 1024;
  double prev2 = std::numeric_limits<double>::infinity();
  double prev1 = std::numeric_limits<double>::infinity();
  for (u64 j = 0; j < points; ++j) {
    const double t = lo + h * static_cast<double>(j);
    if (j % kResync == 0)
      for (std::size_t i = 0; i < k; ++i)
        z[i] = w[i] * tab.inv_p[i] * std::polar(1.0, -t * tab.log_p[i]);
    double re = 0;
    for (std::size_t i = 0; i < k; ++i) {
      re += z[i].real();
      z[i] *= rot[i];
    }
    const double v = base - re;
    if (j == 1 && prev1 <= v) offer(prev1, lo);  // left endpoint
    if (j >= 2 && prev1 <= prev2 && prev1 <= v) offer(prev1, t - h);
    prev2 = prev1;
    prev1 = v;
  }
  if (points >= 2 && prev1 <= prev2) offer(prev1, lo + h * static_cast<double>(points - 1));
  if (points == 1) offer(prev1, lo);
  std::vector<Candidate> out;
  while (!best.empty()) {
    out.push_back(best.top());
    best.pop();
  }
  std::reverse(out.begin(), out.end());
  return out;
}

template <class F>
double golden_section(F&& f, double a, double b, double tol, double& fx, std::size_t& evals) {
  const double r = (std::sqrt(5.0) - 1) / 2;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  evals += 2;
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
    ++evals;
  }
  if (fc <= fd) {
    fx = fc;
    return c;
  }
  fx = fd;
  return d;
}

}  // namespace detail

/// M(g; X) for the function with prime values w (aligned with `tab`).
inline BigMResult big_m_values(const std::vector<cplx>& w, bool real_valued,
                               const PrimeTable& tab, u64 X, const BigMOptions& opt = {}) {
  detail::require(X >= 100, "big_m requires X >= 100");
  detail::require(w.size() >= tab.count_upto(X), "one prime value per tabulated prime required");
  const detail::TwistObjective F(tab, X, w);
  BigMResult r;
  auto& g = r.grid;
  g.t_lo = real_valued ? 0.0 : -static_cast<double>(X);
  g.t_hi = static_cast<double>(X);
  g.golden_tol = opt.golden_tol;
  g.proxy_primes = std::max<std::size_t>(1, tab.count_upto(std::min(opt.proxy_prime_cap, X)));
  const double log_proxy = std::log(static_cast<double>(tab.primes[g.proxy_primes - 1]));
  g.proxy_spacing = opt.eps / std::max(log_proxy, std::log(2.0));
  g.refine_spacing = opt.eps / std::log(static_cast<double>(X));
  g.proxy_points = static_cast<u64>(std::ceil((g.t_hi - g.t_lo) / g.proxy_spacing)) + 1;

  auto cands = detail::proxy_scan(tab, w, g.proxy_primes, g.t_lo, g.proxy_spacing,
                                  g.proxy_points, opt.candidates);
  cands.push_back({0.0, 0.0});
  g.candidates = cands.size();

  r.argmin_t = 0.0;
  r.M = F(0.0);
  g.full_evaluations = 1;
  auto clamp = [&](double t) { return std::clamp(t, g.t_lo, g.t_hi); };
  for (const auto& c : cands) {
    // Full-objective local grid across the proxy cell.
    double bt = c.t, bv = std::numeric_limits<double>::infinity();
    const double a = clamp(c.t - g.proxy_spacing), b = clamp(c.t + g.proxy_spacing);
    for (double t = a; t <= b + 0.5 * g.refine_spacing; t += g.refine_spacing) {
      const double v = F(clamp(t));
      ++g.full_evaluations;
      if (v < bv) {
        bv = v;
        bt = clamp(t);
      }
    }
    double fv = 0;
    const double tb = detail::golden_section(F, clamp(bt - g.refine_spacing),
                                             clamp(bt + g.refine_spacing), opt.golden_tol, fv,
                                             g.full_evaluations);
    if (bv <= fv)
      fv = bv;
    else
      bt = tb;
    if (fv < r.M) {
      r.M = fv;
      r.argmin_t = bt;
    }
  }
  r.M = std::max(0.0, r.M);
  return r;
}

inline BigMResult big_m(const MultFn& f, const PrimeTable& tab, u64 X,
                        const BigMOptions& opt = {}) {
  return big_m_values(f.prime_values(tab), f.is_real(), tab, X, opt);
}

inline BigMResult big_m(const MultFn& f, u64 X, const BigMOptions& opt = {}) {
  detail::require(X >= 100, "big_m requires X >= 100");
  const auto tab = PrimeTable::upto(X);
  return big_m(f, tab, X, opt);
}

struct BigMQResult {
  double M = 0;
  u64 q = 1;
  std::size_t chi_index = 0;
  double t = 0;
  std::size_t characters = 0;
};

/// M(f; X, Q): minimum of M(f conj(chi); X) over all characters of modulus q <= Q.
inline BigMQResult big_m_q(const MultFn& f, u64 X, u64 Q, const BigMOptions& opt = {}) {
  detail::require(X >= 100, "big_m_q requires X >= 100");
  detail::require(Q >= 1 && Q <= 1000, "big_m_q requires 1 <= Q <= 10^3");
  const auto tab = PrimeTable::upto(X);
  const auto fp = f.prime_values(tab);
  BigMQResult best;
  best.M = std::numeric_limits<double>::infinity();
  std::vector<cplx> w(fp.size());
  for (u64 q = 1; q <= Q; ++q) {
    const auto group = character_group(q);
    for (std::size_t c = 0; c < group.size(); ++c) {
      const auto& chi = group[c];
      for (std::size_t i = 0; i < fp.size(); ++i) w[i] = fp[i] * std::conj(chi(tab.primes[i]));
      const auto r = big_m_values(w, f.is_real() && chi.is_real(), tab, X, opt);
      ++best.characters;
      if (r.M < best.M) {
        best.M = r.M;
        best.q = q;
        best.chi_index = c;
        best.t = r.argmin_t;
      }
    }
  }
  return best;
}

/// D(f,g;X) + D(g,h;X) - D(f,h;X); nonnegative up to rounding.
inline double triangle_check(const MultFn& f, const MultFn& g, const MultFn& h,
                             const PrimeTable& tab, u64 X) {
  return distance(f, g, tab, X).value + distance(g, h, tab, X).value -
         distance(f, h, tab, X).value;
}

inline double triangle_check(const MultFn& f, const MultFn& g, const MultFn& h, u64 X) {
  detail::require(X >= 2, "triangle_check requires X >= 2");
  return triangle_check(f, g, h, PrimeTable::upto(X), X);
}

/// Both sides of the two lower bounds for D(f, chi n^{i alpha}; X) with real f.
/// The O(1) terms are reported as residuals lhs - rhs and never asserted.
struct GsChainReport {
  u64 X = 0;
  double alpha = 0;
  u64 modulus = 1;
  bool chi_squared_principal = false;
  double lhs = 0;                // D(f, chi n^{i alpha}; X)
  double first_rhs = 0;          // (1/4) sqrt(log log X)
  double first_residual = 0;
  bool first_applies = false;    // |alpha| >= 1 or chi^2 non-principal
  double d_f_chi = 0;            // D(f, chi; X)
  double second_rhs = 0;         // (1/3) D(f, chi; X)
  double second_residual = 0;
  bool second_applies = false;   // chi^2 principal and |alpha| <= 1
  double half_conjugate_gap = 0; // (1/2) D(conj(chi) n^{-i alpha}, chi n^{i alpha}; X)
};

inline GsChainReport gs_chain_report(const MultFn& f, const DirichletCharacter& chi, double alpha,
                                     const PrimeTable& tab, u64 X) {
  detail::require(f.is_real(), "gs_chain_report requires a real-valued f");
  detail::require(X >= 2, "gs_chain_report requires X >= 2");
  detail::require(std::abs(alpha) <= static_cast<double>(X), "gs_chain_report requires |alpha| <= X");
  GsChainReport r;
  r.X = X;
  r.alpha = alpha;
  r.modulus = chi.modulus();
  r.chi_squared_principal = chi.is_real();
  r.lhs = distance_twisted(f, chi, alpha, tab, X).value;
  r.first_rhs = 0.25 * std::sqrt(std::log(std::log(static_cast<double>(X))));
  r.first_residual = r.lhs - r.first_rhs;
  r.first_applies = std::abs(alpha) >= 1 || !r.chi_squared_principal;
  r.d_f_chi = distance_twisted(f, chi, 0.0, tab, X).value;
  r.second_rhs = r.d_f_chi / 3;
  r.second_residual = r.lhs - r.second_rhs;
  r.second_applies = r.chi_squared_principal && std::abs(alpha) <= 1;
  r.half_conjugate_gap = 0.5 * detail::distance_sum(tab, X, [&](std::size_t i) {
                                 const u64 p = tab.primes[i];
                                 // conj(chi) n^{-ia} * conj(chi n^{ia}) = conj(chi)^2 p^{-2ia}
                                 const cplx c = std::conj(chi(p));
                                 return c * c * std::polar(1.0, -2 * alpha * tab.log_p[i]);
                               }).value;
  return r;
}

inline GsChainReport gs_chain_report(const MultFn& f, const DirichletCharacter& chi, double alpha,
                                     u64 X) {
  detail::require(X >= 2, "gs_chain_report requires X >= 2");
  return gs_chain_report(f, chi, alpha, PrimeTable::upto(X), X);
}

/// F(1 + it) = sum_{X <= n <= 2X, n in S} f(n) / n^{1+it}.
inline cplx dirichlet_series_partial(const MultFn& f, const IntervalSystem& sys, u64 X, double t,
                                     const SieveLimits& limits = {}) {
  detail::require(X >= 1, "dirichlet_series_partial requires X >= 1");
  detail::require(2 * X <= sys.X(), "interval system must cover [X, 2X]");
  const auto in_s = s_indicator(sys, X, 2 * X, limits);
  const auto vals = f.values(X, 2 * X, limits);
  CompensatedComplexSum s;
  for (u64 n = X; n <= 2 * X; ++n) {
    if (!in_s[n - X]) continue;
    const double ln = std::log(static_cast<double>(n));
    s += vals[n - X] * std::polar(1.0 / static_cast<double>(n), -t * ln);
  }
  return s.value();
}

}  // namespace mcl

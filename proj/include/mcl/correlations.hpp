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

// Correlation sums of multiplicative functions: affine k-point sums, FFT
// two-point tables, sampled averages over shifts, the Fourier identity for
// window sums, and short-interval variances.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "mcl/characters.hpp"
#include "mcl/errors.hpp"
#include "mcl/fft.hpp"
#include "mcl/multfn.hpp"
#include "mcl/numeric.hpp"
#include "mcl/sieve.hpp"
#include "mcl/sweep.hpp"
#include "mcl/typical.hpp"

namespace mcl {

/// The linear form n -> a n + b + h.
struct AffineForm {
  u64 a = 1;
  i64 b = 0;
  i64 h = 0;
};

/// sum_{1 <= n <= X} prod_j f(a_j n + b_j + h_j), evaluated block by block.
inline cplx chowla_sum(u64 X, const std::vector<AffineForm>& forms, const MultFn& f,
                       const SieveLimits& limits = {}) {
  detail::require(X >= 1, "chowla_sum requires X >= 1");
  detail::require(!forms.empty(), "chowla_sum requires at least one form");
  for (const auto& L : forms) {
    detail::require(L.a >= 1, "forms need a >= 1");
    detail::require(static_cast<i64>(L.a) + L.b + L.h >= 1, "forms must stay positive on n >= 1");
    const long double top = static_cast<long double>(L.a) * X + L.b + L.h;
    if (top > static_cast<long double>(limits.max_hi))
      throw CapacityError("form value a X + b + h exceeds sieve capacity");
  }
  u64 amax = 1;
  for (const auto& L : forms) amax = std::max(amax, L.a);
  const u64 block = std::max<u64>(1, std::min<u64>(u64{1} << 18, limits.max_entries / amax));
  CompensatedComplexSum total;
  std::vector<std::vector<cplx>> vals(forms.size());
  for (u64 lo = 1; lo <= X; lo += block) {
    const u64 hi = std::min(X, lo + block - 1);
    for (std::size_t j = 0; j < forms.size(); ++j) {
      const auto& L = forms[j];
      const u64 c = static_cast<u64>(static_cast<i64>(L.a * lo) + L.b + L.h);
      vals[j] = f.values(c, c + L.a * (hi - lo), limits);
    }
    for (u64 n = lo; n <= hi; ++n) {
      cplx p = 1.0;
      for (std::size_t j = 0; j < forms.size(); ++j) p *= vals[j][forms[j].a * (n - lo)];
      total += p;
    }
  }
  return total.value();
}

struct ExceptionalCount {
  double delta = 0;
  u64 count = 0;           // #{1 <= h <= H : |c(h)| > delta X}
  double paper_ceiling = 0;  // H^{1 - delta/5000}, for comparison only
};

/// c(h) = sum_{n <= X - h} f(n) conj(f(n + h)) for 0 <= h <= H.
struct CorrelationReport {
  u64 X = 0;
  u64 H = 0;
  unsigned k = 2;
  std::vector<cplx> entries;
  bool integer_valued = false;
  double max_rounding_residual = 0;  // largest |FFT value - nearest integer|
  std::size_t fft_length = 0;
  std::size_t chunks = 0;

  /// Mean of |c(h)| / X over 1 <= h <= H.
  double average_abs() const {
    if (H == 0) return 0;
    CompensatedSum s;
    for (u64 h = 1; h <= H; ++h) s += std::abs(entries[h]);
    return s.value() / static_cast<double>(H) / static_cast<double>(X);
  }

  ExceptionalCount exceptional(double delta) const {
    detail::require(delta > 0 && delta <= 1, "exceptional_count requires 0 < delta <= 1");
    ExceptionalCount e;
    e.delta = delta;
    const double thr = delta * static_cast<double>(X);
    for (u64 h = 1; h <= H; ++h) e.count += std::abs(entries[h]) > thr;
    e.paper_ceiling = std::pow(static_cast<double>(H), 1.0 - delta / 5000.0);
    return e;
  }
};

inline ExceptionalCount exceptional_count(const CorrelationReport& r, double delta) {
  return r.exceptional(delta);
}

/// FFT two-point table. The index range [1, X] is cut into chunks of length
/// B with one FFT of length N >= B + H each. Sign functions are integer
/// valued, so their chunk results are rounded to integers and summed exactly.
inline CorrelationReport two_point_table(u64 X, u64 H, const MultFn& f,
                                         const SieveLimits& limits = {}) {
  detail::require(X >= 1 && X <= 1'000'000'000, "two_point_table requires 1 <= X <= 10^9");
  detail::require(H <= 1'000'000, "two_point_table requires H <= 10^6");
  detail::require(H < X, "two_point_table requires H < X");
  CorrelationReport r;
  r.X = X;
  r.H = H;
  r.integer_valued = f.tag() != MultFn::Tag::general;
  std::size_t n = std::bit_ceil(std::max<std::size_t>(u64{1} << 18, 2 * (H + 1)));
  // Three complex buffers of length N (two FFTW, one staging).
  if (3 * n > limits.max_entries) n = std::bit_ceil(2 * (H + 1));
  if (3 * n > limits.max_entries) throw CapacityError("shift range too large for the memory budget");
  const u64 B = n - H;
  r.fft_length = n;

  CrossCorrelator xc(n);
  std::vector<i64> exact(r.integer_valued ? H + 1 : 0, 0);
  std::vector<CompensatedComplexSum> acc(r.integer_valued ? 0 : H + 1);
  std::vector<cplx> part(H + 1);
  for (u64 s = 1; s <= X; s += B) {
    const u64 a_end = std::min(X, s + B - 1);
    const u64 b_end = std::min(X, a_end + H);
    const auto v = f.values(s, b_end, limits);
    xc.correlate(v.data(), a_end - s + 1, v.data(), v.size(), H, part.data());
    ++r.chunks;
    for (u64 h = 0; h <= H; ++h) {
      if (r.integer_valued) {
        const double re = std::nearbyint(part[h].real());
        r.max_rounding_residual = std::max(
            {r.max_rounding_residual, std::abs(part[h].real() - re), std::abs(part[h].imag())});
        exact[h] += static_cast<i64>(re);
      } else {
        acc[h] += part[h];
      }
    }
  }
  detail::require(r.max_rounding_residual < 0.25, "FFT rounding residual too large");
  r.entries.resize(H + 1);
  for (u64 h = 0; h <= H; ++h)
    r.entries[h] = r.integer_valued ? cplx(static_cast<double>(exact[h])) : acc[h].value();
  return r;
}

struct AveragedChowla {
  double mean = 0;            // average of |sum_n f(n) prod_j f(n + h_j)| / X
  double standard_error = 0;  // 0 when every tuple is enumerated
  std::size_t tuples = 0;
  bool enumerated = false;
};

/// Average over shift tuples (h_2, ..., h_k) of distinct integers in [1, H] of
/// |sum_{n <= X} f(n) f(n + h_2) ... f(n + h_k)| / X. For k = 2 all shifts are
/// enumerated through two_point_table; for k >= 3 `samples` distinct tuples
/// are drawn without replacement.
inline AveragedChowla averaged_chowla(u64 X, u64 H, unsigned k, std::size_t samples,
                                      std::uint64_t seed, const MultFn& f = fns::liouville(),
                                      const SieveLimits& limits = {}) {
  detail::require(k >= 2, "averaged_chowla requires k >= 2");
  detail::require(samples >= 30, "averaged_chowla requires at least 30 samples");
  detail::require(H >= k - 1, "need at least k - 1 distinct shifts in [1, H]");
  AveragedChowla out;
  if (k == 2) {
    const auto t = two_point_table(X, H, f, limits);
    out.mean = t.average_abs();
    out.tuples = H;
    out.enumerated = true;
    return out;
  }
  // Tuples of distinct shifts, sorted; the product is symmetric in them.
  long double space = 1;
  for (unsigned i = 0; i < k - 1; ++i) space = space * static_cast<long double>(H - i) / (i + 1);
  const auto vals = f.values(1, X + H, limits);
  auto tuple_mean = [&](const std::vector<u64>& tuple) {
    CompensatedComplexSum c;
    for (u64 n = 1; n <= X; ++n) {
      cplx p = vals[n - 1];
      for (u64 h : tuple) p *= vals[n + h - 1];
      c += p;
    }
    return std::abs(c.value()) / static_cast<double>(X);
  };
  CompensatedSum s1, s2;
  std::size_t m = 0;
  auto record = [&](double v) {
    s1 += v;
    s2 += v * v;
    ++m;
  };
  if (space <= static_cast<long double>(samples)) {
    // Few enough tuples to enumerate them all in lexicographic order.
    std::vector<u64> t(k - 1);
    for (unsigned i = 0; i < k - 1; ++i) t[i] = i + 1;
    for (;;) {
      record(tuple_mean(t));
      int i = static_cast<int>(k) - 2;
      while (i >= 0 && t[static_cast<std::size_t>(i)] == H - (k - 2 - static_cast<u64>(i))) --i;
      if (i < 0) break;
      ++t[static_cast<std::size_t>(i)];
      for (std::size_t j = static_cast<std::size_t>(i) + 1; j < t.size(); ++j) t[j] = t[j - 1] + 1;
    }
    out.enumerated = true;
  } else {
    auto rng = make_rng(seed, {0xC0, k, H});
    std::uniform_int_distribution<u64> pick(1, H);
    std::set<std::vector<u64>> seen;
    while (seen.size() < samples) {
      std::set<u64> hs;
      while (hs.size() < k - 1) hs.insert(pick(rng));
      std::vector<u64> tuple(hs.begin(), hs.end());
      if (seen.insert(tuple).second) record(tuple_mean(tuple));
    }
  }
  const double dm = static_cast<double>(m);
  out.mean = s1.value() / dm;
  out.tuples = m;
  if (!out.enumerated && m > 1) {
    const double var = std::max(0.0, (s2.value() - dm * out.mean * out.mean) / (dm - 1));
    out.standard_error = std::sqrt(var / dm);
  }
  return out;
}

/// A finitely supported function n -> value.
using FiniteFn = std::map<i64, cplx>;

struct FourierCheck {
  double lhs = 0;
  double rhs = 0;
  double rel_err = 0;
  std::size_t points = 0;  // alpha quadrature nodes
  i64 degree = 0;          // trigonometric degree d of the inner integral
  // Convergence of the trapezoid rule: 2d nodes alias the top coefficient of
  // the squared integrand, 4d nodes (step halved) integrate it exactly.
  std::size_t coarse_points = 0;
  double coarse_rel_err = 0;
  double fine_rel_err = 0;
  bool converged = false;
};

namespace detail {

// I(alpha) = int_R |sum_{x <= n <= x+H} f(n) e(alpha n)|^2 dx via the sweep.
inline double window_energy(const std::vector<cplx>& dense, i64 n_lo, double H, double alpha,
                            std::vector<cplx>& scratch) {
  scratch.resize(dense.size());
  for (std::size_t i = 0; i < dense.size(); ++i)
    scratch[i] = dense[i] * e(alpha * static_cast<double>(n_lo + static_cast<i64>(i)));
  CompensatedSum acc;
  window_sweep(n_lo, scratch.data(), scratch.size(), H, static_cast<double>(n_lo) - H - 1,
               static_cast<double>(n_lo + static_cast<i64>(dense.size())) + 1,
               [&](cplx s, double len) { acc += std::norm(s) * len; });
  return acc.value();
}

inline double trapezoid_energy_sq(const std::vector<cplx>& dense, i64 n_lo, double H,
                                  std::size_t N) {
  std::vector<cplx> scratch;
  CompensatedSum s;
  for (std::size_t k = 0; k < N; ++k) {
    const double I = window_energy(dense, n_lo, H, static_cast<double>(k) / static_cast<double>(N),
                                   scratch);
    s += I * I;
  }
  return s.value() / static_cast<double>(N);
}

}  // namespace detail

/// Both sides of
///   int_T (int_R |sum_{x<=n<=x+H} f(n) e(alpha n)|^2 dx)^2 dalpha
///     = sum_{|h| < H} (H - |h|)^2 |sum_n f(n) conj(f(n + h))|^2.
inline FourierCheck fourier_identity_check(const FiniteFn& f, double H, double quad_step) {
  detail::require(f.size() <= 1000, "support size capped at 10^3");
  detail::require(H > 0, "H must be positive");
  detail::require(quad_step > 0 && quad_step <= 1, "quad_step must lie in (0, 1]");
  FourierCheck r;
  FiniteFn support;
  for (const auto& [n, v] : f)
    if (v != cplx{}) support.emplace(n, v);
  if (support.empty()) {
    r.converged = true;
    return r;
  }
  const i64 n_lo = support.begin()->first, n_hi = support.rbegin()->first;
  std::vector<cplx> dense(static_cast<std::size_t>(n_hi - n_lo + 1));
  for (const auto& [n, v] : support) dense[static_cast<std::size_t>(n - n_lo)] = v;

  CompensatedSum rhs;
  for (i64 h = -(n_hi - n_lo); h <= n_hi - n_lo; ++h) {
    const double w = H - static_cast<double>(std::abs(h));
    if (w <= 0) continue;
    CompensatedComplexSum a;
    for (const auto& [n, v] : support) {
      const auto it = support.find(n + h);
      if (it != support.end()) a += v * std::conj(it->second);
    }
    rhs += w * w * std::norm(a.value());
  }
  r.rhs = rhs.value();

  r.points = static_cast<std::size_t>(std::ceil(1.0 / quad_step - 1e-9));
  r.lhs = detail::trapezoid_energy_sq(dense, n_lo, H, r.points);
  r.rel_err = std::abs(r.lhs - r.rhs) / r.rhs;

  r.degree = std::min<i64>(n_hi - n_lo, static_cast<i64>(std::ceil(H)) - 1);
  r.coarse_points = static_cast<std::size_t>(std::max<i64>(1, 2 * r.degree));
  r.coarse_rel_err =
      std::abs(detail::trapezoid_energy_sq(dense, n_lo, H, r.coarse_points) - r.rhs) / r.rhs;
  r.fine_rel_err =
      std::abs(detail::trapezoid_energy_sq(dense, n_lo, H, 2 * r.coarse_points) - r.rhs) / r.rhs;
  // Below 1e-12 both rules are exact up to rounding and there is nothing left to reduce.
  r.converged = 4 * r.fine_rel_err <= r.coarse_rel_err || r.coarse_rel_err <= 1e-12;
  return r;
}

struct VarianceReport {
  double value = 0;
  u64 X = 0;
  u64 h = 0;
  bool restricted = false;
  bool hypothesis_warning = false;  // restriction with Q1 > h
};

namespace detail {

inline double window_mean_square(u64 X, u64 h, const std::vector<double>& g) {
  // g holds the summand on [X, 2X + h].
  CompensatedSum acc;
  window_sweep(static_cast<i64>(X), g.data(), g.size(), static_cast<double>(h),
               static_cast<double>(X), static_cast<double>(2 * X),
               [&](double s, double len) { acc += s * s * len; });
  const double hh = static_cast<double>(h);
  return acc.value() / (hh * hh) / static_cast<double>(X);
}

inline std::vector<double> real_values(const MultFn& f, u64 lo, u64 hi, const SieveLimits& limits) {
  detail::require(f.is_real(), "short-interval variance is implemented for real f");
  const auto v = f.values(lo, hi, limits);
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].real();
  return out;
}

}  // namespace detail

/// (1/X) int_X^{2X} |(1/h) sum_{x <= n <= x+h} f(n)|^2 dx, exact up to
/// rounding. With a restriction f(n) is replaced by 1_S(n) f(n).
inline VarianceReport short_interval_variance(const MultFn& f, u64 X, u64 h,
                                              const IntervalSystem* restrict = nullptr,
                                              const SieveLimits& limits = {}) {
  detail::require(h >= 10 && h <= X, "short_interval_variance requires 10 <= h <= X");
  if (3 * X > limits.max_hi) throw CapacityError("3X exceeds sieve capacity");
  VarianceReport r;
  r.X = X;
  r.h = h;
  auto g = detail::real_values(f, X, 2 * X + h, limits);
  if (restrict) {
    detail::require(2 * X + h <= restrict->X(), "interval system must cover [X, 2X + h]");
    r.restricted = true;
    r.hypothesis_warning = restrict->Q1() > h;
    const auto in_s = s_indicator(*restrict, X, 2 * X + h, limits);
    for (std::size_t i = 0; i < g.size(); ++i)
      if (!in_s[i]) g[i] = 0;
  }
  r.value = detail::window_mean_square(X, h, g);
  return r;
}

/// Restricted versus unrestricted variance. Writing f 1_S = f - f 1_{not S},
/// Minkowski gives sqrt(V_S) <= sqrt(V) + sqrt(C) where C is the mean square
/// of (1/h) #{n in window : n not in S}, the deficit term.
struct RestrictionComparison {
  double restricted = 0;
  double unrestricted = 0;
  double complement = 0;
  double minkowski_bound = 0;
  bool within_bound = false;
  bool hypothesis_warning = false;
};

inline RestrictionComparison compare_restricted_variance(const MultFn& f, const IntervalSystem& sys,
                                                         u64 X, u64 h,
                                                         const SieveLimits& limits = {}) {
  RestrictionComparison c;
  const auto vs = short_interval_variance(f, X, h, &sys, limits);
  c.restricted = vs.value;
  c.hypothesis_warning = vs.hypothesis_warning;
  c.unrestricted = short_interval_variance(f, X, h, nullptr, limits).value;
  const auto in_s = s_indicator(sys, X, 2 * X + h, limits);
  std::vector<double> miss(in_s.size());
  for (std::size_t i = 0; i < in_s.size(); ++i) miss[i] = in_s[i] ? 0.0 : 1.0;
  c.complement = detail::window_mean_square(X, h, miss);
  const double b = std::sqrt(c.unrestricted) + std::sqrt(c.complement);
  c.minkowski_bound = b * b;
  c.within_bound = c.restricted <= c.minkowski_bound * (1 + 1e-12);
  return c;
}

}  // namespace mcl

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

// A multiplicative g that follows n^{i s_m} on ever larger scales.
//
// g(p) = 1 for p <= t_1. Stage m finds s_{m+1} > t_m with
// |p^{i s_{m+1}} - g(p)| <= eps for every p <= t_m, sets
// t_{m+1} = min(s_{m+1}^2, cap) and g(p) = p^{i s_{m+1}} on (t_m, t_{m+1}].
// Primes past the last scale keep following the last frequency. Then
// g(n) = mu(n)^2 prod_{p | n} g(p).

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mcl/characters.hpp"
#include "mcl/errors.hpp"
#include "mcl/multfn.hpp"
#include "mcl/numeric.hpp"
#include "mcl/sieve.hpp"

namespace mcl {

struct AlignmentTarget {
  u64 p;
  cplx target;  // unimodular
};

struct AlignmentResult {
  bool found = false;
  double s = 0;             // aligned frequency when found
  double eps_achieved = 0;  // max_p |p^{is} - target| at s
  double best_s = 0;        // best grid point seen (useful on failure)
  double best_eps = std::numeric_limits<double>::infinity();
  double grid_step = 0;
  u64 points = 0;
};

namespace detail {

inline double alignment_error(const std::vector<AlignmentTarget>& t, double s) {
  double worst = 0;
  for (const auto& a : t)
    worst = std::max(worst,
                     std::abs(std::polar(1.0, s * std::log(static_cast<double>(a.p))) - a.target));
  return worst;
}

}  // namespace detail

/// Smallest grid point s in [s_lo, s_hi] whose local refinement meets
/// max_p |p^{is} - target(p)| <= eps. The grid step defaults to
/// eps / (2 ln p_max); since |d/ds p^{is}| = ln p, the true optimum lies
/// within eps/4 of the nearest grid value, so grid points within 1.25 eps
/// are refined by golden-section search on the max deviation.
inline AlignmentResult find_alignment(const std::vector<AlignmentTarget>& targets, double s_lo,
                                      double s_hi, double eps, double step = 0) {
  detail::require(!targets.empty(), "find_alignment needs at least one target");
  detail::require(s_hi > s_lo, "find_alignment requires s_hi > s_lo");
  detail::require(eps > 0, "find_alignment requires eps > 0");
  u64 pmax = 2;
  for (const auto& t : targets) {
    detail::require(t.p >= 2, "targets must be primes");
    detail::require(std::abs(std::abs(t.target) - 1.0) <= 1e-12, "targets must be unimodular");
    pmax = std::max(pmax, t.p);
  }
  AlignmentResult r;
  const double lmax = std::log(static_cast<double>(pmax));
  r.grid_step = step > 0 ? step : eps / (2 * lmax);
  const std::size_t k = targets.size();
  std::vector<double> lp(k);
  std::vector<cplx> z(k), rot(k), conj_t(k);
  for (std::size_t i = 0; i < k; ++i) {
    lp[i] = std::log(static_cast<double>(targets[i].p));
    conj_t[i] = std::conj(targets[i].target);
    rot[i] = std::polar(1.0, r.grid_step * lp[i]);
  }
  const auto n = static_cast<u64>(std::floor((s_hi - s_lo) / r.grid_step)) + 1;
  const double slack = 1.25 * eps;
  constexpr u64 kResync = 1024;
  for (u64 j = 0; j < n; ++j) {
    const double s = s_lo + r.grid_step * static_cast<double>(j);
    if (j % kResync == 0)
      for (std::size_t i = 0; i < k; ++i) z[i] = std::polar(1.0, s * lp[i]) * conj_t[i];
    double worst = 0;
    for (std::size_t i = 0; i < k; ++i) {
      worst = std::max(worst, std::norm(z[i] - 1.0));
      z[i] *= rot[i];
    }
    ++r.points;
    const double dev = std::sqrt(worst);
    if (dev < r.best_eps) {
      r.best_eps = dev;
      r.best_s = s;
    }
    if (dev > slack) continue;
    // Golden-section refinement of the max deviation around the grid point.
    double a = std::max(s_lo, s - r.grid_step), b = std::min(s_hi, s + r.grid_step);
    const double g = (std::sqrt(5.0) - 1) / 2;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = detail::alignment_error(targets, c), fd = detail::alignment_error(targets, d);
    for (int it = 0; it < 80 && b - a > 1e-12 * std::max(1.0, std::abs(s)); ++it) {
      if (fc <= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - g * (b - a);
        fc = detail::alignment_error(targets, c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + g * (b - a);
        fd = detail::alignment_error(targets, d);
      }
    }
    double best_s = fc <= fd ? c : d;
    double best = std::min(fc, fd);
    const double at_grid = detail::alignment_error(targets, s);
    if (at_grid <= best) {
      best = at_grid;
      best_s = s;
    }
    if (best < r.best_eps) {
      r.best_eps = best;
      r.best_s = best_s;
    }
    if (best <= eps) {
      r.found = true;
      r.s = best_s;
      r.eps_achieved = best;
      return r;
    }
  }
  return r;
}

/// Raised when a stage finds no aligned frequency below s_cap.
class AlignmentError : public CapacityError {
 public:
  AlignmentError(int stage, double best_eps, double best_s, double s_cap)
      : CapacityError("no alignment at stage " + std::to_string(stage) + " below s = " +
                      std::to_string(s_cap) + " (best max deviation " +
                      std::to_string(best_eps) + " at s = " + std::to_string(best_s) + ")"),
        stage_(stage),
        best_eps_(best_eps),
        best_s_(best_s) {}

  int stage() const { return stage_; }
  double best_eps() const { return best_eps_; }
  double best_s() const { return best_s_; }

 private:
  int stage_;
  double best_eps_;
  double best_s_;
};

struct AlignmentStage {
  int m = 0;
  u64 t_m = 0;
  double s = 0;  // s_{m+1}
  double eps_achieved = 0;
  u64 t_next = 0;  // t_{m+1}
  bool capped = false;
  std::size_t primes_aligned = 0;
  u64 grid_points = 0;
};

struct CounterexampleOptions {
  u64 cap = 1'000'000'000;   // ceiling on t_{m+1}
  double s_cap = 1'000'000;  // search range [t_m, s_cap]
};

/// The prime-value rule of the construction.
class CounterexampleG {
 public:
  CounterexampleG(u64 t1, std::vector<AlignmentStage> stages)
      : t1_(t1), stages_(std::move(stages)) {}

  u64 t1() const { return t1_; }
  const std::vector<AlignmentStage>& stages() const { return stages_; }

  /// Frequency in force at p, or none (g(p) = 1) for p <= t_1.
  const AlignmentStage* stage_of(u64 p) const {
    if (p <= t1_ || stages_.empty()) return nullptr;
    for (const auto& st : stages_)
      if (p <= st.t_next) return &st;
    return &stages_.back();
  }

  cplx at_prime(u64 p) const {
    const auto* st = stage_of(p);
    return st ? std::polar(1.0, st->s * std::log(static_cast<double>(p))) : cplx{1.0};
  }

  MultFn as_multfn() const {
    auto self = std::make_shared<const CounterexampleG>(*this);
    if (stages_.empty()) return fns::mu_squared();
    return fns::squarefree_supported("counterexample", [self](u64 p) { return self->at_prime(p); });
  }

 private:
  u64 t1_;
  std::vector<AlignmentStage> stages_;
};

struct Counterexample {
  CounterexampleG rule;
  MultFn g;
};

/// As build_counterexample but without the eps <= 0.1 ceiling, for scaled-down demonstrations.
inline Counterexample build_counterexample_unchecked(u64 t1, int stages, double eps,
                                                     const CounterexampleOptions& opt = {}) {
  detail::require(t1 >= 2 && stages >= 0 && eps > 0, "invalid counterexample parameters");
  std::vector<AlignmentStage> done;
  u64 t = t1;
  for (int m = 1; m <= stages; ++m) {
    const CounterexampleG partial(t1, done);
    std::vector<AlignmentTarget> targets;
    for (u64 p : small_primes(t)) targets.push_back({p, partial.at_prime(p)});
    const double lo = static_cast<double>(t);
    if (lo >= opt.s_cap) throw AlignmentError(m, std::numeric_limits<double>::infinity(), lo, opt.s_cap);
    const auto a = find_alignment(targets, lo, opt.s_cap, eps,
                                  eps / (2 * std::log(static_cast<double>(t))));
    if (!a.found) throw AlignmentError(m, a.best_eps, a.best_s, opt.s_cap);
    AlignmentStage st;
    st.m = m;
    st.t_m = t;
    st.s = a.s;
    st.eps_achieved = a.eps_achieved;
    const long double sq = static_cast<long double>(a.s) * a.s;
    st.capped = sq > static_cast<long double>(opt.cap);
    st.t_next = st.capped ? opt.cap : static_cast<u64>(std::floor(sq));
    st.primes_aligned = targets.size();
    st.grid_points = a.points;
    done.push_back(st);
    t = st.t_next;
  }
  CounterexampleG rule(t1, std::move(done));
  auto g = rule.as_multfn();
  return {std::move(rule), std::move(g)};
}

inline Counterexample build_counterexample(u64 t1, int stages, double eps,
                                           const CounterexampleOptions& opt = {}) {
  detail::require(t1 >= 10, "build_counterexample requires t1 >= 10");
  detail::require(stages >= 0, "stages must be nonnegative");
  detail::require(eps > 0 && eps <= 0.1 + 1e-15, "eps must lie in (0, 0.1]");
  return build_counterexample_unchecked(t1, stages, eps, opt);
}

/// |sum_{n <= N} g(n) conj(g(n + 1))| / N, evaluated block by block.
inline double consecutive_correlation(const MultFn& g, u64 N, const SieveLimits& limits = {}) {
  detail::require(N >= 1, "consecutive_correlation requires N >= 1");
  const u64 block = std::max<u64>(2, std::min<u64>(u64{1} << 20, limits.max_entries / 2));
  CompensatedComplexSum s;
  for (u64 lo = 1; lo <= N; lo += block) {
    const u64 hi = std::min(N, lo + block - 1);
    const auto v = g.values(lo, hi + 1, limits);
    for (u64 n = lo; n <= hi; ++n) s += v[n - lo] * std::conj(v[n - lo + 1]);
  }
  return std::abs(s.value()) / static_cast<double>(N);
}

struct DivergenceRow {
  u64 modulus = 1;
  std::size_t chi_index = 0;
  double t = 0;
  std::vector<double> partial;  // one per X in the list
};

/// sum_{p <= X} (1 - Re(g(p) conj(chi(p)) p^{-it})) / p for every (chi, t) and X.
inline std::vector<DivergenceRow> divergence_profile(
    const MultFn& g, const std::vector<u64>& X_list, const std::vector<double>& t_grid,
    const std::vector<DirichletCharacter>& chars, const SieveLimits& limits = {}) {
  detail::require(!X_list.empty(), "X_list must not be empty");
  for (std::size_t i = 0; i < X_list.size(); ++i) {
    detail::require(X_list[i] >= 2, "X values must be >= 2");
    if (i) detail::require(X_list[i] > X_list[i - 1], "X_list must be increasing");
  }
  const auto tab = PrimeTable::upto(X_list.back(), limits);
  const auto gp = g.prime_values(tab);
  std::vector<DivergenceRow> rows;
  for (std::size_t c = 0; c < chars.size(); ++c)
    for (double t : t_grid) {
      DivergenceRow row;
      row.modulus = chars[c].modulus();
      row.chi_index = c;
      row.t = t;
      CompensatedSum s;
      std::size_t i = 0;
      for (u64 X : X_list) {
        for (; i < tab.size() && tab.primes[i] <= X; ++i) {
          const cplx w = gp[i] * std::conj(chars[c](tab.primes[i])) *
                         std::polar(1.0, -t * tab.log_p[i]);
          s += (1.0 - w.real()) * tab.inv_p[i];
        }
        row.partial.push_back(s.value());
      }
      rows.push_back(std::move(row));
    }
  return rows;
}

}  // namespace mcl

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

// Event sweep over window sums S(x) = sum_{x <= n <= x + H} g(n).
//
// S is piecewise constant in x with breakpoints at n - H (n enters) and at n
// (n leaves). Both event streams are already sorted when n runs over a
// contiguous range, so the sweep is a two-pointer merge.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "mcl/errors.hpp"
#include "mcl/sieve.hpp"

namespace mcl {

/// Calls seg(S, length) for every maximal piece of [x_lo, x_hi] on which S is
/// constant, with g(n) = g[n - n_lo] for n_lo <= n < n_lo + len and 0 elsewhere.
template <class V, class Seg>
void window_sweep(i64 n_lo, const V* g, std::size_t len, double H, double x_lo, double x_hi,
                  Seg&& seg) {
  detail::require(H >= 0, "window length must be nonnegative");
  detail::require(x_lo <= x_hi, "sweep range must be ordered");
  V s{};
  std::size_t in = 0, out = 0;  // next entering / leaving index
  auto enter_at = [&](std::size_t k) { return static_cast<double>(n_lo + static_cast<i64>(k)) - H; };
  auto leave_at = [&](std::size_t k) { return static_cast<double>(n_lo + static_cast<i64>(k)); };

  // State at x_lo: n counted iff n - H <= x_lo <= n.
  while (in < len && enter_at(in) <= x_lo) s += g[in++];
  while (out < len && leave_at(out) < x_lo) s -= g[out++];

  const double inf = std::numeric_limits<double>::infinity();
  double cur = x_lo;
  while (cur < x_hi) {
    const double ne = in < len ? enter_at(in) : inf;
    const double nl = out < len ? leave_at(out) : inf;
    const double next = std::min({ne, nl, x_hi});
    if (next > cur) seg(s, next - cur);
    cur = next;
    if (cur >= x_hi) break;
    // Leaving at x = n keeps n through x = n, which has measure zero.
    if (nl <= ne) {
      s -= g[out++];
    } else {
      s += g[in++];
    }
  }
}

}  // namespace mcl

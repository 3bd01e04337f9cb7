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

#include <fftw3.h>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <new>
#include <vector>

#include "mcl/errors.hpp"

namespace mcl {

/// Linear cross-correlation r(h) = sum_i a_i conj(b_{i+h}) through one
/// length-N FFTW transform pair. Plans use FFTW_ESTIMATE so results do not
/// depend on planner timing.
class CrossCorrelator {
 public:
  explicit CrossCorrelator(std::size_t n) : n_(n) {
    detail::require(n >= 2, "FFT length must be at least 2");
    a_ = fftw_alloc_complex(n);
    b_ = fftw_alloc_complex(n);
    if (!a_ || !b_) {
      release();
      throw std::bad_alloc();
    }
    const int len = static_cast<int>(n);
    fa_ = fftw_plan_dft_1d(len, a_, a_, FFTW_FORWARD, FFTW_ESTIMATE);
    fb_ = fftw_plan_dft_1d(len, b_, b_, FFTW_FORWARD, FFTW_ESTIMATE);
    inv_ = fftw_plan_dft_1d(len, a_, a_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  CrossCorrelator(const CrossCorrelator&) = delete;
  CrossCorrelator& operator=(const CrossCorrelator&) = delete;
  ~CrossCorrelator() { release(); }

  std::size_t size() const { return n_; }

  /// Writes r(0..H) into out. Requires na + H <= N and nb <= N so that the
  /// circular correlation never wraps.
  void correlate(const std::complex<double>* a, std::size_t na, const std::complex<double>* b,
                 std::size_t nb, std::size_t H, std::complex<double>* out) {
    detail::require(na + H <= n_ && nb <= n_, "correlation does not fit the FFT length");
    auto* A = reinterpret_cast<std::complex<double>*>(a_);
    auto* B = reinterpret_cast<std::complex<double>*>(b_);
    std::fill(std::copy(a, a + na, A), A + n_, std::complex<double>{});
    std::fill(std::copy(b, b + nb, B), B + n_, std::complex<double>{});
    fftw_execute(fa_);
    fftw_execute(fb_);
    // sum_i conj(a_i) b_{i+h} = IDFT(conj(A) B)[h] / N; r(h) is its conjugate.
    for (std::size_t k = 0; k < n_; ++k) A[k] = std::conj(A[k]) * B[k];
    fftw_execute(inv_);
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t h = 0; h <= H; ++h) out[h] = std::conj(A[h]) * scale;
  }

 private:
  void release() {
    if (fa_) fftw_destroy_plan(fa_);
    if (fb_) fftw_destroy_plan(fb_);
    if (inv_) fftw_destroy_plan(inv_);
    if (a_) fftw_free(a_);
    if (b_) fftw_free(b_);
    fa_ = fb_ = inv_ = nullptr;
    a_ = b_ = nullptr;
  }

  std::size_t n_;
  fftw_complex* a_ = nullptr;
  fftw_complex* b_ = nullptr;
  fftw_plan fa_ = nullptr;
  fftw_plan fb_ = nullptr;
  fftw_plan inv_ = nullptr;
};

}  // namespace mcl

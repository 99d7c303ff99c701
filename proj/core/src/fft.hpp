// Copyright 2026 The phasefilter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Thin FFTW wrapper used by the transforms. Not part of the installed API.

#ifndef PHASEFILTER_SRC_FFT_HPP_
#define PHASEFILTER_SRC_FFT_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace phasefilter::detail {

using cplx = std::complex<double>;

enum class Direction { kForward, kBackward };

/// Unnormalized in-place DFT of data.size()/len contiguous rows of length len.
/// Forward uses exp(-2 pi i k t / len), backward exp(+2 pi i k t / len).
void dft_rows(std::span<cplx> data, std::size_t len, Direction dir);

/// Centered DFT of length M (M even):
///   X[m] = sum_a x[a] exp(-/+ 2 pi i (m - M/2)(a - a0) / M),  m in [0, M).
/// The input is zero-padded; x.size() must not exceed M.
std::vector<cplx> centered_dft(std::span<const cplx> x, long a0, std::size_t M, Direction dir);

/// Linear convolution along the row index of a row-major (rows x cols) array,
/// evaluated at output rows j in [0, rows):
///   out[j][c] = sum_i a[i][c] * b[j - i + shift][c]
/// with b zero outside [0, rows). Computed with zero-padded FFTs.
std::vector<cplx> convolve_columns(std::span<const cplx> a, std::span<const cplx> b,
                                   std::size_t rows, std::size_t cols, long shift);

/// Transpose of a row-major (rows x cols) array.
std::vector<cplx> transpose(std::span<const cplx> a, std::size_t rows, std::size_t cols);

}  // namespace phasefilter::detail

#endif  // PHASEFILTER_SRC_FFT_HPP_

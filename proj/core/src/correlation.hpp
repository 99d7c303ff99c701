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

// Correlation-domain view of the discrete WDF, shared by the transforms and the
// phase-space filters. Row j of a map is A * DFT_s[c_j[s] (-1)^s] with
// A = 2 dq / h; c_j[s] is stored at column (s mod n).

#ifndef PHASEFILTER_SRC_CORRELATION_HPP_
#define PHASEFILTER_SRC_CORRELATION_HPP_

#include <functional>
#include <vector>

#include "fft.hpp"
#include "phasefilter/wigner.hpp"

namespace phasefilter::detail {

inline std::size_t wrap(long s, std::size_t n) {
  const long m = static_cast<long>(n);
  return static_cast<std::size_t>(((s % m) + m) % m);
}

/// c_j[s] = conj(a[j - s]) b[j + s], zero when an index leaves the grid.
std::vector<cplx> correlation_of(const std::vector<cplx>& a, const std::vector<cplx>& b);

/// Recovers c_j[s] from a real map.
std::vector<cplx> to_correlation(const WignerMap& w);

/// Builds the real map whose correlation is `corr`. Throws AliasingError when
/// the imaginary part exceeds 1e-9 of the peak.
WignerMap from_correlation(const SpatialGrid& grid, std::vector<cplx> corr, const char* what);

/// Complex map for a (generally non-Hermitian) correlation.
std::vector<cplx> transform_correlation(const SpatialGrid& grid, std::vector<cplx> corr);

/// Moves row j along p by shift(j) momentum units, exactly (correlation phase).
WignerMap shift_rows_p(const WignerMap& w, const std::function<double(std::size_t)>& shift);

/// Moves column k along q by shift(k) length units: out(q) = in(q - shift).
/// Band-limited fractional shift on a zero-padded length-2n column.
WignerMap shift_columns_q(const WignerMap& w, const std::function<double(std::size_t)>& shift);

}  // namespace phasefilter::detail

#endif  // PHASEFILTER_SRC_CORRELATION_HPP_

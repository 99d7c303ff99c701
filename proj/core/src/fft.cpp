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

#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace phasefilter::detail {
namespace {

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};

}  // namespace

void dft_rows(std::span<cplx> data, std::size_t len, Direction dir) {
  if (len == 0 || data.empty()) return;
  if (data.size() % len != 0) throw std::logic_error("dft_rows: size is not a multiple of len");
  const int n = static_cast<int>(len);
  const int howmany = static_cast<int>(data.size() / len);

  // Aligned scratch keeps FFTW's codelet choice (and so the rounding) identical
  // between calls, which the bitwise-determinism guarantees rely on.
  std::unique_ptr<fftw_complex, FftwFree> buf(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * data.size())));
  if (!buf) throw std::bad_alloc();

  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_many_dft(1, &n, howmany, buf.get(), nullptr, 1, n, buf.get(), nullptr, 1, n,
                              dir == Direction::kForward ? FFTW_FORWARD : FFTW_BACKWARD,
                              FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw std::runtime_error("fftw_plan_many_dft failed");

  std::memcpy(buf.get(), data.data(), sizeof(cplx) * data.size());
  fftw_execute(plan);
  std::memcpy(static_cast<void*>(data.data()), buf.get(), sizeof(cplx) * data.size());

  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plan);
}

std::vector<cplx> centered_dft(std::span<const cplx> x, long a0, std::size_t M, Direction dir) {
  if (M % 2 != 0 || x.size() > M) throw std::logic_error("centered_dft: bad length");
  std::vector<cplx> buf(M, cplx{0.0, 0.0});
  const long m = static_cast<long>(M);
  for (std::size_t a = 0; a < x.size(); ++a) {
    const long t = static_cast<long>(a) - a0;
    const long idx = ((t % m) + m) % m;
    // exp(-/+ 2 pi i (-M/2) t / M) = (-1)^t
    buf[static_cast<std::size_t>(idx)] = (t % 2 == 0) ? x[a] : -x[a];
  }
  dft_rows(buf, M, dir);
  return buf;
}

std::vector<cplx> transpose(std::span<const cplx> a, std::size_t rows, std::size_t cols) {
  std::vector<cplx> out(a.size());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out[c * rows + r] = a[r * cols + c];
  }
  return out;
}

std::vector<cplx> convolve_columns(std::span<const cplx> a, std::span<const cplx> b,
                                   std::size_t rows, std::size_t cols, long shift) {
  // Work on transposed data so each column becomes a contiguous, zero-padded row.
  const std::size_t L = 2 * rows;
  std::vector<cplx> fa(cols * L, cplx{0.0, 0.0});
  std::vector<cplx> fb(cols * L, cplx{0.0, 0.0});
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      fa[c * L + r] = a[r * cols + c];
      fb[c * L + r] = b[r * cols + c];
    }
  }
  dft_rows(fa, L, Direction::kForward);
  dft_rows(fb, L, Direction::kForward);
  const double scale = 1.0 / static_cast<double>(L);
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i] * scale;
  dft_rows(fa, L, Direction::kBackward);

  // fa now holds y[m] = sum_i a[i] b[m - i] for m in [0, 2 rows - 1); out[j] = y[j + shift].
  std::vector<cplx> out(rows * cols, cplx{0.0, 0.0});
  const long rows_l = static_cast<long>(rows);
  for (std::size_t c = 0; c < cols; ++c) {
    for (long j = 0; j < rows_l; ++j) {
      const long m = j + shift;
      if (m < 0 || m >= 2 * rows_l - 1) continue;
      out[static_cast<std::size_t>(j) * cols + c] = fa[c * L + static_cast<std::size_t>(m)];
    }
  }
  return out;
}

}  // namespace phasefilter::detail

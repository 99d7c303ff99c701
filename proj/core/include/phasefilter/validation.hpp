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

// Oracle checks for the library's numerical guarantees, one per criterion.

#ifndef PHASEFILTER_VALIDATION_HPP_
#define PHASEFILTER_VALIDATION_HPP_

#include <string>
#include <vector>

namespace phasefilter {

struct ValidationOptions {
  /// Halves the oracle grids (same dq); scenario checks keep their grids.
  bool quick = false;
};

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  /// Measured quantities against their limits.
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kValidationChecks = 12;

/// Runs check `id` in [1, kValidationChecks]. Library errors are reported as
/// a failed check, never thrown.
CheckResult run_check(int id, const ValidationOptions& options = {});

std::vector<CheckResult> run_validation(const ValidationOptions& options = {});

/// "PASS [ 3] name: detail"
std::string format_check(const CheckResult& result);

}  // namespace phasefilter

#endif  // PHASEFILTER_VALIDATION_HPP_

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

#include <gtest/gtest.h>

#include "phasefilter/errors.hpp"
#include "phasefilter/validation.hpp"

namespace pf = phasefilter;

TEST(Validation, QuickChecksPass) {
  const pf::ValidationOptions quick{true};
  for (int id : {1, 2, 3, 6, 12}) {
    const auto r = pf::run_check(id, quick);
    EXPECT_TRUE(r.passed) << pf::format_check(r);
    EXPECT_EQ(r.id, id);
    EXPECT_FALSE(r.name.empty());
    EXPECT_GE(r.seconds, 0.0);
  }
}

TEST(Validation, UnknownCheckIsRejected) {
  EXPECT_THROW(pf::run_check(0), pf::InvalidArgument);
  EXPECT_THROW(pf::run_check(pf::kValidationChecks + 1), pf::InvalidArgument);
}

TEST(Validation, FormattedLinesLeadWithTheVerdict) {
  const pf::CheckResult ok{3, "marginals", true, "err 1e-15", 0.1};
  const pf::CheckResult bad{11, "delayed choice", false, "V 0.2", 0.1};
  EXPECT_EQ(pf::format_check(ok), "PASS [ 3] marginals: err 1e-15");
  EXPECT_EQ(pf::format_check(bad), "FAIL [11] delayed choice: V 0.2");
}

// Copyright 2026 The qmeter Authors
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

#include <cstdint>
#include <string>
#include <vector>

#include "qmeter/uncertainty.hpp"

namespace qmeter {

struct VerifyOptions {
  std::uint64_t seed = 1;
  int count = 100;  // random instances per suite; 0 skips all work
  // Test hook: when positive, replaces every suite's pass threshold.
  double tolerance_override = 0.0;
};

struct SuiteResult {
  std::string name;
  int checked = 0;
  int failures = 0;
  double worst = 0.0;      // largest residual observed
  double tolerance = 0.0;  // threshold the residuals were held to
  bool passed() const { return failures == 0; }
};

// Runs every invariant suite with a seeded generator, sequentially and in a
// fixed order, so a fixed (seed, count) pair gives identical results.
std::vector<SuiteResult> run_verification(const VerifyOptions& opts = {});
bool all_passed(const std::vector<SuiteResult>& results);

// Largest entrywise gap between the actions of two objects, outcomes matched
// by value.  Infinite when the outcome sets differ.  Dense comparisons over
// matrix units; meant for small dimensions.
double povm_gap(const Povm& x, const Povm& y);
double instrument_gap(const Instrument& x, const Instrument& y);
double channel_gap(const Channel& x, const Channel& y);

}  // namespace qmeter

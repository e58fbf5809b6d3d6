// Copyright 2026 The rittkit Authors
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

// Named invariant suites, run by the CLI "check" command.

#include <cstdint>
#include <string>
#include <vector>

namespace rittkit {

struct CheckItem {
  std::string suite;
  std::string name;
  bool passed = false;
  /// Worst observed value and the bound it was compared with.
  double value = 0.0;
  double bound = 0.0;
};

std::vector<std::string> check_suite_names();
bool is_check_suite(const std::string& name);

/// Throws Error(invalid_argument) for an unknown name. "all" runs every suite.
std::vector<CheckItem> run_check_suite(const std::string& name, std::uint64_t seed);

/// {"schema": 1, "suite": ..., "passed": bool, "checks": [...]}
std::string check_report_json(const std::string& suite, const std::vector<CheckItem>& items);

}  // namespace rittkit

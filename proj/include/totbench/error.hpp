// Copyright 2026 The tot-bench Authors.
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

#include <stdexcept>
#include <string>

namespace totbench {

/// Raised for malformed or inconsistent input data (bad records, duplicate
/// ids, corrupt index files). The CLI maps it to exit code 2.
class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when an operation is called with arguments outside its contract.
class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace totbench

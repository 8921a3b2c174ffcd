// Copyright 2026 The arenasim Authors.
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

#ifndef ARENASIM_COMMON_HPP_
#define ARENASIM_COMMON_HPP_

#include <stdexcept>
#include <string>

namespace arenasim {

// Bad configuration (unknown keys, invalid parameter ranges, strategy /
// threat-model mismatches). Maps to exit code 2 in the CLI.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Bad input data (parse failures, unknown model names, empty vote sets).
// Maps to exit code 3 in the CLI.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Dense model index in [0, K). Names live in the VoteSet's name table.
using ModelId = int;

}  // namespace arenasim

#endif  // ARENASIM_COMMON_HPP_

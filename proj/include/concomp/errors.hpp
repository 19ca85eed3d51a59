// Copyright 2026 The concomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef CONCOMP_ERRORS_HPP_
#define CONCOMP_ERRORS_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace concomp {

struct MissingRowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidOrderError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidParamError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutOfRangeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptySetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MissingConditionalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetViolationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Phase-1 simplex landed in the ambiguous band between the accept and
// reject thresholds; never silently rounded.
struct NumericalFailureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DominanceViolatedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UndefinedKernelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UndefinedStrategyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UndefinedResponseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AlphabetClashError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExplosionGuardError : std::runtime_error {
  ExplosionGuardError(std::uint64_t count, std::uint64_t guard)
      : std::runtime_error("adversary strategy count " + std::to_string(count) +
                           " exceeds guard " + std::to_string(guard)),
        count(count),
        guard(guard) {}
  std::uint64_t count;
  std::uint64_t guard;
};

}  // namespace concomp

#endif  // CONCOMP_ERRORS_HPP_

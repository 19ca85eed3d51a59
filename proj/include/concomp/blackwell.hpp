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
#ifndef CONCOMP_BLACKWELL_HPP_
#define CONCOMP_BLACKWELL_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "concomp/distribution.hpp"
#include "concomp/tradeoff.hpp"

namespace concomp {

// Equality-constrained nonnegative feasibility: find x >= 0 with Ax = b.
struct FeasibilityProblem {
  std::size_t num_vars = 0;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
};

struct FeasibilityResult {
  bool feasible = false;
  std::vector<double> point;  // populated when feasible
  double residual = 0.0;      // phase-1 optimum
};

// Accept threshold for the phase-1 optimum; below it the point is feasible.
inline constexpr double kFeasibleTol = 1e-9;
// Reject threshold; a phase-1 optimum above it certifies infeasibility.
// Landing in between throws NumericalFailureError.
inline constexpr double kInfeasibleTol = 1e-7;

// Phase-1 dense simplex with Bland's anti-cycling rule. Deterministic:
// identical inputs always produce identical outputs.
FeasibilityResult solve_feasibility(const FeasibilityProblem& problem);

// Channel K with pushforward(p, K) = x and pushforward(p_prime, K) =
// x_prime, when one exists. By the Blackwell theorem this is feasible
// exactly when T(p, p_prime) <= T(x, x_prime) pointwise.
std::optional<StochasticKernel> find_channel(
    const FiniteDistribution& p, const FiniteDistribution& p_prime,
    const FiniteDistribution& x, const FiniteDistribution& x_prime);

// Joints produced by driving one channel per pair from a single canonical
// source realizing f; coordinate i is aligned with pairs[i].
struct CoupledFamily {
  FiniteDistribution joint;        // tuple outcomes, source distributed as P
  FiniteDistribution joint_prime;  // same channels, source distributed as P'
};

// Requires np_tradeoff of every pair to dominate f; throws
// DominanceViolatedError otherwise.
CoupledFamily multi_couple(
    const TradeoffCurve& f,
    const std::vector<std::pair<FiniteDistribution, FiniteDistribution>>&
        pairs);

// Two-pair special case: shared source, one channel per pair.
std::pair<JointDistribution, JointDistribution> couple(
    const TradeoffCurve& f, const FiniteDistribution& x,
    const FiniteDistribution& x_prime, const FiniteDistribution& y,
    const FiniteDistribution& y_prime);

}  // namespace concomp

#endif  // CONCOMP_BLACKWELL_HPP_

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
#ifndef CONCOMP_TRADEOFF_HPP_
#define CONCOMP_TRADEOFF_HPP_

#include <map>
#include <utility>
#include <vector>

#include "concomp/distribution.hpp"
#include "concomp/label.hpp"
#include "json.hpp"

namespace concomp {

inline constexpr double kSlopeTol = 1e-9;

// Convex piecewise-linear trade-off curve on [0,1]: alpha (type-I error
// budget) to the minimal achievable type-II error. Breakpoints are
// canonicalized: alpha strictly increasing from 0 to 1, beta non-increasing,
// slopes non-decreasing, no three collinear points, beta(1) = 0.
class TradeoffCurve {
 public:
  using Point = std::pair<double, double>;

  // Canonicalizes and validates; throws InvalidParamError when the points
  // cannot form a trade-off curve (beyond numerical jitter).
  explicit TradeoffCurve(std::vector<Point> breakpoints);

  // f(alpha) = 1 - alpha, the no-information curve.
  static TradeoffCurve perfect_privacy();

  const std::vector<Point>& breakpoints() const { return points_; }

  // Linear interpolation; throws OutOfRangeError outside [0,1].
  double operator()(double alpha) const;

  bool approx_equal(const TradeoffCurve& other, double tol = kTol) const;

  nlohmann::json to_json() const;
  static TradeoffCurve from_json(const nlohmann::json& j);

 private:
  std::vector<Point> points_;
};

// Neyman-Pearson curve T(p, q): likelihood-ratio prefix sums over the union
// support, ties merged by canonicalization.
TradeoffCurve np_tradeoff(const FiniteDistribution& p,
                          const FiniteDistribution& q);

// Two-kink embedding of (eps, delta)-DP:
// f(a) = max{0, 1 - delta - e^eps * a, e^-eps * (1 - delta - a)}.
TradeoffCurve f_eps_delta(double eps, double delta);

// Partial order on curves: f precedes g when f lies pointwise above g,
// i.e. f is the stronger privacy guarantee. Checked at the breakpoints of
// both curves, which is exact for piecewise-linear functions.
bool poset_leq(const TradeoffCurve& f, const TradeoffCurve& g,
               double tol = kTol);

// Pointwise dominance f >= g - tol everywhere; alias of poset_leq spelled
// in the direction proofs use ("curve f dominates bound g").
inline bool dominates(const TradeoffCurve& f, const TradeoffCurve& g,
                      double tol = kTol) {
  return poset_leq(f, g, tol);
}

// Supremum of a finite set in the trade-off poset: the lower convex
// envelope of the pointwise minimum. Throws EmptySetError.
TradeoffCurve sup_set(const std::vector<TradeoffCurve>& curves);

// Budget-allocation curve for a two-stage pair:
//   alpha -> inf { E_{x~p_prime}[f_x(a_x)] : E_{x~p}[a_x] <= alpha }.
// Exact for piecewise-linear conditionals via a greedy slope sweep.
// Outcomes supported only by p spend no budget; outcomes supported only by
// p_prime take a_x = 1 at zero cost. Throws MissingConditionalError when a
// shared-support outcome lacks a conditional curve.
TradeoffCurve chain_rule(const FiniteDistribution& p,
                         const FiniteDistribution& p_prime,
                         const std::map<Label, TradeoffCurve>& conditionals);

// Discrete pair (P, P') with np_tradeoff(P, P') == f: one outcome per
// segment carrying (delta alpha, -delta beta), plus an outcome for the
// initial drop when f(0) < 1.
std::pair<FiniteDistribution, FiniteDistribution> canonical_pair(
    const TradeoffCurve& f);

// Witness for the supremum formula: weights over a finite curve set and a
// per-curve budget.
struct MixtureWitness {
  std::vector<double> weights;
  std::vector<double> budgets;
};

// E[F(A(F))] for the witness; the testing oracle that sup_set must
// lower-bound. Throws BudgetViolationError when E[A(F)] > alpha + tol.
double mixture_value(const std::vector<TradeoffCurve>& curves,
                     const MixtureWitness& witness, double alpha);

}  // namespace concomp

#endif  // CONCOMP_TRADEOFF_HPP_

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
#ifndef CONCOMP_DISTRIBUTION_HPP_
#define CONCOMP_DISTRIBUTION_HPP_

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "concomp/label.hpp"
#include "json.hpp"

namespace concomp {

inline constexpr double kMassTol = 1e-12;
inline constexpr double kTol = 1e-9;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Probability vector over labeled discrete outcomes. Immutable after
// construction; all operations on it are pure.
class FiniteDistribution {
 public:
  // Labels must be unique, weights nonnegative and summing to 1 within
  // mass_tol. Derived quantities (pushforwards, marginals) pass a looser
  // tolerance; hand-built inputs keep the 1e-12 default.
  FiniteDistribution(std::vector<Label> labels, std::vector<double> weights,
                     double mass_tol = kMassTol);

  static FiniteDistribution point(Label l) { return {{std::move(l)}, {1.0}}; }

  std::size_t size() const { return labels_.size(); }
  const std::vector<Label>& labels() const { return labels_; }
  const std::vector<double>& weights() const { return weights_; }

  // 0 for labels outside the outcome list.
  double prob(const Label& l) const;
  bool has(const Label& l) const { return index_.count(l) > 0; }

  // Zero-weight outcomes stripped, outcomes sorted by label.
  FiniteDistribution canonical() const;
  std::vector<Label> support() const;

  bool approx_equal(const FiniteDistribution& other, double tol = kTol) const;

  nlohmann::json to_json() const;
  static FiniteDistribution from_json(const nlohmann::json& j);

 private:
  std::vector<Label> labels_;
  std::vector<double> weights_;
  std::map<Label, std::size_t> index_;
};

// Row-stochastic map from an input outcome set to one shared output set.
class StochasticKernel {
 public:
  StochasticKernel(std::vector<Label> inputs,
                   std::map<Label, FiniteDistribution> rows);

  static StochasticKernel identity(const std::vector<Label>& labels);

  const std::vector<Label>& inputs() const { return inputs_; }
  const std::vector<Label>& outputs() const { return outputs_; }
  // Throws MissingRowError for unknown inputs.
  const FiniteDistribution& row(const Label& input) const;

  nlohmann::json to_json() const;
  static StochasticKernel from_json(const nlohmann::json& j);

 private:
  std::vector<Label> inputs_;
  std::vector<Label> outputs_;
  std::map<Label, FiniteDistribution> rows_;
};

// Distribution over ordered pairs with well-defined marginals.
class JointDistribution {
 public:
  explicit JointDistribution(FiniteDistribution dist);

  const FiniteDistribution& dist() const { return dist_; }
  FiniteDistribution left_marginal() const;
  FiniteDistribution right_marginal() const;

 private:
  FiniteDistribution dist_;
};

// Output weight of o = sum_z dist(z) * kernel(z -> o).
FiniteDistribution pushforward(const FiniteDistribution& dist,
                               const StochasticKernel& kernel);

// Independent product; weight(a,b) = p(a) * q(b).
JointDistribution product(const FiniteDistribution& p,
                          const FiniteDistribution& q);

// Mixture sum_i weights[i] * components[i] over the union outcome set.
FiniteDistribution mix(const std::vector<FiniteDistribution>& components,
                       const std::vector<double>& weights);

// Renyi divergence of order alpha > 1, natural log; +inf when p puts mass
// where q has none. Throws InvalidOrderError for alpha <= 1.
double renyi_divergence(const FiniteDistribution& p,
                        const FiniteDistribution& q, double alpha);

// sup over supp(p) of log(p(x)/q(x)); +inf on support violation.
double max_divergence(const FiniteDistribution& p,
                      const FiniteDistribution& q);

double kl_divergence(const FiniteDistribution& p, const FiniteDistribution& q);

}  // namespace concomp

#endif  // CONCOMP_DISTRIBUTION_HPP_

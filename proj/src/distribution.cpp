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
#include "concomp/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "concomp/errors.hpp"

namespace concomp {

FiniteDistribution::FiniteDistribution(std::vector<Label> labels,
                                       std::vector<double> weights,
                                       double mass_tol)
    : labels_(std::move(labels)), weights_(std::move(weights)) {
  if (labels_.size() != weights_.size()) {
    throw InvalidParamError("labels and weights differ in length");
  }
  double mass = 0.0;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (weights_[i] < 0.0) {
      if (weights_[i] < -mass_tol) {
        throw InvalidParamError("negative weight " +
                                std::to_string(weights_[i]));
      }
      weights_[i] = 0.0;
    }
    mass += weights_[i];
    if (!index_.emplace(labels_[i], i).second) {
      throw InvalidParamError("duplicate outcome label " + labels_[i].str());
    }
  }
  if (std::abs(mass - 1.0) > mass_tol) {
    throw InvalidParamError("weights sum to " + std::to_string(mass));
  }
}

double FiniteDistribution::prob(const Label& l) const {
  auto it = index_.find(l);
  return it == index_.end() ? 0.0 : weights_[it->second];
}

FiniteDistribution FiniteDistribution::canonical() const {
  std::map<Label, double> sorted;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (weights_[i] > 0.0) sorted.emplace(labels_[i], weights_[i]);
  }
  std::vector<Label> ls;
  std::vector<double> ws;
  for (auto& [l, w] : sorted) {
    ls.push_back(l);
    ws.push_back(w);
  }
  return {std::move(ls), std::move(ws), 1e-9};
}

std::vector<Label> FiniteDistribution::support() const {
  std::vector<Label> out;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (weights_[i] > 0.0) out.push_back(labels_[i]);
  }
  return out;
}

bool FiniteDistribution::approx_equal(const FiniteDistribution& other,
                                      double tol) const {
  std::set<Label> all(labels_.begin(), labels_.end());
  all.insert(other.labels_.begin(), other.labels_.end());
  for (const auto& l : all) {
    if (std::abs(prob(l) - other.prob(l)) > tol) return false;
  }
  return true;
}

nlohmann::json FiniteDistribution::to_json() const {
  nlohmann::json outcomes = nlohmann::json::array();
  for (const auto& l : labels_) outcomes.push_back(l.to_json());
  return {{"outcomes", outcomes}, {"weights", weights_}};
}

FiniteDistribution FiniteDistribution::from_json(const nlohmann::json& j) {
  std::vector<Label> labels;
  for (const auto& e : j.at("outcomes")) labels.push_back(Label::from_json(e));
  return {std::move(labels), j.at("weights").get<std::vector<double>>(), 1e-9};
}

StochasticKernel::StochasticKernel(std::vector<Label> inputs,
                                   std::map<Label, FiniteDistribution> rows)
    : inputs_(std::move(inputs)), rows_(std::move(rows)) {
  std::set<Label> outs;
  for (const auto& in : inputs_) {
    auto it = rows_.find(in);
    if (it == rows_.end()) {
      throw MissingRowError("no kernel row for input " + in.str());
    }
    for (const auto& l : it->second.labels()) outs.insert(l);
  }
  outputs_.assign(outs.begin(), outs.end());
}

StochasticKernel StochasticKernel::identity(const std::vector<Label>& labels) {
  std::map<Label, FiniteDistribution> rows;
  for (const auto& l : labels) rows.emplace(l, FiniteDistribution::point(l));
  return {labels, std::move(rows)};
}

const FiniteDistribution& StochasticKernel::row(const Label& input) const {
  auto it = rows_.find(input);
  if (it == rows_.end()) {
    throw MissingRowError("no kernel row for input " + input.str());
  }
  return it->second;
}

nlohmann::json StochasticKernel::to_json() const {
  nlohmann::json rows = nlohmann::json::object();
  for (const auto& in : inputs_) rows[in.str()] = row(in).to_json();
  nlohmann::json inputs = nlohmann::json::array();
  for (const auto& in : inputs_) inputs.push_back(in.to_json());
  return {{"inputs", inputs}, {"rows", rows}};
}

StochasticKernel StochasticKernel::from_json(const nlohmann::json& j) {
  std::vector<Label> inputs;
  for (const auto& e : j.at("inputs")) inputs.push_back(Label::from_json(e));
  std::map<Label, FiniteDistribution> rows;
  for (const auto& in : inputs) {
    rows.emplace(in, FiniteDistribution::from_json(j.at("rows").at(in.str())));
  }
  return {std::move(inputs), std::move(rows)};
}

JointDistribution::JointDistribution(FiniteDistribution dist)
    : dist_(std::move(dist)) {
  for (const auto& l : dist_.labels()) {
    if (!l.is_tuple() || l.parts().size() != 2) {
      throw InvalidParamError("joint outcome is not a pair: " + l.str());
    }
  }
}

namespace {

FiniteDistribution marginal(const FiniteDistribution& d, std::size_t coord) {
  std::map<Label, double> acc;
  for (std::size_t i = 0; i < d.size(); ++i) {
    acc[d.labels()[i].parts()[coord]] += d.weights()[i];
  }
  std::vector<Label> ls;
  std::vector<double> ws;
  for (auto& [l, w] : acc) {
    ls.push_back(l);
    ws.push_back(w);
  }
  return {std::move(ls), std::move(ws), 1e-9};
}

}  // namespace

FiniteDistribution JointDistribution::left_marginal() const {
  return marginal(dist_, 0);
}

FiniteDistribution JointDistribution::right_marginal() const {
  return marginal(dist_, 1);
}

FiniteDistribution pushforward(const FiniteDistribution& dist,
                               const StochasticKernel& kernel) {
  std::map<Label, double> acc;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist.weights()[i] == 0.0) continue;
    const auto& row = kernel.row(dist.labels()[i]);
    for (std::size_t k = 0; k < row.size(); ++k) {
      acc[row.labels()[k]] += dist.weights()[i] * row.weights()[k];
    }
  }
  std::vector<Label> ls;
  std::vector<double> ws;
  for (auto& [l, w] : acc) {
    ls.push_back(l);
    ws.push_back(w);
  }
  return {std::move(ls), std::move(ws), 1e-9};
}

JointDistribution product(const FiniteDistribution& p,
                          const FiniteDistribution& q) {
  std::vector<Label> ls;
  std::vector<double> ws;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t k = 0; k < q.size(); ++k) {
      ls.push_back(Label::pair(p.labels()[i], q.labels()[k]));
      ws.push_back(p.weights()[i] * q.weights()[k]);
    }
  }
  return JointDistribution({std::move(ls), std::move(ws), 1e-9});
}

FiniteDistribution mix(const std::vector<FiniteDistribution>& components,
                       const std::vector<double>& weights) {
  if (components.size() != weights.size() || components.empty()) {
    throw InvalidParamError("mixture arity mismatch");
  }
  std::map<Label, double> acc;
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& c = components[i];
    for (std::size_t k = 0; k < c.size(); ++k) {
      acc[c.labels()[k]] += weights[i] * c.weights()[k];
    }
  }
  std::vector<Label> ls;
  std::vector<double> ws;
  for (auto& [l, w] : acc) {
    ls.push_back(l);
    ws.push_back(w);
  }
  return {std::move(ls), std::move(ws), 1e-9};
}

double renyi_divergence(const FiniteDistribution& p,
                        const FiniteDistribution& q, double alpha) {
  if (alpha <= 1.0) {
    throw InvalidOrderError("Renyi order must exceed 1, got " +
                            std::to_string(alpha));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double pw = p.weights()[i];
    if (pw == 0.0) continue;
    double qw = q.prob(p.labels()[i]);
    if (qw == 0.0) return kInf;
    sum += std::pow(pw, alpha) / std::pow(qw, alpha - 1.0);
  }
  return std::log(sum) / (alpha - 1.0);
}

double max_divergence(const FiniteDistribution& p,
                      const FiniteDistribution& q) {
  double best = -kInf;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double pw = p.weights()[i];
    if (pw == 0.0) continue;
    double qw = q.prob(p.labels()[i]);
    if (qw == 0.0) return kInf;
    best = std::max(best, std::log(pw / qw));
  }
  return best;
}

double kl_divergence(const FiniteDistribution& p,
                     const FiniteDistribution& q) {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double pw = p.weights()[i];
    if (pw == 0.0) continue;
    double qw = q.prob(p.labels()[i]);
    if (qw == 0.0) return kInf;
    sum += pw * std::log(pw / qw);
  }
  return sum;
}

}  // namespace concomp

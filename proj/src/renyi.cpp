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
#include "concomp/renyi.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "concomp/errors.hpp"

namespace concomp {

std::pair<AdversaryStrategy, double> optimal_rdp_adversary(
    const Mechanism& m, const std::string& x, const std::string& x_prime,
    double alpha, std::uint64_t guard) {
  if (!(alpha > 1.0)) throw InvalidOrderError("alpha must exceed 1");
  auto adversaries = enumerate_adversaries(m, guard);
  AdversaryStrategy best_b = adversaries.front();
  double best = -kInf;
  for (const auto& b : adversaries) {
    double v = renyi_divergence(view_distribution(m, x, b),
                                view_distribution(m, x_prime, b), alpha);
    if (v > best) {  // strict: ties keep the canonically first strategy
      best = v;
      best_b = b;
    }
  }
  return {best_b, best};
}

AdversaryStrategy product_adversary(const std::vector<Mechanism>& ms,
                                    const std::vector<AdversaryStrategy>& bs) {
  if (ms.empty() || ms.size() != bs.size()) {
    throw InvalidParamError("one strategy per component required");
  }
  int max_depth = 0;
  for (const auto& m : ms) max_depth = std::max(max_depth, m.depth());
  std::vector<std::size_t> turn_order;
  for (int r = 0; r < max_depth; ++r) {
    for (std::size_t j = 0; j < ms.size(); ++j) {
      if (ms[j].depth() > r) turn_order.push_back(j);
    }
  }

  AdversaryStrategy out;
  // State per component: own token transcript and own answers so far.
  std::vector<Prefix> hist(ms.size());
  std::vector<std::vector<std::string>> own(ms.size());
  std::vector<std::string> global;
  auto walk = [&](auto&& self, std::size_t turn) -> void {
    if (turn == turn_order.size()) return;
    std::size_t j = turn_order[turn];
    const std::string& q = bs[j].query_for(own[j]);
    out.choices[global] = std::to_string(j + 1) + "#" + q;
    Prefix at = hist[j];
    at.push_back(q);
    std::set<std::string> answers;
    for (const auto& ds : ms[j].datasets()) {
      const auto& row = ms[j].answer_dist(ds, at);
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (row.weights()[i] > 0.0) answers.insert(row.labels()[i].str());
      }
    }
    for (const auto& a : answers) {
      hist[j].push_back(q);
      hist[j].push_back(a);
      own[j].push_back(a);
      global.push_back(a);
      self(self, turn + 1);
      global.pop_back();
      own[j].pop_back();
      hist[j].pop_back();
      hist[j].pop_back();
    }
  };
  walk(walk, 0);
  return out;
}

namespace {

nlohmann::json json_real(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

}  // namespace

nlohmann::json RdpReport::to_json() const {
  nlohmann::json per = nlohmann::json::array();
  for (double e : per_component) per.push_back(json_real(e));
  nlohmann::json strat = nlohmann::json::array();
  for (const auto& [answers, query] : optimal_strategy.choices) {
    strat.push_back({{"answers", answers}, {"query", query}});
  }
  return {{"alpha", alpha},
          {"per_component", std::move(per)},
          {"concurrent", json_real(concurrent)},
          {"product_value", json_real(product_value)},
          {"optimal_strategy", std::move(strat)},
          {"additive", additive},
          {"infinite", infinite}};
}

RdpReport verify_rdp_concurrent(const std::vector<Mechanism>& ms,
                                const std::string& x,
                                const std::string& x_prime, double alpha,
                                std::uint64_t guard, double tol) {
  RdpReport report;
  report.alpha = alpha;
  std::vector<AdversaryStrategy> components;
  double sum = 0.0;
  for (const auto& m : ms) {
    auto [b, v] = optimal_rdp_adversary(m, x, x_prime, alpha, guard);
    components.push_back(std::move(b));
    report.per_component.push_back(v);
    sum += v;
  }
  Mechanism composite = concomp(ms);
  auto [best, concurrent] =
      optimal_rdp_adversary(composite, x, x_prime, alpha, guard);
  report.concurrent = concurrent;
  report.optimal_strategy = std::move(best);

  AdversaryStrategy prod = product_adversary(ms, components);
  report.product_value =
      renyi_divergence(view_distribution(composite, x, prod),
                       view_distribution(composite, x_prime, prod), alpha);

  report.infinite = std::isinf(sum) || std::isinf(concurrent);
  auto close = [&](double a, double b) {
    if (std::isinf(a) || std::isinf(b)) return std::isinf(a) && std::isinf(b);
    return std::abs(a - b) <= tol;
  };
  report.additive = close(report.concurrent, sum) &&
                    close(report.product_value, sum);
  return report;
}

}  // namespace concomp

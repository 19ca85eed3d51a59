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
#include "concomp/random_instances.hpp"

#include <algorithm>
#include <cmath>

namespace concomp {

namespace {

std::vector<double> random_weights(std::mt19937_64& rng, std::size_t n,
                                   bool allow_zeros) {
  std::exponential_distribution<double> exp_draw(1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = exp_draw(rng);
    if (allow_zeros && unif(rng) < 0.25) w[i] = 0.0;
    total += w[i];
  }
  if (total == 0.0) {
    w[0] = 1.0;
    total = 1.0;
  }
  for (auto& v : w) v /= total;
  // Force an exact unit sum so construction tolerances never bite.
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) s += w[i];
  w[n - 1] = std::max(0.0, 1.0 - s);
  return w;
}

}  // namespace

FiniteDistribution random_distribution(std::mt19937_64& rng,
                                       const std::vector<Label>& labels,
                                       bool allow_zeros) {
  return FiniteDistribution(labels,
                            random_weights(rng, labels.size(), allow_zeros),
                            1e-9);
}

std::vector<Label> numbered_labels(const std::string& stem, std::size_t n) {
  std::vector<Label> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(Label::atom(stem + std::to_string(i)));
  }
  return out;
}

std::pair<FiniteDistribution, FiniteDistribution> random_pair(
    std::mt19937_64& rng, std::size_t max_support, bool allow_zeros) {
  std::uniform_int_distribution<std::size_t> size_draw(2, max_support);
  auto labels = numbered_labels("o", size_draw(rng));
  auto p = random_distribution(rng, labels, allow_zeros);
  auto q = random_distribution(rng, labels, allow_zeros);
  return {std::move(p), std::move(q)};
}

StochasticKernel random_kernel(std::mt19937_64& rng,
                               const std::vector<Label>& inputs,
                               std::size_t max_out) {
  std::uniform_int_distribution<std::size_t> size_draw(1, max_out);
  auto outputs = numbered_labels("k", size_draw(rng));
  std::map<Label, FiniteDistribution> rows;
  for (const auto& in : inputs) {
    rows.emplace(in, random_distribution(rng, outputs, false));
  }
  return StochasticKernel(inputs, std::move(rows));
}

TradeoffCurve random_curve(std::mt19937_64& rng, std::size_t max_support) {
  auto [p, q] = random_pair(rng, max_support, true);
  return np_tradeoff(p, q);
}

Mechanism random_mechanism(std::mt19937_64& rng, int max_depth,
                           std::size_t max_alphabet, bool allow_mech_first) {
  std::uniform_int_distribution<int> depth_draw(1, max_depth);
  std::uniform_int_distribution<std::size_t> alpha_draw(1, max_alphabet);
  std::uniform_int_distribution<int> coin(0, 1);
  int depth = depth_draw(rng);
  bool mech_first = allow_mech_first && coin(rng) == 1;

  std::vector<Mechanism::Round> rounds;
  if (mech_first) {
    Mechanism::Round prologue;
    std::size_t np = std::max<std::size_t>(2, alpha_draw(rng));
    for (std::size_t i = 0; i < np; ++i) {
      prologue.answers.push_back("p" + std::to_string(i));
    }
    rounds.push_back(std::move(prologue));
  }
  for (int r = 0; r < depth; ++r) {
    Mechanism::Round round;
    std::size_t nq = alpha_draw(rng);
    std::size_t na = std::max<std::size_t>(2, alpha_draw(rng));
    for (std::size_t i = 0; i < nq; ++i) {
      round.queries.push_back("q" + std::to_string(r) + std::to_string(i));
    }
    for (std::size_t i = 0; i < na; ++i) {
      round.answers.push_back("a" + std::to_string(r) + std::to_string(i));
    }
    rounds.push_back(std::move(round));
  }

  std::vector<std::string> datasets = {"x", "xp"};
  std::map<std::string, FiniteDistribution> kernel;
  // Walk the reachable tree exactly as from_rounds will, filling rows.
  auto row_labels = [](const std::vector<std::string>& answers) {
    std::vector<Label> out;
    for (const auto& a : answers) out.push_back(Label::atom(a));
    return out;
  };
  auto key_of = [](const std::string& ds, const Prefix& p) {
    std::string key = ds + "|";
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i > 0) key += ',';
      key += p[i];
    }
    return key;
  };
  std::vector<Prefix> frontier = {Prefix{}};
  std::size_t r0 = 0;
  auto fill_answers = [&](const Prefix& at,
                          const std::vector<std::string>& answers,
                          std::vector<Prefix>& next) {
    auto labels = row_labels(answers);
    for (const auto& ds : datasets) {
      kernel.emplace(key_of(ds, at), random_distribution(rng, labels, false));
    }
    for (const auto& a : answers) {
      Prefix child = at;
      child.push_back(a);
      next.push_back(std::move(child));
    }
  };
  if (mech_first) {
    std::vector<Prefix> next;
    fill_answers(Prefix{}, rounds[0].answers, next);
    frontier = std::move(next);
    r0 = 1;
  }
  for (std::size_t r = r0; r < rounds.size(); ++r) {
    std::vector<Prefix> next;
    for (const auto& p : frontier) {
      for (const auto& q : rounds[r].queries) {
        Prefix at = p;
        at.push_back(q);
        fill_answers(at, rounds[r].answers, next);
      }
    }
    frontier = std::move(next);
  }
  return Mechanism::from_rounds(datasets, rounds, kernel, mech_first);
}

}  // namespace concomp

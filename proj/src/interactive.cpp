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
#include "concomp/interactive.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "concomp/errors.hpp"

namespace concomp {

namespace {

std::string join_prefix(const Prefix& prefix) {
  std::string out;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (i > 0) out += ',';
    out += prefix[i];
  }
  return out;
}

}  // namespace

Mechanism::Mechanism(
    std::vector<std::string> datasets, bool mech_first, int depth,
    std::map<Prefix, std::vector<std::string>> queries,
    std::map<std::pair<std::string, Prefix>, FiniteDistribution> kernel)
    : datasets_(std::move(datasets)),
      mech_first_(mech_first),
      depth_(depth),
      queries_(std::move(queries)),
      kernel_(std::move(kernel)) {
  if (datasets_.size() < 2) {
    throw InvalidParamError("a mechanism needs at least two datasets");
  }
  if (depth_ < 0) throw InvalidParamError("negative depth");
}

Mechanism Mechanism::from_rounds(
    std::vector<std::string> datasets, std::vector<Round> rounds,
    const std::map<std::string, FiniteDistribution>& kernel_by_key,
    bool mech_first) {
  bool prologue = mech_first;
  if (prologue && (rounds.empty() || !rounds.front().queries.empty())) {
    throw InvalidParamError(
        "mechanism-first schedule needs a leading query-free round");
  }
  int depth = 0;
  for (std::size_t r = prologue ? 1 : 0; r < rounds.size(); ++r) {
    if (rounds[r].queries.empty() || rounds[r].answers.empty()) {
      throw InvalidParamError("query round with an empty alphabet");
    }
    ++depth;
  }

  std::map<Prefix, std::vector<std::string>> queries;
  std::map<std::pair<std::string, Prefix>, FiniteDistribution> kernel;

  auto fetch_row = [&](const std::string& ds, const Prefix& prefix,
                       const std::vector<std::string>& alphabet)
      -> const FiniteDistribution& {
    auto it = kernel_by_key.find(ds + "|" + join_prefix(prefix));
    if (it == kernel_by_key.end()) {
      throw UndefinedKernelError("kernel missing for dataset " + ds +
                                 " at prefix [" + join_prefix(prefix) + "]");
    }
    for (const auto& l : it->second.labels()) {
      if (std::find(alphabet.begin(), alphabet.end(), l.str()) ==
          alphabet.end()) {
        throw InvalidParamError("kernel answer " + l.str() +
                                " outside the round alphabet");
      }
    }
    return it->second;
  };

  // Materialize the reachable tree, frontier = prefixes after each round.
  std::vector<Prefix> frontier = {Prefix{}};
  auto answer_step = [&](const Prefix& at,
                         const std::vector<std::string>& alphabet,
                         std::vector<Prefix>& next) {
    std::set<std::string> live;
    for (const auto& ds : datasets) {
      const auto& row = fetch_row(ds, at, alphabet);
      kernel.emplace(std::make_pair(ds, at), row);
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (row.weights()[i] > 0.0) live.insert(row.labels()[i].str());
      }
    }
    for (const auto& a : live) {
      Prefix child = at;
      child.push_back(a);
      next.push_back(std::move(child));
    }
  };

  std::size_t r0 = 0;
  if (prologue) {
    std::vector<Prefix> next;
    answer_step(Prefix{}, rounds[0].answers, next);
    frontier = std::move(next);
    r0 = 1;
  }
  for (std::size_t r = r0; r < rounds.size(); ++r) {
    std::vector<Prefix> next;
    for (const auto& p : frontier) {
      queries[p] = rounds[r].queries;
      for (const auto& q : rounds[r].queries) {
        Prefix at = p;
        at.push_back(q);
        answer_step(at, rounds[r].answers, next);
      }
    }
    frontier = std::move(next);
  }

  Mechanism m(std::move(datasets), mech_first, depth, std::move(queries),
              std::move(kernel));
  m.rounds_ = std::move(rounds);
  m.has_rounds_ = true;
  return m;
}

const std::vector<std::string>& Mechanism::queries_at(
    const Prefix& prefix) const {
  auto it = queries_.find(prefix);
  if (it == queries_.end()) {
    throw UndefinedKernelError("no adversary node at prefix [" +
                               join_prefix(prefix) + "]");
  }
  return it->second;
}

const FiniteDistribution& Mechanism::answer_dist(const std::string& dataset,
                                                 const Prefix& prefix) const {
  auto it = kernel_.find({dataset, prefix});
  if (it == kernel_.end()) {
    throw UndefinedKernelError("kernel missing for dataset " + dataset +
                               " at prefix [" + join_prefix(prefix) + "]");
  }
  return it->second;
}

std::vector<std::string> Mechanism::reachable_answers(
    const Prefix& prefix) const {
  std::set<std::string> live;
  for (const auto& ds : datasets_) {
    const auto& row = answer_dist(ds, prefix);
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row.weights()[i] > 0.0) live.insert(row.labels()[i].str());
    }
  }
  return {live.begin(), live.end()};
}

Mechanism Mechanism::residual(const std::string& token) const {
  std::map<Prefix, std::vector<std::string>> queries;
  std::map<std::pair<std::string, Prefix>, FiniteDistribution> kernel;
  for (const auto& [p, qs] : queries_) {
    if (!p.empty() && p.front() == token) {
      queries.emplace(Prefix(p.begin() + 1, p.end()), qs);
    }
  }
  for (const auto& [key, row] : kernel_) {
    const auto& [ds, p] = key;
    if (!p.empty() && p.front() == token) {
      kernel.emplace(std::make_pair(ds, Prefix(p.begin() + 1, p.end())), row);
    }
  }
  if (mech_first_) {
    // Consumed the prologue answer; the adversary speaks next.
    return Mechanism(datasets_, false, depth_, std::move(queries),
                     std::move(kernel));
  }
  // Consumed a query; the mechanism answers next, one fewer round remains.
  return Mechanism(datasets_, true, depth_ - 1, std::move(queries),
                   std::move(kernel));
}

nlohmann::json Mechanism::to_json() const {
  if (!has_rounds_) {
    throw InvalidParamError(
        "only round-structured mechanisms serialize losslessly");
  }
  nlohmann::json j;
  j["datasets"] = datasets_;
  j["mech_first"] = mech_first_;
  nlohmann::json rounds = nlohmann::json::array();
  for (const auto& r : rounds_) {
    rounds.push_back({{"queries", r.queries}, {"answers", r.answers}});
  }
  j["rounds"] = std::move(rounds);
  nlohmann::json kernel = nlohmann::json::object();
  for (const auto& [key, row] : kernel_) {
    kernel[key.first + "|" + join_prefix(key.second)] = row.to_json();
  }
  j["kernel"] = std::move(kernel);
  return j;
}

Mechanism Mechanism::from_json(const nlohmann::json& j) {
  std::vector<std::string> datasets =
      j.at("datasets").get<std::vector<std::string>>();
  bool mech_first = j.value("mech_first", false);
  std::vector<Round> rounds;
  for (const auto& r : j.at("rounds")) {
    Round round;
    round.queries = r.value("queries", std::vector<std::string>{});
    round.answers = r.at("answers").get<std::vector<std::string>>();
    rounds.push_back(std::move(round));
  }
  std::map<std::string, FiniteDistribution> kernel;
  for (const auto& [key, val] : j.at("kernel").items()) {
    kernel.emplace(key, FiniteDistribution::from_json(val));
  }
  return from_rounds(std::move(datasets), std::move(rounds), kernel,
                     mech_first);
}

const std::string& AdversaryStrategy::query_for(
    const std::vector<std::string>& answers) const {
  auto it = choices.find(answers);
  if (it == choices.end()) {
    throw UndefinedStrategyError("strategy undefined after answers [" +
                                 join_prefix(answers) + "]");
  }
  return it->second;
}

namespace {

void view_walk(const Mechanism& m, const std::string& dataset,
               const AdversaryStrategy& b, Prefix& prefix,
               std::vector<std::string>& answers, int queries_done,
               bool pending_answer, double weight,
               std::map<Label, double>& acc) {
  if (pending_answer) {
    const auto& row = m.answer_dist(dataset, prefix);
    for (std::size_t i = 0; i < row.size(); ++i) {
      double w = row.weights()[i];
      if (w == 0.0) continue;
      std::string tok = row.labels()[i].str();
      prefix.push_back(tok);
      answers.push_back(tok);
      view_walk(m, dataset, b, prefix, answers, queries_done, false,
                weight * w, acc);
      answers.pop_back();
      prefix.pop_back();
    }
    return;
  }
  if (queries_done == m.depth()) {
    std::vector<Label> toks;
    toks.reserve(prefix.size());
    for (const auto& t : prefix) toks.push_back(Label::atom(t));
    acc[Label::tuple(std::move(toks))] += weight;
    return;
  }
  const std::string& q = b.query_for(answers);
  const auto& legal = m.queries_at(prefix);
  if (std::find(legal.begin(), legal.end(), q) == legal.end()) {
    throw UndefinedStrategyError("strategy plays illegal query " + q);
  }
  prefix.push_back(q);
  view_walk(m, dataset, b, prefix, answers, queries_done + 1, true, weight,
            acc);
  prefix.pop_back();
}

double count_strategies(const Mechanism& m, Prefix& prefix, int queries_done,
                        bool pending_answer) {
  if (pending_answer) {
    double total = 1.0;
    for (const auto& a : m.reachable_answers(prefix)) {
      prefix.push_back(a);
      total *= count_strategies(m, prefix, queries_done, false);
      prefix.pop_back();
      if (total > 1e18) return total;
    }
    return total;
  }
  if (queries_done == m.depth()) return 1.0;
  double total = 0.0;
  for (const auto& q : m.queries_at(prefix)) {
    prefix.push_back(q);
    total += count_strategies(m, prefix, queries_done + 1, true);
    prefix.pop_back();
  }
  return total;
}

using PartialStrategy = std::map<std::vector<std::string>, std::string>;

std::vector<PartialStrategy> enum_strategies(const Mechanism& m,
                                             Prefix& prefix,
                                             std::vector<std::string>& answers,
                                             int queries_done,
                                             bool pending_answer) {
  if (pending_answer) {
    std::vector<PartialStrategy> acc = {PartialStrategy{}};
    for (const auto& a : m.reachable_answers(prefix)) {
      prefix.push_back(a);
      answers.push_back(a);
      auto branch = enum_strategies(m, prefix, answers, queries_done, false);
      answers.pop_back();
      prefix.pop_back();
      std::vector<PartialStrategy> next;
      next.reserve(acc.size() * branch.size());
      for (const auto& left : acc) {
        for (const auto& right : branch) {
          PartialStrategy merged = left;
          merged.insert(right.begin(), right.end());
          next.push_back(std::move(merged));
        }
      }
      acc = std::move(next);
    }
    return acc;
  }
  if (queries_done == m.depth()) return {PartialStrategy{}};
  std::vector<PartialStrategy> out;
  for (const auto& q : m.queries_at(prefix)) {
    prefix.push_back(q);
    auto subtree = enum_strategies(m, prefix, answers, queries_done + 1, true);
    prefix.pop_back();
    for (auto& s : subtree) {
      s[answers] = q;
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace

FiniteDistribution view_distribution(const Mechanism& m,
                                     const std::string& dataset,
                                     const AdversaryStrategy& b) {
  if (std::find(m.datasets().begin(), m.datasets().end(), dataset) ==
      m.datasets().end()) {
    throw InvalidParamError("unknown dataset " + dataset);
  }
  std::map<Label, double> acc;
  Prefix prefix;
  std::vector<std::string> answers;
  view_walk(m, dataset, b, prefix, answers, 0, m.mech_first(), 1.0, acc);
  std::vector<Label> labels;
  std::vector<double> weights;
  for (auto& [l, w] : acc) {
    labels.push_back(l);
    weights.push_back(w);
  }
  return FiniteDistribution(std::move(labels), std::move(weights), 1e-9);
}

std::vector<AdversaryStrategy> enumerate_adversaries(const Mechanism& m,
                                                     std::uint64_t guard) {
  Prefix prefix;
  double count = count_strategies(m, prefix, 0, m.mech_first());
  if (count > static_cast<double>(guard)) {
    std::uint64_t reported =
        count > 1e18 ? std::uint64_t(-1) : static_cast<std::uint64_t>(count);
    throw ExplosionGuardError(reported, guard);
  }
  std::vector<std::string> answers;
  auto maps = enum_strategies(m, prefix, answers, 0, m.mech_first());
  std::vector<AdversaryStrategy> out;
  out.reserve(maps.size());
  for (auto& cm : maps) out.push_back(AdversaryStrategy{std::move(cm)});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TradeoffCurve mechanism_privacy(const Mechanism& m, const std::string& x,
                                const std::string& x_prime,
                                std::uint64_t guard) {
  std::vector<TradeoffCurve> curves;
  for (const auto& b : enumerate_adversaries(m, guard)) {
    curves.push_back(
        np_tradeoff(view_distribution(m, x, b), view_distribution(m, x_prime, b)));
  }
  return sup_set(curves);
}

Mechanism concomp(const std::vector<Mechanism>& ms) {
  if (ms.empty()) throw InvalidParamError("nothing to compose");
  const auto& datasets = ms[0].datasets();
  int total_depth = 0;
  for (const auto& m : ms) {
    if (m.datasets() != datasets) {
      throw InvalidParamError("components must share dataset labels");
    }
    if (m.mech_first()) {
      throw InvalidParamError(
          "concurrent composition takes adversary-first components");
    }
    total_depth += m.depth();
  }

  std::map<Prefix, std::vector<std::string>> queries;
  std::map<std::pair<std::string, Prefix>, FiniteDistribution> kernel;

  struct State {
    std::vector<Prefix> hist;    // per-component own transcript
    std::vector<int> consumed;   // per-component queries answered
  };
  auto build = [&](auto&& self, const Prefix& at, const State& st,
                   int done) -> void {
    if (done == total_depth) return;
    std::vector<std::string> tags;
    std::set<std::string> seen;
    for (std::size_t j = 0; j < ms.size(); ++j) {
      if (st.consumed[j] >= ms[j].depth()) continue;
      for (const auto& q : ms[j].queries_at(st.hist[j])) {
        std::string tag = std::to_string(j + 1) + "#" + q;
        if (!seen.insert(tag).second) {
          throw AlphabetClashError("duplicate composed query tag " + tag);
        }
        tags.push_back(tag);
      }
    }
    queries[at] = tags;
    for (std::size_t j = 0; j < ms.size(); ++j) {
      if (st.consumed[j] >= ms[j].depth()) continue;
      for (const auto& q : ms[j].queries_at(st.hist[j])) {
        Prefix after_q = at;
        after_q.push_back(std::to_string(j + 1) + "#" + q);
        Prefix own = st.hist[j];
        own.push_back(q);
        std::set<std::string> live;
        for (const auto& ds : datasets) {
          const auto& row = ms[j].answer_dist(ds, own);
          kernel.emplace(std::make_pair(ds, after_q), row);
          for (std::size_t i = 0; i < row.size(); ++i) {
            if (row.weights()[i] > 0.0) live.insert(row.labels()[i].str());
          }
        }
        for (const auto& a : live) {
          Prefix child = after_q;
          child.push_back(a);
          State next = st;
          next.hist[j].push_back(q);
          next.hist[j].push_back(a);
          next.consumed[j] += 1;
          self(self, child, next, done + 1);
        }
      }
    }
  };
  State start{std::vector<Prefix>(ms.size()), std::vector<int>(ms.size(), 0)};
  build(build, Prefix{}, start, 0);
  return Mechanism(datasets, false, total_depth, std::move(queries),
                   std::move(kernel));
}

Mechanism randomized_response(double eps) {
  if (eps < 0.0 || !std::isfinite(eps)) {
    throw InvalidParamError("eps must be finite and nonnegative");
  }
  double keep = std::exp(eps) / (1.0 + std::exp(eps));
  std::map<std::string, FiniteDistribution> kernel;
  kernel.emplace("0|q", FiniteDistribution({Label::atom("0"), Label::atom("1")},
                                           {keep, 1.0 - keep}, 1e-9));
  kernel.emplace("1|q", FiniteDistribution({Label::atom("0"), Label::atom("1")},
                                           {1.0 - keep, keep}, 1e-9));
  return Mechanism::from_rounds({"0", "1"}, {Mechanism::Round{{"q"}, {"0", "1"}}},
                                kernel, false);
}

}  // namespace concomp

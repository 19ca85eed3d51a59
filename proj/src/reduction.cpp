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
#include "concomp/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "concomp/blackwell.hpp"
#include "concomp/errors.hpp"

namespace concomp {

const FiniteDistribution& PostProcessor::respond(const Label& seed,
                                                 const Prefix& prefix) const {
  auto it = rules.find({seed, prefix});
  if (it == rules.end()) {
    throw UndefinedResponseError("no response rule for seed " + seed.str());
  }
  return it->second;
}

nlohmann::json PostProcessor::to_json() const {
  nlohmann::json j;
  j["mech_first"] = mech_first;
  j["depth"] = depth;
  nlohmann::json seed_arr = nlohmann::json::array();
  for (const auto& s : seeds) seed_arr.push_back(s.to_json());
  j["seeds"] = std::move(seed_arr);
  nlohmann::json rule_arr = nlohmann::json::array();
  for (const auto& [key, dist] : rules) {
    rule_arr.push_back({{"seed", key.first.to_json()},
                        {"prefix", key.second},
                        {"answers", dist.to_json()}});
  }
  j["rules"] = std::move(rule_arr);
  return j;
}

nlohmann::json ReductionResult::to_json() const {
  return {{"y", y.to_json()},
          {"y_prime", y_prime.to_json()},
          {"proc", proc.to_json()},
          {"privacy_curve", privacy_curve.to_json()}};
}

namespace {

std::vector<Label> support_union(const FiniteDistribution& a,
                                 const FiniteDistribution& b) {
  std::set<Label> s;
  for (const auto& l : a.support()) s.insert(l);
  for (const auto& l : b.support()) s.insert(l);
  return {s.begin(), s.end()};
}

ReductionResult reduce_rec(const Mechanism& m, const std::string& x,
                           const std::string& x_prime, std::uint64_t guard) {
  if (!m.mech_first() && m.depth() == 0) {
    PostProcessor proc;
    proc.seeds = {Label::unit()};
    return {FiniteDistribution::point(Label::unit()),
            FiniteDistribution::point(Label::unit()), std::move(proc),
            TradeoffCurve::perfect_privacy()};
  }
  TradeoffCurve d = mechanism_privacy(m, x, x_prime, guard);

  if (m.mech_first()) {
    // Mechanism speaks: chain the prologue answer with per-branch seeds.
    const auto& a_dist = m.answer_dist(x, Prefix{});
    const auto& a_dist_prime = m.answer_dist(x_prime, Prefix{});
    std::set<std::string> branches;
    for (const auto& l : a_dist.support()) branches.insert(l.str());
    for (const auto& l : a_dist_prime.support()) branches.insert(l.str());

    std::map<Label, double> wy, wy_prime;
    PostProcessor proc;
    proc.mech_first = true;
    proc.depth = m.depth();
    for (const auto& a : branches) {
      Label atom_a = Label::atom(a);
      double pa = a_dist.prob(atom_a);
      double pa_prime = a_dist_prime.prob(atom_a);
      Mechanism sub = m.residual(a);
      // Branches outside one support are reduced against themselves; the
      // missing side gets zero mass, so any valid seed works there.
      ReductionResult r =
          pa == 0.0       ? reduce_rec(sub, x_prime, x_prime, guard)
          : pa_prime == 0.0 ? reduce_rec(sub, x, x, guard)
                            : reduce_rec(sub, x, x_prime, guard);
      bool leaf = sub.depth() == 0;
      for (const auto& ylab : support_union(r.y, r.y_prime)) {
        Label seed = leaf ? atom_a : Label::pair(atom_a, ylab);
        wy[seed] += pa * r.y.prob(ylab);
        wy_prime[seed] += pa_prime * r.y_prime.prob(ylab);
        proc.rules.emplace(std::make_pair(seed, Prefix{}),
                           FiniteDistribution::point(atom_a));
        for (const auto& [key, dist] : r.proc.rules) {
          if (key.first != ylab) continue;
          Prefix shifted = {a};
          shifted.insert(shifted.end(), key.second.begin(), key.second.end());
          proc.rules.emplace(std::make_pair(seed, std::move(shifted)), dist);
        }
      }
    }
    std::vector<Label> labels;
    std::vector<double> w, w_prime;
    for (const auto& [l, v] : wy) {
      labels.push_back(l);
      w.push_back(v);
      w_prime.push_back(wy_prime[l]);
    }
    proc.seeds = labels;
    FiniteDistribution y(labels, std::move(w), 1e-9);
    FiniteDistribution y_prime(std::move(labels), std::move(w_prime), 1e-9);
    return {std::move(y), std::move(y_prime), std::move(proc), std::move(d)};
  }

  // Adversary speaks: reduce every residual and couple the seeds at d.
  const auto& queries = m.queries_at(Prefix{});
  std::vector<ReductionResult> subs;
  subs.reserve(queries.size());
  for (const auto& q : queries) {
    subs.push_back(reduce_rec(m.residual(q), x, x_prime, guard));
  }

  PostProcessor proc;
  proc.mech_first = false;
  proc.depth = m.depth();

  if (queries.size() == 1) {
    // Single query: relay straight through, no coupling needed.
    const auto& q = queries[0];
    proc.seeds = subs[0].proc.seeds;
    for (const auto& [key, dist] : subs[0].proc.rules) {
      Prefix shifted = {q};
      shifted.insert(shifted.end(), key.second.begin(), key.second.end());
      proc.rules.emplace(std::make_pair(key.first, std::move(shifted)), dist);
    }
    return {std::move(subs[0].y), std::move(subs[0].y_prime), std::move(proc),
            std::move(d)};
  }

  std::vector<std::pair<FiniteDistribution, FiniteDistribution>> pairs;
  pairs.reserve(subs.size());
  for (const auto& r : subs) pairs.push_back({r.y, r.y_prime});
  CoupledFamily fam = multi_couple(d, pairs);

  for (const auto& seed : support_union(fam.joint, fam.joint_prime)) {
    proc.seeds.push_back(seed);
    // The seed is a tuple aligned with the query order; coordinate i feeds
    // the processor of queries[i].
    for (std::size_t i = 0; i < queries.size(); ++i) {
      const Label& part = seed.parts()[i];
      for (const auto& [key, dist] : subs[i].proc.rules) {
        if (key.first != part) continue;
        Prefix shifted = {queries[i]};
        shifted.insert(shifted.end(), key.second.begin(), key.second.end());
        proc.rules.emplace(std::make_pair(seed, std::move(shifted)), dist);
      }
    }
  }
  return {std::move(fam.joint), std::move(fam.joint_prime), std::move(proc),
          std::move(d)};
}

void simulate_walk(const PostProcessor& proc, const Label& seed,
                   const AdversaryStrategy& b, Prefix& prefix,
                   std::vector<std::string>& answers, int queries_done,
                   bool pending_answer, double weight,
                   std::map<Label, double>& acc) {
  if (pending_answer) {
    const auto& row = proc.respond(seed, prefix);
    for (std::size_t i = 0; i < row.size(); ++i) {
      double w = row.weights()[i];
      if (w == 0.0) continue;
      std::string tok = row.labels()[i].str();
      prefix.push_back(tok);
      answers.push_back(tok);
      simulate_walk(proc, seed, b, prefix, answers, queries_done, false,
                    weight * w, acc);
      answers.pop_back();
      prefix.pop_back();
    }
    return;
  }
  if (queries_done == proc.depth) {
    std::vector<Label> toks;
    toks.reserve(prefix.size());
    for (const auto& t : prefix) toks.push_back(Label::atom(t));
    acc[Label::tuple(std::move(toks))] += weight;
    return;
  }
  prefix.push_back(b.query_for(answers));
  simulate_walk(proc, seed, b, prefix, answers, queries_done + 1, true, weight,
                acc);
  prefix.pop_back();
}

}  // namespace

ReductionResult reduce(const Mechanism& m, const std::string& x,
                       const std::string& x_prime, std::uint64_t guard) {
  return reduce_rec(m, x, x_prime, guard);
}

FiniteDistribution simulate_view(const PostProcessor& proc,
                                 const FiniteDistribution& seed_dist,
                                 const AdversaryStrategy& b) {
  std::map<Label, double> acc;
  for (std::size_t i = 0; i < seed_dist.size(); ++i) {
    double ws = seed_dist.weights()[i];
    if (ws == 0.0) continue;
    Prefix prefix;
    std::vector<std::string> answers;
    simulate_walk(proc, seed_dist.labels()[i], b, prefix, answers, 0,
                  proc.mech_first, ws, acc);
  }
  std::vector<Label> labels;
  std::vector<double> weights;
  for (auto& [l, w] : acc) {
    labels.push_back(l);
    weights.push_back(w);
  }
  return FiniteDistribution(std::move(labels), std::move(weights), 1e-9);
}

nlohmann::json ReductionReport::to_json() const {
  return {{"max_view_dev", max_view_dev},
          {"max_view_dev_prime", max_view_dev_prime},
          {"curve_gap", curve_gap},
          {"pass", pass},
          {"failures", failures}};
}

ReductionReport verify_reduction(const Mechanism& m, const std::string& x,
                                 const std::string& x_prime,
                                 const ReductionResult& result,
                                 std::uint64_t guard, double tol) {
  ReductionReport report;
  auto adversaries = enumerate_adversaries(m, guard);
  auto dev = [](const FiniteDistribution& a, const FiniteDistribution& b) {
    double worst = 0.0;
    std::set<Label> keys(a.labels().begin(), a.labels().end());
    for (const auto& l : b.labels()) keys.insert(l);
    for (const auto& l : keys) {
      worst = std::max(worst, std::abs(a.prob(l) - b.prob(l)));
    }
    return worst;
  };
  for (std::size_t i = 0; i < adversaries.size(); ++i) {
    const auto& b = adversaries[i];
    double dx = dev(view_distribution(m, x, b),
                    simulate_view(result.proc, result.y, b));
    double dxp = dev(view_distribution(m, x_prime, b),
                     simulate_view(result.proc, result.y_prime, b));
    report.max_view_dev = std::max(report.max_view_dev, dx);
    report.max_view_dev_prime = std::max(report.max_view_dev_prime, dxp);
    if (dx > tol) {
      report.failures.push_back("view mismatch on " + x + " under adversary " +
                                std::to_string(i));
    }
    if (dxp > tol) {
      report.failures.push_back("view mismatch on " + x_prime +
                                " under adversary " + std::to_string(i));
    }
  }

  TradeoffCurve privacy = mechanism_privacy(m, x, x_prime, guard);
  TradeoffCurve achieved = np_tradeoff(result.y, result.y_prime);
  std::set<double> grid;
  for (const auto& [a, bq] : privacy.breakpoints()) grid.insert(a);
  for (const auto& [a, bq] : achieved.breakpoints()) grid.insert(a);
  for (int i = 0; i <= 100; ++i) grid.insert(i / 100.0);
  for (double a : grid) {
    report.curve_gap =
        std::max(report.curve_gap, privacy(a) - achieved(a));
  }
  if (report.curve_gap > tol) {
    report.failures.push_back("seed pair curve falls below the privacy curve");
  }
  report.pass = report.failures.empty();
  return report;
}

}  // namespace concomp

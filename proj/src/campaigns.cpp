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
#include "concomp/campaigns.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <thread>

#include "concomp/blackwell.hpp"
#include "concomp/errors.hpp"
#include "concomp/interactive.hpp"
#include "concomp/random_instances.hpp"
#include "concomp/reduction.hpp"
#include "concomp/renyi.hpp"
#include "concomp/tradeoff.hpp"

namespace concomp {

std::mt19937_64 trial_rng(std::uint64_t seed, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  return std::mt19937_64(seq);
}

namespace {

// Runs fn on every trial index, optionally across threads; results are
// assembled in index order so output never depends on scheduling.
nlohmann::json run_trials(const CampaignConfig& cfg,
                          const std::function<nlohmann::json(int)>& fn) {
  std::vector<nlohmann::json> results(cfg.trials);
  auto safe = [&fn](int t) -> nlohmann::json {
    try {
      return fn(t);
    } catch (const std::exception& e) {
      return {{"trial", t}, {"pass", false}, {"error", e.what()}};
    }
  };
  int threads = std::max(1, cfg.threads);
  if (threads == 1) {
    for (int t = 0; t < cfg.trials; ++t) results[t] = safe(t);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (int t = w; t < cfg.trials; t += threads) results[t] = safe(t);
      });
    }
    for (auto& th : pool) th.join();
  }
  nlohmann::json arr = nlohmann::json::array();
  for (auto& r : results) arr.push_back(std::move(r));
  return arr;
}

std::set<double> alpha_grid(const std::vector<TradeoffCurve>& curves) {
  std::set<double> grid;
  for (int i = 0; i <= 100; ++i) grid.insert(i / 100.0);
  for (const auto& c : curves) {
    for (const auto& [a, b] : c.breakpoints()) grid.insert(a);
  }
  return grid;
}

double max_curve_gap(const TradeoffCurve& low, const TradeoffCurve& high) {
  // Worst amount by which `low` fails to stay above `high`.
  double worst = 0.0;
  for (double a : alpha_grid({low, high})) {
    worst = std::max(worst, high(a) - low(a));
  }
  return worst;
}

double max_curve_dev(const TradeoffCurve& a, const TradeoffCurve& b) {
  double worst = 0.0;
  for (double alpha : alpha_grid({a, b})) {
    worst = std::max(worst, std::abs(a(alpha) - b(alpha)));
  }
  return worst;
}

double max_dist_dev(const FiniteDistribution& a, const FiniteDistribution& b) {
  double worst = 0.0;
  std::set<Label> keys(a.labels().begin(), a.labels().end());
  for (const auto& l : b.labels()) keys.insert(l);
  for (const auto& l : keys) {
    worst = std::max(worst, std::abs(a.prob(l) - b.prob(l)));
  }
  return worst;
}

nlohmann::json finish(const CampaignConfig& cfg, const std::string& name,
                      nlohmann::json trials) {
  bool pass = true;
  for (const auto& t : trials) {
    if (!t.value("pass", false)) pass = false;
  }
  return {{"campaign", name}, {"seed", cfg.seed},
          {"trials", std::move(trials)}, {"pass", pass}};
}

}  // namespace

nlohmann::json run_chain_rule_campaign(const CampaignConfig& cfg) {
  auto trial = [&](int t) -> nlohmann::json {
    auto rng = trial_rng(cfg.seed, t);
    auto [p, p_prime] = random_pair(rng, cfg.max_support, true);

    std::map<Label, TradeoffCurve> conditionals;
    std::map<Label, double> jw, jw_prime;
    std::set<Label> outer;
    for (const auto& l : p.support()) outer.insert(l);
    for (const auto& l : p_prime.support()) outer.insert(l);
    for (const auto& x : outer) {
      std::uniform_int_distribution<std::size_t> size_draw(2, cfg.max_support);
      auto inner = numbered_labels("y", size_draw(rng));
      auto px = random_distribution(rng, inner, false);
      auto qx = random_distribution(rng, inner, false);
      conditionals.emplace(x, np_tradeoff(px, qx));
      for (std::size_t i = 0; i < inner.size(); ++i) {
        Label joint_label = Label::pair(x, inner[i]);
        jw[joint_label] = p.prob(x) * px.weights()[i];
        jw_prime[joint_label] = p_prime.prob(x) * qx.weights()[i];
      }
    }
    std::vector<Label> labels;
    std::vector<double> w, w_prime;
    for (const auto& [l, v] : jw) {
      labels.push_back(l);
      w.push_back(v);
      w_prime.push_back(jw_prime[l]);
    }
    FiniteDistribution joint(labels, std::move(w), 1e-9);
    FiniteDistribution joint_prime(std::move(labels), std::move(w_prime),
                                   1e-9);

    TradeoffCurve chained = chain_rule(p, p_prime, conditionals);
    TradeoffCurve oracle = np_tradeoff(joint, joint_prime);
    double dev = max_curve_dev(chained, oracle);
    return {{"trial", t}, {"max_dev", dev}, {"pass", dev <= cfg.tol}};
  };
  return finish(cfg, "chain-rule", run_trials(cfg, trial));
}

nlohmann::json run_blackwell_campaign(const CampaignConfig& cfg) {
  auto trial = [&](int t) -> nlohmann::json {
    auto rng = trial_rng(cfg.seed, t);
    auto [p, p_prime] = random_pair(rng, cfg.max_support, true);
    FiniteDistribution x = p, x_prime = p_prime;
    std::uniform_int_distribution<int> coin(0, 1);
    if (coin(rng) == 1) {
      // Post-process so dominance holds by data processing.
      auto k = random_kernel(rng, x.labels(), cfg.max_support);
      x = pushforward(p, k);
      x_prime = pushforward(p_prime, k);
    } else {
      auto [a, b] = random_pair(rng, cfg.max_support, true);
      x = a;
      x_prime = b;
    }
    // Feasible iff the target pair is at least as hard to tell apart:
    // T(p, p')(alpha) <= T(x, x')(alpha) everywhere.
    bool dominance =
        poset_leq(np_tradeoff(x, x_prime), np_tradeoff(p, p_prime), cfg.tol);
    bool dead_zone = false;
    bool feasible = false;
    double push_dev = 0.0;
    try {
      auto k = find_channel(p, p_prime, x, x_prime);
      feasible = k.has_value();
      if (feasible) {
        push_dev = std::max(max_dist_dev(pushforward(p, *k), x),
                            max_dist_dev(pushforward(p_prime, *k), x_prime));
      }
    } catch (const NumericalFailureError&) {
      dead_zone = true;
    }
    bool pass = dead_zone || (feasible == dominance && push_dev <= cfg.tol);
    return {{"trial", t},       {"dominance", dominance},
            {"feasible", feasible}, {"dead_zone", dead_zone},
            {"push_dev", push_dev}, {"pass", pass}};
  };
  nlohmann::json trials = run_trials(cfg, trial);
  int dead = 0, feas = 0;
  for (const auto& t : trials) {
    if (t.value("dead_zone", false)) ++dead;
    if (t.value("feasible", false)) ++feas;
  }
  nlohmann::json report = finish(cfg, "blackwell", std::move(trials));
  report["dead_zone_count"] = dead;
  report["feasible_count"] = feas;
  report["infeasible_count"] = cfg.trials - feas - dead;
  return report;
}

nlohmann::json run_coupling_campaign(const CampaignConfig& cfg) {
  auto trial = [&](int t) -> nlohmann::json {
    auto rng = trial_rng(cfg.seed, t);
    auto [x, x_prime] = random_pair(rng, cfg.max_support, true);
    auto [y, y_prime] = random_pair(rng, cfg.max_support, true);
    TradeoffCurve f =
        sup_set({np_tradeoff(x, x_prime), np_tradeoff(y, y_prime)});
    auto [joint, joint_prime] = couple(f, x, x_prime, y, y_prime);
    double marg_dev =
        std::max({max_dist_dev(joint.left_marginal(), x),
                  max_dist_dev(joint.right_marginal(), y),
                  max_dist_dev(joint_prime.left_marginal(), x_prime),
                  max_dist_dev(joint_prime.right_marginal(), y_prime)});
    double gap =
        max_curve_gap(np_tradeoff(joint.dist(), joint_prime.dist()), f);
    bool pass = marg_dev <= cfg.tol && gap <= cfg.tol;
    return {{"trial", t}, {"marginal_dev", marg_dev},
            {"curve_gap", gap}, {"pass", pass}};
  };
  return finish(cfg, "coupling", run_trials(cfg, trial));
}

nlohmann::json run_reduction_campaign(const CampaignConfig& cfg) {
  auto trial = [&](int t) -> nlohmann::json {
    auto rng = trial_rng(cfg.seed, t);
    Mechanism m = random_mechanism(rng, cfg.max_depth, cfg.max_alphabet, true);
    ReductionResult r = reduce(m, "x", "xp", cfg.guard);
    ReductionReport rep = verify_reduction(m, "x", "xp", r, cfg.guard, cfg.tol);
    return {{"trial", t},
            {"max_view_dev",
             std::max(rep.max_view_dev, rep.max_view_dev_prime)},
            {"curve_gap", rep.curve_gap},
            {"pass", rep.pass}};
  };
  return finish(cfg, "reduction", run_trials(cfg, trial));
}

nlohmann::json run_concomp_campaign(const CampaignConfig& cfg) {
  auto trial = [&](int t) -> nlohmann::json {
    auto rng = trial_rng(cfg.seed, t);
    // Depth-1 components keep the composed adversary space enumerable.
    Mechanism m1 = random_mechanism(rng, 1, cfg.max_alphabet, false);
    Mechanism m2 = random_mechanism(rng, 1, cfg.max_alphabet, false);
    Mechanism composed = concomp({m1, m2});
    TradeoffCurve concurrent =
        mechanism_privacy(composed, "x", "xp", cfg.guard);
    ReductionResult r1 = reduce(m1, "x", "xp", cfg.guard);
    ReductionResult r2 = reduce(m2, "x", "xp", cfg.guard);
    TradeoffCurve composed_curve =
        np_tradeoff(product(r1.y, r2.y).dist(),
                    product(r1.y_prime, r2.y_prime).dist());
    // The concurrent curve must stay above the non-interactive composition.
    double gap = max_curve_gap(concurrent, composed_curve);
    return {{"trial", t}, {"curve_gap", gap}, {"pass", gap <= cfg.tol}};
  };
  return finish(cfg, "concomp", run_trials(cfg, trial));
}

nlohmann::json run_rdp_campaign(const CampaignConfig& cfg) {
  auto trial = [&](int t) -> nlohmann::json {
    auto rng = trial_rng(cfg.seed, t);
    Mechanism m1 = random_mechanism(rng, 1, cfg.max_alphabet, false);
    Mechanism m2 = random_mechanism(rng, 1, cfg.max_alphabet, false);
    const double orders[] = {1.5, 2.0, 4.0};
    std::uniform_int_distribution<int> pick(0, 2);
    double alpha = orders[pick(rng)];
    RdpReport rep = verify_rdp_concurrent({m1, m2}, "x", "xp", alpha,
                                          cfg.guard, cfg.tol);
    double sum = 0.0;
    for (double e : rep.per_component) sum += e;
    return {{"trial", t},
            {"alpha", alpha},
            {"sum", sum},
            {"concurrent", rep.concurrent},
            {"product_value", rep.product_value},
            {"pass", rep.additive && !rep.infinite}};
  };
  return finish(cfg, "rdp", run_trials(cfg, trial));
}

nlohmann::json run_supset_campaign(const CampaignConfig& cfg) {
  auto trial = [&](int t) -> nlohmann::json {
    auto rng = trial_rng(cfg.seed, t);
    std::uniform_int_distribution<std::size_t> size_draw(1, 4);
    std::vector<TradeoffCurve> curves;
    std::size_t n = size_draw(rng);
    for (std::size_t i = 0; i < n; ++i) {
      curves.push_back(random_curve(rng, cfg.max_support));
    }
    TradeoffCurve env = sup_set(curves);

    // Every feasible witness must sit on or above the envelope.
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::exponential_distribution<double> exp_draw(1.0);
    double worst_violation = 0.0;
    for (int w = 0; w < 500; ++w) {
      MixtureWitness witness;
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        witness.weights.push_back(exp_draw(rng));
        witness.budgets.push_back(unif(rng));
        total += witness.weights.back();
      }
      double mean_budget = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        witness.weights[i] /= total;
        mean_budget += witness.weights[i] * witness.budgets[i];
      }
      double value = mixture_value(curves, witness, mean_budget);
      worst_violation =
          std::max(worst_violation, env(mean_budget) - value);
    }

    // Attainment: at every grid point some witness achieves the envelope.
    double worst_attain = 0.0;
    const auto& pts = env.breakpoints();
    auto curve_at = [&](double a, double b) -> std::size_t {
      for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(curves[i](a) - b) <= 1e-7) return i;
      }
      return n;  // should not happen: hull vertices lie on some curve
    };
    for (double a : alpha_grid({env})) {
      std::size_t seg = 0;
      while (seg + 2 < pts.size() && pts[seg + 1].first < a) ++seg;
      auto [a1, b1] = pts[seg];
      auto [a2, b2] = pts[seg + 1];
      std::size_t i1 = curve_at(a1, b1);
      std::size_t i2 = curve_at(a2, b2);
      if (i1 == n || i2 == n) {
        worst_attain = kInf;
        break;
      }
      MixtureWitness witness;
      witness.weights.assign(n, 0.0);
      witness.budgets.assign(n, 0.0);
      if (i1 == i2) {
        // The hosting curve is linear across the segment; spend a directly.
        witness.weights[i1] = 1.0;
        witness.budgets[i1] = a;
      } else {
        double theta = a2 == a1 ? 1.0 : (a2 - a) / (a2 - a1);
        witness.weights[i1] = theta;
        witness.weights[i2] = 1.0 - theta;
        witness.budgets[i1] = a1;
        witness.budgets[i2] = a2;
      }
      double value = mixture_value(curves, witness, a);
      worst_attain = std::max(worst_attain, value - env(a));
    }
    bool pass = worst_violation <= cfg.tol && worst_attain <= 1e-6;
    return {{"trial", t},
            {"worst_violation", worst_violation},
            {"worst_attainment_gap", worst_attain},
            {"pass", pass}};
  };
  return finish(cfg, "supset", run_trials(cfg, trial));
}

nlohmann::json run_measures_campaign(const CampaignConfig& cfg) {
  auto trial = [&](int t) -> nlohmann::json {
    auto rng = trial_rng(cfg.seed, t);
    auto [p, q] = random_pair(rng, cfg.max_support, false);
    auto k = random_kernel(rng, p.labels(), cfg.max_support);
    FiniteDistribution kp = pushforward(p, k);
    FiniteDistribution kq = pushforward(q, k);

    double worst = 0.0;
    // Post-processing never increases any of the divergences.
    for (double alpha : {1.5, 2.0, 4.0}) {
      worst = std::max(worst, renyi_divergence(kp, kq, alpha) -
                                  renyi_divergence(p, q, alpha));
    }
    worst = std::max(worst, max_divergence(kp, kq) - max_divergence(p, q));
    // For curves, processing can only push the pair toward 1 - alpha.
    worst = std::max(worst,
                     max_curve_gap(np_tradeoff(kp, kq), np_tradeoff(p, q)));

    // Mixtures: same-index mixing never exceeds the worst component for
    // max and Renyi, and the mixed pair's curve stays above the envelope.
    auto [p2, q2] = random_pair(rng, cfg.max_support, false);
    std::uniform_real_distribution<double> unif(0.05, 0.95);
    double theta = unif(rng);
    auto relabel = [](const FiniteDistribution& d, const std::string& tag) {
      std::vector<Label> ls;
      for (const auto& l : d.labels()) {
        ls.push_back(Label::atom(tag + l.str()));
      }
      return FiniteDistribution(ls, d.weights(), 1e-9);
    };
    // Disjoint relabeling keeps the two components on separate outcome
    // sets; the mixture identity needs a common measurable space only.
    FiniteDistribution pa = relabel(p, "l_"), qa = relabel(q, "l_");
    FiniteDistribution pb = relabel(p2, "r_"), qb = relabel(q2, "r_");
    FiniteDistribution pm = mix({pa, pb}, {theta, 1.0 - theta});
    FiniteDistribution qm = mix({qa, qb}, {theta, 1.0 - theta});
    for (double alpha : {1.5, 2.0, 4.0}) {
      double bound = std::max(renyi_divergence(pa, qa, alpha),
                              renyi_divergence(pb, qb, alpha));
      worst = std::max(worst, renyi_divergence(pm, qm, alpha) - bound);
    }
    worst = std::max(worst,
                     std::max(max_divergence(pm, qm),
                              0.0) -
                         std::max(max_divergence(pa, qa),
                                  max_divergence(pb, qb)));
    TradeoffCurve envelope =
        sup_set({np_tradeoff(pa, qa), np_tradeoff(pb, qb)});
    worst = std::max(worst, max_curve_gap(np_tradeoff(pm, qm), envelope));

    // KL chain rule on a random joint: joint divergence splits into the
    // first-marginal term plus the expected conditional term.
    double base = kl_divergence(p, q);
    double expected = 0.0;
    std::map<Label, double> jw, jw_prime;
    for (std::size_t i = 0; i < p.size(); ++i) {
      std::uniform_int_distribution<std::size_t> size_draw(2,
                                                           cfg.max_support);
      auto inner = numbered_labels("y", size_draw(rng));
      auto px = random_distribution(rng, inner, false);
      auto qx = random_distribution(rng, inner, false);
      expected += p.weights()[i] * kl_divergence(px, qx);
      for (std::size_t j = 0; j < inner.size(); ++j) {
        Label l = Label::pair(p.labels()[i], inner[j]);
        jw[l] = p.weights()[i] * px.weights()[j];
        jw_prime[l] = q.prob(p.labels()[i]) * qx.weights()[j];
      }
    }
    std::vector<Label> labels;
    std::vector<double> w, w_prime;
    for (const auto& [l, v] : jw) {
      labels.push_back(l);
      w.push_back(v);
      w_prime.push_back(jw_prime[l]);
    }
    FiniteDistribution joint(labels, std::move(w), 1e-9);
    FiniteDistribution joint_prime(std::move(labels), std::move(w_prime),
                                   1e-9);
    double chain_dev =
        std::abs(kl_divergence(joint, joint_prime) - (base + expected));
    worst = std::max(worst, chain_dev);

    return {{"trial", t}, {"worst_dev", worst}, {"pass", worst <= cfg.tol}};
  };
  return finish(cfg, "measures", run_trials(cfg, trial));
}

nlohmann::json run_campaign(const std::string& name,
                            const CampaignConfig& cfg) {
  if (name == "chain-rule") return run_chain_rule_campaign(cfg);
  if (name == "blackwell") return run_blackwell_campaign(cfg);
  if (name == "coupling") return run_coupling_campaign(cfg);
  if (name == "reduction") return run_reduction_campaign(cfg);
  if (name == "concomp") return run_concomp_campaign(cfg);
  if (name == "rdp") return run_rdp_campaign(cfg);
  if (name == "supset") return run_supset_campaign(cfg);
  if (name == "measures") return run_measures_campaign(cfg);
  throw InvalidParamError("unknown campaign " + name);
}

std::vector<std::string> campaign_names() {
  return {"chain-rule", "blackwell", "coupling", "reduction",
          "concomp",    "rdp",       "supset",   "measures"};
}

}  // namespace concomp

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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "concomp/errors.hpp"
#include "concomp/interactive.hpp"
#include "concomp/random_instances.hpp"
#include "doctest.h"

using namespace concomp;

namespace {

AdversaryStrategy constant_strategy(const Mechanism& m,
                                    const std::string& q) {
  // Plays q at every decision point of a depth-1 mechanism.
  AdversaryStrategy b;
  if (m.mech_first()) {
    for (const auto& a : m.reachable_answers({})) b.choices[{a}] = q;
  } else {
    b.choices[{}] = q;
  }
  return b;
}

// Two-query round followed by a second round; kernels chosen by hand.
Mechanism two_round_mechanism() {
  std::map<std::string, FiniteDistribution> kernel;
  auto row = [](double p1) {
    return FiniteDistribution({Label::atom("a0"), Label::atom("a1")},
                              {1.0 - p1, p1});
  };
  for (const std::string& ds : {"x", "xp"}) {
    double bias = ds == "x" ? 0.7 : 0.3;
    kernel.emplace(ds + "|q0", row(bias));
    kernel.emplace(ds + "|q1", row(1.0 - bias));
    for (const std::string& q : {"q0", "q1"}) {
      for (const std::string& a : {"a0", "a1"}) {
        for (const std::string& q2 : {"r0", "r1"}) {
          double b2 = (a == "a1") == (q2 == "r1") ? bias : 0.5;
          kernel.emplace(ds + "|" + q + "," + a + "," + q2, row(b2));
        }
      }
    }
  }
  return Mechanism::from_rounds(
      {"x", "xp"},
      {Mechanism::Round{{"q0", "q1"}, {"a0", "a1"}},
       Mechanism::Round{{"r0", "r1"}, {"a0", "a1"}}},
      kernel, false);
}

}  // namespace

TEST_CASE("randomized response views are the advertised Bernoullis") {
  auto m = randomized_response(std::log(2.0));
  auto b = constant_strategy(m, "q");
  auto v0 = view_distribution(m, "0", b);
  auto v1 = view_distribution(m, "1", b);
  auto t0 = Label::tuple({Label::atom("q"), Label::atom("0")});
  auto t1 = Label::tuple({Label::atom("q"), Label::atom("1")});
  CHECK(v0.prob(t0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(v1.prob(t1) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(v0.prob(t1) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("views always sum to one") {
  auto rng = std::mt19937_64(3);
  for (int t = 0; t < 10; ++t) {
    auto m = random_mechanism(rng, 2, 2, true);
    for (const auto& b : enumerate_adversaries(m)) {
      for (const auto& ds : m.datasets()) {
        auto v = view_distribution(m, ds, b);
        double mass = 0.0;
        for (double w : v.weights()) mass += w;
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("strategy counts match the closed form") {
  auto m1 = two_round_mechanism();
  // Depth 2, 2 queries per round, 2 answers: 2 * 2^2 = 8 strategies.
  CHECK(enumerate_adversaries(m1).size() == 8);
  CHECK(enumerate_adversaries(randomized_response(1.0)).size() == 1);
  CHECK_THROWS_AS(enumerate_adversaries(m1, 7), ExplosionGuardError);
}

TEST_CASE("undefined strategy histories are reported") {
  auto m = randomized_response(1.0);
  AdversaryStrategy empty;
  CHECK_THROWS_AS(view_distribution(m, "0", empty), UndefinedStrategyError);
}

TEST_CASE("privacy of randomized response is the closed-form curve") {
  for (double eps : {0.3, std::log(2.0), 1.7}) {
    auto m = randomized_response(eps);
    CHECK(mechanism_privacy(m, "0", "1").approx_equal(f_eps_delta(eps, 0.0),
                                                      1e-9));
  }
  // eps = 0 reveals nothing.
  CHECK(mechanism_privacy(randomized_response(0.0), "0", "1")
            .approx_equal(TradeoffCurve::perfect_privacy(), 1e-9));
}

TEST_CASE("privacy picks the more revealing query") {
  std::map<std::string, FiniteDistribution> kernel;
  auto row = [](double p1) {
    return FiniteDistribution({Label::atom("a0"), Label::atom("a1")},
                              {1.0 - p1, p1});
  };
  // weak barely separates the datasets, strong separates them a lot.
  kernel.emplace("x|weak", row(0.55));
  kernel.emplace("xp|weak", row(0.45));
  kernel.emplace("x|strong", row(0.9));
  kernel.emplace("xp|strong", row(0.1));
  auto m = Mechanism::from_rounds(
      {"x", "xp"}, {Mechanism::Round{{"weak", "strong"}, {"a0", "a1"}}},
      kernel, false);
  auto weak_curve = np_tradeoff(row(0.55), row(0.45));
  auto strong_curve = np_tradeoff(row(0.9), row(0.1));
  auto privacy = mechanism_privacy(m, "x", "xp");
  CHECK(privacy.approx_equal(sup_set({weak_curve, strong_curve}), 1e-9));
  CHECK(privacy.approx_equal(strong_curve, 1e-9));  // nested here
}

TEST_CASE("dataset-blind mechanisms have perfect privacy") {
  std::map<std::string, FiniteDistribution> kernel;
  auto row = FiniteDistribution({Label::atom("a0"), Label::atom("a1")},
                                {0.5, 0.5});
  kernel.emplace("x|q", row);
  kernel.emplace("xp|q", row);
  auto m = Mechanism::from_rounds(
      {"x", "xp"}, {Mechanism::Round{{"q"}, {"a0", "a1"}}}, kernel, false);
  CHECK(mechanism_privacy(m, "x", "xp")
            .approx_equal(TradeoffCurve::perfect_privacy(), 1e-9));
}

TEST_CASE("hand-computed depth-2 view weights") {
  auto m = two_round_mechanism();
  AdversaryStrategy b;
  b.choices[{}] = "q0";
  b.choices[{"a0"}] = "r0";
  b.choices[{"a1"}] = "r1";
  auto v = view_distribution(m, "x", b);
  // P(a1 after q0) = 0.7; then r1 with matching parity uses bias 0.7.
  auto t = Label::tuple({Label::atom("q0"), Label::atom("a1"),
                         Label::atom("r1"), Label::atom("a1")});
  CHECK(v.prob(t) == doctest::Approx(0.7 * 0.7).epsilon(1e-12));
  auto t2 = Label::tuple({Label::atom("q0"), Label::atom("a0"),
                          Label::atom("r0"), Label::atom("a1")});
  CHECK(v.prob(t2) == doctest::Approx(0.3 * 0.7).epsilon(1e-12));
}

TEST_CASE("residual flips the schedule") {
  auto m = two_round_mechanism();
  auto sub = m.residual("q0");
  CHECK(sub.mech_first());
  CHECK(sub.depth() == 1);
  auto leaf = sub.residual("a0");
  CHECK_FALSE(leaf.mech_first());
  CHECK(leaf.depth() == 1);
}

TEST_CASE("single-component composition preserves views") {
  auto m = randomized_response(std::log(2.0));
  auto c = concomp::concomp({m});
  AdversaryStrategy lifted;
  lifted.choices[{}] = "1#q";
  auto v = view_distribution(c, "0", lifted);
  auto t = Label::tuple({Label::atom("1#q"), Label::atom("0")});
  CHECK(v.prob(t) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(c.depth() == 1);
}

TEST_CASE("composing two responses yields product views") {
  auto m = randomized_response(std::log(2.0));
  auto c = concomp::concomp({m, m});
  AdversaryStrategy b;
  b.choices[{}] = "1#q";
  b.choices[{{"0"}}] = "2#q";
  b.choices[{{"1"}}] = "2#q";
  auto v0 = view_distribution(c, "0", b);
  // Coins are independent across components.
  auto t = Label::tuple({Label::atom("1#q"), Label::atom("0"),
                         Label::atom("2#q"), Label::atom("0")});
  CHECK(v0.prob(t) == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
  auto t2 = Label::tuple({Label::atom("1#q"), Label::atom("0"),
                          Label::atom("2#q"), Label::atom("1")});
  CHECK(v0.prob(t2) == doctest::Approx(2.0 / 9.0).epsilon(1e-12));
  // Two strategies: the first pick is free, the remaining query is forced.
  CHECK(enumerate_adversaries(c).size() == 2);
}

TEST_CASE("composition rejects mismatched datasets") {
  auto m = randomized_response(1.0);
  std::map<std::string, FiniteDistribution> kernel;
  auto row = FiniteDistribution({Label::atom("a")}, {1.0});
  kernel.emplace("u|q", row);
  kernel.emplace("v|q", row);
  auto other = Mechanism::from_rounds(
      {"u", "v"}, {Mechanism::Round{{"q"}, {"a"}}}, kernel, false);
  CHECK_THROWS_AS(concomp::concomp({m, other}), InvalidParamError);
}

TEST_CASE("randomized adversaries never beat the deterministic envelope") {
  auto m = two_round_mechanism();
  auto adversaries = enumerate_adversaries(m);
  auto privacy = mechanism_privacy(m, "x", "xp");
  // Mix two deterministic strategies with a fair coin: the resulting views
  // are mixtures, and their curve stays above the envelope.
  auto v_mix = mix({view_distribution(m, "x", adversaries[0]),
                    view_distribution(m, "x", adversaries[5])},
                   {0.5, 0.5});
  auto v_mix_prime = mix({view_distribution(m, "xp", adversaries[0]),
                          view_distribution(m, "xp", adversaries[5])},
                         {0.5, 0.5});
  auto mixed_curve = np_tradeoff(v_mix, v_mix_prime);
  for (int i = 0; i <= 20; ++i) {
    double a = i / 20.0;
    CHECK(mixed_curve(a) >= privacy(a) - 1e-9);
  }
}

TEST_CASE("mechanism JSON round trip preserves views") {
  auto rng = std::mt19937_64(9);
  for (int t = 0; t < 5; ++t) {
    auto m = random_mechanism(rng, 2, 2, true);
    auto back = Mechanism::from_json(m.to_json());
    CHECK(back.to_json() == m.to_json());
    for (const auto& b : enumerate_adversaries(m)) {
      CHECK(view_distribution(back, "x", b)
                .approx_equal(view_distribution(m, "x", b), 1e-12));
    }
  }
}

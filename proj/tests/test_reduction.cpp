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
#include "concomp/random_instances.hpp"
#include "concomp/reduction.hpp"
#include "concomp/tradeoff.hpp"
#include "doctest.h"

using namespace concomp;

namespace {

FiniteDistribution row(double p1) {
  return FiniteDistribution({Label::atom("a0"), Label::atom("a1")},
                            {1.0 - p1, p1});
}

// Mechanism-first: a prologue answer, then one binary query whose kernel
// depends on the prologue outcome.
Mechanism mech_first_toy() {
  std::map<std::string, FiniteDistribution> kernel;
  auto prologue = [](double p1) {
    return FiniteDistribution({Label::atom("p0"), Label::atom("p1")},
                              {1.0 - p1, p1});
  };
  kernel.emplace("x|", prologue(0.7));
  kernel.emplace("xp|", prologue(0.4));
  for (const std::string& a : {"p0", "p1"}) {
    for (const std::string& q : {"q0", "q1"}) {
      double bx = a == "p1" ? 0.8 : 0.6;
      double bxp = q == "q1" ? 0.3 : 0.5;
      kernel.emplace("x|" + a + "," + q, row(bx));
      kernel.emplace("xp|" + a + "," + q, row(bxp));
    }
  }
  return Mechanism::from_rounds(
      {"x", "xp"},
      {Mechanism::Round{{}, {"p0", "p1"}},
       Mechanism::Round{{"q0", "q1"}, {"a0", "a1"}}},
      kernel, true);
}

}  // namespace

TEST_CASE("depth-1 single query reduces to the answer pair itself") {
  auto m = randomized_response(std::log(2.0));
  auto r = reduce(m, "0", "1");
  // The seed pair carries exactly the answer distributions.
  CHECK(np_tradeoff(r.y, r.y_prime)
            .approx_equal(f_eps_delta(std::log(2.0), 0.0), 1e-9));
  auto rep = verify_reduction(m, "0", "1", r);
  CHECK(rep.pass);
  CHECK(rep.max_view_dev <= 1e-9);
}

TEST_CASE("depth-1 two-query reduction couples both marginals") {
  std::map<std::string, FiniteDistribution> kernel;
  kernel.emplace("x|q0", row(0.8));
  kernel.emplace("xp|q0", row(0.4));
  kernel.emplace("x|q1", row(0.3));
  kernel.emplace("xp|q1", row(0.6));
  auto m = Mechanism::from_rounds(
      {"x", "xp"}, {Mechanism::Round{{"q0", "q1"}, {"a0", "a1"}}}, kernel,
      false);
  auto r = reduce(m, "x", "xp");
  auto rep = verify_reduction(m, "x", "xp", r);
  CHECK(rep.pass);
  // Seeds are tuples aligned with (q0, q1): coordinate sums recover each
  // query's answer distribution.
  double q0_a1 = 0.0;
  for (std::size_t i = 0; i < r.y.size(); ++i) {
    if (r.y.labels()[i].parts()[0] == Label::atom("a1")) {
      q0_a1 += r.y.weights()[i];
    }
  }
  CHECK(q0_a1 == doctest::Approx(0.8).epsilon(1e-9));
}

TEST_CASE("mechanism-first chains match the chain rule") {
  auto m = mech_first_toy();
  auto r = reduce(m, "x", "xp");
  auto rep = verify_reduction(m, "x", "xp", r);
  CHECK(rep.pass);

  // Cross-module identity: the seed curve equals the budget-allocation
  // chain of the per-branch curves over the prologue marginals.
  auto a = m.answer_dist("x", {});
  auto a_prime = m.answer_dist("xp", {});
  std::map<Label, TradeoffCurve> branches;
  for (const auto& tok : {"p0", "p1"}) {
    auto sub = m.residual(tok);
    branches.emplace(Label::atom(tok), mechanism_privacy(sub, "x", "xp"));
  }
  auto chained = chain_rule(a, a_prime, branches);
  CHECK(np_tradeoff(r.y, r.y_prime).approx_equal(chained, 1e-9));
  CHECK(r.privacy_curve.approx_equal(chained, 1e-9));
}

TEST_CASE("simulate_view of the identity relay equals the source view") {
  auto m = randomized_response(1.0);
  auto r = reduce(m, "0", "1");
  AdversaryStrategy b;
  b.choices[{}] = "q";
  CHECK(simulate_view(r.proc, r.y, b)
            .approx_equal(view_distribution(m, "0", b), 1e-12));
  CHECK(simulate_view(r.proc, r.y_prime, b)
            .approx_equal(view_distribution(m, "1", b), 1e-12));
}

TEST_CASE("swapped seeds fail verification") {
  auto m = randomized_response(std::log(2.0));
  auto r = reduce(m, "0", "1");
  ReductionResult swapped = r;
  std::swap(swapped.y, swapped.y_prime);
  auto rep = verify_reduction(m, "0", "1", swapped);
  CHECK_FALSE(rep.pass);
  CHECK(rep.max_view_dev > 1e-3);
}

TEST_CASE("a constant processor fails unless the mechanism is blind") {
  auto m = randomized_response(std::log(2.0));
  auto r = reduce(m, "0", "1");
  ReductionResult broken = r;
  for (auto& [key, dist] : broken.proc.rules) {
    dist = FiniteDistribution({Label::atom("0"), Label::atom("1")},
                              {0.5, 0.5});
  }
  CHECK_FALSE(verify_reduction(m, "0", "1", broken).pass);
}

TEST_CASE("random mechanisms reduce exactly") {
  auto rng = std::mt19937_64(41);
  for (int t = 0; t < 10; ++t) {
    auto m = random_mechanism(rng, 2, 2, true);
    auto r = reduce(m, "x", "xp");
    auto rep = verify_reduction(m, "x", "xp", r);
    CHECK(rep.pass);
    CHECK(rep.max_view_dev <= 1e-9);
    CHECK(rep.max_view_dev_prime <= 1e-9);
    CHECK(rep.curve_gap <= 1e-9);
  }
}

TEST_CASE("reduction is deterministic") {
  auto rng1 = std::mt19937_64(77);
  auto rng2 = std::mt19937_64(77);
  auto m1 = random_mechanism(rng1, 2, 2, true);
  auto m2 = random_mechanism(rng2, 2, 2, true);
  auto r1 = reduce(m1, "x", "xp");
  auto r2 = reduce(m2, "x", "xp");
  CHECK(r1.to_json() == r2.to_json());
}

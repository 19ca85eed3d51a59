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

#include "concomp/blackwell.hpp"
#include "concomp/errors.hpp"
#include "concomp/random_instances.hpp"
#include "doctest.h"

using namespace concomp;

namespace {

FiniteDistribution bern(double p1) {
  return FiniteDistribution({Label::atom("0"), Label::atom("1")},
                            {1.0 - p1, p1});
}

double e_frac(double eps) { return std::exp(eps) / (1.0 + std::exp(eps)); }

}  // namespace

TEST_CASE("feasibility solver on one-variable systems") {
  FeasibilityProblem p;
  p.num_vars = 1;
  p.rows = {{1.0}};
  p.rhs = {1.0};
  auto r = solve_feasibility(p);
  REQUIRE(r.feasible);
  CHECK(r.point[0] == doctest::Approx(1.0).epsilon(1e-12));

  p.rhs = {-1.0};
  CHECK_FALSE(solve_feasibility(p).feasible);
}

TEST_CASE("doubly stochastic completion with uniform marginals") {
  // 2x2 matrix, rows sum to 1, both column pushforwards (1/2, 1/2).
  FeasibilityProblem p;
  p.num_vars = 4;  // k00 k01 k10 k11
  p.rows = {{1, 1, 0, 0}, {0, 0, 1, 1}, {0.5, 0, 0.5, 0}, {0, 0.5, 0, 0.5}};
  p.rhs = {1.0, 1.0, 0.5, 0.5};
  auto r = solve_feasibility(p);
  REQUIRE(r.feasible);
  CHECK(r.point[0] + r.point[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(0.5 * (r.point[0] + r.point[2]) ==
        doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("self-channel exists and reproduces the pair") {
  auto p = bern(0.7);
  auto q = bern(0.2);
  auto k = find_channel(p, q, p, q);
  REQUIRE(k.has_value());
  CHECK(pushforward(p, *k).approx_equal(p, 1e-9));
  CHECK(pushforward(q, *k).approx_equal(q, 1e-9));
}

TEST_CASE("less private source simulates the more private target") {
  auto p3 = bern(e_frac(std::log(3.0)));
  auto q3 = bern(1.0 - e_frac(std::log(3.0)));
  auto p2 = bern(e_frac(std::log(2.0)));
  auto q2 = bern(1.0 - e_frac(std::log(2.0)));
  CHECK(find_channel(p3, q3, p2, q2).has_value());
  CHECK_FALSE(find_channel(p2, q2, p3, q3).has_value());
}

TEST_CASE("channel from the canonical pair exists under dominance") {
  auto rng = std::mt19937_64(11);
  for (int t = 0; t < 20; ++t) {
    auto [x, x_prime] = random_pair(rng, 4, true);
    auto f = np_tradeoff(x, x_prime);
    auto [p, q] = canonical_pair(f);
    auto k = find_channel(p, q, x, x_prime);
    REQUIRE(k.has_value());
    CHECK(pushforward(p, *k).approx_equal(x, 1e-9));
    CHECK(pushforward(q, *k).approx_equal(x_prime, 1e-9));
  }
}

TEST_CASE("coupling two ln2 pairs at f_{ln2,0} is tight") {
  auto x = bern(2.0 / 3.0);
  auto x_prime = bern(1.0 / 3.0);
  auto f = f_eps_delta(std::log(2.0), 0.0);
  auto [joint, joint_prime] = couple(f, x, x_prime, x, x_prime);
  CHECK(joint.left_marginal().approx_equal(x, 1e-9));
  CHECK(joint.right_marginal().approx_equal(x, 1e-9));
  CHECK(joint_prime.left_marginal().approx_equal(x_prime, 1e-9));
  CHECK(joint_prime.right_marginal().approx_equal(x_prime, 1e-9));
  // The coupled pair realizes f itself, not the two-fold composition.
  CHECK(np_tradeoff(joint.dist(), joint_prime.dist()).approx_equal(f, 1e-9));
}

TEST_CASE("perfect privacy forces identical joints") {
  auto x = bern(0.4);
  auto f = TradeoffCurve::perfect_privacy();
  auto [joint, joint_prime] = couple(f, x, x, x, x);
  CHECK(joint.dist().approx_equal(joint_prime.dist(), 1e-9));
}

TEST_CASE("dominance violations are rejected") {
  auto x = bern(2.0 / 3.0);
  auto x_prime = bern(1.0 / 3.0);
  // f stricter than the pair can support.
  auto f = TradeoffCurve::perfect_privacy();
  CHECK_THROWS_AS(couple(f, x, x_prime, x, x_prime), DominanceViolatedError);
}

TEST_CASE("multi_couple with one pair matches couple") {
  auto x = bern(2.0 / 3.0);
  auto x_prime = bern(1.0 / 3.0);
  auto f = np_tradeoff(x, x_prime);
  auto fam = multi_couple(f, {{x, x_prime}});
  CHECK(np_tradeoff(fam.joint, fam.joint_prime).approx_equal(f, 1e-9));
}

TEST_CASE("multi_couple of three ln2 pairs keeps the shared curve") {
  auto x = bern(2.0 / 3.0);
  auto x_prime = bern(1.0 / 3.0);
  auto f = f_eps_delta(std::log(2.0), 0.0);
  auto fam = multi_couple(f, {{x, x_prime}, {x, x_prime}, {x, x_prime}});
  CHECK(np_tradeoff(fam.joint, fam.joint_prime).approx_equal(f, 1e-9));
  // Every coordinate marginal is the original pair.
  for (int coord = 0; coord < 3; ++coord) {
    std::map<Label, double> m, m_prime;
    for (std::size_t i = 0; i < fam.joint.size(); ++i) {
      const auto& part = fam.joint.labels()[i].parts()[coord];
      m[part] += fam.joint.weights()[i];
      m_prime[part] += fam.joint_prime.prob(fam.joint.labels()[i]);
    }
    CHECK(m[Label::atom("1")] == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(m_prime[Label::atom("1")] ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  }
}

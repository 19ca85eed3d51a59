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
#include "concomp/renyi.hpp"
#include "doctest.h"

using namespace concomp;

namespace {

FiniteDistribution row(double p1) {
  return FiniteDistribution({Label::atom("a0"), Label::atom("a1")},
                            {1.0 - p1, p1});
}

}  // namespace

TEST_CASE("optimal adversary value on randomized response") {
  auto m = randomized_response(std::log(2.0));
  auto [b, v] = optimal_rdp_adversary(m, "0", "1", 2.0);
  CHECK(v == doctest::Approx(std::log(1.5)).epsilon(1e-12));
  CHECK_THROWS_AS(optimal_rdp_adversary(m, "0", "1", 1.0), InvalidOrderError);
}

TEST_CASE("blind mechanisms have zero optimal divergence") {
  std::map<std::string, FiniteDistribution> kernel;
  kernel.emplace("x|q", row(0.5));
  kernel.emplace("xp|q", row(0.5));
  auto m = Mechanism::from_rounds(
      {"x", "xp"}, {Mechanism::Round{{"q"}, {"a0", "a1"}}}, kernel, false);
  auto [b, v] = optimal_rdp_adversary(m, "x", "xp", 2.0);
  CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("the more revealing query wins the argmax") {
  std::map<std::string, FiniteDistribution> kernel;
  kernel.emplace("x|weak", row(0.55));
  kernel.emplace("xp|weak", row(0.45));
  kernel.emplace("x|strong", row(0.9));
  kernel.emplace("xp|strong", row(0.1));
  auto m = Mechanism::from_rounds(
      {"x", "xp"}, {Mechanism::Round{{"weak", "strong"}, {"a0", "a1"}}},
      kernel, false);
  auto [b, v] = optimal_rdp_adversary(m, "x", "xp", 2.0);
  CHECK(b.choices.at({}) == "strong");
  CHECK(v == doctest::Approx(renyi_divergence(row(0.9), row(0.1), 2.0))
                 .epsilon(1e-12));
}

TEST_CASE("product adversary views multiply and divergences add") {
  auto m = randomized_response(std::log(2.0));
  AdversaryStrategy single;
  single.choices[{}] = "q";
  auto prod = product_adversary({m, m}, {single, single});
  auto composed = concomp::concomp({m, m});
  auto v0 = view_distribution(composed, "0", prod);
  auto v1 = view_distribution(composed, "1", prod);
  double d = renyi_divergence(v0, v1, 2.0);
  CHECK(d == doctest::Approx(2.0 * std::log(1.5)).epsilon(1e-9));
}

TEST_CASE("two ln2 components compose additively at order 2") {
  auto m = randomized_response(std::log(2.0));
  auto rep = verify_rdp_concurrent({m, m}, "0", "1", 2.0);
  REQUIRE(rep.per_component.size() == 2);
  CHECK(rep.per_component[0] == doctest::Approx(std::log(1.5)).epsilon(1e-9));
  CHECK(rep.per_component[1] == doctest::Approx(std::log(1.5)).epsilon(1e-9));
  CHECK(rep.concurrent ==
        doctest::Approx(2.0 * std::log(1.5)).epsilon(1e-9));
  CHECK(rep.additive);
  CHECK_FALSE(rep.infinite);
}

TEST_CASE("single component concurrent optimum is its own optimum") {
  auto m = randomized_response(1.0);
  auto rep = verify_rdp_concurrent({m}, "0", "1", 2.0);
  CHECK(rep.concurrent == doctest::Approx(rep.per_component[0]).epsilon(1e-9));
  CHECK(rep.additive);
}

TEST_CASE("a blind component adds nothing") {
  std::map<std::string, FiniteDistribution> kernel;
  kernel.emplace("0|q", row(0.5));
  kernel.emplace("1|q", row(0.5));
  auto blind = Mechanism::from_rounds(
      {"0", "1"}, {Mechanism::Round{{"q"}, {"a0", "a1"}}}, kernel, false);
  auto m = randomized_response(std::log(2.0));
  auto rep = verify_rdp_concurrent({m, blind}, "0", "1", 2.0);
  CHECK(rep.concurrent == doctest::Approx(std::log(1.5)).epsilon(1e-9));
  CHECK(rep.additive);
}

TEST_CASE("random pairs stay additive across orders") {
  auto rng = std::mt19937_64(8);
  for (int t = 0; t < 10; ++t) {
    auto m1 = random_mechanism(rng, 1, 2, false);
    auto m2 = random_mechanism(rng, 1, 2, false);
    for (double alpha : {1.5, 2.0, 4.0}) {
      auto rep = verify_rdp_concurrent({m1, m2}, "x", "xp", alpha);
      CHECK(rep.additive);
    }
  }
}

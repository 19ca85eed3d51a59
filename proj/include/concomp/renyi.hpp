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
#ifndef CONCOMP_RENYI_HPP_
#define CONCOMP_RENYI_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "concomp/distribution.hpp"
#include "concomp/interactive.hpp"
#include "json.hpp"

namespace concomp {

// Exhaustive argmax over deterministic strategies of the order-alpha
// divergence between the two views. Ties break toward the canonically
// first strategy. The value may be +inf (a support violation).
std::pair<AdversaryStrategy, double> optimal_rdp_adversary(
    const Mechanism& m, const std::string& x, const std::string& x_prime,
    double alpha, std::uint64_t guard = kDefaultGuard);

// Round-robin interleaving of per-component strategies on the composed
// tagged alphabet: component 1's round 1, component 2's round 1, and so
// on, each decision reading only that component's own answers.
AdversaryStrategy product_adversary(const std::vector<Mechanism>& ms,
                                    const std::vector<AdversaryStrategy>& bs);

struct RdpReport {
  double alpha = 0.0;
  std::vector<double> per_component;  // optimum per mechanism
  double concurrent = 0.0;            // exhaustive optimum on the composite
  double product_value = 0.0;         // product-of-optimals strategy value
  AdversaryStrategy optimal_strategy;
  bool additive = false;  // concurrent == product == sum within tolerance
  bool infinite = false;  // some optimum is +inf

  nlohmann::json to_json() const;
};

// Verifies the concurrent composition of Renyi DP: the exhaustive optimum
// on concomp(ms) must equal both the sum of per-component optima and the
// value of the product-of-optimals adversary.
RdpReport verify_rdp_concurrent(const std::vector<Mechanism>& ms,
                                const std::string& x,
                                const std::string& x_prime, double alpha,
                                std::uint64_t guard = kDefaultGuard,
                                double tol = kTol);

}  // namespace concomp

#endif  // CONCOMP_RENYI_HPP_

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
#ifndef CONCOMP_INTERACTIVE_HPP_
#define CONCOMP_INTERACTIVE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "concomp/distribution.hpp"
#include "concomp/tradeoff.hpp"
#include "json.hpp"

namespace concomp {

// Transcript prefix: the message tokens exchanged so far, oldest first.
// Queries and answers interleave; a mechanism-first prologue answer, when
// present, is the first token.
using Prefix = std::vector<std::string>;

inline constexpr std::uint64_t kDefaultGuard = 1000000;

// Finite-communication interactive mechanism as a materialized game tree.
// The schedule alternates adversary-query / mechanism-answer rounds, with
// an optional mechanism-first prologue answer. Immutable once built.
class Mechanism {
 public:
  struct Round {
    std::vector<std::string> queries;
    std::vector<std::string> answers;
  };

  // Raw tree constructor. queries maps each adversary-node prefix to the
  // legal query tokens there; kernel maps (dataset, prefix ending with a
  // query, or the empty prefix for a prologue) to the answer distribution.
  Mechanism(std::vector<std::string> datasets, bool mech_first, int depth,
            std::map<Prefix, std::vector<std::string>> queries,
            std::map<std::pair<std::string, Prefix>, FiniteDistribution>
                kernel);

  // Builds from per-round alphabets: every adversary node in round r offers
  // rounds[r].queries. A mechanism-first prologue is encoded as a leading
  // round with empty queries. Validates kernel totality on the reachable
  // tree. Keeps the rounds so serialization is lossless.
  static Mechanism from_rounds(std::vector<std::string> datasets,
                               std::vector<Round> rounds,
                               const std::map<std::string, FiniteDistribution>&
                                   kernel_by_key,
                               bool mech_first);

  const std::vector<std::string>& datasets() const { return datasets_; }
  bool mech_first() const { return mech_first_; }
  // Number of adversary query rounds.
  int depth() const { return depth_; }

  // Legal queries at an adversary-node prefix; throws UndefinedKernelError
  // on unknown prefixes.
  const std::vector<std::string>& queries_at(const Prefix& prefix) const;
  // Answer distribution after a query (or at the prologue); throws
  // UndefinedKernelError when the entry is missing.
  const FiniteDistribution& answer_dist(const std::string& dataset,
                                        const Prefix& prefix) const;
  // Answers with positive probability under at least one dataset, sorted.
  std::vector<std::string> reachable_answers(const Prefix& prefix) const;

  // The mechanism after consuming one leading token. Consuming a query
  // flips to mechanism-first with one fewer round; consuming a prologue
  // answer flips to adversary-first at the same depth.
  Mechanism residual(const std::string& token) const;

  // Lossless only for mechanisms built from rounds; throws
  // InvalidParamError otherwise (composed trees have no round schema).
  nlohmann::json to_json() const;
  static Mechanism from_json(const nlohmann::json& j);

 private:
  std::vector<std::string> datasets_;
  bool mech_first_ = false;
  int depth_ = 0;
  std::map<Prefix, std::vector<std::string>> queries_;
  std::map<std::pair<std::string, Prefix>, FiniteDistribution> kernel_;
  std::vector<Round> rounds_;
  bool has_rounds_ = false;
};

// Deterministic adversary: the next query as a function of the answers
// received so far (prologue answer included).
struct AdversaryStrategy {
  std::map<std::vector<std::string>, std::string> choices;

  // Throws UndefinedStrategyError on unmapped histories.
  const std::string& query_for(const std::vector<std::string>& answers) const;

  auto operator<=>(const AdversaryStrategy&) const = default;
};

// Distribution of full transcripts (tuple of all tokens) when b drives m on
// the given dataset. Masses multiply along the kernel path.
FiniteDistribution view_distribution(const Mechanism& m,
                                     const std::string& dataset,
                                     const AdversaryStrategy& b);

// Exhaustive, duplicate-free list of deterministic strategies, in canonical
// order. Throws ExplosionGuardError when the count exceeds the guard.
std::vector<AdversaryStrategy> enumerate_adversaries(
    const Mechanism& m, std::uint64_t guard = kDefaultGuard);

// Tightest trade-off curve f with m f-DP on (x, x_prime): the poset
// supremum over all deterministic adversaries of the view-pair curve.
TradeoffCurve mechanism_privacy(const Mechanism& m, const std::string& x,
                                const std::string& x_prime,
                                std::uint64_t guard = kDefaultGuard);

// Concurrent composition: queries are tagged "j#q" (1-based component
// index), answers route to the owning component, and each component kernel
// sees only its own history. Components must be adversary-first and share
// dataset labels.
Mechanism concomp(const std::vector<Mechanism>& ms);

// Depth-1 randomized response on datasets {"0", "1"}: the answer equals the
// dataset bit with probability e^eps / (1 + e^eps).
Mechanism randomized_response(double eps);

}  // namespace concomp

#endif  // CONCOMP_INTERACTIVE_HPP_

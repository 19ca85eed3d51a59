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
#ifndef CONCOMP_REDUCTION_HPP_
#define CONCOMP_REDUCTION_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "concomp/distribution.hpp"
#include "concomp/interactive.hpp"
#include "concomp/tradeoff.hpp"
#include "json.hpp"

namespace concomp {

// Interactive post-processor of a non-interactive seed: answers depend only
// on the seed outcome and the transcript so far, never on a dataset. The
// schedule mirrors the mechanism it was reduced from.
struct PostProcessor {
  bool mech_first = false;
  int depth = 0;
  std::vector<Label> seeds;
  // (seed, prefix at a mechanism-speaking node) -> answer distribution.
  // Only reachable entries are stored.
  std::map<std::pair<Label, Prefix>, FiniteDistribution> rules;

  const FiniteDistribution& respond(const Label& seed,
                                    const Prefix& prefix) const;
  nlohmann::json to_json() const;
};

struct ReductionResult {
  FiniteDistribution y;
  FiniteDistribution y_prime;
  PostProcessor proc;
  TradeoffCurve privacy_curve;  // the tight curve the mechanism achieves

  nlohmann::json to_json() const;
};

// Constructive reduction: a non-interactive pair (Y, Y') and a processor
// whose interaction with any adversary reproduces the mechanism's views
// exactly, with np_tradeoff(Y, Y') dominating the mechanism's privacy
// curve. Recursion: adversary nodes couple the per-query reductions
// through one shared source at the mechanism's tight curve; mechanism
// nodes chain the prologue answer with per-branch reductions.
ReductionResult reduce(const Mechanism& m, const std::string& x,
                       const std::string& x_prime,
                       std::uint64_t guard = kDefaultGuard);

// Transcript distribution of b interacting with proc on a seed drawn from
// seed_dist. Labels match view_distribution's transcripts.
FiniteDistribution simulate_view(const PostProcessor& proc,
                                 const FiniteDistribution& seed_dist,
                                 const AdversaryStrategy& b);

struct ReductionReport {
  double max_view_dev = 0.0;        // worst per-transcript gap, dataset x
  double max_view_dev_prime = 0.0;  // same for x_prime
  double curve_gap = 0.0;           // worst shortfall of np(Y,Y') vs privacy
  bool pass = false;
  std::vector<std::string> failures;

  nlohmann::json to_json() const;
};

// Checks the reduction postconditions over every enumerable adversary:
// view equivalence on both datasets and curve dominance. Failures are
// reported, never thrown.
ReductionReport verify_reduction(const Mechanism& m, const std::string& x,
                                 const std::string& x_prime,
                                 const ReductionResult& result,
                                 std::uint64_t guard = kDefaultGuard,
                                 double tol = kTol);

}  // namespace concomp

#endif  // CONCOMP_REDUCTION_HPP_

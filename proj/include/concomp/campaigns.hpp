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
#ifndef CONCOMP_CAMPAIGNS_HPP_
#define CONCOMP_CAMPAIGNS_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "concomp/distribution.hpp"
#include "json.hpp"

namespace concomp {

// Seeded verification campaigns. Each run_* function executes cfg.trials
// independent trials, each driven by its own RNG derived from (seed,
// trial index), so reports are byte-identical across reruns and thread
// counts. Every report carries a top-level "pass" flag and per-trial worst
// deviations.
struct CampaignConfig {
  std::uint64_t seed = 7;
  int trials = 100;
  std::size_t max_support = 4;
  int max_depth = 2;
  std::size_t max_alphabet = 2;
  double tol = kTol;
  int threads = 1;
  std::uint64_t guard = 1000000;
};

std::mt19937_64 trial_rng(std::uint64_t seed, int trial);

nlohmann::json run_chain_rule_campaign(const CampaignConfig& cfg);
nlohmann::json run_blackwell_campaign(const CampaignConfig& cfg);
nlohmann::json run_coupling_campaign(const CampaignConfig& cfg);
nlohmann::json run_reduction_campaign(const CampaignConfig& cfg);
nlohmann::json run_concomp_campaign(const CampaignConfig& cfg);
nlohmann::json run_rdp_campaign(const CampaignConfig& cfg);
nlohmann::json run_supset_campaign(const CampaignConfig& cfg);
nlohmann::json run_measures_campaign(const CampaignConfig& cfg);

// Dispatch by name: chain-rule, blackwell, coupling, reduction, concomp,
// rdp, supset, measures. Throws InvalidParamError on unknown names.
nlohmann::json run_campaign(const std::string& name,
                            const CampaignConfig& cfg);

std::vector<std::string> campaign_names();

}  // namespace concomp

#endif  // CONCOMP_CAMPAIGNS_HPP_

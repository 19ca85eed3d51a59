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
#ifndef CONCOMP_RANDOM_INSTANCES_HPP_
#define CONCOMP_RANDOM_INSTANCES_HPP_

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "concomp/distribution.hpp"
#include "concomp/interactive.hpp"
#include "concomp/tradeoff.hpp"

namespace concomp {

// Seeded instance generators for the property campaigns. Everything here
// is a pure function of the RNG state, so a fixed seed pins the instance.

// Distribution over the given labels with Dirichlet-like weights. With
// allow_zeros, some outcomes may get exactly zero mass.
FiniteDistribution random_distribution(std::mt19937_64& rng,
                                       const std::vector<Label>& labels,
                                       bool allow_zeros = false);

std::vector<Label> numbered_labels(const std::string& stem, std::size_t n);

// Pair over a shared outcome set of size <= max_support.
std::pair<FiniteDistribution, FiniteDistribution> random_pair(
    std::mt19937_64& rng, std::size_t max_support, bool allow_zeros = false);

// Kernel from the given inputs to a fresh output set of size <= max_out.
StochasticKernel random_kernel(std::mt19937_64& rng,
                               const std::vector<Label>& inputs,
                               std::size_t max_out);

// Piecewise-linear trade-off curve, realized as np_tradeoff of a random
// pair so it always lies in the valid class.
TradeoffCurve random_curve(std::mt19937_64& rng, std::size_t max_support);

// Mechanism with depth <= max_depth query rounds, per-round alphabets of
// size <= max_alphabet, two datasets, and optionally a mechanism-first
// prologue answer.
Mechanism random_mechanism(std::mt19937_64& rng, int max_depth,
                           std::size_t max_alphabet,
                           bool allow_mech_first = true);

}  // namespace concomp

#endif  // CONCOMP_RANDOM_INSTANCES_HPP_

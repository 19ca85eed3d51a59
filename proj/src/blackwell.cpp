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
#include "concomp/blackwell.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "concomp/errors.hpp"

namespace concomp {

FeasibilityResult solve_feasibility(const FeasibilityProblem& problem) {
  const std::size_t n = problem.num_vars;
  const std::size_t m = problem.rows.size();
  for (const auto& row : problem.rows) {
    if (row.size() != n) throw InvalidParamError("ragged constraint row");
  }
  if (problem.rhs.size() != m) throw InvalidParamError("rhs length mismatch");

  // Tableau over [x | artificials | rhs]; minimize the artificial sum.
  const std::size_t cols = n + m + 1;
  std::vector<std::vector<double>> t(m + 1, std::vector<double>(cols, 0.0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    double sign = problem.rhs[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = sign * problem.rows[i][j];
    t[i][n + i] = 1.0;
    t[i][cols - 1] = sign * problem.rhs[i];
    basis[i] = n + i;
  }
  // Objective row: reduced costs of minimizing sum of artificials.
  for (std::size_t j = 0; j < cols; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += t[i][j];
    t[m][j] = (j >= n && j < n + m) ? s - 1.0 : s;
  }

  const double kPivotEps = 1e-11;
  while (true) {
    // Bland: entering variable = lowest index with positive reduced cost.
    std::size_t enter = cols - 1;
    for (std::size_t j = 0; j + 1 < cols; ++j) {
      if (t[m][j] > kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter == cols - 1) break;
    // Bland: leaving row = min ratio, ties to the lowest basis index.
    std::size_t leave = m;
    double best = kInf;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= kPivotEps) continue;
      double ratio = t[i][cols - 1] / t[i][enter];
      if (ratio < best - 1e-15 ||
          (std::abs(ratio - best) <= 1e-15 &&
           (leave == m || basis[i] < basis[leave]))) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == m) break;  // unbounded cannot happen in phase 1
    double piv = t[leave][enter];
    for (std::size_t j = 0; j < cols; ++j) t[leave][j] /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      double factor = t[i][enter];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        t[i][j] -= factor * t[leave][j];
      }
    }
    basis[leave] = enter;
  }

  double value = t[m][cols - 1];
  FeasibilityResult result;
  result.residual = std::max(value, 0.0);
  if (result.residual <= kFeasibleTol) {
    result.feasible = true;
    result.point.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < n) result.point[basis[i]] = t[i][cols - 1];
    }
  } else if (result.residual < kInfeasibleTol) {
    throw NumericalFailureError("phase-1 optimum " +
                                std::to_string(result.residual) +
                                " falls between the accept and reject bands");
  }
  return result;
}

std::optional<StochasticKernel> find_channel(
    const FiniteDistribution& p, const FiniteDistribution& p_prime,
    const FiniteDistribution& x, const FiniteDistribution& x_prime) {
  std::set<Label> ins;
  for (const auto& l : p.support()) ins.insert(l);
  for (const auto& l : p_prime.support()) ins.insert(l);
  std::set<Label> outs;
  for (const auto& l : x.support()) outs.insert(l);
  for (const auto& l : x_prime.support()) outs.insert(l);
  std::vector<Label> in(ins.begin(), ins.end());
  std::vector<Label> out(outs.begin(), outs.end());
  const std::size_t nz = in.size();
  const std::size_t no = out.size();

  FeasibilityProblem lp;
  lp.num_vars = nz * no;
  auto var = [&](std::size_t z, std::size_t o) { return z * no + o; };
  for (std::size_t z = 0; z < nz; ++z) {  // rows sum to 1
    std::vector<double> row(lp.num_vars, 0.0);
    for (std::size_t o = 0; o < no; ++o) row[var(z, o)] = 1.0;
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(1.0);
  }
  for (std::size_t o = 0; o < no; ++o) {  // both pushforwards pinned
    std::vector<double> row(lp.num_vars, 0.0);
    std::vector<double> row_prime(lp.num_vars, 0.0);
    for (std::size_t z = 0; z < nz; ++z) {
      row[var(z, o)] = p.prob(in[z]);
      row_prime[var(z, o)] = p_prime.prob(in[z]);
    }
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(x.prob(out[o]));
    lp.rows.push_back(std::move(row_prime));
    lp.rhs.push_back(x_prime.prob(out[o]));
  }

  auto sol = solve_feasibility(lp);
  if (!sol.feasible) return std::nullopt;
  std::map<Label, FiniteDistribution> rows;
  for (std::size_t z = 0; z < nz; ++z) {
    std::vector<double> w(no);
    double mass = 0.0;
    for (std::size_t o = 0; o < no; ++o) {
      w[o] = std::max(sol.point[var(z, o)], 0.0);
      mass += w[o];
    }
    for (auto& v : w) v /= mass;  // scrub solver round-off
    rows.emplace(in[z], FiniteDistribution(out, std::move(w), 1e-9));
  }
  return StochasticKernel(in, std::move(rows));
}

CoupledFamily multi_couple(
    const TradeoffCurve& f,
    const std::vector<std::pair<FiniteDistribution, FiniteDistribution>>&
        pairs) {
  if (pairs.empty()) throw InvalidParamError("no pairs to couple");
  for (const auto& [a, b] : pairs) {
    if (!dominates(np_tradeoff(a, b), f)) {
      throw DominanceViolatedError(
          "pair trade-off does not dominate the coupling curve");
    }
  }
  auto [src, src_prime] = canonical_pair(f);
  std::vector<StochasticKernel> channels;
  channels.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    auto k = find_channel(src, src_prime, a, b);
    if (!k) {
      // Dominance held, so by the Blackwell theorem this is a solver bug
      // or numerical collapse; surface it rather than proceeding.
      throw DominanceViolatedError("channel synthesis failed under dominance");
    }
    channels.push_back(std::move(*k));
  }

  // One shared source draw feeds every channel independently.
  std::map<Label, double> acc, acc_prime;
  const auto& src_labels = src.labels();
  for (std::size_t zi = 0; zi < src_labels.size(); ++zi) {
    const Label& z = src_labels[zi];
    double wz = src.weights()[zi];
    double wz_prime = src_prime.prob(z);
    if (wz == 0.0 && wz_prime == 0.0) continue;
    // Expand the product of channel rows at z.
    std::vector<std::pair<std::vector<Label>, double>> partial = {{{}, 1.0}};
    for (const auto& ch : channels) {
      const auto& row = ch.row(z);
      std::vector<std::pair<std::vector<Label>, double>> next;
      for (const auto& [prefix, wp] : partial) {
        for (std::size_t o = 0; o < row.size(); ++o) {
          if (row.weights()[o] == 0.0) continue;
          auto ext = prefix;
          ext.push_back(row.labels()[o]);
          next.push_back({std::move(ext), wp * row.weights()[o]});
        }
      }
      partial = std::move(next);
    }
    for (auto& [tup, wp] : partial) {
      Label l = Label::tuple(tup);
      acc[l] += wz * wp;
      acc_prime[l] += wz_prime * wp;
    }
  }
  std::vector<Label> ls;
  std::vector<double> w, w_prime;
  for (auto& [l, v] : acc) {
    ls.push_back(l);
    w.push_back(v);
    w_prime.push_back(acc_prime[l]);
  }
  return {FiniteDistribution(ls, std::move(w), 1e-9),
          FiniteDistribution(ls, std::move(w_prime), 1e-9)};
}

std::pair<JointDistribution, JointDistribution> couple(
    const TradeoffCurve& f, const FiniteDistribution& x,
    const FiniteDistribution& x_prime, const FiniteDistribution& y,
    const FiniteDistribution& y_prime) {
  auto family = multi_couple(f, {{x, x_prime}, {y, y_prime}});
  return {JointDistribution(family.joint),
          JointDistribution(family.joint_prime)};
}

}  // namespace concomp

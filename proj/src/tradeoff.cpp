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
#include "concomp/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "concomp/errors.hpp"

namespace concomp {

namespace {

double cross(const TradeoffCurve::Point& o, const TradeoffCurve::Point& a,
             const TradeoffCurve::Point& b) {
  return (a.first - o.first) * (b.second - o.second) -
         (a.second - o.second) * (b.first - o.first);
}

// Lower convex hull of points sorted by strictly increasing x.
std::vector<TradeoffCurve::Point> lower_hull(
    const std::vector<TradeoffCurve::Point>& pts) {
  std::vector<TradeoffCurve::Point> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2 &&
           cross(hull[hull.size() - 2], hull.back(), p) <= 0.0) {
      hull.pop_back();
    }
    hull.push_back(p);
  }
  return hull;
}

double eval_pl(const std::vector<TradeoffCurve::Point>& pts, double alpha) {
  auto it = std::upper_bound(
      pts.begin(), pts.end(), alpha,
      [](double a, const TradeoffCurve::Point& p) { return a < p.first; });
  if (it == pts.begin()) return pts.front().second;
  if (it == pts.end()) return pts.back().second;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  double t = (alpha - lo.first) / (hi.first - lo.first);
  return lo.second + t * (hi.second - lo.second);
}

}  // namespace

TradeoffCurve::TradeoffCurve(std::vector<Point> breakpoints) {
  if (breakpoints.empty()) throw InvalidParamError("empty breakpoint list");
  for (auto& [a, b] : breakpoints) {
    if (a < -kTol || a > 1.0 + kTol || b < -kTol || b > 1.0 + kTol) {
      throw InvalidParamError("breakpoint outside the unit square");
    }
    a = std::clamp(a, 0.0, 1.0);
    b = std::clamp(b, 0.0, 1.0);
  }
  std::sort(breakpoints.begin(), breakpoints.end());
  // Collapse clusters of nearly identical alphas to their lowest beta; the
  // infimum over tests keeps only the smallest type-II error.
  std::vector<Point> pts;
  for (const auto& p : breakpoints) {
    if (!pts.empty() && p.first - pts.back().first < 1e-12) {
      pts.back().second = std::min(pts.back().second, p.second);
    } else {
      pts.push_back(p);
    }
  }
  if (pts.front().first > kTol || pts.back().first < 1.0 - kTol) {
    throw InvalidParamError("curve must span alpha in [0,1]");
  }
  pts.front().first = 0.0;
  pts.back().first = 1.0;
  if (pts.back().second > kTol) {
    throw InvalidParamError("beta(1) must vanish, got " +
                            std::to_string(pts.back().second));
  }
  pts.back().second = 0.0;

  auto hull = lower_hull(pts);
  // The hull only irons out numerical jitter; a genuinely non-convex or
  // increasing input is rejected.
  for (const auto& p : pts) {
    if (p.second - eval_pl(hull, p.first) > kTol) {
      throw InvalidParamError("breakpoints are not convex");
    }
  }
  for (std::size_t i = 1; i < hull.size(); ++i) {
    if (hull[i].second > hull[i - 1].second + kTol) {
      throw InvalidParamError("beta must be non-increasing");
    }
    hull[i].second = std::min(hull[i].second, hull[i - 1].second);
  }
  for (const auto& [a, b] : hull) {
    if (b > 1.0 - a + kTol) {
      throw InvalidParamError("beta exceeds 1 - alpha");
    }
  }
  // Merge collinear runs within the slope tolerance.
  points_.push_back(hull.front());
  for (std::size_t i = 1; i + 1 < hull.size(); ++i) {
    double s0 = (hull[i].second - points_.back().second) /
                (hull[i].first - points_.back().first);
    double s1 = (hull[i + 1].second - hull[i].second) /
                (hull[i + 1].first - hull[i].first);
    if (s1 - s0 > kSlopeTol) points_.push_back(hull[i]);
  }
  if (hull.size() > 1) points_.push_back(hull.back());
}

TradeoffCurve TradeoffCurve::perfect_privacy() {
  return TradeoffCurve({{0.0, 1.0}, {1.0, 0.0}});
}

double TradeoffCurve::operator()(double alpha) const {
  if (alpha < -kTol || alpha > 1.0 + kTol) {
    throw OutOfRangeError("alpha outside [0,1]: " + std::to_string(alpha));
  }
  return eval_pl(points_, std::clamp(alpha, 0.0, 1.0));
}

bool TradeoffCurve::approx_equal(const TradeoffCurve& other,
                                 double tol) const {
  return poset_leq(*this, other, tol) && poset_leq(other, *this, tol);
}

nlohmann::json TradeoffCurve::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [a, b] : points_) arr.push_back({a, b});
  return {{"breakpoints", arr}};
}

TradeoffCurve TradeoffCurve::from_json(const nlohmann::json& j) {
  std::vector<Point> pts;
  for (const auto& e : j.at("breakpoints")) {
    pts.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  }
  return TradeoffCurve(std::move(pts));
}

TradeoffCurve np_tradeoff(const FiniteDistribution& p,
                          const FiniteDistribution& q) {
  std::set<Label> all(p.labels().begin(), p.labels().end());
  all.insert(q.labels().begin(), q.labels().end());

  // Rejecting first on outcomes q-heavy per unit of p buys the steepest
  // beta reduction (Neyman-Pearson). Outcomes with p = 0 are free.
  double q_on_p_null = 0.0;
  std::vector<std::pair<double, std::pair<double, double>>> ranked;  // ratio, (p,q)
  for (const auto& l : all) {
    double pw = p.prob(l);
    double qw = q.prob(l);
    if (pw == 0.0 && qw == 0.0) continue;
    if (pw == 0.0) {
      q_on_p_null += qw;
    } else {
      ranked.push_back({qw / pw, {pw, qw}});
    }
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  std::vector<TradeoffCurve::Point> pts;
  double alpha = 0.0;
  double beta = 1.0 - q_on_p_null;
  pts.push_back({alpha, beta});
  for (const auto& [ratio, pq] : ranked) {
    alpha += pq.first;
    beta -= pq.second;
    pts.push_back({alpha, beta});
  }
  return TradeoffCurve(std::move(pts));
}

TradeoffCurve f_eps_delta(double eps, double delta) {
  if (eps < 0.0 || delta < 0.0 || delta > 1.0 || !std::isfinite(eps)) {
    throw InvalidParamError("need eps >= 0 and delta in [0,1]");
  }
  if (delta >= 1.0) return TradeoffCurve({{0.0, 0.0}, {1.0, 0.0}});
  double a_kink = (1.0 - delta) / (1.0 + std::exp(eps));
  double b_kink = std::exp(-eps) * (1.0 - delta - a_kink);
  std::vector<TradeoffCurve::Point> pts = {
      {0.0, 1.0 - delta}, {a_kink, b_kink}, {1.0 - delta, 0.0}, {1.0, 0.0}};
  return TradeoffCurve(std::move(pts));
}

bool poset_leq(const TradeoffCurve& f, const TradeoffCurve& g, double tol) {
  // Both curves are linear between consecutive breakpoints of either, so
  // checking the union grid decides pointwise dominance exactly.
  for (const auto& [a, b] : f.breakpoints()) {
    if (f(a) < g(a) - tol) return false;
  }
  for (const auto& [a, b] : g.breakpoints()) {
    if (f(a) < g(a) - tol) return false;
  }
  return true;
}

TradeoffCurve sup_set(const std::vector<TradeoffCurve>& curves) {
  if (curves.empty()) throw EmptySetError("sup of the empty set");
  std::set<double> grid;
  for (const auto& c : curves) {
    for (const auto& [a, b] : c.breakpoints()) grid.insert(a);
  }
  // Crossings between segments of different curves are breakpoints of the
  // pointwise minimum.
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (std::size_t j = i + 1; j < curves.size(); ++j) {
      const auto& pi = curves[i].breakpoints();
      const auto& pj = curves[j].breakpoints();
      for (std::size_t s = 0; s + 1 < pi.size(); ++s) {
        for (std::size_t t = 0; t + 1 < pj.size(); ++t) {
          double x0 = std::max(pi[s].first, pj[t].first);
          double x1 = std::min(pi[s + 1].first, pj[t + 1].first);
          if (x0 >= x1) continue;
          double si = (pi[s + 1].second - pi[s].second) /
                      (pi[s + 1].first - pi[s].first);
          double sj = (pj[t + 1].second - pj[t].second) /
                      (pj[t + 1].first - pj[t].first);
          if (std::abs(si - sj) < 1e-15) continue;
          double bi = pi[s].second - si * pi[s].first;
          double bj = pj[t].second - sj * pj[t].first;
          double x = (bj - bi) / (si - sj);
          if (x > x0 && x < x1) grid.insert(x);
        }
      }
    }
  }
  std::vector<TradeoffCurve::Point> pts;
  for (double a : grid) {
    double m = kInf;
    for (const auto& c : curves) m = std::min(m, c(a));
    pts.push_back({a, m});
  }
  return TradeoffCurve(lower_hull(pts));
}

TradeoffCurve chain_rule(const FiniteDistribution& p,
                         const FiniteDistribution& p_prime,
                         const std::map<Label, TradeoffCurve>& conditionals) {
  struct Segment {
    double rate;    // beta drop per unit of alpha budget
    double budget;  // p(x) * segment width
    double drop;    // p'(x) * segment height
  };
  std::vector<Segment> segments;
  double base_cost = 0.0;
  for (const auto& l : p.support()) {
    double pw = p.prob(l);
    double qw = p_prime.prob(l);
    if (qw == 0.0) continue;  // budget spent here buys nothing
    auto it = conditionals.find(l);
    if (it == conditionals.end()) {
      throw MissingConditionalError("no conditional curve for " + l.str());
    }
    const auto& bp = it->second.breakpoints();
    base_cost += qw * bp.front().second;
    for (std::size_t s = 0; s + 1 < bp.size(); ++s) {
      double width = bp[s + 1].first - bp[s].first;
      double height = bp[s].second - bp[s + 1].second;
      if (height <= 0.0) continue;  // flat tail: no gain from budget
      segments.push_back({qw * height / (pw * width), pw * width, qw * height});
    }
  }
  // Convexity of each conditional makes its own segments arrive in rate
  // order, so one global sort by rate is a valid greedy schedule.
  std::sort(segments.begin(), segments.end(),
            [](const Segment& a, const Segment& b) { return a.rate > b.rate; });

  std::vector<TradeoffCurve::Point> pts;
  double spent = 0.0;
  double cost = base_cost;
  pts.push_back({0.0, cost});
  for (const auto& seg : segments) {
    spent += seg.budget;
    cost -= seg.drop;
    pts.push_back({std::min(spent, 1.0), std::max(cost, 0.0)});
  }
  if (spent < 1.0) pts.push_back({1.0, std::max(cost, 0.0)});
  return TradeoffCurve(std::move(pts));
}

std::pair<FiniteDistribution, FiniteDistribution> canonical_pair(
    const TradeoffCurve& f) {
  const auto& bp = f.breakpoints();
  std::vector<Label> labels;
  std::vector<double> pw, qw;
  int next = 0;
  if (bp.front().second < 1.0 - 1e-15) {
    labels.push_back(Label::atom("z" + std::to_string(next++)));
    pw.push_back(0.0);
    qw.push_back(1.0 - bp.front().second);
  }
  for (std::size_t s = 0; s + 1 < bp.size(); ++s) {
    labels.push_back(Label::atom("z" + std::to_string(next++)));
    pw.push_back(bp[s + 1].first - bp[s].first);
    qw.push_back(bp[s].second - bp[s + 1].second);
  }
  return {FiniteDistribution(labels, pw, 1e-9),
          FiniteDistribution(labels, qw, 1e-9)};
}

double mixture_value(const std::vector<TradeoffCurve>& curves,
                     const MixtureWitness& witness, double alpha) {
  if (witness.weights.size() != curves.size() ||
      witness.budgets.size() != curves.size()) {
    throw InvalidParamError("witness arity mismatch");
  }
  double mass = 0.0;
  double budget = 0.0;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (witness.weights[i] < 0.0 || witness.budgets[i] < 0.0 ||
        witness.budgets[i] > 1.0) {
      throw InvalidParamError("witness entries outside their ranges");
    }
    mass += witness.weights[i];
    budget += witness.weights[i] * witness.budgets[i];
  }
  if (std::abs(mass - 1.0) > kTol) {
    throw InvalidParamError("witness weights are not a distribution");
  }
  if (budget > alpha + kTol) {
    throw BudgetViolationError("witness budget " + std::to_string(budget) +
                               " exceeds alpha " + std::to_string(alpha));
  }
  double value = 0.0;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    value += witness.weights[i] * curves[i](witness.budgets[i]);
  }
  return value;
}

}  // namespace concomp

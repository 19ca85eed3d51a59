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
//
// Batch driver: curve export, property campaigns, reductions, RDP checks.
// Exit codes: 0 pass, 1 property violation, 2 usage or input error.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "concomp/campaigns.hpp"
#include "concomp/errors.hpp"
#include "concomp/interactive.hpp"
#include "concomp/reduction.hpp"
#include "concomp/renyi.hpp"
#include "concomp/tradeoff.hpp"
#include "json.hpp"

namespace {

using namespace concomp;

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InvalidParamError("cannot open " + out_path);
  out << text;
}

std::string curve_csv(const TradeoffCurve& f) {
  std::set<double> grid;
  for (int i = 0; i <= 100; ++i) grid.insert(i / 100.0);
  for (const auto& [a, b] : f.breakpoints()) grid.insert(a);
  std::string csv = "alpha,beta\n";
  for (double a : grid) {
    csv += fmt12(a) + "," + fmt12(f(a)) + "\n";
  }
  return csv;
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParamError("cannot open " + path);
  return nlohmann::json::parse(in);
}

std::uint64_t effective_guard() {
  if (const char* env = std::getenv("CONCOMP_GUARD")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) {
      throw InvalidParamError("CONCOMP_GUARD must be a positive integer");
    }
    return v;
  }
  return kDefaultGuard;
}

// Worst-case deterministic strategy count for the campaign bounds:
// one query choice per answer-history node of the full alphabet tree.
double strategy_bound(int depth, std::size_t alphabet) {
  double nodes = 0.0, layer = 1.0;
  for (int r = 0; r < depth; ++r) {
    nodes += layer;
    layer *= static_cast<double>(alphabet);
  }
  return std::pow(static_cast<double>(alphabet), nodes);
}

int cmd_tradeoff(double eps, double delta, bool have_eps,
                 const std::vector<std::string>& dist_files,
                 const std::string& chain_file, const std::string& out_path,
                 const std::string& format) {
  TradeoffCurve f = TradeoffCurve::perfect_privacy();
  if (have_eps) {
    f = f_eps_delta(eps, delta);
  } else if (!dist_files.empty()) {
    if (dist_files.size() != 2) {
      throw InvalidParamError("--dist-file takes exactly two paths");
    }
    f = np_tradeoff(FiniteDistribution::from_json(load_json(dist_files[0])),
                    FiniteDistribution::from_json(load_json(dist_files[1])));
  } else if (!chain_file.empty()) {
    nlohmann::json spec = load_json(chain_file);
    auto p = FiniteDistribution::from_json(spec.at("p"));
    auto p_prime = FiniteDistribution::from_json(spec.at("p_prime"));
    std::map<Label, TradeoffCurve> conditionals;
    for (const auto& [key, val] : spec.at("conditionals").items()) {
      conditionals.emplace(Label::atom(key), TradeoffCurve::from_json(val));
    }
    f = chain_rule(p, p_prime, conditionals);
  } else {
    throw InvalidParamError(
        "one of --eps, --dist-file, or --chain is required");
  }
  std::cerr << "kinks:";
  for (const auto& [a, b] : f.breakpoints()) {
    std::cerr << " (" << fmt12(a) << "," << fmt12(b) << ")";
  }
  std::cerr << "\n";
  emit(out_path,
       format == "json" ? f.to_json().dump(2) + "\n" : curve_csv(f));
  return 0;
}

int cmd_verify(const std::string& campaign, CampaignConfig cfg,
               const std::string& out_path) {
  cfg.guard = effective_guard();
  if (campaign == "reduction" || campaign == "concomp" || campaign == "rdp") {
    double bound = strategy_bound(cfg.max_depth, cfg.max_alphabet);
    if (bound > static_cast<double>(cfg.guard)) {
      throw ExplosionGuardError(
          bound > 1e18 ? std::uint64_t(-1) : static_cast<std::uint64_t>(bound),
          cfg.guard);
    }
  }
  nlohmann::json report = run_campaign(campaign, cfg);
  emit(out_path, report.dump(2) + "\n");
  return report.value("pass", false) ? 0 : 1;
}

int cmd_reduce(const std::string& mech_file, const std::string& x,
               const std::string& x_prime, const std::string& out_path,
               double tol) {
  Mechanism m = Mechanism::from_json(load_json(mech_file));
  std::uint64_t guard = effective_guard();
  ReductionResult result = reduce(m, x, x_prime, guard);
  ReductionReport report = verify_reduction(m, x, x_prime, result, guard, tol);
  nlohmann::json out = {{"result", result.to_json()},
                        {"report", report.to_json()}};
  emit(out_path, out.dump(2) + "\n");
  return report.pass ? 0 : 1;
}

int cmd_rdp(const std::vector<std::string>& mech_files, const std::string& x,
            const std::string& x_prime, double alpha,
            const std::string& out_path, double tol) {
  std::vector<Mechanism> ms;
  for (const auto& f : mech_files) {
    ms.push_back(Mechanism::from_json(load_json(f)));
  }
  RdpReport report =
      verify_rdp_concurrent(ms, x, x_prime, alpha, effective_guard(), tol);
  emit(out_path, report.to_json().dump(2) + "\n");
  return report.additive ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trade-off curve and concurrent-composition verifier"};
  app.require_subcommand(1);

  // tradeoff
  auto* sc_tradeoff = app.add_subcommand("tradeoff", "export a curve");
  double eps = 0.0, delta = 0.0;
  std::vector<std::string> dist_files;
  std::string chain_file, out_path, format = "csv";
  auto* eps_opt = sc_tradeoff->add_option("--eps", eps, "epsilon");
  sc_tradeoff->add_option("--delta", delta, "delta");
  sc_tradeoff->add_option("--dist-file", dist_files,
                          "two distribution JSON files");
  sc_tradeoff->add_option("--chain", chain_file, "chain spec JSON file");
  sc_tradeoff->add_option("--out", out_path, "output path (default stdout)");
  sc_tradeoff->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  // verify
  auto* sc_verify = app.add_subcommand("verify", "run a property campaign");
  std::string campaign;
  CampaignConfig cfg;
  std::string verify_out;
  sc_verify->add_option("campaign", campaign, "campaign name")
      ->required()
      ->check(CLI::IsMember(concomp::campaign_names()));
  sc_verify->add_option("--seed", cfg.seed, "PRNG seed");
  sc_verify->add_option("--trials", cfg.trials, "trial count");
  sc_verify->add_option("--tol", cfg.tol, "tolerance override");
  sc_verify->add_option("--threads", cfg.threads, "worker threads");
  sc_verify->add_option("--max-support", cfg.max_support, "support bound");
  sc_verify->add_option("--max-depth", cfg.max_depth, "depth bound");
  sc_verify->add_option("--max-alphabet", cfg.max_alphabet, "alphabet bound");
  sc_verify->add_option("--out", verify_out, "report path (default stdout)");

  // reduce
  auto* sc_reduce = app.add_subcommand("reduce", "reduce a mechanism");
  std::string mech_file, x = "x", x_prime = "xp", reduce_out;
  double reduce_tol = kTol;
  sc_reduce->add_option("--mech", mech_file, "mechanism JSON file")
      ->required();
  sc_reduce->add_option("--x", x, "first dataset label");
  sc_reduce->add_option("--x-prime", x_prime, "second dataset label");
  sc_reduce->add_option("--tol", reduce_tol, "tolerance");
  sc_reduce->add_option("--out", reduce_out, "output path (default stdout)");

  // rdp
  auto* sc_rdp = app.add_subcommand("rdp", "verify concurrent RDP");
  std::vector<std::string> rdp_mechs;
  std::string rdp_x = "x", rdp_x_prime = "xp", rdp_out;
  double alpha = 2.0, rdp_tol = kTol;
  sc_rdp->add_option("--mech", rdp_mechs, "mechanism JSON files")->required();
  sc_rdp->add_option("--x", rdp_x, "first dataset label");
  sc_rdp->add_option("--x-prime", rdp_x_prime, "second dataset label");
  sc_rdp->add_option("--alpha", alpha, "Renyi order > 1");
  sc_rdp->add_option("--tol", rdp_tol, "tolerance");
  sc_rdp->add_option("--out", rdp_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sc_tradeoff->parsed()) {
      return cmd_tradeoff(eps, delta, eps_opt->count() > 0, dist_files,
                          chain_file, out_path, format);
    }
    if (sc_verify->parsed()) return cmd_verify(campaign, cfg, verify_out);
    if (sc_reduce->parsed()) {
      return cmd_reduce(mech_file, x, x_prime, reduce_out, reduce_tol);
    }
    if (sc_rdp->parsed()) {
      return cmd_rdp(rdp_mechs, rdp_x, rdp_x_prime, alpha, rdp_out, rdp_tol);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

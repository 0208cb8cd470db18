// Copyright 2026 The aggrcut Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// aggrcut: aggregation-based c-MIR separation from the command line.
//
//   aggrcut separate --instance F.mps [--solution F.sol] --algo both
//       --out cuts.jsonl [--report report.txt]
//   aggrcut relax --instance F.mps --out F.sol
//   aggrcut compare --instance F.mps [--solution F.sol] --report report.txt
//
// Exit codes: 0 success, 1 usage or I/O error, 2 parse error, 3 LP failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aggrcut/harness.h"
#include "aggrcut/mps_io.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitLp = 3;

class LpFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string instance;
  std::string solution;
  std::string algo = "both";
  std::string start_rows = "top:20";
  std::string out;
  std::string report;
  aggrcut::RunConfig config;
};

aggrcut::StartRowPolicy ParseStartRows(const std::string& text) {
  aggrcut::StartRowPolicy policy;
  if (text == "all") {
    policy.kind = aggrcut::StartRowPolicy::Kind::kAllUseful;
  } else if (text.rfind("top:", 0) == 0) {
    policy.kind = aggrcut::StartRowPolicy::Kind::kTopK;
    policy.k = std::stoi(text.substr(4));
    if (policy.k < 0) throw CLI::ValidationError("--start-rows", "negative K");
  } else {
    policy.kind = aggrcut::StartRowPolicy::Kind::kNamed;
    std::stringstream ss(text);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (!name.empty()) policy.names.push_back(name);
    }
  }
  return policy;
}

// Point and duals: from the solution file when given, else the relaxation.
void LoadPoint(const aggrcut::MilpInstance& instance, const Options& opts,
               aggrcut::PointAssignment& point, Eigen::VectorXd& duals) {
  if (!opts.solution.empty()) {
    point = aggrcut::read_solution_file(opts.solution, instance);
    duals.resize(0);
    return;
  }
  const aggrcut::RelaxationResult relax = aggrcut::solve_relaxation(instance);
  if (relax.status != aggrcut::LpStatus::kOptimal) {
    throw LpFailure(std::string("LP relaxation ended ") +
                    aggrcut::LpStatusName(relax.status));
  }
  point = relax.point;
  duals = relax.duals;
}

std::ofstream OpenOutput(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

void RunSeparate(Options& opts) {
  const aggrcut::MilpInstance instance = aggrcut::read_mps_file(opts.instance);
  aggrcut::PointAssignment point;
  Eigen::VectorXd duals;
  LoadPoint(instance, opts, point, duals);
  if (opts.algo == "mw") {
    opts.config.algorithm = aggrcut::AlgorithmChoice::kMw;
  } else if (opts.algo == "lasso") {
    opts.config.algorithm = aggrcut::AlgorithmChoice::kLasso;
  }
  opts.config.start_rows = ParseStartRows(opts.start_rows);
  const aggrcut::SeparationRun run =
      aggrcut::run_separation(instance, point, duals, opts.config);
  std::ofstream out = OpenOutput(opts.out);
  aggrcut::write_cuts(run.cuts, out);
  if (!opts.report.empty()) {
    std::ofstream report = OpenOutput(opts.report);
    aggrcut::write_report(run, opts.config, report);
  }
  for (const aggrcut::AlgorithmRun& r : run.runs) {
    for (const std::string& d : r.diagnostics) {
      std::cerr << aggrcut::AlgorithmName(r.algorithm) << ": " << d << '\n';
    }
  }
}

void RunRelax(const Options& opts) {
  const aggrcut::MilpInstance instance = aggrcut::read_mps_file(opts.instance);
  const aggrcut::RelaxationResult relax = aggrcut::solve_relaxation(instance);
  if (relax.status != aggrcut::LpStatus::kOptimal) {
    throw LpFailure(std::string("LP relaxation ended ") +
                    aggrcut::LpStatusName(relax.status));
  }
  std::ofstream out = OpenOutput(opts.out);
  aggrcut::write_solution(relax.point, instance, out);
}

void RunCompare(Options& opts) {
  const aggrcut::MilpInstance instance = aggrcut::read_mps_file(opts.instance);
  aggrcut::PointAssignment point;
  Eigen::VectorXd duals;
  LoadPoint(instance, opts, point, duals);
  opts.config.algorithm = aggrcut::AlgorithmChoice::kBoth;
  opts.config.start_rows = ParseStartRows(opts.start_rows);
  const aggrcut::SeparationRun run =
      aggrcut::run_separation(instance, point, duals, opts.config);
  std::ofstream report = OpenOutput(opts.report);
  aggrcut::write_report(run, opts.config, report);
  report << '\n';
  aggrcut::write_comparison(run, report);
  aggrcut::write_comparison(run, std::cout);
  if (!opts.out.empty()) {
    std::ofstream out = OpenOutput(opts.out);
    aggrcut::write_cuts(run.cuts, out);
  }
}

void AddRunOptions(CLI::App* cmd, Options& opts) {
  cmd->add_option("--solution", opts.solution, "point to separate (.sol)");
  cmd->add_option("--maxaggr", opts.config.maxaggr)->check(CLI::NonNegativeNumber);
  cmd->add_option("--density-threshold", opts.config.density_threshold)
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--max-bad-vars", opts.config.max_bad_vars)
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--max-useful-rows", opts.config.max_useful_rows)
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--start-rows", opts.start_rows, "all | top:K | name,...");
  cmd->add_option("--seed", opts.config.seed);
  cmd->add_option("--violation-threshold", opts.config.violation_threshold);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Aggregation-based c-MIR separation"};
  app.require_subcommand(1);
  Options opts;

  CLI::App* separate = app.add_subcommand("separate", "separate cuts");
  separate->add_option("--instance", opts.instance)->required();
  separate->add_option("--algo", opts.algo)
      ->check(CLI::IsMember({"mw", "lasso", "both"}));
  separate->add_option("--out", opts.out)->required();
  separate->add_option("--report", opts.report);
  AddRunOptions(separate, opts);

  CLI::App* relax = app.add_subcommand("relax", "solve the LP relaxation");
  relax->add_option("--instance", opts.instance)->required();
  relax->add_option("--out", opts.out)->required();

  CLI::App* compare = app.add_subcommand("compare", "run mw and lasso");
  compare->add_option("--instance", opts.instance)->required();
  compare->add_option("--report", opts.report)->required();
  compare->add_option("--out", opts.out, "optional cut output");
  AddRunOptions(compare, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (separate->parsed()) {
      RunSeparate(opts);
    } else if (relax->parsed()) {
      RunRelax(opts);
    } else {
      RunCompare(opts);
    }
  } catch (const aggrcut::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const aggrcut::MalformedInstance& e) {
    std::cerr << "malformed instance: " << e.what() << '\n';
    return kExitParse;
  } catch (const aggrcut::LpNumericalFailure& e) {
    std::cerr << "LP failure: " << e.what() << '\n';
    return kExitLp;
  } catch (const LpFailure& e) {
    std::cerr << "LP failure: " << e.what() << '\n';
    return kExitLp;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

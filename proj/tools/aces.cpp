// Copyright 2026 The ACES Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "aces/io.hpp"
#include "aces/protocol.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitCoverage = 3;
constexpr int kExitRank = 4;

struct CommonOpts {
  std::string config_file;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::uint64_t> shots;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_required) {
  auto* c = cmd->add_option("--config", opts.config_file, "Run config JSON");
  if (config_required) c->required();
  cmd->add_option("--seed", opts.seed, "Override the master seed");
  cmd->add_option("--out", opts.out, "Override the output directory");
  cmd->add_option("--shots", opts.shots,
                  "Override the per-circuit shot budget");
}

aces::RunConfig load_config(const CommonOpts& opts) {
  aces::RunConfig config;
  if (!opts.config_file.empty()) {
    config = aces::io::config_from_json(aces::io::load_json(opts.config_file));
  }
  if (opts.seed) config.seed = *opts.seed;
  if (opts.out) config.out_dir = *opts.out;
  if (opts.shots) config.shots_per_circuit = *opts.shots;
  config.validate();
  return config;
}

aces::GateSet load_gateset(const aces::RunConfig& config) {
  if (config.gate_set_source == "file") {
    return aces::io::gateset_from_json(
        aces::io::load_json(config.gate_set_file));
  }
  return aces::builtin_gateset();
}

aces::NoiseModel load_noise(const aces::RunConfig& config,
                            const aces::GateSet& gs) {
  if (config.noise_source == "file") {
    return aces::io::noise_model_from_json(
        aces::io::load_json(config.noise_file));
  }
  return aces::derive_noise_model(config, gs);
}

void write_plan(const aces::ExperimentPlan& plan) {
  aces::io::save_json(fs::path(plan.config.out_dir) / "plan.json",
                      aces::io::plan_to_json(plan));
}

int cmd_plan(const CommonOpts& opts) {
  aces::RunConfig config = load_config(opts);
  aces::GateSet gs = load_gateset(config);
  aces::ExperimentPlan plan = aces::build_plan(config, gs);
  write_plan(plan);
  std::cout << "plan: " << plan.circuits.size() << " circuits, "
            << plan.jobs.size() << " jobs, "
            << plan.generation_attempts << " generation attempt(s) -> "
            << config.out_dir << "/plan.json\n";
  return 0;
}

int cmd_simulate(const CommonOpts& opts) {
  aces::RunConfig config = load_config(opts);
  if (config.backend != "simulator") {
    throw std::invalid_argument("simulate requires backend = simulator");
  }
  aces::GateSet gs = load_gateset(config);
  aces::ExperimentPlan plan = aces::build_plan(config, gs);
  aces::NoiseModel nm = load_noise(config, gs);
  std::vector<aces::CountsTable> counts = aces::simulate_plan(plan, gs, nm);

  write_plan(plan);
  aces::io::save_json(fs::path(config.out_dir) / "noise_model.json",
                      aces::io::noise_model_to_json(nm));
  for (const auto& table : counts) {
    aces::io::save_json(
        fs::path(config.out_dir) / "counts" / (table.job_id + ".json"),
        aces::io::counts_to_json(table));
  }
  std::cout << "simulate: " << counts.size() << " counts tables -> "
            << config.out_dir << "/counts\n";
  return 0;
}

std::vector<aces::CountsTable> load_counts(const aces::ExperimentPlan& plan,
                                           const fs::path& dir) {
  std::vector<aces::CountsTable> counts;
  counts.reserve(plan.jobs.size());
  for (const auto& job : plan.jobs) {
    fs::path file = dir / (job.id + ".json");
    if (!fs::exists(file)) {
      throw std::runtime_error("missing counts file " + file.string());
    }
    aces::CountsTable table =
        aces::io::counts_from_json(aces::io::load_json(file));
    if (table.job_id != job.id || table.total_shots() != job.shots) {
      throw std::runtime_error("counts file " + file.string() +
                               " does not match its planned job");
    }
    counts.push_back(std::move(table));
  }
  return counts;
}

int cmd_ingest(const CommonOpts& opts, const std::string& plan_file,
               const std::string& counts_dir) {
  aces::ExperimentPlan plan =
      aces::io::plan_from_json(aces::io::load_json(plan_file));
  if (opts.out) plan.config.out_dir = *opts.out;
  fs::path src = counts_dir.empty() ? fs::path(plan.config.ingest_dir)
                                    : fs::path(counts_dir);
  std::vector<aces::CountsTable> counts;
  try {
    counts = load_counts(plan, src);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCoverage;
  }
  write_plan(plan);
  for (const auto& table : counts) {
    aces::io::save_json(
        fs::path(plan.config.out_dir) / "counts" / (table.job_id + ".json"),
        aces::io::counts_to_json(table));
  }
  std::cout << "ingest: " << counts.size() << " counts tables validated -> "
            << plan.config.out_dir << "/counts\n";
  return 0;
}

int cmd_solve(const std::string& run_dir, const std::string& truth_file,
              bool write_csvs) {
  aces::ExperimentPlan plan =
      aces::io::plan_from_json(aces::io::load_json(fs::path(run_dir) /
                                                   "plan.json"));
  aces::GateSet gs = load_gateset(plan.config);
  std::vector<aces::CountsTable> counts;
  try {
    counts = load_counts(plan, fs::path(run_dir) / "counts");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCoverage;
  }
  aces::EigenvalueEstimates est = aces::estimate_all(plan, counts);

  std::optional<aces::NoiseModel> truth;
  if (!truth_file.empty()) {
    truth = aces::io::noise_model_from_json(aces::io::load_json(truth_file));
  }
  aces::ParameterIndex idx =
      aces::ParameterIndex::build(gs, plan.config.n_qubits);
  aces::DesignMatrix A =
      aces::build_design_matrix(plan.circuits, plan.probes, gs, idx);
  aces::SolveReport report =
      aces::solve(A, est, idx, gs, truth ? &*truth : nullptr);

  aces::io::save_json(fs::path(run_dir) / "estimates.json",
                      aces::io::estimates_to_json(est));
  aces::io::save_json(fs::path(run_dir) / "report.json",
                      aces::io::report_to_json(report));
  if (write_csvs) aces::io::write_report_csvs(report, run_dir);
  std::cout << "solve: rank " << report.rank.rank << "/" << report.rank.n_cols
            << ", residual " << report.residual_norm << ", "
            << report.clamped_rows.size() << " clamped row(s)";
  if (report.mean_abs_error) {
    std::cout << ", mean |err| " << *report.mean_abs_error;
  }
  if (report.mean_tvd) std::cout << ", mean TVD " << *report.mean_tvd;
  std::cout << " -> " << run_dir << "/report.json\n";
  return 0;
}

int cmd_resources(std::uint32_t n, std::uint32_t g1, std::uint32_t g2,
                  double epsilon) {
  aces::ResourceEstimate r = aces::resource_estimate(n, g1, g2, epsilon);
  nlohmann::json out = {
      {"min_independent_rows", r.min_independent_rows},
      {"shots_per_expectation_order", r.shots_per_expectation_order},
      {"total_measurement_order", r.total_measurement_order}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pauli-noise characterization via averaged circuit "
               "eigenvalue sampling"};
  app.require_subcommand(1);

  CommonOpts plan_opts;
  auto* plan_cmd =
      app.add_subcommand("plan", "Generate circuits, probes and shot jobs");
  add_common(plan_cmd, plan_opts, true);

  CommonOpts sim_opts;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Plan and run the Monte Carlo sampler, writing counts");
  add_common(sim_cmd, sim_opts, true);

  CommonOpts ingest_opts;
  std::string ingest_plan, ingest_counts;
  auto* ingest_cmd = app.add_subcommand(
      "ingest", "Validate externally produced counts against a plan");
  ingest_cmd->add_option("--plan", ingest_plan, "plan.json to validate against")
      ->required();
  ingest_cmd->add_option("--counts", ingest_counts,
                         "Directory of <job_id>.json counts files");
  ingest_cmd->add_option("--out", ingest_opts.out,
                         "Override the output directory");

  std::string solve_dir, solve_truth;
  auto* solve_cmd = app.add_subcommand(
      "solve", "Estimate eigenvalues and reconstruct channels from a run");
  solve_cmd->add_option("--run", solve_dir, "Run directory with plan.json and counts/")
      ->required();
  solve_cmd
      ->add_option("--truth", solve_truth,
                   "Ground-truth noise model JSON for error columns")
      ->check(CLI::ExistingFile);

  std::uint32_t res_n = 2, res_g1 = 3, res_g2 = 1;
  double res_eps = 0.01;
  auto* res_cmd = app.add_subcommand(
      "resources", "Sampling-cost estimate for a device and target precision");
  res_cmd->add_option("--qubits", res_n, "Number of qubits")->required();
  res_cmd->add_option("--g1", res_g1, "One-qubit gate count")->required();
  res_cmd->add_option("--g2", res_g2, "Two-qubit gate count")->required();
  res_cmd->add_option("--epsilon", res_eps, "Target precision")->required();

  std::string report_dir, report_truth;
  auto* report_cmd = app.add_subcommand(
      "report", "Solve and write plot-ready CSV tables for a run");
  report_cmd
      ->add_option("--run", report_dir,
                   "Run directory with plan.json and counts/")
      ->required();
  report_cmd
      ->add_option("--truth", report_truth,
                   "Ground-truth noise model JSON for error columns")
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (plan_cmd->parsed()) return cmd_plan(plan_opts);
    if (sim_cmd->parsed()) return cmd_simulate(sim_opts);
    if (ingest_cmd->parsed()) {
      return cmd_ingest(ingest_opts, ingest_plan, ingest_counts);
    }
    if (solve_cmd->parsed()) return cmd_solve(solve_dir, solve_truth, false);
    if (report_cmd->parsed()) return cmd_solve(report_dir, report_truth, true);
    if (res_cmd->parsed()) return cmd_resources(res_n, res_g1, res_g2, res_eps);
  } catch (const aces::RankError& e) {
    std::cerr << "error: " << e.what() << " (rank " << e.report.rank << "/"
              << e.report.n_cols << ")\n";
    return kExitRank;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCoverage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}

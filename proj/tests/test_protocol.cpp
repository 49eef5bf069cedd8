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

#include <doctest.h>

#include <cmath>
#include <numeric>

#include "aces/protocol.hpp"

using namespace aces;

TEST_CASE("parameter index for the builtin set") {
  GateSet gs = builtin_gateset();
  ParameterIndex idx = ParameterIndex::build(gs, 2);
  CHECK(idx.n_columns() == 51);  // 3 * 6 * 2 + 15 * 1 * 1

  CHECK(idx.column({"I", {0}}, 1) == 0);
  CHECK(idx.column({"I", {0}}, 3) == 2);
  CHECK(idx.column({"I", {1}}, 1) == 3);
  CHECK(idx.column({"CZ", {0, 1}}, 1) == 36);
  CHECK(idx.column({"CZ", {0, 1}}, 15) == 50);
  CHECK_FALSE(idx.column({"CZ", {1, 2}}, 1).has_value());

  const auto& params = idx.params();
  REQUIRE(params.size() == 51);
  CHECK(params[0].loc.gate == "I");
  CHECK(params[36].loc.gate == "CZ");
  CHECK(params[36].arity == 2);
}

TEST_CASE("probe selection") {
  GateSet gs = builtin_gateset();

  Circuit empty1;
  empty1.n_qubits = 1;
  ProbeSet probes = select_probes(empty1, gs);
  REQUIRE(probes.size() == 3);
  CHECK(probes[0].input.label() == "X");
  CHECK(probes[0].output.label() == "X");

  Circuit h;
  h.n_qubits = 1;
  h.moments = {{{"H", {0}}}};
  probes = select_probes(h, gs);
  CHECK(probes.size() == 3);

  Circuit empty2;
  empty2.n_qubits = 2;
  CHECK(select_probes(empty2, gs).size() == 15);

  // IXI spreads to ZXZ (weight 3) under two CZ moments and is dropped.
  Circuit spread;
  spread.n_qubits = 3;
  spread.moments = {{{"CZ", {0, 1}}}, {{"CZ", {1, 2}}}};
  probes = select_probes(spread, gs);
  bool has_ixi = false;
  for (const auto& p : probes) has_ixi |= p.input.label() == "IXI";
  CHECK_FALSE(has_ixi);
}

TEST_CASE("prep specs") {
  auto specs = prep_specs(PauliString::parse("Z"));
  REQUIRE(specs.size() == 2);
  CHECK(specs[0].basis[0] == 3);
  CHECK(specs[0].negative[0] == 0);
  CHECK(specs[0].sign == +1);
  CHECK(specs[1].negative[0] == 1);
  CHECK(specs[1].sign == -1);

  specs = prep_specs(PauliString::parse("XIY"));
  REQUIRE(specs.size() == 4);
  for (const auto& s : specs) {
    CHECK(s.basis[1] == 0);  // identity qubit pinned to |0>
    CHECK(s.negative[1] == 0);
    int par = (s.negative[0] + s.negative[2]) % 2;
    CHECK(s.sign == (par ? -1 : +1));
  }

  CHECK_THROWS_AS(prep_specs(PauliString::parse("II")),
                  std::invalid_argument);
}

TEST_CASE("measurement specs") {
  MeasurementSpec ms = measurement_spec(PauliString::parse("XIZ"));
  CHECK(ms.measured_qubits == std::vector<std::uint32_t>{0, 2});
  CHECK(ms.basis[0] == 1);
  CHECK(ms.basis[1] == 0);
  CHECK(ms.basis[2] == 3);
  CHECK_THROWS_AS(measurement_spec(PauliString::parse("II")),
                  std::invalid_argument);
}

TEST_CASE("design matrix rows") {
  GateSet gs = builtin_gateset();
  ParameterIndex idx = ParameterIndex::build(gs, 1);

  Circuit hh;
  hh.n_qubits = 1;
  hh.moments = {{{"H", {0}}}, {{"H", {0}}}};
  ProbeSet probes = select_probes(hh, gs);
  DesignMatrix A = build_design_matrix({hh}, {probes}, gs, idx);
  REQUIRE(A.rows.size() == 3);
  CHECK(A.n_cols == 18);
  // Probe X traces X -> Z -> X: one increment each for (H, X) and (H, Z).
  std::size_t row_x = 0;
  while (A.row_labels[row_x].probe != "X") ++row_x;
  REQUIRE(A.rows[row_x].size() == 2);
  CHECK(A.rows[row_x][0].first == *idx.column({"H", {0}}, 1));
  CHECK(A.rows[row_x][0].second == 1);
  CHECK(A.rows[row_x][1].first == *idx.column({"H", {0}}, 3));
  CHECK(A.rows[row_x][1].second == 1);

  // Four H moments revisit the same (location, Pauli) twice.
  Circuit h4 = hh;
  h4.moments.push_back({{"H", {0}}});
  h4.moments.push_back({{"H", {0}}});
  A = build_design_matrix({h4}, {select_probes(h4, gs)}, gs, idx);
  row_x = 0;
  while (A.row_labels[row_x].probe != "X") ++row_x;
  REQUIRE(A.rows[row_x].size() == 2);
  CHECK(A.rows[row_x][0].second == 2);
  CHECK(A.rows[row_x][1].second == 2);

  // Empty circuit rows carry no entries.
  Circuit empty;
  empty.n_qubits = 1;
  A = build_design_matrix({empty}, {select_probes(empty, gs)}, gs, idx);
  for (const auto& row : A.rows) CHECK(row.empty());
}

TEST_CASE("design matrix is consistent with the analytic oracle") {
  GateSet gs = builtin_gateset();
  ParameterIndex idx = ParameterIndex::build(gs, 2);
  Rng rng(61);
  for (int i = 0; i < 10; ++i) {
    Circuit c = generate_circuit(2, 2, 4, gs, rng.child({(unsigned)i}));
    NoiseModel nm = random_noise_model(gs, linear_locations(gs, 2), 0.05,
                                       Rng(700 + i));
    ProbeSet probes = select_probes(c, gs);
    DesignMatrix A = build_design_matrix({c}, {probes}, gs, idx);

    std::vector<double> ln_lambda(idx.n_columns());
    for (std::size_t j = 0; j < idx.n_columns(); ++j) {
      const auto& param = idx.params()[j];
      ln_lambda[j] =
          std::log(rates_to_eigenvalues(nm.at(param.loc)).lambdas[param.pauli]);
    }
    for (std::size_t r = 0; r < A.rows.size(); ++r) {
      double lhs = 0.0;
      std::uint32_t entry_total = 0;
      for (auto [col, count] : A.rows[r]) {
        lhs += count * ln_lambda[col];
        entry_total += count;
      }
      PauliString probe = PauliString::parse(A.row_labels[r].probe);
      AnalyticEigenvalue ev = analytic_circuit_eigenvalue(c, gs, nm, probe);
      CHECK(std::abs(lhs - std::log(ev.lambda)) < 1e-12);
      // Total multiplicity equals the number of non-identity trace steps.
      CHECK(entry_total == propagate(c, gs, probe).steps.size());
    }
  }
}

TEST_CASE("rank diagnostics") {
  GateSet gs = builtin_gateset();
  ParameterIndex idx = ParameterIndex::build(gs, 1);
  Circuit h;
  h.n_qubits = 1;
  h.moments = {{{"H", {0}}}};
  ProbeSet one = {select_probes(h, gs)[0]};
  DesignMatrix A = build_design_matrix({h}, {one}, gs, idx);
  RankReport r = check_rank(A);
  CHECK(r.rank == 1);
  CHECK_FALSE(r.full_rank());
  CHECK_FALSE(r.uncovered_columns.empty());
  CHECK(variance_amplification(r) ==
        std::numeric_limits<double>::infinity());

  // Duplicated rows leave the rank unchanged.
  DesignMatrix dup = A;
  dup.rows.push_back(dup.rows[0]);
  dup.row_labels.push_back(dup.row_labels[0]);
  CHECK(check_rank(dup).rank == 1);
}

TEST_CASE("eigenvalue estimation from sampled counts") {
  GateSet gs = builtin_gateset();
  Circuit c = generate_circuit(2, 2, 3, gs, Rng(19));
  NoiseModel noiseless =
      random_noise_model(gs, linear_locations(gs, 2), 0.0, Rng(1));

  ProbeSet probes = select_probes(c, gs);
  for (const auto& probe : probes) {
    auto specs = prep_specs(probe.input);
    PropagationTrace t = propagate(c, gs, probe.input);
    std::vector<CountsTable> tables;
    for (std::uint32_t pi = 0; pi < specs.size(); ++pi) {
      ShotJob job;
      job.probe = probe.input;
      job.prep = specs[pi];
      job.prep_id = pi;
      job.measured_pauli = t.output;
      job.propagation_sign = t.net_sign;
      job.shots = 100;
      job.seed = 3000 + pi;
      tables.push_back(sample_shots(c, gs, noiseless, job));
    }
    std::vector<const CountsTable*> ptrs;
    for (const auto& table : tables) ptrs.push_back(&table);
    RowEstimate est =
        estimate_eigenvalue(probe.input, t.net_sign, ptrs, specs);
    // Sign bookkeeping: noiseless estimates are exactly 1 even when the
    // propagation sign is negative.
    CHECK(est.lambda_hat == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(est.shots == 100 * specs.size());
    CHECK(est.std_error == doctest::Approx(0.0));
    CHECK(est.valid);

    ptrs.pop_back();
    CHECK_THROWS_AS(
        estimate_eigenvalue(probe.input, t.net_sign, ptrs, specs),
        std::invalid_argument);
  }
}

TEST_CASE("estimator is unbiased across seeds") {
  GateSet gs = builtin_gateset();
  Circuit c = generate_circuit(2, 1, 3, gs, Rng(29));
  NoiseModel nm =
      random_noise_model(gs, linear_locations(gs, 2), 0.05, Rng(17));
  PauliString probe = select_probes(c, gs)[4].input;
  PropagationTrace t = propagate(c, gs, probe);
  AnalyticEigenvalue ev = analytic_circuit_eigenvalue(c, gs, nm, probe);
  auto specs = prep_specs(probe);

  const std::uint64_t shots = 20000;
  double mean_diff = 0.0;
  const int n_seeds = 20;
  for (int seed = 0; seed < n_seeds; ++seed) {
    std::vector<CountsTable> tables;
    for (std::uint32_t pi = 0; pi < specs.size(); ++pi) {
      ShotJob job;
      job.probe = probe;
      job.prep = specs[pi];
      job.prep_id = pi;
      job.measured_pauli = t.output;
      job.propagation_sign = t.net_sign;
      job.shots = shots / specs.size();
      job.seed = 5000 + 100 * seed + pi;
      tables.push_back(sample_shots(c, gs, nm, job));
    }
    std::vector<const CountsTable*> ptrs;
    for (const auto& table : tables) ptrs.push_back(&table);
    RowEstimate est = estimate_eigenvalue(probe, t.net_sign, ptrs, specs);
    mean_diff += est.lambda_hat - ev.lambda;
  }
  mean_diff /= n_seeds;
  double se = std::sqrt((1 - ev.lambda * ev.lambda) / (shots * n_seeds));
  CHECK(std::abs(mean_diff) < 2 * se + 1e-12);
}

TEST_CASE("solve recovers exact eigenvalues from analytic rows") {
  GateSet gs = builtin_gateset();
  RunConfig cfg;
  cfg.seed = 5;
  ExperimentPlan plan = build_plan(cfg, gs);
  ParameterIndex idx = ParameterIndex::build(gs, 2);
  DesignMatrix A = build_design_matrix(plan.circuits, plan.probes, gs, idx);
  NoiseModel nm = derive_noise_model(cfg, gs);

  EigenvalueEstimates est;
  for (std::size_t ci = 0; ci < plan.circuits.size(); ++ci) {
    for (const auto& probe : plan.probes[ci]) {
      AnalyticEigenvalue ev =
          analytic_circuit_eigenvalue(plan.circuits[ci], gs, nm, probe.input);
      est.labels.push_back(
          {static_cast<std::uint32_t>(ci), probe.input.label()});
      est.rows.push_back({ev.lambda, 1, 0.0, true});
    }
  }

  SolveReport report = solve(A, est, idx, gs, &nm);
  CHECK(report.rank.full_rank());
  CHECK(report.clamped_rows.empty());
  REQUIRE(report.params.size() == 51);
  for (const auto& p : report.params) {
    double truth = rates_to_eigenvalues(nm.at(p.loc)).lambdas[p.pauli];
    CHECK(std::abs(p.lambda_hat - truth) < 1e-9);
  }
  CHECK(*report.mean_abs_error < 1e-9);
  CHECK(*report.mean_tvd < 1e-9);
  CHECK(report.residual_norm < 1e-9);
  for (const auto& ch : report.channels) {
    CHECK(ch.min_prob > -1e-9);
  }

  // Rank-deficient systems are rejected with diagnostics.
  DesignMatrix first_row = A;
  first_row.rows.resize(1);
  first_row.row_labels.resize(1);
  EigenvalueEstimates one;
  one.labels = {est.labels[0]};
  one.rows = {est.rows[0]};
  CHECK_THROWS_AS(solve(first_row, one, idx, gs), RankError);

  // All-invalid estimates are rejected.
  EigenvalueEstimates invalid = est;
  for (auto& row : invalid.rows) {
    row.lambda_hat = 0.0;
    row.valid = false;
  }
  CHECK_THROWS_AS(solve(A, invalid, idx, gs), std::invalid_argument);

  // Non-positive rows are clamped and flagged, not dropped.
  EigenvalueEstimates clamped = est;
  clamped.rows[3].lambda_hat = -0.25;
  clamped.rows[3].valid = false;
  SolveReport clamped_report = solve(A, clamped, idx, gs);
  REQUIRE(clamped_report.clamped_rows.size() == 1);
  CHECK(clamped_report.clamped_rows[0] == 3);
}

TEST_CASE("resource estimates") {
  ResourceEstimate r = resource_estimate(2, 6, 1, 0.01);
  CHECK(r.min_independent_rows == 51);
  CHECK(r.shots_per_expectation_order == 10000);
  CHECK(r.total_measurement_order == 2 * 7 * 10000);

  r = resource_estimate(1, 6, 0, 0.1);
  CHECK(r.min_independent_rows == 18);
  CHECK(r.shots_per_expectation_order == 100);
  CHECK(r.total_measurement_order == 600);

  CHECK_THROWS_AS(resource_estimate(2, 6, 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(resource_estimate(2, 6, 1, 1.5), std::invalid_argument);
}

TEST_CASE("run config validation") {
  RunConfig cfg;
  CHECK_NOTHROW(cfg.validate());

  RunConfig bad = cfg;
  bad.backend = "quantum";
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.noise_strength = 0.7;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.n_circuits = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.n_qubits = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.shots_per_circuit = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("plans lay out jobs and budgets") {
  GateSet gs = builtin_gateset();
  RunConfig cfg;
  cfg.n_twirls = 3;
  cfg.shots_per_circuit = 1000;
  cfg.seed = 2;
  ExperimentPlan plan = build_plan(cfg, gs);

  REQUIRE(plan.circuits.size() == 5);
  REQUIRE(plan.probes.size() == 5);
  REQUIRE(plan.twirls.size() == 5);
  for (const auto& tw : plan.twirls) CHECK(tw.size() == 3);

  // Budget per (circuit, probe) is the full per-circuit allocation.
  std::map<std::pair<std::uint32_t, std::string>, std::uint64_t> totals;
  for (const auto& job : plan.jobs) {
    CHECK(job.shots >= 1);
    totals[{job.circuit_id, job.probe.label()}] += job.shots;
  }
  CHECK(totals.size() == 75);
  for (const auto& [key, total] : totals) CHECK(total == 1000);

  // Untwirled mode: a single slot per probe takes the whole budget.
  RunConfig untwirled = cfg;
  untwirled.n_twirls = 0;
  ExperimentPlan up = build_plan(untwirled, gs);
  for (const auto& tw : up.twirls) CHECK(tw.empty());
  for (const auto& job : up.jobs) CHECK(job.twirl_id == 0);

  // A budget too small to give every job a shot is rejected.
  RunConfig tiny = cfg;
  tiny.n_twirls = 10;
  tiny.shots_per_circuit = 5;
  CHECK_THROWS_AS(build_plan(tiny, gs), std::invalid_argument);
}

TEST_CASE("full characterization runs deterministically") {
  GateSet gs = builtin_gateset();
  RunConfig cfg;
  cfg.n_twirls = 2;
  cfg.shots_per_circuit = 2000;
  cfg.noise_strength = 0.02;
  cfg.seed = 13;

  SolveReport a = run_characterization(cfg, gs);
  SolveReport b = run_characterization(cfg, gs);
  REQUIRE(a.params.size() == 51);
  for (std::size_t i = 0; i < a.params.size(); ++i) {
    CHECK(a.params[i].lambda_hat == b.params[i].lambda_hat);
  }
  CHECK(a.rank.full_rank());
  CHECK(*a.mean_abs_error < 0.05);

  // Zero noise: identity channels, zero error.
  RunConfig zero = cfg;
  zero.noise_strength = 0.0;
  zero.shots_per_circuit = 500;
  SolveReport z = run_characterization(zero, gs);
  CHECK(*z.mean_abs_error < 1e-12);
  CHECK(*z.mean_tvd < 1e-12);
  for (const auto& ch : z.channels) {
    CHECK(ch.infidelity == doctest::Approx(0.0).epsilon(1e-12));
  }
}

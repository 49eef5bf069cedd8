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

// End-to-end acceptance checks for the characterization pipeline. Each check
// prints one PASS/FAIL line; the exit status is the number of failures.

#include <cmath>
#include <cstdio>
#include <vector>

#include "aces/io.hpp"
#include "aces/protocol.hpp"
#include "oracles.hpp"

using namespace aces;

namespace {

int g_failures = 0;

void record(int number, const char* name, bool ok, const std::string& detail) {
  std::printf("%s  %d. %s (%s)\n", ok ? "PASS" : "FAIL", number, name,
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// Pooled accuracy of full characterization runs across master seeds.
void check_accuracy(int number, const char* name, std::uint64_t shots,
                    double err_bound, double tvd_bound) {
  GateSet gs = builtin_gateset();
  double err_sum = 0.0, tvd_sum = 0.0;
  const int n_seeds = 8;
  for (int seed = 1; seed <= n_seeds; ++seed) {
    RunConfig cfg;
    cfg.shots_per_circuit = shots;
    cfg.seed = static_cast<std::uint64_t>(seed);
    SolveReport report = run_characterization(cfg, gs);
    err_sum += *report.mean_abs_error;
    tvd_sum += *report.mean_tvd;
  }
  double mean_err = err_sum / n_seeds;
  double mean_tvd = tvd_sum / n_seeds;
  record(number, name, mean_err < err_bound && mean_tvd < tvd_bound,
         "mean |err| " + fmt(mean_err) + " vs " + fmt(err_bound) +
             ", mean TVD " + fmt(mean_tvd) + " vs " + fmt(tvd_bound) +
             ", 8 seeds");
}

void check_exact_recovery(int number) {
  GateSet gs = builtin_gateset();
  RunConfig cfg;
  cfg.seed = 5;
  ExperimentPlan plan = build_plan(cfg, gs);
  ParameterIndex idx = ParameterIndex::build(gs, cfg.n_qubits);
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
  double worst = 0.0;
  for (const auto& p : report.params) {
    double truth = rates_to_eigenvalues(nm.at(p.loc)).lambdas[p.pauli];
    worst = std::max(worst, std::abs(p.lambda_hat - truth));
  }
  record(number, "noise-free solve recovers every gate eigenvalue",
         worst < 1e-9, "max |err| " + fmt(worst) + " vs 1e-09");
}

void check_transform_round_trip(int number) {
  Rng rng(42);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    unsigned k = 1 + static_cast<unsigned>(i & 1);
    unsigned dim = 1u << (2 * k);
    PauliChannel ch;
    ch.k = k;
    ch.probs.resize(dim);
    double sum = 0.0;
    for (unsigned a = 0; a < dim; ++a) {
      ch.probs[a] = rng.next_double();
      sum += ch.probs[a];
    }
    for (auto& p : ch.probs) p /= sum;

    EigenvalueVector ev = rates_to_eigenvalues(ch);
    Eigen::MatrixXd w = test::walsh_matrix(k);
    Eigen::VectorXd p(dim);
    for (unsigned a = 0; a < dim; ++a) p(a) = ch.probs[a];
    Eigen::VectorXd l_oracle = w * p;
    for (unsigned b = 0; b < dim; ++b) {
      worst = std::max(worst, std::abs(ev.lambdas[b] - l_oracle(b)));
    }
    PauliChannel back = eigenvalues_to_rates(ev);
    for (unsigned a = 0; a < dim; ++a) {
      worst = std::max(worst, std::abs(back.probs[a] - ch.probs[a]));
    }
  }
  record(number, "channel transform round trip matches the dense oracle",
         worst < 1e-12, "max deviation " + fmt(worst) + " over 1000 channels");
}

void check_sampler_consistency(int number) {
  GateSet gs = builtin_gateset();
  Rng rng(77);
  int within = 0;
  const int n_trials = 20;
  const std::uint64_t shots = 100000;
  for (int i = 0; i < n_trials; ++i) {
    std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.next_below(2));
    std::uint32_t m_half = 1 + static_cast<std::uint32_t>(rng.next_below(4));
    std::uint32_t m_prime = static_cast<std::uint32_t>(rng.next_below(7));
    Circuit c = generate_circuit(n, m_half, m_prime, gs,
                                 rng.child({1u, (unsigned)i}));
    NoiseModel nm = random_noise_model(
        gs, linear_locations(gs, n), 0.005 + 0.04 * rng.next_double(),
        rng.child({2u, (unsigned)i}));
    ProbeSet probes = select_probes(c, gs);
    const Probe& probe = probes[rng.next_below(probes.size())];
    AnalyticEigenvalue ev =
        analytic_circuit_eigenvalue(c, gs, nm, probe.input);

    auto specs = prep_specs(probe.input);
    std::vector<CountsTable> tables;
    for (std::uint32_t si = 0; si < specs.size(); ++si) {
      ShotJob job;
      job.probe = probe.input;
      job.prep = specs[si];
      job.prep_id = si;
      job.measured_pauli = probe.output;
      job.propagation_sign = probe.sign;
      job.shots = shots / specs.size();
      job.seed = 9000 + 100 * static_cast<std::uint64_t>(i) + si;
      tables.push_back(sample_shots(c, gs, nm, job));
    }
    std::vector<const CountsTable*> ptrs;
    for (const auto& t : tables) ptrs.push_back(&t);
    RowEstimate est = estimate_eigenvalue(probe.input, probe.sign, ptrs, specs);
    double sigma = std::sqrt((1 - ev.lambda * ev.lambda) /
                             static_cast<double>(est.shots));
    if (std::abs(est.lambda_hat - ev.lambda) <= 5 * sigma) ++within;
  }
  record(number, "sampled eigenvalues sit within 5 sigma of the analytic value",
         within == n_trials,
         std::to_string(within) + "/" + std::to_string(n_trials) +
             " trials within 5 sigma at 1e5 shots");
}

void check_structural_counts(int number) {
  GateSet gs = builtin_gateset();
  ParameterIndex idx = ParameterIndex::build(gs, 2);
  RunConfig cfg;
  cfg.seed = 1;
  ExperimentPlan plan = build_plan(cfg, gs);
  DesignMatrix A = build_design_matrix(plan.circuits, plan.probes, gs, idx);
  RankReport r = check_rank(A);
  record(number, "default two-qubit setup yields 51 parameters at full rank",
         idx.n_columns() == 51 && r.rank == 51,
         std::to_string(idx.n_columns()) + " columns, rank " +
             std::to_string(r.rank));
}

void check_mirror_identity(int number) {
  GateSet gs = builtin_gateset();
  Rng rng(123);
  int ok_circuits = 0;
  const int n_circuits = 100;
  for (int i = 0; i < n_circuits; ++i) {
    std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.next_below(2));
    Circuit c = generate_circuit(n, 4, 6, gs, rng.child({(unsigned)i}));
    Circuit mirror;
    mirror.n_qubits = n;
    mirror.moments.assign(c.moments.begin(), c.moments.begin() + 8);
    bool ok = true;
    for (std::uint32_t q = 0; q < n && ok; ++q) {
      for (unsigned d = 1; d < 4 && ok; ++d) {
        PauliString p(n);
        p.set_pauli_code(q, d);
        PropagationTrace t = propagate(mirror, gs, p);
        ok = t.output == p && t.net_sign == +1;
      }
    }
    ok_circuits += ok;
  }
  record(number, "mirror sections return every input Pauli with sign +1",
         ok_circuits == n_circuits,
         std::to_string(ok_circuits) + "/" + std::to_string(n_circuits) +
             " circuits");
}

void check_twirl_average(int number) {
  GateSet gs = builtin_gateset();
  Circuit c;
  c.n_qubits = 1;
  c.moments = {{{"S", {0}}}};
  NoiseModel nm;
  nm.channels[{"S", {0}}] = PauliChannel{1, {0.9, 0.05, 0.03, 0.02}};
  const CliffordGate& s = *gs.find("S");

  double worst = 0.0;
  for (unsigned d = 1; d < 4; ++d) {
    PauliString probe(1);
    probe.set_pauli_code(0, d);
    AnalyticEigenvalue base = analytic_circuit_eigenvalue(c, gs, nm, probe);
    double avg = 0.0;
    for (unsigned a = 0; a < 4; ++a) {
      TableEntry e = s.conjugate(a);
      TwirledCircuit tc;
      tc.base = c;
      tc.insertions = {{0, 0, static_cast<std::uint8_t>(a), e.pauli,
                        static_cast<std::int8_t>(e.sign)}};
      AnalyticEigenvalue twirled =
          analytic_circuit_eigenvalue(tc, gs, nm, probe);
      avg += twirled.sign * twirled.lambda;
    }
    avg /= 4.0;
    worst = std::max(worst, std::abs(avg - base.sign * base.lambda));
  }
  record(number, "exact twirl average equals the untwirled eigenvalue",
         worst < 1e-12, "max deviation " + fmt(worst) + " vs 1e-12");
}

}  // namespace

int main() {
  check_accuracy(1, "full characterization accuracy at 1e5 shots", 100000,
                 0.003, 0.001);
  check_accuracy(2, "full characterization accuracy at 1e4 shots", 10000,
                 0.01, 0.005);
  check_exact_recovery(3);
  check_transform_round_trip(4);
  check_sampler_consistency(5);
  check_structural_counts(6);
  check_mirror_identity(7);
  check_twirl_average(8);
  return g_failures;
}

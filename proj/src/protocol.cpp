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

#include "aces/protocol.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>

namespace aces {

namespace {

const std::uint64_t kTagCircuit = fnv1a(std::string("circuit"));
const std::uint64_t kTagTwirl = fnv1a(std::string("twirl"));
const std::uint64_t kTagJob = fnv1a(std::string("job"));
const std::uint64_t kTagNoise = fnv1a(std::string("noise"));

Eigen::MatrixXd dense_matrix(const DesignMatrix& A) {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(
      static_cast<Eigen::Index>(A.rows.size()),
      static_cast<Eigen::Index>(A.n_cols));
  for (std::size_t r = 0; r < A.rows.size(); ++r) {
    for (auto [c, count] : A.rows[r]) {
      M(static_cast<Eigen::Index>(r), c) = static_cast<double>(count);
    }
  }
  return M;
}

}  // namespace

ParameterIndex ParameterIndex::build(const GateSet& gs,
                                     std::uint32_t n_qubits) {
  ParameterIndex idx;
  idx.locations_ = linear_locations(gs, n_qubits);
  for (const auto& loc : idx.locations_) {
    const CliffordGate* g = gs.find(loc.gate);
    unsigned dim = 1u << (2 * g->arity);
    idx.base_.emplace(loc, std::make_pair(idx.params_.size(), g->arity));
    for (unsigned p = 1; p < dim; ++p) {
      idx.params_.push_back({loc, static_cast<std::uint8_t>(p), g->arity});
    }
  }
  return idx;
}

std::optional<std::size_t> ParameterIndex::column(const LocationKey& loc,
                                                 std::uint8_t pauli) const {
  auto it = base_.find(loc);
  if (it == base_.end()) return std::nullopt;
  return it->second.first + pauli - 1;
}

ProbeSet select_probes(const Circuit& c, const GateSet& gs,
                       unsigned max_weight) {
  ProbeSet set;
  auto consider = [&](PauliString p) {
    PropagationTrace trace = propagate(c, gs, p);
    if (trace.output.weight() > max_weight) return;
    set.push_back({std::move(p), trace.output, trace.net_sign});
  };
  for (std::uint32_t q = 0; q < c.n_qubits; ++q) {
    for (unsigned d = 1; d < 4; ++d) {
      PauliString p(c.n_qubits);
      p.set_pauli_code(q, d);
      consider(std::move(p));
    }
  }
  if (max_weight >= 2) {
    // Two-qubit probes only on connected pairs; probes on disconnected pairs
    // never touch a two-qubit parameter.
    for (std::uint32_t q = 0; q + 1 < c.n_qubits; ++q) {
      for (unsigned d0 = 1; d0 < 4; ++d0) {
        for (unsigned d1 = 1; d1 < 4; ++d1) {
          PauliString p(c.n_qubits);
          p.set_pauli_code(q, d0);
          p.set_pauli_code(q + 1, d1);
          consider(std::move(p));
        }
      }
    }
  }
  return set;
}

std::vector<PrepSpec> prep_specs(const PauliString& p) {
  std::vector<std::uint32_t> support;
  for (std::uint32_t q = 0; q < p.n_qubits(); ++q) {
    if (p.pauli_code(q) != 0) support.push_back(q);
  }
  if (support.empty()) {
    throw std::invalid_argument("prep_specs: zero-weight probe");
  }
  std::vector<PrepSpec> specs;
  for (std::uint32_t s = 0; s < (1u << support.size()); ++s) {
    PrepSpec spec;
    spec.basis.assign(p.n_qubits(), 0);
    spec.negative.assign(p.n_qubits(), 0);
    for (std::size_t j = 0; j < support.size(); ++j) {
      spec.basis[support[j]] =
          static_cast<std::uint8_t>(p.pauli_code(support[j]));
      spec.negative[support[j]] = (s >> j) & 1;
    }
    spec.sign = (std::popcount(s) & 1) ? -1 : +1;
    specs.push_back(std::move(spec));
  }
  return specs;
}

MeasurementSpec measurement_spec(const PauliString& p_out) {
  MeasurementSpec spec;
  spec.basis.assign(p_out.n_qubits(), 0);
  for (std::uint32_t q = 0; q < p_out.n_qubits(); ++q) {
    unsigned d = p_out.pauli_code(q);
    if (d != 0) {
      spec.basis[q] = static_cast<std::uint8_t>(d);
      spec.measured_qubits.push_back(q);
    }
  }
  if (spec.measured_qubits.empty()) {
    throw std::invalid_argument("measurement_spec: zero-weight output");
  }
  return spec;
}

DesignMatrix build_design_matrix(const std::vector<Circuit>& circuits,
                                 const std::vector<ProbeSet>& probes,
                                 const GateSet& gs,
                                 const ParameterIndex& idx) {
  DesignMatrix A;
  A.n_cols = idx.n_columns();
  for (std::size_t ci = 0; ci < circuits.size(); ++ci) {
    for (const auto& probe : probes[ci]) {
      PropagationTrace trace = propagate(circuits[ci], gs, probe.input);
      std::map<std::size_t, std::uint32_t> row;
      for (const auto& step : trace.steps) {
        auto col = idx.column(step.location(), step.input_code);
        if (!col) {
          throw std::invalid_argument("design matrix: unknown location " +
                                      step.location().str());
        }
        row[*col] += 1;
      }
      A.row_labels.push_back(
          {static_cast<std::uint32_t>(ci), probe.input.label()});
      std::vector<std::pair<std::uint32_t, std::uint32_t>> sparse;
      for (auto [c, n] : row) {
        sparse.emplace_back(static_cast<std::uint32_t>(c), n);
      }
      A.rows.push_back(std::move(sparse));
    }
  }
  return A;
}

RankReport check_rank(const DesignMatrix& A) {
  RankReport report;
  report.n_cols = A.n_cols;
  std::vector<bool> covered(A.n_cols, false);
  for (const auto& row : A.rows) {
    for (auto [c, n] : row) covered[c] = true;
  }
  for (std::size_t c = 0; c < A.n_cols; ++c) {
    if (!covered[c]) report.uncovered_columns.push_back(c);
  }
  if (A.rows.empty() || A.n_cols == 0) return report;
  Eigen::MatrixXd M = dense_matrix(A);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto& sv = svd.singularValues();
  report.singular_values.assign(sv.data(), sv.data() + sv.size());
  double threshold = 1e-10 * sv(0);
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold) ++report.rank;
  }
  return report;
}

double variance_amplification(const RankReport& report) {
  if (!report.full_rank() || report.n_cols == 0) {
    return std::numeric_limits<double>::infinity();
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < report.n_cols; ++i) {
    double s = report.singular_values[i];
    sum += 1.0 / (s * s);
  }
  return std::sqrt(sum / static_cast<double>(report.n_cols));
}

RowEstimate estimate_eigenvalue(const PauliString& probe, int propagation_sign,
                                const std::vector<const CountsTable*>& counts,
                                const std::vector<PrepSpec>& specs) {
  std::vector<std::int64_t> signed_sum(specs.size(), 0);
  std::vector<std::uint64_t> spec_shots(specs.size(), 0);
  std::uint64_t total = 0;
  for (const CountsTable* table : counts) {
    if (table->prep_id >= specs.size()) {
      throw std::invalid_argument("counts reference unknown prep spec");
    }
    for (const auto& [bits, n] : table->counts) {
      unsigned ones = 0;
      for (char ch : bits) ones += ch == '1';
      signed_sum[table->prep_id] += (ones & 1)
                                        ? -static_cast<std::int64_t>(n)
                                        : static_cast<std::int64_t>(n);
      spec_shots[table->prep_id] += n;
      total += n;
    }
  }
  double acc = 0.0;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    if (spec_shots[s] == 0) {
      throw std::invalid_argument("missing counts for prep spec " +
                                  std::to_string(s) + " of probe " +
                                  probe.label());
    }
    acc += specs[s].sign * static_cast<double>(signed_sum[s]) /
           static_cast<double>(spec_shots[s]);
  }
  RowEstimate est;
  est.lambda_hat =
      propagation_sign * acc / static_cast<double>(specs.size());
  est.shots = total;
  est.std_error = std::sqrt(
      std::max(0.0, 1.0 - est.lambda_hat * est.lambda_hat) /
      static_cast<double>(total));
  est.valid = est.lambda_hat > kClampFloor;
  return est;
}

SolveReport solve(const DesignMatrix& A, const EigenvalueEstimates& est,
                  const ParameterIndex& idx, const GateSet& gs,
                  const NoiseModel* truth) {
  if (est.rows.size() != A.rows.size()) {
    throw std::invalid_argument("estimate count does not match matrix rows");
  }
  bool any_valid = false;
  for (const auto& row : est.rows) any_valid |= row.valid;
  if (!any_valid) {
    throw std::invalid_argument("all eigenvalue estimates invalid");
  }

  SolveReport report;
  report.rank = check_rank(A);
  if (!report.rank.full_rank()) {
    throw RankError("design matrix is rank deficient", report.rank);
  }

  Eigen::MatrixXd M = dense_matrix(A);
  Eigen::VectorXd b(static_cast<Eigen::Index>(A.rows.size()));
  for (std::size_t r = 0; r < A.rows.size(); ++r) {
    double lam = est.rows[r].lambda_hat;
    double clamped = std::clamp(lam, kClampFloor, 1.0);
    if (clamped != lam) {
      report.clamped_rows.push_back(static_cast<std::uint32_t>(r));
    }
    b(static_cast<Eigen::Index>(r)) = std::log(clamped);
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU |
                                            Eigen::ComputeThinV);
  Eigen::VectorXd x = svd.solve(b);
  report.residual_norm = (M * x - b).norm();

  std::map<LocationKey, EigenvalueVector> truth_eigs;
  if (truth != nullptr) {
    for (const auto& [loc, ch] : truth->channels) {
      truth_eigs.emplace(loc, rates_to_eigenvalues(ch));
    }
  }

  double abs_error_sum = 0.0;
  for (std::size_t c = 0; c < idx.n_columns(); ++c) {
    const auto& param = idx.params()[c];
    SolveReport::ParamResult pr;
    pr.loc = param.loc;
    pr.pauli = param.pauli;
    pr.pauli_label = support_label(param.pauli, param.arity);
    pr.lambda_hat = std::exp(x(static_cast<Eigen::Index>(c)));
    auto it = truth_eigs.find(param.loc);
    if (it != truth_eigs.end()) {
      pr.lambda_true = it->second.lambdas[param.pauli];
      pr.abs_error = std::abs(pr.lambda_hat - *pr.lambda_true);
      abs_error_sum += *pr.abs_error;
    }
    report.params.push_back(std::move(pr));
  }

  double tvd_sum = 0.0;
  std::size_t tvd_count = 0;
  std::size_t col = 0;
  for (const auto& loc : idx.locations()) {
    const CliffordGate* g = gs.find(loc.gate);
    unsigned dim = 1u << (2 * g->arity);
    EigenvalueVector ev;
    ev.k = g->arity;
    ev.lambdas.assign(dim, 1.0);
    for (unsigned p = 1; p < dim; ++p) {
      ev.lambdas[p] = report.params[col++].lambda_hat;
    }
    SolveReport::ChannelResult cr;
    cr.loc = loc;
    cr.channel = eigenvalues_to_rates(ev);
    cr.min_prob =
        *std::min_element(cr.channel.probs.begin(), cr.channel.probs.end());
    cr.infidelity = process_infidelity(cr.channel);
    if (truth != nullptr) {
      cr.tvd_vs_truth = tvd(cr.channel.probs, truth->at(loc).probs);
      tvd_sum += *cr.tvd_vs_truth;
      ++tvd_count;
    }
    report.channels.push_back(std::move(cr));
  }

  if (truth != nullptr && !report.params.empty()) {
    report.mean_abs_error =
        abs_error_sum / static_cast<double>(report.params.size());
    report.mean_tvd = tvd_sum / static_cast<double>(tvd_count);
  }
  return report;
}

ResourceEstimate resource_estimate(std::uint32_t n_qubits, std::uint32_t g1,
                                   std::uint32_t g2, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must be in (0, 1)");
  }
  ResourceEstimate r;
  r.min_independent_rows =
      3ull * g1 * n_qubits + 15ull * g2 * (n_qubits - 1);
  r.shots_per_expectation_order =
      static_cast<std::uint64_t>(std::ceil(1.0 / (epsilon * epsilon)));
  r.total_measurement_order =
      static_cast<std::uint64_t>(n_qubits) * (g1 + g2) *
      r.shots_per_expectation_order;
  return r;
}

void RunConfig::validate() const {
  if (n_qubits < 1) throw std::invalid_argument("n_qubits must be positive");
  if (n_circuits < 1) {
    throw std::invalid_argument("n_circuits must be positive");
  }
  if (shots_per_circuit < 1) {
    throw std::invalid_argument("shots_per_circuit must be positive");
  }
  if (gate_set_source != "builtin" && gate_set_source != "file") {
    throw std::invalid_argument("gate_set_source must be builtin or file");
  }
  if (gate_set_source == "file" && gate_set_file.empty()) {
    throw std::invalid_argument("gate_set_file required");
  }
  if (backend != "simulator" && backend != "ingest") {
    throw std::invalid_argument("backend must be simulator or ingest");
  }
  if (backend == "simulator") {
    if (noise_source != "random" && noise_source != "file") {
      throw std::invalid_argument("noise_source must be random or file");
    }
    if (noise_source == "random" &&
        (noise_strength < 0.0 || noise_strength >= 0.5)) {
      throw std::invalid_argument("noise_strength must be in [0, 0.5)");
    }
    if (noise_source == "file" && noise_file.empty()) {
      throw std::invalid_argument("noise_file required");
    }
  }
}

ExperimentPlan build_plan(const RunConfig& config, const GateSet& gs) {
  config.validate();
  ExperimentPlan plan;
  plan.config = config;
  Rng master(config.seed);

  ParameterIndex idx = ParameterIndex::build(gs, config.n_qubits);
  constexpr std::uint32_t kMaxAttempts = 2000;
  // Random ensembles vary widely in least-squares conditioning; keep the
  // best-conditioned full-rank draw, stopping early once the amplification
  // is close to the shot-noise floor.
  constexpr double kAmpEarlyStop = 0.60;
  RankReport last_rank;
  double best_amp = std::numeric_limits<double>::infinity();
  std::vector<Circuit> best_circuits;
  std::vector<ProbeSet> best_probes;
  for (std::uint32_t attempt = 1; attempt <= kMaxAttempts; ++attempt) {
    plan.circuits.clear();
    plan.probes.clear();
    for (std::uint32_t ci = 0; ci < config.n_circuits; ++ci) {
      Circuit c = generate_circuit(config.n_qubits, config.m_half,
                                   config.m_prime, gs,
                                   master.child({kTagCircuit, attempt, ci}));
      plan.probes.push_back(select_probes(c, gs));
      plan.circuits.push_back(std::move(c));
    }
    DesignMatrix A = build_design_matrix(plan.circuits, plan.probes, gs, idx);
    last_rank = check_rank(A);
    plan.generation_attempts = attempt;
    double amp = variance_amplification(last_rank);
    if (amp < best_amp) {
      best_amp = amp;
      best_circuits = plan.circuits;
      best_probes = plan.probes;
    }
    if (best_amp <= kAmpEarlyStop) break;
  }
  if (!std::isfinite(best_amp)) {
    throw RankError("no full-rank design matrix after " +
                        std::to_string(kMaxAttempts) + " attempts",
                    last_rank);
  }
  plan.circuits = std::move(best_circuits);
  plan.probes = std::move(best_probes);

  for (std::uint32_t ci = 0; ci < config.n_circuits; ++ci) {
    std::vector<std::uint64_t> twirl_shots;
    if (config.n_twirls >= 1) {
      auto ensemble =
          ensemble_plan(plan.circuits[ci], gs, config.n_twirls,
                        config.shots_per_circuit, master.child({kTagTwirl, ci}));
      std::vector<TwirledCircuit> tcs;
      for (auto& [tc, shots] : ensemble) {
        twirl_shots.push_back(shots);
        tcs.push_back(std::move(tc));
      }
      plan.twirls.push_back(std::move(tcs));
    } else {
      plan.twirls.emplace_back();  // untwirled: one slot, full budget
      twirl_shots.push_back(config.shots_per_circuit);
    }

    for (std::uint32_t pi = 0; pi < plan.probes[ci].size(); ++pi) {
      const Probe& probe = plan.probes[ci][pi];
      auto specs = prep_specs(probe.input);
      for (std::uint32_t ti = 0; ti < twirl_shots.size(); ++ti) {
        std::uint64_t per_twirl = twirl_shots[ti];
        std::uint64_t base = per_twirl / specs.size();
        std::uint64_t rem = per_twirl % specs.size();
        for (std::uint32_t si = 0; si < specs.size(); ++si) {
          std::uint64_t shots = base + (si < rem ? 1 : 0);
          if (shots == 0) {
            throw std::invalid_argument(
                "shot budget too small to cover every twirl and prep spec");
          }
          ShotJob job;
          job.id = "c" + std::to_string(ci) + "_p" + std::to_string(pi) +
                   "_t" + std::to_string(ti) + "_s" + std::to_string(si);
          job.circuit_id = ci;
          job.twirl_id = ti;
          job.prep_id = si;
          job.probe = probe.input;
          job.prep = specs[si];
          job.measured_pauli = probe.output;
          job.propagation_sign = probe.sign;
          job.shots = shots;
          job.seed = master.child({kTagJob, ci, pi, ti, si}).seed();
          plan.jobs.push_back(std::move(job));
        }
      }
    }
  }
  return plan;
}

std::vector<CountsTable> simulate_plan(const ExperimentPlan& plan,
                                       const GateSet& gs,
                                       const NoiseModel& nm) {
  std::vector<CountsTable> out;
  out.reserve(plan.jobs.size());
  for (const auto& job : plan.jobs) {
    const auto& twirls = plan.twirls[job.circuit_id];
    if (!twirls.empty()) {
      out.push_back(sample_shots(twirls[job.twirl_id], gs, nm, job));
    } else {
      out.push_back(sample_shots(plan.circuits[job.circuit_id], gs, nm, job));
    }
  }
  return out;
}

EigenvalueEstimates estimate_all(const ExperimentPlan& plan,
                                 const std::vector<CountsTable>& counts) {
  std::map<std::string, const ShotJob*> jobs_by_id;
  for (const auto& job : plan.jobs) jobs_by_id.emplace(job.id, &job);

  // Group counts by (circuit, probe) row.
  std::map<std::pair<std::uint32_t, std::string>,
           std::vector<const CountsTable*>>
      grouped;
  for (const auto& table : counts) {
    auto it = jobs_by_id.find(table.job_id);
    if (it == jobs_by_id.end()) {
      throw std::invalid_argument("counts for unknown job " + table.job_id);
    }
    grouped[{it->second->circuit_id, it->second->probe.label()}].push_back(
        &table);
  }

  EigenvalueEstimates est;
  for (std::uint32_t ci = 0; ci < plan.circuits.size(); ++ci) {
    for (const auto& probe : plan.probes[ci]) {
      auto it = grouped.find({ci, probe.input.label()});
      if (it == grouped.end()) {
        throw std::invalid_argument("no counts for circuit " +
                                    std::to_string(ci) + " probe " +
                                    probe.input.label());
      }
      est.labels.push_back({ci, probe.input.label()});
      est.rows.push_back(estimate_eigenvalue(probe.input, probe.sign,
                                             it->second,
                                             prep_specs(probe.input)));
    }
  }
  return est;
}

NoiseModel derive_noise_model(const RunConfig& config, const GateSet& gs) {
  if (config.noise_source != "random") {
    throw std::invalid_argument(
        "derive_noise_model only covers the random source");
  }
  return random_noise_model(gs, linear_locations(gs, config.n_qubits),
                            config.noise_strength,
                            Rng(config.seed).child({kTagNoise}));
}

SolveReport run_characterization(const RunConfig& config, const GateSet& gs,
                                 const NoiseModel* truth_override) {
  if (config.backend != "simulator") {
    throw std::invalid_argument(
        "run_characterization requires the simulator backend");
  }
  ExperimentPlan plan = build_plan(config, gs);
  NoiseModel nm = truth_override != nullptr ? *truth_override
                                            : derive_noise_model(config, gs);
  std::vector<CountsTable> counts = simulate_plan(plan, gs, nm);
  EigenvalueEstimates est = estimate_all(plan, counts);
  ParameterIndex idx = ParameterIndex::build(gs, config.n_qubits);
  DesignMatrix A = build_design_matrix(plan.circuits, plan.probes, gs, idx);
  return solve(A, est, idx, gs, &nm);
}

}  // namespace aces

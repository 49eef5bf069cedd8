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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aces/sim.hpp"

namespace aces {

/// The model parameters upsilon = (gate, qubit tuple, non-identity support
/// Pauli), ordered location-major over the linear-connectivity locations:
/// one-qubit gates over all qubits first, then two-qubit gates over all
/// adjacent pairs.
class ParameterIndex {
 public:
  struct Param {
    LocationKey loc;
    std::uint8_t pauli;  // support code in [1, 4^k)
    unsigned arity;
  };

  static ParameterIndex build(const GateSet& gs, std::uint32_t n_qubits);

  std::size_t n_columns() const { return params_.size(); }
  const std::vector<Param>& params() const { return params_; }
  const std::vector<LocationKey>& locations() const { return locations_; }

  /// Column of (loc, pauli), or nullopt for an unknown location. pauli must
  /// be a non-identity support code.
  std::optional<std::size_t> column(const LocationKey& loc,
                                    std::uint8_t pauli) const;

 private:
  std::vector<Param> params_;
  std::vector<LocationKey> locations_;
  std::map<LocationKey, std::pair<std::size_t, unsigned>> base_;  // col, arity
};

/// A probe Pauli with its propagated output and Clifford sign.
struct Probe {
  PauliString input;
  PauliString output;  // sign +1; the Clifford sign lives in `sign`
  int sign = +1;
};
using ProbeSet = std::vector<Probe>;

/// All Paulis of weight <= max_weight (two-qubit probes only on adjacent
/// pairs) whose propagated output also has weight <= max_weight.
ProbeSet select_probes(const Circuit& c, const GateSet& gs,
                       unsigned max_weight = 2);

/// The 2^w product eigenstates over the support of p, identity qubits pinned
/// to |0>. Spec s selects the -1 eigenstate on support qubit j iff bit j of s
/// is set; the spec's sign is (-1)^{popcount(s)}. Throws on a weight-zero
/// probe.
std::vector<PrepSpec> prep_specs(const PauliString& p);

/// Basis rotation mapping each support Pauli's eigenbasis to the
/// computational basis; only the support is measured.
struct MeasurementSpec {
  std::vector<std::uint8_t> basis;          // per-qubit Pauli digit, 0 = unused
  std::vector<std::uint32_t> measured_qubits;
};
MeasurementSpec measurement_spec(const PauliString& p_out);

struct RowLabel {
  std::uint32_t circuit_id;
  std::string probe;  // input Pauli label
};

/// Sparse integer design matrix: row mu = (circuit, probe) holds one entry
/// per distinct parameter its trace touches, with multiplicity counts.
struct DesignMatrix {
  std::size_t n_cols = 0;
  std::vector<RowLabel> row_labels;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> rows;
};

DesignMatrix build_design_matrix(const std::vector<Circuit>& circuits,
                                 const std::vector<ProbeSet>& probes,
                                 const GateSet& gs,
                                 const ParameterIndex& idx);

struct RankReport {
  std::size_t rank = 0;
  std::size_t n_cols = 0;
  std::vector<double> singular_values;
  std::vector<std::size_t> uncovered_columns;  // no entry anywhere
  bool full_rank() const { return rank >= n_cols; }
};

/// Numerical rank: singular values above 1e-10 times the largest.
RankReport check_rank(const DesignMatrix& A);

/// RMS noise amplification of the least-squares solve,
/// sqrt(trace((A^T A)^-1) / n_cols); infinity when rank deficient.
double variance_amplification(const RankReport& report);

struct RowEstimate {
  double lambda_hat = 1.0;
  std::uint64_t shots = 0;
  double std_error = 0.0;  // sqrt((1 - lambda_hat^2) / shots)
  bool valid = true;       // lambda_hat above the clamp floor
};

/// Difference-trick estimator: propagation_sign times the prep-sign-weighted
/// average of the per-spec parity expectations. Counts must cover every prep
/// spec of the probe with nonzero shots.
RowEstimate estimate_eigenvalue(const PauliString& probe, int propagation_sign,
                                const std::vector<const CountsTable*>& counts,
                                const std::vector<PrepSpec>& specs);

struct EigenvalueEstimates {
  std::vector<RowLabel> labels;
  std::vector<RowEstimate> rows;
};

class RankError : public std::runtime_error {
 public:
  RankError(const std::string& what, RankReport report)
      : std::runtime_error(what), report(std::move(report)) {}
  RankReport report;
};

struct SolveReport {
  struct ParamResult {
    LocationKey loc;
    std::uint8_t pauli;
    std::string pauli_label;
    double lambda_hat;
    std::optional<double> lambda_true;
    std::optional<double> abs_error;
  };
  struct ChannelResult {
    LocationKey loc;
    PauliChannel channel;  // reconstructed; may carry small negative entries
    double min_prob;
    double infidelity;
    std::optional<double> tvd_vs_truth;
  };

  std::vector<ParamResult> params;
  std::vector<ChannelResult> channels;
  double residual_norm = 0.0;
  RankReport rank;
  std::vector<std::uint32_t> clamped_rows;
  std::optional<double> mean_abs_error;
  std::optional<double> mean_tvd;
};

inline constexpr double kClampFloor = 1e-6;

/// Least squares on b = ln(clamp(lambda_hat, 1e-6, 1)); gate eigenvalues
/// exp(x); channels via the inverse transform with lambda_I := 1 prepended.
/// Throws RankError when A is rank deficient.
SolveReport solve(const DesignMatrix& A, const EigenvalueEstimates& est,
                  const ParameterIndex& idx, const GateSet& gs,
                  const NoiseModel* truth = nullptr);

struct ResourceEstimate {
  std::uint64_t min_independent_rows;
  std::uint64_t shots_per_expectation_order;
  std::uint64_t total_measurement_order;
};

/// 3*g1*n + 15*g2*(n-1) independent rows; ceil(1/eps^2) shots per
/// expectation; n*(g1+g2)*ceil(1/eps^2) total measurement order.
ResourceEstimate resource_estimate(std::uint32_t n_qubits, std::uint32_t g1,
                                   std::uint32_t g2, double epsilon);

// -------------------------------------------------------------------------
// End-to-end pipeline.

struct RunConfig {
  std::uint32_t n_qubits = 2;
  std::string gate_set_source = "builtin";  // "builtin" | "file"
  std::string gate_set_file;
  std::uint32_t m_half = 4;
  std::uint32_t m_prime = 6;
  std::uint32_t n_circuits = 5;
  std::uint32_t n_twirls = 10;  // 0 = untwirled execution
  std::uint64_t shots_per_circuit = 100000;
  std::uint64_t seed = 1;
  std::string backend = "simulator";      // "simulator" | "ingest"
  std::string noise_source = "random";    // "random" | "file"
  double noise_strength = 0.01;
  std::string noise_file;
  std::string ingest_dir;
  std::string out_dir = "aces-out";

  void validate() const;  // throws std::invalid_argument
};

struct ExperimentPlan {
  RunConfig config;
  std::vector<Circuit> circuits;
  std::vector<ProbeSet> probes;                    // per circuit
  std::vector<std::vector<TwirledCircuit>> twirls; // per circuit; empty when untwirled
  std::vector<ShotJob> jobs;
  std::uint32_t generation_attempts = 1;
};

/// Draws candidate circuit ensembles and keeps the full-rank draw with the
/// lowest variance amplification (capped attempts; throws RankError when no
/// draw reaches full column rank), then lays out all (circuit, probe, twirl,
/// prep) jobs with the shot budget divided evenly across twirls and then
/// across prep specs, remainders to the leading slots.
ExperimentPlan build_plan(const RunConfig& config, const GateSet& gs);

/// One counts table per job, in job order. Deterministic per job seed.
std::vector<CountsTable> simulate_plan(const ExperimentPlan& plan,
                                       const GateSet& gs,
                                       const NoiseModel& nm);

/// Groups counts by (circuit, probe) row and runs the estimator. Rows follow
/// the design-matrix enumeration order.
EigenvalueEstimates estimate_all(const ExperimentPlan& plan,
                                 const std::vector<CountsTable>& counts);

/// The noise model a simulator run uses: drawn from the master seed for the
/// "random" source, loaded by the caller otherwise.
NoiseModel derive_noise_model(const RunConfig& config, const GateSet& gs);

/// plan -> simulate -> estimate -> solve, fully deterministic per master
/// seed. `truth_override` substitutes the simulated noise model (and ground
/// truth) when provided.
SolveReport run_characterization(const RunConfig& config, const GateSet& gs,
                                 const NoiseModel* truth_override = nullptr);

}  // namespace aces

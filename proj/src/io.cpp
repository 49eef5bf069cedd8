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

#include "aces/io.hpp"

#include <fstream>
#include <sstream>

namespace aces::io {

namespace {

std::string join_qubits(const std::vector<std::uint32_t>& qubits) {
  std::string s;
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(qubits[i]);
  }
  return s;
}

}  // namespace

json gateset_to_json(const GateSet& gs) {
  json gates = json::array();
  auto dump = [&](const CliffordGate& g) {
    json table = json::object();
    for (unsigned p = 0; p < g.table.size(); ++p) {
      table[support_label(p, g.arity)] = {
          {"sign", static_cast<int>(g.table[p].sign)},
          {"label", support_label(g.table[p].pauli, g.arity)}};
    }
    gates.push_back({{"name", g.name}, {"arity", g.arity}, {"table", table}});
  };
  for (const auto& g : gs.one_qubit) dump(g);
  for (const auto& g : gs.two_qubit) dump(g);
  return {{"gates", gates}};
}

GateSet gateset_from_json(const json& j) {
  GateSet gs;
  for (const auto& gj : j.at("gates")) {
    CliffordGate g;
    g.name = gj.at("name").get<std::string>();
    g.arity = gj.at("arity").get<unsigned>();
    unsigned dim = 1u << (2 * g.arity);
    g.table.resize(dim);
    for (const auto& [in_label, entry] : gj.at("table").items()) {
      unsigned in = parse_support_label(in_label, g.arity);
      g.table[in].sign = static_cast<std::int8_t>(entry.at("sign").get<int>());
      g.table[in].pauli = static_cast<std::uint8_t>(
          parse_support_label(entry.at("label").get<std::string>(), g.arity));
    }
    (g.arity == 1 ? gs.one_qubit : gs.two_qubit).push_back(std::move(g));
  }
  gs.validate();
  return gs;
}

json circuit_to_json(const Circuit& c) {
  json moments = json::array();
  for (const auto& moment : c.moments) {
    json m = json::array();
    for (const auto& app : moment) {
      m.push_back({{"gate", app.gate}, {"qubits", app.qubits}});
    }
    moments.push_back(std::move(m));
  }
  json out = {{"n_qubits", c.n_qubits}, {"moments", moments}};
  if (c.metadata) {
    out["metadata"] = {{"m_half", c.metadata->m_half},
                       {"m_prime", c.metadata->m_prime},
                       {"seed", c.metadata->seed}};
  }
  return out;
}

Circuit circuit_from_json(const json& j) {
  Circuit c;
  c.n_qubits = j.at("n_qubits").get<std::uint32_t>();
  for (const auto& mj : j.at("moments")) {
    Moment m;
    for (const auto& aj : mj) {
      m.push_back({aj.at("gate").get<std::string>(),
                   aj.at("qubits").get<std::vector<std::uint32_t>>()});
    }
    c.moments.push_back(std::move(m));
  }
  if (j.contains("metadata")) {
    const auto& meta = j.at("metadata");
    c.metadata = CircuitMetadata{meta.at("m_half").get<std::uint32_t>(),
                                 meta.at("m_prime").get<std::uint32_t>(),
                                 meta.at("seed").get<std::uint64_t>()};
  }
  return c;
}

json channel_to_json(const PauliChannel& ch) {
  json probs = json::object();
  for (unsigned p = 0; p < ch.probs.size(); ++p) {
    probs[support_label(p, ch.k)] = ch.probs[p];
  }
  return {{"k", ch.k}, {"probs", probs}};
}

PauliChannel channel_from_json(const json& j) {
  PauliChannel ch;
  ch.k = j.at("k").get<unsigned>();
  ch.probs.assign(1u << (2 * ch.k), 0.0);
  for (const auto& [label, value] : j.at("probs").items()) {
    ch.probs[parse_support_label(label, ch.k)] = value.get<double>();
  }
  return ch;
}

json noise_model_to_json(const NoiseModel& nm) {
  json out = json::array();
  for (const auto& [loc, ch] : nm.channels) {
    out.push_back({{"gate", loc.gate},
                   {"qubits", loc.qubits},
                   {"channel", channel_to_json(ch)}});
  }
  return out;
}

NoiseModel noise_model_from_json(const json& j) {
  NoiseModel nm;
  for (const auto& entry : j) {
    LocationKey loc{entry.at("gate").get<std::string>(),
                    entry.at("qubits").get<std::vector<std::uint32_t>>()};
    nm.channels.emplace(std::move(loc),
                        channel_from_json(entry.at("channel")));
  }
  return nm;
}

json counts_to_json(const CountsTable& t) {
  json counts = json::object();
  for (const auto& [bits, n] : t.counts) counts[bits] = n;
  return {{"job_id", t.job_id},
          {"circuit_id", t.circuit_id},
          {"twirl_id", t.twirl_id},
          {"prep_id", t.prep_id},
          {"measured_qubits", t.measured_qubits},
          {"counts", counts}};
}

CountsTable counts_from_json(const json& j) {
  CountsTable t;
  t.job_id = j.at("job_id").get<std::string>();
  t.circuit_id = j.at("circuit_id").get<std::uint32_t>();
  t.twirl_id = j.at("twirl_id").get<std::uint32_t>();
  t.prep_id = j.at("prep_id").get<std::uint32_t>();
  t.measured_qubits =
      j.at("measured_qubits").get<std::vector<std::uint32_t>>();
  for (const auto& [bits, n] : j.at("counts").items()) {
    if (bits.size() != t.measured_qubits.size() ||
        bits.find_first_not_of("01") != std::string::npos) {
      throw std::invalid_argument("malformed bitstring '" + bits +
                                  "' in counts for job " + t.job_id);
    }
    t.counts[bits] = n.get<std::uint64_t>();
  }
  return t;
}

json config_to_json(const RunConfig& c) {
  return {{"n_qubits", c.n_qubits},
          {"gate_set_source", c.gate_set_source},
          {"gate_set_file", c.gate_set_file},
          {"m_half", c.m_half},
          {"m_prime", c.m_prime},
          {"n_circuits", c.n_circuits},
          {"n_twirls", c.n_twirls},
          {"shots_per_circuit", c.shots_per_circuit},
          {"seed", c.seed},
          {"backend", c.backend},
          {"noise_source", c.noise_source},
          {"noise_strength", c.noise_strength},
          {"noise_file", c.noise_file},
          {"ingest_dir", c.ingest_dir},
          {"out_dir", c.out_dir}};
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("n_qubits", c.n_qubits);
  get("gate_set_source", c.gate_set_source);
  get("gate_set_file", c.gate_set_file);
  get("m_half", c.m_half);
  get("m_prime", c.m_prime);
  get("n_circuits", c.n_circuits);
  get("n_twirls", c.n_twirls);
  get("shots_per_circuit", c.shots_per_circuit);
  get("seed", c.seed);
  get("backend", c.backend);
  get("noise_source", c.noise_source);
  get("noise_strength", c.noise_strength);
  get("noise_file", c.noise_file);
  get("ingest_dir", c.ingest_dir);
  get("out_dir", c.out_dir);
  return c;
}

std::string prep_state_label(std::uint8_t basis, bool negative) {
  switch (basis) {
    case 0: return "0";
    case 1: return negative ? "-" : "+";
    case 2: return negative ? "-i" : "+i";
    case 3: return negative ? "1" : "0";
  }
  throw std::invalid_argument("bad prep basis");
}

namespace {

void prep_from_label(const std::string& label, std::uint8_t& basis,
                     std::uint8_t& negative) {
  if (label == "0") { basis = 0; negative = 0; }
  else if (label == "1") { basis = 3; negative = 1; }
  else if (label == "+") { basis = 1; negative = 0; }
  else if (label == "-") { basis = 1; negative = 1; }
  else if (label == "+i") { basis = 2; negative = 0; }
  else if (label == "-i") { basis = 2; negative = 1; }
  else throw std::invalid_argument("bad prep state label " + label);
}

json job_to_json(const ShotJob& job) {
  json states = json::array();
  for (std::size_t q = 0; q < job.prep.basis.size(); ++q) {
    states.push_back(prep_state_label(job.prep.basis[q],
                                      job.prep.negative[q] != 0));
  }
  MeasurementSpec ms = measurement_spec(job.measured_pauli);
  return {{"id", job.id},
          {"circuit_id", job.circuit_id},
          {"twirl_id", job.twirl_id},
          {"prep_id", job.prep_id},
          {"probe", job.probe.label()},
          {"prep", {{"states", states}, {"sign", job.prep.sign}}},
          {"measured_pauli", job.measured_pauli.label()},
          {"measured_qubits", ms.measured_qubits},
          {"propagation_sign", job.propagation_sign},
          {"shots", job.shots},
          {"seed", job.seed}};
}

ShotJob job_from_json(const json& j) {
  ShotJob job;
  job.id = j.at("id").get<std::string>();
  job.circuit_id = j.at("circuit_id").get<std::uint32_t>();
  job.twirl_id = j.at("twirl_id").get<std::uint32_t>();
  job.prep_id = j.at("prep_id").get<std::uint32_t>();
  job.probe = PauliString::parse(j.at("probe").get<std::string>());
  const auto& states = j.at("prep").at("states");
  job.prep.basis.resize(states.size());
  job.prep.negative.resize(states.size());
  for (std::size_t q = 0; q < states.size(); ++q) {
    prep_from_label(states[q].get<std::string>(), job.prep.basis[q],
                    job.prep.negative[q]);
  }
  job.prep.sign = j.at("prep").at("sign").get<int>();
  job.measured_pauli =
      PauliString::parse(j.at("measured_pauli").get<std::string>());
  job.propagation_sign = j.at("propagation_sign").get<int>();
  job.shots = j.at("shots").get<std::uint64_t>();
  job.seed = j.at("seed").get<std::uint64_t>();
  return job;
}

}  // namespace

json plan_to_json(const ExperimentPlan& plan) {
  json circuits = json::array();
  for (std::size_t ci = 0; ci < plan.circuits.size(); ++ci) {
    json probes = json::array();
    for (const auto& probe : plan.probes[ci]) {
      probes.push_back({{"input", probe.input.label()},
                        {"output", probe.output.label()},
                        {"sign", probe.sign}});
    }
    json twirls = json::array();
    for (const auto& tc : plan.twirls[ci]) {
      json insertions = json::array();
      for (const auto& ins : tc.insertions) {
        insertions.push_back({{"moment", ins.moment},
                              {"app", ins.app_index},
                              {"pauli_in", ins.pauli_in},
                              {"pauli_out", ins.pauli_out},
                              {"sign", static_cast<int>(ins.sign)}});
      }
      twirls.push_back(std::move(insertions));
    }
    circuits.push_back({{"circuit", circuit_to_json(plan.circuits[ci])},
                        {"probes", probes},
                        {"twirls", twirls}});
  }
  json jobs = json::array();
  for (const auto& job : plan.jobs) jobs.push_back(job_to_json(job));
  return {{"config", config_to_json(plan.config)},
          {"circuits", circuits},
          {"jobs", jobs},
          {"generation_attempts", plan.generation_attempts}};
}

ExperimentPlan plan_from_json(const json& j) {
  ExperimentPlan plan;
  plan.config = config_from_json(j.at("config"));
  plan.generation_attempts = j.value("generation_attempts", 1u);
  for (const auto& cj : j.at("circuits")) {
    Circuit c = circuit_from_json(cj.at("circuit"));
    ProbeSet probes;
    for (const auto& pj : cj.at("probes")) {
      probes.push_back(
          {PauliString::parse(pj.at("input").get<std::string>()),
           PauliString::parse(pj.at("output").get<std::string>()),
           pj.at("sign").get<int>()});
    }
    std::vector<TwirledCircuit> twirls;
    for (const auto& tj : cj.at("twirls")) {
      TwirledCircuit tc;
      tc.base = c;
      for (const auto& ij : tj) {
        tc.insertions.push_back(
            {ij.at("moment").get<std::uint32_t>(),
             ij.at("app").get<std::uint32_t>(),
             ij.at("pauli_in").get<std::uint8_t>(),
             ij.at("pauli_out").get<std::uint8_t>(),
             static_cast<std::int8_t>(ij.at("sign").get<int>())});
      }
      twirls.push_back(std::move(tc));
    }
    plan.circuits.push_back(std::move(c));
    plan.probes.push_back(std::move(probes));
    plan.twirls.push_back(std::move(twirls));
  }
  for (const auto& jj : j.at("jobs")) {
    plan.jobs.push_back(job_from_json(jj));
  }
  return plan;
}

json estimates_to_json(const EigenvalueEstimates& est) {
  json rows = json::array();
  for (std::size_t r = 0; r < est.rows.size(); ++r) {
    rows.push_back({{"circuit_id", est.labels[r].circuit_id},
                    {"probe", est.labels[r].probe},
                    {"lambda_hat", est.rows[r].lambda_hat},
                    {"shots", est.rows[r].shots},
                    {"std_error", est.rows[r].std_error},
                    {"valid", est.rows[r].valid}});
  }
  return {{"rows", rows}};
}

EigenvalueEstimates estimates_from_json(const json& j) {
  EigenvalueEstimates est;
  for (const auto& rj : j.at("rows")) {
    est.labels.push_back({rj.at("circuit_id").get<std::uint32_t>(),
                          rj.at("probe").get<std::string>()});
    est.rows.push_back({rj.at("lambda_hat").get<double>(),
                        rj.at("shots").get<std::uint64_t>(),
                        rj.at("std_error").get<double>(),
                        rj.at("valid").get<bool>()});
  }
  return est;
}

json report_to_json(const SolveReport& report) {
  json params = json::array();
  for (const auto& p : report.params) {
    json pj = {{"gate", p.loc.gate},
               {"qubits", p.loc.qubits},
               {"pauli", p.pauli_label},
               {"lambda_hat", p.lambda_hat}};
    if (p.lambda_true) pj["lambda_true"] = *p.lambda_true;
    if (p.abs_error) pj["abs_error"] = *p.abs_error;
    params.push_back(std::move(pj));
  }
  json channels = json::array();
  for (const auto& c : report.channels) {
    json cj = {{"gate", c.loc.gate},
               {"qubits", c.loc.qubits},
               {"channel", channel_to_json(c.channel)},
               {"min_prob", c.min_prob},
               {"infidelity", c.infidelity}};
    if (c.tvd_vs_truth) cj["tvd_vs_truth"] = *c.tvd_vs_truth;
    channels.push_back(std::move(cj));
  }
  json out = {{"params", params},
              {"channels", channels},
              {"residual_norm", report.residual_norm},
              {"rank", {{"rank", report.rank.rank},
                        {"n_cols", report.rank.n_cols},
                        {"uncovered_columns", report.rank.uncovered_columns}}},
              {"clamped_rows", report.clamped_rows}};
  if (report.mean_abs_error) out["mean_abs_error"] = *report.mean_abs_error;
  if (report.mean_tvd) out["mean_tvd"] = *report.mean_tvd;
  return out;
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  return json::parse(in);
}

void save_json(const std::filesystem::path& path, const json& j) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << j.dump(2) << '\n';
}

void write_report_csvs(const SolveReport& report,
                       const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream f(dir / "eigenvalues.csv");
    f << "index,gate,qubits,pauli,value,stderr\n";
    for (std::size_t i = 0; i < report.params.size(); ++i) {
      const auto& p = report.params[i];
      f << i << ',' << p.loc.gate << ',' << join_qubits(p.loc.qubits) << ','
        << p.pauli_label << ',' << p.lambda_hat << ",\n";
    }
  }
  {
    std::ofstream f(dir / "error_rates.csv");
    f << "index,gate,qubits,pauli,value,stderr\n";
    std::size_t i = 0;
    for (const auto& c : report.channels) {
      for (unsigned p = 1; p < c.channel.probs.size(); ++p, ++i) {
        f << i << ',' << c.loc.gate << ',' << join_qubits(c.loc.qubits) << ','
          << support_label(p, c.channel.k) << ',' << c.channel.probs[p]
          << ",\n";
      }
    }
  }
  if (report.mean_abs_error) {
    std::ofstream f(dir / "eigenvalue_errors.csv");
    f << "index,gate,qubits,pauli,abs_error\n";
    for (std::size_t i = 0; i < report.params.size(); ++i) {
      const auto& p = report.params[i];
      f << i << ',' << p.loc.gate << ',' << join_qubits(p.loc.qubits) << ','
        << p.pauli_label << ',' << p.abs_error.value_or(0.0) << '\n';
    }
  }
  if (report.mean_tvd) {
    std::ofstream f(dir / "tvd.csv");
    f << "gate,qubits,tvd\n";
    for (const auto& c : report.channels) {
      f << c.loc.gate << ',' << join_qubits(c.loc.qubits) << ','
        << c.tvd_vs_truth.value_or(0.0) << '\n';
    }
  }
}

}  // namespace aces::io

// Copyright 2026 The bfdcqo Authors
//
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

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bfdcqo/cd.hpp"
#include "bfdcqo/errors.hpp"
#include "bfdcqo/hubo.hpp"
#include "bfdcqo/hubo_io.hpp"
#include "bfdcqo/mps.hpp"
#include "bfdcqo/resources.hpp"
#include "bfdcqo/rng.hpp"
#include "bfdcqo/samples.hpp"
#include "bfdcqo/solvers.hpp"
#include "bfdcqo/statevector.hpp"

namespace bfdcqo {

enum class Strategy { unsigned_bias, unsigned_antibias, signed_bias, signed_antibias };

inline std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::unsigned_bias: return "unsigned_bias";
    case Strategy::unsigned_antibias: return "unsigned_antibias";
    case Strategy::signed_bias: return "signed_bias";
    case Strategy::signed_antibias: return "signed_antibias";
  }
  return "unknown";
}

inline Strategy strategy_from_name(const std::string& s) {
  if (s == "unsigned_bias") return Strategy::unsigned_bias;
  if (s == "unsigned_antibias") return Strategy::unsigned_antibias;
  if (s == "signed_bias") return Strategy::signed_bias;
  if (s == "signed_antibias") return Strategy::signed_antibias;
  throw InvalidArgument("unknown bias strategy '" + s + "'");
}

inline bool is_signed(Strategy s) {
  return s == Strategy::signed_bias || s == Strategy::signed_antibias;
}

// ---------------------------------------------------------------------------
// CVaR estimation and bias updates
// ---------------------------------------------------------------------------

/// Number of shots kept by a CVaR fraction: ceil(alpha * shots), at least 1.
/// The small guard keeps exact products such as 0.01 * 2000 from rounding up.
inline std::uint64_t cvar_count(std::uint64_t n_shots, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("CVaR alpha must lie in (0, 1]");
  const double raw = std::ceil(alpha * static_cast<double>(n_shots) - 1e-9);
  const auto k = static_cast<std::uint64_t>(std::max(1.0, raw));
  return std::min(k, n_shots);
}

namespace detail {

/// Entries ordered by (energy, bitstring); entries are unique per bitstring,
/// so this is the full tie-break.
inline std::vector<const SampleEntry*> by_energy(const SampleSet& s) {
  if (s.empty()) throw InvalidArgument("CVaR on an empty SampleSet");
  if (!s.has_energies()) throw InvalidArgument("CVaR needs energies; call assign_energies first");
  std::vector<const SampleEntry*> order;
  for (const auto& e : s.entries()) order.push_back(&e);
  std::stable_sort(order.begin(), order.end(), [](const SampleEntry* a, const SampleEntry* b) {
    return a->energy < b->energy || (a->energy == b->energy && a->bits < b->bits);
  });
  return order;
}

}  // namespace detail

/// Mean energy of the ceil(alpha * n_shots) lowest-energy shots.
///
/// Evaluated as e_top - sum_i (e_top - e_i) n_i / k, with e_top the highest
/// energy kept. Every term is non-negative, so the rounded result never
/// exceeds e_top and is exactly monotone in k while e_top is unchanged.
inline double cvar_energy(const SampleSet& s, double alpha) {
  const auto order = detail::by_energy(s);
  const std::uint64_t k = cvar_count(s.n_shots(), alpha);
  std::vector<std::pair<double, std::uint64_t>> kept;
  std::uint64_t taken = 0;
  for (const auto* e : order) {
    const std::uint64_t use = std::min(e->count, k - taken);
    kept.emplace_back(e->energy, use);
    taken += use;
    if (taken == k) break;
  }
  const double top = kept.back().first;
  double gap = 0.0;
  for (const auto& [energy, use] : kept) gap += (top - energy) * static_cast<double>(use);
  return top - gap / static_cast<double>(k);
}

/// Per-qubit <Z> (+1 for bit 0) over the same shot subset as cvar_energy.
inline std::vector<double> cvar_expectations(const SampleSet& s, double alpha) {
  const auto order = detail::by_energy(s);
  const std::uint64_t k = cvar_count(s.n_shots(), alpha);
  std::vector<double> z(s.n_qubits(), 0.0);
  std::uint64_t taken = 0;
  for (const auto* e : order) {
    const std::uint64_t use = std::min(e->count, k - taken);
    for (std::size_t q = 0; q < z.size(); ++q)
      z[q] += (e->bits[q] == '0' ? 1.0 : -1.0) * static_cast<double>(use);
    taken += use;
    if (taken == k) break;
  }
  for (auto& v : z) v /= static_cast<double>(k);
  return z;
}

/// New bias fields. Bias variants carry the minus sign, which pulls the next
/// prepared state toward the measured configuration; sign(0) = 0.
inline BiasState update_bias(const std::vector<double>& expectations, Strategy strategy,
                             double kappa = 1.0) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw InvalidArgument("update_bias: kappa must be positive");
  BiasState b;
  b.hb.reserve(expectations.size());
  const double sign = (strategy == Strategy::unsigned_bias || strategy == Strategy::signed_bias) ? -1.0 : 1.0;
  for (double z : expectations) {
    const double mag = is_signed(strategy) ? static_cast<double>((z > 0.0) - (z < 0.0)) : z;
    b.hb.push_back(kappa * sign * mag);
  }
  return b;
}

struct Metrics {
  double ar = 0.0;
  double ds = 0.0;
};

/// AR = mean energy / E0 and DS = 1 - min energy / E0.
inline Metrics metrics(const SampleSet& s, double e0) {
  if (e0 == 0.0) throw UndefinedMetric("metrics: ground energy is zero");
  return {s.mean_energy() / e0, 1.0 - s.min_energy() / e0};
}

// ---------------------------------------------------------------------------
// Driver
// ---------------------------------------------------------------------------

enum class Backend { statevector, mps };

inline std::string backend_name(Backend b) { return b == Backend::statevector ? "sv" : "mps"; }

inline Backend backend_from_name(const std::string& s) {
  if (s == "sv" || s == "statevector") return Backend::statevector;
  if (s == "mps") return Backend::mps;
  throw InvalidArgument("unknown backend '" + s + "'");
}

struct BfdcqoConfig {
  std::size_t iterations = 11;
  double alpha = 0.01;
  /// updates[k] produces the bias for iteration k + 2. Empty selects the
  /// default: unsigned bias throughout and signed bias for the last update.
  std::vector<Strategy> updates;
  /// Rescale applied on signed updates only.
  double kappa = 5.0;
  /// Empty hx selects the uniform default field of -1.
  DriveSpec drive;
  std::uint64_t shots = 2000;
  std::uint64_t seed = 0;
  Backend backend = Backend::statevector;
  MpsOptions mps;
  /// Statevector only: bias from exact <Z> of the final state instead of
  /// the CVaR subset of the samples.
  bool exact_expectations = false;
  bool record_samples = true;
  NativeSet native_set = NativeSet::cz_set;
  std::optional<double> e0;

  std::vector<Strategy> resolved_updates() const {
    if (!updates.empty()) return updates;
    std::vector<Strategy> s(iterations > 0 ? iterations - 1 : 0, Strategy::unsigned_bias);
    if (!s.empty()) s.back() = Strategy::signed_bias;
    return s;
  }

  void validate() const {
    if (iterations < 1) throw InvalidArgument("BfdcqoConfig: iterations must be >= 1");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("BfdcqoConfig: alpha must lie in (0, 1]");
    if (!(kappa > 0.0)) throw InvalidArgument("BfdcqoConfig: kappa must be positive");
    if (shots < 1) throw InvalidArgument("BfdcqoConfig: shots must be >= 1");
    if (!updates.empty() && updates.size() != iterations - 1)
      throw InvalidArgument("BfdcqoConfig: need exactly iterations - 1 update strategies");
    if (exact_expectations && backend != Backend::statevector)
      throw InvalidArgument("BfdcqoConfig: exact expectations need the statevector backend");
  }

  friend bool operator==(const BfdcqoConfig&, const BfdcqoConfig&) = default;
};

struct IterationRecord {
  std::size_t iteration = 0;
  /// Strategy and scale that produced this iteration's bias; empty for the first.
  std::string strategy;
  double kappa = 1.0;
  std::vector<double> bias;
  std::size_t rotations = 0;
  std::vector<std::size_t> locality;
  GateCounts gates;
  std::optional<double> ar;
  std::optional<double> ds;
  double best_energy = 0.0;
  std::string best_bits;
  double mean_energy = 0.0;
  double cvar_energy = 0.0;
  std::optional<double> entropy;
  std::optional<std::size_t> max_bond;
  std::optional<double> discarded_weight;
  std::optional<SampleSet> samples;

  friend bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

struct RunRecord {
  std::size_t n = 0;
  BfdcqoConfig config;
  std::vector<IterationRecord> iterations;
  double best_energy = 0.0;
  std::string best_bits;
  std::size_t best_iteration = 0;
  std::optional<double> e0;
  std::string e0_source;
  double wall_time_s = 0.0;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// Iterated DCQO with bias-field feedback. Iteration k samples with seed
/// mix_seed(cfg.seed, k).
inline RunRecord run_bfdcqo(const HuboProblem& p, const BfdcqoConfig& cfg_in) {
  const auto start = std::chrono::steady_clock::now();
  BfdcqoConfig cfg = cfg_in;
  if (cfg.drive.hx.empty()) cfg.drive.hx.assign(p.n(), -1.0);
  cfg.validate();
  cfg.drive.validate(p.n());
  const auto schedule = cfg.resolved_updates();

  RunRecord rec;
  rec.n = p.n();
  rec.config = cfg;
  if (cfg.e0) {
    rec.e0 = cfg.e0;
    rec.e0_source = "config";
  } else if (auto ref = exact_reference(p)) {
    rec.e0 = ref->e0;
    rec.e0_source = ref->method;
  }

  const PauliSum o1 = build_o1_symbolic(p, cfg.drive, BiasState::zeros(p.n()));
  BiasState bias = BiasState::zeros(p.n());
  bool have_best = false;
  for (std::size_t it = 1; it <= cfg.iterations; ++it) {
    IterationRecord ir;
    ir.iteration = it;
    if (it > 1) {
      const Strategy s = schedule[it - 2];
      ir.strategy = strategy_name(s);
      ir.kappa = is_signed(s) ? cfg.kappa : 1.0;
    }
    ir.bias = bias.hb;

    const Circuit circuit = trotterize_cd(o1, p, cfg.drive, bias);
    ir.rotations = circuit.rotations.size();
    ir.locality = circuit.locality_counts();
    ir.gates = count_circuit(circuit, cfg.native_set);

    const std::uint64_t sample_seed = mix_seed(cfg.seed, it);
    SampleSet samples;
    std::vector<double> exact_z;
    if (cfg.backend == Backend::statevector) {
      const StateVector sv = run_circuit(circuit);
      samples = sample(sv, cfg.shots, sample_seed);
      if (cfg.exact_expectations) exact_z = exact_expectations(sv);
    } else {
      if (!mps_supports(circuit))
        throw InvalidArgument("run_bfdcqo: MPS backend needs every term within three neighbouring sites");
      const MpsState m = run_circuit_mps(circuit, cfg.mps);
      samples = mps_sample(m, cfg.shots, sample_seed);
      ir.entropy = avg_entropy(m);
      ir.max_bond = m.max_bond_dim();
      ir.discarded_weight = m.max_discarded_weight();
    }
    samples.assign_energies(p);

    const SampleEntry& best = samples.best();
    ir.best_energy = best.energy;
    ir.best_bits = best.bits;
    ir.mean_energy = samples.mean_energy();
    ir.cvar_energy = cvar_energy(samples, cfg.alpha);
    if (rec.e0 && *rec.e0 != 0.0) {
      const Metrics m = metrics(samples, *rec.e0);
      ir.ar = m.ar;
      ir.ds = m.ds;
    }
    if (!have_best || best.energy < rec.best_energy) {
      rec.best_energy = best.energy;
      rec.best_bits = best.bits;
      rec.best_iteration = it;
      have_best = true;
    }

    if (it < cfg.iterations) {
      const Strategy s = schedule[it - 1];
      const auto z = cfg.exact_expectations ? exact_z : cvar_expectations(samples, cfg.alpha);
      bias = update_bias(z, s, is_signed(s) ? cfg.kappa : 1.0);
    }
    if (cfg.record_samples) ir.samples = std::move(samples);
    rec.iterations.push_back(std::move(ir));
  }
  rec.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

// ---------------------------------------------------------------------------
// Serialisation
// ---------------------------------------------------------------------------

inline constexpr const char* kRunSchema = "bfdcqo-run/1";
inline constexpr const char* kBaselineSchema = "baseline-run/1";

namespace detail {

template <typename T>
json optional_to_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from_json(const json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  return doc.at(key).get<T>();
}

}  // namespace detail

inline json circuit_to_json(const Circuit& c) {
  json rot = json::array();
  for (const auto& r : c.rotations) {
    json paulis = json::array();
    for (const auto& [q, op] : r.pauli.ops()) paulis.push_back({q, std::string(1, pauli_char(op))});
    rot.push_back({{"paulis", std::move(paulis)}, {"theta", r.theta}});
  }
  return {{"n", c.n}, {"prep_angles", c.prep_angles}, {"rotations", std::move(rot)}};
}

inline Circuit circuit_from_json(const json& doc) {
  try {
    Circuit c;
    c.n = doc.at("n").get<std::size_t>();
    c.prep_angles = doc.at("prep_angles").get<std::vector<double>>();
    for (const auto& r : doc.at("rotations")) {
      std::vector<PauliString::Entry> ops;
      for (const auto& e : r.at("paulis")) {
        const auto q = e.at(0).get<Index>();
        const auto s = e.at(1).get<std::string>();
        if (s.size() != 1 || q >= c.n) throw FormatError("circuit document: bad Pauli entry");
        ops.emplace_back(q, pauli_from_char(s[0]));
      }
      c.rotations.push_back({PauliString(c.n, std::move(ops)), r.at("theta").get<double>()});
    }
    return c;
  } catch (const json::exception& e) {
    throw FormatError(std::string("circuit document: ") + e.what());
  }
}

inline json samples_to_json(const SampleSet& s) {
  json entries = json::array();
  for (const auto& e : s.entries()) {
    json row = {e.bits, e.count};
    if (!std::isnan(e.energy)) row.push_back(e.energy);
    entries.push_back(std::move(row));
  }
  return {{"n", s.n_qubits()}, {"shots", s.n_shots()}, {"entries", std::move(entries)}};
}

inline SampleSet samples_from_json(const json& doc) {
  std::vector<SampleEntry> entries;
  for (const auto& row : doc.at("entries")) {
    SampleEntry e{row.at(0).get<std::string>(), row.at(1).get<std::uint64_t>()};
    if (row.size() > 2) e.energy = row.at(2).get<double>();
    entries.push_back(std::move(e));
  }
  SampleSet s = SampleSet::from_entries(doc.at("n").get<std::size_t>(), entries);
  if (s.n_shots() != doc.at("shots").get<std::uint64_t>())
    throw FormatError("sample document: shot total does not match entries");
  return s;
}

inline json gates_to_json(const GateCounts& g) {
  return {{"by_name", g.by_name}, {"entangling", g.entangling}, {"one_qubit", g.one_qubit},
          {"depth", g.depth}};
}

inline GateCounts gates_from_json(const json& doc) {
  GateCounts g;
  g.by_name = doc.at("by_name").get<std::map<std::string, std::size_t>>();
  g.entangling = doc.at("entangling").get<std::size_t>();
  g.one_qubit = doc.at("one_qubit").get<std::size_t>();
  g.depth = doc.at("depth").get<std::size_t>();
  return g;
}

inline json config_to_json(const BfdcqoConfig& c) {
  json updates = json::array();
  for (auto s : c.updates) updates.push_back(strategy_name(s));
  return {{"iterations", c.iterations},
          {"alpha", c.alpha},
          {"updates", std::move(updates)},
          {"kappa", c.kappa},
          {"drive",
           {{"total_time", c.drive.total_time},
            {"n_trot", c.drive.n_trot},
            {"theta_cutoff", c.drive.theta_cutoff},
            {"hx", c.drive.hx},
            {"evaluation_points",
             c.drive.evaluation_points == EvaluationPoints::step_end ? "step_end" : "step_midpoint"},
            {"prep_convention",
             c.drive.prep_convention == PrepConvention::plus_bias ? "plus_bias" : "minus_bias"}}},
          {"shots", c.shots},
          {"seed", c.seed},
          {"backend", backend_name(c.backend)},
          {"mps", {{"max_bond", c.mps.max_bond}, {"trunc_cutoff", c.mps.trunc_cutoff}}},
          {"exact_expectations", c.exact_expectations},
          {"record_samples", c.record_samples},
          {"native_set", native_set_name(c.native_set)},
          {"e0", detail::optional_to_json(c.e0)}};
}

/// Reads a config; every key is optional and falls back to the defaults.
inline BfdcqoConfig config_from_json(const json& doc) {
  try {
    BfdcqoConfig c;
    c.iterations = doc.value("iterations", c.iterations);
    c.alpha = doc.value("alpha", c.alpha);
    if (doc.contains("updates"))
      for (const auto& s : doc.at("updates")) c.updates.push_back(strategy_from_name(s.get<std::string>()));
    c.kappa = doc.value("kappa", c.kappa);
    if (doc.contains("drive")) {
      const auto& d = doc.at("drive");
      c.drive.total_time = d.value("total_time", c.drive.total_time);
      c.drive.n_trot = d.value("n_trot", c.drive.n_trot);
      c.drive.theta_cutoff = d.value("theta_cutoff", c.drive.theta_cutoff);
      c.drive.hx = d.value("hx", c.drive.hx);
      const auto ep = d.value("evaluation_points", std::string("step_end"));
      if (ep != "step_end" && ep != "step_midpoint") throw InvalidArgument("unknown evaluation_points " + ep);
      c.drive.evaluation_points = ep == "step_end" ? EvaluationPoints::step_end : EvaluationPoints::step_midpoint;
      const auto pc = d.value("prep_convention", std::string("plus_bias"));
      if (pc != "plus_bias" && pc != "minus_bias") throw InvalidArgument("unknown prep_convention " + pc);
      c.drive.prep_convention = pc == "plus_bias" ? PrepConvention::plus_bias : PrepConvention::minus_bias;
    }
    c.shots = doc.value("shots", c.shots);
    c.seed = doc.value("seed", c.seed);
    c.backend = backend_from_name(doc.value("backend", backend_name(c.backend)));
    if (doc.contains("mps")) {
      c.mps.max_bond = doc.at("mps").value("max_bond", c.mps.max_bond);
      c.mps.trunc_cutoff = doc.at("mps").value("trunc_cutoff", c.mps.trunc_cutoff);
    }
    c.exact_expectations = doc.value("exact_expectations", c.exact_expectations);
    c.record_samples = doc.value("record_samples", c.record_samples);
    const auto ns = doc.value("native_set", std::string("cz"));
    if (ns != "cz" && ns != "ms") throw InvalidArgument("unknown native_set " + ns);
    c.native_set = ns == "cz" ? NativeSet::cz_set : NativeSet::ms_set;
    c.e0 = detail::optional_from_json<double>(doc, "e0");
    return c;
  } catch (const json::exception& e) {
    throw FormatError(std::string("config document: ") + e.what());
  }
}

inline json run_to_json(const RunRecord& r) {
  json its = json::array();
  for (const auto& it : r.iterations) {
    json j = {{"iteration", it.iteration},
              {"strategy", it.strategy},
              {"kappa", it.kappa},
              {"bias", it.bias},
              {"rotations", it.rotations},
              {"locality", it.locality},
              {"gates", gates_to_json(it.gates)},
              {"ar", detail::optional_to_json(it.ar)},
              {"ds", detail::optional_to_json(it.ds)},
              {"best_energy", it.best_energy},
              {"best_bits", it.best_bits},
              {"mean_energy", it.mean_energy},
              {"cvar_energy", it.cvar_energy},
              {"entropy", detail::optional_to_json(it.entropy)},
              {"max_bond", detail::optional_to_json(it.max_bond)},
              {"discarded_weight", detail::optional_to_json(it.discarded_weight)}};
    j["samples"] = it.samples ? samples_to_json(*it.samples) : json(nullptr);
    its.push_back(std::move(j));
  }
  return {{"schema", kRunSchema},
          {"n", r.n},
          {"config", config_to_json(r.config)},
          {"iterations", std::move(its)},
          {"best_energy", r.best_energy},
          {"best_bits", r.best_bits},
          {"best_iteration", r.best_iteration},
          {"e0", detail::optional_to_json(r.e0)},
          {"e0_source", r.e0_source},
          {"wall_time_s", r.wall_time_s}};
}

inline RunRecord run_from_json(const json& doc) {
  if (doc.value("schema", std::string()) != kRunSchema)
    throw FormatError("run document: expected schema " + std::string(kRunSchema));
  try {
    RunRecord r;
    r.n = doc.at("n").get<std::size_t>();
    r.config = config_from_json(doc.at("config"));
    for (const auto& j : doc.at("iterations")) {
      IterationRecord it;
      it.iteration = j.at("iteration").get<std::size_t>();
      it.strategy = j.at("strategy").get<std::string>();
      it.kappa = j.at("kappa").get<double>();
      it.bias = j.at("bias").get<std::vector<double>>();
      it.rotations = j.at("rotations").get<std::size_t>();
      it.locality = j.at("locality").get<std::vector<std::size_t>>();
      it.gates = gates_from_json(j.at("gates"));
      it.ar = detail::optional_from_json<double>(j, "ar");
      it.ds = detail::optional_from_json<double>(j, "ds");
      it.best_energy = j.at("best_energy").get<double>();
      it.best_bits = j.at("best_bits").get<std::string>();
      it.mean_energy = j.at("mean_energy").get<double>();
      it.cvar_energy = j.at("cvar_energy").get<double>();
      it.entropy = detail::optional_from_json<double>(j, "entropy");
      it.max_bond = detail::optional_from_json<std::size_t>(j, "max_bond");
      it.discarded_weight = detail::optional_from_json<double>(j, "discarded_weight");
      if (j.contains("samples") && !j.at("samples").is_null()) it.samples = samples_from_json(j.at("samples"));
      r.iterations.push_back(std::move(it));
    }
    r.best_energy = doc.at("best_energy").get<double>();
    r.best_bits = doc.at("best_bits").get<std::string>();
    r.best_iteration = doc.at("best_iteration").get<std::size_t>();
    r.e0 = detail::optional_from_json<double>(doc, "e0");
    r.e0_source = doc.at("e0_source").get<std::string>();
    r.wall_time_s = doc.at("wall_time_s").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw FormatError(std::string("run document: ") + e.what());
  }
}

/// Result of a classical baseline in the run-record family.
struct BaselineRecord {
  std::string method;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  json params = json::object();
  double best_energy = 0.0;
  std::string best_bits;
  std::optional<double> e0;
  double wall_time_s = 0.0;
};

inline json baseline_to_json(const BaselineRecord& b) {
  return {{"schema", kBaselineSchema}, {"method", b.method},         {"n", b.n},
          {"seed", b.seed},            {"params", b.params},         {"best_energy", b.best_energy},
          {"best_bits", b.best_bits},  {"e0", detail::optional_to_json(b.e0)},
          {"wall_time_s", b.wall_time_s}};
}

inline BaselineRecord baseline_from_json(const json& doc) {
  if (doc.value("schema", std::string()) != kBaselineSchema)
    throw FormatError("baseline document: expected schema " + std::string(kBaselineSchema));
  try {
    BaselineRecord b;
    b.method = doc.at("method").get<std::string>();
    b.n = doc.at("n").get<std::size_t>();
    b.seed = doc.at("seed").get<std::uint64_t>();
    b.params = doc.at("params");
    b.best_energy = doc.at("best_energy").get<double>();
    b.best_bits = doc.at("best_bits").get<std::string>();
    b.e0 = detail::optional_from_json<double>(doc, "e0");
    b.wall_time_s = doc.at("wall_time_s").get<double>();
    return b;
  } catch (const json::exception& e) {
    throw FormatError(std::string("baseline document: ") + e.what());
  }
}

}  // namespace bfdcqo

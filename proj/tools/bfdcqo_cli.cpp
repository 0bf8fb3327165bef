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

// Command-line front end: problem generation, solver runs, reports and a
// built-in self check.

#include <bfdcqo/all.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace fs = std::filesystem;
using namespace bfdcqo;

namespace {

const std::vector<std::string> kMethods = {"bfdcqo", "sa", "ls", "tabu", "exact", "brute"};
const std::vector<std::string> kKinds = {"nn_spin_glass", "max3sat_nn", "max3sat_dense"};

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_json(const fs::path& path, const json& doc) { write_text(path, doc.dump(2) + "\n"); }

// ---------------------------------------------------------------------------
// Experiment configuration
// ---------------------------------------------------------------------------

/// One JSON document describing a whole experiment. Command-line flags are
/// applied on top of it as key overrides.
struct ExperimentConfig {
  json problem = json::object();
  std::string method = "bfdcqo";
  json params = json::object();
  std::vector<std::uint64_t> seeds{0};
  std::string out = "runs";

  json to_json() const {
    return {{"problem", problem}, {"method", method}, {"params", params}, {"seeds", seeds}, {"out", out}};
  }

  static ExperimentConfig from_json(const json& doc) {
    ExperimentConfig c;
    for (const auto& [key, _] : doc.items())
      if (key != "problem" && key != "method" && key != "params" && key != "seeds" && key != "seed" &&
          key != "out")
        throw InvalidArgument("experiment config: unknown key '" + key + "'");
    c.problem = doc.value("problem", json::object());
    c.method = doc.value("method", c.method);
    c.params = doc.value("params", json::object());
    if (doc.contains("seeds")) c.seeds = doc.at("seeds").get<std::vector<std::uint64_t>>();
    if (doc.contains("seed")) c.seeds = {doc.at("seed").get<std::uint64_t>()};
    c.out = doc.value("out", c.out);
    return c;
  }

  void validate() const {
    const bool has_file = problem.contains("file");
    const bool has_kind = problem.contains("kind");
    if (has_file == has_kind)
      throw InvalidArgument("experiment config: give exactly one of problem.file and problem.kind");
    if (has_kind && std::find(kKinds.begin(), kKinds.end(), problem.at("kind").get<std::string>()) == kKinds.end())
      throw InvalidArgument("experiment config: unknown problem kind " + problem.at("kind").dump());
    if (std::find(kMethods.begin(), kMethods.end(), method) == kMethods.end())
      throw InvalidArgument("experiment config: unknown method " + method);
    if (seeds.empty()) throw InvalidArgument("experiment config: seeds must not be empty");
    std::set<std::string> allowed;
    if (method == "bfdcqo") {
      for (const auto& [key, _] : config_to_json(BfdcqoConfig{}).items()) allowed.insert(key);
    } else if (method == "sa") {
      allowed = {"reads", "sweeps", "t_initial", "t_final", "order"};
    } else if (method == "ls") {
      allowed = {"reads", "sweeps"};
    } else if (method == "tabu") {
      allowed = {"reads", "tenure", "max_stagnation"};
    }
    for (const auto& [key, _] : params.items())
      if (!allowed.count(key))
        throw InvalidArgument("experiment config: parameter '" + key + "' does not apply to method " + method);
  }
};

struct GeneratedProblem {
  HuboProblem hubo;
  std::optional<CnfInstance> cnf;
};

GeneratedProblem load_problem(const json& spec) {
  if (spec.contains("file")) {
    const fs::path path = spec.at("file").get<std::string>();
    if (path.extension() == ".wcnf" || path.extension() == ".cnf") {
      std::ifstream in(path);
      if (!in) throw std::runtime_error("cannot open " + path.string());
      auto cnf = read_wcnf(in);
      return {cnf_to_hubo(cnf), cnf};
    }
    return {problem_from_json(read_json(path)), std::nullopt};
  }
  const auto kind = spec.at("kind").get<std::string>();
  const auto n = spec.at("n").get<std::size_t>();
  const auto seed = spec.value("seed", std::uint64_t{0});
  const bool weighted = spec.value("weighted", true);
  if (kind == "nn_spin_glass") return {gen_nn_spin_glass(n, seed), std::nullopt};
  const CnfInstance cnf = kind == "max3sat_nn" ? gen_max3sat_nn(n, weighted, seed)
                                               : gen_max3sat(n, spec.value("density", 4.3), weighted, seed);
  return {cnf_to_hubo(cnf), cnf};
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

std::string opt(const std::optional<double>& v) {
  if (!v) return "";
  std::ostringstream os;
  os.precision(12);
  os << *v;
  return os.str();
}

std::string metrics_csv(const RunRecord& r) {
  std::ostringstream os;
  os.precision(12);
  os << "iteration,strategy,kappa,ar,ds,best_energy,mean_energy,cvar_energy,rotations\n";
  for (const auto& it : r.iterations)
    os << it.iteration << ',' << it.strategy << ',' << it.kappa << ',' << opt(it.ar) << ',' << opt(it.ds) << ','
       << it.best_energy << ',' << it.mean_energy << ',' << it.cvar_energy << ',' << it.rotations << '\n';
  return os.str();
}

/// Histogram over bins shared by every iteration so curves are comparable.
std::string histogram_csv(const RunRecord& r, std::size_t bins) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& it : r.iterations)
    if (it.samples)
      for (const auto& e : it.samples->entries()) {
        lo = std::min(lo, e.energy);
        hi = std::max(hi, e.energy);
      }
  std::ostringstream os;
  os.precision(12);
  os << "iteration,bin,energy_lo,energy_hi,count\n";
  if (lo > hi) return os.str();
  const double width = hi > lo ? (hi - lo) / static_cast<double>(bins) : 1.0;
  for (const auto& it : r.iterations) {
    if (!it.samples) continue;
    std::vector<std::uint64_t> counts(bins, 0);
    for (const auto& e : it.samples->entries()) {
      auto b = static_cast<std::size_t>((e.energy - lo) / width);
      counts[std::min(b, bins - 1)] += e.count;
    }
    for (std::size_t b = 0; b < bins; ++b)
      os << it.iteration << ',' << b << ',' << lo + width * static_cast<double>(b) << ','
         << lo + width * static_cast<double>(b + 1) << ',' << counts[b] << '\n';
  }
  return os.str();
}

std::optional<std::string> entropy_csv(const RunRecord& r) {
  if (r.iterations.empty() || !r.iterations.front().entropy) return std::nullopt;
  std::ostringstream os;
  os.precision(12);
  os << "iteration,avg_entropy,max_bond,discarded_weight\n";
  for (const auto& it : r.iterations)
    os << it.iteration << ',' << opt(it.entropy) << ',' << it.max_bond.value_or(0) << ','
       << opt(it.discarded_weight) << '\n';
  return os.str();
}

std::string gates_csv(const RunRecord& r) {
  std::ostringstream os;
  write_counts_csv_header(os, r.config.native_set);
  for (const auto& it : r.iterations) write_counts_csv_row(os, it.iteration, it.gates, r.config.native_set);
  return os.str();
}

void write_run_reports(const fs::path& dir, const RunRecord& r, std::size_t bins) {
  write_text(dir / "metrics.csv", metrics_csv(r));
  write_text(dir / "histogram.csv", histogram_csv(r, bins));
  write_text(dir / "gates.csv", gates_csv(r));
  if (auto e = entropy_csv(r)) write_text(dir / "entropy.csv", *e);
}

std::string iteration_table(const RunRecord& r) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%4s  %-18s %10s %10s %14s %14s %14s %9s\n", "iter", "strategy", "AR", "DS",
                "best E", "mean E", "CVaR E", "entropy");
  os << line;
  for (const auto& it : r.iterations) {
    std::snprintf(line, sizeof line, "%4zu  %-18s %10s %10s %14.6f %14.6f %14.6f %9s\n", it.iteration,
                  it.strategy.empty() ? "-" : it.strategy.c_str(), it.ar ? opt(it.ar).substr(0, 10).c_str() : "-",
                  it.ds ? opt(it.ds).substr(0, 10).c_str() : "-", it.best_energy, it.mean_energy, it.cvar_energy,
                  it.entropy ? opt(it.entropy).substr(0, 9).c_str() : "-");
    os << line;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Runs
// ---------------------------------------------------------------------------

/// Executes one (method, seed) pair, writes its directory and returns the
/// text destined for stdout.
std::string run_one(const ExperimentConfig& exp, const GeneratedProblem& prob, std::uint64_t seed,
                     std::size_t bins) {
  const fs::path dir = fs::path(exp.out) / (exp.method + "-seed" + std::to_string(seed));
  ExperimentConfig snapshot = exp;
  snapshot.seeds = {seed};
  write_json(dir / "config.json", snapshot.to_json());
  const HuboProblem& p = prob.hubo;
  std::ostringstream out;

  if (exp.method == "bfdcqo") {
    BfdcqoConfig cfg = config_from_json(exp.params);
    cfg.seed = seed;
    const RunRecord r = run_bfdcqo(p, cfg);
    write_json(dir / "run.json", run_to_json(r));
    write_run_reports(dir, r, bins);
    out << "bfdcqo n=" << p.n() << " seed=" << seed << " best=" << opt(r.best_energy)
        << " e0=" << (r.e0 ? opt(r.e0) : "unknown") << " (" << dir.string() << ")\n"
        << iteration_table(r);
    return out.str();
  }

  BaselineRecord b;
  b.method = exp.method;
  b.n = p.n();
  b.seed = seed;
  b.params = exp.params;
  const auto start = std::chrono::steady_clock::now();
  if (exp.method == "exact" || exp.method == "brute") {
    if (exp.method == "brute") {
      const auto r = brute_force(p);
      b.best_energy = r.e0;
      b.best_bits = r.argmins.front().to_bits();
    } else {
      const auto r = exact_dp(p, dp_range(p));
      b.best_energy = r.energy;
      b.best_bits = r.assignment.to_bits();
    }
    b.e0 = b.best_energy;
  } else {
    SolverResult r;
    if (exp.method == "sa") {
      AnnealParams a;
      a.reads = exp.params.value("reads", a.reads);
      a.sweeps = exp.params.value("sweeps", a.sweeps);
      a.t_initial = exp.params.value("t_initial", a.t_initial);
      a.t_final = exp.params.value("t_final", a.t_final);
      const auto order = exp.params.value("order", std::string("sequential"));
      if (order != "sequential" && order != "random") throw InvalidArgument("sa: unknown order " + order);
      a.order = order == "sequential" ? SiteOrder::sequential : SiteOrder::random;
      r = simulated_annealing(p, a, seed);
    } else if (exp.method == "ls") {
      r = local_search(p, exp.params.value("reads", std::size_t{100}), exp.params.value("sweeps", std::size_t{1000}),
                       seed);
    } else {
      TabuParams t;
      t.reads = exp.params.value("reads", t.reads);
      t.tenure = exp.params.value("tenure", t.tenure);
      t.max_stagnation = exp.params.value("max_stagnation", t.max_stagnation);
      r = tabu_search(p, t, seed);
    }
    b.best_energy = r.energy;
    b.best_bits = r.assignment.to_bits();
    if (auto ref = exact_reference(p)) b.e0 = ref->e0;
  }
  b.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_json(dir / "run.json", baseline_to_json(b));
  out << b.method << " n=" << b.n << " seed=" << seed << " best=" << opt(b.best_energy)
      << " e0=" << (b.e0 ? opt(b.e0) : "unknown") << " time=" << opt(b.wall_time_s) << "s (" << dir.string()
      << ")\n";
  return out.str();
}

int cmd_run(const ExperimentConfig& exp, std::size_t bins) {
  exp.validate();
  const auto prob = load_problem(exp.problem);
  if (exp.method == "bfdcqo") {
    auto cfg = config_from_json(exp.params);
    if (cfg.drive.hx.empty()) cfg.drive.hx.assign(prob.hubo.n(), -1.0);
    cfg.drive.validate(prob.hubo.n());
    cfg.validate();
  }
  std::vector<std::string> text(exp.seeds.size());
  // Runs are independent and each writes only into its own directory.
  parallel_for(exp.seeds.size(), [&](std::size_t k) { text[k] = run_one(exp, prob, exp.seeds[k], bins); });
  for (const auto& t : text) std::cout << t;
  return 0;
}

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

int cmd_report(const std::vector<std::string>& files, const fs::path& out, std::size_t bins) {
  std::ostringstream cmp;
  cmp.precision(12);
  cmp << "method,file,n,seed,best_energy,e0,final_ar,final_ds,wall_time_s\n";
  for (const auto& f : files) {
    const json doc = read_json(f);
    const auto schema = doc.value("schema", std::string());
    const std::string stem = fs::path(f).parent_path().filename().string();
    const fs::path dir = out / (stem.empty() ? fs::path(f).stem().string() : stem);
    if (schema == kRunSchema) {
      const RunRecord r = run_from_json(doc);
      write_run_reports(dir, r, bins);
      const auto& last = r.iterations.back();
      cmp << "bfdcqo," << f << ',' << r.n << ',' << r.config.seed << ',' << r.best_energy << ',' << opt(r.e0)
          << ',' << opt(last.ar) << ',' << opt(last.ds) << ',' << r.wall_time_s << '\n';
    } else if (schema == kBaselineSchema) {
      const BaselineRecord b = baseline_from_json(doc);
      cmp << b.method << ',' << f << ',' << b.n << ',' << b.seed << ',' << b.best_energy << ',' << opt(b.e0)
          << ",,," << b.wall_time_s << '\n';
    } else {
      throw FormatError(f + ": unrecognised schema '" + schema + "'");
    }
    std::cout << "report " << f << " -> " << dir.string() << "\n";
  }
  if (files.size() > 1) {
    write_text(out / "comparison.csv", cmp.str());
    std::cout << "comparison -> " << (out / "comparison.csv").string() << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Self test
// ---------------------------------------------------------------------------

/// Dense unitary of a rotation built column by column from the simulator.
Eigen::MatrixXcd simulated_unitary(const PauliString& ps, double theta) {
  const std::size_t dim = std::size_t{1} << ps.n();
  Eigen::MatrixXcd u(dim, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    std::vector<Complex> a(dim, 0.0);
    a[c] = 1.0;
    auto s = StateVector::from_amplitudes(std::move(a));
    s.apply_rotation(ps, theta);
    for (std::size_t r = 0; r < dim; ++r) u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = s.amplitudes()[r];
  }
  return u;
}

int cmd_selftest() {
  int failures = 0;
  auto report = [&](const char* name, bool ok, double value) {
    std::printf("%s %-40s %.3g\n", ok ? "PASS" : "FAIL", name, value);
    if (!ok) ++failures;
  };

  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = gen_nn_spin_glass(4 + seed % 10, seed);
    worst = std::max(worst, std::abs(exact_dp(p, 3).energy - brute_force(p).e0));
  }
  report("exact_dp vs brute_force", worst == 0.0, worst);

  worst = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto c = gen_max3sat(10, 4.3, true, seed);
    const auto p = cnf_to_hubo(c);
    for (std::uint64_t code = 0; code < 1024; code += 37) {
      std::string bits;
      for (int q = 9; q >= 0; --q) bits.push_back((code >> q) & 1 ? '1' : '0');
      const auto a = assignment_from_bits(bits);
      worst = std::max(worst, std::abs(energy(p, a) + satisfied_weight(c, a)));
    }
  }
  report("SAT energy = -satisfied weight", worst <= 1e-12, worst);

  worst = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto p = gen_nn_spin_glass(6, seed);
    auto d = DriveSpec::uniform(6, -1.0 + 0.1 * static_cast<double>(seed));
    const BiasState b{std::vector<double>(6, 0.3)};
    const auto o1 = build_o1_symbolic(p, d, b);
    worst = std::max(worst, std::abs(gamma1(p, d) - o1.norm_squared()) / o1.norm_squared());
    const double g2 = commutator(adiabatic_hamiltonian(p, d, b, 0.4), o1).norm_squared();
    worst = std::max(worst, std::abs(gamma2(p, d, b, 0.4) - g2) / g2);
  }
  report("gamma closed forms vs commutators", worst <= 1e-9, worst);

  const auto circuit = build_cd_circuit(gen_nn_spin_glass(10, 3), DriveSpec::uniform(10), BiasState::zeros(10));
  const StateVector sv_state = run_circuit(circuit);
  const StateVector mps_state = run_circuit_mps(circuit, MpsOptions{0, 1e-12}).to_statevector();
  const auto sv = sv_state.amplitudes();
  const auto mps = mps_state.amplitudes();
  Complex overlap = 0.0;
  for (std::size_t i = 0; i < sv.size(); ++i) overlap += std::conj(sv[i]) * mps[i];
  report("MPS vs statevector infidelity", 1.0 - std::norm(overlap) <= 1e-8, 1.0 - std::norm(overlap));

  worst = 0.0;
  for (auto set : {NativeSet::cz_set, NativeSet::ms_set})
    for (const char* label : {"X", "Y", "Z", "XY", "ZZ", "YZX", "ZIZ", "XXX"}) {
      const auto ps = PauliString::parse(label);
      worst = std::max(worst, phase_distance(circuit_unitary(decompose_rotation(ps, 0.7, set), ps.n()),
                                             simulated_unitary(ps, 0.7)));
    }
  report("native decomposition unitaries", worst <= 1e-10, worst);

  std::printf("%d failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bias-field digitized counterdiabatic optimisation toolkit"};
  app.require_subcommand(1);

  std::string config_path, out, kind, method, backend, strategy, problem_file;
  std::uint64_t seed = 0, problem_seed = 0;
  std::size_t n = 0, shots = 0, iterations = 0, bins = 40;
  double density = 4.3, alpha = 0.0, cutoff = 0.0, kappa = 0.0;
  bool unweighted = false;

  auto* gen = app.add_subcommand("generate", "Write a problem instance");
  gen->add_option("--config", config_path, "Experiment config (problem section is used)");
  gen->add_option("--kind", kind, "nn_spin_glass | max3sat_nn | max3sat_dense");
  gen->add_option("--n", n, "Number of spins");
  gen->add_option("--density", density, "Clause density for max3sat_dense");
  gen->add_option("--seed", problem_seed, "Generator seed");
  gen->add_flag("--unweighted", unweighted, "Unit clause weights");
  gen->add_option("--out", out, "Output JSON path")->required();

  auto* run = app.add_subcommand("run", "Solve a problem with one method over one or more seeds");
  run->add_option("--config", config_path, "Experiment config JSON");
  run->add_option("--problem", problem_file, "Problem file (.json or .wcnf)");
  run->add_option("--kind", kind, "Generate the problem instead");
  run->add_option("--n", n, "Number of spins for --kind");
  run->add_option("--density", density, "Clause density for max3sat_dense");
  run->add_option("--method", method, "bfdcqo | sa | ls | tabu | exact | brute");
  run->add_option("--seed", seed, "Run seed (replaces the config's seed list)");
  run->add_option("--out", out, "Output directory");
  run->add_option("--backend", backend, "sv | mps");
  run->add_option("--shots", shots, "Shots per iteration");
  run->add_option("--alpha", alpha, "CVaR fraction");
  run->add_option("--cutoff", cutoff, "Rotation angle cutoff");
  run->add_option("--iterations", iterations, "Number of iterations");
  run->add_option("--strategy", strategy, "Comma-separated bias update strategies");
  run->add_option("--kappa", kappa, "Signed update scale");
  run->add_option("--bins", bins, "Histogram bins");

  std::vector<std::string> files;
  std::string report_out = "report";
  auto* rep = app.add_subcommand("report", "Emit CSV reports from run files");
  rep->add_option("files", files, "run.json files")->required();
  rep->add_option("--out", report_out, "Output directory");
  rep->add_option("--bins", bins, "Histogram bins");

  auto* self = app.add_subcommand("selftest", "Run the built-in consistency checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (self->parsed()) return cmd_selftest();
    if (rep->parsed()) return cmd_report(files, report_out, std::max<std::size_t>(bins, 1));

    ExperimentConfig exp;
    if (!config_path.empty()) exp = ExperimentConfig::from_json(read_json(config_path));
    if (!kind.empty()) exp.problem = {{"kind", kind}, {"n", n}, {"density", density}};
    if (!problem_file.empty()) exp.problem = {{"file", problem_file}};

    if (gen->parsed()) {
      if (gen->count("--seed")) exp.problem["seed"] = problem_seed;
      if (unweighted) exp.problem["weighted"] = false;
      if (!exp.problem.contains("kind")) throw InvalidArgument("generate: need --kind or a config with problem.kind");
      const auto prob = load_problem(exp.problem);
      write_json(out, problem_to_json(prob.hubo));
      std::cout << "wrote " << out << " (" << prob.hubo.n() << " spins)\n";
      if (prob.cnf) {
        const fs::path wcnf = fs::path(out).replace_extension(".wcnf");
        write_text(wcnf, wcnf_to_string(*prob.cnf));
        std::cout << "wrote " << wcnf.string() << " (" << prob.cnf->clauses().size() << " clauses)\n";
      }
      if (auto ref = exact_reference(prob.hubo)) std::printf("E0 = %.12g (%s)\n", ref->e0, ref->method.c_str());
      return 0;
    }

    if (!method.empty()) exp.method = method;
    if (!out.empty()) exp.out = out;
    if (run->count("--seed")) exp.seeds = {seed};
    auto set_param = [&](const char* flag, const char* key, const json& value) {
      if (!run->count(flag)) return;
      if (exp.method != "bfdcqo") throw InvalidArgument(std::string(flag) + " only applies to method bfdcqo");
      exp.params[key] = value;
    };
    set_param("--backend", "backend", backend);
    set_param("--shots", "shots", shots);
    set_param("--alpha", "alpha", alpha);
    set_param("--iterations", "iterations", iterations);
    set_param("--kappa", "kappa", kappa);
    if (run->count("--cutoff")) {
      if (exp.method != "bfdcqo") throw InvalidArgument("--cutoff only applies to method bfdcqo");
      exp.params["drive"]["theta_cutoff"] = cutoff;
    }
    if (run->count("--strategy")) {
      json list = json::array();
      std::stringstream ss(strategy);
      for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) list.push_back(item);
      set_param("--strategy", "updates", list);
    }
    return cmd_run(exp, std::max<std::size_t>(bins, 1));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

// Copyright 2026 The qvtlab Authors
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

#include "commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "experiment.hpp"
#include "figdata.hpp"
#include "io.hpp"
#include "qvt/combinatorics.hpp"
#include "qvt/estimate.hpp"
#include "qvt/heavy.hpp"
#include "qvt/random.hpp"
#include "qvt/sim.hpp"
#include "qvt/stats.hpp"
#include "qvt/transpile.hpp"
#include "sweep.hpp"

namespace qvt::cli {

using nlohmann::json;

namespace {

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    write_file_atomic(out, text);
}

NativeTwoQubit native_from_string(const std::string& s) {
  if (s == "cnot") return NativeTwoQubit::CNOT;
  if (s == "arb" || s == "arb_angle") return NativeTwoQubit::ARB_ANGLE;
  throw InvalidArgument("unknown native gate '" + s + "' (cnot or arb)");
}

FidelityKind method_from_string(const std::string& s) {
  if (s == "avg") return FidelityKind::Avg;
  if (s == "proc") return FidelityKind::Proc;
  throw InvalidArgument("unknown estimate method '" + s + "' (avg or proc)");
}

std::string distribution_json(const OutputDistribution& d) {
  json j{{"width", d.width}, {"probs", d.probs}};
  return j.dump() + "\n";
}

OutputDistribution distribution_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    OutputDistribution d;
    d.width = j.at("width").get<int>();
    d.probs = j.at("probs").get<std::vector<double>>();
    if (d.width < 1 || d.probs.size() != (std::size_t{1} << d.width))
      throw DataError("distribution size does not match its width");
    return d;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed distribution: ") + e.what());
  }
}

std::string heavy_json(const HeavyAnalysis& h) {
  json j{{"median", h.median}, {"heavy_set", h.heavy_set}, {"ideal_heavy_prob", h.ideal_heavy_prob}};
  if (h.noisy_heavy_prob) j["noisy_heavy_prob"] = *h.noisy_heavy_prob;
  return j.dump() + "\n";
}

struct TranspileOpts {
  std::string level = "high";
  double tol = 0.0;
  bool mirror = false;
  std::string native = "cnot";
  std::optional<double> gate_fidelity;

  TranspileConfig config() const {
    TranspileConfig c;
    c.level = opt_level_from_string(level);
    c.tol = tol;
    c.mirror = mirror;
    c.native = native_from_string(native);
    c.noise_aware_gate_fidelity = gate_fidelity;
    return c;
  }
};

void add_transpile_opts(CLI::App* cmd, TranspileOpts& o) {
  cmd->add_option("--level", o.level, "Optimization level: low, medium or high")->capture_default_str();
  cmd->add_option("--tol", o.tol, "Per-block average infidelity accepted at the high level")->capture_default_str();
  cmd->add_flag("--mirror", o.mirror, "Allow mirrored (SWAP-absorbing) block synthesis");
  cmd->add_option("--native", o.native, "Native two-qubit gate: cnot or arb")->capture_default_str();
  cmd->add_option("--gate-fidelity", o.gate_fidelity, "Noise-aware approximation with this CNOT fidelity");
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Quantum volume test toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value file");
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (overrides QVT_THREADS)");

  // generate
  auto* gen = app.add_subcommand("generate", "Write random QVT circuits as JSON");
  int g_n = 0, g_count = 1;
  std::uint64_t g_seed = 1;
  std::optional<int> g_depth;
  std::string g_out = ".";
  gen->add_option("--n", g_n, "Width")->required();
  gen->add_option("--count", g_count, "Number of circuits")->capture_default_str();
  gen->add_option("--seed", g_seed, "Master seed")->capture_default_str();
  gen->add_option("--depth", g_depth, "Rounds (default N)");
  gen->add_option("--out", g_out, "Output directory")->capture_default_str();

  // transpile
  auto* tr = app.add_subcommand("transpile", "Compile a QVT circuit to native gates");
  std::string t_in, t_out;
  TranspileOpts t_opts;
  tr->add_option("--in", t_in, "QVT circuit JSON")->required();
  tr->add_option("--out", t_out, "Compiled circuit JSON (default stdout)");
  add_transpile_opts(tr, t_opts);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Output distribution of a circuit");
  std::string s_in, s_out, s_model;
  double s_eps = 0.0;
  TranspileOpts s_opts;
  sim->add_option("--in", s_in, "QVT or compiled circuit JSON")->required();
  sim->add_option("--out", s_out, "Distribution JSON (default stdout)");
  sim->add_option("--model", s_model, "Error model; density-matrix simulation when given");
  sim->add_option("--eps", s_eps, "Error magnitude")->capture_default_str();
  add_transpile_opts(sim, s_opts);

  // analyze
  auto* an = app.add_subcommand("analyze", "Heavy set and heavy probabilities");
  std::string a_ideal, a_circuit, a_noisy, a_out;
  an->add_option("--ideal", a_ideal, "Ideal distribution JSON");
  an->add_option("--circuit", a_circuit, "QVT circuit JSON (ideal distribution computed)");
  an->add_option("--noisy", a_noisy, "Noisy distribution JSON");
  an->add_option("--out", a_out, "Analysis JSON (default stdout)");

  // estimate
  auto* est = app.add_subcommand("estimate", "Scalable success estimate");
  std::string e_model = "TQ depolarizing", e_level = "high", e_method = "avg";
  double e_eps = 0.0;
  int e_n = 4, e_scan = 64;
  bool e_threshold = false, e_qubits = false;
  est->add_option("--model", e_model, "Error model")->capture_default_str();
  est->add_option("--eps", e_eps, "Error magnitude")->capture_default_str();
  est->add_option("--n", e_n, "Width")->capture_default_str();
  est->add_option("--level", e_level, "Optimization level")->capture_default_str();
  est->add_option("--method", e_method, "avg or proc")->capture_default_str();
  est->add_flag("--threshold", e_threshold, "Report the passing eps for --n");
  est->add_flag("--qubits", e_qubits, "Report the largest passing N at --eps");
  est->add_option("--scan-limit", e_scan, "Largest N scanned by --qubits")->capture_default_str();

  // bootstrap
  auto* bs = app.add_subcommand("bootstrap", "Confidence intervals for experiment data");
  std::string b_in, b_out;
  int b_nb = 1000;
  double b_conf = kTwoSigmaConfidence;
  std::uint64_t b_seed = 1;
  bs->add_option("--in", b_in, "Experiment data JSON")->required();
  bs->add_option("--out", b_out, "Result JSON (default stdout)");
  bs->add_option("--n-b", b_nb, "Bootstrap resamples")->capture_default_str();
  bs->add_option("--confidence", b_conf, "Confidence level in percent")->capture_default_str();
  bs->add_option("--seed", b_seed, "Seed")->capture_default_str();

  // run
  auto* rn = app.add_subcommand("run", "End-to-end experiment with sampled shots");
  ExperimentConfig r_cfg;
  std::string r_level = "high", r_native = "cnot", r_out = "run";
  bool r_no_mirror = false;
  rn->add_option("--n", r_cfg.n, "Width")->capture_default_str();
  rn->add_option("--circuits", r_cfg.circuits, "Circuits")->capture_default_str();
  rn->add_option("--shots", r_cfg.shots, "Shots per circuit")->capture_default_str();
  rn->add_option("--model", r_cfg.model, "Error model")->capture_default_str();
  rn->add_option("--eps", r_cfg.eps, "Error magnitude")->capture_default_str();
  rn->add_option("--level", r_level, "Optimization level")->capture_default_str();
  rn->add_option("--native", r_native, "cnot or arb")->capture_default_str();
  rn->add_flag("--no-mirror", r_no_mirror, "Disable mirrored synthesis at the high level");
  rn->add_option("--seed", r_cfg.seed, "Master seed")->capture_default_str();
  rn->add_option("--n-b", r_cfg.n_bootstrap, "Bootstrap resamples")->capture_default_str();
  rn->add_option("--out", r_out, "Output directory")->capture_default_str();

  // sweep
  auto* sw = app.add_subcommand("sweep", "Grid of simulated experiments with threshold interpolation");
  SweepSpec sw_spec;
  std::vector<std::string> sw_levels{"high"};
  std::string sw_out = "sweep";
  bool sw_verbose = false;
  sw->add_option("--n", sw_spec.n_list, "Widths")->capture_default_str();
  sw->add_option("--models", sw_spec.models, "Error models")->capture_default_str();
  sw->add_option("--eps", sw_spec.eps_list, "Error magnitudes");
  sw->add_option("--levels", sw_levels, "Optimization levels")->capture_default_str();
  sw->add_option("--circuits", sw_spec.circuits, "Circuits per point")->capture_default_str();
  sw->add_option("--seed", sw_spec.seed, "Master seed")->capture_default_str();
  sw->add_option("--out", sw_out, "Output directory")->capture_default_str();
  sw->add_flag("--verbose", sw_verbose, "Report each point on stderr");

  // combinatorics
  auto* cb = app.add_subcommand("combinatorics", "Arrangement counts and gate savings");
  int c_n = 4, c_trials = 10000;
  std::uint64_t c_seed = 1;
  std::string c_out;
  cb->add_option("--n", c_n, "Width")->capture_default_str();
  cb->add_option("--trials", c_trials, "Monte Carlo trials")->capture_default_str();
  cb->add_option("--seed", c_seed, "Seed")->capture_default_str();
  cb->add_option("--out", c_out, "Report JSON (default stdout)");

  // figdata
  auto* fd = app.add_subcommand("figdata", "CSV tables for plotting");
  std::string f_name, f_out;
  std::vector<int> f_n{2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<std::string> f_models;
  int f_circuits = 1000, f_samples = 10000, f_bins = 60, f_trials = 10000;
  std::uint64_t f_seed = 1;
  std::string f_level = "high";
  fd->add_option("figure", f_name, "fig2, fig3, fig4, fig5, fig6 or fig7")
      ->required()
      ->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5", "fig6", "fig7"}));
  fd->add_option("--n", f_n, "Widths (fig3 uses the first)")->capture_default_str();
  fd->add_option("--models", f_models, "Error models (fig7; default all)");
  fd->add_option("--level", f_level, "Optimization level (fig7)")->capture_default_str();
  fd->add_option("--circuits", f_circuits, "Circuits per width or depth")->capture_default_str();
  fd->add_option("--samples", f_samples, "Haar samples (fig5, fig6)")->capture_default_str();
  fd->add_option("--bins", f_bins, "Histogram bins (fig6)")->capture_default_str();
  fd->add_option("--trials", f_trials, "Monte Carlo trials (fig4)")->capture_default_str();
  fd->add_option("--seed", f_seed, "Seed")->capture_default_str();
  fd->add_option("--out", f_out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (threads > 0) setenv("QVT_THREADS", std::to_string(threads).c_str(), 1);

  try {
    if (*gen) {
      if (g_n < 2) throw InvalidArgument("generate: N must be >= 2");
      if (g_count < 0) throw InvalidArgument("generate: count must be >= 0");
      for (int i = 0; i < g_count; ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "circuit_%05d.json", i);
        write_file_atomic(std::filesystem::path(g_out) / name,
                          to_json(generate_indexed_circuit(g_n, g_seed, std::uint64_t(i), g_depth)) + "\n");
      }
    } else if (*tr) {
      TranspileStats st;
      CompiledCircuit c = transpile(qvt_circuit_from_json(read_file(t_in)), t_opts.config(), &st);
      emit(t_out, to_json(c) + "\n");
      json s{{"blocks", st.blocks},
             {"two_qubit_gates", count_two_qubit_gates(c)},
             {"single_qubit_gates", count_single_qubit_gates(c)},
             {"cnot_histogram", st.cnot_histogram},
             {"fidelity_product", st.fidelity_product},
             {"theta_total", st.theta_total},
             {"mirrored_blocks", st.mirrored_blocks}};
      std::cerr << s.dump() << '\n';
    } else if (*sim) {
      const std::string text = read_file(s_in);
      OutputDistribution d;
      if (s_model.empty()) {
        d = is_compiled_json(text) ? statevector_run(compiled_circuit_from_json(text))
                                   : statevector_run(qvt_circuit_from_json(text));
      } else {
        CompiledCircuit c;
        if (is_compiled_json(text)) {
          c = compiled_circuit_from_json(text);
        } else {
          TranspileConfig cfg = s_opts.config();
          if (cfg.level == OptLevel::High && s_opts.tol == 0.0) cfg.tol = std::min(s_eps, 1.0);
          c = transpile(qvt_circuit_from_json(text), cfg);
        }
        d = density_run(c, resolve_model(find_model(s_model), s_eps));
      }
      emit(s_out, distribution_json(d));
    } else if (*an) {
      if (a_ideal.empty() == a_circuit.empty()) throw InvalidArgument("analyze: give exactly one of --ideal, --circuit");
      const OutputDistribution ideal = a_ideal.empty() ? statevector_run(qvt_circuit_from_json(read_file(a_circuit)))
                                                       : distribution_from_json(read_file(a_ideal));
      HeavyAnalysis h = a_noisy.empty() ? heavy_set(ideal) : analyze(ideal, distribution_from_json(read_file(a_noisy)));
      emit(a_out, heavy_json(h));
    } else if (*est) {
      const ErrorModelSpec& spec = find_model(e_model);
      const OptLevel level = opt_level_from_string(e_level);
      const FidelityKind method = method_from_string(e_method);
      json j{{"model", spec.name}, {"level", to_string(level)}, {"method", e_method}};
      if (e_threshold) {
        j["n"] = e_n;
        j["threshold"] = passing_threshold(spec, e_n, level, method);
      } else if (e_qubits) {
        j["eps"] = e_eps;
        j["passing_qubits"] = passing_qubits(spec, e_eps, level, method, e_scan);
      } else {
        EstimateResult r = scalable_success(spec, e_eps, e_n, level, method);
        j.update({{"n", e_n}, {"eps", e_eps}, {"success", r.success}, {"p_tot", r.p_tot}, {"p_m", r.p_m},
                  {"blocks", r.blocks}, {"gates_per_block", r.gates_per_block}, {"h_ideal", h_ideal_haar(e_n)}});
      }
      std::cout << j.dump() << '\n';
    } else if (*bs) {
      const ExperimentData data = experiment_data_from_json(read_file(b_in));
      json j;
      if (data.uniform_shots()) j["original"] = json::parse(to_json(ci_original(data)));
      j["bootstrap"] = json::parse(to_json(ci_bootstrap(data, b_nb, b_conf, b_seed)));
      emit(b_out, j.dump() + "\n");
    } else if (*rn) {
      r_cfg.level = opt_level_from_string(r_level);
      r_cfg.native = native_from_string(r_native);
      r_cfg.mirror = !r_no_mirror;
      const ExperimentResult res = run_experiment(r_cfg);
      const ExperimentData data = res.data();
      json j{{"n", r_cfg.n},
             {"circuits", r_cfg.circuits},
             {"shots", r_cfg.shots},
             {"model", find_model(r_cfg.model).name},
             {"eps", r_cfg.eps},
             {"level", to_string(r_cfg.level)},
             {"seed", r_cfg.seed},
             {"mean_ideal_heavy", res.mean_ideal},
             {"mean_noisy_heavy", res.mean_noisy},
             {"h_ideal", h_ideal_haar(r_cfg.n)},
             {"data", json::parse(to_json(data))}};
      if (r_cfg.shots > 0) {
        j["original"] = json::parse(to_json(ci_original(data)));
        j["bootstrap"] = json::parse(to_json(ci_bootstrap(data, r_cfg.n_bootstrap, kTwoSigmaConfidence, r_cfg.seed)));
      }
      std::ostringstream lines;
      for (const auto& rec : res.records)
        lines << json{{"seed", rec.seed},
                      {"two_qubit_gates", rec.two_qubit_gates},
                      {"ideal_heavy", rec.ideal_heavy},
                      {"noisy_heavy", rec.noisy_heavy},
                      {"heavy", rec.heavy_count},
                      {"shots", rec.shots}}
                     .dump()
              << '\n';
      write_file_atomic(std::filesystem::path(r_out) / "circuits.jsonl", lines.str());
      write_file_atomic(std::filesystem::path(r_out) / "experiment.json", j.dump(2) + "\n");
      std::cout << j["mean_noisy_heavy"] << '\n';
    } else if (*sw) {
      sw_spec.levels.clear();
      for (const auto& l : sw_levels) sw_spec.levels.push_back(opt_level_from_string(l));
      sw_spec.out_dir = sw_out;
      SweepSummary s = run_sweep(sw_spec, !sw_verbose);
      std::cout << "points: " << s.points.size() << " (computed " << s.computed << ", reused " << s.reused << ")\n";
      std::cout << read_file(std::filesystem::path(sw_out) / "thresholds.csv");
    } else if (*cb) {
      Rng rng(c_seed);
      GateCountReport r = gate_count_report(c_n, c_trials, rng);
      json h = json::array();
      for (int m = 0; m <= c_n / 2; ++m) h.push_back(h_exact_repeats(c_n, m).str());
      json j{{"n", c_n},
             {"f", r.f.str()},
             {"g", g_no_repeats(c_n).str()},
             {"h", h},
             {"expected_tq", r.expected_tq},
             {"expected_rounds", r.expected_rounds},
             {"savings_ratio", r.savings_ratio},
             {"savings_std", r.std_dev}};
      emit(c_out, j.dump() + "\n");
    } else if (*fd) {
      std::string csv;
      if (f_name == "fig2") {
        csv = fig2_csv(f_n, f_circuits, f_seed);
      } else if (f_name == "fig3") {
        const int n = f_n.empty() ? 4 : f_n.front();
        csv = fig3_csv(n, {n / 2, n, 2 * n, 4 * n, 6 * n}, f_circuits, f_seed);
      } else if (f_name == "fig4") {
        csv = fig4_csv(f_n.empty() ? 20 : *std::max_element(f_n.begin(), f_n.end()), f_trials, f_seed);
      } else if (f_name == "fig5") {
        std::vector<double> tols;
        for (int i = 0; i <= 24; ++i) tols.push_back(std::pow(10.0, -6.0 + 0.25 * i));
        csv = fig5_csv(tols, f_samples, f_seed);
      } else if (f_name == "fig6") {
        csv = fig6_csv(f_samples, f_bins, f_seed);
      } else {
        std::vector<std::string> models = f_models;
        if (models.empty())
          for (const auto& m : builtin_models()) models.push_back(m.name);
        csv = fig7_csv(f_n, models, opt_level_from_string(f_level));
      }
      emit(f_out, csv);
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kData;
  }
  return kOk;
}

}  // namespace qvt::cli

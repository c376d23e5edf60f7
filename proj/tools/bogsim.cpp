// Copyright 2026 The bogsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// bogsim — command-line front end.
//
// Subcommands:
//   generate   write the random circuits of an experiment to circuit files
//   simulate   run the simulator and export counts (+ ideal probabilities)
//   bin        bin externally produced counts into fidelity curves (no fit)
//   fit        fit an exported curve CSV and convert the decay rate to EPG
//   run        end-to-end: simulate, bin, fit, and emit results
//   ingest     end-to-end analysis of externally produced counts files
//   report     print the summary table of a saved results file
//
// Exit codes: 0 success, 1 validation/usage error, 2 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bog/analysis.hpp"
#include "bog/circuit.hpp"
#include "bog/config.hpp"
#include "bog/files.hpp"
#include "bog/pipeline.hpp"

namespace {

using namespace bog;

// Flag mirror of ExperimentConfig: every field is optional so that values
// from --config <file> are overridden only where a flag was actually given.
struct ConfigCli {
  std::string config_path;
  std::optional<int> n_qubits;
  std::vector<int> depths;
  std::optional<int> seeds;
  std::optional<std::uint64_t> master_seed;
  std::optional<std::uint64_t> shots;
  std::optional<int> num_bins;
  std::optional<double> depolarizing_lambda;
  std::optional<double> readout_epsilon;
  std::optional<double> idle_lambda1;
  std::optional<double> z_fraction;
  std::optional<double> zz_strength_hz;
  std::optional<double> cnot_time_s;
  std::optional<int> bootstrap_groups;
  std::optional<std::string> algorithms;
  bool per_seed_fidelity = false;
  bool strict = false;
};

void add_config_options(CLI::App* cmd, ConfigCli& c) {
  cmd->add_option("--config", c.config_path,
                  "JSON config file (schema bog-config/1); flags override it");
  cmd->add_option("--n-qubits", c.n_qubits, "Number of qubits on the chain");
  cmd->add_option("--depths", c.depths,
                  "Circuit depths in cycles, ascending (comma separated)")
      ->delimiter(',');
  cmd->add_option("--seeds", c.seeds, "Number of random circuit seeds");
  cmd->add_option("--master-seed", c.master_seed,
                  "Root seed of every random stream");
  cmd->add_option("--shots", c.shots,
                  "Measurement shots per circuit (0 = infinite-shot mode)");
  cmd->add_option("--num-bins", c.num_bins, "Number of equal-mass bins");
  cmd->add_option("--depolarizing-lambda", c.depolarizing_lambda,
                  "Two-qubit depolarizing parameter per CNOT");
  cmd->add_option("--readout-epsilon", c.readout_epsilon,
                  "Symmetric per-qubit readout flip probability");
  cmd->add_option("--idle-lambda1", c.idle_lambda1,
                  "Single-qubit depolarizing parameter on idle qubits");
  cmd->add_option("--z-fraction", c.z_fraction,
                  "Coherent Rz(2*pi*z) injected on both qubits after each CNOT");
  cmd->add_option("--zz-strength-hz", c.zz_strength_hz,
                  "Residual ZZ coupling strength J in Hz");
  cmd->add_option("--cnot-time-s", c.cnot_time_s,
                  "CNOT gate time in seconds (sets the ZZ angle 2*pi*J*t)");
  cmd->add_option("--bootstrap-groups", c.bootstrap_groups,
                  "Bootstrap groups for error bars (0 disables)");
  cmd->add_option("--algorithms", c.algorithms,
                  "Binning algorithm(s): by_ideal, by_experimental, or both")
      ->check(CLI::IsMember({"by_ideal", "by_experimental", "both"}));
  cmd->add_flag("--per-seed-fidelity", c.per_seed_fidelity,
                "Average per-seed fidelities instead of scoring summed bins");
  cmd->add_flag("--strict", c.strict,
                "Escalate statistics warnings to errors");
}

ExperimentConfig build_config(const ConfigCli& c) {
  ExperimentConfig config;
  if (!c.config_path.empty())
    config = config_from_json(read_text_file(c.config_path));
  if (c.n_qubits) config.n_qubits = *c.n_qubits;
  if (!c.depths.empty()) config.depths = c.depths;
  if (c.seeds) config.seeds = *c.seeds;
  if (c.master_seed) config.master_seed = *c.master_seed;
  if (c.shots) config.shots = *c.shots;
  if (c.num_bins) config.num_bins = *c.num_bins;
  if (c.depolarizing_lambda)
    config.noise.depolarizing_lambda = *c.depolarizing_lambda;
  if (c.readout_epsilon) config.noise.readout_epsilon = *c.readout_epsilon;
  if (c.idle_lambda1) config.noise.idle_lambda1 = *c.idle_lambda1;
  if (c.z_fraction) config.noise.z_fraction = *c.z_fraction;
  if (c.zz_strength_hz) config.noise.zz_strength_hz = *c.zz_strength_hz;
  if (c.cnot_time_s) config.noise.cnot_time_s = *c.cnot_time_s;
  if (c.bootstrap_groups) config.bootstrap_groups = *c.bootstrap_groups;
  if (c.algorithms)
    config.algorithms = algorithm_selection_from_string(*c.algorithms);
  if (c.per_seed_fidelity) config.per_seed_fidelity = true;
  return config;
}

// Validates, then either escalates warnings (--strict) or prints them.
ExperimentConfig checked_config(const ConfigCli& c) {
  ExperimentConfig config = build_config(c);
  std::vector<std::string> warnings = config.validate();
  if (c.strict && !warnings.empty()) {
    std::string joined = "strict mode: ";
    for (std::size_t i = 0; i < warnings.size(); ++i) {
      if (i > 0) joined += "; ";
      joined += warnings[i];
    }
    throw std::invalid_argument(joined);
  }
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
  return config;
}

// File lists for bin/ingest: explicit paths plus every *.json in a directory,
// sorted for a deterministic ingest order.
std::vector<std::filesystem::path> collect_files(
    const std::vector<std::string>& files, const std::string& dir,
    const char* what) {
  std::vector<std::filesystem::path> out(files.begin(), files.end());
  if (!dir.empty()) {
    if (!std::filesystem::is_directory(dir))
      throw std::invalid_argument(std::string(what) + ": " + dir +
                                  " is not a directory");
    std::vector<std::filesystem::path> found;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
      if (entry.is_regular_file() && entry.path().extension() == ".json")
        found.push_back(entry.path());
    std::sort(found.begin(), found.end());
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

std::string percent(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f%%", value * 100.0);
  return buf;
}

void print_fit(const FidelityCurve& curve, const DecayFit& fit,
               const EpgReport& report, bool as_json) {
  if (as_json) {
    nlohmann::json j{
        {"algorithm", to_string(curve.algorithm)},
        {"points", curve.points.size()},
        {"amplitude", fit.amplitude},
        {"amplitude_stderr", fit.amplitude_stderr()},
        {"lambda", fit.lambda},
        {"lambda_stderr", fit.lambda_stderr()},
        {"residual_norm", fit.residual_norm},
        {"epg", report.epg},
        {"gates_per_block", report.gates_per_block},
        {"cycles_per_block", report.cycles_per_block},
    };
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << "algorithm:      " << to_string(curve.algorithm) << "\n"
            << "points:         " << curve.points.size() << "\n"
            << "amplitude:      " << format_double(fit.amplitude) << " +/- "
            << format_double(fit.amplitude_stderr()) << "\n"
            << "decay rate:     " << format_double(fit.lambda) << " +/- "
            << format_double(fit.lambda_stderr()) << "\n"
            << "avg 2Q EPG:     " << format_double(report.epg) << " ("
            << percent(report.epg) << ")\n";
}

int dispatch(int argc, char** argv) {
  CLI::App app{"bogsim: binned-output fidelity estimation for random circuits"};
  app.require_subcommand(1);

  ConfigCli cli;
  std::string out_dir = "out";

  // --- generate ---------------------------------------------------------
  auto* generate = app.add_subcommand(
      "generate", "Write the experiment's random circuits to circuit files");
  add_config_options(generate, cli);
  generate->add_option("--out", out_dir, "Output directory");
  generate->callback([&] {
    ExperimentConfig config = checked_config(cli);
    emit_circuits(config, out_dir);
    std::cout << "wrote " << config.seeds << " circuit files to "
              << (std::filesystem::path(out_dir) / "circuits").string() << "\n";
  });

  // --- simulate ---------------------------------------------------------
  auto* simulate = app.add_subcommand(
      "simulate", "Simulate the experiment and export counts files");
  add_config_options(simulate, cli);
  simulate->add_option("--out", out_dir, "Output directory");
  simulate->callback([&] {
    ExperimentConfig config = checked_config(cli);
    if (config.shots == 0)
      throw std::invalid_argument(
          "simulate: counts export needs --shots >= 1 "
          "(use `run` for infinite-shot analysis)");
    SimulatedEnsemble ensemble = simulate_ensemble(config);
    emit_ensemble(ensemble, config, out_dir);
    std::cout << "wrote " << ensemble.counts.size() << " counts files to "
              << (std::filesystem::path(out_dir) / "counts").string()
              << " and ideal probabilities to "
              << (std::filesystem::path(out_dir) / "ideal").string() << "\n";
  });

  // --- run ---------------------------------------------------------------
  auto* run = app.add_subcommand(
      "run", "End-to-end: simulate, bin, fit, and emit results");
  add_config_options(run, cli);
  run->add_option("--out", out_dir, "Output directory");
  bool run_emit_counts = false;
  bool run_emit_circuits = false;
  run->add_flag("--emit-counts", run_emit_counts,
                "Also export the sampled counts and ideal probabilities");
  run->add_flag("--emit-circuits", run_emit_circuits,
                "Also export the generated circuits");
  run->callback([&] {
    ExperimentConfig config = checked_config(cli);
    std::vector<std::string> warnings = config.validate();
    SimulatedEnsemble ensemble = simulate_ensemble(config);
    std::vector<std::pair<int, double>> purity_by_depth;
    for (std::size_t di = 0; di < config.depths.size(); ++di)
      purity_by_depth.emplace_back(config.depths[di],
                                   ensemble.mean_purity[di]);
    ResultsBundle bundle =
        analyze_ensemble(config, ensemble.measured, &ensemble.ideals,
                         purity_by_depth, std::move(warnings));
    emit_results(bundle, out_dir);
    if (run_emit_counts) emit_ensemble(ensemble, config, out_dir);
    if (run_emit_circuits) emit_circuits(config, out_dir);
    std::cout << summary_table(bundle) << "results written to "
              << (std::filesystem::path(out_dir) / "results.json").string()
              << "\n";
  });

  // --- bin / ingest -------------------------------------------------------
  std::vector<std::string> counts_files, ideal_files;
  std::string counts_dir, ideal_dir;
  auto add_ingest_options = [&](CLI::App* cmd) {
    add_config_options(cmd, cli);
    cmd->add_option("--counts-file", counts_files,
                    "Counts file (repeatable)");
    cmd->add_option("--counts-dir", counts_dir,
                    "Directory of counts *.json files");
    cmd->add_option("--ideal-file", ideal_files,
                    "Ideal-probabilities file (repeatable)");
    cmd->add_option("--ideal-dir", ideal_dir,
                    "Directory of ideal-probabilities *.json files");
    cmd->add_option("--out", out_dir, "Output directory");
  };
  auto run_ingest = [&](bool with_fits) {
    ExperimentConfig config = checked_config(cli);
    auto counts = collect_files(counts_files, counts_dir, "counts");
    auto ideals = collect_files(ideal_files, ideal_dir, "ideal");
    if (counts.empty())
      throw std::invalid_argument(
          "no counts given: use --counts-file/--counts-dir");
    ResultsBundle bundle = ingest_and_analyze(config, counts, ideals, with_fits);
    emit_results(bundle, out_dir);
    if (with_fits) std::cout << summary_table(bundle);
    std::cout << "results written to "
              << (std::filesystem::path(out_dir) / "results.json").string()
              << "\n";
  };

  auto* bin = app.add_subcommand(
      "bin", "Bin counts files into fidelity curves (no decay fit)");
  add_ingest_options(bin);
  bin->callback([&] { run_ingest(false); });

  auto* ingest = app.add_subcommand(
      "ingest", "Analyze externally produced counts files end to end");
  add_ingest_options(ingest);
  ingest->callback([&] { run_ingest(true); });

  // --- fit ----------------------------------------------------------------
  auto* fit_cmd = app.add_subcommand(
      "fit", "Fit a curve CSV to A*(1-lambda)^d and convert to EPG");
  std::string curve_path;
  std::optional<int> fit_n_qubits;
  std::optional<int> fit_gates, fit_cycles;
  bool fit_json = false;
  fit_cmd->add_option("--curve", curve_path, "Curve CSV file")->required();
  fit_cmd->add_option("--n-qubits", fit_n_qubits,
                      "Qubit count (block accounting from the chain layout)");
  fit_cmd->add_option("--gates-per-block", fit_gates,
                      "Explicit two-qubit gates per block");
  fit_cmd->add_option("--cycles-per-block", fit_cycles,
                      "Explicit cycles per block");
  fit_cmd->add_flag("--json", fit_json, "Print the fit as JSON");
  fit_cmd->callback([&] {
    int gates = 0, cycles = 0;
    if (fit_n_qubits) {
      Topology topology = chain_topology(*fit_n_qubits);
      gates = topology.gates_per_block();
      cycles = topology.cycles_per_block();
    } else if (fit_gates && fit_cycles) {
      gates = *fit_gates;
      cycles = *fit_cycles;
    } else {
      throw std::invalid_argument(
          "fit: give --n-qubits (chain layout) or both --gates-per-block "
          "and --cycles-per-block");
    }
    FidelityCurve curve = curve_from_csv(read_text_file(curve_path));
    DecayFit fit = fit_decay(curve);
    EpgReport report = epg_from_lambda(fit.lambda, gates, cycles);
    print_fit(curve, fit, report, fit_json);
  });

  // --- report ---------------------------------------------------------------
  auto* report_cmd =
      app.add_subcommand("report", "Print the summary table of a results file");
  std::string results_path;
  report_cmd->add_option("--results", results_path, "results.json file")
      ->required();
  report_cmd->callback([&] {
    ResultsBundle bundle = results_from_json(read_text_file(results_path));
    std::cout << summary_table(bundle);
    std::cout << "tool: " << bundle.tool_version << "  written: "
              << bundle.timestamp << "  master seed: "
              << bundle.config.master_seed << "\n";
    for (const std::string& w : bundle.warnings)
      std::cout << "warning: " << w << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // help/version -> 0, usage errors -> 1
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

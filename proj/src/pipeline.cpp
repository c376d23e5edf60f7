// Copyright 2026 The bogsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "bog/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <ctime>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "bog/rng.hpp"
#include "bog/version.hpp"

namespace bog {

namespace {

std::vector<Algorithm> selected_algorithms(const ExperimentConfig& config) {
  std::vector<Algorithm> algorithms;
  if (config.wants(Algorithm::ByIdeal)) algorithms.push_back(Algorithm::ByIdeal);
  if (config.wants(Algorithm::ByExperimental))
    algorithms.push_back(Algorithm::ByExperimental);
  return algorithms;
}

std::string seed_depth_name(std::uint64_t seed, int depth) {
  return "s" + std::to_string(seed) + "_d" + std::to_string(depth) + ".json";
}

}  // namespace

std::string current_utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

SimulatedEnsemble simulate_ensemble(const ExperimentConfig& config) {
  config.validate();
  const Topology topology = chain_topology(config.n_qubits);
  const NoiseModel channels = config.noise.channel_model();
  const bool injections =
      config.noise.z_fraction != 0.0 || config.noise.zz_strength_hz > 0.0;
  const std::size_t n_depths = config.depths.size();
  const std::size_t n_seeds = std::size_t(config.seeds);

  // Derive every circuit seed up front and store seeds in ascending
  // seed-value order: ingesting exported counts sorts by seed value, and the
  // two paths must group seeds identically for the bootstrap (and hence the
  // fit weights) to reproduce exactly.
  std::vector<std::uint64_t> seed_values(n_seeds);
  for (std::size_t s = 0; s < n_seeds; ++s)
    seed_values[s] =
        rng::derive(config.master_seed, {rng::kCircuitSeed, std::uint64_t(s)});
  std::vector<std::size_t> slot(n_seeds);  // seed ordinal -> storage slot
  {
    std::vector<std::size_t> order(n_seeds);
    for (std::size_t s = 0; s < n_seeds; ++s) order[s] = s;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return seed_values[a] < seed_values[b];
                     });
    for (std::size_t r = 0; r < n_seeds; ++r) slot[order[r]] = r;
  }

  SimulatedEnsemble ensemble;
  ensemble.circuit_seeds.assign(n_seeds, 0);
  ensemble.measured.assign(n_depths, std::vector<ProbabilityVector>(n_seeds));
  ensemble.ideals.assign(n_depths, std::vector<ProbabilityVector>(n_seeds));
  ensemble.mean_purity.assign(n_depths, 0.0);
  std::vector<std::vector<double>> purity(
      n_seeds, std::vector<double>(n_depths, 1.0));
  std::vector<std::vector<CountsRecord>> counts(n_seeds);

  // One job per seed; each writes only its own slots, so completion order
  // cannot affect the result.
  auto run_seed = [&](std::size_t s) {
    const std::uint64_t circuit_seed = seed_values[s];
    ensemble.circuit_seeds[slot[s]] = circuit_seed;
    Circuit intended = generate_bog_circuit(config.n_qubits, config.max_depth(),
                                            circuit_seed, topology);
    std::vector<ProbabilityVector> ideal_snaps =
        ideal_probability_snapshots(intended, config.depths);

    std::vector<ProbabilityVector> actual_snaps;
    if (channels.has_stochastic_noise()) {
      Circuit actual = inject_zz(inject_z_noise(intended, config.noise.z_fraction),
                                 config.noise.injection());
      NoisySnapshots noisy =
          noisy_probability_snapshots(actual, channels, config.depths);
      actual_snaps = std::move(noisy.probabilities);
      purity[slot[s]] = std::move(noisy.purity);
    } else {
      if (injections) {
        Circuit actual = inject_zz(
            inject_z_noise(intended, config.noise.z_fraction),
            config.noise.injection());
        actual_snaps = ideal_probability_snapshots(actual, config.depths);
      } else {
        actual_snaps = ideal_snaps;
      }
      if (config.noise.readout_epsilon > 0.0)
        for (ProbabilityVector& pv : actual_snaps)
          apply_readout_confusion(pv.probs, config.n_qubits,
                                  config.noise.readout_epsilon);
    }

    for (std::size_t di = 0; di < n_depths; ++di) {
      ensemble.ideals[di][slot[s]] = std::move(ideal_snaps[di]);
      if (config.shots > 0) {
        auto eng = rng::engine(
            config.master_seed,
            {rng::kMeasurement, circuit_seed, std::uint64_t(config.depths[di])});
        CountsRecord record = sample_counts(actual_snaps[di], config.shots, eng);
        record.depth = config.depths[di];
        record.seed = circuit_seed;
        ensemble.measured[di][slot[s]] = record.frequencies();
        counts[slot[s]].push_back(std::move(record));
      } else {
        ensemble.measured[di][slot[s]] = std::move(actual_snaps[di]);
      }
    }
  };

  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, n_seeds);
  if (workers <= 1) {
    for (std::size_t s = 0; s < n_seeds; ++s) run_seed(s);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      for (;;) {
        std::size_t s = next.fetch_add(1);
        if (s >= n_seeds) return;
        try {
          run_seed(s);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  // Deterministic reduction in seed-ordinal order.
  for (std::size_t s = 0; s < n_seeds; ++s) {
    for (std::size_t di = 0; di < n_depths; ++di)
      ensemble.mean_purity[di] += purity[s][di] / double(n_seeds);
    for (CountsRecord& record : counts[s])
      ensemble.counts.push_back(std::move(record));
  }
  return ensemble;
}

ResultsBundle analyze_ensemble(
    const ExperimentConfig& config,
    const std::vector<std::vector<ProbabilityVector>>& measured,
    const std::vector<std::vector<ProbabilityVector>>* ideals,
    const std::vector<std::pair<int, double>>& purity_by_depth,
    std::vector<std::string> warnings, bool with_fits) {
  if (measured.size() != config.depths.size())
    throw std::invalid_argument("analyze_ensemble: depth count mismatch");
  for (const auto& per_seed : measured)
    if (int(per_seed.size()) != config.seeds)
      throw std::invalid_argument("analyze_ensemble: seed count mismatch");
  if (ideals != nullptr && ideals->size() != measured.size())
    throw std::invalid_argument("analyze_ensemble: ideal depth count mismatch");

  const BinSpec spec = compute_bin_edges(config.n_qubits, config.num_bins);
  const Topology topology = chain_topology(config.n_qubits);

  ResultsBundle bundle;
  bundle.config = config;
  bundle.warnings = std::move(warnings);
  bundle.tool_version = std::string(kToolName) + " " + kToolVersion;
  bundle.timestamp = current_utc_timestamp();

  std::optional<double> incoherent_epg;
  if (purity_by_depth.size() >= 3)
    incoherent_epg = incoherent_epg_from_purity(purity_by_depth, config.n_qubits,
                                                topology.gates_per_block(),
                                                topology.cycles_per_block());

  for (Algorithm algorithm : selected_algorithms(config)) {
    FidelityCurve curve;
    curve.algorithm = algorithm;
    curve.meta = {config.n_qubits, config.seeds, config.shots, config.num_bins};
    for (std::size_t di = 0; di < config.depths.size(); ++di) {
      const std::vector<ProbabilityVector>* depth_ideals =
          ideals ? &(*ideals)[di] : nullptr;
      DepthBinSet set = ensemble_bins(measured[di], depth_ideals, spec,
                                      algorithm, config.shots);
      double fidelity;
      double stderr_value = 0.0;
      if (config.per_seed_fidelity) {
        // Sensitivity variant: score each seed alone, average the scores;
        // bootstrap over the contiguous-group means of those scores.
        std::vector<double> per_seed = per_seed_fidelities(
            measured[di], depth_ideals, spec, algorithm, config.shots);
        fidelity = 0.0;
        for (double v : per_seed) fidelity += v / double(per_seed.size());
        if (config.bootstrap_groups >= 2) {
          std::vector<double> group_means;
          for (auto [begin, end] :
               bootstrap_partition(per_seed.size(), config.bootstrap_groups)) {
            double mean = 0.0;
            for (std::size_t s = begin; s < end; ++s)
              mean += per_seed[s] / double(end - begin);
            group_means.push_back(mean);
          }
          stderr_value = sample_stddev(group_means);
        }
      } else {
        fidelity = bog_fidelity(set.experimental, set.ideal, set.mixed).value;
        if (config.bootstrap_groups >= 2)
          stderr_value =
              bootstrap_stderr(measured[di], depth_ideals, spec, algorithm,
                               config.bootstrap_groups, config.shots);
      }
      curve.points.push_back({config.depths[di], fidelity, stderr_value});
      DepthBins bins;
      bins.algorithm = algorithm;
      bins.depth = config.depths[di];
      bins.experimental = std::move(set.experimental.weights);
      bins.ideal = std::move(set.ideal.weights);
      bins.mixed = std::move(set.mixed.weights);
      bundle.bins.push_back(std::move(bins));
    }
    bundle.curves.push_back(curve);
    if (with_fits && curve.points.size() >= 3) {
      DecayFit fit = fit_decay(curve);
      EpgReport report =
          epg_from_lambda(fit.lambda, topology.gates_per_block(),
                          topology.cycles_per_block());
      report.incoherent_epg = incoherent_epg;
      bundle.fits.emplace_back(algorithm, fit);
      bundle.epg.emplace_back(algorithm, report);
    }
  }
  return bundle;
}

ResultsBundle run_experiment(const ExperimentConfig& config) {
  std::vector<std::string> warnings = config.validate();
  SimulatedEnsemble ensemble = simulate_ensemble(config);
  std::vector<std::pair<int, double>> purity_by_depth;
  for (std::size_t di = 0; di < config.depths.size(); ++di)
    purity_by_depth.emplace_back(config.depths[di], ensemble.mean_purity[di]);
  return analyze_ensemble(config, ensemble.measured, &ensemble.ideals,
                          purity_by_depth, std::move(warnings));
}

void emit_results(const ResultsBundle& bundle,
                  const std::filesystem::path& out_dir) {
  write_text_file(out_dir / "results.json", results_to_json(bundle));
  write_text_file(out_dir / "summary.txt", summary_table(bundle));
  for (const FidelityCurve& curve : bundle.curves) {
    std::string name = curve.algorithm == Algorithm::ByIdeal
                           ? "curve_by_ideal.csv"
                           : "curve_by_experimental.csv";
    write_text_file(out_dir / name, curve_to_csv(curve));
  }
}

void emit_ensemble(const SimulatedEnsemble& ensemble,
                   const ExperimentConfig& config,
                   const std::filesystem::path& out_dir) {
  for (const CountsRecord& record : ensemble.counts)
    write_text_file(
        out_dir / "counts" / seed_depth_name(record.seed, record.depth),
        serialize_counts(record));
  for (std::size_t di = 0; di < config.depths.size(); ++di) {
    for (std::size_t s = 0; s < ensemble.ideals[di].size(); ++s) {
      IdealProbsRecord record;
      record.n_qubits = config.n_qubits;
      record.depth = config.depths[di];
      record.seed = ensemble.circuit_seeds[s];
      record.probs = ensemble.ideals[di][s].probs;
      write_text_file(
          out_dir / "ideal" / seed_depth_name(record.seed, record.depth),
          serialize_ideal_probs(record));
    }
  }
}

void emit_circuits(const ExperimentConfig& config,
                   const std::filesystem::path& out_dir) {
  config.validate();
  const Topology topology = chain_topology(config.n_qubits);
  for (int s = 0; s < config.seeds; ++s) {
    std::uint64_t circuit_seed =
        rng::derive(config.master_seed, {rng::kCircuitSeed, std::uint64_t(s)});
    Circuit intended = generate_bog_circuit(config.n_qubits, config.max_depth(),
                                            circuit_seed, topology);
    write_text_file(
        out_dir / "circuits" / ("s" + std::to_string(circuit_seed) + ".json"),
        serialize_circuit(intended));
  }
}

std::vector<CountsRecord> ingest_counts(
    const std::vector<std::filesystem::path>& files) {
  std::vector<CountsRecord> records;
  records.reserve(files.size());
  for (const auto& path : files) {
    try {
      records.push_back(parse_counts(read_text_file(path)));
    } catch (const std::exception& e) {
      throw std::invalid_argument(path.string() + ": " + e.what());
    }
  }
  return records;
}

ResultsBundle ingest_and_analyze(
    const ExperimentConfig& config,
    const std::vector<std::filesystem::path>& counts_files,
    const std::vector<std::filesystem::path>& ideal_files, bool with_fits) {
  std::vector<CountsRecord> records = ingest_counts(counts_files);
  if (records.empty())
    throw std::invalid_argument("ingest: no counts files given");

  std::map<std::pair<std::uint64_t, int>, const CountsRecord*> by_key;
  std::set<std::uint64_t> seed_values;
  std::uint64_t shots = records.front().shots;
  for (const CountsRecord& record : records) {
    if (record.n_qubits != config.n_qubits)
      throw std::invalid_argument(
          "ingest: record (seed " + std::to_string(record.seed) + ", depth " +
          std::to_string(record.depth) + ") has n_qubits " +
          std::to_string(record.n_qubits) + ", config says " +
          std::to_string(config.n_qubits));
    if (record.shots != shots)
      throw std::invalid_argument(
          "ingest: records disagree on shots (" + std::to_string(shots) +
          " vs " + std::to_string(record.shots) + ")");
    auto key = std::make_pair(record.seed, record.depth);
    if (!by_key.emplace(key, &record).second)
      throw std::invalid_argument(
          "ingest: duplicate record for seed " + std::to_string(record.seed) +
          ", depth " + std::to_string(record.depth));
    seed_values.insert(record.seed);
  }
  if (config.shots != 0 && config.shots != shots)
    throw std::invalid_argument(
        "ingest: config shots " + std::to_string(config.shots) +
        " does not match the records' " + std::to_string(shots));
  if (int(seed_values.size()) != config.seeds)
    throw std::invalid_argument(
        "ingest: found " + std::to_string(seed_values.size()) +
        " distinct seeds, config says " + std::to_string(config.seeds));
  for (std::uint64_t seed : seed_values)
    for (int depth : config.depths)
      if (!by_key.count({seed, depth}))
        throw std::invalid_argument(
            "ingest: missing record for seed " + std::to_string(seed) +
            ", depth " + std::to_string(depth));
  if (by_key.size() != seed_values.size() * config.depths.size())
    throw std::invalid_argument(
        "ingest: records outside the configured depth grid");

  // Seeds ordered by ascending seed value (deterministic grouping).
  std::vector<std::uint64_t> seeds(seed_values.begin(), seed_values.end());
  std::vector<std::vector<ProbabilityVector>> measured(config.depths.size());
  for (std::size_t di = 0; di < config.depths.size(); ++di)
    for (std::uint64_t seed : seeds)
      measured[di].push_back(
          by_key.at({seed, config.depths[di]})->frequencies());

  std::vector<std::vector<ProbabilityVector>> ideals;
  bool have_ideals = !ideal_files.empty();
  if (have_ideals) {
    std::map<std::pair<std::uint64_t, int>, IdealProbsRecord> ideal_by_key;
    for (const auto& path : ideal_files) {
      try {
        IdealProbsRecord record = parse_ideal_probs(read_text_file(path));
        if (record.n_qubits != config.n_qubits)
          throw std::invalid_argument("n_qubits " +
                                      std::to_string(record.n_qubits) +
                                      " does not match the config's " +
                                      std::to_string(config.n_qubits));
        ideal_by_key[{record.seed, record.depth}] = std::move(record);
      } catch (const std::exception& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
      }
    }
    ideals.resize(config.depths.size());
    for (std::size_t di = 0; di < config.depths.size(); ++di) {
      for (std::uint64_t seed : seeds) {
        auto it = ideal_by_key.find({seed, config.depths[di]});
        if (it == ideal_by_key.end())
          throw std::invalid_argument(
              "ingest: missing ideal probabilities for seed " +
              std::to_string(seed) + ", depth " +
              std::to_string(config.depths[di]));
        ideals[di].push_back(it->second.vector());
      }
    }
  } else if (config.wants(Algorithm::ByIdeal)) {
    throw std::invalid_argument(
        "ingest: ByIdeal analysis requires ideal-probability files "
        "(counts alone support only ByExperimental)");
  }

  ExperimentConfig effective = config;
  effective.shots = shots;
  std::vector<std::string> warnings = effective.validate();
  return analyze_ensemble(effective, measured, have_ideals ? &ideals : nullptr,
                          {}, std::move(warnings), with_fits);
}

std::vector<double> epg_z_sweep(const ExperimentConfig& base,
                                const std::vector<double>& z_fractions,
                                double zz_strength_hz) {
  std::vector<double> out;
  out.reserve(z_fractions.size());
  for (double z : z_fractions) {
    ExperimentConfig config = base;
    config.noise.z_fraction = z;
    config.noise.zz_strength_hz = zz_strength_hz;
    config.algorithms = AlgorithmSelection::ByIdeal;
    config.bootstrap_groups = 0;  // central values only
    ResultsBundle bundle = run_experiment(config);
    if (bundle.epg.empty())
      throw std::runtime_error("epg_z_sweep: no EPG produced (need >= 3 depths)");
    out.push_back(bundle.epg.front().second.epg);
  }
  return out;
}

ZzFit recover_zz_strength(const ExperimentConfig& base,
                          const std::vector<double>& z_fractions,
                          const std::vector<double>& measured_epg,
                          double j_max_hz) {
  if (z_fractions.size() != measured_epg.size())
    throw std::invalid_argument(
        "recover_zz_strength: one measured EPG per z_fraction required");
  return fit_zz_strength(
      measured_epg,
      [&](double j_hz) { return epg_z_sweep(base, z_fractions, j_hz); },
      j_max_hz);
}

}  // namespace bog

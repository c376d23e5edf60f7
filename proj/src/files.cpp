// Copyright 2026 The bogsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "bog/files.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "bog/version.hpp"

namespace bog {

using nlohmann::json;

namespace {

json complex_to_json(const cx& z) { return json::array({z.real(), z.imag()}); }

cx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("complex entry must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const json& j, Eigen::Index dim) {
  if (!j.is_array() || Eigen::Index(j.size()) != dim)
    throw std::invalid_argument("matrix must have " + std::to_string(dim) +
                                " rows");
  Mat m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const json& row = j[std::size_t(r)];
    if (!row.is_array() || Eigen::Index(row.size()) != dim)
      throw std::invalid_argument("matrix row must have " +
                                  std::to_string(dim) + " entries");
    for (Eigen::Index c = 0; c < dim; ++c)
      m(r, c) = complex_from_json(row[std::size_t(c)]);
  }
  return m;
}

json parse_versioned(const std::string& text, const std::string& what,
                     const std::string& expected_version) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(what + ": malformed input: " + e.what());
  }
  if (!j.is_object())
    throw std::invalid_argument(what + ": top level must be an object");
  std::string version = j.value("version", std::string());
  if (version != expected_version)
    throw std::invalid_argument(what + ": unsupported schema version \"" +
                                version + "\" (expected " + expected_version +
                                ")");
  return j;
}

Algorithm algorithm_from_string(const std::string& text) {
  if (text == "ByIdeal") return Algorithm::ByIdeal;
  if (text == "ByExperimental") return Algorithm::ByExperimental;
  throw std::invalid_argument("unknown algorithm \"" + text +
                              "\" (expected ByIdeal or ByExperimental)");
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc())
    throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

// --- circuits ---------------------------------------------------------------

std::string serialize_circuit(const Circuit& circuit) {
  circuit.validate();
  json j;
  j["version"] = "bog-circuit/1";
  j["n_qubits"] = circuit.n_qubits;
  j["seed"] = circuit.seed;
  j["cycles"] = circuit.cycles;
  json layers = json::array();
  for (const Layer& layer : circuit.layers) {
    json l;
    if (const auto* sql = std::get_if<SingleQubitLayer>(&layer)) {
      l["type"] = "single_qubit";
      json us = json::array();
      for (const Mat2& u : sql->unitaries) us.push_back(matrix_to_json(u));
      l["unitaries"] = std::move(us);
    } else if (const auto* ent = std::get_if<EntanglingLayer>(&layer)) {
      l["type"] = "entangling";
      json gs = json::array();
      for (const TwoQubitGate& g : ent->gates) {
        json gj;
        gj["control"] = g.control;
        gj["target"] = g.target;
        if (g.kind == TwoQubitKind::CNOT) {
          gj["kind"] = "cnot";
        } else {
          gj["kind"] = "unitary";
          gj["matrix"] = matrix_to_json(g.matrix);
        }
        gs.push_back(std::move(gj));
      }
      l["gates"] = std::move(gs);
    } else {
      const auto& inj = std::get<PhaseInjectionLayer>(layer);
      l["type"] = "phase_injection";
      json zs = json::array();
      for (auto [q, angle] : inj.z_rotations)
        zs.push_back(json::array({q, angle}));
      json zzs = json::array();
      for (const auto& [pair, theta] : inj.zz_rotations)
        zzs.push_back(json::array({pair.first, pair.second, theta}));
      l["z_rotations"] = std::move(zs);
      l["zz_rotations"] = std::move(zzs);
    }
    layers.push_back(std::move(l));
  }
  j["layers"] = std::move(layers);
  return j.dump(2) + "\n";
}

Circuit parse_circuit(const std::string& text) {
  json j = parse_versioned(text, "circuit", "bog-circuit/1");
  Circuit circuit;
  try {
    circuit.n_qubits = j.at("n_qubits").get<int>();
    circuit.seed = j.at("seed").get<std::uint64_t>();
    circuit.cycles = j.at("cycles").get<int>();
    for (const json& l : j.at("layers")) {
      std::string type = l.at("type").get<std::string>();
      if (type == "single_qubit") {
        SingleQubitLayer sql;
        for (const json& u : l.at("unitaries"))
          sql.unitaries.push_back(matrix_from_json(u, 2));
        circuit.layers.emplace_back(std::move(sql));
      } else if (type == "entangling") {
        EntanglingLayer ent;
        for (const json& gj : l.at("gates")) {
          std::string kind = gj.at("kind").get<std::string>();
          int control = gj.at("control").get<int>();
          int target = gj.at("target").get<int>();
          if (kind == "cnot") {
            ent.gates.push_back(TwoQubitGate::cnot(control, target));
          } else if (kind == "unitary") {
            ent.gates.push_back(TwoQubitGate::general_unitary(
                control, target, Mat4(matrix_from_json(gj.at("matrix"), 4))));
          } else {
            throw std::invalid_argument("unknown gate kind \"" + kind + "\"");
          }
        }
        circuit.layers.emplace_back(std::move(ent));
      } else if (type == "phase_injection") {
        PhaseInjectionLayer inj;
        for (const json& z : l.at("z_rotations"))
          inj.z_rotations.emplace_back(z.at(0).get<int>(),
                                       z.at(1).get<double>());
        for (const json& zz : l.at("zz_rotations"))
          inj.zz_rotations.push_back({{zz.at(0).get<int>(), zz.at(1).get<int>()},
                                      zz.at(2).get<double>()});
        circuit.layers.emplace_back(std::move(inj));
      } else {
        throw std::invalid_argument("unknown layer type \"" + type + "\"");
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("circuit: bad or missing field: ") +
                                e.what());
  }
  circuit.validate();
  return circuit;
}

// --- counts -----------------------------------------------------------------

std::string serialize_counts(const CountsRecord& record) {
  record.validate();
  json j;
  j["version"] = "bog-counts/1";
  j["n_qubits"] = record.n_qubits;
  j["depth"] = record.depth;
  j["seed"] = record.seed;
  j["shots"] = record.shots;
  j["counts"] = json::object();
  for (const auto& [bits, count] : record.counts) j["counts"][bits] = count;
  return j.dump(2) + "\n";
}

CountsRecord parse_counts(const std::string& text) {
  json j = parse_versioned(text, "counts", "bog-counts/1");
  CountsRecord record;
  try {
    record.n_qubits = j.at("n_qubits").get<int>();
    record.depth = j.at("depth").get<int>();
    record.seed = j.at("seed").get<std::uint64_t>();
    record.shots = j.at("shots").get<std::uint64_t>();
    for (const auto& [bits, count] : j.at("counts").items())
      record.counts[bits] = count.get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("counts: bad or missing field: ") +
                                e.what());
  }
  record.validate();
  return record;
}

// --- ideal probabilities -----------------------------------------------------

ProbabilityVector IdealProbsRecord::vector() const {
  ProbabilityVector pv;
  pv.n_qubits = n_qubits;
  pv.probs = probs;
  pv.validate();
  return pv;
}

std::string serialize_ideal_probs(const IdealProbsRecord& record) {
  record.vector();  // validates
  json j;
  j["version"] = "bog-ideal/1";
  j["n_qubits"] = record.n_qubits;
  j["depth"] = record.depth;
  j["seed"] = record.seed;
  j["probs"] = record.probs;
  return j.dump(2) + "\n";
}

IdealProbsRecord parse_ideal_probs(const std::string& text) {
  json j = parse_versioned(text, "ideal-probs", "bog-ideal/1");
  IdealProbsRecord record;
  try {
    record.n_qubits = j.at("n_qubits").get<int>();
    record.depth = j.at("depth").get<int>();
    record.seed = j.at("seed").get<std::uint64_t>();
    record.probs = j.at("probs").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(
        std::string("ideal-probs: bad or missing field: ") + e.what());
  }
  record.vector();  // validates
  return record;
}

// --- fidelity curves ----------------------------------------------------------

std::string curve_to_csv(const FidelityCurve& curve) {
  curve.validate();
  std::string out = "depth,fidelity,stderr,algorithm\n";
  for (const auto& p : curve.points) {
    out += std::to_string(p.depth_cycles);
    out += ',';
    out += format_double(p.fidelity);
    out += ',';
    out += format_double(p.std_err);
    out += ',';
    out += to_string(curve.algorithm);
    out += '\n';
  }
  return out;
}

FidelityCurve curve_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "depth,fidelity,stderr,algorithm")
    throw std::invalid_argument(
        "curve CSV: missing header depth,fidelity,stderr,algorithm");
  FidelityCurve curve;
  bool first = true;
  int line_no = 1;
  auto parse_field_double = [&](const std::string& s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw std::invalid_argument("curve CSV line " + std::to_string(line_no) +
                                  ": bad number \"" + s + "\"");
    return v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        fields.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (fields.size() != 4)
      throw std::invalid_argument("curve CSV line " + std::to_string(line_no) +
                                  ": expected 4 fields, got " +
                                  std::to_string(fields.size()));
    FidelityCurve::Point p;
    p.depth_cycles = int(parse_field_double(fields[0]));
    p.fidelity = parse_field_double(fields[1]);
    p.std_err = parse_field_double(fields[2]);
    Algorithm alg = algorithm_from_string(fields[3]);
    if (first) {
      curve.algorithm = alg;
      first = false;
    } else if (alg != curve.algorithm) {
      throw std::invalid_argument("curve CSV line " + std::to_string(line_no) +
                                  ": mixed algorithms in one file");
    }
    curve.points.push_back(p);
  }
  curve.validate();
  return curve;
}

// --- results bundle ------------------------------------------------------------

std::string results_to_json(const ResultsBundle& bundle) {
  json j;
  j["version"] = "bog-results/1";
  j["config"] = json::parse(config_to_json(bundle.config));
  json bins = json::array();
  for (const DepthBins& b : bundle.bins) {
    bins.push_back({{"algorithm", to_string(b.algorithm)},
                    {"depth", b.depth},
                    {"experimental", b.experimental},
                    {"ideal", b.ideal},
                    {"mixed", b.mixed}});
  }
  j["bins"] = std::move(bins);
  json curves = json::array();
  for (const FidelityCurve& c : bundle.curves) {
    json points = json::array();
    for (const auto& p : c.points)
      points.push_back({{"depth", p.depth_cycles},
                        {"fidelity", p.fidelity},
                        {"stderr", p.std_err}});
    curves.push_back({{"algorithm", to_string(c.algorithm)},
                      {"meta",
                       {{"n_qubits", c.meta.n_qubits},
                        {"seeds", c.meta.seeds},
                        {"shots", c.meta.shots},
                        {"num_bins", c.meta.num_bins}}},
                      {"points", std::move(points)}});
  }
  j["curves"] = std::move(curves);
  json fits = json::array();
  for (const auto& [alg, fit] : bundle.fits) {
    fits.push_back(
        {{"algorithm", to_string(alg)},
         {"amplitude", fit.amplitude},
         {"lambda", fit.lambda},
         {"covariance",
          json::array({json::array({fit.covariance(0, 0), fit.covariance(0, 1)}),
                       json::array({fit.covariance(1, 0), fit.covariance(1, 1)})})},
         {"residual_norm", fit.residual_norm}});
  }
  j["fits"] = std::move(fits);
  json epgs = json::array();
  for (const auto& [alg, report] : bundle.epg) {
    json e = {{"algorithm", to_string(alg)},
              {"epg", report.epg},
              {"prefactor", report.prefactor},
              {"gates_per_block", report.gates_per_block},
              {"cycles_per_block", report.cycles_per_block}};
    e["incoherent_epg"] = report.incoherent_epg.has_value()
                              ? json(*report.incoherent_epg)
                              : json(nullptr);
    epgs.push_back(std::move(e));
  }
  j["epg"] = std::move(epgs);
  j["warnings"] = bundle.warnings;
  j["provenance"] = {{"tool_version", bundle.tool_version},
                     {"timestamp", bundle.timestamp},
                     {"master_seed", bundle.config.master_seed}};
  return j.dump(2) + "\n";
}

ResultsBundle results_from_json(const std::string& text) {
  json j = parse_versioned(text, "results", "bog-results/1");
  ResultsBundle bundle;
  try {
    bundle.config = config_from_json(j.at("config").dump());
    for (const json& b : j.at("bins")) {
      DepthBins db;
      db.algorithm = algorithm_from_string(b.at("algorithm").get<std::string>());
      db.depth = b.at("depth").get<int>();
      db.experimental = b.at("experimental").get<std::vector<double>>();
      db.ideal = b.at("ideal").get<std::vector<double>>();
      db.mixed = b.at("mixed").get<std::vector<double>>();
      bundle.bins.push_back(std::move(db));
    }
    for (const json& c : j.at("curves")) {
      FidelityCurve curve;
      curve.algorithm = algorithm_from_string(c.at("algorithm").get<std::string>());
      const json& meta = c.at("meta");
      curve.meta.n_qubits = meta.at("n_qubits").get<int>();
      curve.meta.seeds = meta.at("seeds").get<int>();
      curve.meta.shots = meta.at("shots").get<std::uint64_t>();
      curve.meta.num_bins = meta.at("num_bins").get<int>();
      for (const json& p : c.at("points"))
        curve.points.push_back({p.at("depth").get<int>(),
                                p.at("fidelity").get<double>(),
                                p.at("stderr").get<double>()});
      bundle.curves.push_back(std::move(curve));
    }
    for (const json& f : j.at("fits")) {
      DecayFit fit;
      fit.amplitude = f.at("amplitude").get<double>();
      fit.lambda = f.at("lambda").get<double>();
      const json& cov = f.at("covariance");
      fit.covariance << cov.at(0).at(0).get<double>(),
          cov.at(0).at(1).get<double>(), cov.at(1).at(0).get<double>(),
          cov.at(1).at(1).get<double>();
      fit.residual_norm = f.at("residual_norm").get<double>();
      bundle.fits.emplace_back(
          algorithm_from_string(f.at("algorithm").get<std::string>()), fit);
    }
    for (const json& e : j.at("epg")) {
      EpgReport report;
      report.epg = e.at("epg").get<double>();
      if (!e.at("incoherent_epg").is_null())
        report.incoherent_epg = e.at("incoherent_epg").get<double>();
      report.prefactor = e.at("prefactor").get<double>();
      report.gates_per_block = e.at("gates_per_block").get<int>();
      report.cycles_per_block = e.at("cycles_per_block").get<int>();
      bundle.epg.emplace_back(
          algorithm_from_string(e.at("algorithm").get<std::string>()), report);
    }
    bundle.warnings = j.at("warnings").get<std::vector<std::string>>();
    const json& prov = j.at("provenance");
    bundle.tool_version = prov.at("tool_version").get<std::string>();
    bundle.timestamp = prov.at("timestamp").get<std::string>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("results: bad or missing field: ") +
                                e.what());
  }
  return bundle;
}

std::string summary_table(const ResultsBundle& bundle) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "experiment: n=%d, seeds=%d, shots=%s, bins=%d\n",
                bundle.config.n_qubits, bundle.config.seeds,
                bundle.config.shots == 0
                    ? "inf"
                    : std::to_string(bundle.config.shots).c_str(),
                bundle.config.num_bins);
  out += line;
  std::snprintf(line, sizeof line, "%-16s %10s %12s %14s %22s\n", "algorithm",
                "amplitude", "decay", "avg 2Q EPG", "incoherent EPG (purity)");
  out += line;
  for (const auto& [alg, report] : bundle.epg) {
    double amplitude = 0.0, lambda = 0.0;
    for (const auto& [falg, fit] : bundle.fits)
      if (falg == alg) {
        amplitude = fit.amplitude;
        lambda = fit.lambda;
      }
    if (report.incoherent_epg.has_value())
      std::snprintf(line, sizeof line, "%-16s %10.4f %12.6f %13.4f%% %21.4f%%\n",
                    to_string(alg).c_str(), amplitude, lambda,
                    100.0 * report.epg, 100.0 * *report.incoherent_epg);
    else
      std::snprintf(line, sizeof line, "%-16s %10.4f %12.6f %13.4f%% %22s\n",
                    to_string(alg).c_str(), amplitude, lambda,
                    100.0 * report.epg, "-");
    out += line;
  }
  return out;
}

// --- helpers -------------------------------------------------------------------

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof())
    throw std::invalid_argument("error reading " + path.string());
  return buf.str();
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::invalid_argument("cannot write " + path.string());
  out << content;
  out.close();
  if (!out) throw std::invalid_argument("error writing " + path.string());
}

}  // namespace bog

#pragma once

// Evaluation pipeline: compile every benchmark with every compiler, simulate
// it under device noise and collect Path, SWAP, Fidelity and Attempts.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mera/benchmarks.hpp"
#include "mera/compiler.hpp"
#include "mera/noisy_sim.hpp"
#include "mera/rng.hpp"

namespace mera {

struct EvalConfig {
  std::size_t iterations = 5;
  std::uint64_t shots = 1024;
  std::uint64_t seed = 1;
  std::vector<CompilerKind> compilers = all_compilers();
  NoiseChannels channels;
  CompileOptions compile;
  unsigned threads = 1;
};

struct RunRow {
  std::string benchmark;
  std::string compiler;
  std::string qubits;  // "m-n" for reuse circuits, else the width
  std::size_t path = 0;
  std::size_t swap = 0;
  double fidelity = 0.0;     // mean over iterations
  double fidelity_sd = 0.0;  // sample standard deviation over iterations
  std::optional<std::uint64_t> attempts;  // repeat-until-success only, summed over iterations
  double compile_ms = 0.0;
};

struct RunReport {
  std::string device;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  std::uint64_t shots = 0;
  std::vector<RunRow> rows;

  [[nodiscard]] const RunRow* find(const std::string& benchmark, const std::string& compiler) const {
    for (const auto& r : rows) {
      if (r.benchmark == benchmark && r.compiler == compiler) return &r;
    }
    return nullptr;
  }
};

inline std::string qubits_label(const BenchmarkSpec& spec, const Circuit& c) {
  if (spec.family == BenchmarkFamily::BvReuse || spec.family == BenchmarkFamily::HLadder) {
    return std::to_string(spec.m) + "-" + std::to_string(spec.n);
  }
  return std::to_string(c.num_qubits());
}

/// One (benchmark, compiler) cell. Iteration i simulates with seed
/// stream (seed, i), identical across compilers.
inline RunRow evaluate_cell(const BenchmarkSpec& spec, const Circuit& logical,
                            const ExactDistribution& ideal, const DeviceModel& device,
                            CompilerKind kind, const EvalConfig& cfg) {
  const auto cr = compile(logical, device, kind, cfg.compile);
  RunRow row;
  row.benchmark = spec.display_name();
  row.compiler = compiler_name(kind);
  row.qubits = qubits_label(spec, logical);
  row.path = cr.path;
  row.swap = cr.swaps;
  row.compile_ms = cr.compile_ms;
  SimOptions so;
  so.schedule = &cr.schedule;
  so.threads = cfg.threads;
  std::vector<double> fids;
  std::uint64_t attempts = 0;
  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    const std::uint64_t s = Rng::stream(cfg.seed, it).bits();
    const auto res = simulate(cr.physical, device, cfg.channels, cfg.shots, s, so);
    fids.push_back(hellinger_fidelity(res.counts, ideal));
    if (logical.rus()) attempts += attempts_metric(cr.physical, res);
  }
  double mean = 0.0;
  for (double f : fids) mean += f;
  mean /= static_cast<double>(std::max<std::size_t>(1, fids.size()));
  double var = 0.0;
  for (double f : fids) var += (f - mean) * (f - mean);
  row.fidelity = mean;
  row.fidelity_sd = fids.size() > 1 ? std::sqrt(var / static_cast<double>(fids.size() - 1)) : 0.0;
  if (logical.rus()) row.attempts = attempts;
  return row;
}

inline RunReport run_eval(const std::vector<BenchmarkSpec>& suite, const DeviceModel& device,
                          const EvalConfig& cfg = {}) {
  RunReport rep;
  rep.device = device.name();
  rep.seed = cfg.seed;
  rep.iterations = cfg.iterations;
  rep.shots = cfg.shots;
  for (const auto& spec : suite) {
    const Circuit logical = gen_benchmark(spec);
    const auto ideal = exact_distribution(logical);
    for (CompilerKind k : cfg.compilers) {
      rep.rows.push_back(evaluate_cell(spec, logical, ideal, device, k, cfg));
    }
  }
  return rep;
}

inline constexpr const char* report_csv_header =
    "benchmark,compiler,qubits,path,swap,fidelity,fidelity_sd,attempts,compile_ms";

inline std::string report_to_csv(const RunReport& rep) {
  std::ostringstream os;
  os.precision(6);
  os << report_csv_header << "\n";
  for (const auto& r : rep.rows) {
    os << '"' << r.benchmark << "\"," << r.compiler << "," << r.qubits << "," << r.path << ","
       << r.swap << "," << std::fixed << r.fidelity << "," << r.fidelity_sd << ",";
    if (r.attempts) os << *r.attempts;
    os << "," << std::setprecision(3) << r.compile_ms << std::setprecision(6)
       << std::defaultfloat << "\n";
  }
  return os.str();
}

inline nlohmann::json report_to_json(const RunReport& rep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rep.rows) {
    nlohmann::json j = {{"benchmark", r.benchmark}, {"compiler", r.compiler},
                        {"qubits", r.qubits},       {"path", r.path},
                        {"swap", r.swap},           {"fidelity", r.fidelity},
                        {"fidelity_sd", r.fidelity_sd},
                        {"compile_ms", r.compile_ms}};
    j["attempts"] = r.attempts ? nlohmann::json(*r.attempts) : nlohmann::json(nullptr);
    rows.push_back(std::move(j));
  }
  return {{"device", rep.device}, {"seed", rep.seed},       {"iterations", rep.iterations},
          {"shots", rep.shots},   {"rows", std::move(rows)}};
}

inline RunReport report_from_json(const nlohmann::json& j) {
  try {
    RunReport rep;
    rep.device = j.at("device").get<std::string>();
    rep.seed = j.at("seed").get<std::uint64_t>();
    rep.iterations = j.at("iterations").get<std::size_t>();
    rep.shots = j.at("shots").get<std::uint64_t>();
    for (const auto& r : j.at("rows")) {
      RunRow row;
      row.benchmark = r.at("benchmark").get<std::string>();
      row.compiler = r.at("compiler").get<std::string>();
      row.qubits = r.at("qubits").get<std::string>();
      row.path = r.at("path").get<std::size_t>();
      row.swap = r.at("swap").get<std::size_t>();
      row.fidelity = r.at("fidelity").get<double>();
      row.fidelity_sd = r.at("fidelity_sd").get<double>();
      row.compile_ms = r.at("compile_ms").get<double>();
      if (!r.at("attempts").is_null()) row.attempts = r.at("attempts").get<std::uint64_t>();
      rep.rows.push_back(std::move(row));
    }
    return rep;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("run report", e.what());
  }
}

}  // namespace mera

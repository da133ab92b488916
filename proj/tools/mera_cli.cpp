// mera: command-line front end for profiling, compilation, scheduling,
// simulation and benchmark evaluation.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mera/benchmarks.hpp"
#include "mera/cadd.hpp"
#include "mera/calibration_io.hpp"
#include "mera/compiler.hpp"
#include "mera/eval.hpp"
#include "mera/noisy_sim.hpp"
#include "mera/profiler.hpp"
#include "mera/qasm.hpp"
#include "mera/schedule.hpp"
#include "mera/synth.hpp"
#include "mera/topology.hpp"

namespace fs = std::filesystem;
using namespace mera;

namespace {

struct Common {
  std::string device;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
};

void write_text(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p);
  if (!f) throw Error("cannot write " + p.string());
  f << text;
}

void write_json(const fs::path& p, const nlohmann::json& j) { write_text(p, j.dump(2) + "\n"); }

DeviceModel require_device(const Common& c) {
  if (c.device.empty()) throw InvalidSpec("--device is required");
  return load_device(c.device);
}

Circuit input_circuit(const std::string& benchmark, const std::string& qasm_path) {
  if (!qasm_path.empty()) return qasm::load(qasm_path);
  if (benchmark.empty()) throw InvalidSpec("give --benchmark or --qasm");
  return gen_benchmark(parse_benchmark_spec(benchmark));
}

// "grid(2,4)" -> "grid2x4", "line(6)" -> "line6".
std::string file_stem(const std::string& name) {
  std::string out;
  for (char ch : name) {
    if (ch == ',') {
      out += 'x';
    } else if (ch != '(' && ch != ')') {
      out += ch;
    }
  }
  return out;
}

nlohmann::json counts_to_json(const SimResult& r) {
  nlohmann::json j;
  j["shots"] = r.counts.shots;
  j["seed"] = r.counts.seed;
  j["counts"] = r.counts.counts;
  j["total_mcms"] = r.total_mcms();
  return j;
}

nlohmann::json layout_to_json(const Layout& l) {
  std::vector<std::size_t> v;
  for (std::size_t q = 0; q < l.num_logical(); ++q) v.push_back(l.physical(q));
  return v;
}

nlohmann::json schedule_to_json(const Circuit& c, const Schedule& s) {
  nlohmann::json ops = nlohmann::json::array();
  for (std::size_t i = 0; i < c.size(); ++i) {
    ops.push_back({{"op", op_name(c[i].kind)},
                   {"qubits", c[i].qubits},
                   {"start", s.start[i]},
                   {"duration", s.duration[i]},
                   {"label", c[i].label}});
  }
  nlohmann::json mcm = nlohmann::json::array();
  for (const auto& w : s.mcm_windows) {
    mcm.push_back({{"qubit", w.qubit}, {"start", w.start}, {"end", w.end}});
  }
  return {{"total", s.total}, {"units", "ns"}, {"ops", ops}, {"mcm_windows", mcm}};
}

std::vector<BenchmarkSpec> suite_by_name(const std::string& name, const std::string& qasm_dir) {
  if (name == "reuse") return reuse_suite(qasm_dir);
  if (name == "rus") return rus_suite();
  if (name == "all") {
    auto s = rus_suite();
    for (auto& b : reuse_suite(qasm_dir)) s.push_back(b);
    return s;
  }
  if (name == "none") return {};
  throw InvalidSpec("unknown suite: " + name);
}

void print_table(const RunReport& rep, std::ostream& os) {
  os << "device " << rep.device << ", seed " << rep.seed << ", " << rep.iterations << "x"
     << rep.shots << " shots\n";
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-14s %-14s %-6s %5s %5s %9s %9s %9s\n", "benchmark",
                "compiler", "qubits", "path", "swap", "fidelity", "attempts", "ms");
  os << buf;
  for (const auto& r : rep.rows) {
    std::snprintf(buf, sizeof buf, "%-14s %-14s %-6s %5zu %5zu %9.4f %9s %9.2f\n",
                  r.benchmark.c_str(), r.compiler.c_str(), r.qubits.c_str(), r.path, r.swap,
                  r.fidelity, r.attempts ? std::to_string(*r.attempts).c_str() : "-",
                  r.compile_ms);
    os << buf;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MCM-error-aware compiler toolkit"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--device", common.device, "Calibration JSON")->check(CLI::ExistingFile);
  app.add_option("--seed", common.seed, "Random seed");
  app.add_option("--out-dir", common.out_dir, "Output directory");

  // synth
  auto* synth = app.add_subcommand("synth", "Write a synthetic calibration map");
  std::string topology = "eagle127";
  std::string profile = "eagle";
  std::string synth_out;
  synth->add_option("--topology", topology, "eagle127, small-hex, line:N, grid:RxC");
  synth->add_option("--profile", profile, "eagle, heron or zero");
  synth->add_option("-o,--output", synth_out, "Output file (default <out-dir>/<name>.json)");

  // profile
  auto* prof = app.add_subcommand("profile", "Estimate per-qubit MCM errors by simulation");
  std::uint64_t prof_shots = default_profiling_shots;
  bool prof_apply = false;
  prof->add_option("--shots", prof_shots, "Shots");
  prof->add_flag("--apply", prof_apply, "Also write the device with the estimates applied");

  // compile
  auto* comp = app.add_subcommand("compile", "Layout, route, schedule and decouple a circuit");
  std::string benchmark;
  std::string qasm_in;
  std::string compiler = "mera";
  comp->add_option("--benchmark", benchmark, "bv:4-2, hladder:3-2, rus:4, ghz:5, qasm:<file>");
  comp->add_option("--qasm", qasm_in, "Logical circuit")->check(CLI::ExistingFile);
  comp->add_option("--compiler", compiler, "mera, mera-no-cadd, distance-only, worst");

  // schedule
  auto* sched = app.add_subcommand("schedule", "ALAP schedule of a physical circuit");
  std::string sched_in;
  bool sched_dd = false;
  sched->add_option("--qasm", sched_in, "Physical circuit")->required()->check(CLI::ExistingFile);
  sched->add_flag("--cadd", sched_dd, "Insert dynamic decoupling");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Noisy simulation of a physical circuit");
  std::string sim_in;
  std::uint64_t sim_shots = 1024;
  bool sim_ideal = false;
  unsigned sim_threads = 1;
  sim->add_option("--qasm", sim_in, "Physical circuit")->required()->check(CLI::ExistingFile);
  sim->add_option("--shots", sim_shots, "Shots");
  sim->add_option("--threads", sim_threads, "Worker threads");
  sim->add_flag("--ideal", sim_ideal, "Disable every noise channel");

  // bench
  auto* bench = app.add_subcommand("bench", "Evaluate benchmarks with every compiler");
  std::string suite = "all";
  std::vector<std::string> extra;
  std::vector<std::string> compilers;
  std::string qasm_dir = "benchmarks";
  EvalConfig ecfg;
  bench->add_option("--suite", suite, "all, reuse, rus or none");
  bench->add_option("--benchmark", extra, "Additional benchmark specs");
  bench->add_option("--compilers", compilers, "Subset of compilers");
  bench->add_option("--qasm-dir", qasm_dir, "Directory of the QASM stand-ins");
  bench->add_option("--iterations", ecfg.iterations, "Iterations per cell");
  bench->add_option("--shots", ecfg.shots, "Shots per iteration");
  bench->add_option("--threads", ecfg.threads, "Simulation threads");

  // report
  auto* rep = app.add_subcommand("report", "Print a stored run report");
  std::string rep_in;
  std::string rep_format = "table";
  rep->add_option("--in", rep_in, "report.json")->required()->check(CLI::ExistingFile);
  rep->add_option("--format", rep_format, "table, csv or json");

  CLI11_PARSE(app, argc, argv);

  try {
    const fs::path out(common.out_dir);
    if (synth->parsed()) {
      auto d = synth_error_map(make_topology(topology), common.seed,
                               profile == "eagle"   ? eagle_profile()
                               : profile == "heron" ? heron_profile()
                               : profile == "zero"  ? zero_profile()
                                                    : throw UnknownPreset(profile));
      const fs::path p =
          synth_out.empty() ? out / (file_stem(d.name()) + "-synth.json") : fs::path(synth_out);
      if (p.has_parent_path()) fs::create_directories(p.parent_path());
      save_device(d, p.string());
      std::cout << p.string() << "\n";
    } else if (prof->parsed()) {
      auto d = require_device(common);
      std::vector<std::size_t> qs(d.num_qubits());
      std::iota(qs.begin(), qs.end(), 0);
      const auto r = profile_device(d, qs, NoiseChannels{}, prof_shots, common.seed);
      write_json(out / "profile.json", report_to_json(r));
      if (prof_apply) {
        for (const auto& e : r.qubits) d.qubit(e.qubit).mcm_error = e.mcm_error;
        save_device(d, (out / "device-profiled.json").string());
      }
      std::cout << (out / "profile.json").string() << "\n";
    } else if (comp->parsed()) {
      const auto d = require_device(common);
      const auto c = input_circuit(benchmark, qasm_in);
      const auto r = compile(c, d, parse_compiler(compiler));
      write_text(out / "compiled.qasm", qasm::emit(r.physical));
      write_json(out / "compile.json", {{"compiler", compiler},
                                        {"initial_layout", layout_to_json(r.initial)},
                                        {"final_layout", layout_to_json(r.final)},
                                        {"swaps", r.swaps},
                                        {"path", r.path},
                                        {"dd_pulses", r.dd_pulses},
                                        {"compile_ms", r.compile_ms}});
      write_json(out / "schedule.json", schedule_to_json(r.physical, r.schedule));
      std::cout << "swaps " << r.swaps << " path " << r.path << " dd " << r.dd_pulses << "\n";
    } else if (sched->parsed()) {
      const auto d = require_device(common);
      auto c = qasm::load(sched_in);
      auto s = alap_schedule(c, d);
      if (sched_dd) {
        auto dd = cadd_insert(c, s, d);
        c = std::move(dd.circuit);
        s = std::move(dd.schedule);
        write_text(out / "decoupled.qasm", qasm::emit(c));
      }
      validate_schedule(c, s, d);
      write_json(out / "schedule.json", schedule_to_json(c, s));
      std::cout << "total " << s.total << " ns\n";
    } else if (sim->parsed()) {
      const auto c = qasm::load(sim_in);
      SimOptions so;
      so.threads = sim_threads;
      SimResult r;
      if (sim_ideal) {
        r = simulate(c, nullptr, NoiseChannels::none(), sim_shots, common.seed, so);
      } else {
        const auto d = require_device(common);
        r = simulate(c, d, NoiseChannels{}, sim_shots, common.seed, so);
      }
      auto j = counts_to_json(r);
      if (c.rus()) j["attempts"] = attempts_metric(c, r);
      write_json(out / "counts.json", j);
      std::cout << (out / "counts.json").string() << "\n";
    } else if (bench->parsed()) {
      const auto d = require_device(common);
      auto specs = suite_by_name(suite, qasm_dir);
      for (const auto& e : extra) specs.push_back(parse_benchmark_spec(e));
      if (!compilers.empty()) {
        ecfg.compilers.clear();
        for (const auto& c : compilers) ecfg.compilers.push_back(parse_compiler(c));
      }
      ecfg.seed = common.seed;
      const auto r = run_eval(specs, d, ecfg);
      write_text(out / "report.csv", report_to_csv(r));
      write_json(out / "report.json", report_to_json(r));
      print_table(r, std::cout);
    } else if (rep->parsed()) {
      std::ifstream f(rep_in);
      const auto r = report_from_json(nlohmann::json::parse(f));
      if (rep_format == "csv") {
        std::cout << report_to_csv(r);
      } else if (rep_format == "json") {
        std::cout << report_to_json(r).dump(2) << "\n";
      } else {
        print_table(r, std::cout);
      }
    }
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

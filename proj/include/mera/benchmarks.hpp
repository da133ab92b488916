#pragma once

// Deterministic benchmark generators: qubit-reuse Bernstein-Vazirani,
// Hadamard ladders with reuse, repeat-until-success pairs, GHZ, and QASM
// files.

#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "mera/circuit.hpp"
#include "mera/errors.hpp"
#include "mera/qasm.hpp"

namespace mera {

enum class BenchmarkFamily { BvReuse, HLadder, Rus, Ghz, QasmFile };

struct BenchmarkSpec {
  BenchmarkFamily family = BenchmarkFamily::Ghz;
  std::size_t m = 0;  // logical qubits (BV, H-ladder), width (RUS, GHZ)
  std::size_t n = 0;  // physical qubits after reuse (BV, H-ladder)
  std::string path;   // QASM file
  std::string name;   // display name, derived when empty

  static BenchmarkSpec bv(std::size_t m, std::size_t n) {
    return {BenchmarkFamily::BvReuse, m, n, {}, {}};
  }
  static BenchmarkSpec h_ladder(std::size_t m, std::size_t n) {
    return {BenchmarkFamily::HLadder, m, n, {}, {}};
  }
  static BenchmarkSpec rus(std::size_t k) { return {BenchmarkFamily::Rus, k, k, {}, {}}; }
  static BenchmarkSpec ghz(std::size_t k) { return {BenchmarkFamily::Ghz, k, k, {}, {}}; }
  static BenchmarkSpec qasm_file(std::string path, std::string name = {}) {
    return {BenchmarkFamily::QasmFile, 0, 0, std::move(path), std::move(name)};
  }

  [[nodiscard]] std::string display_name() const {
    if (!name.empty()) return name;
    const auto mn = std::to_string(m) + "-" + std::to_string(n);
    switch (family) {
      case BenchmarkFamily::BvReuse: return "BV " + mn;
      case BenchmarkFamily::HLadder: return "H-Ladder " + mn;
      case BenchmarkFamily::Rus: return "RUS " + std::to_string(m);
      case BenchmarkFamily::Ghz: return "GHZ " + std::to_string(m);
      case BenchmarkFamily::QasmFile: return path;
    }
    return path;
  }

  /// Logical qubits before reuse; 0 when only the file knows.
  [[nodiscard]] std::size_t expected_logical() const {
    return family == BenchmarkFamily::QasmFile ? 0 : m;
  }
  /// Qubits of the generated circuit; 0 when only the file knows.
  [[nodiscard]] std::size_t expected_physical() const {
    return family == BenchmarkFamily::QasmFile ? 0 : n;
  }
};

/// Bernstein-Vazirani with the all-ones secret: m-1 data qubits take turns
/// on n-1 reusable slots, the target sits on the last qubit.
inline Circuit bv_reuse(std::size_t m, std::size_t n) {
  if (n < 2 || m < n) throw InvalidSpec("BV-reuse needs m >= n >= 2");
  const std::size_t slots = n - 1;
  const std::size_t t = n - 1;
  Circuit c(n, m - 1);
  c.x(t).h(t);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const std::size_t s = i % slots;
    if (i >= slots) c.reset(s);
    c.h(s).cx(s, t).h(s).measure(s, i);
  }
  return c;
}

/// Hadamard ladder: logical qubit k lives on slot k mod n, entangles with
/// its predecessor and the predecessor is then measured and its slot reset.
/// The two end qubits carry an extra rotation sandwich.
inline Circuit h_ladder(std::size_t m, std::size_t n) {
  if (n < 2 || m < n) throw InvalidSpec("H-ladder needs m >= n >= 2");
  constexpr double theta = std::numbers::pi / 4;
  Circuit c(n, m);
  const auto prep = [&](std::size_t k) {
    const std::size_t s = k % n;
    if (k >= n) c.reset(s);
    c.h(s).rz(theta, s).h(s);
  };
  const auto retire = [&](std::size_t k) {
    const std::size_t s = k % n;
    c.rz(theta, s).h(s).measure(s, k);
  };
  const auto cap = [&](std::size_t k) {
    const std::size_t s = k % n;
    c.rz(theta, s).h(s).rz(theta, s).h(s);
  };
  c.x(0);
  prep(0);
  cap(0);
  for (std::size_t k = 1; k < m; ++k) {
    prep(k);
    c.cx((k - 1) % n, k % n);
    retire(k - 1);
  }
  cap(m - 1);
  retire(m - 1);
  return c;
}

/// Repeat-until-success over k/2 ancilla-data pairs. Every pair runs six
/// rounds of rotate, entangle, measure, reset and conditional correction;
/// pair 0's last round is the repeated block, successful on outcome 0.
inline Circuit rus(std::size_t k) {
  if (k < 2 || k % 2 != 0) throw InvalidSpec("RUS needs an even qubit count >= 2");
  constexpr std::size_t rounds = 6;
  constexpr double theta = std::numbers::pi / 3;
  const std::size_t pairs = k / 2;
  Circuit c(k, k);
  RepeatUntilSuccess block;
  for (std::size_t i = 0; i < pairs; ++i) {
    const std::size_t a = 2 * i;
    const std::size_t d = a + 1;
    const std::size_t ca = a;
    const std::size_t cd = d;
    c.h(a).h(d).cx(a, d);
    for (std::size_t r = 0; r < rounds; ++r) {
      if (i == 0 && r + 1 == rounds) block.begin = c.size();
      c.ry(theta, a).cx(a, d).measure(a, ca).reset(a);
      c.add(Instruction::gate(OpKind::X, d).if_bit(ca, 1));
      if (i == 0 && r + 1 == rounds) block.end = c.size();
    }
    c.cx(d, a).measure(a, ca).measure(d, cd);
  }
  block.clbit = 0;
  block.success_value = 0;
  block.max_repeats = 16;
  c.set_rus(block);
  return c;
}

inline Circuit ghz(std::size_t k) {
  if (k < 2) throw InvalidSpec("GHZ needs at least 2 qubits");
  Circuit c(k, k);
  c.h(0);
  for (std::size_t q = 0; q + 1 < k; ++q) c.cx(q, q + 1);
  for (std::size_t q = 0; q < k; ++q) c.measure(q, q);
  return c;
}

inline Circuit gen_benchmark(const BenchmarkSpec& spec) {
  switch (spec.family) {
    case BenchmarkFamily::BvReuse: return bv_reuse(spec.m, spec.n);
    case BenchmarkFamily::HLadder: return h_ladder(spec.m, spec.n);
    case BenchmarkFamily::Rus: return rus(spec.m);
    case BenchmarkFamily::Ghz: return ghz(spec.m);
    case BenchmarkFamily::QasmFile:
      if (spec.path.empty()) throw InvalidSpec("QASM benchmark without a path");
      try {
        return qasm::load(spec.path);
      } catch (const qasm::QasmError& e) {
        throw InvalidSpec(spec.path + ": " + e.what());
      }
  }
  throw InvalidSpec("unknown benchmark family");
}

/// Parses "bv:4-2", "hladder:3-2", "rus:6", "ghz:5" or "qasm:<path>".
inline BenchmarkSpec parse_benchmark_spec(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidSpec("benchmark spec needs family:args: " + text);
  const std::string fam = text.substr(0, colon);
  const std::string args = text.substr(colon + 1);
  if (fam == "qasm") return BenchmarkSpec::qasm_file(args);
  const auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw InvalidSpec("bad number in benchmark spec: " + text);
    }
    return static_cast<std::size_t>(std::stoul(s));
  };
  if (fam == "rus") return BenchmarkSpec::rus(number(args));
  if (fam == "ghz") return BenchmarkSpec::ghz(number(args));
  const auto dash = args.find('-');
  if (dash == std::string::npos) throw InvalidSpec("expected m-n in benchmark spec: " + text);
  const std::size_t m = number(args.substr(0, dash));
  const std::size_t n = number(args.substr(dash + 1));
  if (fam == "bv") return BenchmarkSpec::bv(m, n);
  if (fam == "hladder") return BenchmarkSpec::h_ladder(m, n);
  throw InvalidSpec("unknown benchmark family: " + fam);
}

/// The eight repeat-until-success benchmarks, 4 to 18 qubits.
inline std::vector<BenchmarkSpec> rus_suite() {
  std::vector<BenchmarkSpec> out;
  for (std::size_t k = 4; k <= 18; k += 2) out.push_back(BenchmarkSpec::rus(k));
  return out;
}

/// The eleven reuse and MCM benchmarks; `qasm_dir` holds the two file
/// stand-ins.
inline std::vector<BenchmarkSpec> reuse_suite(const std::string& qasm_dir) {
  return {BenchmarkSpec::bv(4, 2),
          BenchmarkSpec::bv(7, 2),
          BenchmarkSpec::bv(10, 2),
          BenchmarkSpec::bv(6, 3),
          BenchmarkSpec::h_ladder(3, 2),
          BenchmarkSpec::h_ladder(5, 2),
          BenchmarkSpec::h_ladder(7, 2),
          BenchmarkSpec::h_ladder(6, 3),
          BenchmarkSpec::qasm_file(qasm_dir + "/ipea_standin.qasm", "IPEA"),
          BenchmarkSpec::qasm_file(qasm_dir + "/shor5_standin.qasm", "Shor5"),
          BenchmarkSpec::ghz(5)};
}

}  // namespace mera

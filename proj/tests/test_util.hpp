#pragma once

#include <cstddef>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mera/circuit.hpp"
#include "mera/device.hpp"

namespace mera::test {

/// All-to-all coupling, for timing tests on arbitrary logical circuits.
inline DeviceModel complete_device(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) edges.emplace_back(a, b);
  }
  return DeviceModel("complete", n, edges);
}

inline std::string source_path(const std::string& rel) {
  return std::string(MERA_SOURCE_DIR) + "/" + rel;
}

inline OpKind random_1q_kind(std::mt19937_64& gen) {
  static constexpr OpKind kinds[] = {OpKind::H,  OpKind::X,  OpKind::Y,  OpKind::Z,
                                     OpKind::SX, OpKind::RX, OpKind::RY, OpKind::RZ};
  return kinds[gen() % 8];
}

inline double random_angle(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> d(-std::numbers::pi, std::numbers::pi);
  return d(gen);
}

/// Gates only (1Q and CX/SWAP).
inline Circuit random_unitary_circuit(std::mt19937_64& gen, std::size_t n, std::size_t len) {
  Circuit c(n, 0);
  for (std::size_t i = 0; i < len; ++i) {
    const auto roll = gen() % 10;
    if (n >= 2 && roll < 4) {
      const std::size_t a = gen() % n;
      std::size_t b = gen() % (n - 1);
      if (b >= a) ++b;
      if (roll == 0) {
        c.swap(a, b);
      } else {
        c.cx(a, b);
      }
    } else {
      const OpKind k = random_1q_kind(gen);
      c.add(Instruction::gate(k, gen() % n, is_parametric(k) ? random_angle(gen) : 0.0));
    }
  }
  return c;
}

/// Mixed dynamic circuit: gates, measure, reset, barrier, delay and
/// conditionals on bits already written.
inline Circuit random_circuit(std::mt19937_64& gen, std::size_t n, std::size_t len,
                              bool with_conditions) {
  const std::size_t nc = n + 1;
  Circuit c(n, nc);
  std::vector<bool> written(nc, false);
  for (std::size_t i = 0; i < len; ++i) {
    const auto roll = gen() % 20;
    Instruction inst;
    if (n >= 2 && roll < 6) {
      const std::size_t a = gen() % n;
      std::size_t b = gen() % (n - 1);
      if (b >= a) ++b;
      inst = roll == 0 ? Instruction::swap(a, b) : Instruction::cx(a, b);
    } else if (roll < 9) {
      const std::size_t cb = gen() % nc;
      inst = Instruction::measure(gen() % n, cb);
    } else if (roll < 11) {
      inst = Instruction::reset(gen() % n);
    } else if (roll == 11) {
      inst = Instruction::barrier({gen() % n});
    } else if (roll == 12) {
      inst = Instruction::delay(gen() % n, static_cast<std::int64_t>(gen() % 500));
    } else {
      const OpKind k = random_1q_kind(gen);
      inst = Instruction::gate(k, gen() % n, is_parametric(k) ? random_angle(gen) : 0.0);
    }
    if (with_conditions && inst.kind != OpKind::Barrier && gen() % 5 == 0) {
      std::vector<std::size_t> ok;
      for (std::size_t b = 0; b < nc; ++b) {
        if (written[b]) ok.push_back(b);
      }
      if (!ok.empty()) inst.if_bit(ok[gen() % ok.size()], static_cast<int>(gen() % 2));
    }
    if (inst.kind == OpKind::Measure) written[inst.clbit] = true;
    c.add(std::move(inst));
  }
  return c;
}

}  // namespace mera::test

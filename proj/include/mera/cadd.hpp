#pragma once

// Context-aware dynamic decoupling: X-X pairs placed inside ALAP idle
// windows, with awareness of concurrent MCM windows on coupled qubits.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "mera/circuit.hpp"
#include "mera/device.hpp"
#include "mera/errors.hpp"
#include "mera/schedule.hpp"

namespace mera {

struct CaddConfig {
  /// Windows not adjacent to an MCM need at least this length; negative
  /// means two thirds of the device MCM window.
  std::int64_t min_dd_window = -1;
  /// Edge padding; negative means one 1Q-gate duration.
  std::int64_t gap = -1;
  bool stagger = true;
};

struct DdPlacement {
  std::size_t qubit = 0;
  std::size_t next = 0;  // instruction the pulses precede in program order
  std::int64_t first = 0;
  std::int64_t second = 0;
  bool neighbor_case = false;
};

struct CaddResult {
  Circuit circuit;
  Schedule schedule;
  std::vector<DdPlacement> placements;
  std::size_t pulses = 0;
};

namespace detail {

inline bool overlaps(std::int64_t a0, std::int64_t a1, std::int64_t b0, std::int64_t b1) {
  return a0 < b1 && b0 < a1;
}

}  // namespace detail

inline CaddResult cadd_insert(const Circuit& circuit, const Schedule& schedule,
                              const DeviceModel& device, const CaddConfig& config = {}) {
  const Durations& du = device.durations();
  const std::int64_t d_x = du.one_qubit;
  const std::int64_t gap = config.gap >= 0 ? config.gap : du.one_qubit;
  const std::int64_t min_window =
      config.min_dd_window >= 0 ? config.min_dd_window : 2 * du.mcm_window() / 3;

  std::vector<DdPlacement> placed;
  for (std::size_t q = 0; q < schedule.idle.size(); ++q) {
    for (const IdleWindow& w : schedule.idle[q]) {
      // Barriers and delays inside the window come before the pulses.
      std::int64_t open = w.start;
      for (std::size_t i = w.before + 1; i < w.after; ++i) {
        const auto& qs = circuit[i].qubits;
        if (std::find(qs.begin(), qs.end(), q) != qs.end()) open = std::max(open, schedule.end(i));
      }
      const std::int64_t len = w.end - open;
      const bool neighbor_case = w.neighbor_mcm && len >= 2 * d_x + 2 * gap;
      if (!neighbor_case && !(len >= min_window && len >= 2 * d_x + 2 * gap)) continue;
      // Pulse centres at a quarter and three quarters of the padded interval.
      const std::int64_t lo = open + gap;
      const std::int64_t hi = w.end - gap;
      const std::int64_t inner = hi - lo;
      std::int64_t first = lo + inner / 4 - d_x / 2;
      std::int64_t second = lo + (3 * inner) / 4 - d_x / 2;
      first = std::max(first, lo);
      second = std::min(std::max(second, first + d_x), hi - d_x);
      if (config.stagger) {
        // Shift away from pulses already placed on coupled qubits.
        auto clashes = [&](std::int64_t a, std::int64_t b) {
          for (const auto& p : placed) {
            if (!device.coupled(p.qubit, q)) continue;
            for (std::int64_t t : {p.first, p.second}) {
              if (detail::overlaps(a, a + d_x, t, t + d_x) ||
                  detail::overlaps(b, b + d_x, t, t + d_x)) {
                return true;
              }
            }
          }
          return false;
        };
        if (clashes(first, second)) {
          for (std::int64_t shift : {d_x, -d_x, 2 * d_x, -2 * d_x}) {
            const std::int64_t a = first + shift;
            const std::int64_t b = second + shift;
            if (a >= lo && b + d_x <= hi && b >= a + d_x && !clashes(a, b)) {
              first = a;
              second = b;
              break;
            }
          }
        }
      }
      placed.push_back({q, w.after, first, second, neighbor_case});
    }
  }

  // Rebuild the instruction list with the pulses right before the
  // instruction that closes each window.
  std::map<std::size_t, std::vector<const DdPlacement*>> before;
  for (const auto& p : placed) before[p.next].push_back(&p);
  CaddResult out;
  out.circuit = Circuit(circuit.num_qubits(), circuit.num_clbits());
  Schedule& s = out.schedule;
  std::vector<std::size_t> new_index(circuit.size());
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    if (auto it = before.find(i); it != before.end()) {
      for (const DdPlacement* p : it->second) {
        for (std::int64_t t : {p->first, p->second}) {
          out.circuit.add(Instruction::gate(OpKind::X, p->qubit).with_label(dd_label));
          s.start.push_back(t);
          s.duration.push_back(d_x);
          ++out.pulses;
        }
      }
    }
    new_index[i] = out.circuit.size();
    out.circuit.add(circuit[i]);
    s.start.push_back(schedule.start[i]);
    s.duration.push_back(schedule.duration[i]);
  }
  if (const auto& rus = circuit.rus()) {
    // Pulses ahead of the first body instruction stay outside the body.
    RepeatUntilSuccess r = *rus;
    r.begin = new_index[rus->begin];
    r.end = new_index[rus->end - 1] + 1;
    out.circuit.set_rus(r);
  }
  finalize_schedule(out.circuit, s, device);
  s.total = std::max(s.total, schedule.total);
  out.placements = std::move(placed);
  return out;
}

/// Throws when a DD pulse intersects its host qubit's own MCM window or
/// when a window received an odd number of pulses.
inline void check_dd_placement(const Circuit& circuit, const Schedule& s) {
  std::size_t pulses = 0;
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    if (!is_dd_pulse(circuit[i])) continue;
    ++pulses;
    const std::size_t q = circuit[i].qubits[0];
    for (const auto& m : s.mcm_windows) {
      if (m.qubit == q && detail::overlaps(s.start[i], s.end(i), m.start, m.end)) {
        throw InvariantViolation("DD pulse inside its own qubit's MCM window");
      }
    }
  }
  if (pulses % 2 != 0) throw InvariantViolation("odd number of DD pulses");
}

}  // namespace mera

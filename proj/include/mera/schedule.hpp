#pragma once

// ALAP timing over device durations and the idle windows it exposes.
// Circuits here are physical: qubit indices are device qubits.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "mera/analysis.hpp"
#include "mera/circuit.hpp"
#include "mera/dag.hpp"
#include "mera/device.hpp"
#include "mera/errors.hpp"

namespace mera {

inline constexpr const char* dd_label = "dd";

struct IdleWindow {
  std::size_t qubit = 0;
  std::int64_t start = 0;
  std::int64_t end = 0;
  bool concurrent_mcm = false;  // overlaps an MCM window on another qubit
  bool neighbor_mcm = false;    // overlaps an MCM window on a coupled qubit
  std::size_t before = 0;       // instruction ending at `start`
  std::size_t after = 0;        // instruction starting at `end`

  [[nodiscard]] std::int64_t length() const noexcept { return end - start; }
};

struct McmWindow {
  std::size_t qubit = 0;
  std::int64_t start = 0;
  std::int64_t end = 0;
  std::size_t measure = 0;
};

struct Schedule {
  std::vector<std::int64_t> start;
  std::vector<std::int64_t> duration;
  std::int64_t total = 0;
  std::vector<std::vector<IdleWindow>> idle;  // per qubit
  std::vector<McmWindow> mcm_windows;

  [[nodiscard]] std::int64_t end(std::size_t i) const { return start[i] + duration[i]; }
};

inline std::int64_t instruction_duration(const Instruction& inst, const Durations& d) {
  switch (inst.kind) {
    case OpKind::CX: return d.two_qubit;
    case OpKind::Swap: return 3 * d.two_qubit;
    case OpKind::Measure: return d.measure;
    case OpKind::Reset: return d.reset;
    case OpKind::Barrier: return 0;
    case OpKind::Delay: return inst.duration;
    default: return d.one_qubit;
  }
}

[[nodiscard]] inline bool is_dd_pulse(const Instruction& inst) {
  return inst.kind == OpKind::X && inst.label == dd_label;
}

/// Instructions that occupy a qubit for idle-window purposes. Delays are
/// idling by definition and barriers take no time.
[[nodiscard]] inline bool occupies(const Instruction& inst) {
  return inst.kind != OpKind::Barrier && inst.kind != OpKind::Delay;
}

namespace detail {

inline void check_physical(const Circuit& circuit, const DeviceModel& device) {
  if (circuit.num_qubits() > device.num_qubits()) {
    throw InvariantViolation("circuit has more qubits than the device");
  }
  for (const auto& inst : circuit.instructions()) {
    if (is_two_qubit_gate(inst.kind) && !device.coupled(inst.qubits[0], inst.qubits[1])) {
      throw InvariantViolation("2Q gate on uncoupled pair " + std::to_string(inst.qubits[0]) +
                               "," + std::to_string(inst.qubits[1]));
    }
  }
}

/// Measure/reset windows of every MCM: measure start to the fused reset's
/// end, or the measure alone.
inline std::vector<McmWindow> collect_mcm_windows(const Circuit& circuit, const Schedule& s) {
  std::vector<McmWindow> out;
  const auto mcm = mid_circuit_measures(circuit);
  const auto fused = fused_resets(circuit);
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    if (!mcm[i]) continue;
    const std::int64_t end =
        fused[i] != std::numeric_limits<std::size_t>::max() ? s.end(fused[i]) : s.end(i);
    out.push_back({circuit[i].qubits[0], s.start[i], end, i});
  }
  return out;
}

}  // namespace detail

/// Interior gaps between consecutive occupying instructions on each qubit.
/// Leading time (qubit still in its initial state) and trailing time are not
/// idle windows. DD pulses occupy the qubit like any other gate.
inline std::vector<std::vector<IdleWindow>> idle_windows(const Circuit& circuit,
                                                         const Schedule& s,
                                                         const DeviceModel& device) {
  std::vector<std::vector<IdleWindow>> out(circuit.num_qubits());
  constexpr auto none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> last(circuit.num_qubits(), none);
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    if (!occupies(circuit[i])) continue;
    for (std::size_t q : circuit[i].qubits) {
      if (last[q] != none && s.start[i] > s.end(last[q])) {
        out[q].push_back({q, s.end(last[q]), s.start[i], false, false, last[q], i});
      }
      last[q] = i;
    }
  }
  for (auto& per_qubit : out) {
    for (auto& w : per_qubit) {
      for (const auto& m : s.mcm_windows) {
        if (m.qubit == w.qubit || m.end <= w.start || m.start >= w.end) continue;
        w.concurrent_mcm = true;
        if (m.qubit < device.num_qubits() && w.qubit < device.num_qubits() &&
            device.coupled(m.qubit, w.qubit)) {
          w.neighbor_mcm = true;
        }
      }
    }
  }
  return out;
}

/// Recomputes the derived parts (total, MCM windows, idle windows) from the
/// start/duration vectors.
inline void finalize_schedule(const Circuit& circuit, Schedule& s, const DeviceModel& device) {
  s.total = 0;
  for (std::size_t i = 0; i < circuit.size(); ++i) s.total = std::max(s.total, s.end(i));
  s.mcm_windows = detail::collect_mcm_windows(circuit, s);
  s.idle = idle_windows(circuit, s, device);
}

inline Schedule asap_schedule(const Circuit& circuit, const DeviceModel& device) {
  detail::check_physical(circuit, device);
  const Dag dag = build_dag(circuit);
  Schedule s;
  s.start.assign(circuit.size(), 0);
  s.duration.resize(circuit.size());
  for (std::size_t v = 0; v < circuit.size(); ++v) {
    s.duration[v] = instruction_duration(circuit[v], device.durations());
    for (std::size_t u : dag.predecessors(v)) s.start[v] = std::max(s.start[v], s.end(u));
  }
  finalize_schedule(circuit, s, device);
  return s;
}

/// Every instruction starts as late as its successors allow, anchored so the
/// total equals the critical path. A measurement fused with its reset is
/// placed so the reset begins exactly when the measurement ends.
inline Schedule alap_schedule(const Circuit& circuit, const DeviceModel& device) {
  detail::check_physical(circuit, device);
  const Dag dag = build_dag(circuit);
  const auto fused = fused_resets(circuit);
  constexpr auto none = std::numeric_limits<std::size_t>::max();

  // Critical path length in time.
  std::int64_t total = 0;
  {
    std::vector<std::int64_t> finish(circuit.size(), 0);
    for (std::size_t v = 0; v < circuit.size(); ++v) {
      std::int64_t st = 0;
      for (std::size_t u : dag.predecessors(v)) st = std::max(st, finish[u]);
      finish[v] = st + instruction_duration(circuit[v], device.durations());
      total = std::max(total, finish[v]);
    }
  }

  Schedule s;
  s.start.assign(circuit.size(), 0);
  s.duration.resize(circuit.size());
  for (std::size_t v = 0; v < circuit.size(); ++v) {
    s.duration[v] = instruction_duration(circuit[v], device.durations());
  }
  for (std::size_t v = circuit.size(); v-- > 0;) {
    std::int64_t latest_end = total;
    for (std::size_t w : dag.successors(v)) latest_end = std::min(latest_end, s.start[w]);
    s.start[v] = latest_end - s.duration[v];
    if (fused[v] != none) {
      // Pull the reset back against its measurement. Moving it earlier
      // cannot violate its successors and its only predecessor is v.
      s.start[fused[v]] = s.end(v);
    }
  }
  finalize_schedule(circuit, s, device);
  s.total = total;
  return s;
}

/// Throws InvariantViolation on overlapping instructions per qubit, on a
/// violated dependency, or on a split measure/reset.
inline void validate_schedule(const Circuit& circuit, const Schedule& s,
                              const DeviceModel& device) {
  if (s.start.size() != circuit.size() || s.duration.size() != circuit.size()) {
    throw InvariantViolation("schedule size differs from the circuit");
  }
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    if (s.start[i] < 0) throw InvariantViolation("negative start time");
    if (s.duration[i] != instruction_duration(circuit[i], device.durations())) {
      throw InvariantViolation("duration mismatch at instruction " + std::to_string(i));
    }
  }
  const Dag dag = build_dag(circuit);
  for (std::size_t u = 0; u < circuit.size(); ++u) {
    for (std::size_t v : dag.successors(u)) {
      if (s.start[v] < s.end(u)) {
        throw InvariantViolation("dependency " + std::to_string(u) + " -> " +
                                 std::to_string(v) + " violated");
      }
    }
  }
  std::vector<std::vector<std::size_t>> per_qubit(circuit.num_qubits());
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    if (s.duration[i] == 0) continue;
    for (std::size_t q : circuit[i].qubits) per_qubit[q].push_back(i);
  }
  for (auto& list : per_qubit) {
    std::sort(list.begin(), list.end(),
              [&](std::size_t a, std::size_t b) { return s.start[a] < s.start[b]; });
    for (std::size_t k = 1; k < list.size(); ++k) {
      if (s.start[list[k]] < s.end(list[k - 1])) {
        throw InvariantViolation("instructions " + std::to_string(list[k - 1]) + " and " +
                                 std::to_string(list[k]) + " overlap");
      }
    }
  }
  const auto fused = fused_resets(circuit);
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    if (fused[i] != std::numeric_limits<std::size_t>::max() && s.start[fused[i]] != s.end(i)) {
      throw InvariantViolation("measure and reset at " + std::to_string(i) +
                               " are not contiguous");
    }
  }
  std::int64_t total = 0;
  for (std::size_t i = 0; i < circuit.size(); ++i) total = std::max(total, s.end(i));
  if (total > s.total) throw InvariantViolation("schedule total is too short");
}

}  // namespace mera

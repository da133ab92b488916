#pragma once

// Structural analyses consumed by layout, routing and the metrics tables.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "mera/circuit.hpp"
#include "mera/dag.hpp"

namespace mera {

/// Logical interaction graph; edge multiplicity is the number of 2Q gates
/// between the two qubits.
class InteractionGraph {
 public:
  explicit InteractionGraph(std::size_t num_nodes = 0)
      : num_nodes_(num_nodes), weighted_degree_(num_nodes, 0) {}

  void add(std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    ++edges_[{a, b}];
    ++weighted_degree_[a];
    ++weighted_degree_[b];
  }

  [[nodiscard]] std::size_t num_nodes() const noexcept { return num_nodes_; }
  [[nodiscard]] std::size_t multiplicity(std::size_t a, std::size_t b) const {
    if (a > b) std::swap(a, b);
    auto it = edges_.find({a, b});
    return it == edges_.end() ? 0 : it->second;
  }
  [[nodiscard]] const std::map<std::pair<std::size_t, std::size_t>, std::size_t>&
  edges() const noexcept {
    return edges_;
  }
  [[nodiscard]] std::size_t total_multiplicity() const {
    std::size_t t = 0;
    for (const auto& [e, m] : edges_) t += m;
    return t;
  }
  /// Number of 2Q gates the qubit takes part in.
  [[nodiscard]] std::size_t weighted_degree(std::size_t q) const {
    return weighted_degree_[q];
  }
  [[nodiscard]] std::vector<std::size_t> neighbors(std::size_t q) const {
    std::vector<std::size_t> out;
    for (const auto& [e, m] : edges_) {
      if (e.first == q) out.push_back(e.second);
      if (e.second == q) out.push_back(e.first);
    }
    return out;
  }

 private:
  std::size_t num_nodes_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edges_;
  std::vector<std::size_t> weighted_degree_;
};

inline InteractionGraph interaction_graph(const Circuit& circuit) {
  InteractionGraph g(circuit.num_qubits());
  for (const auto& inst : circuit.instructions()) {
    if (is_two_qubit_gate(inst.kind)) g.add(inst.qubits[0], inst.qubits[1]);
  }
  return g;
}

/// A Measure is mid-circuit when a later gate or reset acts on its qubit.
/// Trailing measurements and barriers do not make an earlier one mid-circuit.
inline std::vector<bool> mid_circuit_measures(const Circuit& circuit) {
  std::vector<bool> mcm(circuit.size(), false);
  std::vector<bool> later_op(circuit.num_qubits(), false);
  for (std::size_t i = circuit.size(); i-- > 0;) {
    const Instruction& inst = circuit[i];
    if (inst.kind == OpKind::Measure) {
      mcm[i] = later_op[inst.qubits[0]];
    } else if (inst.kind != OpKind::Barrier) {
      for (std::size_t q : inst.qubits) later_op[q] = true;
    }
  }
  return mcm;
}

using McmIntensity = std::vector<std::size_t>;

inline McmIntensity mcm_intensity(const Circuit& circuit) {
  McmIntensity out(circuit.num_qubits(), 0);
  const auto mcm = mid_circuit_measures(circuit);
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    if (mcm[i]) ++out[circuit[i].qubits[0]];
  }
  return out;
}

/// For every instruction index, the index of the Reset fused with it (an
/// unconditional Measure whose next instruction on the same qubit is an
/// unconditional Reset), or npos.
inline std::vector<std::size_t> fused_resets(const Circuit& circuit) {
  constexpr auto npos = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> out(circuit.size(), npos);
  std::vector<std::size_t> pending(circuit.num_qubits(), npos);
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const Instruction& inst = circuit[i];
    if (inst.kind == OpKind::Reset && !inst.condition &&
        pending[inst.qubits[0]] != npos) {
      out[pending[inst.qubits[0]]] = i;
    }
    for (std::size_t q : inst.qubits) pending[q] = npos;
    if (inst.kind == OpKind::Measure && !inst.condition) {
      pending[inst.qubits[0]] = i;
    }
  }
  return out;
}

[[nodiscard]] constexpr bool counts_toward_path(OpKind k) noexcept {
  return k != OpKind::Barrier && k != OpKind::Delay;
}

/// Longest dependency chain measured in instructions; barriers and delays
/// are transparent.
inline std::size_t critical_path_length(const Circuit& circuit) {
  const Dag dag = build_dag(circuit);
  std::vector<std::size_t> depth(circuit.size(), 0);
  std::size_t best = 0;
  for (std::size_t v = 0; v < circuit.size(); ++v) {
    std::size_t d = 0;
    for (std::size_t u : dag.predecessors(v)) d = std::max(d, depth[u]);
    depth[v] = d + (counts_toward_path(circuit[v].kind) ? 1 : 0);
    best = std::max(best, depth[v]);
  }
  return best;
}

inline std::size_t count_swaps(const Circuit& circuit) {
  return static_cast<std::size_t>(
      std::count_if(circuit.instructions().begin(), circuit.instructions().end(),
                    [](const Instruction& i) { return i.kind == OpKind::Swap; }));
}

inline std::size_t count_two_qubit_gates(const Circuit& circuit) {
  return static_cast<std::size_t>(std::count_if(
      circuit.instructions().begin(), circuit.instructions().end(),
      [](const Instruction& i) { return is_two_qubit_gate(i.kind); }));
}

/// Qubits touched by anything other than a barrier.
inline std::vector<std::size_t> active_qubits(const Circuit& circuit) {
  std::vector<bool> seen(circuit.num_qubits(), false);
  for (const auto& inst : circuit.instructions()) {
    if (inst.kind == OpKind::Barrier) continue;
    for (std::size_t q : inst.qubits) seen[q] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < seen.size(); ++q) {
    if (seen[q]) out.push_back(q);
  }
  return out;
}

}  // namespace mera

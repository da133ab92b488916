#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "mera/circuit.hpp"

namespace mera {

/// Dependency DAG over instruction indices. u -> v when v is the next
/// instruction after u on a shared qubit or a shared classical bit (measure
/// target or condition bit). Edges always point forward in program order.
class Dag {
 public:
  Dag() = default;
  explicit Dag(std::size_t n) : succ_(n), pred_(n) {}

  [[nodiscard]] std::size_t size() const noexcept { return succ_.size(); }
  [[nodiscard]] const std::vector<std::size_t>& successors(std::size_t u) const {
    return succ_[u];
  }
  [[nodiscard]] const std::vector<std::size_t>& predecessors(std::size_t v) const {
    return pred_[v];
  }
  [[nodiscard]] std::size_t num_edges() const noexcept {
    std::size_t e = 0;
    for (const auto& s : succ_) e += s.size();
    return e;
  }
  [[nodiscard]] bool has_edge(std::size_t u, std::size_t v) const {
    return std::find(succ_[u].begin(), succ_[u].end(), v) != succ_[u].end();
  }

  void add_edge(std::size_t u, std::size_t v) {
    if (u == v || has_edge(u, v)) return;
    succ_[u].push_back(v);
    pred_[v].push_back(u);
  }

 private:
  std::vector<std::vector<std::size_t>> succ_;
  std::vector<std::vector<std::size_t>> pred_;
};

inline Dag build_dag(const Circuit& circuit) {
  constexpr auto none = std::numeric_limits<std::size_t>::max();
  Dag dag(circuit.size());
  std::vector<std::size_t> last_on_qubit(circuit.num_qubits(), none);
  std::vector<std::size_t> last_on_clbit(circuit.num_clbits(), none);
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const Instruction& inst = circuit[i];
    for (std::size_t q : inst.qubits) {
      if (last_on_qubit[q] != none) dag.add_edge(last_on_qubit[q], i);
      last_on_qubit[q] = i;
    }
    auto touch_bit = [&](std::size_t c) {
      if (last_on_clbit[c] != none) dag.add_edge(last_on_clbit[c], i);
      last_on_clbit[c] = i;
    };
    if (inst.condition) touch_bit(inst.condition->clbit);
    if (inst.kind == OpKind::Measure &&
        !(inst.condition && inst.condition->clbit == inst.clbit)) {
      touch_bit(inst.clbit);
    }
  }
  return dag;
}

}  // namespace mera

#pragma once

// SWAP insertion with two-level scoring: a SABRE-style distance heuristic
// over the front layer and look-ahead window, then a tie-break among
// near-optimal candidates by the MCM error the moved qubits would land on.

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
#include "mera/layout.hpp"

namespace mera {

struct RoutingConfig {
  std::size_t look_ahead = 6;
  double delta_swap = 0.008;
  double lookahead_weight = 0.5;
  /// false: candidates are ranked by distance alone, ties by edge index.
  bool use_level2 = true;
  /// Swaps without progress before the front gate is forced along a
  /// shortest path; 0 picks a bound from the device diameter.
  std::size_t stall_limit = 0;
  /// Hard cap on inserted swaps; 0 picks one from the circuit size.
  std::size_t max_swaps = 0;

  /// Distance-only routing: Level 1 with exact ties and no MCM term.
  static RoutingConfig distance_only() {
    RoutingConfig c;
    c.use_level2 = false;
    c.delta_swap = 0.0;
    return c;
  }
};

struct SwapDecision {
  std::size_t edge = 0;
  std::size_t a = 0;  // physical endpoints
  std::size_t b = 0;
  double level1 = 0.0;
  double level2 = 0.0;
  std::size_t near_optimal = 0;  // candidates within delta of the best Level 1
  bool forced = false;
};

struct RoutingResult {
  Circuit circuit;  // physical: qubit indices are device qubits
  Layout initial;
  Layout final;
  std::size_t swaps = 0;
  std::vector<SwapDecision> trace;
};

namespace detail {

class Router {
 public:
  Router(const Circuit& logical, const DeviceModel& device, const RoutingConfig& config,
         Circuit& out, Layout& layout, RoutingResult& result)
      : logical_(logical),
        device_(device),
        config_(config),
        dist_(distance_matrix(device)),
        out_(out),
        layout_(layout),
        result_(result) {
    const auto mcm = mid_circuit_measures(logical);
    remaining_mcm_.assign(logical.num_qubits(), 0);
    for (std::size_t i = 0; i < logical.size(); ++i) {
      if (mcm[i]) ++remaining_mcm_[logical[i].qubits[0]];
    }
    is_mcm_ = mcm;
    stall_limit_ = config.stall_limit ? config.stall_limit : 2 * dist_.diameter() + 4;
    max_swaps_ = config.max_swaps
                     ? config.max_swaps
                     : 1000 + 10 * (dist_.diameter() + 1) * (count_two_qubit_gates(logical) + 1);
  }

  /// Routes instructions [lo, hi) of the logical circuit; returns the
  /// physical swaps it inserted, in order.
  std::vector<std::pair<std::size_t, std::size_t>> route_segment(std::size_t lo, std::size_t hi) {
    Circuit seg(logical_.num_qubits(), logical_.num_clbits());
    for (std::size_t i = lo; i < hi; ++i) seg.add(logical_[i]);
    const Dag dag = build_dag(seg);
    const std::size_t n = seg.size();
    std::vector<std::size_t> pending(n);
    for (std::size_t v = 0; v < n; ++v) pending[v] = dag.predecessors(v).size();
    std::vector<bool> done(n, false);
    std::vector<std::size_t> front;
    for (std::size_t v = 0; v < n; ++v) {
      if (pending[v] == 0) front.push_back(v);
    }
    std::vector<std::pair<std::size_t, std::size_t>> swaps;
    std::size_t since_progress = 0;
    std::size_t last_edge = DeviceModel::npos;

    while (!front.empty()) {
      bool progressed = false;
      for (std::size_t k = 0; k < front.size();) {
        const std::size_t v = front[k];
        const Instruction& inst = seg[v];
        if (is_two_qubit_gate(inst.kind) &&
            !device_.coupled(layout_.physical(inst.qubits[0]), layout_.physical(inst.qubits[1]))) {
          ++k;
          continue;
        }
        emit(inst, lo + v);
        done[v] = true;
        front.erase(front.begin() + static_cast<std::ptrdiff_t>(k));
        for (std::size_t w : dag.successors(v)) {
          if (--pending[w] == 0) front.push_back(w);
        }
        progressed = true;
      }
      if (progressed) {
        since_progress = 0;
        std::sort(front.begin(), front.end());
        continue;
      }
      if (front.empty()) break;

      if (since_progress >= stall_limit_) {
        force_route(seg[front.front()], swaps);
        since_progress = 0;
        last_edge = DeviceModel::npos;
        continue;
      }
      const auto window = lookahead(seg, dag, done, front);
      const SwapDecision d = choose_swap(seg, front, window, last_edge);
      apply_swap(d, swaps);
      last_edge = d.edge;
      ++since_progress;
    }
    return swaps;
  }

  void apply_swap(const SwapDecision& d, std::vector<std::pair<std::size_t, std::size_t>>& swaps) {
    if (result_.swaps >= max_swaps_) {
      throw RoutingStalled("routing exceeded " + std::to_string(max_swaps_) + " swaps");
    }
    out_.swap(d.a, d.b);
    layout_.swap_physical(d.a, d.b);
    swaps.emplace_back(d.a, d.b);
    ++result_.swaps;
    result_.trace.push_back(d);
  }

  void emit(const Instruction& inst, std::size_t global_index) {
    Instruction p = inst;
    for (auto& q : p.qubits) q = layout_.physical(q);
    out_.add(std::move(p));
    if (is_mcm_[global_index]) --remaining_mcm_[inst.qubits[0]];
  }

 private:
  /// 2Q gates outside the front whose chain of unexecuted 2Q predecessors,
  /// counted from the front, is at most look_ahead long.
  std::vector<std::size_t> lookahead(const Circuit& seg, const Dag& dag,
                                     const std::vector<bool>& done,
                                     const std::vector<std::size_t>& front) const {
    std::vector<std::size_t> out;
    if (config_.look_ahead == 0) return out;
    std::vector<bool> in_front(seg.size(), false);
    for (std::size_t v : front) in_front[v] = true;
    constexpr auto far = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> layer(seg.size(), 0);
    for (std::size_t v = 0; v < seg.size(); ++v) {
      if (done[v]) continue;
      std::size_t l = 0;
      for (std::size_t u : dag.predecessors(v)) {
        if (done[u]) continue;
        if (layer[u] == far) {
          l = far;
          break;
        }
        l = std::max(l, layer[u] + (is_two_qubit_gate(seg[u].kind) ? 1 : 0));
      }
      if (l > config_.look_ahead) l = far;
      layer[v] = l;
      if (l != far && !in_front[v] && is_two_qubit_gate(seg[v].kind)) out.push_back(v);
    }
    return out;
  }

  [[nodiscard]] double gate_distance(const Instruction& g) const {
    return static_cast<double>(
        dist_(layout_.physical(g.qubits[0]), layout_.physical(g.qubits[1])));
  }

  [[nodiscard]] double level1(const Circuit& seg, const std::vector<std::size_t>& front,
                              const std::vector<std::size_t>& window) const {
    double f = 0.0;
    for (std::size_t v : front) {
      if (is_two_qubit_gate(seg[v].kind)) f += gate_distance(seg[v]);
    }
    double e = 0.0;
    for (std::size_t v : window) e += gate_distance(seg[v]);
    return f + config_.lookahead_weight * e;
  }

  /// MCM error the logical occupants of a and b would sit on after the
  /// swap, weighted by how many MCMs each still has to perform.
  [[nodiscard]] double level2(std::size_t a, std::size_t b) const {
    double s = 0.0;
    if (layout_.is_used(a)) {
      s += static_cast<double>(remaining_mcm_[layout_.logical(a)]) * device_.qubit(b).mcm_error;
    }
    if (layout_.is_used(b)) {
      s += static_cast<double>(remaining_mcm_[layout_.logical(b)]) * device_.qubit(a).mcm_error;
    }
    return s;
  }

  SwapDecision choose_swap(const Circuit& seg, const std::vector<std::size_t>& front,
                           const std::vector<std::size_t>& window, std::size_t last_edge) {
    std::vector<bool> touch(device_.num_qubits(), false);
    for (std::size_t v : front) {
      if (!is_two_qubit_gate(seg[v].kind)) continue;
      for (std::size_t q : seg[v].qubits) touch[layout_.physical(q)] = true;
    }
    std::vector<SwapDecision> cands;
    for (std::size_t e = 0; e < device_.num_edges(); ++e) {
      const auto& c = device_.edge(e);
      if (!touch[c.a] && !touch[c.b]) continue;
      if (e == last_edge) continue;
      SwapDecision d;
      d.edge = e;
      d.a = c.a;
      d.b = c.b;
      layout_.swap_physical(c.a, c.b);
      d.level1 = level1(seg, front, window);
      layout_.swap_physical(c.a, c.b);
      d.level2 = config_.use_level2 ? level2(c.a, c.b) : 0.0;
      cands.push_back(d);
    }
    if (cands.empty()) {
      // Only the reverse of the previous swap touches the front.
      const auto& c = device_.edge(last_edge);
      cands.push_back({last_edge, c.a, c.b, 0.0, 0.0, 0, false});
    }
    double best1 = cands.front().level1;
    for (const auto& c : cands) best1 = std::min(best1, c.level1);
    const SwapDecision* pick = nullptr;
    std::size_t near = 0;
    for (const auto& c : cands) {
      if (c.level1 > best1 + config_.delta_swap) continue;
      ++near;
      if (!pick || c.level2 < pick->level2) pick = &c;
    }
    SwapDecision d = *pick;
    d.near_optimal = near;
    return d;
  }

  /// Walks the first qubit of a gate toward the second along a shortest
  /// path until they are adjacent.
  void force_route(const Instruction& g, std::vector<std::pair<std::size_t, std::size_t>>& swaps) {
    std::size_t pa = layout_.physical(g.qubits[0]);
    const std::size_t pb = layout_.physical(g.qubits[1]);
    while (dist_(pa, pb) > 1) {
      std::size_t step = DeviceModel::npos;
      for (std::size_t nb : device_.neighbors(pa)) {
        if (dist_(nb, pb) + 1 == dist_(pa, pb)) {
          step = nb;
          break;
        }
      }
      SwapDecision d;
      d.edge = device_.edge_index(pa, step);
      d.a = std::min(pa, step);
      d.b = std::max(pa, step);
      d.forced = true;
      apply_swap(d, swaps);
      pa = step;
    }
  }

  const Circuit& logical_;
  const DeviceModel& device_;
  RoutingConfig config_;
  DistanceMatrix dist_;
  Circuit& out_;
  Layout& layout_;
  RoutingResult& result_;
  std::vector<std::size_t> remaining_mcm_;
  std::vector<bool> is_mcm_;
  std::size_t stall_limit_ = 0;
  std::size_t max_swaps_ = 0;
};

}  // namespace detail

/// Routes a logical circuit from a total initial layout. A
/// repeat-until-success body is routed on its own and closed with the
/// reverse of its swaps, so every repetition starts from the same mapping.
inline RoutingResult route(const Circuit& circuit, const Layout& initial, const DeviceModel& device,
                           const RoutingConfig& config = {}) {
  if (!initial.total() || initial.num_logical() != circuit.num_qubits() ||
      initial.num_physical() != device.num_qubits()) {
    throw InvariantViolation("routing needs a total layout of the circuit onto the device");
  }
  RoutingResult r;
  r.initial = initial;
  r.circuit = Circuit(device.num_qubits(), circuit.num_clbits());
  Layout layout = initial;
  detail::Router router(circuit, device, config, r.circuit, layout, r);
  const auto& rus = circuit.rus();
  if (!rus) {
    router.route_segment(0, circuit.size());
  } else {
    router.route_segment(0, rus->begin);
    const std::size_t body_begin = r.circuit.size();
    const auto swaps = router.route_segment(rus->begin, rus->end);
    std::vector<std::pair<std::size_t, std::size_t>> undo;
    for (auto it = swaps.rbegin(); it != swaps.rend(); ++it) {
      SwapDecision d;
      d.edge = device.edge_index(it->first, it->second);
      d.a = it->first;
      d.b = it->second;
      d.forced = true;
      router.apply_swap(d, undo);
    }
    RepeatUntilSuccess block = *rus;
    block.begin = body_begin;
    block.end = r.circuit.size();
    r.circuit.set_rus(block);
    router.route_segment(rus->end, circuit.size());
  }
  r.final = layout;
  return r;
}

/// Every 2Q gate of a physical circuit acts on a coupled pair.
inline bool respects_coupling(const Circuit& physical, const DeviceModel& device) {
  for (const auto& inst : physical.instructions()) {
    if (is_two_qubit_gate(inst.kind) && !device.coupled(inst.qubits[0], inst.qubits[1])) {
      return false;
    }
  }
  return true;
}

}  // namespace mera

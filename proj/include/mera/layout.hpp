#pragma once

// MCM-error-aware initial placement: seed scoring, greedy BFS expansion on
// the incremental cost, reordering variants and final selection.
//
// Every function taking a DeviceModel here expects the MCM-normalized map
// (normalize_mcm) unless it says otherwise.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "mera/analysis.hpp"
#include "mera/circuit.hpp"
#include "mera/dag.hpp"
#include "mera/device.hpp"
#include "mera/errors.hpp"

namespace mera {

struct SeedWeights {
  double alpha = 0.25;  // 1 - normalized MCM error
  double beta = 0.25;   // 1 - mean incident 2Q error
  double gamma = 0.1;   // 1 - 1Q error
  double delta = 0.2;   // 1 - readout error
  double epsilon = 0.2; // connectivity
};

struct LayoutWeights {
  double w_dist = 0.45;
  double w_mcm = 0.2;
  double w_2q = 0.2;
  double w_1q = 0.05;
  double w_ro = 0.1;
  std::size_t look_ahead = 6;
  double tau_mcm = 0.02;
  std::size_t n_seed = 4;
  SeedWeights seed;

  /// Placement that ignores MCM errors entirely (seed and cost terms).
  [[nodiscard]] LayoutWeights mcm_blind() const {
    LayoutWeights w = *this;
    w.w_mcm = 0.0;
    w.seed.alpha = 0.0;
    return w;
  }
  void validate() const {
    for (double v : {w_dist, w_mcm, w_2q, w_1q, w_ro, tau_mcm, seed.alpha, seed.beta,
                     seed.gamma, seed.delta, seed.epsilon}) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw InvariantViolation("layout weights must be finite and nonnegative");
      }
    }
    if (tau_mcm > 1.0) throw InvariantViolation("tau_MCM outside [0,1]");
    if (n_seed == 0) throw InvariantViolation("N_seed must be positive");
  }
};

/// Partial injective map from logical to physical qubits.
class Layout {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  Layout() = default;
  Layout(std::size_t num_logical, std::size_t num_physical)
      : l2p_(num_logical, npos), p2l_(num_physical, npos) {}

  static Layout trivial(std::size_t num_logical, std::size_t num_physical) {
    if (num_logical > num_physical) throw DeviceTooSmall("device has too few qubits");
    Layout l(num_logical, num_physical);
    for (std::size_t q = 0; q < num_logical; ++q) l.map(q, q);
    return l;
  }
  static Layout from_vector(const std::vector<std::size_t>& l2p, std::size_t num_physical) {
    Layout l(l2p.size(), num_physical);
    for (std::size_t q = 0; q < l2p.size(); ++q) {
      if (l2p[q] != npos) l.map(q, l2p[q]);
    }
    return l;
  }

  void map(std::size_t q, std::size_t p) {
    if (q >= l2p_.size() || p >= p2l_.size()) throw InvariantViolation("layout index out of range");
    if (l2p_[q] != npos) throw AlreadyMapped("logical qubit " + std::to_string(q) + " is mapped");
    if (p2l_[p] != npos) {
      throw OccupiedPhysical("physical qubit " + std::to_string(p) + " is occupied");
    }
    l2p_[q] = p;
    p2l_[p] = q;
    ++mapped_;
  }
  /// Exchanges the logical occupants of two physical qubits (either may be
  /// empty).
  void swap_physical(std::size_t a, std::size_t b) {
    std::swap(p2l_[a], p2l_[b]);
    if (p2l_[a] != npos) l2p_[p2l_[a]] = a;
    if (p2l_[b] != npos) l2p_[p2l_[b]] = b;
  }

  [[nodiscard]] std::size_t num_logical() const noexcept { return l2p_.size(); }
  [[nodiscard]] std::size_t num_physical() const noexcept { return p2l_.size(); }
  [[nodiscard]] std::size_t num_mapped() const noexcept { return mapped_; }
  [[nodiscard]] bool total() const noexcept { return mapped_ == l2p_.size(); }
  [[nodiscard]] std::size_t physical(std::size_t q) const { return l2p_.at(q); }
  [[nodiscard]] std::size_t logical(std::size_t p) const { return p2l_.at(p); }
  [[nodiscard]] bool is_mapped(std::size_t q) const { return l2p_.at(q) != npos; }
  [[nodiscard]] bool is_used(std::size_t p) const { return p2l_.at(p) != npos; }
  [[nodiscard]] const std::vector<std::size_t>& logical_to_physical() const noexcept {
    return l2p_;
  }
  [[nodiscard]] std::vector<std::size_t> used_physical() const {
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < p2l_.size(); ++p) {
      if (p2l_[p] != npos) out.push_back(p);
    }
    return out;
  }

  friend bool operator==(const Layout& a, const Layout& b) { return a.l2p_ == b.l2p_ && a.p2l_ == b.p2l_; }

 private:
  std::vector<std::size_t> l2p_;
  std::vector<std::size_t> p2l_;
  std::size_t mapped_ = 0;
};

/// Per-logical-qubit operation counts and the look-ahead window of 2Q gates
/// the layout cost consumes.
struct CircuitAnalysis {
  std::size_t num_qubits = 0;
  InteractionGraph graph;
  McmIntensity intensity;
  std::vector<std::size_t> n1q;
  std::vector<std::size_t> n2q;
  std::vector<std::size_t> nro;
  std::vector<std::pair<std::size_t, std::size_t>> window;
};

/// 2Q gates whose longest chain of preceding 2Q gates is shorter than
/// `look_ahead` form the window.
inline CircuitAnalysis analyze_circuit(const Circuit& circuit, std::size_t look_ahead) {
  CircuitAnalysis a;
  a.num_qubits = circuit.num_qubits();
  a.graph = interaction_graph(circuit);
  a.intensity = mcm_intensity(circuit);
  a.n1q.assign(a.num_qubits, 0);
  a.n2q.assign(a.num_qubits, 0);
  a.nro.assign(a.num_qubits, 0);
  const Dag dag = build_dag(circuit);
  std::vector<std::size_t> layer(circuit.size(), 0);
  for (std::size_t v = 0; v < circuit.size(); ++v) {
    const Instruction& inst = circuit[v];
    for (std::size_t u : dag.predecessors(v)) {
      layer[v] = std::max(layer[v], layer[u] + (is_two_qubit_gate(circuit[u].kind) ? 1 : 0));
    }
    if (is_single_qubit_gate(inst.kind)) ++a.n1q[inst.qubits[0]];
    if (inst.kind == OpKind::Measure) ++a.nro[inst.qubits[0]];
    if (is_two_qubit_gate(inst.kind)) {
      ++a.n2q[inst.qubits[0]];
      ++a.n2q[inst.qubits[1]];
      if (layer[v] < look_ahead) a.window.emplace_back(inst.qubits[0], inst.qubits[1]);
    }
  }
  return a;
}

inline double mcm_cost(std::size_t q, std::size_t p, const McmIntensity& intensity,
                       const DeviceModel& normalized) {
  return static_cast<double>(intensity.at(q)) * normalized.qubit(p).mcm_error;
}

struct SeedScore {
  std::size_t qubit = 0;
  double score = 0.0;
};

inline double seed_score(std::size_t p, const DeviceModel& d, const SeedWeights& w,
                         std::size_t max_degree) {
  const auto& q = d.qubit(p);
  const double conn =
      max_degree ? static_cast<double>(d.degree(p)) / static_cast<double>(max_degree) : 0.0;
  return w.alpha * (1.0 - q.mcm_error) + w.beta * (1.0 - d.mean_e2q(p)) +
         w.gamma * (1.0 - q.e1q) + w.delta * (1.0 - q.readout_error) + w.epsilon * conn;
}

/// Descending score; ties by lower physical index.
inline std::vector<SeedScore> seed_scores(const DeviceModel& normalized, const SeedWeights& w) {
  std::vector<SeedScore> out;
  const std::size_t md = normalized.max_degree();
  for (std::size_t p = 0; p < normalized.num_qubits(); ++p) {
    out.push_back({p, seed_score(p, normalized, w, md)});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SeedScore& a, const SeedScore& b) { return a.score > b.score; });
  return out;
}

/// Per-gate sum of hop distances over window gates with both endpoints
/// mapped.
inline double sabre_distance(const Layout& l, const CircuitAnalysis& a, const DistanceMatrix& dm) {
  double d = 0.0;
  for (const auto& [x, y] : a.window) {
    if (l.is_mapped(x) && l.is_mapped(y)) d += static_cast<double>(dm(l.physical(x), l.physical(y)));
  }
  return d;
}

/// Noise part of the cost for one mapped pair.
inline double pair_cost(std::size_t q, std::size_t p, const CircuitAnalysis& a,
                        const DeviceModel& d, const LayoutWeights& w) {
  const auto& cal = d.qubit(p);
  return w.w_mcm * mcm_cost(q, p, a.intensity, d) +
         w.w_2q * static_cast<double>(a.n2q[q]) * d.mean_e2q(p) +
         w.w_1q * static_cast<double>(a.n1q[q]) * cal.e1q +
         w.w_ro * static_cast<double>(a.nro[q]) * cal.readout_error;
}

/// Distance term plus the noise terms summed over mapped logical qubits in
/// ascending order.
inline double layout_cost(const Layout& l, const CircuitAnalysis& a, const DeviceModel& d,
                          const DistanceMatrix& dm, const LayoutWeights& w) {
  double cost = w.w_dist * sabre_distance(l, a, dm);
  for (std::size_t q = 0; q < l.num_logical(); ++q) {
    if (l.is_mapped(q)) cost += pair_cost(q, l.physical(q), a, d, w);
  }
  return cost;
}

/// Cost of I extended with (q, p).
inline double incremental_cost(const Layout& partial, std::size_t q, std::size_t p,
                               const CircuitAnalysis& a, const DeviceModel& d,
                               const DistanceMatrix& dm, const LayoutWeights& w) {
  if (partial.is_mapped(q)) throw AlreadyMapped("logical qubit " + std::to_string(q) + " is mapped");
  if (partial.is_used(p)) throw OccupiedPhysical("physical qubit " + std::to_string(p) + " is used");
  Layout next = partial;
  next.map(q, p);
  return layout_cost(next, a, d, dm, w);
}

/// Interaction degree desc, then MCM intensity desc, then index.
inline std::vector<std::size_t> expansion_order(const CircuitAnalysis& a) {
  std::vector<std::size_t> order(a.num_qubits);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const auto dx = a.graph.weighted_degree(x);
    const auto dy = a.graph.weighted_degree(y);
    if (dx != dy) return dx > dy;
    return a.intensity[x] > a.intensity[y];
  });
  return order;
}

namespace detail {

/// Hop distance from p to the nearest used physical qubit.
inline std::uint32_t distance_to_mapped(const Layout& l, std::size_t p, const DistanceMatrix& dm) {
  std::uint32_t best = DistanceMatrix::unreachable;
  for (std::size_t u = 0; u < l.num_physical(); ++u) {
    if (l.is_used(u)) best = std::min(best, dm(p, u));
  }
  return best;
}

}  // namespace detail

inline Layout expand_from_seed(std::size_t seed, const CircuitAnalysis& a, const DeviceModel& d,
                               const DistanceMatrix& dm, const LayoutWeights& w) {
  if (a.num_qubits > d.num_qubits()) throw DeviceTooSmall("device has too few qubits");
  if (seed >= d.num_qubits()) throw InvariantViolation("seed out of range");
  Layout l(a.num_qubits, d.num_qubits());
  const auto order = expansion_order(a);
  if (order.empty()) return l;
  l.map(order.front(), seed);
  // Coupling weight of each unmapped logical qubit to the mapped ones.
  std::vector<std::size_t> pull(a.num_qubits, 0);
  const auto absorb = [&](std::size_t q) {
    for (std::size_t r : a.graph.neighbors(q)) pull[r] += a.graph.multiplicity(q, r);
  };
  absorb(order.front());
  for (std::size_t k = 1; k < order.size(); ++k) {
    // Most pulled unmapped qubit; `order` breaks ties.
    std::size_t q = Layout::npos;
    for (std::size_t cand : order) {
      if (!l.is_mapped(cand) && (q == Layout::npos || pull[cand] > pull[q])) q = cand;
    }
    std::size_t best = Layout::npos;
    double best_cost = 0.0;
    bool best_roomy = false;
    // A qubit with partners still to place prefers sites with a free
    // neighbour for them.
    const auto partners = a.graph.neighbors(q);
    const bool waiting = std::any_of(partners.begin(), partners.end(),
                                     [&](std::size_t r) { return !l.is_mapped(r); });
    // Free qubits within two hops of the mapped set, by incremental cost.
    for (std::size_t p = 0; p < d.num_qubits(); ++p) {
      if (l.is_used(p)) continue;
      const auto hop = detail::distance_to_mapped(l, p, dm);
      if (hop < 1 || hop > 2) continue;
      const double c = incremental_cost(l, q, p, a, d, dm, w);
      const bool roomy = !waiting || std::any_of(d.neighbors(p).begin(), d.neighbors(p).end(),
                                                 [&](std::size_t u) { return !l.is_used(u); });
      if (best == Layout::npos || (roomy && !best_roomy) ||
          (roomy == best_roomy && c < best_cost)) {
        best = p;
        best_cost = c;
        best_roomy = roomy;
      }
    }
    if (best == Layout::npos) {
      // Candidate exhaustion: bridge along the shortest path.
      std::uint32_t best_hop = DistanceMatrix::unreachable;
      for (std::size_t p = 0; p < d.num_qubits(); ++p) {
        if (l.is_used(p)) continue;
        const auto hop = detail::distance_to_mapped(l, p, dm);
        const double c = incremental_cost(l, q, p, a, d, dm, w);
        if (best == Layout::npos || hop < best_hop || (hop == best_hop && c < best_cost)) {
          best = p;
          best_hop = hop;
          best_cost = c;
        }
      }
    }
    l.map(q, best);
    absorb(q);
  }
  return l;
}

namespace detail {

/// Places `ranked` logical qubits onto `slots` in order; everyone else keeps
/// their physical qubit when it is still free, and the rest fill the
/// remaining slots in ascending order.
inline Layout reassign(const Layout& base, const std::vector<std::size_t>& ranked,
                       const std::vector<std::size_t>& slots) {
  Layout out(base.num_logical(), base.num_physical());
  std::vector<bool> placed(base.num_logical(), false);
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    out.map(ranked[k], slots[k]);
    placed[ranked[k]] = true;
  }
  std::vector<std::size_t> waiting;
  for (std::size_t q = 0; q < base.num_logical(); ++q) {
    if (placed[q]) continue;
    if (!out.is_used(base.physical(q))) {
      out.map(q, base.physical(q));
    } else {
      waiting.push_back(q);
    }
  }
  auto free_slots = base.used_physical();
  std::size_t next = 0;
  for (std::size_t q : waiting) {
    while (out.is_used(free_slots[next])) ++next;
    out.map(q, free_slots[next]);
  }
  return out;
}

}  // namespace detail

/// The candidate plus its MCM-aware and connectivity-aware reorderings over
/// the same physical set, duplicates removed.
inline std::vector<Layout> generate_variants(const Layout& candidate, const CircuitAnalysis& a,
                                             const DeviceModel& d) {
  if (!candidate.total()) throw InvariantViolation("variants need a total layout");
  std::vector<Layout> out{candidate};
  auto push = [&](Layout l) {
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(std::move(l));
  };
  auto set = candidate.used_physical();

  {
    std::vector<std::size_t> ranked;
    for (std::size_t q = 0; q < a.num_qubits; ++q) {
      if (a.intensity[q] > 0) ranked.push_back(q);
    }
    std::stable_sort(ranked.begin(), ranked.end(), [&](std::size_t x, std::size_t y) {
      return a.intensity[x] > a.intensity[y];
    });
    auto slots = set;
    std::stable_sort(slots.begin(), slots.end(), [&](std::size_t x, std::size_t y) {
      return d.qubit(x).mcm_error < d.qubit(y).mcm_error;
    });
    push(detail::reassign(candidate, ranked, slots));
  }
  {
    std::vector<std::size_t> ranked;
    for (std::size_t q = 0; q < a.num_qubits; ++q) {
      if (a.graph.weighted_degree(q) > 0) ranked.push_back(q);
    }
    std::stable_sort(ranked.begin(), ranked.end(), [&](std::size_t x, std::size_t y) {
      return a.graph.weighted_degree(x) > a.graph.weighted_degree(y);
    });
    auto slots = set;
    std::stable_sort(slots.begin(), slots.end(),
                     [&](std::size_t x, std::size_t y) { return d.degree(x) > d.degree(y); });
    push(detail::reassign(candidate, ranked, slots));
  }
  return out;
}

struct LayoutCandidate {
  Layout layout;
  double cost = 0.0;
  std::size_t seed = 0;
  std::size_t variant = 0;  // 0 = expansion result, then reorderings
};

/// Everything select_layout compares, in generation order. `device` is the
/// raw calibration; it is normalized here.
inline std::vector<LayoutCandidate> layout_candidates(const Circuit& circuit,
                                                      const DeviceModel& device,
                                                      const LayoutWeights& w = {}) {
  w.validate();
  if (circuit.num_qubits() > device.num_qubits()) {
    throw DeviceTooSmall("circuit needs " + std::to_string(circuit.num_qubits()) +
                         " qubits, device has " + std::to_string(device.num_qubits()));
  }
  const DeviceModel d = normalize_mcm(device, w.tau_mcm);
  const DistanceMatrix dm = distance_matrix(d);
  const CircuitAnalysis a = analyze_circuit(circuit, w.look_ahead);
  const auto seeds = seed_scores(d, w.seed);
  std::vector<LayoutCandidate> out;
  const std::size_t n = std::min(w.n_seed, seeds.size());
  for (std::size_t s = 0; s < n; ++s) {
    const Layout base = expand_from_seed(seeds[s].qubit, a, d, dm, w);
    const auto variants = generate_variants(base, a, d);
    for (std::size_t v = 0; v < variants.size(); ++v) {
      out.push_back({variants[v], layout_cost(variants[v], a, d, dm, w), seeds[s].qubit, v});
    }
  }
  return out;
}

/// Lowest-cost candidate; the first one wins ties.
inline Layout select_layout(const Circuit& circuit, const DeviceModel& device,
                            const LayoutWeights& w = {}) {
  const auto cands = layout_candidates(circuit, device, w);
  if (cands.empty()) return Layout(circuit.num_qubits(), device.num_qubits());
  std::size_t best = 0;
  for (std::size_t i = 1; i < cands.size(); ++i) {
    if (cands[i].cost < cands[best].cost) best = i;
  }
  return cands[best].layout;
}

}  // namespace mera

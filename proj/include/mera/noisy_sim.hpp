#pragma once

// Monte Carlo trajectory simulator for dynamic circuits, plus an exact
// branching engine used as the noiseless reference.
//
// The circuit is split into independent components (qubits joined by 2Q
// gates, by classical conditions and by a repeat-until-success body) and
// each component is simulated on its own statevector.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "mera/analysis.hpp"
#include "mera/circuit.hpp"
#include "mera/counts.hpp"
#include "mera/device.hpp"
#include "mera/errors.hpp"
#include "mera/rng.hpp"
#include "mera/schedule.hpp"
#include "mera/statevector.hpp"

namespace mera {

struct NoiseChannels {
  bool gate_1q = true;
  bool gate_2q = true;
  bool readout = true;
  bool mcm = true;
  bool idle = true;
  bool crosstalk = true;
  double crosstalk_factor = 0.25;  // kappa = factor * Err_MCM(measured qubit)
  double dd_suppression = 0.2;     // dephasing multiplier in windows with DD

  static NoiseChannels none() {
    NoiseChannels c;
    c.gate_1q = c.gate_2q = c.readout = c.mcm = c.idle = c.crosstalk = false;
    return c;
  }
  [[nodiscard]] bool any() const noexcept {
    return gate_1q || gate_2q || readout || mcm || idle || crosstalk;
  }
  [[nodiscard]] bool needs_schedule() const noexcept { return idle || crosstalk; }
};

struct SimOptions {
  std::size_t max_component_qubits = 14;
  unsigned threads = 1;
  /// Timeline for idle and crosstalk noise; ALAP is used when absent.
  const Schedule* schedule = nullptr;
};

struct SimResult {
  ShotCounts counts;
  std::vector<std::uint32_t> mcms;        // mid-circuit measurements executed, per shot
  std::vector<std::uint32_t> rus_rounds;  // body executions, per shot
  std::vector<std::uint32_t> rus_measures;

  [[nodiscard]] std::uint64_t total_mcms() const {
    return std::accumulate(mcms.begin(), mcms.end(), std::uint64_t{0});
  }
};

namespace detail {

struct PauliEvent {
  std::size_t qubit = 0;  // local index
  double px = 0.0;
  double py = 0.0;
  double pz = 0.0;
};

struct PlannedOp {
  std::size_t index = 0;           // instruction index in the circuit
  std::vector<std::size_t> local;  // local qubit indices
  std::vector<PauliEvent> pre;
  double gate_error = 0.0;
  double readout_flip = 0.0;
  double post_flip = 0.0;
  bool mcm = false;
};

struct Component {
  std::vector<std::size_t> qubits;  // global indices, ascending
  std::vector<std::size_t> clbits;  // written by this component, ascending
  std::vector<PlannedOp> ops;
  std::optional<std::size_t> loop_begin;  // positions into ops
  std::size_t loop_end = 0;
};

struct Plan {
  std::vector<Component> components;
  std::size_t num_clbits = 0;
  std::optional<RepeatUntilSuccess> rus;
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

inline std::vector<std::vector<std::size_t>> writers_by_clbit(const Circuit& c) {
  std::vector<std::vector<std::size_t>> w(c.num_clbits());
  for (const auto& inst : c.instructions()) {
    if (inst.kind == OpKind::Measure) w[inst.clbit].push_back(inst.qubits[0]);
  }
  return w;
}

inline double idle_flip(double t, double t1) { return 1.0 - std::exp(-t / t1); }

/// Noise attached to instructions: idle decoherence and crosstalk before an
/// op, gate depolarizing after it, readout and MCM flips.
struct NoiseTable {
  std::vector<std::vector<std::pair<std::size_t, PauliEvent>>> pre;  // (global qubit, event)
  std::vector<double> gate_error;
  std::vector<double> readout_flip;
  std::vector<double> post_flip;
};

inline NoiseTable build_noise(const Circuit& circuit, const DeviceModel* device,
                              const NoiseChannels& ch, const Schedule* schedule) {
  const std::size_t n = circuit.size();
  NoiseTable t;
  t.pre.resize(n);
  t.gate_error.assign(n, 0.0);
  t.readout_flip.assign(n, 0.0);
  t.post_flip.assign(n, 0.0);
  if (!device || !ch.any()) return t;
  const auto mcm = mid_circuit_measures(circuit);
  const auto fused = fused_resets(circuit);
  constexpr auto none = std::numeric_limits<std::size_t>::max();

  for (std::size_t i = 0; i < n; ++i) {
    const Instruction& inst = circuit[i];
    if (is_single_qubit_gate(inst.kind) && ch.gate_1q) {
      t.gate_error[i] = device->qubit(inst.qubits[0]).e1q;
    }
    if (is_two_qubit_gate(inst.kind) && ch.gate_2q) {
      const std::size_t e = device->edge_index(inst.qubits[0], inst.qubits[1]);
      if (e == DeviceModel::npos) {
        throw InvariantViolation("noisy 2Q gate on an uncoupled pair");
      }
      const double p = device->edge(e).e2q;
      t.gate_error[i] = inst.kind == OpKind::Swap ? 1.0 - std::pow(1.0 - p, 3) : p;
    }
    if (inst.kind == OpKind::Measure) {
      const auto& cal = device->qubit(inst.qubits[0]);
      if (ch.readout) t.readout_flip[i] = cal.readout_error;
      // A bare mid-circuit measurement disturbs the state directly; a fused
      // one leaves the residual flip on its reset.
      if (ch.mcm && mcm[i] && fused[i] == none) t.post_flip[i] = cal.mcm_error;
    }
    if (inst.kind == OpKind::Reset && ch.mcm) {
      t.post_flip[i] = device->qubit(inst.qubits[0]).mcm_error;
    }
  }

  if (!ch.needs_schedule()) return t;
  Schedule own;
  if (!schedule) {
    own = alap_schedule(circuit, *device);
    schedule = &own;
  }
  const Schedule& s = *schedule;
  const double sup = ch.dd_suppression;

  // Previous occupying, non-DD instruction per qubit, and the DD pulses seen
  // since then.
  std::vector<std::size_t> prev(circuit.num_qubits(), none);
  std::vector<std::int64_t> dd_time(circuit.num_qubits(), 0);
  std::vector<std::vector<std::size_t>> ops_on(circuit.num_qubits());
  std::vector<std::vector<std::uint8_t>> dd_before(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Instruction& inst = circuit[i];
    if (!occupies(inst)) continue;
    if (is_dd_pulse(inst)) {
      dd_time[inst.qubits[0]] += s.duration[i];
      continue;
    }
    dd_before[i].assign(inst.qubits.size(), 0);
    for (std::size_t k = 0; k < inst.qubits.size(); ++k) {
      const std::size_t q = inst.qubits[k];
      ops_on[q].push_back(i);
      const bool had_dd = dd_time[q] > 0;
      dd_before[i][k] = had_dd;
      if (prev[q] != none && ch.idle) {
        const double gap = static_cast<double>(s.start[i] - s.end(prev[q]) - dd_time[q]);
        if (gap > 0.0) {
          const auto& cal = device->qubit(q);
          const double p_flip = idle_flip(gap, cal.t1);
          const double p_phase = idle_flip(gap, cal.t2);
          PauliEvent ev;
          ev.px = ev.py = p_flip / 4.0;
          ev.pz = std::max(0.0, p_phase / 2.0 - p_flip / 4.0) * (had_dd ? sup : 1.0);
          t.pre[i].push_back({q, ev});
        }
      }
      prev[q] = i;
      dd_time[q] = 0;
    }
  }

  if (ch.crosstalk) {
    for (std::size_t i = 0; i < n; ++i) {
      const Instruction& inst = circuit[i];
      if (inst.kind != OpKind::Measure) continue;
      const std::size_t m = inst.qubits[0];
      const double kappa = ch.crosstalk_factor * device->qubit(m).mcm_error;
      if (kappa <= 0.0) continue;
      for (std::size_t nb : device->neighbors(m)) {
        if (nb >= circuit.num_qubits()) continue;
        // Next op on the neighbour at or after the measurement start.
        for (std::size_t j : ops_on[nb]) {
          if (s.start[j] < s.start[i]) continue;
          const auto& qs = circuit[j].qubits;
          const std::size_t k =
              static_cast<std::size_t>(std::find(qs.begin(), qs.end(), nb) - qs.begin());
          PauliEvent ev;
          ev.pz = std::min(1.0, kappa * (dd_before[j][k] ? sup : 1.0));
          t.pre[j].push_back({nb, ev});
          break;
        }
      }
    }
  }
  return t;
}

inline Plan build_plan(const Circuit& circuit, const NoiseTable& noise,
                       std::size_t max_component_qubits) {
  const std::size_t nq = circuit.num_qubits();
  DisjointSets ds(nq);
  const auto writers = writers_by_clbit(circuit);
  std::vector<bool> used(nq, false);
  for (const auto& inst : circuit.instructions()) {
    if (inst.kind == OpKind::Barrier) continue;
    for (std::size_t q : inst.qubits) used[q] = true;
    if (inst.qubits.size() == 2) ds.unite(inst.qubits[0], inst.qubits[1]);
    if (inst.condition) {
      for (std::size_t w : writers[inst.condition->clbit]) ds.unite(inst.qubits[0], w);
    }
  }
  for (const auto& w : writers) {
    for (std::size_t k = 1; k < w.size(); ++k) ds.unite(w[0], w[k]);
  }
  const auto& rus = circuit.rus();
  if (rus) {
    const std::size_t anchor = writers[rus->clbit].front();
    for (std::size_t i = rus->begin; i < rus->end; ++i) {
      if (circuit[i].kind == OpKind::Barrier) continue;
      for (std::size_t q : circuit[i].qubits) ds.unite(anchor, q);
    }
  }

  Plan plan;
  plan.num_clbits = circuit.num_clbits();
  plan.rus = rus;
  std::map<std::size_t, std::size_t> comp_of_root;
  std::vector<std::size_t> local(nq, 0);
  for (std::size_t q = 0; q < nq; ++q) {
    if (!used[q]) continue;
    const std::size_t r = ds.find(q);
    auto [it, fresh] = comp_of_root.emplace(r, plan.components.size());
    if (fresh) plan.components.emplace_back();
    auto& comp = plan.components[it->second];
    local[q] = comp.qubits.size();
    comp.qubits.push_back(q);
  }
  for (const auto& comp : plan.components) {
    if (comp.qubits.size() > max_component_qubits) {
      throw TooManyQubits("entangled block of " + std::to_string(comp.qubits.size()) +
                          " qubits exceeds the simulator cap of " +
                          std::to_string(max_component_qubits));
    }
  }
  for (std::size_t b = 0; b < writers.size(); ++b) {
    if (writers[b].empty()) continue;
    plan.components[comp_of_root.at(ds.find(writers[b].front()))].clbits.push_back(b);
  }
  const auto mcm = mid_circuit_measures(circuit);
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const Instruction& inst = circuit[i];
    if (!occupies(inst)) continue;
    auto& comp = plan.components[comp_of_root.at(ds.find(inst.qubits[0]))];
    const bool in_body = rus && i >= rus->begin && i < rus->end;
    if (in_body && !comp.loop_begin) comp.loop_begin = comp.ops.size();
    PlannedOp op;
    op.index = i;
    for (std::size_t q : inst.qubits) op.local.push_back(local[q]);
    for (const auto& [q, ev] : noise.pre[i]) {
      PauliEvent e = ev;
      e.qubit = local[q];
      op.pre.push_back(e);
    }
    op.gate_error = noise.gate_error[i];
    op.readout_flip = noise.readout_flip[i];
    op.post_flip = noise.post_flip[i];
    op.mcm = mcm[i];
    comp.ops.push_back(std::move(op));
    if (in_body) comp.loop_end = comp.ops.size();
  }
  return plan;
}

struct ShotRecord {
  std::uint32_t mcms = 0;
  std::uint32_t rounds = 0;
  std::uint32_t rus_measures = 0;
};

inline void sample_pauli(StateVector& sv, const PauliEvent& e, Rng& rng) {
  const double tot = e.px + e.py + e.pz;
  if (tot <= 0.0) return;
  const double u = rng.uniform();
  if (u < e.px) {
    sv.x(e.qubit);
  } else if (u < e.px + e.py) {
    sv.y(e.qubit);
  } else if (u < tot) {
    sv.z(e.qubit);
  }
}

inline void run_component_shot(const Circuit& circuit, const Component& comp,
                               const std::optional<RepeatUntilSuccess>& rus,
                               std::vector<std::uint8_t>& bits, Rng& rng, ShotRecord& rec) {
  StateVector sv(comp.qubits.size());
  std::size_t pc = 0;
  std::size_t rounds = 0;
  const bool looping = comp.loop_begin.has_value();
  while (pc < comp.ops.size()) {
    const PlannedOp& op = comp.ops[pc];
    const Instruction& inst = circuit[op.index];
    for (const auto& e : op.pre) sample_pauli(sv, e, rng);
    const bool enabled =
        !inst.condition || bits[inst.condition->clbit] == inst.condition->value;
    if (enabled) {
      switch (inst.kind) {
        case OpKind::Measure: {
          const double p1 = sv.probability_one(op.local[0]);
          const int outcome = rng.uniform() < p1 ? 1 : 0;
          sv.collapse(op.local[0], outcome);
          int recorded = outcome;
          if (rng.bernoulli(op.readout_flip)) recorded ^= 1;
          bits[inst.clbit] = static_cast<std::uint8_t>(recorded);
          if (rng.bernoulli(op.post_flip)) sv.x(op.local[0]);
          if (op.mcm) ++rec.mcms;
          if (looping && pc >= *comp.loop_begin && pc < comp.loop_end) ++rec.rus_measures;
          break;
        }
        case OpKind::Reset: {
          const double p1 = sv.probability_one(op.local[0]);
          const int outcome = rng.uniform() < p1 ? 1 : 0;
          sv.collapse(op.local[0], outcome);
          if (outcome) sv.x(op.local[0]);
          if (rng.bernoulli(op.post_flip)) sv.x(op.local[0]);
          break;
        }
        default: {
          sv.apply_unitary(inst, op.local);
          if (rng.bernoulli(op.gate_error)) {
            if (op.local.size() == 1) {
              sv.pauli(1 + static_cast<int>(rng.below(3)), op.local[0]);
            } else {
              const int code = 1 + static_cast<int>(rng.below(15));
              sv.pauli(code % 4, op.local[0]);
              sv.pauli(code / 4, op.local[1]);
            }
          }
          break;
        }
      }
    }
    ++pc;
    if (looping && pc == comp.loop_end) {
      ++rounds;
      const bool success = bits[rus->clbit] == rus->success_value;
      if (!success && rounds < rus->max_repeats) pc = *comp.loop_begin;
    }
  }
  if (looping) rec.rounds = static_cast<std::uint32_t>(rounds);
}

}  // namespace detail

/// Runs `shots` trajectories. Shot k draws from Rng::stream(seed, k), so the
/// result does not depend on the thread count.
inline SimResult simulate(const Circuit& circuit, const DeviceModel* device,
                          const NoiseChannels& channels, std::uint64_t shots,
                          std::uint64_t seed, const SimOptions& options = {}) {
  if (device && circuit.num_qubits() > device->num_qubits()) {
    throw InvariantViolation("circuit has more qubits than the device");
  }
  const auto noise = detail::build_noise(circuit, device, channels, options.schedule);
  const auto plan = detail::build_plan(circuit, noise, options.max_component_qubits);

  std::vector<std::string> keys(shots);
  std::vector<detail::ShotRecord> records(shots);
  auto work = [&](std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint8_t> bits(circuit.num_clbits());
    for (std::uint64_t shot = lo; shot < hi; ++shot) {
      std::fill(bits.begin(), bits.end(), 0);
      Rng rng = Rng::stream(seed, shot);
      for (const auto& comp : plan.components) {
        detail::run_component_shot(circuit, comp, plan.rus, bits, rng, records[shot]);
      }
      keys[shot] = bitstring(bits);
    }
  };
  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1 || shots < 2) {
    work(0, shots);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (shots + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t lo = t * chunk;
      const std::uint64_t hi = std::min<std::uint64_t>(shots, lo + chunk);
      if (lo < hi) pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  SimResult out;
  out.counts.seed = seed;
  out.mcms.reserve(shots);
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    out.counts.add(keys[shot]);
    out.mcms.push_back(records[shot].mcms);
    out.rus_rounds.push_back(records[shot].rounds);
    out.rus_measures.push_back(records[shot].rus_measures);
  }
  return out;
}

inline SimResult simulate(const Circuit& circuit, const DeviceModel& device,
                          const NoiseChannels& channels, std::uint64_t shots,
                          std::uint64_t seed, const SimOptions& options = {}) {
  return simulate(circuit, &device, channels, shots, seed, options);
}

inline ShotCounts run(const Circuit& circuit, const DeviceModel& device,
                      const NoiseChannels& channels, std::uint64_t shots, std::uint64_t seed,
                      const SimOptions& options = {}) {
  return simulate(circuit, &device, channels, shots, seed, options).counts;
}

inline ShotCounts run_ideal(const Circuit& circuit, std::uint64_t shots, std::uint64_t seed) {
  return simulate(circuit, nullptr, NoiseChannels::none(), shots, seed).counts;
}

/// Total measurements executed inside the repeat-until-success body, summed
/// over shots.
inline std::uint64_t attempts_metric(const Circuit& circuit, const SimResult& result) {
  if (!circuit.rus()) throw NotRUS("circuit has no repeat-until-success block");
  return std::accumulate(result.rus_measures.begin(), result.rus_measures.end(),
                         std::uint64_t{0});
}

/// Noiseless outcome distribution as a product of per-component marginals.
class ExactDistribution {
 public:
  struct Marginal {
    std::vector<std::size_t> clbits;
    std::map<std::string, double> probs;  // key over `clbits`, same bit order
  };

  ExactDistribution() = default;
  ExactDistribution(std::size_t num_clbits, std::vector<Marginal> parts)
      : num_clbits_(num_clbits), parts_(std::move(parts)) {
    std::vector<bool> owned(num_clbits, false);
    for (const auto& m : parts_) {
      for (std::size_t b : m.clbits) owned[b] = true;
    }
    for (std::size_t b = 0; b < num_clbits; ++b) {
      if (!owned[b]) constant_zero_.push_back(b);
    }
  }

  [[nodiscard]] std::size_t num_clbits() const noexcept { return num_clbits_; }
  [[nodiscard]] const std::vector<Marginal>& marginals() const noexcept { return parts_; }

  [[nodiscard]] double probability(const std::string& key) const {
    if (key.size() != num_clbits_) return 0.0;
    for (std::size_t b : constant_zero_) {
      if (key_bit(key, b)) return 0.0;
    }
    double p = 1.0;
    for (const auto& m : parts_) {
      std::vector<std::uint8_t> sub(m.clbits.size());
      for (std::size_t k = 0; k < m.clbits.size(); ++k) sub[k] = key_bit(key, m.clbits[k]);
      auto it = m.probs.find(bitstring(sub));
      if (it == m.probs.end()) return 0.0;
      p *= it->second;
    }
    return p;
  }

  /// Full joint distribution; throws when the support would be huge.
  [[nodiscard]] Distribution joint(std::size_t max_support = std::size_t{1} << 22) const {
    std::vector<std::pair<std::vector<std::uint8_t>, double>> acc{
        {std::vector<std::uint8_t>(num_clbits_, 0), 1.0}};
    for (const auto& m : parts_) {
      std::vector<std::pair<std::vector<std::uint8_t>, double>> next;
      for (const auto& [bits, p] : acc) {
        for (const auto& [k, q] : m.probs) {
          auto b = bits;
          for (std::size_t j = 0; j < m.clbits.size(); ++j) b[m.clbits[j]] = key_bit(k, j);
          next.emplace_back(std::move(b), p * q);
        }
      }
      if (next.size() > max_support) throw Error("exact distribution support too large");
      acc = std::move(next);
    }
    Distribution d;
    for (const auto& [bits, p] : acc) d[bitstring(bits)] += p;
    return d;
  }

 private:
  std::size_t num_clbits_ = 0;
  std::vector<Marginal> parts_;
  std::vector<std::size_t> constant_zero_;
};

/// Enumerates every measurement branch of the noiseless circuit. Branches
/// below `prune` probability are dropped.
inline ExactDistribution exact_distribution(const Circuit& circuit, double prune = 1e-15,
                                            std::size_t max_component_qubits = 20) {
  const detail::NoiseTable noise = detail::build_noise(circuit, nullptr, NoiseChannels::none(),
                                                       nullptr);
  const detail::Plan plan = detail::build_plan(circuit, noise, max_component_qubits);
  const auto& rus = plan.rus;
  std::vector<ExactDistribution::Marginal> parts;
  for (const auto& comp : plan.components) {
    ExactDistribution::Marginal marg;
    marg.clbits = comp.clbits;
    const bool looping = comp.loop_begin.has_value();
    std::vector<std::uint8_t> bits(circuit.num_clbits(), 0);
    std::function<void(StateVector&, std::size_t, std::size_t, double)> walk =
        [&](StateVector& sv, std::size_t pc, std::size_t rounds, double prob) {
          while (pc < comp.ops.size()) {
            const detail::PlannedOp& op = comp.ops[pc];
            const Instruction& inst = circuit[op.index];
            const bool enabled =
                !inst.condition || bits[inst.condition->clbit] == inst.condition->value;
            auto advance = [&](std::size_t p) {
              ++p;
              if (looping && p == comp.loop_end) {
                ++rounds;
                if (bits[rus->clbit] != rus->success_value && rounds < rus->max_repeats) {
                  p = *comp.loop_begin;
                }
              }
              return p;
            };
            if (!enabled) {
              pc = advance(pc);
              continue;
            }
            if ((inst.kind == OpKind::Measure || inst.kind == OpKind::Reset)) {
              const double p1 = sv.probability_one(op.local[0]);
              const std::uint8_t saved =
                  inst.kind == OpKind::Measure ? bits[inst.clbit] : std::uint8_t{0};
              for (int outcome = 0; outcome < 2; ++outcome) {
                const double po = outcome ? p1 : 1.0 - p1;
                if (po * prob <= prune) continue;
                StateVector branch = sv;
                branch.collapse(op.local[0], outcome);
                if (inst.kind == OpKind::Measure) {
                  bits[inst.clbit] = static_cast<std::uint8_t>(outcome);
                } else if (outcome) {
                  branch.x(op.local[0]);
                }
                const std::size_t saved_rounds = rounds;
                const std::size_t next = advance(pc);
                walk(branch, next, rounds, prob * po);
                rounds = saved_rounds;
              }
              if (inst.kind == OpKind::Measure) bits[inst.clbit] = saved;
              return;
            }
            sv.apply_unitary(inst, op.local);
            pc = advance(pc);
          }
          std::vector<std::uint8_t> sub(comp.clbits.size());
          for (std::size_t k = 0; k < comp.clbits.size(); ++k) sub[k] = bits[comp.clbits[k]];
          marg.probs[bitstring(sub)] += prob;
        };
    StateVector sv(comp.qubits.size());
    walk(sv, 0, 0, 1.0);
    parts.push_back(std::move(marg));
  }
  return ExactDistribution(circuit.num_clbits(), std::move(parts));
}

inline double hellinger_fidelity(const ShotCounts& counts, const ExactDistribution& exact) {
  if (counts.shots == 0) throw EmptyCounts("no shots recorded");
  double bc = 0.0;
  for (const auto& [k, n] : counts.counts) {
    const double p = static_cast<double>(n) / static_cast<double>(counts.shots);
    bc += std::sqrt(p * exact.probability(k));
  }
  return bc * bc;
}

inline double hellinger_fidelity(const ExactDistribution& a, const ExactDistribution& b) {
  return hellinger_fidelity(a.joint(), b.joint());
}

}  // namespace mera

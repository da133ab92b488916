#pragma once

// Hardware abstraction: coupling graph, per-qubit and per-edge calibration,
// hop distances and MCM error normalization.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "mera/errors.hpp"

namespace mera {

/// Device-wide operation durations in ns.
struct Durations {
  std::int64_t one_qubit = 50;
  std::int64_t two_qubit = 300;
  std::int64_t measure = 1600;
  std::int64_t reset = 2400;

  /// A mid-circuit measurement followed by its reset.
  [[nodiscard]] std::int64_t mcm_window() const noexcept { return measure + reset; }
  friend bool operator==(const Durations&, const Durations&) = default;
};

struct QubitCalibration {
  double mcm_error = 0.0;
  double e1q = 0.0;
  double readout_error = 0.0;
  double t1 = 200'000.0;  // ns
  double t2 = 150'000.0;  // ns
  friend bool operator==(const QubitCalibration&, const QubitCalibration&) = default;
};

struct Coupling {
  std::size_t a = 0;
  std::size_t b = 0;
  double e2q = 0.0;
  friend bool operator==(const Coupling&, const Coupling&) = default;
};

class DeviceModel {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  DeviceModel() = default;

  /// Builds the topology; calibration values start at their defaults.
  DeviceModel(std::string name, std::size_t num_qubits,
              const std::vector<std::pair<std::size_t, std::size_t>>& edges)
      : name_(std::move(name)), qubits_(num_qubits), adjacency_(num_qubits) {
    for (auto [a, b] : edges) {
      if (a >= num_qubits || b >= num_qubits) {
        throw InvariantViolation("coupling edge references a missing qubit");
      }
      if (a == b) throw InvariantViolation("coupling graph has a self-loop");
      if (a > b) std::swap(a, b);
      if (edge_index(a, b) != npos) {
        throw InvariantViolation("coupling graph has a duplicate edge");
      }
      adjacency_[a].push_back(b);
      adjacency_[b].push_back(a);
      edges_.push_back(Coupling{a, b, 0.0});
    }
    for (auto& n : adjacency_) std::sort(n.begin(), n.end());
  }

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  [[nodiscard]] const std::string& profile_timestamp() const noexcept { return timestamp_; }
  void set_profile_timestamp(std::string t) { timestamp_ = std::move(t); }

  [[nodiscard]] std::size_t num_qubits() const noexcept { return qubits_.size(); }
  [[nodiscard]] std::size_t num_edges() const noexcept { return edges_.size(); }

  [[nodiscard]] const QubitCalibration& qubit(std::size_t p) const { return qubits_.at(p); }
  [[nodiscard]] QubitCalibration& qubit(std::size_t p) { return qubits_.at(p); }
  [[nodiscard]] const std::vector<QubitCalibration>& qubits() const noexcept { return qubits_; }

  [[nodiscard]] const std::vector<Coupling>& edges() const noexcept { return edges_; }
  [[nodiscard]] const Coupling& edge(std::size_t i) const { return edges_.at(i); }
  void set_edge_error(std::size_t i, double e2q) { edges_.at(i).e2q = e2q; }

  [[nodiscard]] const Durations& durations() const noexcept { return durations_; }
  [[nodiscard]] Durations& durations() noexcept { return durations_; }

  [[nodiscard]] const std::vector<std::size_t>& neighbors(std::size_t p) const {
    return adjacency_.at(p);
  }
  [[nodiscard]] std::size_t degree(std::size_t p) const { return adjacency_.at(p).size(); }
  [[nodiscard]] std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& n : adjacency_) d = std::max(d, n.size());
    return d;
  }
  [[nodiscard]] bool coupled(std::size_t a, std::size_t b) const {
    const auto& n = adjacency_.at(a);
    return std::binary_search(n.begin(), n.end(), b);
  }
  /// Index into edges(), or npos.
  [[nodiscard]] std::size_t edge_index(std::size_t a, std::size_t b) const {
    if (a > b) std::swap(a, b);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (edges_[i].a == a && edges_[i].b == b) return i;
    }
    return npos;
  }

  /// Mean 2Q error over the incident edges; 0 for an isolated qubit.
  [[nodiscard]] double mean_e2q(std::size_t p) const {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& e : edges_) {
      if (e.a == p || e.b == p) {
        sum += e.e2q;
        ++n;
      }
    }
    return n ? sum / static_cast<double>(n) : 0.0;
  }

  /// Throws InvariantViolation on any out-of-range calibration value.
  void validate() const {
    auto prob = [](double v, const char* what, std::size_t idx) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw InvariantViolation(std::string(what) + " of " + std::to_string(idx) +
                                 " outside [0,1]");
      }
    };
    for (std::size_t p = 0; p < qubits_.size(); ++p) {
      const auto& q = qubits_[p];
      prob(q.mcm_error, "mcm_error", p);
      prob(q.e1q, "e1q", p);
      prob(q.readout_error, "readout_error", p);
      if (!(q.t1 > 0.0) || !(q.t2 > 0.0)) {
        throw InvariantViolation("T1/T2 of " + std::to_string(p) + " must be positive");
      }
      if (q.t2 > 2.0 * q.t1) {
        throw InvariantViolation("T2 > 2*T1 on qubit " + std::to_string(p));
      }
    }
    for (std::size_t i = 0; i < edges_.size(); ++i) prob(edges_[i].e2q, "e2q of edge", i);
    const auto& d = durations_;
    if (d.one_qubit <= 0 || d.two_qubit <= 0 || d.measure <= 0 || d.reset <= 0) {
      throw InvariantViolation("durations must be positive");
    }
  }

  friend bool operator==(const DeviceModel& x, const DeviceModel& y) {
    return x.name_ == y.name_ && x.timestamp_ == y.timestamp_ &&
           x.qubits_ == y.qubits_ && x.edges_ == y.edges_ &&
           x.durations_ == y.durations_;
  }

 private:
  std::string name_;
  std::string timestamp_;
  std::vector<QubitCalibration> qubits_;
  std::vector<Coupling> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
  Durations durations_;
};

/// All-pairs hop distances.
class DistanceMatrix {
 public:
  static constexpr std::uint32_t unreachable = std::numeric_limits<std::uint32_t>::max();

  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, unreachable) {}

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] std::uint32_t operator()(std::size_t a, std::size_t b) const {
    return d_[a * n_ + b];
  }
  std::uint32_t& at(std::size_t a, std::size_t b) { return d_[a * n_ + b]; }
  [[nodiscard]] std::uint32_t diameter() const {
    std::uint32_t m = 0;
    for (auto v : d_) m = std::max(m, v);
    return m;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint32_t> d_;
};

inline DistanceMatrix distance_matrix(const DeviceModel& device) {
  const std::size_t n = device.num_qubits();
  DistanceMatrix dm(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::deque<std::size_t> frontier{s};
    dm.at(s, s) = 0;
    while (!frontier.empty()) {
      const std::size_t u = frontier.front();
      frontier.pop_front();
      for (std::size_t v : device.neighbors(u)) {
        if (dm(s, v) == DistanceMatrix::unreachable) {
          dm.at(s, v) = dm(s, u) + 1;
          frontier.push_back(v);
        }
      }
    }
    for (std::size_t t = 0; t < n; ++t) {
      if (dm(s, t) == DistanceMatrix::unreachable) {
        throw DisconnectedDevice("no path between physical qubits " + std::to_string(s) +
                                 " and " + std::to_string(t));
      }
    }
  }
  return dm;
}

/// Lifts every MCM error below tau up to tau; other fields are untouched.
inline DeviceModel normalize_mcm(DeviceModel device, double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw InvariantViolation("tau_MCM outside [0,1]");
  for (std::size_t p = 0; p < device.num_qubits(); ++p) {
    auto& q = device.qubit(p);
    q.mcm_error = q.mcm_error <= tau ? tau : q.mcm_error;
  }
  return device;
}

}  // namespace mera

#pragma once

// Per-qubit MCM profiling: prepare |1>, measure, reset, measure again. The
// final measurement reads 0 unless the reset left the qubit excited.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mera/circuit.hpp"
#include "mera/counts.hpp"
#include "mera/device.hpp"
#include "mera/errors.hpp"
#include "mera/noisy_sim.hpp"

namespace mera {

inline constexpr std::uint64_t default_profiling_shots = 1024;

struct QubitEstimate {
  std::size_t qubit = 0;
  double mcm_error = 0.0;
  std::uint64_t shots = 0;
  std::string timestamp;
};

struct ProfilingReport {
  std::string device;
  std::vector<QubitEstimate> qubits;
  /// All qubits run in one parallel circuit, so simultaneous-measurement
  /// crosstalk is folded into every estimate.
  bool crosstalk_isolated = false;
};

/// One parallel circuit; qubit qubits[k] writes c[2k] (mid) and c[2k+1]
/// (final). The register is as wide as the largest qubit index.
inline Circuit build_profiling_circuit(const std::vector<std::size_t>& qubits) {
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    for (std::size_t j = i + 1; j < qubits.size(); ++j) {
      if (qubits[i] == qubits[j]) throw InvariantViolation("profiled qubits must be distinct");
    }
  }
  const std::size_t width =
      qubits.empty() ? 0 : *std::max_element(qubits.begin(), qubits.end()) + 1;
  Circuit c(width, 2 * qubits.size());
  for (std::size_t q : qubits) c.x(q);
  for (std::size_t k = 0; k < qubits.size(); ++k) c.measure(qubits[k], 2 * k);
  for (std::size_t q : qubits) c.reset(q);
  for (std::size_t k = 0; k < qubits.size(); ++k) c.measure(qubits[k], 2 * k + 1);
  return c;
}

inline ProfilingReport estimate_mcm_errors(const ShotCounts& counts,
                                           const std::vector<std::size_t>& qubits,
                                           const std::string& device_name = "",
                                           const std::string& timestamp = "") {
  if (counts.shots == 0) throw ZeroShots("profiling counts contain no shots");
  ProfilingReport r;
  r.device = device_name;
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    std::uint64_t zeros = 0;
    for (const auto& [key, n] : counts.counts) {
      if (!key_bit(key, 2 * k + 1)) zeros += n;
    }
    QubitEstimate e;
    e.qubit = qubits[k];
    e.shots = counts.shots;
    e.mcm_error = 1.0 - static_cast<double>(zeros) / static_cast<double>(counts.shots);
    e.timestamp = timestamp;
    r.qubits.push_back(e);
  }
  return r;
}

/// Builds, simulates and estimates in one step.
inline ProfilingReport profile_device(const DeviceModel& device,
                                      const std::vector<std::size_t>& qubits,
                                      const NoiseChannels& channels, std::uint64_t shots,
                                      std::uint64_t seed, const std::string& timestamp = "") {
  if (shots == 0) throw ZeroShots("profiling needs at least one shot");
  const Circuit c = build_profiling_circuit(qubits);
  const ShotCounts counts = run(c, device, channels, shots, seed);
  return estimate_mcm_errors(counts, qubits, device.name(),
                             timestamp.empty() ? device.profile_timestamp() : timestamp);
}

inline nlohmann::json report_to_json(const ProfilingReport& r) {
  nlohmann::json j;
  j["device"] = r.device;
  j["crosstalk_isolated"] = r.crosstalk_isolated;
  j["note"] = "parallel profiling; estimates include simultaneous-measurement effects";
  auto& qs = j["qubits"] = nlohmann::json::array();
  for (const auto& q : r.qubits) {
    qs.push_back({{"qubit", q.qubit},
                  {"mcm_error", q.mcm_error},
                  {"shots", q.shots},
                  {"timestamp", q.timestamp}});
  }
  return j;
}

}  // namespace mera

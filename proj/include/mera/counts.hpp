#pragma once

// Shot histograms and the Hellinger fidelity between outcome distributions.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mera/errors.hpp"

namespace mera {

using Distribution = std::map<std::string, double>;

/// Histogram keyed by classical-register bitstrings written most significant
/// bit first: the key for bits c[m-1] .. c[0].
struct ShotCounts {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

  void add(const std::string& key, std::uint64_t n = 1) {
    counts[key] += n;
    shots += n;
  }
  [[nodiscard]] std::uint64_t count(const std::string& key) const {
    auto it = counts.find(key);
    return it == counts.end() ? 0 : it->second;
  }
  [[nodiscard]] Distribution distribution() const {
    if (shots == 0) throw EmptyCounts("no shots recorded");
    Distribution d;
    for (const auto& [k, n] : counts) {
      d[k] = static_cast<double>(n) / static_cast<double>(shots);
    }
    return d;
  }
  friend bool operator==(const ShotCounts&, const ShotCounts&) = default;
};

inline std::string bitstring(const std::vector<std::uint8_t>& bits) {
  std::string key(bits.size(), '0');
  for (std::size_t b = 0; b < bits.size(); ++b) {
    if (bits[b]) key[bits.size() - 1 - b] = '1';
  }
  return key;
}

/// Bit b of a key produced by bitstring().
[[nodiscard]] inline bool key_bit(const std::string& key, std::size_t b) {
  return key[key.size() - 1 - b] == '1';
}

inline double hellinger_fidelity(const Distribution& p, const Distribution& q) {
  double tp = 0.0;
  double tq = 0.0;
  for (const auto& [k, v] : p) tp += v;
  for (const auto& [k, v] : q) tq += v;
  if (!(tp > 0.0) || !(tq > 0.0)) throw EmptyCounts("distribution has zero total");
  double bc = 0.0;
  for (const auto& [k, v] : p) {
    auto it = q.find(k);
    if (it != q.end()) bc += std::sqrt((v / tp) * (it->second / tq));
  }
  return bc * bc;
}

inline double hellinger_fidelity(const ShotCounts& a, const ShotCounts& b) {
  if (a.shots == 0 || b.shots == 0) throw EmptyCounts("no shots recorded");
  return hellinger_fidelity(a.distribution(), b.distribution());
}

}  // namespace mera

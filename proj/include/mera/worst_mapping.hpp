#pragma once

// Adversarial baseline layout: the contiguous physical region with the
// highest cumulative MCM cost, MCM-intensive qubits on its worst qubits.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "mera/analysis.hpp"
#include "mera/circuit.hpp"
#include "mera/device.hpp"
#include "mera/errors.hpp"
#include "mera/layout.hpp"

namespace mera {

namespace detail {

/// Intensities descending against errors descending, summed pairwise.
inline double sorted_mcm_cost(std::vector<std::size_t> intensity_desc,
                              const std::vector<std::size_t>& region, const DeviceModel& d) {
  std::vector<double> err;
  for (std::size_t p : region) err.push_back(d.qubit(p).mcm_error);
  std::sort(err.begin(), err.end(), std::greater<>());
  double s = 0.0;
  for (std::size_t k = 0; k < intensity_desc.size() && k < err.size(); ++k) {
    s += static_cast<double>(intensity_desc[k]) * err[k];
  }
  return s;
}

inline std::vector<std::size_t> intensities_desc(const McmIntensity& intensity) {
  std::vector<std::size_t> v(intensity.begin(), intensity.end());
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

/// Grows a connected region of `size` qubits from `seed`. Each step scores
/// every frontier qubit by the best cost reachable after adding it and, room
/// permitting, one more qubit next to the region; the best first qubit is
/// kept (higher own error, then lower index, on ties).
inline std::vector<std::size_t> grow_worst_region(std::size_t seed, std::size_t size,
                                                  const std::vector<std::size_t>& desc,
                                                  const DeviceModel& d) {
  std::vector<std::size_t> region{seed};
  std::vector<bool> in(d.num_qubits(), false);
  in[seed] = true;
  const auto frontier = [&](std::size_t p) {
    return !in[p] && std::any_of(d.neighbors(p).begin(), d.neighbors(p).end(),
                                 [&](std::size_t nb) { return in[nb]; });
  };
  while (region.size() < size) {
    const bool pair = region.size() + 2 <= size;
    std::size_t best = DeviceModel::npos;
    double best_cost = 0.0;
    for (std::size_t p = 0; p < d.num_qubits(); ++p) {
      if (!frontier(p)) continue;
      auto trial = region;
      trial.push_back(p);
      double c = sorted_mcm_cost(desc, trial, d);
      if (pair) {
        in[p] = true;
        for (std::size_t r = 0; r < d.num_qubits(); ++r) {
          if (!frontier(r)) continue;
          trial.push_back(r);
          c = std::max(c, sorted_mcm_cost(desc, trial, d));
          trial.pop_back();
        }
        in[p] = false;
      }
      if (best == DeviceModel::npos || c > best_cost ||
          (c == best_cost && d.qubit(p).mcm_error > d.qubit(best).mcm_error)) {
        best = p;
        best_cost = c;
      }
    }
    if (best == DeviceModel::npos) throw DisconnectedDevice("device is not connected");
    region.push_back(best);
    in[best] = true;
  }
  std::sort(region.begin(), region.end());
  return region;
}

}  // namespace detail

/// Places the circuit on a region: logical qubits with MCMs by intensity
/// onto the region's qubits by MCM error (both descending), the rest next to
/// their interaction partners.
inline Layout assign_worst(const Circuit& circuit, const std::vector<std::size_t>& region,
                           const DeviceModel& d) {
  const auto intensity = mcm_intensity(circuit);
  const auto graph = interaction_graph(circuit);
  const auto dm = distance_matrix(d);
  const std::size_t n = circuit.num_qubits();
  Layout l(n, d.num_qubits());
  std::vector<std::size_t> logical(n);
  std::iota(logical.begin(), logical.end(), 0);
  std::stable_sort(logical.begin(), logical.end(),
                   [&](std::size_t a, std::size_t b) { return intensity[a] > intensity[b]; });
  auto slots = region;
  std::stable_sort(slots.begin(), slots.end(), [&](std::size_t a, std::size_t b) {
    return d.qubit(a).mcm_error > d.qubit(b).mcm_error;
  });
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < n; ++k) {
    if (intensity[logical[k]] > 0) {
      l.map(logical[k], slots[k]);
    } else {
      rest.push_back(logical[k]);
    }
  }
  std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
    return graph.weighted_degree(a) > graph.weighted_degree(b);
  });
  for (std::size_t q : rest) {
    std::size_t best = DeviceModel::npos;
    std::uint64_t best_d = 0;
    for (std::size_t p : region) {
      if (l.is_used(p)) continue;
      std::uint64_t s = 0;
      for (std::size_t r : graph.neighbors(q)) {
        if (l.is_mapped(r)) s += graph.multiplicity(q, r) * dm(p, l.physical(r));
      }
      if (best == DeviceModel::npos || s < best_d) {
        best = p;
        best_d = s;
      }
    }
    l.map(q, best);
  }
  return l;
}

/// Best region over greedy growth from every seed qubit.
inline std::vector<std::size_t> worst_region(const Circuit& circuit, const DeviceModel& d) {
  const std::size_t n = circuit.num_qubits();
  if (n > d.num_qubits()) throw DeviceTooSmall("device has too few qubits");
  if (n == 0) return {};
  const auto desc = detail::intensities_desc(mcm_intensity(circuit));
  std::vector<std::size_t> best;
  double best_cost = -1.0;
  for (std::size_t s = 0; s < d.num_qubits(); ++s) {
    auto region = detail::grow_worst_region(s, n, desc, d);
    const double c = detail::sorted_mcm_cost(desc, region, d);
    if (c > best_cost) {
      best = std::move(region);
      best_cost = c;
    }
  }
  return best;
}

inline Layout worst_mapping(const Circuit& circuit, const DeviceModel& d) {
  return assign_worst(circuit, worst_region(circuit, d), d);
}

/// Cost under the intensity-sorted assignment, as worst_mapping maximizes.
inline double worst_mapping_cost(const Circuit& circuit, const std::vector<std::size_t>& region,
                                 const DeviceModel& d) {
  return detail::sorted_mcm_cost(detail::intensities_desc(mcm_intensity(circuit)), region, d);
}

/// Exhaustive maximum over all connected regions; devices up to 24 qubits.
inline double exhaustive_worst_cost(const Circuit& circuit, const DeviceModel& d) {
  const std::size_t nq = d.num_qubits();
  const std::size_t n = circuit.num_qubits();
  if (nq > 24) throw InvariantViolation("exhaustive search limited to 24 qubits");
  if (n > nq) throw DeviceTooSmall("device has too few qubits");
  const auto desc = detail::intensities_desc(mcm_intensity(circuit));
  double best = 0.0;
  for (std::uint32_t mask = 1; mask < (1u << nq); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != n) continue;
    std::vector<std::size_t> region;
    for (std::size_t p = 0; p < nq; ++p) {
      if (mask >> p & 1u) region.push_back(p);
    }
    // Connectivity by flood fill inside the mask.
    std::uint32_t seen = 1u << region.front();
    std::vector<std::size_t> stack{region.front()};
    while (!stack.empty()) {
      const std::size_t p = stack.back();
      stack.pop_back();
      for (std::size_t nb : d.neighbors(p)) {
        if ((mask >> nb & 1u) && !(seen >> nb & 1u)) {
          seen |= 1u << nb;
          stack.push_back(nb);
        }
      }
    }
    if (seen != mask) continue;
    best = std::max(best, detail::sorted_mcm_cost(desc, region, d));
  }
  return best;
}

}  // namespace mera

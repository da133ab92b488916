#pragma once

// Synthetic calibration maps shaped like profiled superconducting devices:
// a log-normal body of MCM errors plus a small fraction of heavy-tail
// outliers, with gate/readout errors and coherence times drawn uniformly.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "mera/device.hpp"
#include "mera/errors.hpp"
#include "mera/rng.hpp"

namespace mera {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct SynthProfile {
  std::string name = "custom";
  double mean_mcm = 0.0;
  double max_mcm = 0.0;
  double min_mcm = 0.0;
  double heavy_tail_fraction = 0.0;
  double lognormal_sigma = 0.9;
  Range e1q;
  Range e2q;
  Range readout;
  Range t1{150'000.0, 300'000.0};
  Range t2_over_t1{0.4, 1.0};
};

/// Eagle-like: 0.05% .. 42.58%, mean 3.42%.
inline SynthProfile eagle_profile() {
  SynthProfile p;
  p.name = "eagle";
  p.mean_mcm = 0.0342;
  p.max_mcm = 0.4258;
  p.min_mcm = 0.0005;
  p.heavy_tail_fraction = 0.03;
  p.e1q = {1e-4, 6e-4};
  p.e2q = {4e-3, 1.5e-2};
  p.readout = {5e-3, 3e-2};
  p.t1 = {120'000.0, 320'000.0};
  p.t2_over_t1 = {0.3, 0.9};
  return p;
}

/// Heron-like: 0.00% .. 14.04%, mean 1.19%.
inline SynthProfile heron_profile() {
  SynthProfile p;
  p.name = "heron";
  p.mean_mcm = 0.0119;
  p.max_mcm = 0.1404;
  p.min_mcm = 0.0;
  p.heavy_tail_fraction = 0.02;
  p.e1q = {1e-4, 4e-4};
  p.e2q = {2e-3, 8e-3};
  p.readout = {4e-3, 2e-2};
  p.t1 = {150'000.0, 350'000.0};
  p.t2_over_t1 = {0.4, 1.0};
  return p;
}

inline SynthProfile zero_profile() {
  SynthProfile p;
  p.name = "zero";
  return p;
}

namespace detail {
inline void check_range(const Range& r, double lo, double hi, const char* what) {
  if (!(r.lo >= lo && r.hi <= hi && r.lo <= r.hi)) {
    throw InvalidProfile(std::string("bad range for ") + what);
  }
}
}  // namespace detail

/// Pure function of (topology, seed, profile). Topology edges and durations
/// are kept; every calibration value is regenerated.
inline DeviceModel synth_error_map(DeviceModel device, std::uint64_t seed,
                                   const SynthProfile& profile) {
  const auto& p = profile;
  if (!(p.min_mcm >= 0.0 && p.min_mcm <= p.mean_mcm && p.mean_mcm <= p.max_mcm &&
        p.max_mcm <= 1.0)) {
    throw InvalidProfile("need 0 <= min_mcm <= mean_mcm <= max_mcm <= 1");
  }
  if (!(p.heavy_tail_fraction >= 0.0 && p.heavy_tail_fraction <= 1.0)) {
    throw InvalidProfile("heavy_tail_fraction outside [0,1]");
  }
  if (!(p.lognormal_sigma >= 0.0)) throw InvalidProfile("negative sigma");
  detail::check_range(p.e1q, 0.0, 1.0, "e1q");
  detail::check_range(p.e2q, 0.0, 1.0, "e2q");
  detail::check_range(p.readout, 0.0, 1.0, "readout");
  detail::check_range(p.t2_over_t1, 0.0, 2.0, "t2_over_t1");
  if (!(p.t1.lo > 0.0 && p.t1.lo <= p.t1.hi)) throw InvalidProfile("bad range for t1");
  if (!(p.t2_over_t1.lo > 0.0)) throw InvalidProfile("t2_over_t1 must be positive");

  const std::size_t n = device.num_qubits();
  Rng rng(seed);
  std::vector<double> mcm(n, 0.0);

  if (n > 0 && p.max_mcm > 0.0) {
    constexpr double outlier_floor = 0.1;
    std::size_t tail = static_cast<std::size_t>(
        std::llround(p.heavy_tail_fraction * static_cast<double>(n)));
    if (p.max_mcm < outlier_floor) tail = 0;
    tail = std::min(tail, n);
    // Outlier sites are a seeded random subset; the first one is pinned to
    // the profile maximum.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    double tail_sum = 0.0;
    for (std::size_t k = 0; k < tail; ++k) {
      const double v = k == 0 ? p.max_mcm : rng.uniform(outlier_floor, p.max_mcm);
      mcm[order[k]] = v;
      tail_sum += v;
    }
    const std::size_t body = n - tail;
    if (body > 0) {
      const double target_total = p.mean_mcm * static_cast<double>(n);
      const double body_mean =
          std::max(p.min_mcm, (target_total - tail_sum) / static_cast<double>(body));
      const double sigma = p.lognormal_sigma;
      const double mu = std::log(std::max(body_mean, 1e-12)) - 0.5 * sigma * sigma;
      std::vector<double> draws(body);
      for (auto& d : draws) d = std::exp(mu + sigma * rng.normal());
      // Rescale so the body hits its mean, then clamp into [min, max].
      const double drawn_mean =
          std::accumulate(draws.begin(), draws.end(), 0.0) / static_cast<double>(body);
      const double scale = drawn_mean > 0.0 ? body_mean / drawn_mean : 0.0;
      for (std::size_t k = 0; k < body; ++k) {
        mcm[order[tail + k]] = std::clamp(draws[k] * scale, p.min_mcm, p.max_mcm);
      }
      // Pin the minimum on the smallest body sample.
      std::size_t lowest = order[tail];
      for (std::size_t k = 0; k < body; ++k) {
        if (mcm[order[tail + k]] < mcm[lowest]) lowest = order[tail + k];
      }
      mcm[lowest] = p.min_mcm;
    }
  }

  for (std::size_t q = 0; q < n; ++q) {
    auto& cal = device.qubit(q);
    cal.mcm_error = mcm[q];
    cal.e1q = rng.uniform(p.e1q.lo, p.e1q.hi);
    cal.readout_error = rng.uniform(p.readout.lo, p.readout.hi);
    cal.t1 = rng.uniform(p.t1.lo, p.t1.hi);
    cal.t2 = std::min(2.0 * cal.t1, cal.t1 * rng.uniform(p.t2_over_t1.lo, p.t2_over_t1.hi));
  }
  for (std::size_t e = 0; e < device.num_edges(); ++e) {
    device.set_edge_error(e, rng.uniform(p.e2q.lo, p.e2q.hi));
  }
  device.set_profile_timestamp("synthetic:" + p.name + ":seed=" + std::to_string(seed));
  device.validate();
  return device;
}

}  // namespace mera

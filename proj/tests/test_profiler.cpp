#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "mera/analysis.hpp"
#include "mera/profiler.hpp"
#include "mera/synth.hpp"
#include "mera/topology.hpp"

using namespace mera;

TEST(Profiler, CircuitShape) {
  std::vector<std::size_t> all(127);
  std::iota(all.begin(), all.end(), 0);
  const auto c = build_profiling_circuit(all);
  EXPECT_EQ(c.size(), 508u);
  EXPECT_EQ(c.num_clbits(), 254u);
  EXPECT_EQ(critical_path_length(c), 4u);
  const auto mcm = mid_circuit_measures(c);
  EXPECT_EQ(std::count(mcm.begin(), mcm.end(), true), 127);
  EXPECT_THROW(build_profiling_circuit({1, 1}), InvariantViolation);
  const auto sparse = build_profiling_circuit({3, 5});
  EXPECT_EQ(sparse.num_qubits(), 6u);
  EXPECT_EQ(sparse[2].kind, OpKind::Measure);
  EXPECT_EQ(sparse[2].clbit, 0u);
  EXPECT_EQ(sparse[7].clbit, 3u);
}

TEST(Profiler, EstimatorCountsNonZeroFinals) {
  ShotCounts counts;
  // Bits: c3 c2 c1 c0; qubit 0 final is c1, qubit 1 final is c3.
  counts.add("0101", 70);
  counts.add("0111", 20);
  counts.add("1111", 10);
  const auto r = estimate_mcm_errors(counts, {4, 9}, "dev", "t0");
  ASSERT_EQ(r.qubits.size(), 2u);
  EXPECT_EQ(r.qubits[0].qubit, 4u);
  EXPECT_DOUBLE_EQ(r.qubits[0].mcm_error, 0.3);
  EXPECT_DOUBLE_EQ(r.qubits[1].mcm_error, 0.1);
  EXPECT_EQ(r.qubits[1].shots, 100u);
  EXPECT_EQ(r.qubits[1].timestamp, "t0");
  EXPECT_THROW(estimate_mcm_errors(ShotCounts{}, {0}), ZeroShots);
}

TEST(Profiler, UnbiasedUnderMcmOnlyNoise) {
  auto dev = make_small_hex();
  const std::vector<double> truth = {0.0, 0.05, 0.3, 0.5, 0.01, 0.2, 0.12};
  for (std::size_t p = 0; p < dev.num_qubits(); ++p) dev.qubit(p).mcm_error = truth[p];
  NoiseChannels ch = NoiseChannels::none();
  ch.mcm = true;
  const std::vector<std::size_t> qs = {0, 1, 2, 3, 4, 5, 6};
  const std::uint64_t shots = 20000;
  const auto r = profile_device(dev, qs, ch, shots, 3, "fixed");
  for (std::size_t k = 0; k < qs.size(); ++k) {
    const double p = truth[k];
    const double sigma = std::sqrt(std::max(p * (1 - p), 1e-6) / static_cast<double>(shots));
    EXPECT_NEAR(r.qubits[k].mcm_error, p, 4 * sigma + 1e-12) << k;
  }
  EXPECT_THROW(profile_device(dev, qs, ch, 0, 3), ZeroShots);
}

TEST(Profiler, RecoversSyntheticMapOrdering) {
  const auto dev = synth_error_map(make_small_hex(), 5, eagle_profile());
  NoiseChannels ch = NoiseChannels::none();
  ch.mcm = true;
  std::vector<std::size_t> qs(dev.num_qubits());
  std::iota(qs.begin(), qs.end(), 0);
  const auto r = profile_device(dev, qs, ch, default_profiling_shots, 11);
  EXPECT_EQ(r.qubits[0].timestamp, dev.profile_timestamp());
  for (std::size_t k = 0; k < qs.size(); ++k) {
    EXPECT_NEAR(r.qubits[k].mcm_error, dev.qubit(k).mcm_error, 0.05);
  }
  const auto j = report_to_json(r);
  EXPECT_EQ(j["qubits"].size(), qs.size());
  EXPECT_FALSE(j["crosstalk_isolated"].get<bool>());
}

#include <gtest/gtest.h>

#include <random>

#include "mera/benchmarks.hpp"
#include "mera/calibration_io.hpp"
#include "mera/topology.hpp"
#include "mera/worst_mapping.hpp"
#include "test_util.hpp"

using namespace mera;

namespace {

bool connected(const std::vector<std::size_t>& region, const DeviceModel& d) {
  std::vector<bool> in(d.num_qubits(), false);
  for (std::size_t p : region) in[p] = true;
  std::vector<bool> seen(d.num_qubits(), false);
  std::vector<std::size_t> stack{region.front()};
  seen[region.front()] = true;
  std::size_t count = 0;
  while (!stack.empty()) {
    const std::size_t p = stack.back();
    stack.pop_back();
    ++count;
    for (std::size_t nb : d.neighbors(p)) {
      if (in[nb] && !seen[nb]) {
        seen[nb] = true;
        stack.push_back(nb);
      }
    }
  }
  return count == region.size();
}

}  // namespace

TEST(WorstMapping, HotQubitTakesTheIntensiveLogical) {
  auto d = make_line(5);
  for (std::size_t p = 0; p < 5; ++p) d.qubit(p).mcm_error = 0.01;
  d.qubit(3).mcm_error = 0.4;
  const auto c = bv_reuse(4, 2);
  const auto l = worst_mapping(c, d);
  EXPECT_EQ(l.physical(0), 3u);
  EXPECT_TRUE(d.coupled(l.physical(0), l.physical(1)));
}

TEST(WorstMapping, UniformMapIsDeterministicAndContiguous) {
  auto d = make_grid(2, 3);
  for (std::size_t p = 0; p < d.num_qubits(); ++p) d.qubit(p).mcm_error = 0.02;
  const auto c = rus(4);
  const auto a = worst_mapping(c, d);
  EXPECT_EQ(a, worst_mapping(c, d));
  EXPECT_TRUE(a.total());
  EXPECT_TRUE(connected(worst_region(c, d), d));
  EXPECT_THROW(worst_mapping(rus(8), d), DeviceTooSmall);
}

TEST(WorstMapping, CrossesLowErrorBridge) {
  // The two noisiest qubits sit behind the quietest one.
  auto d = make_small_hex();
  const std::vector<double> e = {0.05, 0.004, 0.12, 0.015, 0.30, 0.025, 0.010};
  for (std::size_t p = 0; p < 7; ++p) d.qubit(p).mcm_error = e[p];
  Circuit c(5, 1);
  for (std::size_t q = 0; q < 5; ++q) c.measure(q, 0).reset(q).measure(q, 0);
  const auto region = worst_region(c, d);
  EXPECT_EQ(region, (std::vector<std::size_t>{1, 2, 3, 4, 5}));
  EXPECT_DOUBLE_EQ(worst_mapping_cost(c, region, d), exhaustive_worst_cost(c, d));
}

TEST(WorstMapping, MatchesExhaustiveOnBundledSmallDevices) {
  std::mt19937_64 gen(61);
  for (const char* f : {"data/devices/small-hex-example.json", "data/devices/line6-synth.json",
                        "data/devices/grid2x4-synth.json"}) {
    const auto d = load_device(test::source_path(f));
    for (int trial = 0; trial < 100; ++trial) {
      const auto c = test::random_circuit(gen, 2 + gen() % (d.num_qubits() - 1), 30, false);
      const auto region = worst_region(c, d);
      ASSERT_EQ(region.size(), c.num_qubits());
      EXPECT_TRUE(connected(region, d));
      EXPECT_NEAR(worst_mapping_cost(c, region, d), exhaustive_worst_cost(c, d), 1e-12) << f;
    }
  }
}

TEST(WorstMapping, AssignmentSortsIntensityAgainstError) {
  auto d = make_line(4);
  const std::vector<double> e = {0.1, 0.3, 0.2, 0.05};
  for (std::size_t p = 0; p < 4; ++p) d.qubit(p).mcm_error = e[p];
  // q2 has two MCMs, q0 one, q1 none.
  Circuit c(3, 1);
  c.measure(0, 0).reset(0).cx(0, 1).measure(2, 0).reset(2).measure(2, 0).reset(2).cx(1, 2);
  const auto l = assign_worst(c, {0, 1, 2}, d);
  EXPECT_EQ(l.physical(2), 1u);
  EXPECT_EQ(l.physical(0), 2u);
  EXPECT_EQ(l.physical(1), 0u);
}

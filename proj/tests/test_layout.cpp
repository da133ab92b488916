#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

#include "mera/layout.hpp"
#include "mera/synth.hpp"
#include "mera/topology.hpp"
#include "test_util.hpp"

using namespace mera;

namespace {

DeviceModel noisy_line(std::size_t n, std::uint64_t seed) {
  return synth_error_map(make_line(n), seed, eagle_profile());
}

// q0 measures and resets three times and talks to q1; q2 only talks to q1.
Circuit mcm_heavy() {
  Circuit c(3, 3);
  for (int r = 0; r < 3; ++r) {
    c.h(0).cx(0, 1).measure(0, static_cast<std::size_t>(r)).reset(0);
  }
  c.cx(1, 2).measure(1, 0).measure(2, 1);
  return c;
}

// Every injective placement of `n` logical qubits, for the brute-force check.
double brute_force_min(const CircuitAnalysis& a, const DeviceModel& d, const DistanceMatrix& dm,
                       const LayoutWeights& w) {
  std::vector<std::size_t> phys(d.num_qubits());
  std::iota(phys.begin(), phys.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> pick(a.num_qubits);
  std::function<void(std::size_t, std::vector<bool>&)> rec = [&](std::size_t q,
                                                                 std::vector<bool>& used) {
    if (q == a.num_qubits) {
      best = std::min(best, layout_cost(Layout::from_vector(pick, d.num_qubits()), a, d, dm, w));
      return;
    }
    for (std::size_t p = 0; p < d.num_qubits(); ++p) {
      if (used[p]) continue;
      used[p] = true;
      pick[q] = p;
      rec(q + 1, used);
      used[p] = false;
    }
  };
  std::vector<bool> used(d.num_qubits(), false);
  rec(0, used);
  return best;
}

}  // namespace

TEST(Layout, MapInvariants) {
  Layout l(2, 3);
  l.map(0, 2);
  EXPECT_THROW(l.map(0, 1), AlreadyMapped);
  EXPECT_THROW(l.map(1, 2), OccupiedPhysical);
  EXPECT_FALSE(l.total());
  l.map(1, 0);
  EXPECT_TRUE(l.total());
  EXPECT_EQ(l.logical(2), 0u);
  l.swap_physical(2, 1);
  EXPECT_EQ(l.physical(0), 1u);
  EXPECT_FALSE(l.is_used(2));
  EXPECT_THROW(Layout::trivial(4, 3), DeviceTooSmall);
}

TEST(Layout, McmCostAndSeedScoreFormulas) {
  auto d = make_line(3);
  d.qubit(0) = {0.10, 0.001, 0.02, 1e5, 1e5};
  d.qubit(1) = {0.01, 0.002, 0.03, 1e5, 1e5};
  d.qubit(2) = {0.04, 0.003, 0.04, 1e5, 1e5};
  d.set_edge_error(0, 0.01);
  d.set_edge_error(1, 0.03);
  const McmIntensity intensity = {3, 0, 1};
  EXPECT_DOUBLE_EQ(mcm_cost(0, 0, intensity, d), 0.3);
  EXPECT_DOUBLE_EQ(mcm_cost(1, 0, intensity, d), 0.0);
  const SeedWeights w;
  const auto scores = seed_scores(d, w);
  ASSERT_EQ(scores.size(), 3u);
  // Middle qubit: low MCM error, mean of its two edges, full connectivity.
  const double s1 = 0.25 * 0.99 + 0.25 * (1 - 0.02) + 0.1 * (1 - 0.002) + 0.2 * (1 - 0.03) + 0.2;
  EXPECT_EQ(scores[0].qubit, 1u);
  EXPECT_NEAR(scores[0].score, s1, 1e-15);
  const double s0 = 0.25 * 0.9 + 0.25 * 0.99 + 0.1 * 0.999 + 0.2 * 0.98 + 0.2 * 0.5;
  const double s2 = 0.25 * 0.96 + 0.25 * 0.97 + 0.1 * 0.997 + 0.2 * 0.96 + 0.2 * 0.5;
  EXPECT_EQ(scores[1].qubit, s0 > s2 ? 0u : 2u);
}

TEST(Layout, CostTermsSingleCx) {
  auto d = make_line(3);
  Circuit c(2, 0);
  c.cx(0, 1);
  const auto a = analyze_circuit(c, 6);
  const auto dm = distance_matrix(d);
  LayoutWeights w;
  auto adjacent = Layout::from_vector({0, 1}, 3);
  auto apart = Layout::from_vector({0, 2}, 3);
  EXPECT_DOUBLE_EQ(layout_cost(adjacent, a, d, dm, w), 0.45);
  EXPECT_DOUBLE_EQ(layout_cost(apart, a, d, dm, w), 0.9);
  d.set_edge_error(0, 0.1);
  // Each endpoint touches one 2Q gate; p0 averages just edge 0.
  EXPECT_NEAR(layout_cost(adjacent, a, d, dm, w), 0.45 + 0.2 * (0.1 + 0.05), 1e-15);
}

TEST(Layout, IncrementalMatchesFullCost) {
  std::mt19937_64 gen(41);
  const auto raw = synth_error_map(make_small_hex(), 4, eagle_profile());
  const auto d = normalize_mcm(raw, 0.02);
  const auto dm = distance_matrix(d);
  const LayoutWeights w;
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = test::random_circuit(gen, 5, 30, false);
    const auto a = analyze_circuit(c, w.look_ahead);
    Layout l(5, d.num_qubits());
    std::vector<std::size_t> phys(d.num_qubits());
    std::iota(phys.begin(), phys.end(), 0);
    std::shuffle(phys.begin(), phys.end(), gen);
    for (std::size_t q = 0; q < 5; ++q) {
      const double inc = incremental_cost(l, q, phys[q], a, d, dm, w);
      l.map(q, phys[q]);
      EXPECT_NEAR(inc, layout_cost(l, a, d, dm, w), 1e-12);
    }
    EXPECT_THROW(incremental_cost(l, 0, phys[5], a, d, dm, w), AlreadyMapped);
  }
  Layout l(2, d.num_qubits());
  l.map(0, 3);
  Circuit c(2, 0);
  const auto a = analyze_circuit(c, 6);
  EXPECT_THROW(incremental_cost(l, 1, 3, a, d, dm, w), OccupiedPhysical);
}

TEST(Layout, WindowStopsAtLookAhead) {
  Circuit c(2, 0);
  for (int i = 0; i < 10; ++i) c.cx(0, 1);
  EXPECT_EQ(analyze_circuit(c, 6).window.size(), 6u);
  EXPECT_EQ(analyze_circuit(c, 0).window.size(), 0u);
}

TEST(Layout, SelectionIsArgminOfCandidates) {
  std::mt19937_64 gen(42);
  for (int trial = 0; trial < 30; ++trial) {
    const auto dev = synth_error_map(make_small_hex(), 100 + static_cast<std::uint64_t>(trial),
                                     eagle_profile());
    const auto c = test::random_circuit(gen, 4, 30, false);
    const auto cands = layout_candidates(c, dev);
    ASSERT_FALSE(cands.empty());
    double best = cands[0].cost;
    for (const auto& k : cands) best = std::min(best, k.cost);
    const auto chosen = select_layout(c, dev);
    EXPECT_TRUE(chosen.total());
    const auto a = analyze_circuit(c, 6);
    const auto d = normalize_mcm(dev, 0.02);
    const auto dm = distance_matrix(d);
    const double cost = layout_cost(chosen, a, d, dm, LayoutWeights{});
    EXPECT_DOUBLE_EQ(cost, best);
    // Heuristic, but never below the exhaustive optimum.
    EXPECT_GE(cost + 1e-12, brute_force_min(a, d, dm, LayoutWeights{}));
  }
}

TEST(Layout, NearOptimalOnSmallInstances) {
  std::mt19937_64 gen(43);
  double worst_ratio = 1.0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto dev = noisy_line(5, 200 + static_cast<std::uint64_t>(trial));
    const auto c = test::random_circuit(gen, 3, 20, false);
    const auto a = analyze_circuit(c, 6);
    const auto d = normalize_mcm(dev, 0.02);
    const auto dm = distance_matrix(d);
    const double opt = brute_force_min(a, d, dm, LayoutWeights{});
    const double got = layout_cost(select_layout(c, dev), a, d, dm, LayoutWeights{});
    if (opt > 0) worst_ratio = std::max(worst_ratio, got / opt);
  }
  EXPECT_LT(worst_ratio, 1.5);
}

TEST(Layout, InvariantToSubThresholdMcmNoise) {
  std::mt19937_64 gen(44);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = synth_error_map(make_small_hex(), 300 + static_cast<std::uint64_t>(trial),
                             eagle_profile());
    auto b = a;
    std::uniform_real_distribution<double> sub(0.0, 0.0199);
    for (std::size_t p = 0; p < a.num_qubits(); ++p) {
      if (a.qubit(p).mcm_error < 0.02) {
        a.qubit(p).mcm_error = sub(gen);
        b.qubit(p).mcm_error = sub(gen);
      }
    }
    const auto c = test::random_circuit(gen, 5, 40, false);
    EXPECT_EQ(select_layout(c, a), select_layout(c, b));
  }
}

TEST(Layout, AvoidsNoisyQubitForIntensiveLogical) {
  auto dev = make_line(3);
  dev.qubit(0).mcm_error = 0.3;
  dev.qubit(1).mcm_error = 0.01;
  dev.qubit(2).mcm_error = 0.01;
  const auto c = mcm_heavy();
  const auto aware = select_layout(c, dev);
  EXPECT_NE(aware.physical(0), 0u);
  // With the high-error tail on the middle qubit, the heavy logical qubit
  // leaves it even though the middle has best connectivity.
  dev.qubit(0).mcm_error = 0.01;
  dev.qubit(1).mcm_error = 0.4;
  EXPECT_NE(select_layout(c, dev).physical(0), 1u);
}

TEST(Layout, VariantsReorderKnownSet) {
  auto dev = make_line(4);
  dev.qubit(0).mcm_error = 0.25;
  dev.qubit(1).mcm_error = 0.05;
  dev.qubit(2).mcm_error = 0.15;
  dev.qubit(3).mcm_error = 0.0;
  const auto c = mcm_heavy();
  const auto a = analyze_circuit(c, 6);
  const auto base = Layout::from_vector({0, 1, 2}, 4);
  const auto vs = generate_variants(base, a, dev);
  ASSERT_GE(vs.size(), 2u);
  EXPECT_EQ(vs[0], base);
  // MCM-aware: the intensive qubit takes p1, the others keep p0/p2 if free.
  EXPECT_EQ(vs[1].physical(0), 1u);
  for (const auto& v : vs) {
    auto used = v.used_physical();
    EXPECT_EQ(used, (std::vector<std::size_t>{0, 1, 2}));
  }
  EXPECT_THROW(generate_variants(Layout(3, 4), a, dev), InvariantViolation);
}

TEST(Layout, ExpansionUsesConnectedRegion) {
  const auto dev = synth_error_map(make_eagle127(), 7, eagle_profile());
  Circuit c(6, 0);
  for (std::size_t q = 0; q + 1 < 6; ++q) c.cx(q, q + 1);
  const auto l = select_layout(c, dev);
  const auto dm = distance_matrix(dev);
  for (std::size_t q = 0; q + 1 < 6; ++q) EXPECT_LE(dm(l.physical(q), l.physical(q + 1)), 2u);
  EXPECT_THROW(select_layout(Circuit(8, 0), make_line(7)), DeviceTooSmall);
}

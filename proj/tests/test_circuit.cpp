#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "mera/analysis.hpp"
#include "mera/circuit.hpp"
#include "mera/dag.hpp"
#include "mera/statevector.hpp"
#include "test_util.hpp"

using namespace mera;

TEST(Circuit, RejectsBadArity) {
  Circuit c(2, 1);
  Instruction bad;
  bad.kind = OpKind::CX;
  bad.qubits = {0};
  EXPECT_THROW(c.add(bad), InvariantViolation);
  EXPECT_THROW(c.cx(0, 0), InvariantViolation);
  EXPECT_THROW(c.h(2), InvariantViolation);
  EXPECT_THROW(c.measure(0, 1), InvariantViolation);
  EXPECT_THROW(c.delay(0, -1), InvariantViolation);
}

TEST(Circuit, ConditionNeedsEarlierMeasure) {
  Circuit c(2, 1);
  EXPECT_THROW(c.add(Instruction::gate(OpKind::X, 1).if_bit(0, 1)), InvariantViolation);
  c.measure(0, 0);
  EXPECT_NO_THROW(c.add(Instruction::gate(OpKind::X, 1).if_bit(0, 1)));
  EXPECT_THROW(c.add(Instruction::gate(OpKind::X, 1).if_bit(0, 2)), InvariantViolation);
}

TEST(Circuit, RusBlockValidation) {
  Circuit c(2, 1);
  c.h(0).cx(0, 1).measure(0, 0).reset(0);
  EXPECT_THROW(c.set_rus({0, 2, 0, 0, 64}), InvariantViolation);  // no measure in body
  EXPECT_THROW(c.set_rus({2, 2, 0, 0, 64}), InvariantViolation);
  EXPECT_NO_THROW(c.set_rus({0, 4, 0, 0, 64}));
  ASSERT_TRUE(c.rus().has_value());
  EXPECT_EQ(c.rus()->end, 4u);
}

TEST(Dag, EmptyCircuit) {
  const Dag d = build_dag(Circuit(3, 0));
  EXPECT_EQ(d.size(), 0u);
  EXPECT_EQ(d.num_edges(), 0u);
}

TEST(Dag, SharedQubitChain) {
  Circuit c(2, 0);
  c.h(0).cx(0, 1).h(1);
  const Dag d = build_dag(c);
  EXPECT_TRUE(d.has_edge(0, 1));
  EXPECT_TRUE(d.has_edge(1, 2));
  EXPECT_FALSE(d.has_edge(0, 2));
  EXPECT_EQ(d.num_edges(), 2u);
}

TEST(Dag, ConditionBitCreatesEdge) {
  Circuit c(2, 1);
  c.measure(0, 0);
  c.add(Instruction::gate(OpKind::X, 1).if_bit(0, 1));
  const Dag d = build_dag(c);
  EXPECT_TRUE(d.has_edge(0, 1));
}

TEST(Dag, EdgesPointForward) {
  std::mt19937_64 gen(7);
  for (int t = 0; t < 20; ++t) {
    const Circuit c = test::random_circuit(gen, 5, 30, true);
    const Dag d = build_dag(c);
    for (std::size_t u = 0; u < d.size(); ++u) {
      for (std::size_t v : d.successors(u)) EXPECT_LT(u, v);
    }
  }
}

// Replaying a random topological order matches program order exactly.
TEST(Dag, TopologicalReplayPreservesStatevector) {
  std::mt19937_64 gen(11);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(gen() % 7);
    const Circuit c = test::random_unitary_circuit(gen, n, 20);
    const Dag d = build_dag(c);
    // Kahn's algorithm with a random ready-set choice.
    std::vector<std::size_t> indeg(d.size());
    for (std::size_t v = 0; v < d.size(); ++v) indeg[v] = d.predecessors(v).size();
    std::vector<std::size_t> ready;
    for (std::size_t v = 0; v < d.size(); ++v) {
      if (indeg[v] == 0) ready.push_back(v);
    }
    Circuit replay(c.num_qubits(), c.num_clbits());
    while (!ready.empty()) {
      const std::size_t pick = static_cast<std::size_t>(gen() % ready.size());
      const std::size_t v = ready[pick];
      ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(pick));
      replay.add(c[v]);
      for (std::size_t w : d.successors(v)) {
        if (--indeg[w] == 0) ready.push_back(w);
      }
    }
    ASSERT_EQ(replay.size(), c.size());
    const auto a = final_statevector(c);
    const auto b = final_statevector(replay);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_NEAR(std::abs(a[i] - b[i]), 0.0, 1e-12);
    }
  }
}

TEST(Analysis, InteractionGraphReuseCircuit) {
  // Two physical qubits; the reused qubit meets the target three times.
  Circuit c(2, 3);
  c.x(1).h(1);
  for (int stage = 0; stage < 3; ++stage) {
    c.h(0).cx(0, 1).h(0).measure(0, static_cast<std::size_t>(stage));
    if (stage < 2) c.reset(0);
  }
  const auto g = interaction_graph(c);
  EXPECT_EQ(g.edges().size(), 1u);
  EXPECT_EQ(g.multiplicity(0, 1), 3u);
  const auto mi = mcm_intensity(c);
  EXPECT_EQ(mi[0], 2u);
  EXPECT_EQ(mi[1], 0u);
}

TEST(Analysis, OneQubitOnlyHasNoEdges) {
  Circuit c(3, 0);
  c.h(0).x(1).rz(0.3, 2);
  EXPECT_TRUE(interaction_graph(c).edges().empty());
}

TEST(Analysis, GhzIsPath) {
  Circuit c(4, 0);
  c.h(0).cx(0, 1).cx(1, 2).cx(2, 3);
  const auto g = interaction_graph(c);
  EXPECT_EQ(g.edges().size(), 3u);
  for (std::size_t i = 0; i + 1 < 4; ++i) EXPECT_EQ(g.multiplicity(i, i + 1), 1u);
}

TEST(Analysis, TerminalMeasuresAreNotMcm) {
  Circuit c(2, 2);
  c.h(0).cx(0, 1).measure(0, 0).measure(1, 1);
  const auto mi = mcm_intensity(c);
  EXPECT_EQ(mi, (McmIntensity{0, 0}));
}

TEST(Analysis, ProfilingCircuitIntensity) {
  Circuit c(1, 2);
  c.x(0).measure(0, 0).reset(0).measure(0, 1);
  EXPECT_EQ(mcm_intensity(c)[0], 1u);
}

TEST(Analysis, IntensityInvariantUnderAppendedMeasures) {
  std::mt19937_64 gen(3);
  for (int t = 0; t < 30; ++t) {
    Circuit c = test::random_circuit(gen, 4, 25, false);
    const auto before = mcm_intensity(c);
    Circuit ext(c.num_qubits(), c.num_clbits() + c.num_qubits());
    for (const auto& i : c.instructions()) ext.add(i);
    for (std::size_t q = 0; q < c.num_qubits(); ++q) ext.measure(q, c.num_clbits() + q);
    EXPECT_EQ(mcm_intensity(ext), before);
  }
}

TEST(Analysis, IntensitySumsToMidCircuitMeasures) {
  std::mt19937_64 gen(5);
  for (int t = 0; t < 30; ++t) {
    const Circuit c = test::random_circuit(gen, 5, 30, true);
    const auto mi = mcm_intensity(c);
    const auto flags = mid_circuit_measures(c);
    EXPECT_EQ(std::accumulate(mi.begin(), mi.end(), std::size_t{0}),
              static_cast<std::size_t>(std::count(flags.begin(), flags.end(), true)));
  }
}

TEST(Analysis, TotalMultiplicityEqualsTwoQubitCount) {
  std::mt19937_64 gen(9);
  for (int t = 0; t < 30; ++t) {
    const Circuit c = test::random_circuit(gen, 6, 40, true);
    EXPECT_EQ(interaction_graph(c).total_multiplicity(), count_two_qubit_gates(c));
  }
}

TEST(Analysis, CriticalPath) {
  Circuit one(1, 0);
  one.h(0);
  EXPECT_EQ(critical_path_length(one), 1u);

  Circuit chain(1, 0);
  for (int i = 0; i < 9; ++i) chain.x(0);
  EXPECT_EQ(critical_path_length(chain), 9u);

  Circuit skip(2, 1);
  skip.h(0).barrier({0, 1}).delay(1, 100).h(1).measure(1, 0).reset(1);
  EXPECT_EQ(critical_path_length(skip), 4u);  // h, h, measure, reset
}

TEST(Analysis, CountSwaps) {
  Circuit c(3, 0);
  c.h(0).cx(0, 1);
  EXPECT_EQ(count_swaps(c), 0u);
  c.swap(1, 2).swap(0, 1);
  EXPECT_EQ(count_swaps(c), 2u);
}

TEST(Analysis, FusedResets) {
  Circuit c(2, 2);
  c.measure(0, 0).reset(0).measure(1, 1).h(1).reset(1);
  const auto f = fused_resets(c);
  EXPECT_EQ(f[0], 1u);
  EXPECT_EQ(f[2], std::numeric_limits<std::size_t>::max());
}

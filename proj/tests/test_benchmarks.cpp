#include <gtest/gtest.h>

#include <algorithm>

#include "mera/analysis.hpp"
#include "mera/benchmarks.hpp"
#include "mera/noisy_sim.hpp"
#include "mera/qasm.hpp"
#include "test_util.hpp"

using namespace mera;

TEST(Benchmarks, BvReuseFourOnTwo) {
  const auto c = gen_benchmark(BenchmarkSpec::bv(4, 2));
  EXPECT_EQ(c.num_qubits(), 2u);
  EXPECT_EQ(mcm_intensity(c), (McmIntensity{2, 0}));
  const auto mcm = mid_circuit_measures(c);
  EXPECT_EQ(std::count(mcm.begin(), mcm.end(), true), 2);
  // All-ones secret.
  const auto d = exact_distribution(c).joint();
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.begin()->first, "111");
  EXPECT_EQ(bv_reuse(10, 2).num_clbits(), 9u);
  EXPECT_EQ(exact_distribution(bv_reuse(6, 3)).joint().begin()->first, "11111");
}

TEST(Benchmarks, HLadderPathIsEightPerLogicalQubit) {
  EXPECT_EQ(critical_path_length(h_ladder(3, 2)), 24u);
  EXPECT_EQ(critical_path_length(h_ladder(5, 2)), 40u);
  EXPECT_EQ(critical_path_length(h_ladder(7, 2)), 56u);
  const auto c = h_ladder(5, 2);
  EXPECT_EQ(c.num_qubits(), 2u);
  const auto mcm = mid_circuit_measures(c);
  EXPECT_EQ(std::count(mcm.begin(), mcm.end(), true), 3);
}

TEST(Benchmarks, RusShape) {
  for (std::size_t k = 4; k <= 18; k += 2) {
    const auto c = rus(k);
    ASSERT_TRUE(c.rus()) << k;
    EXPECT_EQ(critical_path_length(c), 28u) << k;
    const auto& b = *c.rus();
    std::size_t measures = 0;
    bool conditional = false;
    for (std::size_t i = b.begin; i < b.end; ++i) {
      measures += c[i].kind == OpKind::Measure ? 1 : 0;
      conditional |= c[i].condition.has_value();
    }
    EXPECT_EQ(measures, 1u);
    EXPECT_TRUE(conditional);
    // Every 2Q gate acts on an (even, odd) neighbour pair.
    for (const auto& inst : c.instructions()) {
      if (inst.kind != OpKind::CX) continue;
      EXPECT_EQ(std::min(inst.qubits[0], inst.qubits[1]) % 2, 0u);
      EXPECT_EQ(std::max(inst.qubits[0], inst.qubits[1]) - std::min(inst.qubits[0], inst.qubits[1]),
                1u);
    }
  }
  EXPECT_EQ(rus_suite().size(), 8u);
}

TEST(Benchmarks, DeterministicAndRoundTrips) {
  for (const auto& s : reuse_suite(test::source_path("benchmarks"))) {
    const auto a = gen_benchmark(s);
    EXPECT_EQ(a, gen_benchmark(s)) << s.display_name();
    EXPECT_EQ(qasm::parse(qasm::emit(a)), a) << s.display_name();
  }
  EXPECT_EQ(reuse_suite("x").size(), 11u);
}

TEST(Benchmarks, StandInsComputeWhatTheyClaim) {
  const auto ipea = gen_benchmark(BenchmarkSpec::qasm_file(
      test::source_path("benchmarks/ipea_standin.qasm")));
  EXPECT_EQ(ipea.num_qubits(), 2u);
  const auto d = exact_distribution(ipea).joint();
  EXPECT_NEAR(d.at("011"), 1.0, 1e-12);
  const auto shor = gen_benchmark(BenchmarkSpec::qasm_file(
      test::source_path("benchmarks/shor5_standin.qasm")));
  EXPECT_EQ(shor.num_qubits(), 5u);
  const auto mcm = mid_circuit_measures(shor);
  EXPECT_EQ(std::count(mcm.begin(), mcm.end(), true), 2);
  // Order 4: phases 0, 1/4, 1/2, 3/4.
  const auto p = exact_distribution(shor).joint();
  for (const char* k : {"000", "010", "100", "110"}) EXPECT_NEAR(p.at(k), 0.25, 1e-9) << k;
}

TEST(Benchmarks, SpecParsingAndErrors) {
  const auto s = parse_benchmark_spec("bv:7-2");
  EXPECT_EQ(s.family, BenchmarkFamily::BvReuse);
  EXPECT_EQ(s.m, 7u);
  EXPECT_EQ(s.expected_physical(), 2u);
  EXPECT_EQ(s.display_name(), "BV 7-2");
  EXPECT_EQ(parse_benchmark_spec("hladder:3-2").display_name(), "H-Ladder 3-2");
  EXPECT_EQ(parse_benchmark_spec("rus:6").m, 6u);
  EXPECT_EQ(parse_benchmark_spec("qasm:a.qasm").path, "a.qasm");
  for (const char* bad : {"bv", "bv:4", "bv:x-2", "foo:1-1", "rus:"}) {
    EXPECT_THROW(parse_benchmark_spec(bad), InvalidSpec) << bad;
  }
  EXPECT_THROW(gen_benchmark(BenchmarkSpec::bv(1, 2)), InvalidSpec);
  EXPECT_THROW(gen_benchmark(BenchmarkSpec::rus(5)), InvalidSpec);
  EXPECT_THROW(gen_benchmark(BenchmarkSpec::ghz(1)), InvalidSpec);
  EXPECT_THROW(gen_benchmark(BenchmarkSpec::qasm_file("")), InvalidSpec);
}

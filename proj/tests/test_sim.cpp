#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "mera/counts.hpp"
#include "mera/noisy_sim.hpp"
#include "mera/statevector.hpp"
#include "mera/topology.hpp"
#include "test_util.hpp"

using namespace mera;

namespace {

NoiseChannels only(bool NoiseChannels::*field) {
  NoiseChannels c = NoiseChannels::none();
  c.*field = true;
  return c;
}

Circuit ghz(std::size_t n) {
  Circuit c(n, n);
  c.h(0);
  for (std::size_t q = 1; q < n; ++q) c.cx(q - 1, q);
  for (std::size_t q = 0; q < n; ++q) c.measure(q, q);
  return c;
}

// Body: rotate, measure to c0, reset. Success when c0 reads 0.
Circuit rus_circuit(double theta, std::size_t max_repeats) {
  Circuit c(2, 2);
  c.h(1);
  c.ry(theta, 0).measure(0, 0).reset(0);
  c.measure(1, 1);
  c.set_rus({1, 4, 0, 0, max_repeats});
  return c;
}

}  // namespace

TEST(Hellinger, ReferenceValues) {
  EXPECT_DOUBLE_EQ(hellinger_fidelity(Distribution{{"0", 0.5}, {"1", 0.5}},
                                      Distribution{{"0", 0.5}, {"1", 0.5}}),
                   1.0);
  EXPECT_DOUBLE_EQ(hellinger_fidelity(Distribution{{"0", 1.0}}, Distribution{{"1", 1.0}}), 0.0);
  EXPECT_NEAR(hellinger_fidelity(Distribution{{"0", 0.5}, {"1", 0.5}}, Distribution{{"0", 1.0}}),
              0.5, 1e-15);
  // (sqrt(.9*.5) + sqrt(.1*.5))^2
  const double expect = std::pow(std::sqrt(0.45) + std::sqrt(0.05), 2);
  EXPECT_NEAR(hellinger_fidelity(Distribution{{"0", 0.9}, {"1", 0.1}},
                                 Distribution{{"0", 0.5}, {"1", 0.5}}),
              expect, 1e-15);
  EXPECT_THROW(hellinger_fidelity(ShotCounts{}, ShotCounts{}), EmptyCounts);
  EXPECT_THROW(ShotCounts{}.distribution(), EmptyCounts);
}

TEST(Counts, KeysAreMostSignificantFirst) {
  EXPECT_EQ(bitstring({1, 0, 0}), "001");
  EXPECT_TRUE(key_bit("001", 0));
  EXPECT_FALSE(key_bit("001", 2));
  Circuit c(2, 2);
  c.x(1).measure(0, 0).measure(1, 1);
  const auto counts = run_ideal(c, 10, 1);
  EXPECT_EQ(counts.count("10"), 10u);
}

TEST(Sim, BellState) {
  const auto counts = run_ideal(ghz(2), 4000, 3);
  EXPECT_EQ(counts.shots, 4000u);
  EXPECT_EQ(counts.count("01") + counts.count("10"), 0u);
  EXPECT_NEAR(static_cast<double>(counts.count("00")) / 4000.0, 0.5, 0.04);
  const auto exact = exact_distribution(ghz(2));
  EXPECT_NEAR(exact.probability("00"), 0.5, 1e-12);
  EXPECT_NEAR(exact.probability("11"), 0.5, 1e-12);
  EXPECT_GT(hellinger_fidelity(counts, exact), 0.99);
}

TEST(Sim, ExactMatchesStatevector) {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 30; ++trial) {
    auto u = test::random_unitary_circuit(gen, 4, 25);
    const auto amps = final_statevector(u);
    Circuit c(4, 4);
    for (const auto& inst : u.instructions()) c.add(inst);
    for (std::size_t q = 0; q < 4; ++q) c.measure(q, q);
    const auto exact = exact_distribution(c);
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
      std::vector<std::uint8_t> bits(4);
      for (std::size_t q = 0; q < 4; ++q) bits[q] = (idx >> q) & 1u;
      EXPECT_NEAR(exact.probability(bitstring(bits)), std::norm(amps[idx]), 1e-10);
    }
  }
}

TEST(Sim, ZeroNoiseSamplesExactDistribution) {
  std::mt19937_64 gen(22);
  DeviceModel dev("k4", 4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  for (std::size_t p = 0; p < 4; ++p) dev.qubit(p).t1 = dev.qubit(p).t2 = 1e300;
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = test::random_circuit(gen, 4, 30, true);
    const auto exact = exact_distribution(c);
    const auto counts = simulate(c, dev, NoiseChannels::none(), 4000, 100 + trial).counts;
    for (const auto& [k, n] : counts.counts) EXPECT_GT(exact.probability(k), 0.0) << k;
    EXPECT_GT(hellinger_fidelity(counts, exact), 0.98);
    // Zero-error device with every channel on behaves the same.
    EXPECT_EQ(simulate(c, dev, NoiseChannels{}, 500, 7).counts,
              simulate(c, dev, NoiseChannels::none(), 500, 7).counts);
  }
}

TEST(Sim, MarginalsMultiplyAcrossComponents) {
  Circuit c(3, 3);
  c.h(0).ry(1.0, 1).cx(1, 2).measure(0, 0).measure(1, 1).measure(2, 2);
  const auto exact = exact_distribution(c);
  EXPECT_EQ(exact.marginals().size(), 2u);
  const double p1 = std::pow(std::sin(0.5), 2);
  EXPECT_NEAR(exact.probability("111"), 0.5 * p1, 1e-12);
  EXPECT_NEAR(exact.probability("000"), 0.5 * (1 - p1), 1e-12);
  double total = 0.0;
  for (const auto& [k, p] : exact.joint()) total += p;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Sim, ReadoutFlipIsBinomial) {
  auto dev = make_line(1);
  dev.qubit(0).readout_error = 0.2;
  Circuit c(1, 1);
  c.measure(0, 0);
  const std::uint64_t n = 20000;
  const auto counts = run(c, dev, only(&NoiseChannels::readout), n, 5);
  const double sigma = std::sqrt(0.2 * 0.8 / static_cast<double>(n));
  EXPECT_NEAR(static_cast<double>(counts.count("1")) / static_cast<double>(n), 0.2, 4 * sigma);
}

TEST(Sim, McmFlipAfterReset) {
  auto dev = make_line(1);
  dev.qubit(0).mcm_error = 0.3;
  Circuit c(1, 2);
  c.x(0).measure(0, 0).reset(0).measure(0, 1);
  const std::uint64_t n = 20000;
  const auto counts = run(c, dev, only(&NoiseChannels::mcm), n, 6);
  std::uint64_t ones = 0;
  for (const auto& [k, m] : counts.counts) {
    EXPECT_TRUE(key_bit(k, 0));
    if (key_bit(k, 1)) ones += m;
  }
  const double sigma = std::sqrt(0.3 * 0.7 / static_cast<double>(n));
  EXPECT_NEAR(static_cast<double>(ones) / static_cast<double>(n), 0.3, 4 * sigma);
}

TEST(Sim, GateNoiseLowersFidelityMonotonically) {
  const auto c = ghz(5);
  const auto exact = exact_distribution(c);
  double previous = 1.1;
  for (double e : {0.0, 0.02, 0.08, 0.2}) {
    auto dev = make_line(5);
    for (std::size_t i = 0; i < dev.num_edges(); ++i) dev.set_edge_error(i, e);
    const auto counts = run(c, dev, only(&NoiseChannels::gate_2q), 8000, 9);
    const double f = hellinger_fidelity(counts, exact);
    EXPECT_LT(f, previous);
    previous = f;
  }
  EXPECT_LT(previous, 0.8);
}

TEST(Sim, IdleAndCrosstalkNeedTime) {
  auto dev = make_line(2);
  dev.qubit(0).mcm_error = 0.4;
  dev.qubit(1).t1 = 5000.0;
  dev.qubit(1).t2 = 5000.0;
  // q1 in |+> waits while q0 measures and resets; dephasing shows up as
  // a nonzero '1' rate after the closing H.
  Circuit c(2, 2);
  c.h(1).barrier({0, 1}).measure(0, 0).reset(0).cx(0, 1).h(1).measure(1, 1);
  auto quiet = run(c, dev, NoiseChannels::none(), 4000, 4);
  EXPECT_EQ(quiet.count("00"), 4000u);
  auto idle = run(c, dev, only(&NoiseChannels::idle), 4000, 4);
  EXPECT_GT(4000u - idle.count("00"), 400u);
  dev.qubit(1).t1 = dev.qubit(1).t2 = 1e12;
  auto xt = run(c, dev, only(&NoiseChannels::crosstalk), 20000, 4);
  // Z before the CX with probability 0.25 * 0.4.
  EXPECT_NEAR(static_cast<double>(20000u - xt.count("00")) / 20000.0, 0.1, 0.01);
}

TEST(Sim, RepeatUntilSuccessAttemptsAreGeometric) {
  const double theta = 2.0 * std::acos(std::sqrt(0.25));  // success 1/4
  const auto c = rus_circuit(theta, 200);
  const std::uint64_t n = 8000;
  const auto r = simulate(c, nullptr, NoiseChannels::none(), n, 8);
  const double mean = static_cast<double>(attempts_metric(c, r)) / static_cast<double>(n);
  // Mean 1/p = 4, variance (1-p)/p^2 = 12.
  EXPECT_NEAR(mean, 4.0, 4.0 * std::sqrt(12.0 / static_cast<double>(n)));
  for (const auto& [k, m] : r.counts.counts) EXPECT_FALSE(key_bit(k, 0));
  EXPECT_EQ(r.rus_rounds, r.rus_measures);
  EXPECT_THROW(attempts_metric(ghz(2), simulate(ghz(2), nullptr, NoiseChannels::none(), 4, 1)),
               NotRUS);
  // Capped loops stop early.
  const auto capped = simulate(rus_circuit(std::numbers::pi, 3), nullptr,
                               NoiseChannels::none(), 10, 1);
  for (auto rounds : capped.rus_rounds) EXPECT_EQ(rounds, 3u);
}

TEST(Sim, ExactRepeatUntilSuccess) {
  const auto exact = exact_distribution(rus_circuit(1.3, 64));
  EXPECT_NEAR(exact.probability("00"), 0.5, 1e-9);
  EXPECT_NEAR(exact.probability("10"), 0.5, 1e-9);
  EXPECT_NEAR(exact.probability("01"), 0.0, 1e-9);
}

TEST(Sim, DeterministicAcrossThreadCounts) {
  auto dev = make_grid(2, 3);
  for (std::size_t p = 0; p < 6; ++p) {
    dev.qubit(p).e1q = 0.01;
    dev.qubit(p).readout_error = 0.03;
    dev.qubit(p).mcm_error = 0.05;
  }
  for (std::size_t i = 0; i < dev.num_edges(); ++i) dev.set_edge_error(i, 0.02);
  std::mt19937_64 gen(30);
  Circuit c = test::random_circuit(gen, 6, 60, true);
  for (std::size_t i = 0; i < c.size();) {
    // Keep only 2Q gates on coupled pairs.
    const auto& inst = c[i];
    if (inst.qubits.size() == 2 && !dev.coupled(inst.qubits[0], inst.qubits[1])) {
      Circuit d(c.num_qubits(), c.num_clbits());
      for (std::size_t j = 0; j < c.size(); ++j) {
        if (j != i) d.add(c[j]);
      }
      c = d;
    } else {
      ++i;
    }
  }
  SimOptions one;
  SimOptions four;
  four.threads = 4;
  const auto a = simulate(c, dev, NoiseChannels{}, 3000, 77, one);
  const auto b = simulate(c, dev, NoiseChannels{}, 3000, 77, four);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_EQ(a.mcms, b.mcms);
  EXPECT_NE(a.counts, simulate(c, dev, NoiseChannels{}, 3000, 78, one).counts);
}

TEST(Sim, ComponentCap) {
  EXPECT_THROW(run_ideal(ghz(15), 1, 1), TooManyQubits);
  EXPECT_NO_THROW(run_ideal(ghz(14), 1, 1));
  // Fifteen independent qubits stay cheap.
  Circuit wide(15, 15);
  for (std::size_t q = 0; q < 15; ++q) wide.h(q).measure(q, q);
  EXPECT_EQ(run_ideal(wide, 10, 1).shots, 10u);
  EXPECT_THROW(simulate(ghz(3), make_line(2), NoiseChannels{}, 1, 1), InvariantViolation);
}

#include <doctest.h>

#include <cmath>

#include "vqnn/noise.hpp"

using vqnn::CircuitRunner;
using vqnn::MaxCutInstance;
using vqnn::NoiseModel;
using vqnn::QaoaAnsatz;
using vqnn::RngStream;

TEST_SUITE_BEGIN("noise");

TEST_CASE("zero flip probability reproduces the exact expectation") {
  const MaxCutInstance inst = vqnn::gen_fully_connected(4, 0.0, 1.0, 3);
  const CircuitRunner runner(QaoaAnsatz{2}, inst);
  const vqnn::DiagonalCost cost = vqnn::build_cost_vector(inst);
  RngStream rng(1);
  const std::vector<double> theta = vqnn::random_init(QaoaAnsatz{2}, 4, rng);
  const double exact = runner.exact_expectation(theta, cost);
  const double noisy =
      vqnn::noisy_expectation(runner, theta, cost, {0.0, 37}, rng);
  CHECK(std::abs(noisy - exact) < 1e-12);
}

TEST_CASE("uniform flips decorrelate a single edge measured from |00>") {
  // One flip layer with q = 1/2 on |00> spreads the population uniformly,
  // so the single-edge cost (1, -1, -1, 1) averages to zero.
  const MaxCutInstance edge(2, {{0, 1, 1.0}});
  const vqnn::DiagonalCost cost = vqnn::build_cost_vector(edge);

  // Exact mixture over the four flip masks.
  double exact = 0.0;
  for (int mask = 0; mask < 4; ++mask) exact += 0.25 * cost.values[mask];
  CHECK(exact == doctest::Approx(0.0));

  // Trajectory realization of the same channel.
  RngStream rng(5);
  const int trials = 20000;
  double mc = 0.0;
  for (int k = 0; k < trials; ++k) {
    vqnn::StateVector sv(2);  // |00>
    for (int q = 0; q < 2; ++q)
      if (rng.bernoulli(0.5)) sv.apply_x(q);
    mc += sv.expectation_diagonal(cost.span());
  }
  mc /= trials;
  CHECK(std::abs(mc - exact) < 4.0 / std::sqrt(double(trials)));
}

TEST_CASE("fixed seed gives a deterministic estimate") {
  const MaxCutInstance inst = vqnn::gen_fully_connected(3, 0.0, 1.0, 9);
  const CircuitRunner runner(QaoaAnsatz{1}, inst);
  const vqnn::DiagonalCost cost = vqnn::build_cost_vector(inst);
  const std::vector<double> theta{0.7, 1.3};
  RngStream r1(42), r2(42);
  CHECK(vqnn::noisy_expectation(runner, theta, cost, {0.05, 200}, r1) ==
        vqnn::noisy_expectation(runner, theta, cost, {0.05, 200}, r2));
}

TEST_CASE("trajectory average matches the flip-mask enumeration") {
  const MaxCutInstance inst(3, {{0, 1, 0.9}, {1, 2, -0.6}, {0, 2, 0.4}});
  const CircuitRunner runner(QaoaAnsatz{2}, inst);
  const vqnn::DiagonalCost cost = vqnn::build_cost_vector(inst);
  const std::vector<double> theta{0.55, 0.95, 1.8, 0.35};
  const double q = 0.1;

  const double exact =
      vqnn::enumerate_noisy_expectation(runner, theta, cost, q);

  const int k = 100000;
  RngStream rng(7);
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < k; ++i) {
    const double e =
        runner.noisy_state(theta, q, rng).expectation_diagonal(cost.span());
    sum += e;
    sum_sq += e * e;
  }
  const double mean = sum / k;
  const double var = std::max(sum_sq / k - mean * mean, 0.0);
  const double sigma = std::sqrt(var / k);
  CHECK(std::abs(mean - exact) <= 3.0 * sigma + 1e-12);
}

TEST_CASE("noise demands the QAOA ansatz") {
  const MaxCutInstance inst = vqnn::gen_fully_connected(3, 0.0, 1.0, 8);
  RngStream rng(2);
  const vqnn::HardwareEfficientAnsatz hea = vqnn::random_hea(3, rng);
  const CircuitRunner runner(vqnn::AnsatzSpec{hea}, inst);
  const vqnn::DiagonalCost cost = vqnn::build_cost_vector(inst);
  const std::vector<double> theta{0.1, 0.2, 0.3};
  CHECK_THROWS_AS(
      vqnn::noisy_expectation(runner, theta, cost, {0.01, 10}, rng),
      std::invalid_argument);
}

TEST_CASE("noise model validation") {
  CHECK_THROWS_AS(vqnn::validate(NoiseModel{-0.1, 10}), std::invalid_argument);
  CHECK_THROWS_AS(vqnn::validate(NoiseModel{1.1, 10}), std::invalid_argument);
  CHECK_THROWS_AS(vqnn::validate(NoiseModel{0.5, 0}), std::invalid_argument);
}

TEST_SUITE_END();

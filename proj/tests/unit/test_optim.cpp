#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "vqnn/optim.hpp"

using vqnn::AdamConfig;
using vqnn::AdamState;
using vqnn::ConvergenceCriterion;
using vqnn::Schedule;

TEST_SUITE_BEGIN("optim");

TEST_CASE("gd_step arithmetic") {
  std::vector<double> theta{0.0, 0.0};
  vqnn::gd_step(theta, std::vector<double>{1.0, -2.0}, 0.1);
  CHECK(theta[0] == doctest::Approx(-0.1));
  CHECK(theta[1] == doctest::Approx(0.2));

  std::vector<double> fixed{1.0, 2.0};
  vqnn::gd_step(fixed, std::vector<double>{0.0, 0.0}, 0.5);
  CHECK(fixed[0] == 1.0);
  CHECK(fixed[1] == 2.0);

  CHECK_THROWS_AS(vqnn::gd_step(fixed, std::vector<double>{1.0}, 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      vqnn::gd_step(fixed, std::vector<double>{std::nan(""), 0.0}, 0.1),
      std::invalid_argument);
}

TEST_CASE("two small steps differ from one double step when the gradient is "
          "re-evaluated") {
  // C(t) = t^2, grad = 2t, from t = 1.
  double two_steps = 1.0;
  for (int i = 0; i < 2; ++i) {
    const double g = 2.0 * two_steps;
    vqnn::gd_step(std::span(&two_steps, 1), std::span(&g, 1), 0.1);
  }
  double one_step = 1.0;
  const double g0 = 2.0 * one_step;
  vqnn::gd_step(std::span(&one_step, 1), std::span(&g0, 1), 0.2);
  CHECK(two_steps == doctest::Approx(0.64));
  CHECK(one_step == doctest::Approx(0.6));
  CHECK(two_steps != one_step);
}

TEST_CASE("gd on a positive-definite quadratic decreases monotonically") {
  // C(t) = 0.5 t^T A t with A = [[2, 0.5], [0.5, 1]]; eta < 2 / lambda_max.
  const double a00 = 2.0, a01 = 0.5, a11 = 1.0;
  auto cost = [&](const std::vector<double>& t) {
    return 0.5 * (a00 * t[0] * t[0] + 2 * a01 * t[0] * t[1] +
                  a11 * t[1] * t[1]);
  };
  std::vector<double> t{1.7, -2.3};
  double prev = cost(t);
  for (int i = 0; i < 100; ++i) {
    const std::vector<double> g{a00 * t[0] + a01 * t[1],
                                a01 * t[0] + a11 * t[1]};
    vqnn::gd_step(t, g, 0.3);
    const double c = cost(t);
    CHECK(c <= prev);
    prev = c;
  }
}

TEST_CASE("adam first step and fixed point") {
  AdamConfig cfg;
  cfg.step_size = 0.1;
  AdamState state(cfg, 2);
  std::vector<double> theta{0.5, -0.5};
  const std::vector<double> grad{3.0, -0.02};
  vqnn::adam_step(state, theta, grad);
  for (int j = 0; j < 2; ++j) {
    const double expected = -cfg.step_size * grad[j] /
                            (std::abs(grad[j]) + cfg.epsilon);
    CHECK(theta[j] - (j == 0 ? 0.5 : -0.5) ==
          doctest::Approx(expected).epsilon(1e-12));
  }

  AdamState still(cfg, 2);
  std::vector<double> fixed{1.0, 2.0};
  for (int i = 0; i < 5; ++i)
    vqnn::adam_step(still, fixed, std::vector<double>{0.0, 0.0});
  CHECK(fixed[0] == 1.0);
  CHECK(fixed[1] == 2.0);
}

TEST_CASE("adam matches an independent reference recursion for 100 steps") {
  AdamConfig cfg;
  cfg.step_size = 0.05;
  AdamState state(cfg, 2);
  std::vector<double> theta{2.0, -1.5};

  // Hand-rolled reference maintained separately from the implementation.
  double rm[2] = {0.0, 0.0}, rv[2] = {0.0, 0.0}, rt[2] = {2.0, -1.5};
  for (int step = 1; step <= 100; ++step) {
    // C(t) = t0^2 + 0.5 t1^2 + 0.3 t0 t1
    const std::vector<double> grad{2.0 * theta[0] + 0.3 * theta[1],
                                   1.0 * theta[1] + 0.3 * theta[0]};
    const double rgrad[2] = {2.0 * rt[0] + 0.3 * rt[1],
                             1.0 * rt[1] + 0.3 * rt[0]};
    vqnn::adam_step(state, theta, grad);
    for (int j = 0; j < 2; ++j) {
      rm[j] = 0.9 * rm[j] + 0.1 * rgrad[j];
      rv[j] = 0.999 * rv[j] + 0.001 * rgrad[j] * rgrad[j];
      const double mhat = rm[j] / (1.0 - std::pow(0.9, step));
      const double vhat = rv[j] / (1.0 - std::pow(0.999, step));
      rt[j] -= 0.05 * mhat / (std::sqrt(vhat) + 1e-8);
    }
    CHECK(std::abs(theta[0] - rt[0]) < 1e-12);
    CHECK(std::abs(theta[1] - rt[1]) < 1e-12);
  }
}

TEST_CASE("schedule values") {
  const Schedule heaviside{Schedule::Kind::Heaviside, 150, 350};
  CHECK(heaviside.value(149) == 0.0);
  CHECK(heaviside.value(150) == 1.0);
  CHECK(heaviside.value(350) == 1.0);
  CHECK(heaviside.value(0) == 0.0);

  const Schedule linear{Schedule::Kind::Linear, 0, 350};
  CHECK(linear.value(0) == 0.0);
  CHECK(linear.value(350) == 1.0);
  CHECK(linear.value(175) == doctest::Approx(0.5));

  for (const Schedule& s : {heaviside, linear}) {
    double prev = -1.0;
    for (int t = 0; t <= s.horizon; ++t) {
      const double g = s.value(t);
      CHECK(g >= 0.0);
      CHECK(g <= 1.0);
      CHECK(g >= prev);
      prev = g;
    }
    CHECK(s.value(s.horizon) == 1.0);
  }

  CHECK_THROWS_AS(heaviside.value(351), std::out_of_range);
  CHECK_THROWS_AS(heaviside.value(-1), std::out_of_range);
  const Schedule bad{Schedule::Kind::Heaviside, 0, 350};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  const Schedule late{Schedule::Kind::Heaviside, 400, 350};
  CHECK_THROWS_AS(late.validate(), std::invalid_argument);
}

TEST_CASE("convergence criterion") {
  ConvergenceCriterion c;
  c.grad_inf_tol = 1e-3;
  c.cost_change_tol = 1e-5;
  c.window = 5;
  c.max_iters = 100;

  const std::vector<double> empty_costs{1.0};
  CHECK(c.satisfied(empty_costs, std::vector<double>{0.0, 0.0}, 0));

  // Strictly decreasing costs with a large gradient: keep going.
  std::vector<double> falling;
  for (int i = 0; i < 20; ++i) falling.push_back(10.0 - i);
  CHECK_FALSE(c.satisfied(falling, std::vector<double>{1.0, -2.0}, 19));

  // Flat history of at least `window` steps.
  std::vector<double> flat(10, 3.0);
  CHECK(c.satisfied(flat, std::vector<double>{1.0}, 9));

  CHECK(c.satisfied(falling, std::vector<double>{1.0}, 100));
}

TEST_SUITE_END();

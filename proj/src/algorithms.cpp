#include "vqnn/algorithms.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace vqnn {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

// Runs gradient descent until the criterion fires. The trace holds the cost
// at the incoming parameters followed by the cost after every step, so a
// start at an exact stationary point terminates with a single entry.
PhaseTrace descend(const CostEvaluator& evaluator, std::vector<double>& theta,
                   Optimizer& optimizer, const ConvergenceCriterion& criterion,
                   std::string name) {
  PhaseTrace trace;
  trace.name = std::move(name);
  trace.costs.push_back(evaluator.cost(theta));
  if (!std::isfinite(trace.costs.back()))
    throw std::runtime_error("non-finite cost encountered in phase " +
                             trace.name);
  int iters = 0;
  while (true) {
    const std::vector<double> grad = evaluator.gradient(theta);
    if (criterion.satisfied(trace.costs, grad, iters)) break;
    optimizer.step(theta, grad);
    trace.costs.push_back(evaluator.cost(theta));
    if (!std::isfinite(trace.costs.back()))
      throw std::runtime_error("non-finite cost encountered in phase " +
                               trace.name);
    ++iters;
  }
  return trace;
}

// Circuit output distribution used for network updates: exact probabilities,
// or their trajectory average when bit-flip noise is active.
std::vector<double> output_distribution(const CircuitRunner& runner,
                                        std::span<const double> theta,
                                        const std::optional<NoiseModel>& noise,
                                        RngStream& rng) {
  if (!noise || noise->bit_flip_prob == 0.0)
    return runner.state(theta).probabilities();
  std::vector<double> avg(std::size_t{1} << runner.num_qubits(), 0.0);
  for (int k = 0; k < noise->trajectories; ++k) {
    const StateVector sv = runner.noisy_state(theta, noise->bit_flip_prob, rng);
    const std::vector<double> p = sv.probabilities();
    for (std::size_t b = 0; b < avg.size(); ++b) avg[b] += p[b];
  }
  for (double& v : avg) v /= noise->trajectories;
  return avg;
}

// W-gradient of the mean deformed cost, exact or from a sampled batch.
Matrix network_gradient(const CircuitRunner& runner, const WeightMatrix& w,
                        std::span<const double> probs, GradientMode mode,
                        int batch_size, RngStream& rng) {
  if (mode.is_exact())
    return exact_weight_gradient(runner.instance(), w, probs);
  const std::vector<Spin> batch =
      sample_spins_from_probs(probs, runner.num_qubits(), batch_size, rng);
  return batch_grad(runner.instance(), w, batch);
}

// One theta step per schedule tick while W anneals from w0 back to identity.
PhaseTrace anneal_phase(const CircuitRunner& runner, std::vector<double>& theta,
                        const WeightMatrix& w0, const Schedule& schedule,
                        Optimizer& optimizer, CostEvaluator& evaluator,
                        const DiagonalCost& original, DiagonalCost& deformed) {
  PhaseTrace trace;
  trace.name = "anneal";
  const int n = runner.num_qubits();
  double g_prev = -1.0;
  for (int t = 0; t <= schedule.horizon; ++t) {
    const double g = schedule.value(t);
    if (g != g_prev) {
      WeightMatrix w = Matrix::identity(n);
      for (std::size_t i = 0; i < w.data().size(); ++i)
        w.data()[i] = (1.0 - g) * w0.data()[i] + g * w.data()[i];
      deformed = modified_cost_vector(runner.instance(), w);
      evaluator.set_measure(deformed);
      g_prev = g;
    }
    const std::vector<double> grad = evaluator.gradient(theta);
    optimizer.step(theta, grad);
    trace.costs.push_back(evaluator.cost(theta));
    trace.original_costs.push_back(
        runner.exact_expectation(theta, original));
  }
  return trace;
}

}  // namespace

void EscapeConfig::validate() const {
  if (nn_steps < 0) throw std::invalid_argument("nn_steps must be >= 0");
  if (nn_step_size <= 0.0)
    throw std::invalid_argument("nn_step_size must be > 0");
  if (improvement_threshold < 0.0)
    throw std::invalid_argument("improvement_threshold must be >= 0");
  if (nn_batch_size < 1)
    throw std::invalid_argument("nn_batch_size must be >= 1");
  schedule.validate();
  criterion.validate();
  if (noise) vqnn::validate(*noise);
}

void GuideConfig::validate() const {
  if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
  if (w_step_size < 0.0)
    throw std::invalid_argument("w_step_size must be >= 0");
  if (improvement_threshold < 0.0)
    throw std::invalid_argument("improvement_threshold must be >= 0");
  if (nn_batch_size < 1)
    throw std::invalid_argument("nn_batch_size must be >= 1");
  schedule.validate();
  criterion.validate();
  if (noise) vqnn::validate(*noise);
}

RunRecord run_standard(const CircuitRunner& runner,
                       std::span<const double> theta0,
                       const OptimizerConfig& optimizer_config,
                       const ConvergenceCriterion& criterion,
                       GradientMode mode,
                       const std::optional<NoiseModel>& noise,
                       std::uint64_t seed) {
  criterion.validate();
  const auto start = Clock::now();
  RngStream rng(seed);
  const int n = runner.num_qubits();

  RunRecord record;
  record.algorithm = "standard";
  record.instance_id = runner.instance().id;
  record.init_seed = seed;
  record.initial_theta.assign(theta0.begin(), theta0.end());

  const DiagonalCost original = build_cost_vector(runner.instance());
  CostEvaluator evaluator(runner, original, mode,
                          noise ? &*noise : nullptr, &rng);

  std::vector<double> theta(theta0.begin(), theta0.end());
  Optimizer optimizer(optimizer_config, runner.num_params());
  PhaseTrace trace = descend(evaluator, theta, optimizer, criterion, "descent");

  record.pre_cost = trace.costs.front();
  record.final_cost = trace.costs.back();
  record.final_theta = theta;
  record.phases.push_back(std::move(trace));
  record.improved =
      record.pre_cost - record.final_cost > record.improvement_threshold;
  record.trained_weights = Matrix::identity(n);
  record.final_weights = Matrix::identity(n);
  record.wall_time_ms = elapsed_ms(start);
  return record;
}

RunRecord run_escape(const CircuitRunner& runner,
                     std::span<const double> theta0, const EscapeConfig& config,
                     std::uint64_t seed) {
  config.validate();
  const auto start = Clock::now();
  RngStream rng(seed);
  const int n = runner.num_qubits();

  RunRecord record;
  record.algorithm = "escape";
  record.instance_id = runner.instance().id;
  record.init_seed = seed;
  record.initial_theta.assign(theta0.begin(), theta0.end());
  record.improvement_threshold = config.improvement_threshold;

  const DiagonalCost original = build_cost_vector(runner.instance());
  const NoiseModel* noise = config.noise ? &*config.noise : nullptr;
  CostEvaluator evaluator(runner, original, config.gradient_mode, noise, &rng);

  // Step 2: converge in the undeformed landscape.
  std::vector<double> theta(theta0.begin(), theta0.end());
  Optimizer optimizer(config.circuit_optimizer, runner.num_params());
  record.phases.push_back(
      descend(evaluator, theta, optimizer, config.criterion, "descent"));
  const std::vector<double> theta_converged = theta;
  const double pre_cost = record.phases.back().costs.back();

  // Step 3: M vanilla gradient steps on W at frozen theta. The circuit
  // output distribution is fixed here, so compute it once.
  WeightMatrix w = Matrix::identity(n);
  PhaseTrace nn_trace;
  nn_trace.name = "network";
  {
    const std::vector<double> probs =
        output_distribution(runner, theta, config.noise, rng);
    nn_trace.costs.push_back(
        weighted_cost_and_grad(runner.instance(), w, probs).first);
    for (int m = 0; m < config.nn_steps; ++m) {
      const Matrix grad = network_gradient(runner, w, probs,
                                           config.gradient_mode,
                                           config.nn_batch_size, rng);
      gd_step(w.data(), grad.data(), config.nn_step_size);
      nn_trace.costs.push_back(
          weighted_cost_and_grad(runner.instance(), w, probs).first);
    }
  }
  record.phases.push_back(std::move(nn_trace));
  record.trained_weights = w;

  // Step 4: anneal W back to identity with one theta step per tick.
  DiagonalCost deformed;
  optimizer.reset();
  record.phases.push_back(anneal_phase(runner, theta, w, config.schedule,
                                       optimizer, evaluator, original,
                                       deformed));

  // Step 5: converge again in the undeformed landscape.
  evaluator.set_measure(original);
  optimizer.reset();
  record.phases.push_back(descend(evaluator, theta, optimizer,
                                  config.criterion, "final_descent"));
  const double post_cost = record.phases.back().costs.back();

  // Step 6: keep the better of the two converged solutions.
  record.pre_cost = pre_cost;
  if (post_cost < pre_cost) {
    record.final_cost = post_cost;
    record.final_theta = theta;
  } else {
    record.final_cost = pre_cost;
    record.final_theta = theta_converged;
  }
  record.improved =
      record.pre_cost - record.final_cost > config.improvement_threshold;
  record.final_weights = Matrix::identity(n);
  record.wall_time_ms = elapsed_ms(start);
  return record;
}

RunRecord run_guide(const CircuitRunner& runner, std::span<const double> theta0,
                    const GuideConfig& config, std::uint64_t seed) {
  config.validate();
  const auto start = Clock::now();
  RngStream rng(seed);
  const int n = runner.num_qubits();

  RunRecord record;
  record.algorithm = "guide";
  record.instance_id = runner.instance().id;
  record.init_seed = seed;
  record.initial_theta.assign(theta0.begin(), theta0.end());
  record.improvement_threshold = config.improvement_threshold;

  const DiagonalCost original = build_cost_vector(runner.instance());
  const NoiseModel* noise = config.noise ? &*config.noise : nullptr;

  std::vector<double> theta(theta0.begin(), theta0.end());
  record.pre_cost = runner.exact_expectation(theta, original);

  // Steps 2-4: alternate one theta step and one W step on the regularized
  // cost until the joint trace converges.
  WeightMatrix w = Matrix::identity(n);
  DiagonalCost deformed = modified_cost_vector(runner.instance(), w);
  CostEvaluator evaluator(runner, deformed, config.gradient_mode, noise, &rng);
  Optimizer theta_optimizer(config.theta_optimizer, runner.num_params());

  PhaseTrace joint;
  joint.name = "cotrain";
  joint.costs.push_back(evaluator.cost(theta) +
                        config.alpha * reg_value(w));
  int iters = 0;
  while (true) {
    const std::vector<double> theta_grad = evaluator.gradient(theta);
    if (config.criterion.satisfied(joint.costs, theta_grad, iters)) break;
    theta_optimizer.step(theta, theta_grad);

    if (config.w_step_size > 0.0) {
      const std::vector<double> probs =
          output_distribution(runner, theta, config.noise, rng);
      Matrix w_grad = network_gradient(runner, w, probs, config.gradient_mode,
                                       config.nn_batch_size, rng);
      w_grad.add_scaled(reg_subgrad(w), config.alpha);
      gd_step(w.data(), w_grad.data(), config.w_step_size);
      deformed = modified_cost_vector(runner.instance(), w);
      evaluator.set_measure(deformed);
    }
    joint.costs.push_back(evaluator.cost(theta) +
                          config.alpha * reg_value(w));
    ++iters;
  }
  record.phases.push_back(std::move(joint));
  record.trained_weights = w;

  // Step 5: anneal W back to identity.
  theta_optimizer.reset();
  record.phases.push_back(anneal_phase(runner, theta, w, config.schedule,
                                       theta_optimizer, evaluator, original,
                                       deformed));

  // Step 6: final convergence in the undeformed landscape.
  evaluator.set_measure(original);
  theta_optimizer.reset();
  record.phases.push_back(descend(evaluator, theta, theta_optimizer,
                                  config.criterion, "final_descent"));

  record.final_cost = record.phases.back().costs.back();
  record.final_theta = theta;
  record.improved =
      record.pre_cost - record.final_cost > config.improvement_threshold;
  record.final_weights = Matrix::identity(n);
  record.wall_time_ms = elapsed_ms(start);
  return record;
}

}  // namespace vqnn

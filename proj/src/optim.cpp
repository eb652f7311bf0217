#include "vqnn/optim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vqnn {

void gd_step(std::span<double> params, std::span<const double> grad,
             double step_size) {
  if (params.size() != grad.size())
    throw std::invalid_argument("parameter/gradient length mismatch");
  if (step_size <= 0.0) throw std::invalid_argument("step size must be > 0");
  for (double g : grad)
    if (!std::isfinite(g))
      throw std::invalid_argument("gradient must be finite");
  for (std::size_t j = 0; j < params.size(); ++j)
    params[j] -= step_size * grad[j];
}

void adam_step(AdamState& state, std::span<double> params,
               std::span<const double> grad) {
  if (params.size() != grad.size() || params.size() != state.m.size())
    throw std::invalid_argument("parameter/gradient/state length mismatch");
  const AdamConfig& c = state.config;
  state.step_count += 1;
  const double bc1 = 1.0 - std::pow(c.beta1, state.step_count);
  const double bc2 = 1.0 - std::pow(c.beta2, state.step_count);
  for (std::size_t j = 0; j < params.size(); ++j) {
    state.m[j] = c.beta1 * state.m[j] + (1.0 - c.beta1) * grad[j];
    state.v[j] = c.beta2 * state.v[j] + (1.0 - c.beta2) * grad[j] * grad[j];
    const double m_hat = state.m[j] / bc1;
    const double v_hat = state.v[j] / bc2;
    params[j] -= c.step_size * m_hat / (std::sqrt(v_hat) + c.epsilon);
  }
}

Optimizer::Optimizer(const OptimizerConfig& config, int dim)
    : config_(config),
      adam_(std::holds_alternative<AdamConfig>(config)
                ? std::get<AdamConfig>(config)
                : AdamConfig{},
            dim),
      is_adam_(std::holds_alternative<AdamConfig>(config)) {}

void Optimizer::step(std::span<double> params, std::span<const double> grad) {
  if (is_adam_) {
    adam_step(adam_, params, grad);
  } else {
    gd_step(params, grad, std::get<GdConfig>(config_).step_size);
  }
}

void Optimizer::reset() {
  std::fill(adam_.m.begin(), adam_.m.end(), 0.0);
  std::fill(adam_.v.begin(), adam_.v.end(), 0.0);
  adam_.step_count = 0;
}

double Schedule::value(int t) const {
  if (t < 0 || t > horizon) throw std::out_of_range("schedule time out of range");
  if (kind == Kind::Heaviside) return t >= threshold ? 1.0 : 0.0;
  return static_cast<double>(t) / static_cast<double>(horizon);
}

void Schedule::validate() const {
  if (horizon < 1) throw std::invalid_argument("schedule horizon must be >= 1");
  if (kind == Kind::Heaviside && (threshold < 1 || threshold > horizon))
    throw std::invalid_argument(
        "Heaviside threshold must lie in [1, horizon] so that g(0) = 0 and "
        "g(horizon) = 1");
}

void ConvergenceCriterion::validate() const {
  if (grad_inf_tol <= 0.0 || cost_change_tol <= 0.0 || window < 1 ||
      max_iters < 1)
    throw std::invalid_argument("convergence criterion fields must be positive");
}

bool ConvergenceCriterion::satisfied(std::span<const double> cost_history,
                                     std::span<const double> grad,
                                     int iters) const {
  if (iters >= max_iters) return true;
  if (!grad.empty()) {
    double g_inf = 0.0;
    for (double g : grad) g_inf = std::max(g_inf, std::abs(g));
    if (g_inf < grad_inf_tol) return true;
  }
  if (static_cast<int>(cost_history.size()) >= window + 1) {
    double max_change = 0.0;
    const std::size_t n = cost_history.size();
    for (std::size_t i = n - window; i < n; ++i)
      max_change = std::max(max_change,
                            std::abs(cost_history[i] - cost_history[i - 1]));
    if (max_change < cost_change_tol) return true;
  }
  return false;
}

}  // namespace vqnn

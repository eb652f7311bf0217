#pragma once

#include <span>
#include <variant>
#include <vector>

namespace vqnn {

struct GdConfig {
  double step_size = 0.1;
};

struct AdamConfig {
  double step_size = 0.1;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

using OptimizerConfig = std::variant<GdConfig, AdamConfig>;

// theta <- theta - eta * grad
void gd_step(std::span<double> params, std::span<const double> grad,
             double step_size);

// One Adam update with bias correction (Kingma & Ba, Algorithm 1).
struct AdamState {
  AdamConfig config;
  std::vector<double> m;  // first moment
  std::vector<double> v;  // second moment
  long step_count = 0;

  explicit AdamState(AdamConfig cfg = {}, int dim = 0)
      : config(cfg), m(dim, 0.0), v(dim, 0.0) {}
};

void adam_step(AdamState& state, std::span<double> params,
               std::span<const double> grad);

// Stateful wrapper so algorithms can treat gd and adam uniformly.
class Optimizer {
 public:
  Optimizer(const OptimizerConfig& config, int dim);

  void step(std::span<double> params, std::span<const double> grad);
  void reset();

 private:
  OptimizerConfig config_;
  AdamState adam_;
  bool is_adam_;
};

// Annealing schedule g(t) on t in {0, ..., horizon}; g(horizon) = 1 so the
// deformation is fully removed at the end.
struct Schedule {
  enum class Kind { Heaviside, Linear };
  Kind kind = Kind::Heaviside;
  int threshold = 150;  // Heaviside switch point x, with Theta(0) = 1
  int horizon = 350;    // T

  double value(int t) const;
  void validate() const;
};

struct ConvergenceCriterion {
  double grad_inf_tol = 1e-3;
  double cost_change_tol = 1e-5;
  int window = 20;
  int max_iters = 2000;

  void validate() const;

  // True when the gradient is flat, the recent cost trace is flat, or the
  // iteration budget is exhausted. `iters` counts update steps taken.
  bool satisfied(std::span<const double> cost_history,
                 std::span<const double> grad, int iters) const;
};

}  // namespace vqnn

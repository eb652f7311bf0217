#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vqnn/gradients.hpp"
#include "vqnn/optim.hpp"

namespace vqnn {

struct EscapeConfig {
  int nn_steps = 80;           // M
  double nn_step_size = 0.05;  // vanilla gradient descent on W
  Schedule schedule{};
  double improvement_threshold = 0.1;
  OptimizerConfig circuit_optimizer = AdamConfig{};
  ConvergenceCriterion criterion{};
  GradientMode gradient_mode = GradientMode::exact();
  std::optional<NoiseModel> noise;
  int nn_batch_size = 1024;  // shots mode only

  void validate() const;
};

struct GuideConfig {
  double alpha = 0.1;  // identity-regularizer strength
  Schedule schedule{};
  OptimizerConfig theta_optimizer = AdamConfig{};
  double w_step_size = 0.05;
  double improvement_threshold = 0.1;
  ConvergenceCriterion criterion{};
  GradientMode gradient_mode = GradientMode::exact();
  std::optional<NoiseModel> noise;
  int nn_batch_size = 1024;

  void validate() const;
};

struct PhaseTrace {
  std::string name;
  std::vector<double> costs;  // landscape the phase optimizes
  // Cost in the undeformed landscape, recorded alongside during phases that
  // optimize a deformed one; empty elsewhere.
  std::vector<double> original_costs;
};

struct RunRecord {
  int run_index = 0;
  std::string algorithm;
  std::string instance_id;
  std::uint64_t init_seed = 0;
  std::vector<double> initial_theta;
  std::vector<double> final_theta;
  double pre_cost = 0.0;   // converged cost before the landscape deformation
                           // (escape) or the initial cost (standard, guide)
  double final_cost = 0.0;
  bool improved = false;   // pre_cost - final_cost > improvement_threshold
  double improvement_threshold = 0.1;
  std::vector<PhaseTrace> phases;
  WeightMatrix trained_weights;  // W0, the deformation before annealing
  WeightMatrix final_weights;    // identity on termination
  double wall_time_ms = 0.0;     // informational; excluded from record files
  std::string error;             // non-empty when the run aborted
};

// Plain gradient-based minimization of the undeformed cost.
RunRecord run_standard(const CircuitRunner& runner,
                       std::span<const double> theta0,
                       const OptimizerConfig& optimizer,
                       const ConvergenceCriterion& criterion,
                       GradientMode mode = GradientMode::exact(),
                       const std::optional<NoiseModel>& noise = std::nullopt,
                       std::uint64_t seed = 0);

// Converge, deform the landscape by training W at frozen theta, anneal the
// deformation away while stepping theta, re-converge, keep the better of the
// two converged costs.
RunRecord run_escape(const CircuitRunner& runner,
                     std::span<const double> theta0, const EscapeConfig& config,
                     std::uint64_t seed = 0);

// Co-train theta and W on the regularized cost from the start, then anneal
// W to identity and finish in the undeformed landscape.
RunRecord run_guide(const CircuitRunner& runner, std::span<const double> theta0,
                    const GuideConfig& config, std::uint64_t seed = 0);

}  // namespace vqnn

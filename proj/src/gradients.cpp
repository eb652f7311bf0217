#include "vqnn/gradients.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vqnn {

ShiftPlan ShiftPlan::build(const AnsatzSpec& ansatz,
                           const MaxCutInstance& instance) {
  ShiftPlan plan;
  const int n = instance.num_nodes();
  constexpr double quarter_pi = std::numbers::pi / 4.0;

  if (const auto* qaoa = std::get_if<QaoaAnsatz>(&ansatz)) {
    plan.per_param.resize(2 * qaoa->depth);
    for (int layer = 0; layer < qaoa->depth; ++layer) {
      auto& gamma_entries = plan.per_param[2 * layer];
      for (int e = 0; e < static_cast<int>(instance.edges().size()); ++e) {
        const double r = std::abs(instance.edges()[e].weight);
        if (r == 0.0) continue;  // identity gate, no contribution
        gamma_entries.push_back(
            {GateShift::Target::QaoaEdge, layer, e, r, quarter_pi / r});
      }
      auto& beta_entries = plan.per_param[2 * layer + 1];
      for (int q = 0; q < n; ++q)
        beta_entries.push_back(
            {GateShift::Target::QaoaQubit, layer, q, 1.0, quarter_pi});
    }
    return plan;
  }

  // Hardware-efficient: each parameter drives one rotation whose generator
  // sigma/2 has eigenvalues +-1/2.
  plan.per_param.resize(n);
  for (int q = 0; q < n; ++q)
    plan.per_param[q].push_back(
        {GateShift::Target::HeaQubit, 0, q, 0.5, 2.0 * quarter_pi});
  return plan;
}

CostEvaluator::CostEvaluator(const CircuitRunner& runner,
                             const DiagonalCost& measure, GradientMode mode,
                             const NoiseModel* noise, RngStream* rng)
    : runner_(runner),
      measure_(&measure),
      mode_(mode),
      noise_(noise),
      rng_(rng),
      plan_(ShiftPlan::build(runner.ansatz(), runner.instance())) {
  if (measure.values.size() != (std::size_t{1} << runner.num_qubits()))
    throw std::invalid_argument("measure vector length must be 2^N");
  const bool needs_rng = !mode.is_exact() || (noise_ && noise_->bit_flip_prob > 0.0);
  if (needs_rng && rng_ == nullptr)
    throw std::invalid_argument("shots or noise evaluation requires an rng");
  if (noise_) validate(*noise_);
}

void CostEvaluator::set_measure(const DiagonalCost& measure) {
  if (measure.values.size() != (std::size_t{1} << runner_.num_qubits()))
    throw std::invalid_argument("measure vector length must be 2^N");
  measure_ = &measure;
}

double CostEvaluator::cost(std::span<const double> theta,
                           const GateShift* shift) const {
  if (noise_) return noisy_expectation(runner_, theta, *measure_, *noise_,
                                       *rng_, shift);
  if (mode_.is_exact()) return runner_.exact_expectation(theta, *measure_, shift);
  return runner_.sampled_expectation(theta, *measure_, mode_.shots, *rng_,
                                     shift);
}

namespace {

// Exact QAOA gradient with shared prefix states: the shifted circuit for an
// entry in layer l agrees with the unshifted one up to and including that
// layer's diagonal phase, so those amplitudes are computed once per layer.
// The kernel sequence per evaluation is unchanged, so the result is
// bit-identical to evaluating every shifted circuit from scratch.
std::vector<double> qaoa_exact_gradient(const CircuitRunner& runner,
                                        const DiagonalCost& measure,
                                        std::span<const double> theta,
                                        const ShiftPlan& plan) {
  const int p = runner.qaoa_depth();
  const auto& edges = runner.instance().edges();
  const DiagonalCost& circuit_cost = runner.circuit_cost_vector();

  std::vector<double> grad(theta.size(), 0.0);
  StateVector prefix = StateVector::plus_state(runner.num_qubits());
  for (int layer = 0; layer < p; ++layer) {
    const double gamma = theta[2 * layer];
    const double beta = theta[2 * layer + 1];
    StateVector phased = prefix;
    phased.apply_diagonal_phase(circuit_cost.span(), gamma);

    auto finish = [&](StateVector& sv) {
      for (int l2 = layer + 1; l2 < p; ++l2) {
        sv.apply_diagonal_phase(circuit_cost.span(), theta[2 * l2]);
        sv.apply_mixer(theta[2 * l2 + 1]);
      }
      return sv.expectation_diagonal(measure.span());
    };

    for (const ShiftEntry& entry : plan.per_param[2 * layer]) {
      const Edge& e = edges[entry.index];
      double diff = 0.0;
      for (double sign : {1.0, -1.0}) {
        StateVector sv = phased;
        sv.apply_edge_phase(e.u, e.v, e.weight, sign * entry.shift);
        sv.apply_mixer(beta);
        diff += sign * finish(sv);
      }
      grad[2 * layer] += entry.radius * diff;
    }
    for (const ShiftEntry& entry : plan.per_param[2 * layer + 1]) {
      double diff = 0.0;
      for (double sign : {1.0, -1.0}) {
        StateVector sv = phased;
        sv.apply_mixer_shifted(beta, entry.index, sign * entry.shift);
        diff += sign * finish(sv);
      }
      grad[2 * layer + 1] += entry.radius * diff;
    }

    prefix = std::move(phased);
    prefix.apply_mixer(beta);
  }
  return grad;
}

}  // namespace

std::vector<double> CostEvaluator::gradient(
    std::span<const double> theta) const {
  if (static_cast<int>(theta.size()) != runner_.num_params())
    throw std::invalid_argument("parameter vector length mismatch");
  if (mode_.is_exact() && noise_ == nullptr && runner_.is_qaoa())
    return qaoa_exact_gradient(runner_, *measure_, theta, plan_);
  std::vector<double> grad(theta.size(), 0.0);
  for (std::size_t j = 0; j < plan_.per_param.size(); ++j) {
    double g = 0.0;
    for (const ShiftEntry& entry : plan_.per_param[j]) {
      GateShift shift{entry.target, entry.layer, entry.index, entry.shift};
      const double plus = cost(theta, &shift);
      shift.delta = -entry.shift;
      const double minus = cost(theta, &shift);
      g += entry.radius * (plus - minus);
    }
    grad[j] = g;
  }
  return grad;
}

std::vector<double> param_shift_grad(const CircuitRunner& runner,
                                     const DiagonalCost& measure,
                                     std::span<const double> theta,
                                     GradientMode mode, RngStream* rng) {
  return CostEvaluator(runner, measure, mode, nullptr, rng).gradient(theta);
}

std::vector<double> finite_diff_grad(const CircuitRunner& runner,
                                     const DiagonalCost& measure,
                                     std::span<const double> theta, double h) {
  if (h <= 0.0) throw std::invalid_argument("step h must be positive");
  std::vector<double> grad(theta.size());
  std::vector<double> shifted(theta.begin(), theta.end());
  for (std::size_t j = 0; j < theta.size(); ++j) {
    shifted[j] = theta[j] + h;
    const double plus = runner.exact_expectation(shifted, measure);
    shifted[j] = theta[j] - h;
    const double minus = runner.exact_expectation(shifted, measure);
    shifted[j] = theta[j];
    grad[j] = (plus - minus) / (2.0 * h);
  }
  return grad;
}

std::vector<double> modified_grad(const CircuitRunner& runner,
                                  const WeightMatrix& w,
                                  std::span<const double> theta,
                                  GradientMode mode, RngStream* rng) {
  const DiagonalCost deformed = modified_cost_vector(runner.instance(), w);
  return param_shift_grad(runner, deformed, theta, mode, rng);
}

}  // namespace vqnn

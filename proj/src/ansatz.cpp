#include "vqnn/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vqnn {

int num_params(const AnsatzSpec& ansatz, int num_qubits) {
  if (const auto* qaoa = std::get_if<QaoaAnsatz>(&ansatz)) {
    if (qaoa->depth < 1) throw std::invalid_argument("QAOA depth must be >= 1");
    return 2 * qaoa->depth;
  }
  const auto& hea = std::get<HardwareEfficientAnsatz>(ansatz);
  if (static_cast<int>(hea.axes.size()) != num_qubits)
    throw std::invalid_argument("HEA axes must match qubit count");
  return num_qubits;
}

std::vector<double> random_init(const AnsatzSpec& ansatz, int num_qubits,
                                RngStream& rng) {
  const int p = num_params(ansatz, num_qubits);
  std::vector<double> theta(p);
  for (double& t : theta) t = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return theta;
}

HardwareEfficientAnsatz random_hea(int num_qubits, RngStream& rng) {
  HardwareEfficientAnsatz hea;
  hea.axes.resize(num_qubits);
  for (Axis& a : hea.axes) {
    switch (rng.uniform_int(3)) {
      case 0: a = Axis::X; break;
      case 1: a = Axis::Y; break;
      default: a = Axis::Z; break;
    }
  }
  return hea;
}

std::string axes_string(const HardwareEfficientAnsatz& hea) {
  std::string s;
  for (Axis a : hea.axes)
    s += (a == Axis::X) ? 'X' : (a == Axis::Y) ? 'Y' : 'Z';
  return s;
}

HardwareEfficientAnsatz hea_from_axes_string(const std::string& axes) {
  HardwareEfficientAnsatz hea;
  for (char c : axes) {
    switch (c) {
      case 'X': hea.axes.push_back(Axis::X); break;
      case 'Y': hea.axes.push_back(Axis::Y); break;
      case 'Z': hea.axes.push_back(Axis::Z); break;
      default: throw std::invalid_argument("axes string must use X, Y, Z");
    }
  }
  return hea;
}

CircuitRunner::CircuitRunner(AnsatzSpec ansatz, const MaxCutInstance& instance)
    : ansatz_(std::move(ansatz)), instance_(instance) {
  (void)vqnn::num_params(ansatz_, instance.num_nodes());  // validates
  if (is_qaoa()) circuit_cost_ = build_cost_vector(instance);
}

int CircuitRunner::num_params() const {
  return vqnn::num_params(ansatz_, instance_.num_nodes());
}

bool CircuitRunner::is_qaoa() const {
  return std::holds_alternative<QaoaAnsatz>(ansatz_);
}

int CircuitRunner::qaoa_depth() const {
  return std::get<QaoaAnsatz>(ansatz_).depth;
}

void CircuitRunner::check_theta(std::span<const double> theta) const {
  if (static_cast<int>(theta.size()) != num_params())
    throw std::invalid_argument("parameter vector length mismatch");
  for (double t : theta)
    if (!std::isfinite(t))
      throw std::invalid_argument("parameters must be finite");
}

void CircuitRunner::apply_qaoa_layer(StateVector& sv, int layer, double gamma,
                                     double beta,
                                     const GateShift* shift) const {
  sv.apply_diagonal_phase(circuit_cost_.span(), gamma);
  if (shift && shift->target == GateShift::Target::QaoaEdge &&
      shift->layer == layer) {
    const Edge& e = instance_.edges().at(shift->index);
    sv.apply_edge_phase(e.u, e.v, e.weight, shift->delta);
  }
  if (shift && shift->target == GateShift::Target::QaoaQubit &&
      shift->layer == layer) {
    sv.apply_mixer_shifted(beta, shift->index, shift->delta);
  } else {
    sv.apply_mixer(beta);
  }
}

StateVector CircuitRunner::state(std::span<const double> theta,
                                 const GateShift* shift) const {
  check_theta(theta);
  const int n = num_qubits();
  if (is_qaoa()) {
    StateVector sv = StateVector::plus_state(n);
    const int p = qaoa_depth();
    for (int layer = 0; layer < p; ++layer)
      apply_qaoa_layer(sv, layer, theta[2 * layer], theta[2 * layer + 1],
                       shift);
    return sv;
  }
  const auto& hea = std::get<HardwareEfficientAnsatz>(ansatz_);
  StateVector sv = StateVector::ry_quarter_state(n);
  for (int q = 0; q < n; ++q) {
    double angle = theta[q];
    if (shift && shift->target == GateShift::Target::HeaQubit &&
        shift->index == q)
      angle += shift->delta;
    sv.apply_rotation(q, hea.axes[q], angle);
  }
  for (int q = 0; q + 1 < n; ++q) sv.apply_cz(q, q + 1);
  return sv;
}

StateVector CircuitRunner::noisy_state(std::span<const double> theta,
                                       double bit_flip_prob, RngStream& rng,
                                       const GateShift* shift) const {
  if (!is_qaoa())
    throw std::invalid_argument(
        "bit-flip noise is defined for the QAOA ansatz only");
  if (bit_flip_prob < 0.0 || bit_flip_prob > 1.0)
    throw std::invalid_argument("bit_flip_prob must be in [0, 1]");
  check_theta(theta);
  const int n = num_qubits();
  StateVector sv = StateVector::plus_state(n);
  const int p = qaoa_depth();
  for (int layer = 0; layer < p; ++layer) {
    apply_qaoa_layer(sv, layer, theta[2 * layer], theta[2 * layer + 1], shift);
    for (int q = 0; q < n; ++q)
      if (rng.bernoulli(bit_flip_prob)) sv.apply_x(q);
  }
  return sv;
}

double CircuitRunner::exact_expectation(std::span<const double> theta,
                                        const DiagonalCost& measure,
                                        const GateShift* shift) const {
  return state(theta, shift).expectation_diagonal(measure.span());
}

double CircuitRunner::sampled_expectation(std::span<const double> theta,
                                          const DiagonalCost& measure,
                                          int shots, RngStream& rng,
                                          const GateShift* shift) const {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  const StateVector sv = state(theta, shift);
  const std::vector<double> probs = sv.probabilities();
  // Sample basis indices directly; the measured value is the cost eigenvalue.
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t b = 0; b < probs.size(); ++b) {
    acc += probs[b];
    cdf[b] = acc;
  }
  double sum = 0.0;
  for (int s = 0; s < shots; ++s) {
    const double u = rng.uniform() * acc;
    std::size_t b = std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    if (b >= cdf.size()) b = cdf.size() - 1;
    sum += measure.values[b];
  }
  return sum / shots;
}

StateVector prepare_state(const AnsatzSpec& ansatz,
                          const MaxCutInstance& instance,
                          std::span<const double> theta) {
  return CircuitRunner(ansatz, instance).state(theta);
}

}  // namespace vqnn

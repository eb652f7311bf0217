#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "vqnn/maxcut.hpp"
#include "vqnn/rng.hpp"
#include "vqnn/statevector.hpp"

namespace vqnn {

// QAOA: p repetitions of (cost phase, X mixer) on |+>^N; 2p parameters
// ordered (gamma_1, beta_1, ..., gamma_p, beta_p).
struct QaoaAnsatz {
  int depth = 1;
};

// One layer of per-qubit rotations (axis fixed per architecture instance)
// after RY(pi/4) state preparation, finished by a CZ chain on (q, q+1);
// N parameters.
struct HardwareEfficientAnsatz {
  std::vector<Axis> axes;
};

using AnsatzSpec = std::variant<QaoaAnsatz, HardwareEfficientAnsatz>;

int num_params(const AnsatzSpec& ansatz, int num_qubits);

// i.i.d. uniform on [0, 2*pi).
std::vector<double> random_init(const AnsatzSpec& ansatz, int num_qubits,
                                RngStream& rng);

HardwareEfficientAnsatz random_hea(int num_qubits, RngStream& rng);

std::string axes_string(const HardwareEfficientAnsatz& hea);
HardwareEfficientAnsatz hea_from_axes_string(const std::string& axes);

// Overrides the angle of a single gate occurrence during state preparation;
// this is how the parameter-shift rule addresses one term of a shared
// parameter.
struct GateShift {
  enum class Target {
    QaoaEdge,   // edge `index` in layer `layer`: gamma -> gamma + delta
    QaoaQubit,  // qubit `index` in layer `layer`: beta -> beta + delta
    HeaQubit,   // rotation on qubit `index`: theta -> theta + delta
  };
  Target target;
  int layer = 0;
  int index = 0;
  double delta = 0.0;
};

// Prepares circuit output states for one (ansatz, instance) pair. The QAOA
// phase-layer cost vector is built once and reused across evaluations.
class CircuitRunner {
 public:
  CircuitRunner(AnsatzSpec ansatz, const MaxCutInstance& instance);

  const AnsatzSpec& ansatz() const { return ansatz_; }
  const MaxCutInstance& instance() const { return instance_; }
  int num_qubits() const { return instance_.num_nodes(); }
  int num_params() const;
  bool is_qaoa() const;
  int qaoa_depth() const;

  StateVector state(std::span<const double> theta,
                    const GateShift* shift = nullptr) const;

  // One bit-flip-noise trajectory: X applied to each qubit with probability
  // bit_flip_prob after every (cost, mixer) layer pair. QAOA only.
  StateVector noisy_state(std::span<const double> theta, double bit_flip_prob,
                          RngStream& rng, const GateShift* shift = nullptr) const;

  double exact_expectation(std::span<const double> theta,
                           const DiagonalCost& measure,
                           const GateShift* shift = nullptr) const;

  double sampled_expectation(std::span<const double> theta,
                             const DiagonalCost& measure, int shots,
                             RngStream& rng,
                             const GateShift* shift = nullptr) const;

  const DiagonalCost& circuit_cost_vector() const { return circuit_cost_; }

 private:
  void check_theta(std::span<const double> theta) const;
  void apply_qaoa_layer(StateVector& sv, int layer, double gamma, double beta,
                        const GateShift* shift) const;

  AnsatzSpec ansatz_;
  const MaxCutInstance& instance_;
  DiagonalCost circuit_cost_;  // phase-layer Hamiltonian (QAOA only)
};

// Convenience one-shot form.
StateVector prepare_state(const AnsatzSpec& ansatz,
                          const MaxCutInstance& instance,
                          std::span<const double> theta);

}  // namespace vqnn

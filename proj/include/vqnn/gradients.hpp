#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vqnn/ansatz.hpp"
#include "vqnn/neural.hpp"
#include "vqnn/noise.hpp"

namespace vqnn {

// How expectation values are obtained: exact statevector arithmetic or a
// finite number of simulated measurement shots.
struct GradientMode {
  enum class Kind { Exact, Shots };
  Kind kind = Kind::Exact;
  int shots = 0;

  static GradientMode exact() { return {Kind::Exact, 0}; }
  static GradientMode with_shots(int n) { return {Kind::Shots, n}; }
  bool is_exact() const { return kind == Kind::Exact; }
};

// Parameter-shift decomposition. A shared parameter (QAOA gamma over all
// edges, beta over all qubits) expands into one entry per gate occurrence
// whose generator has the two eigenvalues +-radius; the derivative is the
// radius-weighted difference of the two shifted expectations, summed over
// entries.
struct ShiftEntry {
  GateShift::Target target;
  int layer = 0;
  int index = 0;
  double radius = 0.0;
  double shift = 0.0;  // pi / (4 * radius)
};

struct ShiftPlan {
  std::vector<std::vector<ShiftEntry>> per_param;

  static ShiftPlan build(const AnsatzSpec& ansatz,
                         const MaxCutInstance& instance);
};

// Everything needed to evaluate one cost landscape: the circuit, the
// measured Hamiltonian, the estimation mode, and optional bit-flip noise.
class CostEvaluator {
 public:
  CostEvaluator(const CircuitRunner& runner, const DiagonalCost& measure,
                GradientMode mode = GradientMode::exact(),
                const NoiseModel* noise = nullptr, RngStream* rng = nullptr);

  double cost(std::span<const double> theta,
              const GateShift* shift = nullptr) const;

  // Full parameter-shift gradient; zero-weight edges contribute no entries.
  std::vector<double> gradient(std::span<const double> theta) const;

  // Swaps the measured Hamiltonian (same circuit); used while annealing W.
  void set_measure(const DiagonalCost& measure);

  const CircuitRunner& runner() const { return runner_; }
  const DiagonalCost& measure() const { return *measure_; }

 private:
  const CircuitRunner& runner_;
  const DiagonalCost* measure_;
  GradientMode mode_;
  const NoiseModel* noise_;
  RngStream* rng_;
  ShiftPlan plan_;
};

std::vector<double> param_shift_grad(const CircuitRunner& runner,
                                     const DiagonalCost& measure,
                                     std::span<const double> theta,
                                     GradientMode mode = GradientMode::exact(),
                                     RngStream* rng = nullptr);

// Central-difference oracle on exact expectations.
std::vector<double> finite_diff_grad(const CircuitRunner& runner,
                                     const DiagonalCost& measure,
                                     std::span<const double> theta,
                                     double h = 1e-5);

// Parameter-shift gradient of the W-deformed landscape.
std::vector<double> modified_grad(const CircuitRunner& runner,
                                  const WeightMatrix& w,
                                  std::span<const double> theta,
                                  GradientMode mode = GradientMode::exact(),
                                  RngStream* rng = nullptr);

}  // namespace vqnn

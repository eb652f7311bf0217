#include "vqnn/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace vqnn {

void validate(const NoiseModel& noise) {
  if (noise.bit_flip_prob < 0.0 || noise.bit_flip_prob > 1.0)
    throw std::invalid_argument("bit_flip_prob must be in [0, 1]");
  if (noise.trajectories < 1)
    throw std::invalid_argument("trajectories must be >= 1");
}

double noisy_expectation(const CircuitRunner& runner,
                         std::span<const double> theta,
                         const DiagonalCost& measure, const NoiseModel& noise,
                         RngStream& rng, const GateShift* shift) {
  validate(noise);
  double sum = 0.0;
  for (int k = 0; k < noise.trajectories; ++k) {
    const StateVector sv =
        runner.noisy_state(theta, noise.bit_flip_prob, rng, shift);
    sum += sv.expectation_diagonal(measure.span());
  }
  return sum / noise.trajectories;
}

double enumerate_noisy_expectation(const CircuitRunner& runner,
                                   std::span<const double> theta,
                                   const DiagonalCost& measure,
                                   double bit_flip_prob) {
  if (!runner.is_qaoa())
    throw std::invalid_argument("noise enumeration requires the QAOA ansatz");
  const int n = runner.num_qubits();
  const int p = runner.qaoa_depth();
  if (n * p > 20)
    throw std::invalid_argument("flip-mask enumeration too large");

  const std::uint64_t masks_per_layer = 1ULL << n;
  const std::uint64_t total = 1ULL << (n * p);
  const double q = bit_flip_prob;

  double expectation = 0.0;
  for (std::uint64_t combo = 0; combo < total; ++combo) {
    // Layer l uses bits [l*n, (l+1)*n) of the combined mask index.
    double prob = 1.0;
    StateVector sv = StateVector::plus_state(n);
    for (int layer = 0; layer < p; ++layer) {
      sv.apply_diagonal_phase(runner.circuit_cost_vector().span(),
                              theta[2 * layer]);
      sv.apply_mixer(theta[2 * layer + 1]);
      const std::uint64_t mask = (combo >> (layer * n)) & (masks_per_layer - 1);
      for (int qubit = 0; qubit < n; ++qubit) {
        if ((mask >> qubit) & 1ULL) {
          sv.apply_x(qubit);
          prob *= q;
        } else {
          prob *= 1.0 - q;
        }
      }
    }
    if (prob == 0.0) continue;
    expectation += prob * sv.expectation_diagonal(measure.span());
  }
  return expectation;
}

}  // namespace vqnn

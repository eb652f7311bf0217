#pragma once

#include "vqnn/ansatz.hpp"
#include "vqnn/maxcut.hpp"
#include "vqnn/rng.hpp"

namespace vqnn {

// Per-qubit bit-flip channel, realized by Monte-Carlo trajectories: in each
// trajectory every qubit is flipped independently with probability
// bit_flip_prob after each QAOA (cost, mixer) layer pair, including the last.
struct NoiseModel {
  double bit_flip_prob = 0.0;
  int trajectories = 100;
};

void validate(const NoiseModel& noise);

// Average of exact diagonal expectations over `trajectories` noisy runs.
// With bit_flip_prob == 0 every trajectory is the noiseless state, so the
// result equals the exact expectation.
double noisy_expectation(const CircuitRunner& runner,
                         std::span<const double> theta,
                         const DiagonalCost& measure, const NoiseModel& noise,
                         RngStream& rng, const GateShift* shift = nullptr);

// Exact noisy expectation by enumerating every per-layer flip mask with its
// probability. Cost grows as 2^(N*p); intended as a small-N oracle.
double enumerate_noisy_expectation(const CircuitRunner& runner,
                                   std::span<const double> theta,
                                   const DiagonalCost& measure,
                                   double bit_flip_prob);

}  // namespace vqnn

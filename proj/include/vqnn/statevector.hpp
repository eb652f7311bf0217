#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "vqnn/rng.hpp"

namespace vqnn {

using cplx = std::complex<double>;
using Spin = std::int8_t;  // +1 or -1

inline constexpr int kMaxQubits = 24;  // dense simulation memory bound

enum class Axis { X, Y, Z };

// Converts basis index <-> spin assignment. Bit i of the index holds the
// state of qubit i; bit 0 maps to spin +1, bit 1 to spin -1.
inline Spin spin_of_bit(std::uint64_t basis, int qubit) {
  return static_cast<Spin>(1 - 2 * static_cast<int>((basis >> qubit) & 1u));
}
void spins_from_index(std::uint64_t basis, int num_qubits, std::span<Spin> out);
std::uint64_t index_from_spins(std::span<const Spin> spins);

// Dense 2^N-amplitude pure state with in-place strided gate kernels.
class StateVector {
 public:
  // |0...0>
  explicit StateVector(int num_qubits);

  // |+>^N, all amplitudes 2^(-N/2).
  static StateVector plus_state(int num_qubits);

  // Per-qubit RY(pi/4) on |0>^N, amplitudes (cos(pi/8), sin(pi/8)) per qubit
  // under the convention R_A(theta) = exp(-i theta sigma_A / 2).
  static StateVector ry_quarter_state(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const cplx> amplitudes() const { return amps_; }
  std::span<cplx> amplitudes() { return amps_; }

  // amplitude_b *= exp(-i gamma cost[b])
  void apply_diagonal_phase(std::span<const double> cost, double gamma);

  // amplitude_b *= exp(-i gamma w z_i z_j), the single-edge Ising phase.
  void apply_edge_phase(int i, int j, double weight, double gamma);

  // exp(-i theta sigma_axis / 2) on one qubit.
  void apply_rotation(int qubit, Axis axis, double theta);

  void apply_cz(int i, int j);
  void apply_x(int qubit);

  // exp(-i beta sigma_x) on every qubit, i.e. RX(2 beta) each.
  void apply_mixer(double beta);

  // Mixer with one qubit's angle overridden to beta + delta (used by the
  // per-qubit parameter-shift decomposition).
  void apply_mixer_shifted(double beta, int shifted_qubit, double delta);

  std::vector<double> probabilities() const;
  double norm_sq() const;

  double expectation_diagonal(std::span<const double> cost) const;

  // n i.i.d. computational-basis measurements as spin rows, row-major n x N.
  std::vector<Spin> sample_spins(int n, RngStream& rng) const;

 private:
  void apply_1q(int qubit, cplx m00, cplx m01, cplx m10, cplx m11);
  void check_qubit(int qubit) const;

  int num_qubits_;
  std::vector<cplx> amps_;
};

// i.i.d. spin rows drawn from an explicit basis-state distribution
// (normalized internally), row-major n x num_qubits.
std::vector<Spin> sample_spins_from_probs(std::span<const double> probs,
                                          int num_qubits, int n,
                                          RngStream& rng);

}  // namespace vqnn

#include "vqnn/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vqnn {

namespace {

void check_num_qubits(int n) {
  if (n < 1 || n > kMaxQubits)
    throw std::out_of_range("num_qubits must be in [1, 24]");
}

}  // namespace

void spins_from_index(std::uint64_t basis, int num_qubits,
                      std::span<Spin> out) {
  if (static_cast<int>(out.size()) != num_qubits)
    throw std::invalid_argument("spins_from_index: output size mismatch");
  for (int q = 0; q < num_qubits; ++q) out[q] = spin_of_bit(basis, q);
}

std::uint64_t index_from_spins(std::span<const Spin> spins) {
  std::uint64_t b = 0;
  for (std::size_t q = 0; q < spins.size(); ++q) {
    if (spins[q] != 1 && spins[q] != -1)
      throw std::invalid_argument("spins must be +1 or -1");
    if (spins[q] == -1) b |= (1ULL << q);
  }
  return b;
}

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  check_num_qubits(num_qubits);
  amps_.assign(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
  amps_[0] = cplx{1.0, 0.0};
}

StateVector StateVector::plus_state(int num_qubits) {
  check_num_qubits(num_qubits);
  StateVector sv(num_qubits);
  const double a = std::pow(2.0, -0.5 * num_qubits);
  std::fill(sv.amps_.begin(), sv.amps_.end(), cplx{a, 0.0});
  return sv;
}

StateVector StateVector::ry_quarter_state(int num_qubits) {
  check_num_qubits(num_qubits);
  StateVector sv(num_qubits);
  const double c = std::cos(std::numbers::pi / 8.0);
  const double s = std::sin(std::numbers::pi / 8.0);
  // Product state: amplitude_b = prod_q (bit_q ? s : c).
  for (std::size_t b = 0; b < sv.amps_.size(); ++b) {
    double a = 1.0;
    for (int q = 0; q < num_qubits; ++q) a *= ((b >> q) & 1u) ? s : c;
    sv.amps_[b] = cplx{a, 0.0};
  }
  return sv;
}

void StateVector::check_qubit(int qubit) const {
  if (qubit < 0 || qubit >= num_qubits_)
    throw std::out_of_range("qubit index out of range");
}

void StateVector::apply_diagonal_phase(std::span<const double> cost,
                                       double gamma) {
  if (cost.size() != amps_.size())
    throw std::invalid_argument("cost vector length must be 2^N");
  if (gamma == 0.0) return;
  for (std::size_t b = 0; b < amps_.size(); ++b) {
    const double phi = -gamma * cost[b];
    amps_[b] *= cplx{std::cos(phi), std::sin(phi)};
  }
}

void StateVector::apply_edge_phase(int i, int j, double weight, double gamma) {
  check_qubit(i);
  check_qubit(j);
  if (i == j) throw std::invalid_argument("edge endpoints must differ");
  const double phi = -gamma * weight;  // phase where z_i z_j = +1
  const cplx aligned{std::cos(phi), std::sin(phi)};
  const cplx opposed = std::conj(aligned);
  const std::uint64_t mi = 1ULL << i, mj = 1ULL << j;
  for (std::size_t b = 0; b < amps_.size(); ++b) {
    const bool same = ((b & mi) != 0) == ((b & mj) != 0);
    amps_[b] *= same ? aligned : opposed;
  }
}

void StateVector::apply_1q(int qubit, cplx m00, cplx m01, cplx m10, cplx m11) {
  const std::size_t mask = std::size_t{1} << qubit;
  const std::size_t lo_mask = mask - 1;
  const std::size_t half = amps_.size() >> 1;
  for (std::size_t k = 0; k < half; ++k) {
    const std::size_t i0 = ((k & ~lo_mask) << 1) | (k & lo_mask);
    const std::size_t i1 = i0 | mask;
    const cplx a0 = amps_[i0];
    const cplx a1 = amps_[i1];
    amps_[i0] = m00 * a0 + m01 * a1;
    amps_[i1] = m10 * a0 + m11 * a1;
  }
}

void StateVector::apply_rotation(int qubit, Axis axis, double theta) {
  check_qubit(qubit);
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  switch (axis) {
    case Axis::X:
      apply_1q(qubit, {c, 0}, {0, -s}, {0, -s}, {c, 0});
      break;
    case Axis::Y:
      apply_1q(qubit, {c, 0}, {-s, 0}, {s, 0}, {c, 0});
      break;
    case Axis::Z: {
      // Diagonal; scale the two halves in place.
      const cplx p0{c, -s}, p1{c, s};
      const std::size_t mask = std::size_t{1} << qubit;
      for (std::size_t b = 0; b < amps_.size(); ++b)
        amps_[b] *= (b & mask) ? p1 : p0;
      break;
    }
  }
}

void StateVector::apply_cz(int i, int j) {
  check_qubit(i);
  check_qubit(j);
  if (i == j) throw std::invalid_argument("cz qubits must differ");
  const std::size_t both = (std::size_t{1} << i) | (std::size_t{1} << j);
  for (std::size_t b = 0; b < amps_.size(); ++b)
    if ((b & both) == both) amps_[b] = -amps_[b];
}

void StateVector::apply_x(int qubit) {
  check_qubit(qubit);
  const std::size_t mask = std::size_t{1} << qubit;
  const std::size_t lo_mask = mask - 1;
  const std::size_t half = amps_.size() >> 1;
  for (std::size_t k = 0; k < half; ++k) {
    const std::size_t i0 = ((k & ~lo_mask) << 1) | (k & lo_mask);
    std::swap(amps_[i0], amps_[i0 | mask]);
  }
}

void StateVector::apply_mixer(double beta) {
  for (int q = 0; q < num_qubits_; ++q) apply_rotation(q, Axis::X, 2.0 * beta);
}

void StateVector::apply_mixer_shifted(double beta, int shifted_qubit,
                                      double delta) {
  check_qubit(shifted_qubit);
  for (int q = 0; q < num_qubits_; ++q) {
    const double angle = (q == shifted_qubit) ? 2.0 * (beta + delta)
                                              : 2.0 * beta;
    apply_rotation(q, Axis::X, angle);
  }
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps_.size());
  for (std::size_t b = 0; b < amps_.size(); ++b) p[b] = std::norm(amps_[b]);
  return p;
}

double StateVector::norm_sq() const {
  double s = 0.0;
  for (const cplx& a : amps_) s += std::norm(a);
  return s;
}

double StateVector::expectation_diagonal(std::span<const double> cost) const {
  if (cost.size() != amps_.size())
    throw std::invalid_argument("cost vector length must be 2^N");
  double s = 0.0;
  for (std::size_t b = 0; b < amps_.size(); ++b)
    s += std::norm(amps_[b]) * cost[b];
  return s;
}

std::vector<Spin> StateVector::sample_spins(int n, RngStream& rng) const {
  return sample_spins_from_probs(probabilities(), num_qubits_, n, rng);
}

std::vector<Spin> sample_spins_from_probs(std::span<const double> probs,
                                          int num_qubits, int n,
                                          RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample count must be >= 1");
  if (probs.size() != (std::size_t{1} << num_qubits))
    throw std::invalid_argument("probability vector length must be 2^N");
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t b = 0; b < probs.size(); ++b) {
    acc += probs[b];
    cdf[b] = acc;
  }
  std::vector<Spin> out(static_cast<std::size_t>(n) * num_qubits);
  for (int k = 0; k < n; ++k) {
    const double u = rng.uniform() * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::uint64_t b =
        static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(
            it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1));
    spins_from_index(b, num_qubits,
                     std::span<Spin>(out.data() + std::size_t(k) * num_qubits,
                                     num_qubits));
  }
  return out;
}

}  // namespace vqnn

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dense_reference.hpp"
#include "vqnn/maxcut.hpp"
#include "vqnn/rng.hpp"
#include "vqnn/statevector.hpp"

using vqnn::Axis;
using vqnn::cplx;
using vqnn::RngStream;
using vqnn::Spin;
using vqnn::StateVector;

namespace {

constexpr double kPi = std::numbers::pi;

StateVector random_state(int n, RngStream& rng) {
  StateVector sv = StateVector::plus_state(n);
  for (int step = 0; step < 3 * n; ++step) {
    const int q = static_cast<int>(rng.uniform_int(n));
    const Axis axis = static_cast<Axis>(rng.uniform_int(3));
    sv.apply_rotation(q, axis, rng.uniform(0.0, 2.0 * kPi));
  }
  return sv;
}

oracle::cvec to_dense(const StateVector& sv) {
  return oracle::cvec(sv.amplitudes().begin(), sv.amplitudes().end());
}

double max_abs_diff(const StateVector& sv, const oracle::cvec& v) {
  double m = 0.0;
  for (std::size_t b = 0; b < v.size(); ++b)
    m = std::max(m, std::abs(sv.amplitudes()[b] - v[b]));
  return m;
}

}  // namespace

TEST_SUITE_BEGIN("simulator");

TEST_CASE("plus state amplitudes") {
  const StateVector one = StateVector::plus_state(1);
  CHECK(one.amplitudes()[0].real() == doctest::Approx(0.7071067811865476));
  CHECK(one.amplitudes()[1].real() == doctest::Approx(0.7071067811865476));

  const StateVector two = StateVector::plus_state(2);
  for (const cplx& a : two.amplitudes()) {
    CHECK(a.real() == doctest::Approx(0.5));
    CHECK(a.imag() == 0.0);
  }
  CHECK(two.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(StateVector::plus_state(0), std::out_of_range);
  CHECK_THROWS_AS(StateVector::plus_state(25), std::out_of_range);
}

TEST_CASE("ry quarter state is the documented product state") {
  const StateVector one = StateVector::ry_quarter_state(1);
  CHECK(one.amplitudes()[0].real() == doctest::Approx(0.9238795325112867));
  CHECK(one.amplitudes()[1].real() == doctest::Approx(0.3826834323650898));

  const StateVector two = StateVector::ry_quarter_state(2);
  const double c = std::cos(kPi / 8), s = std::sin(kPi / 8);
  CHECK(two.amplitudes()[0].real() == doctest::Approx(c * c));
  CHECK(two.amplitudes()[1].real() == doctest::Approx(s * c));
  CHECK(two.amplitudes()[2].real() == doctest::Approx(c * s));
  CHECK(two.amplitudes()[3].real() == doctest::Approx(s * s));

  // All-zeros probability at N=3: product of the three one-qubit
  // probabilities cos^2(pi/8).
  const StateVector three = StateVector::ry_quarter_state(3);
  const double expected = std::pow(std::cos(kPi / 8), 6.0);
  CHECK(expected == doctest::Approx(0.6218592167691145).epsilon(1e-12));
  CHECK(three.probabilities()[0] == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("diagonal phase: zero angle, probability invariance, dense oracle") {
  const vqnn::MaxCutInstance edge(2, {{0, 1, 1.0}});
  const vqnn::DiagonalCost cost = vqnn::build_cost_vector(edge);

  RngStream rng(3);
  StateVector sv = random_state(2, rng);
  const auto before = std::vector<cplx>(sv.amplitudes().begin(),
                                        sv.amplitudes().end());
  sv.apply_diagonal_phase(cost.span(), 0.0);
  for (std::size_t b = 0; b < before.size(); ++b)
    CHECK(sv.amplitudes()[b] == before[b]);

  const auto probs_before = sv.probabilities();
  sv.apply_diagonal_phase(cost.span(), 0.773);
  const auto probs_after = sv.probabilities();
  for (std::size_t b = 0; b < probs_before.size(); ++b)
    CHECK(probs_after[b] == doctest::Approx(probs_before[b]).epsilon(1e-12));

  // Dense oracle: exp(-i 0.3 J sigma_z x sigma_z) as a diagonal matrix
  // exponential applied to the raw amplitudes.
  StateVector lhs = random_state(2, rng);
  const oracle::cvec dense_in = to_dense(lhs);
  lhs.apply_diagonal_phase(cost.span(), 0.3);
  const oracle::cvec dense_out = oracle::matvec(
      oracle::diagonal_phase_matrix(cost.span(), 0.3), dense_in);
  CHECK(max_abs_diff(lhs, dense_out) < 1e-12);

  std::vector<double> wrong_len(3, 0.0);
  CHECK_THROWS_AS(lhs.apply_diagonal_phase(wrong_len, 1.0),
                  std::invalid_argument);
}

TEST_CASE("rotations: identity at zero, X flip, Z preserves probabilities") {
  RngStream rng(11);
  StateVector sv = random_state(2, rng);
  const auto before = std::vector<cplx>(sv.amplitudes().begin(),
                                        sv.amplitudes().end());
  sv.apply_rotation(0, Axis::Y, 0.0);
  for (std::size_t b = 0; b < before.size(); ++b)
    CHECK(sv.amplitudes()[b] == before[b]);

  StateVector zero(1);
  zero.apply_rotation(0, Axis::X, kPi);  // exp(-i pi X/2) = -i X
  CHECK(std::abs(zero.amplitudes()[0]) < 1e-15);
  CHECK(zero.amplitudes()[1].real() == doctest::Approx(0.0));
  CHECK(zero.amplitudes()[1].imag() == doctest::Approx(-1.0));

  StateVector z = random_state(3, rng);
  const auto probs_before = z.probabilities();
  z.apply_rotation(1, Axis::Z, 1.234);
  const auto probs_after = z.probabilities();
  for (std::size_t b = 0; b < probs_before.size(); ++b)
    CHECK(probs_after[b] == doctest::Approx(probs_before[b]).epsilon(1e-12));

  CHECK_THROWS_AS(z.apply_rotation(3, Axis::X, 1.0), std::out_of_range);
}

TEST_CASE("cz acts only on the |11> sector and squares to identity") {
  StateVector sv = StateVector::plus_state(2);
  sv.apply_cz(0, 1);
  CHECK(sv.amplitudes()[0].real() == doctest::Approx(0.5));
  CHECK(sv.amplitudes()[1].real() == doctest::Approx(0.5));
  CHECK(sv.amplitudes()[2].real() == doctest::Approx(0.5));
  CHECK(sv.amplitudes()[3].real() == doctest::Approx(-0.5));
  sv.apply_cz(0, 1);
  CHECK(sv.amplitudes()[3].real() == doctest::Approx(0.5));
  CHECK_THROWS_AS(sv.apply_cz(0, 0), std::invalid_argument);
}

TEST_CASE("mixer: identity at zero, plus-state eigenstate, beta = pi/2 flip") {
  RngStream rng(5);
  StateVector sv = random_state(2, rng);
  const auto before = std::vector<cplx>(sv.amplitudes().begin(),
                                        sv.amplitudes().end());
  sv.apply_mixer(0.0);
  for (std::size_t b = 0; b < before.size(); ++b)
    CHECK(sv.amplitudes()[b] == before[b]);

  // |+>^N is a sigma_x eigenstate: diagonal expectations are unchanged.
  const vqnn::MaxCutInstance tri(3, {{0, 1, 0.7}, {1, 2, -0.4}, {0, 2, 1.1}});
  const vqnn::DiagonalCost cost = vqnn::build_cost_vector(tri);
  StateVector plus = StateVector::plus_state(3);
  const double e0 = plus.expectation_diagonal(cost.span());
  plus.apply_mixer(0.937);
  CHECK(plus.expectation_diagonal(cost.span()) ==
        doctest::Approx(e0).epsilon(1e-12));
  CHECK(plus.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));

  StateVector zero(1);
  zero.apply_mixer(kPi / 2);  // exp(-i pi/2 X) = -i X
  CHECK(zero.probabilities()[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("probabilities: plus state, diagonal invariance, normalization") {
  const StateVector plus = StateVector::plus_state(2);
  for (double p : plus.probabilities()) CHECK(p == doctest::Approx(0.25));

  RngStream rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const StateVector sv = random_state(3, rng);
    double total = 0.0;
    for (double p : sv.probabilities()) {
      CHECK(p >= 0.0);
      total += p;
    }
    CHECK(std::abs(total - 1.0) < 1e-10);
  }
}

TEST_CASE("expectation_diagonal basics and shot consistency") {
  const StateVector sv = StateVector::plus_state(3);
  const std::vector<double> constant(8, 2.5);
  CHECK(sv.expectation_diagonal(constant) == doctest::Approx(2.5));

  const vqnn::MaxCutInstance tri(3, {{0, 1, 0.7}, {1, 2, -0.4}, {0, 2, 1.1}});
  const vqnn::DiagonalCost cost = vqnn::build_cost_vector(tri);
  CHECK(sv.expectation_diagonal(cost.span()) ==
        doctest::Approx(0.0).epsilon(1e-12));

  // Shot estimate within 3 sigma of the exact value; sigma from the exact
  // variance of the measured eigenvalue.
  RngStream rng(23);
  const StateVector state = random_state(3, rng);
  const auto probs = state.probabilities();
  double mean = 0.0, second = 0.0;
  for (std::size_t b = 0; b < probs.size(); ++b) {
    mean += probs[b] * cost.values[b];
    second += probs[b] * cost.values[b] * cost.values[b];
  }
  const int shots = 10000;
  const double sigma = std::sqrt((second - mean * mean) / shots);
  const std::vector<Spin> samples = state.sample_spins(shots, rng);
  double estimate = 0.0;
  std::vector<Spin> row(3);
  for (int s = 0; s < shots; ++s) {
    for (int q = 0; q < 3; ++q) row[q] = samples[std::size_t(s) * 3 + q];
    estimate += vqnn::cost_of_assignment(tri, row);
  }
  estimate /= shots;
  CHECK(std::abs(estimate - mean) < 3.0 * sigma + 1e-12);

  std::vector<double> wrong(4, 0.0);
  CHECK_THROWS_AS(sv.expectation_diagonal(wrong), std::invalid_argument);
}

TEST_CASE("sampling: deterministic state, seed reproducibility, statistics") {
  StateVector zero(3);
  RngStream rng(1);
  for (Spin s : zero.sample_spins(50, rng)) CHECK(s == 1);

  const StateVector plus = StateVector::plus_state(2);
  RngStream r1(99), r2(99);
  CHECK(plus.sample_spins(100, r1) == plus.sample_spins(100, r2));

  const int n = 100000;
  RngStream r3(7);
  const std::vector<Spin> samples = plus.sample_spins(n, r3);
  for (int q = 0; q < 2; ++q) {
    double mean = 0.0;
    for (int s = 0; s < n; ++s) mean += samples[std::size_t(s) * 2 + q];
    mean /= n;
    CHECK(std::abs(mean) < 4.0 / std::sqrt(double(n)));
  }
}

TEST_CASE("norm is preserved by random gate sequences") {
  RngStream rng(31);
  const vqnn::MaxCutInstance tri(3, {{0, 1, 0.7}, {1, 2, -0.4}, {0, 2, 1.1}});
  const vqnn::DiagonalCost cost = vqnn::build_cost_vector(tri);
  for (int trial = 0; trial < 20; ++trial) {
    StateVector sv = StateVector::plus_state(3);
    for (int step = 0; step < 12; ++step) {
      switch (rng.uniform_int(4)) {
        case 0:
          sv.apply_rotation(static_cast<int>(rng.uniform_int(3)),
                            static_cast<Axis>(rng.uniform_int(3)),
                            rng.uniform(0.0, 2 * kPi));
          break;
        case 1:
          sv.apply_diagonal_phase(cost.span(), rng.uniform(0.0, 2 * kPi));
          break;
        case 2:
          sv.apply_cz(0, static_cast<int>(1 + rng.uniform_int(2)));
          break;
        default:
          sv.apply_mixer(rng.uniform(0.0, 2 * kPi));
      }
      CHECK(std::abs(sv.norm_sq() - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("gate followed by its inverse restores the amplitudes") {
  RngStream rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    StateVector sv = random_state(3, rng);
    const auto before = std::vector<cplx>(sv.amplitudes().begin(),
                                          sv.amplitudes().end());
    const double theta = rng.uniform(0.0, 2 * kPi);
    const int q = static_cast<int>(rng.uniform_int(3));
    const Axis axis = static_cast<Axis>(rng.uniform_int(3));

    sv.apply_rotation(q, axis, theta);
    sv.apply_rotation(q, axis, -theta);
    sv.apply_cz(0, 2);
    sv.apply_cz(0, 2);
    sv.apply_mixer(theta);
    sv.apply_mixer(-theta);
    for (std::size_t b = 0; b < before.size(); ++b)
      CHECK(std::abs(sv.amplitudes()[b] - before[b]) < 1e-12);
  }
}

TEST_CASE("small-N kernels match their dense matrix representations") {
  RngStream rng(41);
  for (int n = 1; n <= 3; ++n) {
    const vqnn::MaxCutInstance line =
        n == 1 ? vqnn::MaxCutInstance(1, {})
               : (n == 2 ? vqnn::MaxCutInstance(2, {{0, 1, 0.8}})
                         : vqnn::MaxCutInstance(3, {{0, 1, 0.8}, {1, 2, -1.3}}));
    const vqnn::DiagonalCost cost = vqnn::build_cost_vector(line);

    for (int trial = 0; trial < 5; ++trial) {
      StateVector sv = random_state(n, rng);
      const oracle::cvec dense = to_dense(sv);
      const double theta = rng.uniform(0.0, 2 * kPi);
      const int q = static_cast<int>(rng.uniform_int(n));

      // X/Y/Z rotations
      {
        StateVector s = sv;
        s.apply_rotation(q, Axis::X, theta);
        CHECK(max_abs_diff(s, oracle::matvec(
                                  oracle::embed_1q(n, q, oracle::rx(theta)),
                                  dense)) < 1e-12);
        s = sv;
        s.apply_rotation(q, Axis::Y, theta);
        CHECK(max_abs_diff(s, oracle::matvec(
                                  oracle::embed_1q(n, q, oracle::ry(theta)),
                                  dense)) < 1e-12);
        s = sv;
        s.apply_rotation(q, Axis::Z, theta);
        CHECK(max_abs_diff(s, oracle::matvec(
                                  oracle::embed_1q(n, q, oracle::rz(theta)),
                                  dense)) < 1e-12);
      }
      // diagonal phase and mixer
      {
        StateVector s = sv;
        s.apply_diagonal_phase(cost.span(), theta);
        CHECK(max_abs_diff(
                  s, oracle::matvec(
                         oracle::diagonal_phase_matrix(cost.span(), theta),
                         dense)) < 1e-12);
        s = sv;
        s.apply_mixer(theta);
        CHECK(max_abs_diff(s, oracle::matvec(oracle::mixer_matrix(n, theta),
                                             dense)) < 1e-12);
      }
      // cz and x
      if (n >= 2) {
        StateVector s = sv;
        s.apply_cz(0, n - 1);
        CHECK(max_abs_diff(s, oracle::matvec(oracle::cz_matrix(n, 0, n - 1),
                                             dense)) < 1e-12);
        s = sv;
        s.apply_x(q);
        CHECK(max_abs_diff(s, oracle::matvec(
                                  oracle::embed_1q(n, q, oracle::pauli_x()),
                                  dense)) < 1e-12);
      }
    }
  }
}

TEST_CASE("sampling frequencies match probabilities within 5 sigma") {
  RngStream rng(43);
  const StateVector sv = random_state(2, rng);
  const auto probs = sv.probabilities();
  const int n = 100000;
  const std::vector<Spin> samples = sv.sample_spins(n, rng);
  std::vector<int> counts(4, 0);
  for (int s = 0; s < n; ++s) {
    int b = 0;
    for (int q = 0; q < 2; ++q)
      if (samples[std::size_t(s) * 2 + q] == -1) b |= 1 << q;
    counts[b]++;
  }
  for (int b = 0; b < 4; ++b) {
    const double sigma = std::sqrt(probs[b] * (1 - probs[b]) / n);
    CHECK(std::abs(counts[b] / double(n) - probs[b]) <= 5.0 * sigma + 1e-9);
  }
}

TEST_SUITE_END();

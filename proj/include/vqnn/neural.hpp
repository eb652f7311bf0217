#pragma once

#include <span>
#include <vector>

#include "vqnn/maxcut.hpp"
#include "vqnn/statevector.hpp"

namespace vqnn {

// Dense square matrix, row-major. Holds the network weights W as well as
// gradients with respect to them.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n) : n_(n), data_(std::size_t(n) * n, 0.0) {}

  static Matrix identity(int n);

  int dim() const { return n_; }
  double& at(int row, int col) { return data_[std::size_t(row) * n_ + col]; }
  double at(int row, int col) const {
    return data_[std::size_t(row) * n_ + col];
  }
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  Matrix& add_scaled(const Matrix& other, double factor);
  bool all_finite() const;

 private:
  int n_ = 0;
  std::vector<double> data_;
};

using WeightMatrix = Matrix;

// y = tanh(W x) for a spin vector x; every entry lies strictly in (-1, 1).
std::vector<double> nn_forward(const WeightMatrix& w, std::span<const Spin> x);

// sum_{(i,j) in E} J_ij y_i y_j on a relaxed assignment.
double relaxed_cost(const MaxCutInstance& instance,
                    std::span<const double> y);

// Backpropagated gradient of relaxed_cost(forward(W, x)) with respect to W:
// G_ik = (sum_j Jhat_ij y_j) (1 - y_i^2) x_k.
Matrix grad_w(const MaxCutInstance& instance, const WeightMatrix& w,
              std::span<const Spin> x);

// Arithmetic mean of grad_w over a batch of spin rows (row-major, width N).
Matrix batch_grad(const MaxCutInstance& instance, const WeightMatrix& w,
                  std::span<const Spin> batch);

// Eigenvalues of the deformed Hamiltonian H(W): C(tanh(W x(b))) per basis b.
DiagonalCost modified_cost_vector(const MaxCutInstance& instance,
                                  const WeightMatrix& w);

// Exact network gradient of the mean cost under the distribution
// probabilities[b]: sum_b p_b grad_w(W, x(b)).
Matrix exact_weight_gradient(const MaxCutInstance& instance,
                             const WeightMatrix& w,
                             std::span<const double> probabilities);

// Mean deformed cost and its exact W-gradient in one basis sweep.
std::pair<double, Matrix> weighted_cost_and_grad(
    const MaxCutInstance& instance, const WeightMatrix& w,
    std::span<const double> probabilities);

// L1 distance from identity and its subgradient (sign convention: 0 at 0).
double reg_value(const WeightMatrix& w);
Matrix reg_subgrad(const WeightMatrix& w);

}  // namespace vqnn

#include "vqnn/neural.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace vqnn {

Matrix Matrix::identity(int n) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

Matrix& Matrix::add_scaled(const Matrix& other, double factor) {
  if (other.n_ != n_) throw std::invalid_argument("matrix dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i)
    data_[i] += factor * other.data_[i];
  return *this;
}

bool Matrix::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

namespace {

void check_spins(std::span<const Spin> x, int n) {
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("spin vector length mismatch");
  for (Spin s : x)
    if (s != 1 && s != -1)
      throw std::invalid_argument("spin entries must be +1 or -1");
}

}  // namespace

std::vector<double> nn_forward(const WeightMatrix& w,
                               std::span<const Spin> x) {
  const int n = w.dim();
  check_spins(x, n);
  std::vector<double> y(n);
  for (int i = 0; i < n; ++i) {
    double z = 0.0;
    for (int k = 0; k < n; ++k) z += w.at(i, k) * x[k];
    y[i] = std::tanh(z);
  }
  return y;
}

double relaxed_cost(const MaxCutInstance& instance,
                    std::span<const double> y) {
  if (static_cast<int>(y.size()) != instance.num_nodes())
    throw std::invalid_argument("relaxed assignment length mismatch");
  double c = 0.0;
  for (const Edge& e : instance.edges()) c += e.weight * y[e.u] * y[e.v];
  return c;
}

Matrix grad_w(const MaxCutInstance& instance, const WeightMatrix& w,
              std::span<const Spin> x) {
  const int n = instance.num_nodes();
  if (w.dim() != n) throw std::invalid_argument("weight dimension mismatch");
  check_spins(x, n);

  const std::vector<double> y = nn_forward(w, x);
  Matrix g(n);
  for (int i = 0; i < n; ++i) {
    double field = 0.0;  // sum_j Jhat_ij y_j
    for (const auto& [j, weight] : instance.neighbors_of(i))
      field += weight * y[j];
    const double a = field * (1.0 - y[i] * y[i]);
    for (int k = 0; k < n; ++k) g.at(i, k) = a * x[k];
  }
  return g;
}

Matrix batch_grad(const MaxCutInstance& instance, const WeightMatrix& w,
                  std::span<const Spin> batch) {
  const int n = instance.num_nodes();
  if (batch.empty() || batch.size() % n != 0)
    throw std::invalid_argument("batch must hold a positive number of rows");
  const std::size_t rows = batch.size() / n;
  Matrix sum(n);
  for (std::size_t r = 0; r < rows; ++r)
    sum.add_scaled(grad_w(instance, w, batch.subspan(r * n, n)), 1.0);
  for (double& v : sum.data()) v /= static_cast<double>(rows);
  return sum;
}

DiagonalCost modified_cost_vector(const MaxCutInstance& instance,
                                  const WeightMatrix& w) {
  const int n = instance.num_nodes();
  if (w.dim() != n) throw std::invalid_argument("weight dimension mismatch");
  if (n > kMaxQubits)
    throw std::out_of_range("instance too large for a dense cost vector");

  DiagonalCost cost;
  cost.num_qubits = n;
  cost.values.resize(std::size_t{1} << n);

  // z(b) = W x(b); a single bit flip changes z by -+ 2 W[:, k], so walk the
  // basis in Gray-code order and update incrementally.
  std::vector<double> z(n), y(n);
  std::vector<Spin> x(n, Spin{1});
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += w.at(i, k);
    z[i] = s;
  }
  std::uint64_t gray_prev = 0;
  for (std::uint64_t counter = 0;; ++counter) {
    for (int i = 0; i < n; ++i) y[i] = std::tanh(z[i]);
    cost.values[gray_prev] = relaxed_cost(instance, y);
    if (counter + 1 == cost.values.size()) break;
    const std::uint64_t gray = (counter + 1) ^ ((counter + 1) >> 1);
    const int flipped = std::countr_zero(gray ^ gray_prev);
    x[flipped] = static_cast<Spin>(-x[flipped]);
    const double scale = 2.0 * x[flipped];  // new spin value
    for (int i = 0; i < n; ++i) z[i] += scale * w.at(i, flipped);
    gray_prev = gray;
  }
  return cost;
}

Matrix exact_weight_gradient(const MaxCutInstance& instance,
                             const WeightMatrix& w,
                             std::span<const double> probabilities) {
  const int n = instance.num_nodes();
  if (probabilities.size() != (std::size_t{1} << n))
    throw std::invalid_argument("probability vector length must be 2^N");
  Matrix g(n);
  std::vector<Spin> x(n);
  for (std::uint64_t b = 0; b < probabilities.size(); ++b) {
    if (probabilities[b] == 0.0) continue;
    spins_from_index(b, n, x);
    g.add_scaled(grad_w(instance, w, x), probabilities[b]);
  }
  return g;
}

std::pair<double, Matrix> weighted_cost_and_grad(
    const MaxCutInstance& instance, const WeightMatrix& w,
    std::span<const double> probabilities) {
  const int n = instance.num_nodes();
  if (probabilities.size() != (std::size_t{1} << n))
    throw std::invalid_argument("probability vector length must be 2^N");
  double cost = 0.0;
  Matrix g(n);
  std::vector<Spin> x(n);
  std::vector<double> y;
  for (std::uint64_t b = 0; b < probabilities.size(); ++b) {
    const double p = probabilities[b];
    if (p == 0.0) continue;
    spins_from_index(b, n, x);
    y = nn_forward(w, x);
    cost += p * relaxed_cost(instance, y);
    for (int i = 0; i < n; ++i) {
      double field = 0.0;
      for (const auto& [j, weight] : instance.neighbors_of(i))
        field += weight * y[j];
      const double a = p * field * (1.0 - y[i] * y[i]);
      for (int k = 0; k < n; ++k) g.at(i, k) += a * x[k];
    }
  }
  return {cost, std::move(g)};
}

double reg_value(const WeightMatrix& w) {
  const int n = w.dim();
  double v = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      v += std::abs(w.at(i, k) - (i == k ? 1.0 : 0.0));
  return v;
}

Matrix reg_subgrad(const WeightMatrix& w) {
  const int n = w.dim();
  Matrix g(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double d = w.at(i, k) - (i == k ? 1.0 : 0.0);
      g.at(i, k) = (d > 0.0) ? 1.0 : (d < 0.0) ? -1.0 : 0.0;
    }
  return g;
}

}  // namespace vqnn

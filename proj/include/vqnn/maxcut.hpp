#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vqnn/rng.hpp"
#include "vqnn/statevector.hpp"

namespace vqnn {

struct Edge {
  int u = 0;
  int v = 0;
  double weight = 0.0;
};

// How an instance was generated; kept for serialization and reporting.
struct InstanceFamily {
  enum class Kind { FullyConnectedGaussian, KRegularBimodal, Explicit };
  Kind kind = Kind::Explicit;
  int degree = 0;       // KRegularBimodal only
  double mean = 0.0;    // gaussian mean, or |mean| of the two bimodal peaks
  double variance = 0.0;
};

// Weighted Max-Cut instance. Edges are stored with u < v, sorted, unique.
// The Ising cost of a spin assignment x is sum_{(u,v) in E} J_uv x_u x_v.
class MaxCutInstance {
 public:
  MaxCutInstance(int num_nodes, std::vector<Edge> edges);

  int num_nodes() const { return num_nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Symmetrized adjacency rows: neighbors_of(i) lists (j, J_ij).
  const std::vector<std::pair<int, double>>& neighbors_of(int node) const {
    return adjacency_[node];
  }

  bool connected() const { return connected_; }

  InstanceFamily family;
  std::optional<std::uint64_t> seed;  // generator seed, when generated
  std::string id;                     // short label for reports

 private:
  int num_nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, double>>> adjacency_;
  bool connected_;
};

// Eigenvalues of the diagonal cost Hamiltonian, indexed by basis state.
struct DiagonalCost {
  int num_qubits = 0;
  std::vector<double> values;

  std::span<const double> span() const { return values; }
};

double cost_of_assignment(const MaxCutInstance& instance,
                          std::span<const Spin> x);

DiagonalCost build_cost_vector(const MaxCutInstance& instance);

struct BruteForceResult {
  double min_cost = 0.0;
  std::vector<std::uint64_t> minimizers;  // basis indices, closed under ~b
};

BruteForceResult brute_force_minimum(const MaxCutInstance& instance);

// Complete graph on n nodes, i.i.d. Gaussian(mean, variance) weights.
MaxCutInstance gen_fully_connected(int n, double mean, double variance,
                                   std::uint64_t seed);

// Simple k-regular graph by the pairing model (resampled until simple),
// each weight drawn from Gaussian(+mean_abs, variance) or
// Gaussian(-mean_abs, variance) with probability 1/2.
MaxCutInstance gen_k_regular_bimodal(int n, int k, double mean_abs,
                                     double variance, std::uint64_t seed);

}  // namespace vqnn

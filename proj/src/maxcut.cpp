#include "vqnn/maxcut.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>

namespace vqnn {

namespace {

bool is_connected(int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<bool> seen(n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        stack.push_back(v);
      }
  }
  return count == n;
}

}  // namespace

MaxCutInstance::MaxCutInstance(int num_nodes, std::vector<Edge> edges)
    : num_nodes_(num_nodes), edges_(std::move(edges)) {
  if (num_nodes_ < 1) throw std::invalid_argument("num_nodes must be >= 1");
  for (Edge& e : edges_) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u == e.v) throw std::invalid_argument("self-loop edge");
    if (e.u < 0 || e.v >= num_nodes_)
      throw std::invalid_argument("edge endpoint out of range");
    if (!std::isfinite(e.weight))
      throw std::invalid_argument("edge weight must be finite");
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return std::pair{a.u, a.v} < std::pair{b.u, b.v};
  });
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
      throw std::invalid_argument("duplicate edge");

  adjacency_.resize(num_nodes_);
  for (const Edge& e : edges_) {
    adjacency_[e.u].emplace_back(e.v, e.weight);
    adjacency_[e.v].emplace_back(e.u, e.weight);
  }
  connected_ = is_connected(num_nodes_, edges_);
}

double cost_of_assignment(const MaxCutInstance& instance,
                          std::span<const Spin> x) {
  if (static_cast<int>(x.size()) != instance.num_nodes())
    throw std::invalid_argument("assignment length must equal num_nodes");
  for (Spin s : x)
    if (s != 1 && s != -1)
      throw std::invalid_argument("assignment entries must be +1 or -1");
  double c = 0.0;
  for (const Edge& e : instance.edges())
    c += e.weight * static_cast<double>(x[e.u]) * static_cast<double>(x[e.v]);
  return c;
}

DiagonalCost build_cost_vector(const MaxCutInstance& instance) {
  const int n = instance.num_nodes();
  if (n > kMaxQubits)
    throw std::out_of_range("instance too large for a dense cost vector");
  DiagonalCost cost;
  cost.num_qubits = n;
  cost.values.assign(std::size_t{1} << n, 0.0);
  for (const Edge& e : instance.edges()) {
    const std::uint64_t mu = 1ULL << e.u, mv = 1ULL << e.v;
    for (std::uint64_t b = 0; b < cost.values.size(); ++b) {
      const bool same = ((b & mu) != 0) == ((b & mv) != 0);
      cost.values[b] += same ? e.weight : -e.weight;
    }
  }
  return cost;
}

BruteForceResult brute_force_minimum(const MaxCutInstance& instance) {
  const DiagonalCost cost = build_cost_vector(instance);
  BruteForceResult result;
  result.min_cost = cost.values[0];
  for (std::uint64_t b = 1; b < cost.values.size(); ++b)
    result.min_cost = std::min(result.min_cost, cost.values[b]);
  for (std::uint64_t b = 0; b < cost.values.size(); ++b)
    if (cost.values[b] == result.min_cost) result.minimizers.push_back(b);
  return result;
}

MaxCutInstance gen_fully_connected(int n, double mean, double variance,
                                   std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("need at least 2 nodes");
  if (variance < 0.0) throw std::invalid_argument("variance must be >= 0");
  RngStream rng(seed);
  const double stddev = std::sqrt(variance);
  std::vector<Edge> edges;
  edges.reserve(std::size_t(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      edges.push_back({u, v, rng.gaussian(mean, stddev)});
  MaxCutInstance instance(n, std::move(edges));
  instance.family = {InstanceFamily::Kind::FullyConnectedGaussian, 0, mean,
                     variance};
  instance.seed = seed;
  instance.id = "fc" + std::to_string(n) + "-s" + std::to_string(seed);
  return instance;
}

MaxCutInstance gen_k_regular_bimodal(int n, int k, double mean_abs,
                                     double variance, std::uint64_t seed) {
  if (k < 1 || k >= n) throw std::invalid_argument("need 1 <= k < n");
  if ((std::int64_t(n) * k) % 2 != 0)
    throw std::invalid_argument("n*k must be even for a k-regular graph");
  if (variance < 0.0) throw std::invalid_argument("variance must be >= 0");

  RngStream rng(seed);
  // Pairing model: k stubs per node, shuffled and paired; resample on
  // self-loops or multi-edges.
  std::vector<int> stubs(std::size_t(n) * k);
  std::set<std::pair<int, int>> edge_set;
  constexpr int kMaxAttempts = 100000;
  int attempt = 0;
  for (; attempt < kMaxAttempts; ++attempt) {
    std::size_t idx = 0;
    for (int node = 0; node < n; ++node)
      for (int s = 0; s < k; ++s) stubs[idx++] = node;
    for (std::size_t i = stubs.size() - 1; i > 0; --i)
      std::swap(stubs[i], stubs[rng.uniform_int(i + 1)]);
    edge_set.clear();
    bool simple = true;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      int u = stubs[i], v = stubs[i + 1];
      if (u == v) {
        simple = false;
        break;
      }
      if (u > v) std::swap(u, v);
      if (!edge_set.emplace(u, v).second) {
        simple = false;
        break;
      }
    }
    if (simple) break;
  }
  if (attempt == kMaxAttempts)
    throw std::runtime_error("pairing model failed to produce a simple graph");

  const double stddev = std::sqrt(variance);
  std::vector<Edge> edges;
  edges.reserve(edge_set.size());
  for (const auto& [u, v] : edge_set) {
    const double mu = rng.bernoulli(0.5) ? mean_abs : -mean_abs;
    edges.push_back({u, v, rng.gaussian(mu, stddev)});
  }
  MaxCutInstance instance(n, std::move(edges));
  instance.family = {InstanceFamily::Kind::KRegularBimodal, k, mean_abs,
                     variance};
  instance.seed = seed;
  instance.id = "reg" + std::to_string(n) + "k" + std::to_string(k) + "-s" +
                std::to_string(seed);
  return instance;
}

}  // namespace vqnn

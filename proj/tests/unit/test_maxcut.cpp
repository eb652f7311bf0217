#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <vector>

#include "vqnn/json_io.hpp"
#include "vqnn/maxcut.hpp"
#include "vqnn/rng.hpp"
#include "vqnn/statevector.hpp"

using vqnn::Edge;
using vqnn::MaxCutInstance;
using vqnn::RngStream;
using vqnn::Spin;

namespace {

MaxCutInstance triangle() {
  return MaxCutInstance(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
}

std::vector<Spin> spins(std::initializer_list<int> xs) {
  std::vector<Spin> out;
  for (int x : xs) out.push_back(static_cast<Spin>(x));
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("problems");

TEST_CASE("cost_of_assignment on the unit triangle") {
  const MaxCutInstance tri = triangle();
  CHECK(vqnn::cost_of_assignment(tri, spins({1, 1, 1})) == doctest::Approx(3.0));
  CHECK(vqnn::cost_of_assignment(tri, spins({1, 1, -1})) ==
        doctest::Approx(-1.0));

  RngStream rng(2);
  const MaxCutInstance inst = vqnn::gen_fully_connected(5, 0.0, 1.0, 7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Spin> x(5);
    for (Spin& s : x) s = rng.bernoulli(0.5) ? Spin{1} : Spin{-1};
    std::vector<Spin> neg(x);
    for (Spin& s : neg) s = static_cast<Spin>(-s);
    CHECK(vqnn::cost_of_assignment(inst, x) ==
          doctest::Approx(vqnn::cost_of_assignment(inst, neg)));
  }

  CHECK_THROWS_AS(vqnn::cost_of_assignment(tri, spins({1, 1})),
                  std::invalid_argument);
  CHECK_THROWS_AS(vqnn::cost_of_assignment(tri, spins({1, 0, 1})),
                  std::invalid_argument);
}

TEST_CASE("build_cost_vector fundamentals") {
  const MaxCutInstance edge(2, {{0, 1, 1.0}});
  const vqnn::DiagonalCost cost = vqnn::build_cost_vector(edge);
  REQUIRE(cost.values.size() == 4);
  CHECK(cost.values[0] == doctest::Approx(1.0));
  CHECK(cost.values[1] == doctest::Approx(-1.0));
  CHECK(cost.values[2] == doctest::Approx(-1.0));
  CHECK(cost.values[3] == doctest::Approx(1.0));

  const MaxCutInstance empty(3, {});
  for (double v : vqnn::build_cost_vector(empty).values) CHECK(v == 0.0);

  // Global spin-flip symmetry and agreement with cost_of_assignment.
  const MaxCutInstance inst = vqnn::gen_k_regular_bimodal(8, 5, 1.0, 0.3, 11);
  const vqnn::DiagonalCost full = vqnn::build_cost_vector(inst);
  RngStream rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint64_t b = rng.uniform_int(full.values.size());
    const std::uint64_t flipped = ~b & (full.values.size() - 1);
    CHECK(full.values[b] == doctest::Approx(full.values[flipped]));
    std::vector<Spin> x(8);
    vqnn::spins_from_index(b, 8, x);
    CHECK(full.values[b] ==
          doctest::Approx(vqnn::cost_of_assignment(inst, x)).epsilon(1e-12));
  }
}

TEST_CASE("brute_force_minimum") {
  const vqnn::BruteForceResult tri = vqnn::brute_force_minimum(triangle());
  CHECK(tri.min_cost == doctest::Approx(-1.0));
  CHECK(tri.minimizers.size() == 6);

  const MaxCutInstance edge(2, {{0, 1, -2.0}});
  const vqnn::BruteForceResult aligned = vqnn::brute_force_minimum(edge);
  CHECK(aligned.min_cost == doctest::Approx(-2.0));

  // Exhaustive recomputation and the variational bound.
  const MaxCutInstance inst = vqnn::gen_fully_connected(5, 0.0, 1.0, 13);
  const vqnn::BruteForceResult bf = vqnn::brute_force_minimum(inst);
  double expected = 1e300;
  for (std::uint64_t b = 0; b < 32; ++b) {
    std::vector<Spin> x(5);
    vqnn::spins_from_index(b, 5, x);
    expected = std::min(expected, vqnn::cost_of_assignment(inst, x));
  }
  CHECK(bf.min_cost == doctest::Approx(expected).epsilon(1e-14));

  const vqnn::DiagonalCost cost = vqnn::build_cost_vector(inst);
  RngStream rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    vqnn::StateVector sv = vqnn::StateVector::plus_state(5);
    for (int q = 0; q < 5; ++q)
      sv.apply_rotation(q, vqnn::Axis::Y, rng.uniform(0.0, 6.28));
    CHECK(sv.expectation_diagonal(cost.span()) >= bf.min_cost - 1e-9);
  }
}

TEST_CASE("fully connected generator") {
  const MaxCutInstance inst = vqnn::gen_fully_connected(5, 0.0, 1.0, 42);
  CHECK(inst.num_nodes() == 5);
  CHECK(inst.edges().size() == 10);

  const MaxCutInstance flat = vqnn::gen_fully_connected(4, 2.5, 0.0, 1);
  for (const Edge& e : flat.edges()) CHECK(e.weight == doctest::Approx(2.5));

  const MaxCutInstance again = vqnn::gen_fully_connected(5, 0.0, 1.0, 42);
  for (std::size_t i = 0; i < inst.edges().size(); ++i)
    CHECK(inst.edges()[i].weight == again.edges()[i].weight);
}

TEST_CASE("k-regular bimodal generator") {
  auto degrees = [](const MaxCutInstance& inst) {
    std::vector<int> deg(inst.num_nodes(), 0);
    for (const Edge& e : inst.edges()) {
      deg[e.u]++;
      deg[e.v]++;
    }
    return deg;
  };

  const MaxCutInstance b = vqnn::gen_k_regular_bimodal(8, 5, 1.0, 0.3, 7);
  CHECK(b.edges().size() == 20);
  for (int d : degrees(b)) CHECK(d == 5);

  const MaxCutInstance c = vqnn::gen_k_regular_bimodal(16, 3, 1.0, 1.0, 9);
  CHECK(c.edges().size() == 24);
  for (int d : degrees(c)) CHECK(d == 3);

  const MaxCutInstance sharp = vqnn::gen_k_regular_bimodal(8, 4, 2.0, 0.0, 3);
  for (const Edge& e : sharp.edges())
    CHECK(std::abs(e.weight) == doctest::Approx(2.0));

  const MaxCutInstance again = vqnn::gen_k_regular_bimodal(8, 5, 1.0, 0.3, 7);
  REQUIRE(again.edges().size() == b.edges().size());
  for (std::size_t i = 0; i < b.edges().size(); ++i) {
    CHECK(b.edges()[i].u == again.edges()[i].u);
    CHECK(b.edges()[i].v == again.edges()[i].v);
    CHECK(b.edges()[i].weight == again.edges()[i].weight);
  }

  CHECK_THROWS_AS(vqnn::gen_k_regular_bimodal(5, 3, 1.0, 1.0, 1),
                  std::invalid_argument);  // odd n*k
  CHECK_THROWS_AS(vqnn::gen_k_regular_bimodal(4, 4, 1.0, 1.0, 1),
                  std::invalid_argument);  // k >= n
}

TEST_CASE("instance validation rejects malformed graphs") {
  CHECK_THROWS_AS(MaxCutInstance(3, {{0, 0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(MaxCutInstance(3, {{0, 3, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(MaxCutInstance(3, {{0, 1, 1.0}, {1, 0, 2.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(MaxCutInstance(3, {{0, 1, std::nan("")}}),
                  std::invalid_argument);
}

TEST_CASE("instance json round trip and loader errors") {
  namespace fs = std::filesystem;
  const MaxCutInstance inst = vqnn::gen_k_regular_bimodal(8, 5, 1.0, 0.3, 77);
  const fs::path path = fs::temp_directory_path() / "vqnn_test_instance.json";
  vqnn::save_instance(inst, path.string());
  const MaxCutInstance loaded = vqnn::load_instance(path.string());
  CHECK(loaded.num_nodes() == inst.num_nodes());
  REQUIRE(loaded.edges().size() == inst.edges().size());
  for (std::size_t i = 0; i < inst.edges().size(); ++i)
    CHECK(loaded.edges()[i].weight == inst.edges()[i].weight);
  CHECK(loaded.family.kind == inst.family.kind);
  CHECK(loaded.seed == inst.seed);
  fs::remove(path);

  using vqnn::ojson;
  CHECK_THROWS_WITH_AS(
      vqnn::instance_from_json(ojson::parse(R"({"edges": []})")),
      "instance.num_nodes: required integer", vqnn::FieldError);
  CHECK_THROWS_WITH_AS(
      vqnn::instance_from_json(
          ojson::parse(R"({"num_nodes": 2, "edges": [[0, 0, 1.0]]})")),
      "instance.edges[0]: self-loops are not allowed", vqnn::FieldError);
  CHECK_THROWS_AS(
      vqnn::instance_from_json(
          ojson::parse(R"({"num_nodes": 2, "edges": [[0, 5, 1.0]]})")),
      vqnn::FieldError);
}

TEST_SUITE_END();

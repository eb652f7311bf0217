#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vqnn/algorithms.hpp"
#include "vqnn/json_io.hpp"
#include "vqnn/summary.hpp"

namespace vqnn {

struct OutputPaths {
  std::string records;           // JSON document with every run
  std::string stats;             // CSV, one row per (group, algorithm, mode)
  std::string plot;              // box-and-whisker SVG
  std::string improvement_plot;  // percentage bar chart SVG
};

// A fully resolved experiment: instance, circuit groups, algorithm and its
// hyperparameters, seeding, and output destinations.
struct ExperimentConfig {
  ojson raw;  // the validated config document, echoed into the records file

  MaxCutInstance instance;
  // One batch is run per group: (label, ansatz). QAOA sweeps label by p,
  // hardware-efficient sweeps label architecture draws.
  std::vector<std::pair<int, AnsatzSpec>> groups;

  std::string algorithm;  // "standard" | "escape" | "guide"
  int inits = 1;
  std::uint64_t base_seed = 0;
  GradientMode gradient_mode = GradientMode::exact();
  std::optional<NoiseModel> noise;

  OptimizerConfig optimizer = AdamConfig{};
  ConvergenceCriterion criterion{};
  EscapeConfig escape{};
  GuideConfig guide{};
  // guide only: also run the standard baseline from the same inits so the
  // two can be compared pairwise.
  bool run_baseline = false;

  OutputPaths output;
  int jobs = 1;

  explicit ExperimentConfig(MaxCutInstance inst) : instance(std::move(inst)) {}
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig config_from_json(const ojson& j,
                                  const std::string& config_dir = "");

struct GroupResult {
  int group = 0;
  AnsatzSpec ansatz;
  std::vector<RunRecord> records;
  std::vector<RunRecord> baseline;  // paired standard runs (guide only)
};

struct BatchResult {
  std::vector<GroupResult> groups;
};

// Runs inits x groups jobs; records are ordered by run index regardless of
// the worker count, and each run's randomness is derived from
// (base_seed, run_index) alone, so output is reproducible for any --jobs.
BatchResult run_batch(const ExperimentConfig& config);

ojson records_document(const ExperimentConfig& config,
                       const BatchResult& result);
BatchResult parse_records_document(const ojson& doc);

std::string stats_csv(const BatchResult& result, double pair_threshold = 0.1);
std::string render_cost_plot(const BatchResult& result,
                             const std::string& title, SummaryMode mode);
std::string render_improvement_plot(const BatchResult& result,
                                    const std::string& title,
                                    double pair_threshold = 0.1);

// Writes every configured output file; empty paths are skipped.
void emit_outputs(const ExperimentConfig& config, const BatchResult& result);

}  // namespace vqnn

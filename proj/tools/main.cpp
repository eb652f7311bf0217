// Command-line front end: instance generation, batch experiment execution,
// and post-processing of record files into stats tables and SVG plots.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <string>

#include "vqnn/harness.hpp"
#include "vqnn/json_io.hpp"

namespace fs = std::filesystem;
using vqnn::ojson;

namespace {

int fail(const std::string& type, const std::string& message,
         const std::string& field = "") {
  ojson err;
  err["error"]["type"] = type;
  err["error"]["message"] = message;
  if (!field.empty()) err["error"]["field"] = field;
  std::cerr << err.dump() << std::endl;
  return 1;
}

struct GenInstanceArgs {
  std::string family = "fully_connected";
  int nodes = 5;
  int degree = 3;
  double mean = 0.0;
  double variance = 1.0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen_instance(const GenInstanceArgs& args) {
  vqnn::MaxCutInstance instance =
      args.family == "k_regular"
          ? vqnn::gen_k_regular_bimodal(args.nodes, args.degree, args.mean,
                                        args.variance, args.seed)
          : vqnn::gen_fully_connected(args.nodes, args.mean, args.variance,
                                      args.seed);
  vqnn::save_instance(instance, args.out);
  std::cout << "wrote " << args.out << " (" << instance.edges().size()
            << " edges, " << (instance.connected() ? "connected"
                                                   : "disconnected")
            << ")" << std::endl;
  return 0;
}

struct RunArgs {
  std::string config_path;
  std::string out_dir;
  std::string algorithm;
  std::string mode;
  double noise_p = -1.0;
  int trajectories = 0;
  int jobs = 0;
  std::int64_t seed = -1;
};

int cmd_run(const RunArgs& args) {
  ojson doc = ojson::parse(vqnn::read_text_file(args.config_path));
  // CLI overrides are folded into the document before validation so the
  // records file echoes the effective configuration.
  if (args.seed >= 0) doc["seed"] = static_cast<std::uint64_t>(args.seed);
  if (!args.algorithm.empty()) doc["algorithm"] = args.algorithm;
  if (!args.mode.empty()) doc["gradient_mode"] = args.mode;
  if (args.noise_p >= 0.0) {
    doc["noise"]["bit_flip_prob"] = args.noise_p;
    if (!doc["noise"].contains("trajectories"))
      doc["noise"]["trajectories"] = 100;
  }
  if (args.trajectories > 0) doc["noise"]["trajectories"] = args.trajectories;
  if (args.jobs > 0) doc["jobs"] = args.jobs;
  if (!args.out_dir.empty()) {
    fs::create_directories(args.out_dir);
    const fs::path dir(args.out_dir);
    doc["output"]["records"] = (dir / "records.json").string();
    doc["output"]["stats"] = (dir / "stats.csv").string();
    doc["output"]["plot"] = (dir / "costs.svg").string();
    doc["output"]["improvement_plot"] = (dir / "improvement.svg").string();
  }

  vqnn::ExperimentConfig config = vqnn::config_from_json(
      doc, fs::path(args.config_path).parent_path().string());
  const vqnn::BatchResult result = vqnn::run_batch(config);
  vqnn::emit_outputs(config, result);

  int failures = 0;
  for (const auto& group : result.groups) {
    for (const auto& r : group.records)
      if (!r.error.empty()) ++failures;
    for (const auto& r : group.baseline)
      if (!r.error.empty()) ++failures;
  }
  std::cout << "ran " << result.groups.size() << " group(s) x "
            << config.inits << " init(s)";
  if (failures > 0) std::cout << ", " << failures << " failed run(s)";
  if (!config.output.records.empty())
    std::cout << "; records -> " << config.output.records;
  std::cout << std::endl;
  return 0;
}

struct PostArgs {
  std::string records_path;
  std::string out;
  std::string improvement_out;
  std::string mode = "all";
  double threshold = 0.1;
  std::string title;
};

int cmd_summarize(const PostArgs& args) {
  const ojson doc = ojson::parse(vqnn::read_text_file(args.records_path));
  const vqnn::BatchResult result = vqnn::parse_records_document(doc);
  const std::string csv = vqnn::stats_csv(result, args.threshold);
  if (args.out.empty()) {
    std::cout << csv;
  } else {
    vqnn::write_text_file(args.out, csv);
    std::cout << "wrote " << args.out << std::endl;
  }
  return 0;
}

int cmd_plot(const PostArgs& args) {
  const ojson doc = ojson::parse(vqnn::read_text_file(args.records_path));
  const vqnn::BatchResult result = vqnn::parse_records_document(doc);
  const vqnn::SummaryMode mode = args.mode == "improved"
                                     ? vqnn::SummaryMode::ImprovedOnly
                                     : vqnn::SummaryMode::All;
  std::string title = args.title;
  if (title.empty()) title = fs::path(args.records_path).stem().string();
  vqnn::write_text_file(args.out,
                        vqnn::render_cost_plot(result, title, mode));
  std::cout << "wrote " << args.out;
  if (!args.improvement_out.empty()) {
    vqnn::write_text_file(
        args.improvement_out,
        vqnn::render_improvement_plot(result, title, args.threshold));
    std::cout << " and " << args.improvement_out;
  }
  std::cout << std::endl;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neural-network-assisted variational quantum optimization"};
  app.require_subcommand(1);

  GenInstanceArgs gen;
  CLI::App* gen_cmd =
      app.add_subcommand("gen-instance", "Generate a Max-Cut instance file");
  gen_cmd->add_option("--family", gen.family, "fully_connected or k_regular")
      ->check(CLI::IsMember({"fully_connected", "k_regular"}));
  gen_cmd->add_option("--nodes", gen.nodes, "number of graph nodes");
  gen_cmd->add_option("--degree", gen.degree, "node degree (k_regular)");
  gen_cmd->add_option("--mean", gen.mean,
                      "gaussian mean (|mean| of both peaks for k_regular)");
  gen_cmd->add_option("--variance", gen.variance, "gaussian variance");
  gen_cmd->add_option("--seed", gen.seed, "generator seed");
  gen_cmd->add_option("--out", gen.out, "output JSON path")->required();

  RunArgs run;
  CLI::App* run_cmd = app.add_subcommand("run", "Run a batch experiment");
  run_cmd->add_option("--config", run.config_path, "experiment config JSON")
      ->required();
  run_cmd->add_option("--seed", run.seed, "override the batch base seed");
  run_cmd->add_option("--out", run.out_dir,
                      "output directory (records/stats/plots)");
  run_cmd->add_option("--algorithm", run.algorithm,
                      "override: standard, escape or guide")
      ->check(CLI::IsMember({"standard", "escape", "guide"}));
  run_cmd->add_option("--mode", run.mode,
                      "gradient mode override: exact or shots:N");
  run_cmd->add_option("--noise-p", run.noise_p,
                      "override per-qubit bit-flip probability");
  run_cmd->add_option("--trajectories", run.trajectories,
                      "override noise trajectory count");
  run_cmd->add_option("--jobs", run.jobs, "worker thread count");

  PostArgs post;
  CLI::App* sum_cmd =
      app.add_subcommand("summarize", "Stats CSV from a records file");
  sum_cmd->add_option("--records", post.records_path, "records JSON")
      ->required();
  sum_cmd->add_option("--out", post.out, "CSV path (stdout when omitted)");
  sum_cmd->add_option("--threshold", post.threshold,
                      "paired improvement/deterioration threshold");

  PostArgs plot;
  CLI::App* plot_cmd =
      app.add_subcommand("plot", "Whisker/improvement SVGs from records");
  plot_cmd->add_option("--records", plot.records_path, "records JSON")
      ->required();
  plot_cmd->add_option("--out", plot.out, "box plot SVG path")->required();
  plot_cmd->add_option("--improvement-out", plot.improvement_out,
                       "improvement bar chart SVG path");
  plot_cmd->add_option("--mode", plot.mode, "all or improved")
      ->check(CLI::IsMember({"all", "improved"}));
  plot_cmd->add_option("--threshold", plot.threshold,
                       "paired improvement/deterioration threshold");
  plot_cmd->add_option("--title", plot.title, "plot title");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed()) return cmd_gen_instance(gen);
    if (run_cmd->parsed()) return cmd_run(run);
    if (sum_cmd->parsed()) return cmd_summarize(post);
    if (plot_cmd->parsed()) return cmd_plot(plot);
  } catch (const vqnn::FieldError& err) {
    return fail("config", err.what(), err.field());
  } catch (const nlohmann::json::exception& err) {
    return fail("json", err.what());
  } catch (const std::exception& err) {
    return fail("runtime", err.what());
  }
  return 0;
}

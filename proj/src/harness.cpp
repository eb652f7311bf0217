#include "vqnn/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <thread>

#include "vqnn/svgplot.hpp"

namespace vqnn {

namespace {

// Independent sub-seed spaces for the different consumers of the base seed.
constexpr std::uint64_t kRunTag = 0x52554e;   // init seeds
constexpr std::uint64_t kHeaTag = 0x484541;   // architecture draws

std::uint64_t tagged_seed(std::uint64_t base, std::uint64_t tag,
                          std::uint64_t index) {
  return RngStream::derive_seed(RngStream::derive_seed(base, tag), index);
}

double require_number(const ojson& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_number())
    throw FieldError(field, "required number");
  return j[field].get<double>();
}

GradientMode parse_gradient_mode(const std::string& text,
                                 const std::string& field) {
  if (text == "exact") return GradientMode::exact();
  if (text.rfind("shots:", 0) == 0) {
    const int n = std::atoi(text.c_str() + 6);
    if (n < 1) throw FieldError(field, "shot count must be >= 1");
    return GradientMode::with_shots(n);
  }
  throw FieldError(field, "expected \"exact\" or \"shots:N\"");
}

Schedule parse_schedule(const ojson& j, const std::string& field) {
  Schedule s;
  if (!j.is_object() || !j.contains("type"))
    throw FieldError(field, "expected object with type");
  const std::string type = j["type"].get<std::string>();
  if (type == "heaviside") {
    s.kind = Schedule::Kind::Heaviside;
    s.threshold = static_cast<int>(require_number(j, "threshold"));
  } else if (type == "linear") {
    s.kind = Schedule::Kind::Linear;
  } else {
    throw FieldError(field + ".type", "expected heaviside or linear");
  }
  s.horizon = static_cast<int>(require_number(j, "horizon"));
  try {
    s.validate();
  } catch (const std::invalid_argument& err) {
    throw FieldError(field, err.what());
  }
  return s;
}

OptimizerConfig parse_optimizer(const ojson& j, const std::string& field) {
  if (!j.is_object() || !j.contains("type"))
    throw FieldError(field, "expected object with type");
  const std::string type = j["type"].get<std::string>();
  const double eta = require_number(j, "step_size");
  if (eta <= 0.0) throw FieldError(field + ".step_size", "must be > 0");
  if (type == "gd") return GdConfig{eta};
  if (type == "adam") {
    AdamConfig adam;
    adam.step_size = eta;
    adam.beta1 = j.value("beta1", adam.beta1);
    adam.beta2 = j.value("beta2", adam.beta2);
    adam.epsilon = j.value("epsilon", adam.epsilon);
    return adam;
  }
  throw FieldError(field + ".type", "expected gd or adam");
}

ConvergenceCriterion parse_criterion(const ojson& j,
                                     const std::string& field) {
  ConvergenceCriterion c;
  c.grad_inf_tol = j.value("grad_inf_tol", c.grad_inf_tol);
  c.cost_change_tol = j.value("cost_change_tol", c.cost_change_tol);
  c.window = j.value("window", c.window);
  c.max_iters = j.value("max_iters", c.max_iters);
  try {
    c.validate();
  } catch (const std::invalid_argument& err) {
    throw FieldError(field, err.what());
  }
  return c;
}

MaxCutInstance resolve_instance(const ojson& j,
                                const std::string& config_dir) {
  if (!j.is_object()) throw FieldError("instance", "expected an object");
  if (j.contains("file")) {
    std::filesystem::path path = j["file"].get<std::string>();
    if (path.is_relative() && !config_dir.empty())
      path = std::filesystem::path(config_dir) / path;
    if (!std::filesystem::exists(path))
      throw FieldError("instance.file", "file not found: " + path.string());
    return load_instance(path.string());
  }
  if (!j.contains("family"))
    throw FieldError("instance", "need either file or family");
  const std::string family = j["family"].get<std::string>();
  const int nodes = static_cast<int>(require_number(j, "nodes"));
  const auto seed = static_cast<std::uint64_t>(require_number(j, "seed"));
  const double mean = require_number(j, "mean");
  const double variance = require_number(j, "variance");
  try {
    if (family == "fully_connected")
      return gen_fully_connected(nodes, mean, variance, seed);
    if (family == "k_regular") {
      const int degree = static_cast<int>(require_number(j, "degree"));
      return gen_k_regular_bimodal(nodes, degree, mean, variance, seed);
    }
  } catch (const std::invalid_argument& err) {
    throw FieldError("instance", err.what());
  }
  throw FieldError("instance.family",
                   "expected fully_connected or k_regular");
}

}  // namespace

ExperimentConfig config_from_json(const ojson& j,
                                  const std::string& config_dir) {
  if (!j.is_object()) throw FieldError("config", "expected a JSON object");
  if (!j.contains("instance"))
    throw FieldError("instance", "required field");

  ExperimentConfig config(resolve_instance(j["instance"], config_dir));
  config.raw = j;
  const int n = config.instance.num_nodes();

  if (!j.contains("algorithm") || !j["algorithm"].is_string())
    throw FieldError("algorithm", "required string");
  config.algorithm = j["algorithm"].get<std::string>();
  if (config.algorithm != "standard" && config.algorithm != "escape" &&
      config.algorithm != "guide")
    throw FieldError("algorithm",
                     "expected standard, escape or guide, got \"" +
                         config.algorithm + "\"");

  config.inits = static_cast<int>(j.value("inits", 1.0));
  if (config.inits < 1) throw FieldError("inits", "R >= 1 required");
  config.base_seed =
      static_cast<std::uint64_t>(require_number(j, "seed"));

  if (j.contains("gradient_mode"))
    config.gradient_mode = parse_gradient_mode(
        j["gradient_mode"].get<std::string>(), "gradient_mode");

  if (j.contains("noise")) {
    NoiseModel noise;
    noise.bit_flip_prob = require_number(j["noise"], "bit_flip_prob");
    noise.trajectories =
        static_cast<int>(j["noise"].value("trajectories", 100.0));
    try {
      validate(noise);
    } catch (const std::invalid_argument& err) {
      throw FieldError("noise", err.what());
    }
    config.noise = noise;
  }

  // Circuit groups.
  if (!j.contains("ansatz")) throw FieldError("ansatz", "required field");
  const ojson& a = j["ansatz"];
  if (!a.is_object() || !a.contains("type"))
    throw FieldError("ansatz", "expected object with type");
  const std::string type = a["type"].get<std::string>();
  if (type == "qaoa") {
    if (!a.contains("p")) throw FieldError("ansatz.p", "required");
    std::vector<int> depths;
    if (a["p"].is_array())
      for (const auto& d : a["p"]) depths.push_back(d.get<int>());
    else
      depths.push_back(a["p"].get<int>());
    for (int p : depths) {
      if (p < 1) throw FieldError("ansatz.p", "depth must be >= 1");
      config.groups.emplace_back(p, QaoaAnsatz{p});
    }
  } else if (type == "hea") {
    if (a.contains("axes")) {
      AnsatzSpec spec = ansatz_from_json(a);
      const auto& hea = std::get<HardwareEfficientAnsatz>(spec);
      if (static_cast<int>(hea.axes.size()) != n)
        throw FieldError("ansatz.axes", "length must equal num_nodes");
      config.groups.emplace_back(1, std::move(spec));
    } else {
      const int draws = static_cast<int>(a.value("draws", 1.0));
      if (draws < 1) throw FieldError("ansatz.draws", "must be >= 1");
      for (int d = 1; d <= draws; ++d) {
        RngStream rng(tagged_seed(config.base_seed, kHeaTag, d));
        config.groups.emplace_back(d, random_hea(n, rng));
      }
    }
  } else {
    throw FieldError("ansatz.type", "expected qaoa or hea");
  }

  if (j.contains("optimizer"))
    config.optimizer = parse_optimizer(j["optimizer"], "optimizer");
  if (j.contains("convergence"))
    config.criterion = parse_criterion(j["convergence"], "convergence");

  if (config.algorithm == "escape") {
    EscapeConfig& e = config.escape;
    if (j.contains("escape")) {
      const ojson& je = j["escape"];
      e.nn_steps = static_cast<int>(je.value("nn_steps", double(e.nn_steps)));
      e.nn_step_size = je.value("nn_step_size", e.nn_step_size);
      e.improvement_threshold =
          je.value("improvement_threshold", e.improvement_threshold);
      e.nn_batch_size =
          static_cast<int>(je.value("nn_batch_size", double(e.nn_batch_size)));
      if (je.contains("schedule"))
        e.schedule = parse_schedule(je["schedule"], "escape.schedule");
    }
    e.circuit_optimizer = config.optimizer;
    e.criterion = config.criterion;
    e.gradient_mode = config.gradient_mode;
    e.noise = config.noise;
    try {
      e.validate();
    } catch (const std::invalid_argument& err) {
      throw FieldError("escape", err.what());
    }
  }

  if (config.algorithm == "guide") {
    GuideConfig& g = config.guide;
    if (j.contains("guide")) {
      const ojson& jg = j["guide"];
      g.alpha = jg.value("alpha", g.alpha);
      g.w_step_size = jg.value("w_step_size", g.w_step_size);
      g.improvement_threshold =
          jg.value("improvement_threshold", g.improvement_threshold);
      g.nn_batch_size =
          static_cast<int>(jg.value("nn_batch_size", double(g.nn_batch_size)));
      if (jg.contains("schedule"))
        g.schedule = parse_schedule(jg["schedule"], "guide.schedule");
    }
    g.theta_optimizer = config.optimizer;
    g.criterion = config.criterion;
    g.gradient_mode = config.gradient_mode;
    g.noise = config.noise;
    config.run_baseline = j.value("baseline", true);
    try {
      g.validate();
    } catch (const std::invalid_argument& err) {
      throw FieldError("guide", err.what());
    }
  }

  if (j.contains("output")) {
    const ojson& out = j["output"];
    config.output.records = out.value("records", "");
    config.output.stats = out.value("stats", "");
    config.output.plot = out.value("plot", "");
    config.output.improvement_plot = out.value("improvement_plot", "");
  }
  config.jobs = static_cast<int>(j.value("jobs", 1.0));
  if (config.jobs < 1) throw FieldError("jobs", "must be >= 1");
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  ojson j;
  try {
    j = ojson::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& err) {
    throw FieldError("config", std::string("parse error: ") + err.what());
  }
  return config_from_json(
      j, std::filesystem::path(path).parent_path().string());
}

namespace {

RunRecord execute_one(const ExperimentConfig& config,
                      const CircuitRunner& runner, int run_index,
                      bool baseline) {
  const std::uint64_t init_seed =
      tagged_seed(config.base_seed, kRunTag, run_index);
  RngStream init_rng(init_seed);
  const std::vector<double> theta0 =
      random_init(runner.ansatz(), runner.num_qubits(), init_rng);

  RunRecord record;
  try {
    if (baseline || config.algorithm == "standard") {
      record = run_standard(runner, theta0, config.optimizer,
                            config.criterion, config.gradient_mode,
                            config.noise, init_seed);
    } else if (config.algorithm == "escape") {
      record = run_escape(runner, theta0, config.escape, init_seed);
    } else {
      record = run_guide(runner, theta0, config.guide, init_seed);
    }
  } catch (const std::exception& err) {
    record.algorithm = baseline ? "standard" : config.algorithm;
    record.instance_id = config.instance.id;
    record.error = err.what();
  }
  record.run_index = run_index;
  record.init_seed = init_seed;
  return record;
}

}  // namespace

BatchResult run_batch(const ExperimentConfig& config) {
  BatchResult result;
  result.groups.reserve(config.groups.size());

  for (const auto& [label, ansatz] : config.groups) {
    GroupResult group;
    group.group = label;
    group.ansatz = ansatz;
    group.records.resize(config.inits);
    const bool paired = config.algorithm == "guide" && config.run_baseline;
    if (paired) group.baseline.resize(config.inits);

    const CircuitRunner runner(ansatz, config.instance);
    const int tasks = paired ? 2 * config.inits : config.inits;
    std::atomic<int> next{0};
    auto worker = [&] {
      for (int t = next.fetch_add(1); t < tasks; t = next.fetch_add(1)) {
        const int run_index = t % config.inits;
        const bool baseline = t >= config.inits;
        RunRecord record = execute_one(config, runner, run_index, baseline);
        (baseline ? group.baseline : group.records)[run_index] =
            std::move(record);
      }
    };

    const int workers = std::max(1, std::min(config.jobs, tasks));
    if (workers == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
      for (std::thread& t : pool) t.join();
    }
    result.groups.push_back(std::move(group));
  }
  return result;
}

ojson records_document(const ExperimentConfig& config,
                       const BatchResult& result) {
  ojson doc;
  doc["format"] = "vqnn-records-v1";
  doc["config"] = config.raw;
  doc["instance"] = instance_to_json(config.instance);
  ojson groups = ojson::array();
  for (const GroupResult& g : result.groups) {
    ojson jg;
    jg["group"] = g.group;
    jg["ansatz"] = ansatz_to_json(g.ansatz);
    ojson records = ojson::array();
    for (const RunRecord& r : g.records) records.push_back(record_to_json(r));
    jg["records"] = std::move(records);
    if (!g.baseline.empty()) {
      ojson baseline = ojson::array();
      for (const RunRecord& r : g.baseline)
        baseline.push_back(record_to_json(r));
      jg["baseline_records"] = std::move(baseline);
    }
    groups.push_back(std::move(jg));
  }
  doc["groups"] = std::move(groups);
  return doc;
}

BatchResult parse_records_document(const ojson& doc) {
  if (!doc.is_object() || doc.value("format", "") != "vqnn-records-v1")
    throw FieldError("format", "not a vqnn records document");
  BatchResult result;
  for (const auto& jg : doc.at("groups")) {
    GroupResult g;
    g.group = jg.value("group", 0);
    if (jg.contains("ansatz")) g.ansatz = ansatz_from_json(jg["ansatz"]);
    for (const auto& r : jg.at("records"))
      g.records.push_back(record_from_json(r));
    if (jg.contains("baseline_records"))
      for (const auto& r : jg["baseline_records"])
        g.baseline.push_back(record_from_json(r));
    result.groups.push_back(std::move(g));
  }
  return result;
}

namespace {

std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::vector<RunRecord> successful(const std::vector<RunRecord>& records) {
  std::vector<RunRecord> ok;
  for (const RunRecord& r : records)
    if (r.error.empty()) ok.push_back(r);
  return ok;
}

void append_stats_row(std::string& csv, int group,
                      const std::string& algorithm, SummaryMode mode,
                      const BoxStats& box, double pct_improved,
                      double pct_deteriorated) {
  csv += std::to_string(group) + "," + algorithm + "," + to_string(mode) +
         "," + std::to_string(box.count);
  if (box.count > 0) {
    csv += "," + csv_number(box.median) + "," + csv_number(box.q1) + "," +
           csv_number(box.q3) + "," + csv_number(box.whisker_lo) + "," +
           csv_number(box.whisker_hi);
  } else {
    csv += ",,,,,";
  }
  csv += "," + csv_number(pct_improved) + "," + csv_number(pct_deteriorated) +
         "\n";
}

BoxStats stats_of(const std::vector<RunRecord>& records, SummaryMode mode,
                  bool use_pre_cost) {
  std::vector<double> costs;
  for (const RunRecord& r : records)
    if (mode == SummaryMode::All || r.improved)
      costs.push_back(use_pre_cost ? r.pre_cost : r.final_cost);
  if (costs.empty()) return BoxStats{};
  return box_stats(std::move(costs));
}

double pct_improved_of(const std::vector<RunRecord>& records) {
  if (records.empty()) return 0.0;
  int improved = 0;
  for (const RunRecord& r : records) improved += r.improved ? 1 : 0;
  return 100.0 * improved / static_cast<double>(records.size());
}

}  // namespace

std::string stats_csv(const BatchResult& result, double pair_threshold) {
  std::string csv =
      "group,algorithm,mode,count,median,q1,q3,whisker_lo,whisker_hi,"
      "pct_improved,pct_deteriorated\n";
  for (const GroupResult& g : result.groups) {
    const std::vector<RunRecord> records = successful(g.records);
    if (records.empty()) continue;
    const std::string algorithm = records.front().algorithm;
    const double pct = pct_improved_of(records);

    for (SummaryMode mode : {SummaryMode::All, SummaryMode::ImprovedOnly}) {
      if (algorithm == "escape") {
        // The phase-2 converged costs are the standard-descent outcome.
        append_stats_row(csv, g.group, "standard", mode,
                         stats_of(records, mode, true), pct, 0.0);
      }
      double pct_det = 0.0;
      double pct_imp = pct;
      if (!g.baseline.empty()) {
        const std::vector<RunRecord> base = successful(g.baseline);
        const PairedComparison cmp =
            compare_paired(records, base, pair_threshold);
        pct_imp = cmp.pct_improved;
        pct_det = cmp.pct_deteriorated;
        if (mode == SummaryMode::All)
          append_stats_row(csv, g.group, "standard", mode,
                           stats_of(base, SummaryMode::All, false), 0.0, 0.0);
      }
      append_stats_row(csv, g.group, algorithm, mode,
                       stats_of(records, mode, false), pct_imp, pct_det);
    }
  }
  return csv;
}

std::string render_cost_plot(const BatchResult& result,
                             const std::string& title, SummaryMode mode) {
  std::vector<BoxSeries> series;
  bool has_escape = false, has_baseline = false;
  for (const GroupResult& g : result.groups) {
    const std::vector<RunRecord> records = successful(g.records);
    if (!records.empty() && records.front().algorithm == "escape")
      has_escape = true;
    if (!g.baseline.empty()) has_baseline = true;
  }
  if (has_escape || has_baseline) series.push_back({"standard", {}});
  series.push_back({"", {}});

  for (const GroupResult& g : result.groups) {
    const std::vector<RunRecord> records = successful(g.records);
    const std::string label = std::to_string(g.group);
    std::string algorithm =
        records.empty() ? "" : records.front().algorithm;
    if (has_escape)
      series.front().boxes.emplace_back(label, stats_of(records, mode, true));
    if (has_baseline)
      series.front().boxes.emplace_back(
          label, stats_of(successful(g.baseline), SummaryMode::All, false));
    series.back().name = algorithm;
    series.back().boxes.emplace_back(label, stats_of(records, mode, false));
  }
  return render_box_plot(series, title, "circuit group (p / draw)", "energy");
}

std::string render_improvement_plot(const BatchResult& result,
                                    const std::string& title,
                                    double pair_threshold) {
  std::vector<BarSeries> series;
  series.push_back({"% improved", {}});
  bool any_deterioration = false;
  for (const GroupResult& g : result.groups)
    if (!g.baseline.empty()) any_deterioration = true;
  if (any_deterioration) series.push_back({"% deteriorated", {}});

  for (const GroupResult& g : result.groups) {
    const std::vector<RunRecord> records = successful(g.records);
    const std::string label = std::to_string(g.group);
    if (!g.baseline.empty()) {
      const PairedComparison cmp =
          compare_paired(records, successful(g.baseline), pair_threshold);
      series[0].bars.emplace_back(label, cmp.pct_improved);
      series[1].bars.emplace_back(label, cmp.pct_deteriorated);
    } else {
      series[0].bars.emplace_back(label, pct_improved_of(records));
    }
  }
  return render_bar_chart(series, title, "circuit group (p / draw)",
                          "% of initializations");
}

void emit_outputs(const ExperimentConfig& config, const BatchResult& result) {
  const double threshold = config.algorithm == "guide"
                               ? config.guide.improvement_threshold
                               : config.escape.improvement_threshold;
  if (!config.output.records.empty())
    write_text_file(config.output.records,
                    records_document(config, result).dump(1) + "\n");
  if (!config.output.stats.empty())
    write_text_file(config.output.stats, stats_csv(result, threshold));
  if (!config.output.plot.empty()) {
    const SummaryMode mode = config.algorithm == "escape"
                                 ? SummaryMode::ImprovedOnly
                                 : SummaryMode::All;
    write_text_file(config.output.plot,
                    render_cost_plot(result, config.algorithm + " on " +
                                                 config.instance.id,
                                     mode));
  }
  if (!config.output.improvement_plot.empty())
    write_text_file(
        config.output.improvement_plot,
        render_improvement_plot(result, config.algorithm + " on " +
                                            config.instance.id,
                                threshold));
}

}  // namespace vqnn

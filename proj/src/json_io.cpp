#include "vqnn/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace vqnn {

namespace {

std::string family_name(InstanceFamily::Kind kind) {
  switch (kind) {
    case InstanceFamily::Kind::FullyConnectedGaussian:
      return "fully_connected";
    case InstanceFamily::Kind::KRegularBimodal:
      return "k_regular";
    default:
      return "explicit";
  }
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << contents;
  if (!out) throw std::runtime_error("write failed: " + path);
}

ojson instance_to_json(const MaxCutInstance& instance) {
  ojson j;
  j["num_nodes"] = instance.num_nodes();
  ojson edges = ojson::array();
  for (const Edge& e : instance.edges())
    edges.push_back(ojson::array({e.u, e.v, e.weight}));
  j["edges"] = std::move(edges);
  ojson family;
  family["type"] = family_name(instance.family.kind);
  if (instance.family.kind == InstanceFamily::Kind::KRegularBimodal)
    family["degree"] = instance.family.degree;
  if (instance.family.kind != InstanceFamily::Kind::Explicit) {
    family["mean"] = instance.family.mean;
    family["variance"] = instance.family.variance;
  }
  j["family"] = std::move(family);
  if (instance.seed) j["seed"] = *instance.seed;
  j["connected"] = instance.connected();
  if (!instance.id.empty()) j["id"] = instance.id;
  return j;
}

MaxCutInstance instance_from_json(const ojson& j) {
  if (!j.is_object()) throw FieldError("instance", "expected an object");
  if (!j.contains("num_nodes") || !j["num_nodes"].is_number_integer())
    throw FieldError("instance.num_nodes", "required integer");
  const int n = j["num_nodes"].get<int>();
  if (n < 1) throw FieldError("instance.num_nodes", "must be >= 1");
  if (!j.contains("edges") || !j["edges"].is_array())
    throw FieldError("instance.edges", "required array");

  std::vector<Edge> edges;
  int idx = 0;
  for (const auto& item : j["edges"]) {
    const std::string field = "instance.edges[" + std::to_string(idx++) + "]";
    if (!item.is_array() || item.size() != 3)
      throw FieldError(field, "expected [i, j, weight]");
    if (!item[0].is_number_integer() || !item[1].is_number_integer())
      throw FieldError(field, "endpoints must be integers");
    if (!item[2].is_number()) throw FieldError(field, "weight must be a number");
    Edge e{item[0].get<int>(), item[1].get<int>(), item[2].get<double>()};
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw FieldError(field, "endpoint out of range");
    if (e.u == e.v) throw FieldError(field, "self-loops are not allowed");
    if (!std::isfinite(e.weight)) throw FieldError(field, "weight not finite");
    edges.push_back(e);
  }
  MaxCutInstance instance = [&] {
    try {
      return MaxCutInstance(n, std::move(edges));
    } catch (const std::invalid_argument& err) {
      throw FieldError("instance.edges", err.what());
    }
  }();

  if (j.contains("family")) {
    const auto& f = j["family"];
    if (!f.is_object() || !f.contains("type"))
      throw FieldError("instance.family", "expected object with type");
    const std::string type = f["type"].get<std::string>();
    if (type == "fully_connected")
      instance.family.kind = InstanceFamily::Kind::FullyConnectedGaussian;
    else if (type == "k_regular")
      instance.family.kind = InstanceFamily::Kind::KRegularBimodal;
    else if (type == "explicit")
      instance.family.kind = InstanceFamily::Kind::Explicit;
    else
      throw FieldError("instance.family.type", "unknown family: " + type);
    if (f.contains("degree")) instance.family.degree = f["degree"].get<int>();
    if (f.contains("mean")) instance.family.mean = f["mean"].get<double>();
    if (f.contains("variance"))
      instance.family.variance = f["variance"].get<double>();
  }
  if (j.contains("seed"))
    instance.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("id")) instance.id = j["id"].get<std::string>();
  return instance;
}

MaxCutInstance load_instance(const std::string& path) {
  ojson j;
  try {
    j = ojson::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& err) {
    throw FieldError("instance", std::string("parse error: ") + err.what());
  }
  MaxCutInstance instance = instance_from_json(j);
  if (instance.id.empty()) instance.id = path;
  return instance;
}

void save_instance(const MaxCutInstance& instance, const std::string& path) {
  write_text_file(path, instance_to_json(instance).dump(2) + "\n");
}

ojson ansatz_to_json(const AnsatzSpec& ansatz) {
  ojson j;
  if (const auto* qaoa = std::get_if<QaoaAnsatz>(&ansatz)) {
    j["type"] = "qaoa";
    j["p"] = qaoa->depth;
  } else {
    j["type"] = "hea";
    j["axes"] = axes_string(std::get<HardwareEfficientAnsatz>(ansatz));
  }
  return j;
}

AnsatzSpec ansatz_from_json(const ojson& j) {
  if (!j.is_object() || !j.contains("type"))
    throw FieldError("ansatz", "expected object with type");
  const std::string type = j["type"].get<std::string>();
  if (type == "qaoa") {
    if (!j.contains("p") || !j["p"].is_number_integer())
      throw FieldError("ansatz.p", "required integer depth");
    const int p = j["p"].get<int>();
    if (p < 1) throw FieldError("ansatz.p", "depth must be >= 1");
    return QaoaAnsatz{p};
  }
  if (type == "hea") {
    if (!j.contains("axes") || !j["axes"].is_string())
      throw FieldError("ansatz.axes", "required axis string, e.g. \"XYZZ\"");
    try {
      return hea_from_axes_string(j["axes"].get<std::string>());
    } catch (const std::invalid_argument& err) {
      throw FieldError("ansatz.axes", err.what());
    }
  }
  throw FieldError("ansatz.type", "unknown ansatz: " + type);
}

ojson matrix_to_json(const Matrix& m) {
  ojson rows = ojson::array();
  for (int i = 0; i < m.dim(); ++i) {
    ojson row = ojson::array();
    for (int k = 0; k < m.dim(); ++k) row.push_back(m.at(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const ojson& j) {
  if (!j.is_array()) throw FieldError("matrix", "expected array of rows");
  const int n = static_cast<int>(j.size());
  Matrix m(n);
  for (int i = 0; i < n; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != n)
      throw FieldError("matrix", "rows must form a square matrix");
    for (int k = 0; k < n; ++k) m.at(i, k) = j[i][k].get<double>();
  }
  return m;
}

ojson record_to_json(const RunRecord& record) {
  ojson j;
  j["run_index"] = record.run_index;
  j["algorithm"] = record.algorithm;
  j["instance_id"] = record.instance_id;
  j["init_seed"] = record.init_seed;
  if (!record.error.empty()) {
    j["error"] = record.error;
    return j;
  }
  j["initial_theta"] = record.initial_theta;
  j["final_theta"] = record.final_theta;
  j["pre_cost"] = record.pre_cost;
  j["final_cost"] = record.final_cost;
  j["improved"] = record.improved;
  j["improvement_threshold"] = record.improvement_threshold;
  ojson phases = ojson::array();
  for (const PhaseTrace& phase : record.phases) {
    ojson p;
    p["name"] = phase.name;
    p["costs"] = phase.costs;
    if (!phase.original_costs.empty())
      p["original_costs"] = phase.original_costs;
    phases.push_back(std::move(p));
  }
  j["phases"] = std::move(phases);
  j["trained_weights"] = matrix_to_json(record.trained_weights);
  j["final_weights"] = matrix_to_json(record.final_weights);
  return j;
}

RunRecord record_from_json(const ojson& j) {
  RunRecord r;
  r.run_index = j.value("run_index", 0);
  r.algorithm = j.value("algorithm", "");
  r.instance_id = j.value("instance_id", "");
  r.init_seed = j.value("init_seed", std::uint64_t{0});
  if (j.contains("error")) {
    r.error = j["error"].get<std::string>();
    return r;
  }
  r.initial_theta = j.value("initial_theta", std::vector<double>{});
  r.final_theta = j.value("final_theta", std::vector<double>{});
  r.pre_cost = j.value("pre_cost", 0.0);
  r.final_cost = j.value("final_cost", 0.0);
  r.improved = j.value("improved", false);
  r.improvement_threshold = j.value("improvement_threshold", 0.1);
  if (j.contains("phases")) {
    for (const auto& p : j["phases"]) {
      PhaseTrace phase;
      phase.name = p.value("name", "");
      phase.costs = p.value("costs", std::vector<double>{});
      phase.original_costs = p.value("original_costs", std::vector<double>{});
      r.phases.push_back(std::move(phase));
    }
  }
  if (j.contains("trained_weights"))
    r.trained_weights = matrix_from_json(j["trained_weights"]);
  if (j.contains("final_weights"))
    r.final_weights = matrix_from_json(j["final_weights"]);
  return r;
}

}  // namespace vqnn

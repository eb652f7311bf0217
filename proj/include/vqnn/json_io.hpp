#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "vqnn/algorithms.hpp"
#include "vqnn/ansatz.hpp"
#include "vqnn/maxcut.hpp"

namespace vqnn {

// Insertion-ordered JSON keeps serialized output stable.
using ojson = nlohmann::ordered_json;

// Validation failure that names the offending field.
class FieldError : public std::runtime_error {
 public:
  FieldError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

ojson instance_to_json(const MaxCutInstance& instance);
MaxCutInstance instance_from_json(const ojson& j);
MaxCutInstance load_instance(const std::string& path);
void save_instance(const MaxCutInstance& instance, const std::string& path);

ojson ansatz_to_json(const AnsatzSpec& ansatz);
AnsatzSpec ansatz_from_json(const ojson& j);

ojson matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const ojson& j);

// Wall time is deliberately omitted: record files must be byte-identical
// across repeated executions of the same configuration.
ojson record_to_json(const RunRecord& record);
RunRecord record_from_json(const ojson& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace vqnn

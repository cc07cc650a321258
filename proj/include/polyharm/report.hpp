#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace polyharm {

using Json = nlohmann::ordered_json;

/// One named measurement compared against a threshold.
struct CheckLine {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation;  // "<", "<=", ">", ">=", "==" or "true"
  bool pass = false;
};

class SuiteReport {
 public:
  explicit SuiteReport(std::string name = "") : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  const std::vector<CheckLine>& checks() const { return checks_; }
  bool passed() const;

  void less(const std::string& what, double value, double threshold);
  void less_equal(const std::string& what, double value, double threshold);
  void greater(const std::string& what, double value, double threshold);
  void greater_equal(const std::string& what, double value, double threshold);
  void expect(const std::string& what, bool ok);
  void merge(const SuiteReport& other);

  /// Free-form numbers attached to the report (tables, counts).
  Json& details() { return details_; }
  const Json& details() const { return details_; }

  Json to_json() const;

 private:
  std::string name_;
  std::vector<CheckLine> checks_;
  Json details_ = Json::object();
};

/// Serializes with every floating-point number printed as %.17g, keys in
/// insertion order, two-space indentation.
std::string dump_json(const Json& j);

}  // namespace polyharm

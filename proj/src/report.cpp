#include "polyharm/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace polyharm {

bool SuiteReport::passed() const {
  for (const auto& c : checks_)
    if (!c.pass) return false;
  return true;
}

void SuiteReport::less(const std::string& what, double value, double threshold) {
  checks_.push_back({what, value, threshold, "<", value < threshold});
}

void SuiteReport::less_equal(const std::string& what, double value, double threshold) {
  checks_.push_back({what, value, threshold, "<=", value <= threshold});
}

void SuiteReport::greater(const std::string& what, double value, double threshold) {
  checks_.push_back({what, value, threshold, ">", value > threshold});
}

void SuiteReport::greater_equal(const std::string& what, double value, double threshold) {
  checks_.push_back({what, value, threshold, ">=", value >= threshold});
}

void SuiteReport::expect(const std::string& what, bool ok) {
  checks_.push_back({what, ok ? 1.0 : 0.0, 1.0, "true", ok});
}

void SuiteReport::merge(const SuiteReport& other) {
  for (auto c : other.checks_) {
    c.name = other.name_ + ": " + c.name;
    checks_.push_back(std::move(c));
  }
}

Json SuiteReport::to_json() const {
  Json j;
  j["suite"] = name_;
  j["passed"] = passed();
  Json checks = Json::array();
  for (const auto& c : checks_) {
    Json line;
    line["name"] = c.name;
    line["value"] = c.value;
    line["relation"] = c.relation;
    line["threshold"] = c.threshold;
    line["pass"] = c.pass;
    checks.push_back(std::move(line));
  }
  j["checks"] = std::move(checks);
  if (!details_.empty()) j["details"] = details_;
  return j;
}

namespace {

void write_string(std::ostream& os, const std::string& s) { os << Json(s).dump(); }

void write(std::ostream& os, const Json& j, int indent) {
  const std::string pad(indent, ' ');
  const std::string inner(indent + 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << inner;
        write_string(os, it.key());
        os << ": ";
        write(os, it.value(), indent + 2);
      }
      os << '\n' << pad << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      if (flat) {
        os << '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write(os, j[i], indent);
        }
        os << ']';
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << inner;
        write(os, j[i], indent + 2);
      }
      os << '\n' << pad << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        os << "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      os << buf;
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j) {
  std::ostringstream os;
  write(os, j, 0);
  os << '\n';
  return os.str();
}

}  // namespace polyharm

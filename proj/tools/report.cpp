#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace jacobiflow::tools {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

namespace {

struct TextVisitor {
  std::string operator()(const std::string& s) const { return s; }
  std::string operator()(double v) const { return format_double(v); }
  std::string operator()(long long v) const { return std::to_string(v); }
  std::string operator()(bool v) const { return v ? "true" : "false"; }
  std::string operator()(const std::vector<double>& v) const {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + format_double(v[i]);
    return out;
  }
};

// JSON cannot hold inf/nan; those go out as strings.
nlohmann::ordered_json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

struct JsonVisitor {
  nlohmann::ordered_json operator()(const std::string& s) const { return s; }
  nlohmann::ordered_json operator()(double v) const { return json_number(v); }
  nlohmann::ordered_json operator()(long long v) const { return v; }
  nlohmann::ordered_json operator()(bool v) const { return v; }
  nlohmann::ordered_json operator()(const std::vector<double>& v) const {
    auto arr = nlohmann::ordered_json::array();
    for (double x : v) arr.push_back(json_number(x));
    return arr;
  }
};

}  // namespace

std::string Report::text() const {
  std::ostringstream os;
  for (const auto& [k, v] : fields_) os << k << ": " << std::visit(TextVisitor{}, v) << '\n';
  for (const auto& t : tables_) {
    os << "table " << t.name << '\n' << '#';
    for (const auto& c : t.columns) os << ' ' << c;
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << format_double(row[i]);
      os << '\n';
    }
    os << "end\n";
  }
  return os.str();
}

std::string Report::json() const {
  nlohmann::ordered_json j;
  for (const auto& [k, v] : fields_) j[k] = std::visit(JsonVisitor{}, v);
  if (!tables_.empty()) {
    auto& tabs = j["tables"];
    for (const auto& t : tables_) {
      nlohmann::ordered_json jt;
      jt["columns"] = t.columns;
      auto rows = nlohmann::ordered_json::array();
      for (const auto& row : t.rows) rows.push_back(JsonVisitor{}(row));
      jt["rows"] = std::move(rows);
      tabs[t.name] = std::move(jt);
    }
  }
  return j.dump(2) + "\n";
}

}  // namespace jacobiflow::tools

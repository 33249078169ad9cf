#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace jacobiflow::tools {

/// Ordered key/value report with optional numeric tables. Text output is
/// "key: value" lines with doubles in %.12e; JSON carries the same data.
class Report {
 public:
  using Value = std::variant<std::string, double, long long, bool, std::vector<double>>;

  struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
  };

  void set(std::string key, Value v) { fields_.emplace_back(std::move(key), std::move(v)); }
  void set(std::string key, const char* v) { set(std::move(key), Value(std::string(v))); }
  void set(std::string key, int v) { set(std::move(key), Value(static_cast<long long>(v))); }
  void set(std::string key, std::size_t v) { set(std::move(key), Value(static_cast<long long>(v))); }
  void set(std::string key, double v) { set(std::move(key), Value(v)); }
  void set(std::string key, bool v) { set(std::move(key), Value(v)); }
  void set(std::string key, std::string v) { set(std::move(key), Value(std::move(v))); }
  void set(std::string key, std::vector<double> v) { set(std::move(key), Value(std::move(v))); }

  Table& table(std::string name, std::vector<std::string> columns) {
    tables_.push_back({std::move(name), std::move(columns), {}});
    return tables_.back();
  }

  std::string text() const;
  std::string json() const;

 private:
  std::vector<std::pair<std::string, Value>> fields_;
  std::vector<Table> tables_;
};

std::string format_double(double v);

}  // namespace jacobiflow::tools

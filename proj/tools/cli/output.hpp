#pragma once

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

namespace bstlab::cli {

/// Writes records as JSON lines or as one CSV table.
class Output {
 public:
  Output(std::string format, const std::string& path) : format_(std::move(format)) {
    if (format_ != "json" && format_ != "csv") throw std::invalid_argument("--format must be json or csv");
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open " + path + " for writing");
    }
  }
  Output(const Output&) = delete;
  Output& operator=(const Output&) = delete;
  ~Output() { flush(); }

  void add(const nlohmann::ordered_json& row) {
    if (format_ == "json") {
      stream() << row.dump() << '\n';
    } else {
      rows_.push_back(row);
    }
  }

  void flush() {
    if (rows_.empty()) return;
    std::vector<std::string> header;
    for (const auto& row : rows_) {
      for (const auto& [key, _] : row.items()) {
        if (std::find(header.begin(), header.end(), key) == header.end()) header.push_back(key);
      }
    }
    auto& os = stream();
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) os << ',';
        if (row.contains(header[i])) os << cell(row[header[i]]);
      }
      os << '\n';
    }
    rows_.clear();
  }

  std::ostream& stream() { return file_ ? static_cast<std::ostream&>(*file_) : std::cout; }

 private:
  static std::string cell(const nlohmann::ordered_json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    return quoted + "\"";
  }

  std::string format_;
  std::unique_ptr<std::ofstream> file_;
  std::vector<nlohmann::ordered_json> rows_;
};

}  // namespace bstlab::cli

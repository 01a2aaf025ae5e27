#pragma once

// =====================================================================
// Output plumbing: CSV with embedded version/config comment lines, and
// a stable JSON envelope {version, subcommand, config, results,
// diagnostics}.  Numbers are printed deterministically so identical
// configurations reproduce byte-identical files.
// =====================================================================

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "levyz/errors.hpp"
#include "levyz/version.hpp"

namespace levyz {

using json = nlohmann::ordered_json;

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct CsvWriter {
  std::string config_line;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> cells) {
    require(cells.size() == columns.size(),
            "CsvWriter: row width does not match the header");
    rows.push_back(std::move(cells));
  }

  std::string str() const {
    std::ostringstream os;
    os << "# levyz " << kVersion << "\n";
    if (!config_line.empty()) os << "# config " << config_line << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
      os << (i ? "," : "") << columns[i];
    os << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        os << (i ? "," : "") << row[i];
      os << "\n";
    }
    return os.str();
  }
};

inline json json_envelope(const std::string& subcommand, json config) {
  json j;
  j["version"] = kVersion;
  j["subcommand"] = subcommand;
  j["config"] = std::move(config);
  j["results"] = json::object();
  j["diagnostics"] = json::object();
  return j;
}

// "-" or empty writes to standard output.
inline void write_output(const std::string& out_path,
                         const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  require(f.good(), "write_output: cannot open " + out_path);
  f << content;
  require(f.good(), "write_output: short write to " + out_path);
}

}  // namespace levyz

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace itw {

// A flat numeric table with a key=value provenance preamble; the common
// shape of every emitted artifact.
struct OutputTable {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Deterministic shortest-ish decimal rendering used by both writers.
std::string format_double(double x);

// CSV: UTF-8, comma separator, '.' decimal, '# key=value' preamble lines,
// then a header row. Throws std::runtime_error on IO failure.
void write_csv(const OutputTable& table, const std::string& path);

// JSON: {"meta": {...}, "columns": [...], "rows": [[...], ...]}.
void write_json(const OutputTable& table, const std::string& path);

// Gnuplot script plotting value columns of a CSV data file against its first
// column; log axes match the source figures' style.
void write_gnuplot_script(const std::string& script_path,
                          const std::string& data_path,
                          const std::string& title, bool logx, bool logy,
                          const std::vector<std::string>& series_columns);

}  // namespace itw

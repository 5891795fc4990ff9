#include "itw/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace itw {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

void write_csv(const OutputTable& table, const std::string& path) {
  std::ofstream out = open_out(path);
  for (const auto& [key, value] : table.meta) {
    out << "# " << key << "=" << value << "\n";
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_double(row[i]);
    }
    out << "\n";
  }
  finish(out, path);
}

void write_json(const OutputTable& table, const std::string& path) {
  nlohmann::ordered_json doc;
  auto& meta = doc["meta"];
  for (const auto& [key, value] : table.meta) meta[key] = value;
  doc["columns"] = table.columns;
  doc["rows"] = table.rows;
  std::ofstream out = open_out(path);
  out << doc.dump(2) << "\n";
  finish(out, path);
}

void write_gnuplot_script(const std::string& script_path,
                          const std::string& data_path,
                          const std::string& title, bool logx, bool logy,
                          const std::vector<std::string>& series_columns) {
  std::ofstream out = open_out(script_path);
  out << "set datafile separator ','\n";
  out << "set datafile commentschars '#'\n";
  out << "set key autotitle columnhead\n";
  out << "set title '" << title << "'\n";
  if (logx) out << "set logscale x\n";
  if (logy) out << "set logscale y\n";
  out << "plot ";
  for (std::size_t i = 0; i < series_columns.size(); ++i) {
    if (i) out << ", ";
    out << "'" << data_path << "' using 1:" << (i + 2) << " with lines title '"
        << series_columns[i] << "'";
  }
  out << "\n";
  finish(out, script_path);
}

}  // namespace itw

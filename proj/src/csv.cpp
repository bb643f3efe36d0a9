#include "sagitta/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sagitta::csv {

int Table::col(const std::string& name) const {
  for (size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  return -1;
}

int Table::require_col(const std::string& name) const {
  const int i = col(name);
  if (i < 0) throw std::runtime_error("missing CSV column: " + name);
  return i;
}

std::vector<double> Table::column(const std::string& name) const {
  const int i = require_col(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[i]);
  return out;
}

std::string format_cell(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write(const std::string& path, const Table& table,
           const std::vector<std::string>& comment_lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write CSV: " + path);
  for (const std::string& c : comment_lines) out << "# " << c << "\n";
  for (size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ",";
    out << table.columns[i];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size())
      throw std::runtime_error("CSV row width mismatch in " + path);
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << format_cell(row[i]);
    }
    out << "\n";
  }
}

Table read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read CSV: " + path);
  Table t;
  std::string line;
  bool header_done = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') continue;
    std::istringstream ss(line);
    std::string cell;
    if (!header_done) {
      while (std::getline(ss, cell, ',')) t.columns.push_back(cell);
      header_done = true;
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      row.push_back(std::strtod(cell.c_str(), &end));
      if (end == cell.c_str())
        throw std::runtime_error("non-numeric CSV cell in " + path + ": " + cell);
    }
    if (row.size() != t.columns.size())
      throw std::runtime_error("ragged CSV row in " + path);
    t.rows.push_back(std::move(row));
  }
  if (!header_done) throw std::runtime_error("empty CSV: " + path);
  return t;
}

}  // namespace sagitta::csv

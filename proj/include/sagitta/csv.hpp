#pragma once

#include <string>
#include <vector>

namespace sagitta::csv {

// Numeric CSV with one header row. Values are written as %.17g so files are
// byte-stable across identical runs and round-trip exactly.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int col(const std::string& name) const;  // -1 when absent
  int require_col(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;
};

std::string format_cell(double v);

void write(const std::string& path, const Table& table,
           const std::vector<std::string>& comment_lines = {});
Table read(const std::string& path);

}  // namespace sagitta::csv

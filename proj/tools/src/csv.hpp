#pragma once

#include <string>
#include <variant>
#include <vector>

namespace ldx::cli {

/// In-memory CSV table written in one piece once a command has succeeded.
class CsvTable {
 public:
  using Cell = std::variant<double, long, std::string>;

  explicit CsvTable(std::vector<std::string> header);
  void add(std::vector<Cell> row);
  std::size_t rows() const { return rows_.size(); }
  /// Leading `# ` comment line, then header and rows.
  std::string render(const std::string& comment) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

/// Seventeen significant digits, enough to round-trip any double.
std::string format_number(double v);

}  // namespace ldx::cli

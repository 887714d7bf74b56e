#include "csv.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace ldx::cli {

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add(std::vector<Cell> row) {
  if (row.size() != header_.size()) throw std::logic_error("CSV row width mismatch");
  rows_.push_back(std::move(row));
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string cell_text(const CsvTable::Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* l = std::get_if<long>(&c)) return std::to_string(*l);
  return std::get<std::string>(c);
}

}  // namespace

std::string CsvTable::render(const std::string& comment) const {
  std::string s = "# " + comment + "\n";
  for (std::size_t i = 0; i < header_.size(); ++i) s += (i ? "," : "") + header_[i];
  s += "\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + cell_text(row[i]);
    s += "\n";
  }
  return s;
}

}  // namespace ldx::cli

#include "cuecomb/table.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

#include "cuecomb/errors.hpp"

namespace cuecomb {

ResultTable::ResultTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size())
    throw InvalidParameter("row has " + std::to_string(row.size()) + " cells, table has " +
                           std::to_string(columns_.size()) + " columns");
  rows_.push_back(std::move(row));
}

void ResultTable::set_meta(const std::string& key, const std::string& value) {
  for (auto& [k, v] : metadata_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  metadata_.emplace_back(key, value);
}

std::string ResultTable::meta(const std::string& key) const {
  for (const auto& [k, v] : metadata_)
    if (k == key) return v;
  return {};
}

std::size_t ResultTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i] == name) return i;
  throw InvalidParameter("no column named '" + name + "'");
}

double ResultTable::value(std::size_t row, const std::string& column) const {
  const Cell& cell = rows_.at(row).at(column_index(column));
  return std::visit([](auto v) { return static_cast<double>(v); }, cell);
}

std::vector<double> ResultTable::column(const std::string& name) const {
  const std::size_t idx = column_index(name);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_)
    out.push_back(std::visit([](auto v) { return static_cast<double>(v); }, row[idx]));
  return out;
}

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, result.ptr);
}

void write_csv(std::ostream& out, const ResultTable& table) {
  for (const auto& [key, value] : table.metadata()) {
    std::istringstream lines(value);
    std::string line;
    bool first = true;
    while (std::getline(lines, line) || first) {
      out << "# " << key << ':';
      if (!line.empty()) out << ' ' << line;
      out << '\n';
      first = false;
    }
  }
  const auto& columns = table.columns();
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : table.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (const auto* iv = std::get_if<std::int64_t>(&row[i]))
        out << *iv;
      else
        out << format_real(std::get<double>(row[i]));
    }
    out << '\n';
  }
}

std::string to_csv(const ResultTable& table) {
  std::ostringstream out;
  write_csv(out, table);
  return out.str();
}

ResultTable stride_rows(const ResultTable& table, std::size_t stride) {
  if (stride == 0) throw InvalidParameter("stride must be >= 1");
  ResultTable out(table.columns());
  for (const auto& [k, v] : table.metadata()) out.set_meta(k, v);
  out.set_meta("stride", std::to_string(stride));
  for (std::size_t i = 0; i < table.row_count(); i += stride) out.add_row(table.rows()[i]);
  return out;
}

const ResultTable& Report::table(const std::string& name) const {
  for (const auto& t : tables)
    if (t.name == name) return t.table;
  throw InvalidParameter("report has no table named '" + name + "'");
}

}  // namespace cuecomb

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cuecomb {

using Cell = std::variant<std::int64_t, double>;

/// Rectangular table of integers and reals with an ordered metadata block.
class ResultTable {
 public:
  ResultTable() = default;
  explicit ResultTable(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
  std::size_t row_count() const noexcept { return rows_.size(); }

  /// Throws InvalidParameter if the row width differs from the column count.
  void add_row(std::vector<Cell> row);

  void set_meta(const std::string& key, const std::string& value);
  const std::vector<std::pair<std::string, std::string>>& metadata() const noexcept {
    return metadata_;
  }
  /// Empty string when absent.
  std::string meta(const std::string& key) const;

  /// Index of a column; throws InvalidParameter when absent.
  std::size_t column_index(const std::string& name) const;
  /// Cell as double (integers are widened).
  double value(std::size_t row, const std::string& column) const;
  std::vector<double> column(const std::string& name) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

/// Shortest round-trip decimal form of a double ('.' separator).
std::string format_real(double value);

/// CSV: '#'-prefixed metadata lines ("# key: value"), a header row, then rows.
/// Multi-line metadata values emit one comment line per line.
void write_csv(std::ostream& out, const ResultTable& table);
std::string to_csv(const ResultTable& table);

/// Keeps rows 0, stride, 2*stride, ... (metadata copied).
ResultTable stride_rows(const ResultTable& table, std::size_t stride);

struct NamedTable {
  std::string name;
  ResultTable table;
};

/// Output of one experiment: one or more named tables.
struct Report {
  std::vector<NamedTable> tables;
  std::string summary;  ///< one-line key metric

  /// Throws InvalidParameter when no table has the name.
  const ResultTable& table(const std::string& name) const;
};

}  // namespace cuecomb

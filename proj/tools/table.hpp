#pragma once

#include <string>
#include <vector>

namespace flqkd::cli {

/// Column-oriented result table rendered as CSV. Cells are numbers or text.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  struct Cell {
    bool is_text = false;
    double number = 0.0;
    std::string text;
  };

  void add_row(std::vector<Cell> row);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  std::size_t column_index(const std::string& name) const;
  std::vector<double> numeric_column(const std::string& name) const;

  /// '.' decimal separator, %.{precision}g numbers, '\n' line endings.
  std::string to_csv(int precision) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

inline Table::Cell num(double v) { return {false, v, {}}; }
inline Table::Cell text(std::string s) { return {true, 0.0, std::move(s)}; }

/// Writes `contents` to a sibling temporary file and renames it over `path`,
/// so readers never observe a partial file.
void write_file_atomically(const std::string& path, const std::string& contents);

}  // namespace flqkd::cli

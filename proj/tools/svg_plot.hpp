#pragma once

#include <string>
#include <vector>

#include "table.hpp"

namespace flqkd::cli {

struct PlotSpec {
  std::string title;
  std::string x_column;
  std::vector<std::string> y_columns;
  bool log_x = false;
  bool log_y = false;
  std::string x_label;
  std::string y_label;
};

/// Static line plot of the named columns. Points that cannot be drawn on a
/// log axis (non-positive) are skipped.
std::string render_svg(const Table& table, const PlotSpec& spec);

}  // namespace flqkd::cli

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "flqkd/flqkd.h"
#include "run_config.hpp"
#include "svg_plot.hpp"
#include "table.hpp"

namespace flqkd::cli {

/// A library call failed; carries the C API status.
class LibraryError : public std::runtime_error {
 public:
  LibraryError(flqkd_status status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  flqkd_status status() const noexcept { return status_; }

 private:
  flqkd_status status_;
};

struct CommandResult {
  Table table;
  std::optional<PlotSpec> plot;
};

CommandResult cmd_rate_curve(const RunConfig& config);
CommandResult cmd_optimize(const RunConfig& config);
CommandResult cmd_ber_curve(const RunConfig& config);
CommandResult cmd_monitor_sim(const RunConfig& config);
CommandResult cmd_limit(const RunConfig& config);

/// Grid of N_S values from the sweep section.
std::vector<double> brightness_grid(const SweepConfig& sweep);

}  // namespace flqkd::cli

#pragma once

// Static SVG plots of experiment tables: y columns against an x column on
// log-log axes. Output bytes depend only on the input table and spec.

#include <optional>
#include <string>
#include <vector>

#include "ergolab/cli/csv.hpp"

namespace ergolab::cli {

struct PlotSpec {
  std::string x = "N";
  std::vector<std::string> y;
  /// Rows with distinct values in this column form separate series.
  std::optional<std::string> group;
  std::string title;
};

/// Default spec for a known experiment table (rt-convergence-table,
/// ww-transfer, ww-rt-bound), or nullopt.
std::optional<PlotSpec> default_plot_spec(const CsvTable& table);

/// Throws InvalidArgument("missing columns: ...") when the table lacks a
/// required column, including the empty table.
std::string render_svg(const CsvTable& table, const PlotSpec& spec);

/// Reads csv_path, renders with spec (or the default for that table) and
/// writes the SVG to out_path.
void emit_plot(const std::string& csv_path, const std::string& out_path,
               const std::optional<PlotSpec>& spec = std::nullopt);

}  // namespace ergolab::cli

#pragma once

// Registered experiments. Each produces a table with a fixed header: the
// experiment name, its parameter columns, then the value columns
// lhs, rhs, ratio, estimate, reference, tolerance and status.

#include <cstddef>
#include <string>
#include <vector>

#include "ergolab/cli/config.hpp"
#include "ergolab/cli/csv.hpp"

namespace ergolab::cli {

enum class RowStatus { Pass, Fail, Informational };

std::string to_string(RowStatus status);

struct ResultTable {
  std::string experiment;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<RowStatus> status;

  /// No row failed.
  bool ok() const;
  CsvTable csv() const;
};

struct ExperimentInfo {
  std::string name;
  std::string summary;
};

const std::vector<ExperimentInfo>& experiments();
bool is_registered(const std::string& name);

/// Throws InvalidArgument for an unknown experiment, ParseError for a bad
/// literal and ProjectionUnavailable for a missing factor projection.
ResultTable run_experiment(const ExperimentConfig& config);

}  // namespace ergolab::cli

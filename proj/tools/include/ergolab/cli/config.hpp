#pragma once

// Experiment configuration: flat `key = value` files merged with command-line
// flags (flags win), then typed and validated.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ergolab/systems.hpp"

namespace ergolab::cli {

/// Raw key/value pairs. Keys are flag names without the leading dashes.
using RawConfig = std::map<std::string, std::string>;

/// `#` starts a comment; blank lines are skipped; every other line must be
/// `key = value`. Later duplicates win.
RawConfig parse_config_text(std::string_view text);
RawConfig read_config_file(const std::string& path);

/// Keys understood by experiments; anything else in a file or on the command
/// line is rejected.
const std::vector<std::string>& known_config_keys();

inline constexpr double kGoldenAlpha = 0.61803398874989485;
inline constexpr double kSilverBeta = 0.41421356237309503;
inline constexpr int kMaxDefaultK = 4;

struct ExperimentConfig {
  std::string experiment;
  /// System literal for the f entry, e.g. `rotation`, `skew-sqrt(0.3)`,
  /// `product(rotation,doubling)`.
  std::optional<std::string> system;
  double alpha = kGoldenAlpha;
  /// Rotation angle for g entries.
  double beta = kSilverBeta;
  std::optional<std::string> obs;
  std::optional<std::string> obs2;
  std::optional<std::size_t> N;
  std::vector<std::size_t> N_list;
  std::optional<std::size_t> H;
  std::optional<int> k;
  std::optional<std::size_t> grid;
  std::optional<std::size_t> samples;
  std::uint64_t seed = 1;
  std::optional<std::size_t> trials;
  std::vector<std::size_t> m;
  std::optional<std::string> out;
};

/// Types and validates raw values: numeric fields positive, k <= 4, lists
/// comma-separated.
ExperimentConfig make_experiment_config(const RawConfig& raw);

/// Parses `rotation`, `rotation(0.3)`, `doubling`, `skew-anzai`, `skew-sqrt`,
/// `product(a,b,...)`. A rotation or skew without an explicit angle uses
/// default_alpha.
SystemSpec parse_system(std::string_view literal, double default_alpha);

}  // namespace ergolab::cli

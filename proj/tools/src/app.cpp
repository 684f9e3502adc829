#include "ergolab/cli/app.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "ergolab/cli/config.hpp"
#include "ergolab/cli/experiments.hpp"
#include "ergolab/cli/plot.hpp"
#include "ergolab/errors.hpp"
#include "ergolab/parallel.hpp"

namespace ergolab::cli {

namespace {

void usage(std::ostream& out) {
  out << "usage: ergolab [run] <experiment> [options]\n"
         "       ergolab plot --csv FILE --out FILE [--x COL] [--y COL ...] [--group COL]\n"
         "       ergolab list\n\n"
         "options: --system --alpha --beta --obs --obs2 --N --N-list --H --k --grid\n"
         "         --samples --seed --trials --m --out --config\n"
         "ERGOLAB_THREADS caps the worker threads.\n";
}

/// CLI11 consumes a reversed argument vector.
void parse(CLI::App& app, std::vector<std::string> args) {
  std::reverse(args.begin(), args.end());
  app.parse(args);
}

int run_plot(const std::vector<std::string>& args, std::ostream& err) {
  CLI::App app{"ergolab plot"};
  std::string csv, out, x = "N", title;
  std::vector<std::string> y;
  std::optional<std::string> group;
  app.add_option("--csv", csv)->required();
  app.add_option("--out", out)->required();
  app.add_option("--x", x);
  app.add_option("--y", y);
  app.add_option("--group", group);
  app.add_option("--title", title);
  try {
    parse(app, args);
  } catch (const CLI::ParseError& e) {
    err << "ergolab plot: " << e.what() << "\n";
    return kExitError;
  }
  std::optional<PlotSpec> spec;
  if (!y.empty()) spec = PlotSpec{x, y, group, title};
  emit_plot(csv, out, spec);
  return kExitOk;
}

int run_experiment_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ergolab"};
  std::optional<std::string> name, config_path;
  std::map<std::string, std::optional<std::string>> flags;
  app.add_option("experiment", name);
  app.add_option("--config", config_path);
  for (const auto& key : known_config_keys())
    if (key != "experiment") app.add_option("--" + key, flags[key]);
  try {
    parse(app, args);
  } catch (const CLI::ParseError& e) {
    err << "ergolab: " << e.what() << "\n";
    return kExitError;
  }

  RawConfig raw;
  if (config_path) raw = read_config_file(*config_path);
  for (const auto& [key, value] : flags)
    if (value) raw[key] = *value;
  if (name) raw["experiment"] = *name;
  const ExperimentConfig config = make_experiment_config(raw);
  if (config.experiment.empty()) {
    usage(err);
    return kExitError;
  }
  if (!is_registered(config.experiment)) throw InvalidArgument("unknown experiment '" + config.experiment + "'");

  const ResultTable table = run_experiment(config);
  if (config.out) {
    std::ofstream file(*config.out, std::ios::binary);
    if (!file) throw InvalidArgument("cannot write " + *config.out);
    write_csv(file, table.csv());
  } else {
    write_csv(out, table.csv());
  }
  const auto failed = std::count(table.status.begin(), table.status.end(), RowStatus::Fail);
  err << table.experiment << ": " << table.rows.size() << " rows, " << failed << " failed\n";
  return table.ok() ? kExitOk : kExitFailedRows;
}

}  // namespace

int run_cli(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args = args_in;
  if (!args.empty() && args.front() == "run") args.erase(args.begin());
  if (args.empty() || args.front() == "--help" || args.front() == "-h" || args.front() == "help") {
    usage(args.empty() ? err : out);
    return args.empty() ? kExitError : kExitOk;
  }
  try {
    if (args.front() == "list") {
      for (const auto& e : experiments()) out << e.name << "\t" << e.summary << "\n";
      return kExitOk;
    }
    if (args.front() == "plot") return run_plot({args.begin() + 1, args.end()}, err);
    return run_experiment_command(args, out, err);
  } catch (const ProjectionUnavailable& e) {
    err << "ergolab: projection unavailable: " << e.what() << "\n";
  } catch (const ParseError& e) {
    err << "ergolab: malformed input: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "ergolab: " << e.what() << "\n";
  }
  return kExitError;
}

void apply_thread_environment() {
  const char* env = std::getenv("ERGOLAB_THREADS");
  if (!env || !*env) return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n <= 0) throw InvalidArgument("ERGOLAB_THREADS must be a positive integer");
  set_max_threads(static_cast<std::size_t>(n));
}

}  // namespace ergolab::cli

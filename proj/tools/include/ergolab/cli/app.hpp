#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ergolab::cli {

/// Exit codes: 0 every row passed or is informational, 1 some row failed,
/// 2 usage or input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailedRows = 1;
inline constexpr int kExitError = 2;

/// Entry point without argv[0]. Grammar:
///   [run] <experiment> [--key value ...] [--config FILE]
///   plot --csv FILE --out FILE [--x COL] [--y COL ...] [--group COL] [--title T]
///   list
/// CSV goes to --out, or to `out` when no --out is given.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Applies ERGOLAB_THREADS (a positive integer) to the thread cap. Throws
/// InvalidArgument for a malformed value.
void apply_thread_environment();

}  // namespace ergolab::cli

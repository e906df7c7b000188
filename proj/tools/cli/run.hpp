#pragma once

#include <iosfwd>

#include "config.hpp"

namespace hbcli {

/// Executes a validated configuration through the C interface. Results go
/// to config.output (or `out` when empty); failures print one JSON error
/// record to `err`. Returns 0 on success, 1 for invalid input, 2 for a
/// numerical failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_config followed by run, with the same error reporting.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hbcli

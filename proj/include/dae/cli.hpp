#pragma once

#include <ostream>

namespace dae {

/// Entry point of the `dae` tool. Subcommands: train, sample, refine, score-check,
/// oracle-check; each accepts --config <path> and repeated --set key=value.
/// Returns 0 on success, 1 on usage errors, 2 on runtime failures.
int cli_main(int argc, const char* const argv[], std::ostream& out, std::ostream& err);

}  // namespace dae

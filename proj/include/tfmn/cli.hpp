#ifndef TFMN_CLI_HPP
#define TFMN_CLI_HPP

#include <string>
#include <vector>

namespace tfmn::cli {

// Runs one subcommand. `args` excludes the program name, e.g.
// {"profile", "--corpus", "c.jsonl", ...}. Returns the process exit code:
// 0 success, 1 validation failure, 2 runtime failure. Each subcommand prints
// one machine-readable `<name> key=value ...` summary line on stdout; errors
// go to stderr and name the offending input.
int run(const std::vector<std::string>& args);

// argv[0] is the program name and is ignored.
int run(int argc, const char* const* argv);

}  // namespace tfmn::cli

#endif

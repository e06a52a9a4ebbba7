#pragma once

// Command-line front end. run_command is the whole CLI as a function, so
// tests drive it in-process; the installed binary is a thin wrapper.
//
// Subcommands:
//   analyze --input F [--json] [--certificates]
//   kills   --input F --map NAME --range M N [--mode COND]
//   avoid   --input F --object NAME --range M N
//   hom     --input F --src A --tgt B
//   check-example {a|b}
//   oracle  --battery NAME [--trials K] [--seed S]
//
// Exit codes: 0 = property holds / object produced, 1 = property
// definitively fails (an obstruction report is printed), 2 = input or
// usage error (parse errors carry line/column positions). The exit code is
// the only success channel; stdout never contradicts it.
//
// The only environment variable consulted is WEIGHTKIT_SEED, which
// replaces the default oracle seed when --seed is absent.

#include <ostream>
#include <string>
#include <vector>

namespace weightkit {

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace weightkit

#pragma once

// Command-line front end. `run_cli` is what the `coda` binary's main calls;
// taking the streams explicitly lets tests drive it in-process.

#include "coda/context.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace coda {

/// args excludes the program name. Returns the process exit code:
/// 0 success, 1 diagnostics (axiom violation, failed check, bad file),
/// 2 usage errors.
int run_cli(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err);

/// Reads lines until EOF. Lines starting with ':' are commands
/// (:step, :budget N, :defs, :save FILE, :quit); every other line is source
/// evaluated against the session context, which def and let extend.
int repl_loop(Context ctx, std::size_t budget, std::istream &in, std::ostream &out, bool interactive = false);

} // namespace coda

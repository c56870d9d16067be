#pragma once

#include <iosfwd>

namespace lsqstab::cli {

/// Parses argv, runs one subcommand, and returns the process exit code:
/// 0 on success, 2 on any usage, domain, numerical or I/O error. Errors are
/// reported on `err` as a single line "error: <code>: <detail>"; results go
/// to `out` unless --out names a file.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lsqstab::cli

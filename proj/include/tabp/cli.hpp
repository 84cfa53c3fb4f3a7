#pragma once

#include <iosfwd>

namespace tabp::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kInconclusive = 2,
    kVerificationFailed = 3,
};

/// Entry point of the `tabp` tool: simulate, classify, analytics, verify, scan.
/// Writes machine output to `out` and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tabp::cli

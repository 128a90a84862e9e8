#pragma once

#include "ihskit/io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ihskit::cli {

enum ExitCode : int { kOk = 0, kDomainError = 1, kInputError = 2 };

struct CommandResult {
    int exit_code = kOk;
    std::optional<Json> payload;          // present iff exit_code == kOk
    std::vector<std::string> diagnostics; // human-readable, for the error stream
    std::string out;                      // rendered data stream
    std::string err;                      // rendered error stream
};

/// Tokens after the program name, e.g. {"numerology", "--t", "-17"}.
CommandResult run(const std::vector<std::string>& args);

/// One named regression check of verify-all.
struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<Check> verify_all(double tol = 1e-10);

/// The Zh ⊕ Ze sublattice of L2 with h = f + g in the first U.
EmbeddedSublattice example_zh_ze();

} // namespace ihskit::cli

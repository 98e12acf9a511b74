#pragma once

#include <ostream>
#include <span>
#include <string>

namespace zsum::cli {

/// Exit codes: 0 verified, 1 counterexample or mismatch, 2 user error, 3 budget exhausted.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCounterexample = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

inline constexpr unsigned long long kDefaultNodeBudget = 2'000'000'000ULL;

/// Runs one command; data goes to `out`, diagnostics and progress to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace zsum::cli

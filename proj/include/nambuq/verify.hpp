#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace nambuq {

struct VerifyOptions {
    std::uint64_t seed = 1;
    int trials = 0; // 0 → per-suite default
};

// Runs a named property suite (brackets | conservation | nosignal | jacobi |
// entropy | all), printing one row per property: max deviation, tolerance,
// PASS/FAIL (or REPORT for the open questions).  Returns true iff every
// assertable row passed.
bool run_verify_suite(const std::string& suite, const VerifyOptions& opt,
                      std::ostream& os);

} // namespace nambuq

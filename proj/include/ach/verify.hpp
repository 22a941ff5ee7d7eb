#ifndef ACH_VERIFY_HPP
#define ACH_VERIFY_HPP

#include "ach/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ach {

struct VerifyOptions {
    std::vector<int> ns = {2};
    std::uint64_t seed = 0;
    int jobs = 1;
};

std::vector<std::string> verify_suites();

/// Per-area identity suites; each record carries a stable id and the formula
/// being checked. All randomness is drawn deterministically from `seed`.
Report verify_arith(std::uint64_t seed);
Report verify_frame(int n, std::uint64_t seed);
Report verify_gjms(int n, std::uint64_t seed);
Report verify_curvature(int n);
Report verify_lichnerowicz(int n, std::uint64_t seed);
Report verify_volume(int n, std::uint64_t seed);

/// Runs a named suite ("arith", "frame", "gjms", "curvature", "lichnerowicz",
/// "volume", or "all") over the requested dimensions, `jobs` checks at a time.
Report run_suite(const std::string& suite, const VerifyOptions& opt);

}  // namespace ach

#endif

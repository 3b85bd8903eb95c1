#pragma once

#include <functional>
#include <string>
#include <vector>

#include "jetlaw/config.hpp"

namespace jetlaw {

struct GoldenResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct GoldenCase {
    std::string name;
    /// Returns an empty string on success, otherwise what went wrong.
    std::function<std::string(const Config&)> check;
};

/// The fixed regression suite: the four physical laws, the exotic
/// exponential law, both Lagrangians, the scaling multiplier, the trivial
/// families, four extra characteristics and a numeric cross-check.
const std::vector<GoldenCase>& golden_cases();

/// Runs every case; results are ordered by case index.
std::vector<GoldenResult> run_golden(const Config& config);

}  // namespace jetlaw

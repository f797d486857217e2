#pragma once

/// @file verify.hpp
/// @brief Seeded property/oracle sweep over random parameters and states.

#include <cstdint>
#include <string>
#include <vector>

namespace gyrobundle {

struct CheckResult {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool connection = false;  ///< belongs to the connection-axiom group

    bool passed() const { return max_residual <= tolerance; }
};

/// Runs every property check over `trials` random (params, state) draws.
std::vector<CheckResult> run_verification(std::uint64_t seed, int trials);

}  // namespace gyrobundle

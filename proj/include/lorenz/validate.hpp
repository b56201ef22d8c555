#pragma once

#include "lorenz/perturb.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lorenz {

struct InvariantResult {
    std::string module;
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidateOptions {
    std::uint64_t seed = 1;
    std::size_t depth = 10;
    std::size_t samples = 2000;
    std::size_t n_max_cut = 30;
    double epsilon = 0.3;
};

// Property checks for every module on one map/potential pair.
std::vector<InvariantResult> run_invariants(const BetaMap& map, const PiecewisePotential& phi,
                                            const ValidateOptions& opt = {});

} // namespace lorenz

#pragma once

#include "lorenz/cutting.hpp"
#include "lorenz/pressure.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace lorenz {

struct BumpFamily {
    CutSide side = CutSide::plus;
    PeriodicOrbit orbit;
    double epsilon = 0.0;
    double delta_k = 0.0;
    std::size_t l = 1;
    double delta_kl = 0.0;
};

// epsilon * max(0, 1 - |x - o_j| / delta_kl) for the nearest orbit point
double bump_eval(const BumpFamily& family, double x);

// Largest admissible radius for the union of the given orbits:
// 0.4 * min gap, also 0.4 * distance to {0, d, 1} (orbit points that are
// themselves boundary points are exempt).
double auto_delta(const BetaMap& map, const std::vector<double>& points);

// Distinct orbit points of the union, sorted.
std::vector<double> merged_centers(const std::vector<const PeriodicOrbit*>& orbits);

struct PerturbedPotential {
    PiecewisePotential base;
    BumpFamily family_plus;
    BumpFamily family_minus;
    PiecewisePotential combined;
    std::vector<double> centers;
    double increment_plus = 0.0;  // average increment along the plus orbit
    double increment_minus = 0.0; // along the minus orbit
};

PerturbedPotential build_perturbed(const BetaMap& map, const PiecewisePotential& phi, double epsilon,
                                   const PeriodicOrbit& orbit_plus, const PeriodicOrbit& orbit_minus,
                                   std::size_t l);

// Potential made of the family's bumps alone.
PiecewisePotential bump_potential(const BetaMap& map, const BumpFamily& family);

// Does the truncated orbit of 0^+ or 1^- enter an open bump support?
bool boundary_orbits_hit(const BetaMap& map, const std::vector<double>& centers, double radius, std::size_t n_max);

struct DecayEntry {
    std::size_t l = 1;
    double value = 0.0;
    bool overlap = false;
};

std::vector<DecayEntry> bump_boundary_pressure_decay(const BetaMap& map, const BumpFamily& family,
                                                     const std::vector<std::size_t>& l_list,
                                                     const LimsupOptions& opt = {});

struct DensifyOptions {
    std::size_t n_max_cut = 30;
    std::size_t max_shrink_power = 20; // l runs over 1, 2, 4, ..., 2^p
    GapOptions gap;
};

struct DensifyResult {
    std::optional<PerturbedPotential> perturbed; // empty when phi was already IN_H
    GapVerdict verdict;
    double base_gap = 0.0;
    std::size_t k = 0;
    std::size_t l = 0;
    std::size_t n_plus = 0;
    std::size_t n_minus = 0;
    std::size_t candidates = 0;
    double sup_distance = 0.0;
    bool short_circuit = false;
};

class BudgetExhausted : public Error {
public:
    BudgetExhausted(const std::string& what, DensifyResult best) : Error(what), best_(std::move(best)) {}
    const char* kind() const noexcept override { return "BudgetExhausted"; }
    const DensifyResult& best() const { return best_; }

private:
    DensifyResult best_;
};

DensifyResult densify(const BetaMap& map, const PiecewisePotential& phi, double epsilon, std::size_t budget,
                      const DensifyOptions& opt = {});

} // namespace lorenz

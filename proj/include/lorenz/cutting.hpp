#pragma once

#include "lorenz/potential.hpp"
#include "lorenz/symbolic.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace lorenz {

inline constexpr double kTauCut = 1e-10;

// plus: recursion seeded right of D, tracking T^n(D^+);
// minus: mirrored, seeded left of D, tracking T^n(D^-)
enum class CutSide { plus, minus };

const char* to_string(CutSide s);

template <class S>
struct AuxSetState {
    std::size_t n = 0;
    S lo{};
    S hi{};
    bool contains_D = false;
    SidedPoint<S> critical;
    CutSide side = CutSide::plus;
};

template <class S>
AuxSetState<S> aux_initial(const BasicBetaMap<S>& map, CutSide side, double tau_cut = kTauCut);

template <class S>
AuxSetState<S> aux_step(const BasicBetaMap<S>& map, const AuxSetState<S>& state, double tau_cut = kTauCut);

// lo + tau < D < hi - tau (exact comparison for rationals)
template <class S>
bool disc_inside(const BasicBetaMap<S>& map, const S& lo, const S& hi, double tau_cut = kTauCut);

template <class S>
struct CuttingRecord {
    std::size_t N = 0;
    CutSide side = CutSide::plus;
    Cylinder<S> cylinder; // (D, B+) or (B-, D)
    S a_lo{};             // A_N
    S a_hi{};
    bool admissible = false;
    bool tolerance_sensitive = false;

    const S& outer_endpoint() const { return side == CutSide::plus ? cylinder.b : cylinder.a; }
};

struct CuttingOptions {
    double tau_cut = kTauCut;
    bool plus = true;
    bool minus = true;
};

template <class S>
std::vector<CuttingRecord<S>> cutting_times(const BasicBetaMap<S>& map, std::size_t n_max,
                                            const CuttingOptions& opt = {});

// T^N of the cylinder closure contains the closure.
template <class S>
bool covers_closure(const Cylinder<S>& c);

// Periodic point of an affine branch composition, stored in double with
// verification data from the chosen arithmetic.
struct PeriodicOrbit {
    std::size_t period = 0;
    double point = 0.0;
    CutSide side = CutSide::plus;
    std::string word;
    std::vector<double> orbit;
    double residual = 0.0;         // |g_{w_0}...g_{w_{N-1}}(p) - p|
    double forward_residual = 0.0; // |T^N(p) - p| iterated in double
    double cyl_a = 0.0;
    double cyl_b = 0.0;
    bool exact = false;
    bool verified = false;
};

// Solve p = c/(1 - beta^N) for the composition spelled by word, fill the orbit
// by inverse branches and verify piece membership. No interiority check.
template <class S>
PeriodicOrbit solve_periodic_word(const BasicBetaMap<S>& map, const std::string& word);

template <class S>
PeriodicOrbit periodic_from_cylinder(const BasicBetaMap<S>& map, const Cylinder<S>& cyl,
                                     CutSide side = CutSide::plus);

template <class S>
PeriodicOrbit periodic_from_cutting(const BasicBetaMap<S>& map, const CuttingRecord<S>& rec);

// (1/N) S_N phi(p) along the stored orbit, pieces taken from the word
double periodic_average(const PiecewisePotential& phi, const PeriodicOrbit& orbit);

struct ConvergenceEntry {
    std::size_t N = 0;
    double average = 0.0;
    double reference = 0.0;
};

struct ConvergenceReport {
    std::vector<ConvergenceEntry> entries;
    BoundaryLimsupEstimate reference;
    double last_deviation = 0.0;
};

ConvergenceReport orbit_average_convergence(const BetaMap& map, const PiecewisePotential& phi,
                                            const std::vector<PeriodicOrbit>& orbits, Base base,
                                            const LimsupOptions& opt = {});

} // namespace lorenz

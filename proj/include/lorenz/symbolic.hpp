#pragma once

#include "lorenz/maps.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace lorenz {

inline constexpr double kTauCyl = 1e-14;
inline constexpr std::uint64_t kDefaultRefineBudget = 50'000'000;

// Depth-n cylinder: points whose first n symbols spell word. On the closure
// T^n acts as x -> slope*x + intercept with slope = beta^n.
template <class S>
struct Cylinder {
    std::string word;
    S a{};
    S b{};
    S slope{1};
    S intercept{0};
    std::size_t depth = 0;

    S image_lo() const { return slope * a + intercept; }
    S image_hi() const { return slope * b + intercept; }
    S mid() const { return (a + b) / 2; }
};

// Counts interval pull-backs; throws BudgetExceeded past the limit.
struct RefineBudget {
    std::uint64_t limit = kDefaultRefineBudget;
    std::uint64_t used = 0;
    void charge(std::uint64_t ops);
};

template <class S>
std::vector<Cylinder<S>> root_level();

// Next depth from the current one, kept sorted by position.
template <class S>
std::vector<Cylinder<S>> refine_step(const BasicBetaMap<S>& map, const std::vector<Cylinder<S>>& level,
                                     RefineBudget& budget);

template <class S>
std::vector<Cylinder<S>> refine(const BasicBetaMap<S>& map, std::size_t n,
                                std::uint64_t budget = kDefaultRefineBudget);

template <class S>
Cylinder<S> cylinder_of_word(const BasicBetaMap<S>& map, const std::string& word);

template <class S>
std::string itinerary(const BasicBetaMap<S>& map, const SidedPoint<S>& p, std::size_t n);

enum class BoundaryLabel { zero, d_minus, d_plus, one };

const char* to_string(BoundaryLabel b);

template <class S>
SidedPoint<S> boundary_point(const BasicBetaMap<S>& map, BoundaryLabel b);

template <class S>
struct BoundaryEntry {
    Cylinder<S> cylinder;
    std::vector<BoundaryLabel> labels;
};

template <class S>
struct BoundaryAdjacency {
    std::size_t depth = 0;
    std::vector<BoundaryEntry<S>> entries;
};

template <class S>
BoundaryAdjacency<S> boundary_cylinders(const BasicBetaMap<S>& map, std::size_t n);

struct EntropySeries {
    std::vector<std::pair<std::size_t, double>> values;
    std::vector<std::size_t> counts;
    bool steep_branches = true;
    double target = 0.0; // ln beta
};

template <class S>
EntropySeries entropy_estimate(const BasicBetaMap<S>& map, std::size_t n_max,
                               std::uint64_t budget = kDefaultRefineBudget);

} // namespace lorenz

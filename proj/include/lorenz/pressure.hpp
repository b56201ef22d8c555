#pragma once

#include "lorenz/cutting.hpp"
#include "lorenz/potential.hpp"
#include "lorenz/symbolic.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace lorenz {

enum class Subject { full, boundary };

const char* to_string(Subject s);

// Distortion constant C = K / (1 - beta^{-a}).
double distortion_constant(const BetaMap& map, const PiecewisePotential& phi);

struct PressureBracket {
    std::size_t n = 0;
    double lo = 0.0;      // (1/n) log of the midpoint sum
    double hi = 0.0;      // lo + C/n
    double cert_lo = 0.0; // lower end of the enclosure
    double cert_hi = 0.0; // upper end of the enclosure
    double slack = 0.0;   // C
    std::size_t count = 0;

    double mid() const { return 0.5 * (cert_lo + cert_hi); }
    double width() const { return cert_hi - cert_lo; }
};

struct PressureOptions {
    std::uint64_t budget = kDefaultRefineBudget;
    std::size_t window = 3;
    // target grid for the covering lower bound, intervals [i/g, j/g]
    std::size_t cover_grid = 20;
};

struct PressureSeries {
    Subject subject = Subject::full;
    std::vector<PressureBracket> brackets;
    double estimate = 0.0;
    double upper_cert = 0.0;
    bool upper_cert_rigorous = true;

    double lower_cert() const;
    double max_width_tail(std::size_t window) const;
};

PressureBracket partition_sum(const BetaMap& map, const PiecewisePotential& phi, std::size_t n, Subject subject,
                              const PressureOptions& opt = {});

PressureSeries pressure(const BetaMap& map, const PiecewisePotential& phi, Subject subject, std::size_t n_lo,
                        std::size_t n_hi, const PressureOptions& opt = {});

double boundary_pressure_shortcut(const BetaMap& map, const PiecewisePotential& phi, const LimsupOptions& opt = {});

double periodic_orbit_lower_bound(const BetaMap& map, const PiecewisePotential& phi, const PeriodicOrbit& orbit);

// All verified periodic orbits of period <= max_period, endpoints allowed.
std::vector<PeriodicOrbit> enumerate_periodic_orbits(const BetaMap& map, std::size_t max_period);

enum class Verdict { in_h, not_decided };

const char* to_string(Verdict v);

struct GapOptions {
    double margin = 0.01;
    std::size_t n_lo = 4;
    std::size_t n_hi = 16;
    std::size_t max_period = 8;
    LimsupOptions limsup;
    PressureOptions pressure;
};

struct GapVerdict {
    PressureSeries full_pressure;
    double full_lower = 0.0;
    std::string full_lower_source;
    double boundary_value = 0.0;
    double limsup_zero = 0.0;
    double limsup_one = 0.0;
    double gap_lo = 0.0;
    double gap_plus = 0.0;  // against base 0
    double gap_minus = 0.0; // against base 1
    double margin = 0.01;
    Verdict verdict = Verdict::not_decided;
};

GapVerdict h_membership(const BetaMap& map, const PiecewisePotential& phi, const GapOptions& opt = {},
                        const std::vector<PeriodicOrbit>& extra_orbits = {});

nlohmann::json to_json(const GapVerdict& v);

} // namespace lorenz

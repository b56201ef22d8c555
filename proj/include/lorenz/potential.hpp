#pragma once

#include "lorenz/maps.hpp"

#include "json.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lorenz {

// Tent: height at center, linear to zero at distance radius.
struct BumpTerm {
    double center = 0.0;
    double radius = 1.0;
    double height = 0.0;

    double operator()(double x) const;
};

class Piece {
public:
    std::vector<double> poly; // c0 + c1 x + c2 x^2 + ...

    double eval(double x) const;
    double poly_eval(double x) const;
    void add_bump(const BumpTerm& b);
    const std::vector<BumpTerm>& bumps() const { return bumps_; }
    // bound on the Lipschitz constant over [lo, hi]
    double lipschitz(double lo, double hi) const;
    // bound on sup |piece| over [lo, hi]
    double sup_abs(double lo, double hi) const;

private:
    std::vector<BumpTerm> bumps_; // sorted by center
    double max_radius_ = 0.0;
};

// Piecewise Hölder potential on the two-piece partition. The Hölder exponent
// is called `a` here because alpha is already the map offset.
class PiecewisePotential {
public:
    Piece left;
    Piece right;
    double holder_a = 1.0;
    double holder_K = 0.0;
    double sup_bound = 0.0;

    static PiecewisePotential constant(double c);
    static PiecewisePotential polynomial(std::vector<double> left, std::vector<double> right, double K,
                                         double sup_bound, double a = 1.0);

    double eval_piece(int s, double x) const { return s == 0 ? left.eval(x) : right.eval(x); }

    // a = 1, K = Lipschitz bound, sup_bound from coefficients
    void derive_constants(double disc);

    PiecewisePotential plus_constant(double c) const;
    PiecewisePotential scaled(double c) const;
};

PiecewisePotential parse_potential(const nlohmann::json& j);
nlohmann::json to_json(const PiecewisePotential& phi);
std::string potential_hash(const PiecewisePotential& phi);

double eval_potential(const BetaMap& map, const PiecewisePotential& phi, const SidedPoint<double>& p);

double birkhoff_sum(const BetaMap& map, const PiecewisePotential& phi, const SidedPoint<double>& p,
                    std::size_t n);

// Sum of phi along a known itinerary: x_{i+1} = beta*x_i + c_{word[i]}.
double birkhoff_sum_word(const BetaMap& map, const PiecewisePotential& phi, double x, const std::string& word);

enum class Base { zero, one };
enum class LimsupMode { asymptotic, periodic_exact };

const char* to_string(Base b);
const char* to_string(LimsupMode m);

struct LimsupOptions {
    std::size_t n_max = 2000;
    std::size_t window = 200;
};

struct BoundaryLimsupEstimate {
    Base base = Base::zero;
    LimsupMode mode = LimsupMode::asymptotic;
    double value = 0.0;
    std::size_t window = 0;
    std::optional<std::size_t> n0;
    bool tolerance_sensitive = false;
    std::vector<std::pair<std::size_t, double>> series;
};

SidedPoint<double> base_point(Base b);

BoundaryLimsupEstimate boundary_limsup(const BetaMap& map, const PiecewisePotential& phi, Base base,
                                       const LimsupOptions& opt = {});

struct HolderCheck {
    double max_quotient = 0.0;
    bool ok = true;
    std::size_t pairs = 0;
};

HolderCheck validate_holder(const BetaMap& map, const PiecewisePotential& phi, std::size_t pairs = 10000,
                            std::uint64_t seed = 1);

// Grid maximum of |phi - psi| over both pieces. With lipschitz_correction the
// result is an upper bound on the true sup norm.
double sup_distance(const BetaMap& map, const PiecewisePotential& phi, const PiecewisePotential& psi,
                    std::size_t samples = 100000, bool lipschitz_correction = true);

} // namespace lorenz

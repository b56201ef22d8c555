#pragma once

#include "lorenz/errors.hpp"
#include "lorenz/scalar.hpp"

#include "json.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace lorenz {

enum class Side { left, right, none };

const char* to_string(Side s);

template <class S>
struct SidedPoint {
    S x{};
    Side side = Side::none;
};

// T(x) = beta*x + alpha mod 1 on [0,1], discontinuity at disc = (1-alpha)/beta.
// Symbol 0 is the left piece (0,disc), symbol 1 the right piece (disc,1).
template <class S>
class BasicBetaMap {
public:
    BasicBetaMap(S beta, S alpha, double tau_d = 1e-12);

    const S& beta() const { return beta_; }
    const S& alpha() const { return alpha_; }
    const S& disc() const { return disc_; }
    double tau_d() const { return tau_d_; }

    // beta > sqrt(2); maps failing this are still usable but flagged
    bool steep_branches() const { return steep_; }

    bool at_disc(const S& x) const;

    // additive constant of branch s: T = beta*x + intercept(s)
    S intercept(int s) const { return s == 0 ? alpha_ : S(alpha_ - 1); }

    // closed image of branch s
    S image_lo(int s) const { return s == 0 ? alpha_ : S(0); }
    S image_hi(int s) const { return s == 0 ? S(1) : S(beta_ + alpha_ - 1); }

    // symbol of the piece a sided point is read in
    int symbol(const SidedPoint<S>& p) const;

    SidedPoint<S> eval(const SidedPoint<S>& p) const;
    S inverse_branch(Side side, const S& y) const;

private:
    S beta_;
    S alpha_;
    S disc_;
    double tau_d_;
    bool steep_;
};

using BetaMap = BasicBetaMap<double>;
using RationalBetaMap = BasicBetaMap<Rational>;

template <class S>
struct Orbit {
    std::vector<SidedPoint<S>> points;
    std::optional<std::size_t> hit_disc_at;
};

template <class S>
Orbit<S> orbit(const BasicBetaMap<S>& map, const SidedPoint<S>& p, std::size_t n);

enum class Arithmetic { float64, rational };

struct MapSpec {
    std::string kind = "beta";
    double beta = 2.0;
    double alpha = 0.0;
    std::optional<Rational> beta_q;
    std::optional<Rational> alpha_q;
    Arithmetic arithmetic = Arithmetic::float64;
    double tau_d = 1e-12;
};

MapSpec parse_map_spec(const nlohmann::json& j);
nlohmann::json to_json(const MapSpec& spec);

BetaMap make_float_map(const MapSpec& spec);
RationalBetaMap make_rational_map(const MapSpec& spec);

extern template class BasicBetaMap<double>;
extern template class BasicBetaMap<Rational>;

} // namespace lorenz

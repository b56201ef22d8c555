#include "lorenz/maps.hpp"

#include <algorithm>
#include <cmath>

namespace lorenz {

const char* to_string(Side s) {
    switch (s) {
    case Side::left: return "left";
    case Side::right: return "right";
    default: return "none";
    }
}

namespace {

template <class S>
S clamp01(const S& y) {
    if constexpr (ScalarTraits<S>::exact) {
        return y;
    } else {
        return std::clamp(y, 0.0, 1.0);
    }
}

template <class S>
bool within(const S& y, const S& lo, const S& hi, double tol) {
    if constexpr (ScalarTraits<S>::exact) {
        return lo <= y && y <= hi;
    } else {
        return y >= lo - tol && y <= hi + tol;
    }
}

} // namespace

template <class S>
BasicBetaMap<S>::BasicBetaMap(S beta, S alpha, double tau_d)
    : beta_(std::move(beta)), alpha_(std::move(alpha)), tau_d_(tau_d) {
    if (!(beta_ > 1) || beta_ > 2)
        throw ConfigError("beta must satisfy 1 < beta <= 2, got " + ScalarTraits<S>::to_string(beta_));
    if (alpha_ < 0)
        throw ConfigError("alpha must be >= 0, got " + ScalarTraits<S>::to_string(alpha_));
    if (alpha_ + beta_ > 2)
        throw ConfigError("alpha + beta must be <= 2");
    if (!(tau_d_ >= 0))
        throw ConfigError("tau_d must be >= 0");
    disc_ = (S(1) - alpha_) / beta_;
    steep_ = beta_ * beta_ > 2;
}

template <class S>
bool BasicBetaMap<S>::at_disc(const S& x) const {
    return ScalarTraits<S>::near(x, disc_, tau_d_);
}

template <class S>
int BasicBetaMap<S>::symbol(const SidedPoint<S>& p) const {
    if (at_disc(p.x)) {
        if (p.side == Side::none)
            throw SideRequired("point at the discontinuity needs a side");
        return p.side == Side::left ? 0 : 1;
    }
    return p.x < disc_ ? 0 : 1;
}

template <class S>
SidedPoint<S> BasicBetaMap<S>::eval(const SidedPoint<S>& p) const {
    if (p.x < 0 || p.x > 1)
        throw DomainError("x outside [0,1]: " + ScalarTraits<S>::to_string(p.x));
    if (at_disc(p.x)) {
        switch (p.side) {
        case Side::right: return {S(0), Side::right};
        case Side::left: return {S(1), Side::left};
        default: throw SideRequired("eval at the discontinuity needs a side");
        }
    }
    int s = p.x < disc_ ? 0 : 1;
    return {clamp01<S>(S(beta_ * p.x + intercept(s))), p.side};
}

template <class S>
S BasicBetaMap<S>::inverse_branch(Side side, const S& y) const {
    if (side == Side::none)
        throw DomainError("inverse_branch needs left or right");
    int s = side == Side::left ? 0 : 1;
    if (!within(y, image_lo(s), image_hi(s), tau_d_))
        throw RangeError("y = " + ScalarTraits<S>::to_string(y) + " outside the " + to_string(side) +
                         " branch image");
    S x = (y - intercept(s)) / beta_;
    if constexpr (!ScalarTraits<S>::exact) {
        x = s == 0 ? std::clamp(x, 0.0, disc_) : std::clamp(x, disc_, 1.0);
    }
    return x;
}

template <class S>
Orbit<S> orbit(const BasicBetaMap<S>& map, const SidedPoint<S>& p, std::size_t n) {
    Orbit<S> out;
    out.points.reserve(n + 1);
    out.points.push_back(p);
    for (std::size_t i = 1; i <= n; ++i) {
        SidedPoint<S> q = map.eval(out.points.back());
        if (map.at_disc(q.x)) {
            if (q.side == Side::none)
                throw SideRequired("orbit landed on the discontinuity at step " + std::to_string(i) +
                                   " with no approach side");
            q.x = map.disc();
            if (!out.hit_disc_at) out.hit_disc_at = i;
        }
        out.points.push_back(q);
    }
    return out;
}

template class BasicBetaMap<double>;
template class BasicBetaMap<Rational>;
template Orbit<double> orbit(const BetaMap&, const SidedPoint<double>&, std::size_t);
template Orbit<Rational> orbit(const RationalBetaMap&, const SidedPoint<Rational>&, std::size_t);

// ---- MapSpec ------------------------------------------------------------

namespace {

struct Literal {
    double value;
    std::optional<Rational> exact;
};

Literal read_literal(const nlohmann::json& j, const char* name) {
    if (j.is_object()) {
        if (!j.contains("num") || !j.contains("den"))
            throw ConfigError(std::string(name) + ": rational literal needs num and den");
        const auto& num = j.at("num");
        const auto& den = j.at("den");
        if (!num.is_number_integer() || !den.is_number_integer())
            throw ConfigError(std::string(name) + ": num and den must be integers");
        long long d = den.get<long long>();
        if (d == 0) throw ConfigError(std::string(name) + ": zero denominator");
        Rational q(num.get<long long>(), d);
        return {q.convert_to<double>(), q};
    }
    if (j.is_number_integer()) {
        long long v = j.get<long long>();
        return {static_cast<double>(v), Rational(v)};
    }
    if (j.is_number()) return {j.get<double>(), std::nullopt};
    throw ConfigError(std::string(name) + ": expected a number or {num, den}");
}

} // namespace

MapSpec parse_map_spec(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("map spec must be a JSON object");
    MapSpec spec;
    spec.kind = j.value("kind", std::string("beta"));
    if (spec.kind != "beta") throw ConfigError("unsupported map kind: " + spec.kind);
    if (!j.contains("beta")) throw ConfigError("map spec missing beta");
    Literal b = read_literal(j.at("beta"), "beta");
    Literal a = j.contains("alpha") ? read_literal(j.at("alpha"), "alpha") : Literal{0.0, Rational(0)};
    spec.beta = b.value;
    spec.alpha = a.value;
    spec.beta_q = b.exact;
    spec.alpha_q = a.exact;
    std::string arith = j.value("arithmetic", std::string("float64"));
    if (arith == "float64") {
        spec.arithmetic = Arithmetic::float64;
    } else if (arith == "rational") {
        spec.arithmetic = Arithmetic::rational;
        if (!spec.beta_q || !spec.alpha_q)
            throw ConfigError("rational arithmetic requires rational literals for beta and alpha");
    } else {
        throw ConfigError("unknown arithmetic: " + arith);
    }
    if (j.contains("tau_d")) spec.tau_d = j.at("tau_d").get<double>();
    // validate eagerly
    (void)make_float_map(spec);
    return spec;
}

nlohmann::json to_json(const MapSpec& spec) {
    auto lit = [](double v, const std::optional<Rational>& q) -> nlohmann::json {
        if (!q) return v;
        if (denominator(*q) == 1) return numerator(*q).convert_to<long long>();
        return {{"num", numerator(*q).convert_to<long long>()}, {"den", denominator(*q).convert_to<long long>()}};
    };
    return {{"kind", spec.kind},
            {"beta", lit(spec.beta, spec.beta_q)},
            {"alpha", lit(spec.alpha, spec.alpha_q)},
            {"arithmetic", spec.arithmetic == Arithmetic::rational ? "rational" : "float64"}};
}

BetaMap make_float_map(const MapSpec& spec) {
    return BetaMap(spec.beta, spec.alpha, spec.tau_d);
}

RationalBetaMap make_rational_map(const MapSpec& spec) {
    if (!spec.beta_q || !spec.alpha_q)
        throw ConfigError("map parameters are not rational literals");
    return RationalBetaMap(*spec.beta_q, *spec.alpha_q);
}

} // namespace lorenz

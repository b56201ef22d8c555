#include "lorenz/cutting.hpp"

#include <algorithm>
#include <cmath>

namespace lorenz {

const char* to_string(CutSide s) { return s == CutSide::plus ? "plus" : "minus"; }

namespace {

template <class S>
bool near_tau(const S& x, const S& y, double tau) {
    return ScalarTraits<S>::near(x, y, tau);
}

template <class S>
double dist(const S& x, const S& y) {
    return std::fabs(to_double(x) - to_double(y));
}

template <class S>
SidedPoint<S> sided_step(const BasicBetaMap<S>& map, const SidedPoint<S>& p) {
    SidedPoint<S> q = map.eval(p);
    if (map.at_disc(q.x)) q.x = map.disc();
    return q;
}

template <class S>
std::pair<S, S> apply_branch(const BasicBetaMap<S>& map, const S& lo, const S& hi) {
    // interval lies in one closed piece; pick it by the midpoint
    S m = (lo + hi) / 2;
    int s = m < map.disc() ? 0 : 1;
    S c = map.intercept(s);
    S a = map.beta() * lo + c;
    S b = map.beta() * hi + c;
    if constexpr (!ScalarTraits<S>::exact) {
        a = std::clamp(a, 0.0, 1.0);
        b = std::clamp(b, 0.0, 1.0);
    }
    return {a, b};
}

} // namespace

template <class S>
bool disc_inside(const BasicBetaMap<S>& map, const S& lo, const S& hi, double tau_cut) {
    const S& d = map.disc();
    if constexpr (ScalarTraits<S>::exact) {
        return lo < d && d < hi;
    } else {
        return lo + tau_cut < d && d < hi - tau_cut;
    }
}

template <class S>
AuxSetState<S> aux_initial(const BasicBetaMap<S>& map, CutSide side, double tau_cut) {
    AuxSetState<S> st;
    st.side = side;
    if (side == CutSide::plus) {
        st.lo = map.disc();
        st.hi = S(1);
        st.critical = {map.disc(), Side::right};
    } else {
        st.lo = S(0);
        st.hi = map.disc();
        st.critical = {map.disc(), Side::left};
    }
    st.contains_D = disc_inside(map, st.lo, st.hi, tau_cut);
    return st;
}

template <class S>
AuxSetState<S> aux_step(const BasicBetaMap<S>& map, const AuxSetState<S>& st, double tau_cut) {
    S lo = st.lo;
    S hi = st.hi;
    if (st.contains_D) {
        const S& d = map.disc();
        if (near_tau(st.critical.x, d, tau_cut))
            throw DegenerateComponent("critical image sits on D at step " + std::to_string(st.n));
        // keep the component of A_n \ {D} holding the sided critical image
        if (st.critical.x < d) {
            hi = d;
        } else {
            lo = d;
        }
    }
    auto [a, b] = apply_branch(map, lo, hi);
    AuxSetState<S> next;
    next.n = st.n + 1;
    next.lo = a;
    next.hi = b;
    next.side = st.side;
    next.critical = sided_step(map, st.critical);
    next.contains_D = disc_inside(map, next.lo, next.hi, tau_cut);
    return next;
}

template <class S>
std::vector<CuttingRecord<S>> cutting_times(const BasicBetaMap<S>& map, std::size_t n_max, const CuttingOptions& opt) {
    std::vector<CuttingRecord<S>> out;
    std::vector<CutSide> sides;
    if (opt.plus) sides.push_back(CutSide::plus);
    if (opt.minus) sides.push_back(CutSide::minus);
    for (CutSide side : sides) {
        auto st = aux_initial(map, side, opt.tau_cut);
        const SidedPoint<S> start = st.critical;
        for (std::size_t n = 1; n <= n_max; ++n) {
            st = aux_step(map, st, opt.tau_cut);
            if (!st.contains_D) continue;
            CuttingRecord<S> rec;
            rec.N = n;
            rec.side = side;
            rec.cylinder = cylinder_of_word(map, itinerary(map, start, n));
            rec.a_lo = st.lo;
            rec.a_hi = st.hi;
            const S& B = rec.outer_endpoint();
            rec.admissible = side == CutSide::plus ? st.hi > B : st.lo < B;
            if constexpr (!ScalarTraits<S>::exact) {
                double t = 10 * opt.tau_cut;
                rec.tolerance_sensitive = dist(st.lo, map.disc()) <= t || dist(st.hi, map.disc()) <= t ||
                                          dist(side == CutSide::plus ? st.hi : st.lo, B) <= t;
            }
            out.push_back(std::move(rec));
        }
    }
    return out;
}

template <class S>
bool covers_closure(const Cylinder<S>& c) {
    return c.image_lo() <= c.a && c.image_hi() >= c.b;
}

template <class S>
PeriodicOrbit solve_periodic_word(const BasicBetaMap<S>& map, const std::string& word) {
    const std::size_t N = word.size();
    if (N == 0) throw ConfigError("periodic word must be nonempty");
    S slope(1);
    S c(0);
    for (char ch : word) {
        int s = ch - '0';
        slope = slope * map.beta();
        c = c * map.beta() + map.intercept(s);
    }
    S p = c / (S(1) - slope);

    std::vector<S> pts(N + 1);
    pts[N] = p;
    for (std::size_t j = N; j-- > 0;) {
        int s = word[j] - '0';
        pts[j] = (pts[j + 1] - map.intercept(s)) / map.beta();
    }

    PeriodicOrbit out;
    out.period = N;
    out.word = word;
    out.point = to_double(p);
    out.exact = ScalarTraits<S>::exact;
    out.orbit.reserve(N);
    bool members = true;
    const double tol = ScalarTraits<S>::exact ? 0.0 : 1e-12;
    for (std::size_t j = 0; j < N; ++j) {
        // orbit_j = T^j(p); orbit_0 is p itself, pts[0] is its backward image
        const S& x = j == 0 ? p : pts[j];
        out.orbit.push_back(to_double(x));
        int s = word[j] - '0';
        const S& d = map.disc();
        if constexpr (ScalarTraits<S>::exact) {
            members = members && (s == 0 ? (x >= 0 && x < d) : (x > d && x <= 1));
        } else {
            members = members && (s == 0 ? (x >= -tol && x < d - map.tau_d()) : (x > d + map.tau_d() && x <= 1 + tol));
        }
    }
    out.residual = to_double(ScalarTraits<S>::abs(S(pts[0] - p)));
    double x = out.point;
    const double beta = to_double(map.beta());
    for (char ch : word) x = beta * x + to_double(map.intercept(ch - '0'));
    out.forward_residual = ScalarTraits<S>::exact ? 0.0 : std::fabs(x - out.point);
    out.verified = members && (ScalarTraits<S>::exact ? pts[0] == p : out.residual <= 1e-12);
    return out;
}

template <class S>
PeriodicOrbit periodic_from_cylinder(const BasicBetaMap<S>& map, const Cylinder<S>& cyl, CutSide side) {
    if (cyl.word.empty()) throw ConfigError("cylinder of depth 0 has no periodic point");
    S p = cyl.intercept / (S(1) - cyl.slope);
    if (!(cyl.a < p && p < cyl.b))
        throw FixedPointEscaped("fixed point " + ScalarTraits<S>::to_string(p) + " of word " + cyl.word +
                                " is not inside its cylinder");
    PeriodicOrbit out = solve_periodic_word(map, cyl.word);
    out.side = side;
    out.cyl_a = to_double(cyl.a);
    out.cyl_b = to_double(cyl.b);
    return out;
}

template <class S>
PeriodicOrbit periodic_from_cutting(const BasicBetaMap<S>& map, const CuttingRecord<S>& rec) {
    if (!rec.admissible) throw ConfigError("cutting record at N=" + std::to_string(rec.N) + " is not admissible");
    return periodic_from_cylinder(map, rec.cylinder, rec.side);
}

double periodic_average(const PiecewisePotential& phi, const PeriodicOrbit& orbit) {
    double sum = 0.0;
    for (std::size_t j = 0; j < orbit.period; ++j) sum += phi.eval_piece(orbit.word[j] - '0', orbit.orbit[j]);
    return sum / static_cast<double>(orbit.period);
}

ConvergenceReport orbit_average_convergence(const BetaMap& map, const PiecewisePotential& phi,
                                            const std::vector<PeriodicOrbit>& orbits, Base base,
                                            const LimsupOptions& opt) {
    if (orbits.size() < 2) throw ConfigError("orbit_average_convergence needs at least 2 orbits");
    ConvergenceReport out;
    out.reference = boundary_limsup(map, phi, base, opt);
    for (const auto& o : orbits) out.entries.push_back({o.period, periodic_average(phi, o), out.reference.value});
    out.last_deviation = std::fabs(out.entries.back().average - out.reference.value);
    return out;
}

#define LORENZ_INSTANTIATE(S)                                                                                   \
    template bool disc_inside(const BasicBetaMap<S>&, const S&, const S&, double);                              \
    template AuxSetState<S> aux_initial(const BasicBetaMap<S>&, CutSide, double);                               \
    template AuxSetState<S> aux_step(const BasicBetaMap<S>&, const AuxSetState<S>&, double);                    \
    template std::vector<CuttingRecord<S>> cutting_times(const BasicBetaMap<S>&, std::size_t,                   \
                                                         const CuttingOptions&);                                \
    template bool covers_closure(const Cylinder<S>&);                                                           \
    template PeriodicOrbit solve_periodic_word(const BasicBetaMap<S>&, const std::string&);                     \
    template PeriodicOrbit periodic_from_cylinder(const BasicBetaMap<S>&, const Cylinder<S>&, CutSide);         \
    template PeriodicOrbit periodic_from_cutting(const BasicBetaMap<S>&, const CuttingRecord<S>&);

LORENZ_INSTANTIATE(double)
LORENZ_INSTANTIATE(Rational)

#undef LORENZ_INSTANTIATE

} // namespace lorenz

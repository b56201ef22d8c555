#include "lorenz/symbolic.hpp"

#include <algorithm>
#include <cmath>

namespace lorenz {

void RefineBudget::charge(std::uint64_t ops) {
    used += ops;
    if (used > limit)
        throw BudgetExceeded("cylinder enumeration exceeded budget of " + std::to_string(limit) +
                             " interval operations");
}

const char* to_string(BoundaryLabel b) {
    switch (b) {
    case BoundaryLabel::zero: return "0";
    case BoundaryLabel::d_minus: return "d-";
    case BoundaryLabel::d_plus: return "d+";
    default: return "1";
    }
}

namespace {

template <class S>
bool empty_interval(const S& lo, const S& hi) {
    if constexpr (ScalarTraits<S>::exact) {
        return !(lo < hi);
    } else {
        return hi - lo <= kTauCyl;
    }
}

// Pull a cylinder back through branch s: C(sw) = g_s(C(w) ∩ T(P_s)).
template <class S>
bool pull_back(const BasicBetaMap<S>& map, const Cylinder<S>& w, int s, Cylinder<S>& out) {
    S lo = std::max<S>(w.a, map.image_lo(s));
    S hi = std::min<S>(w.b, map.image_hi(s));
    if (empty_interval(lo, hi)) return false;
    const S c = map.intercept(s);
    out.word.clear();
    out.word.reserve(w.word.size() + 1);
    out.word.push_back(static_cast<char>('0' + s));
    out.word += w.word;
    out.a = (lo - c) / map.beta();
    out.b = (hi - c) / map.beta();
    if constexpr (!ScalarTraits<S>::exact) {
        if (s == 0) {
            out.a = std::max(out.a, 0.0);
            out.b = std::min(out.b, map.disc());
        } else {
            out.a = std::max(out.a, map.disc());
            out.b = std::min(out.b, 1.0);
        }
    }
    out.intercept = w.slope * c + w.intercept;
    out.slope = w.slope * map.beta();
    out.depth = w.depth + 1;
    return true;
}

} // namespace

template <class S>
std::vector<Cylinder<S>> root_level() {
    Cylinder<S> root;
    root.a = S(0);
    root.b = S(1);
    return {root};
}

template <class S>
std::vector<Cylinder<S>> refine_step(const BasicBetaMap<S>& map, const std::vector<Cylinder<S>>& level,
                                     RefineBudget& budget) {
    budget.charge(2 * static_cast<std::uint64_t>(level.size()));
    std::vector<Cylinder<S>> next;
    next.reserve(level.size() * 2);
    Cylinder<S> c;
    for (int s = 0; s < 2; ++s) {
        for (const auto& w : level) {
            if (pull_back(map, w, s, c)) next.push_back(c);
        }
    }
    return next;
}

template <class S>
std::vector<Cylinder<S>> refine(const BasicBetaMap<S>& map, std::size_t n, std::uint64_t budget) {
    if (n < 1) throw ConfigError("refine depth must be >= 1");
    RefineBudget b{budget, 0};
    auto level = root_level<S>();
    for (std::size_t k = 0; k < n; ++k) level = refine_step(map, level, b);
    return level;
}

template <class S>
Cylinder<S> cylinder_of_word(const BasicBetaMap<S>& map, const std::string& word) {
    Cylinder<S> cur = root_level<S>().front();
    Cylinder<S> next;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        if (*it != '0' && *it != '1') throw ConfigError("word symbols must be 0 or 1");
        int s = *it - '0';
        S lo = std::max<S>(cur.a, map.image_lo(s));
        S hi = std::min<S>(cur.b, map.image_hi(s));
        if (!(lo < hi)) throw DomainError("word " + word + " has an empty cylinder");
        pull_back(map, cur, s, next);
        std::swap(cur, next);
    }
    return cur;
}

template <class S>
std::string itinerary(const BasicBetaMap<S>& map, const SidedPoint<S>& p, std::size_t n) {
    std::string w;
    w.reserve(n);
    auto orb = orbit(map, p, n == 0 ? 0 : n - 1);
    for (std::size_t i = 0; i < n; ++i) w.push_back(static_cast<char>('0' + map.symbol(orb.points[i])));
    return w;
}

template <class S>
SidedPoint<S> boundary_point(const BasicBetaMap<S>& map, BoundaryLabel b) {
    switch (b) {
    case BoundaryLabel::zero: return {S(0), Side::right};
    case BoundaryLabel::d_minus: return {map.disc(), Side::left};
    case BoundaryLabel::d_plus: return {map.disc(), Side::right};
    default: return {S(1), Side::left};
    }
}

template <class S>
BoundaryAdjacency<S> boundary_cylinders(const BasicBetaMap<S>& map, std::size_t n) {
    if (n < 1) throw ConfigError("boundary_cylinders depth must be >= 1");
    BoundaryAdjacency<S> out;
    out.depth = n;
    for (auto lab : {BoundaryLabel::zero, BoundaryLabel::d_minus, BoundaryLabel::d_plus, BoundaryLabel::one}) {
        std::string w = itinerary(map, boundary_point(map, lab), n);
        auto hit = std::find_if(out.entries.begin(), out.entries.end(),
                                [&](const BoundaryEntry<S>& e) { return e.cylinder.word == w; });
        if (hit != out.entries.end()) {
            hit->labels.push_back(lab);
        } else {
            out.entries.push_back({cylinder_of_word(map, w), {lab}});
        }
    }
    return out;
}

template <class S>
EntropySeries entropy_estimate(const BasicBetaMap<S>& map, std::size_t n_max, std::uint64_t budget) {
    if (n_max < 2) throw ConfigError("entropy_estimate needs n_max >= 2");
    EntropySeries out;
    out.steep_branches = map.steep_branches();
    out.target = std::log(to_double(map.beta()));
    RefineBudget b{budget, 0};
    auto level = root_level<S>();
    for (std::size_t n = 1; n <= n_max; ++n) {
        level = refine_step(map, level, b);
        out.counts.push_back(level.size());
        out.values.emplace_back(n, std::log(static_cast<double>(level.size())) / static_cast<double>(n));
    }
    return out;
}

#define LORENZ_INSTANTIATE(S)                                                                              \
    template std::vector<Cylinder<S>> root_level<S>();                                                     \
    template std::vector<Cylinder<S>> refine_step(const BasicBetaMap<S>&, const std::vector<Cylinder<S>>&, \
                                                  RefineBudget&);                                          \
    template std::vector<Cylinder<S>> refine(const BasicBetaMap<S>&, std::size_t, std::uint64_t);          \
    template Cylinder<S> cylinder_of_word(const BasicBetaMap<S>&, const std::string&);                     \
    template std::string itinerary(const BasicBetaMap<S>&, const SidedPoint<S>&, std::size_t);             \
    template SidedPoint<S> boundary_point(const BasicBetaMap<S>&, BoundaryLabel);                          \
    template BoundaryAdjacency<S> boundary_cylinders(const BasicBetaMap<S>&, std::size_t);                 \
    template EntropySeries entropy_estimate(const BasicBetaMap<S>&, std::size_t, std::uint64_t);

LORENZ_INSTANTIATE(double)
LORENZ_INSTANTIATE(Rational)

#undef LORENZ_INSTANTIATE

} // namespace lorenz

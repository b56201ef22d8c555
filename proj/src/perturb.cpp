#include "lorenz/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lorenz {

namespace {

constexpr double kSameCenter = 1e-14;
constexpr double kMinRadius = 1e-13;

bool is_boundary_point(const BetaMap& map, double x) {
    return std::fabs(x) <= kSameCenter || std::fabs(x - 1.0) <= kSameCenter ||
           std::fabs(x - map.disc()) <= kSameCenter;
}

} // namespace

double bump_eval(const BumpFamily& family, double x) {
    double v = 0.0;
    for (double c : family.orbit.orbit) {
        double r = std::fabs(x - c);
        if (r < family.delta_kl) v = std::max(v, family.epsilon * (1.0 - r / family.delta_kl));
    }
    return v;
}

std::vector<double> merged_centers(const std::vector<const PeriodicOrbit*>& orbits) {
    std::vector<double> pts;
    for (const auto* o : orbits) pts.insert(pts.end(), o->orbit.begin(), o->orbit.end());
    std::sort(pts.begin(), pts.end());
    std::vector<double> out;
    for (double x : pts)
        if (out.empty() || x - out.back() > kSameCenter) out.push_back(x);
    return out;
}

double auto_delta(const BetaMap& map, const std::vector<double>& pts) {
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < pts.size(); ++i) gap = std::min(gap, pts[i] - pts[i - 1]);
    double clear = std::numeric_limits<double>::infinity();
    for (double x : pts) {
        if (is_boundary_point(map, x)) continue;
        clear = std::min({clear, x, 1.0 - x, std::fabs(x - map.disc())});
    }
    double delta = 0.4 * std::min(gap, clear);
    if (!std::isfinite(delta)) delta = 0.4;
    if (delta < kMinRadius)
        throw DisjointnessImpossible("orbit points too close for disjoint bump supports (radius " +
                                     format_real(delta) + ")");
    return delta;
}

PerturbedPotential build_perturbed(const BetaMap& map, const PiecewisePotential& phi, double epsilon,
                                   const PeriodicOrbit& orbit_plus, const PeriodicOrbit& orbit_minus,
                                   std::size_t l) {
    if (!(epsilon > 0)) throw ConfigError("epsilon must be > 0");
    if (l < 1) throw ConfigError("shrink index l must be >= 1");
    for (const auto* o : {&orbit_plus, &orbit_minus})
        if (!o->verified) throw UnverifiedOrbit("bump family needs a verified periodic orbit");

    PerturbedPotential out;
    out.base = phi;
    out.centers = merged_centers({&orbit_plus, &orbit_minus});
    double delta_k = auto_delta(map, out.centers);
    double delta_kl = delta_k / static_cast<double>(l);
    out.family_plus = {CutSide::plus, orbit_plus, epsilon, delta_k, l, delta_kl};
    out.family_minus = {CutSide::minus, orbit_minus, epsilon, delta_k, l, delta_kl};

    // disjoint supports: the sum of the two families equals their maximum
    out.combined = phi;
    for (double c : out.centers) {
        BumpTerm b{c, delta_kl, epsilon};
        (c < map.disc() ? out.combined.left : out.combined.right).add_bump(b);
    }
    out.combined.holder_K = phi.holder_K + epsilon / std::pow(delta_kl, phi.holder_a);
    out.combined.sup_bound = phi.sup_bound + epsilon;
    out.increment_plus = periodic_average(out.combined, orbit_plus) - periodic_average(phi, orbit_plus);
    out.increment_minus = periodic_average(out.combined, orbit_minus) - periodic_average(phi, orbit_minus);
    return out;
}

PiecewisePotential bump_potential(const BetaMap& map, const BumpFamily& family) {
    PiecewisePotential p = PiecewisePotential::constant(0.0);
    for (double c : merged_centers({&family.orbit})) {
        if (family.epsilon == 0.0) break;
        (c < map.disc() ? p.left : p.right).add_bump({c, family.delta_kl, family.epsilon});
    }
    p.holder_K = family.epsilon / family.delta_kl;
    p.sup_bound = std::fabs(family.epsilon);
    return p;
}

bool boundary_orbits_hit(const BetaMap& map, const std::vector<double>& centers, double radius, std::size_t n_max) {
    for (Base base : {Base::zero, Base::one}) {
        auto orb = orbit(map, base_point(base), n_max);
        for (const auto& q : orb.points) {
            auto it = std::lower_bound(centers.begin(), centers.end(), q.x - radius);
            if (it != centers.end() && std::fabs(*it - q.x) < radius) return true;
            if (it != centers.begin() && std::fabs(*(it - 1) - q.x) < radius) return true;
        }
    }
    return false;
}

std::vector<DecayEntry> bump_boundary_pressure_decay(const BetaMap& map, const BumpFamily& family,
                                                     const std::vector<std::size_t>& l_list,
                                                     const LimsupOptions& opt) {
    std::vector<DecayEntry> out;
    auto centers = merged_centers({&family.orbit});
    for (std::size_t l : l_list) {
        if (l < 1) throw ConfigError("shrink index l must be >= 1");
        BumpFamily f = family;
        f.l = l;
        f.delta_kl = family.delta_k / static_cast<double>(l);
        DecayEntry e;
        e.l = l;
        e.value = family.epsilon == 0.0 ? 0.0 : boundary_pressure_shortcut(map, bump_potential(map, f), opt);
        e.overlap = boundary_orbits_hit(map, centers, f.delta_kl, opt.n_max);
        out.push_back(e);
    }
    return out;
}

DensifyResult densify(const BetaMap& map, const PiecewisePotential& phi, double epsilon, std::size_t budget,
                      const DensifyOptions& opt) {
    if (!(epsilon > 0)) throw ConfigError("densify needs epsilon > 0");

    DensifyResult best;
    best.verdict = h_membership(map, phi, opt.gap);
    best.base_gap = best.verdict.gap_lo;
    if (best.verdict.verdict == Verdict::in_h) {
        best.short_circuit = true;
        return best;
    }

    std::vector<PeriodicOrbit> plus;
    std::vector<PeriodicOrbit> minus;
    for (const auto& rec : cutting_times(map, opt.n_max_cut)) {
        if (!rec.admissible) continue;
        try {
            auto o = periodic_from_cutting(map, rec);
            if (!o.verified) continue;
            (rec.side == CutSide::plus ? plus : minus).push_back(std::move(o));
        } catch (const FixedPointEscaped&) {
        }
    }
    if (plus.empty()) plus = minus;
    if (minus.empty()) minus = plus;
    if (plus.empty()) throw BudgetExhausted("no admissible cutting records with verified periodic orbits", best);

    double best_gap = -std::numeric_limits<double>::infinity();
    std::size_t candidates = 0;
    auto finish = [&](DensifyResult r) {
        if (r.perturbed) r.sup_distance = sup_distance(map, phi, r.perturbed->combined, 100000, false);
        return r;
    };
    const std::size_t K = std::max(plus.size(), minus.size());
    for (std::size_t k = 0; k < K; ++k) {
        const auto& op = plus[std::min(k, plus.size() - 1)];
        const auto& om = minus[std::min(k, minus.size() - 1)];
        for (std::size_t p = 0; p <= opt.max_shrink_power; ++p) {
            if (candidates >= budget) {
                best.candidates = candidates;
                throw BudgetExhausted("densify budget of " + std::to_string(budget) + " candidates exhausted",
                                      finish(best));
            }
            std::size_t l = std::size_t{1} << p;
            ++candidates;
            PerturbedPotential pert;
            try {
                pert = build_perturbed(map, phi, epsilon, op, om, l);
            } catch (const DisjointnessImpossible&) {
                break;
            }
            DensifyResult r;
            r.verdict = h_membership(map, pert.combined, opt.gap, {op, om});
            r.base_gap = best.base_gap;
            r.k = k;
            r.l = l;
            r.n_plus = op.period;
            r.n_minus = om.period;
            r.candidates = candidates;
            bool hit = boundary_orbits_hit(map, pert.centers, pert.family_plus.delta_kl, opt.gap.limsup.n_max);
            r.perturbed = std::move(pert);
            if (r.verdict.verdict == Verdict::in_h) return finish(std::move(r));
            if (r.verdict.gap_lo > best_gap) {
                best_gap = r.verdict.gap_lo;
                best = std::move(r);
            }
            // once supports miss the boundary orbits, shrinking further changes nothing
            if (!hit) break;
        }
    }
    best.candidates = candidates;
    throw BudgetExhausted("no candidate reached the margin", finish(std::move(best)));
}

} // namespace lorenz

#include "lorenz/validate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <unordered_map>

namespace lorenz {

namespace {

using Check = std::function<std::pair<bool, std::string>()>;

struct Suite {
    std::vector<InvariantResult> results;

    void run(const std::string& module, const std::string& name, const Check& fn) {
        InvariantResult r{module, name, false, ""};
        try {
            auto [ok, detail] = fn();
            r.passed = ok;
            r.detail = detail;
        } catch (const Error& e) {
            r.detail = std::string(e.kind()) + ": " + e.what();
        } catch (const std::exception& e) {
            r.detail = e.what();
        }
        results.push_back(std::move(r));
    }
};

std::pair<bool, std::string> worst(double value, double bound) {
    return {value <= bound, "worst " + format_real(value) + " vs bound " + format_real(bound)};
}

} // namespace

std::vector<InvariantResult> run_invariants(const BetaMap& map, const PiecewisePotential& phi,
                                            const ValidateOptions& opt) {
    Suite suite;
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double d = map.disc();
    const double beta = map.beta();

    // ---- maps
    suite.run("maps", "round trip through inverse branches", [&] {
        double w = 0;
        for (std::size_t i = 0; i < opt.samples; ++i) {
            int s = static_cast<int>(i & 1);
            double y = map.image_lo(s) + (map.image_hi(s) - map.image_lo(s)) * unit(rng);
            double x = map.inverse_branch(s == 0 ? Side::left : Side::right, y);
            Side sd = s == 0 ? Side::left : Side::right;
            w = std::max(w, std::fabs(map.eval({x, sd}).x - y));
        }
        return worst(w, 1e-12);
    });
    suite.run("maps", "monotone branches", [&] {
        std::size_t bad = 0;
        for (std::size_t i = 0; i < opt.samples; ++i) {
            double lo = i & 1 ? d + 1e-9 : 0.0;
            double hi = i & 1 ? 1.0 : d - 1e-9;
            double x = lo + (hi - lo) * unit(rng);
            double y = lo + (hi - lo) * unit(rng);
            if (x > y) std::swap(x, y);
            if (x < y && !(map.eval({x}).x < map.eval({y}).x)) ++bad;
        }
        return std::pair{bad == 0, std::to_string(bad) + " violations"};
    });
    suite.run("maps", "side preservation at the discontinuity", [&] {
        auto r = map.eval({d, Side::right});
        auto l = map.eval({d, Side::left});
        bool ok = r.x == 0.0 && r.side == Side::right && l.x == 1.0 && l.side == Side::left;
        return std::pair{ok, std::string("T(d+) = ") + format_real(r.x) + ", T(d-) = " + format_real(l.x)};
    });
    suite.run("maps", "expansion by beta", [&] {
        double w = 0;
        for (std::size_t i = 0; i < opt.samples; ++i) {
            double lo = i & 1 ? d + 1e-9 : 0.0;
            double hi = i & 1 ? 1.0 : d - 1e-9;
            double x = lo + (hi - lo) * unit(rng);
            double y = lo + (hi - lo) * unit(rng);
            w = std::max(w, std::fabs(std::fabs(map.eval({x}).x - map.eval({y}).x) - beta * std::fabs(x - y)));
        }
        return worst(w, 1e-12);
    });

    // ---- symbolic
    std::vector<Cylinder<double>> level;
    std::vector<Cylinder<double>> deeper;
    suite.run("symbolic", "partition property", [&] {
        level = refine(map, opt.depth);
        deeper = refine(map, opt.depth + 1);
        double w = std::fabs(level.front().a) + std::fabs(level.back().b - 1.0);
        for (std::size_t i = 0; i + 1 < level.size(); ++i) {
            if (!(level[i].a < level[i].b)) return std::pair{false, std::string("empty cylinder ") + level[i].word};
            w = std::max(w, std::fabs(level[i + 1].a - level[i].b));
        }
        return worst(w, 1e-12);
    });
    suite.run("symbolic", "itinerary consistency", [&] {
        std::size_t bad = 0;
        for (const auto& c : level)
            if (itinerary(map, SidedPoint<double>{c.mid()}, c.depth) != c.word) ++bad;
        return std::pair{bad == 0, std::to_string(bad) + " mismatches of " + std::to_string(level.size())};
    });
    suite.run("symbolic", "affine consistency", [&] {
        double w = 0;
        for (const auto& c : level) {
            double x = c.a + (c.b - c.a) * (0.05 + 0.9 * unit(rng));
            double y = orbit(map, SidedPoint<double>{x}, c.depth).points.back().x;
            w = std::max(w, std::fabs(y - (c.slope * x + c.intercept)));
        }
        return worst(w, 1e-10);
    });
    suite.run("symbolic", "image of closure inside [0,1]", [&] {
        double w = 0;
        for (const auto& c : level) {
            w = std::max({w, -c.image_lo(), c.image_hi() - 1.0, c.slope * (c.b - c.a) - 1.0});
        }
        return worst(w, 1e-9);
    });
    suite.run("symbolic", "nesting", [&] {
        std::unordered_map<std::string, const Cylinder<double>*> parent;
        for (const auto& c : level) parent[c.word] = &c;
        std::size_t bad = 0;
        for (const auto& c : deeper) {
            auto it = parent.find(c.word.substr(0, c.word.size() - 1));
            if (it == parent.end() || c.a < it->second->a - 1e-12 || c.b > it->second->b + 1e-12) ++bad;
        }
        return std::pair{bad == 0, std::to_string(bad) + " orphans"};
    });
    suite.run("symbolic", "boundary adjacency contains labels", [&] {
        auto adj = boundary_cylinders(map, opt.depth);
        std::size_t bad = 0;
        for (const auto& e : adj.entries)
            for (auto lab : e.labels) {
                double x = boundary_point(map, lab).x;
                if (x < e.cylinder.a - 1e-12 || x > e.cylinder.b + 1e-12) ++bad;
            }
        return std::pair{bad == 0 && adj.entries.size() <= 4, std::to_string(adj.entries.size()) + " entries"};
    });

    // ---- birkhoff
    suite.run("birkhoff", "additivity", [&] {
        double w = 0;
        for (std::size_t i = 0; i < 50; ++i) {
            SidedPoint<double> p{unit(rng)};
            std::size_t n = 1 + rng() % 40;
            std::size_t m = 1 + rng() % 40;
            auto q = orbit(map, p, n).points.back();
            double lhs = birkhoff_sum(map, phi, p, n + m);
            double rhs = birkhoff_sum(map, phi, p, n) + birkhoff_sum(map, phi, q, m);
            w = std::max(w, std::fabs(lhs - rhs) / static_cast<double>(n + m));
        }
        return worst(w, 1e-12 * std::max(1.0, phi.sup_bound));
    });
    suite.run("birkhoff", "scaling", [&] {
        auto phi2 = phi.scaled(2.0);
        bool ok = true;
        for (std::size_t i = 0; i < 50 && ok; ++i) {
            SidedPoint<double> p{unit(rng)};
            ok = birkhoff_sum(map, phi2, p, 25) == 2.0 * birkhoff_sum(map, phi, p, 25);
        }
        return std::pair{ok, std::string("exact doubling")};
    });
    suite.run("birkhoff", "limsup shifts with constants", [&] {
        double w = 0;
        for (Base b : {Base::zero, Base::one}) {
            double a = boundary_limsup(map, phi, b).value;
            double c = boundary_limsup(map, phi.plus_constant(0.75), b).value;
            w = std::max(w, std::fabs(c - a - 0.75));
        }
        return worst(w, 1e-9);
    });
    suite.run("birkhoff", "limsup is 1-Lipschitz in sup norm", [&] {
        double w = -1;
        for (std::size_t i = 0; i < 5; ++i) {
            PiecewisePotential psi = phi;
            for (Piece* pc : {&psi.left, &psi.right}) {
                if (pc->poly.size() < 2) pc->poly.resize(2, 0.0);
                pc->poly[0] += 0.2 * (unit(rng) - 0.5);
                pc->poly[1] += 0.2 * (unit(rng) - 0.5);
            }
            double s = sup_distance(map, phi, psi);
            for (Base b : {Base::zero, Base::one})
                w = std::max(w, std::fabs(boundary_limsup(map, phi, b).value - boundary_limsup(map, psi, b).value) - s);
        }
        return worst(w, 1e-9);
    });
    suite.run("birkhoff", "periodic orbit averages", [&] {
        double w = 0;
        for (const auto& o : enumerate_periodic_orbits(map, 4)) {
            if (o.point == 0.0 || o.point == 1.0) continue;
            double avg = periodic_average(phi, o);
            for (std::size_t k = 1; k <= 3; ++k) {
                double s = birkhoff_sum(map, phi, SidedPoint<double>{o.point}, k * o.period);
                w = std::max(w, std::fabs(s / static_cast<double>(k * o.period) - avg));
            }
        }
        return worst(w, 1e-6);
    });
    suite.run("birkhoff", "declared Hölder constant", [&] {
        auto h = validate_holder(map, phi, 10000, opt.seed);
        return std::pair{h.ok, "max quotient " + format_real(h.max_quotient) + " vs K " + format_real(phi.holder_K)};
    });

    // ---- pressure
    const std::size_t pn = std::min<std::size_t>(opt.depth, 12);
    PressureSeries full;
    PressureSeries bdry;
    suite.run("pressure", "bracket invariants", [&] {
        full = pressure(map, phi, Subject::full, 2, pn);
        bdry = pressure(map, phi, Subject::boundary, 2, pn);
        bool ok = true;
        for (const auto* s : {&full, &bdry})
            for (const auto& b : s->brackets)
                ok = ok && b.lo <= b.hi && b.hi - b.lo <= b.slack / static_cast<double>(b.n) + 1e-9 &&
                     b.cert_lo <= b.cert_hi;
        return std::pair{ok, std::string("depths 2..") + std::to_string(pn)};
    });
    suite.run("pressure", "boundary sum below full sum", [&] {
        double w = -1e300;
        for (std::size_t i = 0; i < full.brackets.size(); ++i) w = std::max(w, bdry.brackets[i].lo - full.brackets[i].hi);
        return worst(w, 1e-12);
    });
    suite.run("pressure", "shortcut matches direct boundary sum", [&] {
        double sc = boundary_pressure_shortcut(map, phi);
        const auto& b = bdry.brackets.back();
        return worst(std::fabs(sc - b.mid()), b.slack / static_cast<double>(b.n) + 0.05);
    });
    suite.run("pressure", "additive constants", [&] {
        auto shifted = pressure(map, phi.plus_constant(1.0), Subject::full, 2, pn);
        double w = std::fabs(shifted.estimate - full.estimate - 1.0);
        GapOptions g;
        g.n_hi = pn;
        bool same = h_membership(map, phi, g).verdict == h_membership(map, phi.plus_constant(1.0), g).verdict;
        return std::pair{w <= 1e-9 && same, "estimate shift error " + format_real(w)};
    });
    suite.run("pressure", "periodic lower bounds below upper certificate", [&] {
        double w = -1e300;
        for (const auto& o : enumerate_periodic_orbits(map, 6))
            w = std::max(w, periodic_orbit_lower_bound(map, phi, o) - full.upper_cert);
        return worst(w, 1e-6);
    });

    // ---- cutting
    std::vector<CuttingRecord<double>> records;
    suite.run("cutting", "recursion soundness and critical tracking", [&] {
        double w = 0;
        double crit = 0;
        for (CutSide side : {CutSide::plus, CutSide::minus}) {
            auto st = aux_initial(map, side);
            for (std::size_t n = 0; n < opt.n_max_cut; ++n) {
                double lo = st.lo, hi = st.hi;
                if (st.contains_D) (st.critical.x < d ? hi : lo) = d;
                auto nx = aux_step(map, st);
                w = std::max(w, std::fabs((nx.hi - nx.lo) - beta * (hi - lo)));
                double end = side == CutSide::plus ? nx.lo : nx.hi;
                crit = std::max(crit, std::fabs(nx.critical.x - end));
                st = nx;
            }
        }
        records = cutting_times(map, opt.n_max_cut);
        return std::pair{w <= 1e-9 && crit <= 1e-6,
                         "stretch error " + format_real(w) + ", critical drift " + format_real(crit)};
    });
    suite.run("cutting", "covering at admissible cutting times", [&] {
        std::size_t bad = 0, n = 0;
        for (const auto& r : records)
            if (r.admissible) {
                ++n;
                if (!covers_closure(r.cylinder)) ++bad;
            }
        return std::pair{bad == 0, std::to_string(bad) + " failures over " + std::to_string(n) + " admissible"};
    });
    std::vector<PeriodicOrbit> orbits;
    suite.run("cutting", "periodic verification", [&] {
        std::size_t bad = 0;
        for (const auto& r : records) {
            if (!r.admissible) continue;
            try {
                auto o = periodic_from_cutting(map, r);
                if (!o.verified || itinerary(map, SidedPoint<double>{o.point}, 1) != o.word.substr(0, 1)) ++bad;
                orbits.push_back(o);
            } catch (const FixedPointEscaped&) {
                ++bad;
            }
        }
        return std::pair{bad == 0, std::to_string(orbits.size()) + " orbits, " + std::to_string(bad) + " failures"};
    });
    suite.run("cutting", "shrinking cylinders", [&] {
        std::size_t bad = 0;
        for (CutSide side : {CutSide::plus, CutSide::minus}) {
            double prev = 2.0;
            for (const auto& r : records) {
                if (r.side != side) continue;
                double len = r.cylinder.b - r.cylinder.a;
                if (len > prev + 1e-15) ++bad;
                prev = len;
            }
        }
        return std::pair{bad == 0, std::to_string(bad) + " increases"};
    });

    // ---- perturb
    const PeriodicOrbit* op = nullptr;
    const PeriodicOrbit* om = nullptr;
    for (const auto& o : orbits) {
        if (o.side == CutSide::plus && !op) op = &o;
        if (o.side == CutSide::minus && !om) om = &o;
    }
    if (!op) op = om;
    if (!om) om = op;
    if (op) {
        PerturbedPotential pert;
        suite.run("perturb", "sup-norm contract", [&] {
            pert = build_perturbed(map, phi, opt.epsilon, *op, *om, 2);
            double s = sup_distance(map, phi, pert.combined, 100000, false);
            double peak = 0;
            for (double c : pert.centers) {
                int sym = c < d ? 0 : 1;
                peak = std::max(peak, std::fabs(pert.combined.eval_piece(sym, c) - phi.eval_piece(sym, c) - opt.epsilon));
            }
            return std::pair{s <= opt.epsilon + 1e-12 && peak <= 1e-12,
                             "sampled sup " + format_real(s) + ", peak error " + format_real(peak)};
        });
        suite.run("perturb", "average increment", [&] {
            double w = std::max(std::fabs(pert.increment_plus - opt.epsilon), std::fabs(pert.increment_minus - opt.epsilon));
            return worst(w, 1e-12);
        });
        suite.run("perturb", "boundary stability", [&] {
            if (boundary_orbits_hit(map, pert.centers, pert.family_plus.delta_kl, 2000))
                return std::pair{true, std::string("supports meet a boundary orbit; not applicable")};
            double a = boundary_pressure_shortcut(map, phi);
            double b = boundary_pressure_shortcut(map, pert.combined);
            return std::pair{a == b, "shortcut " + format_real(a) + " vs " + format_real(b)};
        });
        suite.run("perturb", "Hölder preservation", [&] {
            auto h = validate_holder(map, pert.combined, 10000, opt.seed);
            return std::pair{h.ok, "max quotient " + format_real(h.max_quotient) + " vs K " +
                                       format_real(pert.combined.holder_K)};
        });
        suite.run("perturb", "pointwise limit in l", [&] {
            BumpFamily f = pert.family_plus;
            double x = std::clamp(f.orbit.orbit.front() + 0.5 * f.delta_k, 0.0, 1.0);
            f.l = 4;
            f.delta_kl = f.delta_k / 4;
            bool ok = bump_eval(f, x) == 0.0 && bump_eval(f, f.orbit.orbit.front()) == f.epsilon;
            return std::pair{ok, std::string("off-orbit value vanishes, on-orbit value stays epsilon")};
        });
    }
    return suite.results;
}

} // namespace lorenz

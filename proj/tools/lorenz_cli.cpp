#include "lorenz/validate.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace lorenz;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailure = 1, kConfig = 2, kBudget = 3, kNotDecided = 4, kDegenerate = 5 };

struct Common {
    std::string map_path;
    std::string potential_path;
    std::uint64_t seed = 1;
    std::string format = "csv";
    std::string out;
    std::string plot_data;
};

struct Context {
    MapSpec spec;
    BetaMap map{2.0, 0.0};
    PiecewisePotential phi = PiecewisePotential::constant(0.0);
    std::uint64_t budget = kDefaultRefineBudget;
};

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

Context load(const Common& c) {
    Context ctx;
    if (c.map_path.empty()) throw ConfigError("--map is required");
    ctx.spec = parse_map_spec(read_json_file(c.map_path));
    ctx.map = make_float_map(ctx.spec);
    if (!c.potential_path.empty()) {
        try {
            ctx.phi = parse_potential(read_json_file(c.potential_path));
        } catch (const json::exception& e) {
            throw ConfigError(std::string("potential: ") + e.what());
        }
    }
    if (const char* env = std::getenv("LORENZ_PRESSURE_BUDGET")) {
        try {
            ctx.budget = std::stoull(env);
        } catch (const std::exception&) {
            throw ConfigError("LORENZ_PRESSURE_BUDGET is not a positive integer");
        }
    }
    return ctx;
}

std::string fmt(double x) { return format_real(x); }

// One writer per run: header block first, then the body, in order.
class Output {
public:
    Output(const Common& c, const Context& ctx) : common_(c), ctx_(ctx) {}

    std::vector<std::pair<std::string, std::string>> header() const {
        return {{"tool", "lorenz"},
                {"version", LORENZ_VERSION},
                {"map", "beta=" + fmt(ctx_.spec.beta) + " alpha=" + fmt(ctx_.spec.alpha) +
                            " disc=" + fmt(ctx_.map.disc()) + " arithmetic=" +
                            (ctx_.spec.arithmetic == Arithmetic::rational ? "rational" : "float64") +
                            (ctx_.map.steep_branches() ? "" : " beta_not_above_sqrt2")},
                {"potential_hash", potential_hash(ctx_.phi)},
                {"tolerances", "tau_d=" + fmt(ctx_.map.tau_d()) + " tau_cyl=" + fmt(kTauCyl) +
                                   " tau_cut=" + fmt(kTauCut)},
                {"budget", std::to_string(ctx_.budget)},
                {"seed", std::to_string(common_.seed)}};
    }

    void csv(const std::vector<std::string>& columns, const std::vector<std::vector<std::string>>& rows,
             const json& extra = json::object()) {
        std::ostringstream os;
        for (const auto& [k, v] : header()) os << "# " << k << ": " << v << "\n";
        for (const auto& [k, v] : extra.items())
            os << "# " << k << ": " << (v.is_number_float() ? fmt(v.get<double>()) : v.dump()) << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
        os << "\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
            os << "\n";
        }
        emit(os.str());
    }

    void json_doc(json body) {
        json h = json::object();
        for (const auto& [k, v] : header()) h[k] = v;
        body["header"] = h;
        emit(body.dump(2) + "\n");
    }

    void table(const std::vector<std::string>& columns, const std::vector<std::vector<std::string>>& rows,
               const json& extra = json::object()) {
        if (common_.format == "json") {
            json arr = json::array();
            for (const auto& r : rows) {
                json o = json::object();
                for (std::size_t i = 0; i < columns.size(); ++i) o[columns[i]] = r[i];
                arr.push_back(o);
            }
            json body = extra;
            body["rows"] = arr;
            json_doc(body);
        } else {
            csv(columns, rows, extra);
        }
    }

    void plot(const std::vector<std::tuple<std::string, std::size_t, double>>& series) {
        if (common_.plot_data.empty()) return;
        std::ofstream f(common_.plot_data);
        if (!f) throw ConfigError("cannot write " + common_.plot_data);
        f << "series,n,value\n";
        for (const auto& [s, n, v] : series) f << s << "," << n << "," << fmt(v) << "\n";
    }

private:
    void emit(const std::string& text) {
        if (common_.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(common_.out);
            if (!f) throw ConfigError("cannot write " + common_.out);
            f << text;
        }
    }

    const Common& common_;
    const Context& ctx_;
};

std::pair<std::size_t, std::size_t> parse_range(const std::string& s) {
    auto pos = s.find("..");
    try {
        if (pos == std::string::npos) {
            std::size_t n = std::stoul(s);
            return {n, n};
        }
        return {std::stoul(s.substr(0, pos)), std::stoul(s.substr(pos + 2))};
    } catch (const std::exception&) {
        throw ConfigError("bad range '" + s + "', expected a..b");
    }
}

Side parse_side(const std::string& s) {
    if (s == "left") return Side::left;
    if (s == "right") return Side::right;
    if (s == "none") return Side::none;
    throw ConfigError("side must be left, right or none");
}

template <class S>
std::vector<std::vector<std::string>> cylinder_rows(const std::vector<Cylinder<S>>& cyls) {
    std::vector<std::vector<std::string>> rows;
    using T = ScalarTraits<S>;
    for (const auto& c : cyls)
        rows.push_back({c.word, T::to_string(c.a), T::to_string(c.b), T::to_string(c.slope), T::to_string(c.intercept)});
    return rows;
}

template <class S>
void run_cutting(const BasicBetaMap<S>& map, std::size_t n_max, const std::string& side, bool periodic_only,
                 Output& out) {
    CuttingOptions co;
    co.plus = side != "minus";
    co.minus = side != "plus";
    auto recs = cutting_times(map, n_max, co);
    std::vector<std::vector<std::string>> rows;
    using T = ScalarTraits<S>;
    for (const auto& r : recs) {
        std::string p = "", res = "", fres = "";
        if (r.admissible) {
            try {
                auto o = periodic_from_cutting(map, r);
                p = fmt(o.point);
                res = fmt(o.residual);
                fres = fmt(o.forward_residual);
            } catch (const FixedPointEscaped&) {
                p = "escaped";
            }
        } else if (periodic_only) {
            continue;
        }
        rows.push_back({std::to_string(r.N), to_string(r.side), r.admissible ? "true" : "false",
                        T::to_string(r.cylinder.a), T::to_string(r.cylinder.b), p, res, fres,
                        r.tolerance_sensitive ? "true" : "false"});
    }
    out.table({"N", "side", "admissible", "a", "b", "p", "residual", "forward_residual", "tolerance_sensitive"},
              rows);
}

void add_common(CLI::App* sub, Common& c, bool potential = true) {
    sub->add_option("--map", c.map_path, "map spec JSON file")->required();
    if (potential) sub->add_option("--potential", c.potential_path, "potential JSON file (default: zero)");
    sub->add_option("--seed", c.seed, "seed for randomized sampling");
    sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", c.out, "write output here instead of stdout");
    sub->add_option("--plot-data", c.plot_data, "tidy CSV (series,n,value) for plotting");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thermodynamic formalism toolkit for generalized beta-transformations"};
    app.require_subcommand(1);
    Common c;

    auto* orbit_cmd = app.add_subcommand("orbit", "sided orbit of a point");
    add_common(orbit_cmd, c, false);
    double ox = 0.0;
    std::string oside = "none";
    std::size_t on = 10;
    orbit_cmd->add_option("--x", ox)->required();
    orbit_cmd->add_option("--side", oside);
    orbit_cmd->add_option("--n", on);

    auto* cyl_cmd = app.add_subcommand("cylinders", "depth-n cylinders");
    add_common(cyl_cmd, c, false);
    std::size_t depth = 2;
    bool boundary_only = false;
    cyl_cmd->add_option("--depth", depth)->required();
    cyl_cmd->add_flag("--boundary", boundary_only, "only the cylinders adjacent to 0, d, 1");

    auto* ent_cmd = app.add_subcommand("entropy", "(1/n) log of cylinder counts");
    add_common(ent_cmd, c, false);
    std::size_t ent_n = 20;
    ent_cmd->add_option("--n-max", ent_n);

    auto* pr_cmd = app.add_subcommand("pressure", "pressure brackets over a depth range");
    add_common(pr_cmd, c);
    std::string subject = "full";
    std::string range = "4..18";
    pr_cmd->add_option("--subject", subject)->check(CLI::IsMember({"full", "boundary"}));
    pr_cmd->add_option("--n", range);

    auto* bd_cmd = app.add_subcommand("boundary", "boundary Birkhoff limsups and the shortcut value");
    add_common(bd_cmd, c);
    LimsupOptions lopt;
    bd_cmd->add_option("--n-max", lopt.n_max);
    bd_cmd->add_option("--window", lopt.window);

    auto* gap_cmd = app.add_subcommand("gap", "membership test for the good-potential set");
    add_common(gap_cmd, c);
    GapOptions gopt;
    std::string gap_range = "4..16";
    bool strict = false;
    gap_cmd->add_option("--margin", gopt.margin);
    gap_cmd->add_option("--n", gap_range);
    gap_cmd->add_option("--max-period", gopt.max_period);
    gap_cmd->add_flag("--strict", strict, "exit 4 unless the verdict is IN_H");

    auto* cut_cmd = app.add_subcommand("cutting", "cutting times and admissibility");
    add_common(cut_cmd, c, false);
    std::size_t cut_n = 40;
    std::string cut_side = "both";
    cut_cmd->add_option("--n-max", cut_n);
    cut_cmd->add_option("--side", cut_side)->check(CLI::IsMember({"plus", "minus", "both"}));

    auto* per_cmd = app.add_subcommand("periodic", "periodic points at admissible cutting times");
    add_common(per_cmd, c);
    std::size_t per_n = 40;
    std::string per_side = "both";
    std::string per_base = "zero";
    per_cmd->add_option("--n-max", per_n);
    per_cmd->add_option("--side", per_side)->check(CLI::IsMember({"plus", "minus", "both"}));
    per_cmd->add_option("--base", per_base, "reference base for orbit averages")
        ->check(CLI::IsMember({"zero", "one"}));

    auto* den_cmd = app.add_subcommand("densify", "perturb a potential into the good set");
    add_common(den_cmd, c);
    double eps = 0.3;
    std::size_t budget = 200;
    std::string den_out;
    DensifyOptions dopt;
    den_cmd->add_option("--epsilon", eps)->required();
    den_cmd->add_option("--budget", budget);
    den_cmd->add_option("--n-max-cut", dopt.n_max_cut);
    den_cmd->add_option("--potential-out", den_out, "write the perturbed potential JSON here");

    auto* val_cmd = app.add_subcommand("validate", "run the invariant suite");
    add_common(val_cmd, c);
    ValidateOptions vopt;
    val_cmd->add_option("--depth", vopt.depth);
    val_cmd->add_option("--epsilon", vopt.epsilon);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        Context ctx = load(c);
        Output out(c, ctx);
        const BetaMap& map = ctx.map;
        const bool rational = ctx.spec.arithmetic == Arithmetic::rational;

        if (orbit_cmd->parsed()) {
            auto orb = orbit(map, SidedPoint<double>{ox, parse_side(oside)}, on);
            std::vector<std::vector<std::string>> rows;
            for (std::size_t i = 0; i < orb.points.size(); ++i)
                rows.push_back({std::to_string(i), fmt(orb.points[i].x), to_string(orb.points[i].side)});
            json extra = {{"hit_disc_at", orb.hit_disc_at ? json(*orb.hit_disc_at) : json(nullptr)}};
            out.table({"i", "x", "side"}, rows, extra);
        } else if (cyl_cmd->parsed()) {
            auto emit = [&](const auto& m) {
                using S = std::decay_t<decltype(m.beta())>;
                std::vector<Cylinder<S>> cyls;
                if (boundary_only) {
                    for (const auto& e : boundary_cylinders(m, depth).entries) cyls.push_back(e.cylinder);
                } else {
                    cyls = refine(m, depth, ctx.budget);
                }
                out.table({"word", "a", "b", "slope", "intercept"}, cylinder_rows(cyls));
            };
            if (rational) emit(make_rational_map(ctx.spec)); else emit(map);
        } else if (ent_cmd->parsed()) {
            auto es = entropy_estimate(map, ent_n, ctx.budget);
            std::vector<std::vector<std::string>> rows;
            std::vector<std::tuple<std::string, std::size_t, double>> plot;
            for (std::size_t i = 0; i < es.values.size(); ++i) {
                rows.push_back({std::to_string(es.values[i].first), std::to_string(es.counts[i]), fmt(es.values[i].second)});
                plot.emplace_back("entropy", es.values[i].first, es.values[i].second);
            }
            out.table({"n", "count", "value"}, rows,
                      {{"target", es.target}, {"steep_branches", es.steep_branches}});
            out.plot(plot);
        } else if (pr_cmd->parsed()) {
            auto [lo, hi] = parse_range(range);
            PressureOptions po;
            po.budget = ctx.budget;
            auto s = pressure(map, ctx.phi, subject == "full" ? Subject::full : Subject::boundary, lo, hi, po);
            std::vector<std::vector<std::string>> rows;
            std::vector<std::tuple<std::string, std::size_t, double>> plot;
            for (const auto& b : s.brackets) {
                rows.push_back({std::to_string(b.n), fmt(b.lo), fmt(b.hi), fmt(b.cert_lo), fmt(b.cert_hi),
                                std::to_string(b.count)});
                plot.emplace_back("lo", b.n, b.lo);
                plot.emplace_back("hi", b.n, b.hi);
                plot.emplace_back("cert_lo", b.n, b.cert_lo);
                plot.emplace_back("cert_hi", b.n, b.cert_hi);
            }
            out.table({"n", "lo", "hi", "cert_lo", "cert_hi", "count"}, rows,
                      {{"estimate", s.estimate},
                       {"upper_cert", s.upper_cert},
                       {"upper_cert_rigorous", s.upper_cert_rigorous},
                       {"slack", distortion_constant(map, ctx.phi)}});
            out.plot(plot);
        } else if (bd_cmd->parsed()) {
            std::vector<std::vector<std::string>> rows;
            std::vector<std::tuple<std::string, std::size_t, double>> plot;
            double shortcut = -INFINITY;
            for (Base b : {Base::zero, Base::one}) {
                auto est = boundary_limsup(map, ctx.phi, b, lopt);
                shortcut = std::max(shortcut, est.value);
                rows.push_back({to_string(b), to_string(est.mode), fmt(est.value),
                                est.n0 ? std::to_string(*est.n0) : "", std::to_string(est.window),
                                est.tolerance_sensitive ? "true" : "false"});
                for (const auto& [n, v] : est.series) plot.emplace_back(std::string("limsup_") + to_string(b), n, v);
            }
            rows.push_back({"max", "shortcut", fmt(shortcut), "", "", ""});
            out.table({"base", "mode", "value", "n0", "window", "tolerance_sensitive"}, rows);
            out.plot(plot);
        } else if (gap_cmd->parsed()) {
            auto [lo, hi] = parse_range(gap_range);
            gopt.n_lo = lo;
            gopt.n_hi = hi;
            gopt.pressure.budget = ctx.budget;
            auto v = h_membership(map, ctx.phi, gopt);
            json body = to_json(v);
            if (c.format == "csv") {
                out.table({"verdict", "gap_lo", "gap_plus", "gap_minus", "full_lower", "boundary_value"},
                          {{to_string(v.verdict), fmt(v.gap_lo), fmt(v.gap_plus), fmt(v.gap_minus),
                            fmt(v.full_lower), fmt(v.boundary_value)}});
            } else {
                out.json_doc(body);
            }
            std::vector<std::tuple<std::string, std::size_t, double>> plot;
            for (const auto& b : v.full_pressure.brackets) {
                plot.emplace_back("cert_lo", b.n, b.cert_lo);
                plot.emplace_back("cert_hi", b.n, b.cert_hi);
            }
            out.plot(plot);
            if (strict && v.verdict != Verdict::in_h) return kNotDecided;
        } else if (cut_cmd->parsed()) {
            if (rational) run_cutting(make_rational_map(ctx.spec), cut_n, cut_side, false, out);
            else run_cutting(map, cut_n, cut_side, false, out);
        } else if (per_cmd->parsed()) {
            CuttingOptions co;
            co.plus = per_side != "minus";
            co.minus = per_side != "plus";
            std::vector<PeriodicOrbit> orbits;
            auto collect = [&](const auto& m) {
                for (const auto& r : cutting_times(m, per_n, co)) {
                    if (!r.admissible) continue;
                    try {
                        orbits.push_back(periodic_from_cutting(m, r));
                    } catch (const FixedPointEscaped&) {
                    }
                }
            };
            if (rational) collect(make_rational_map(ctx.spec)); else collect(map);
            auto ref = boundary_limsup(map, ctx.phi, per_base == "zero" ? Base::zero : Base::one);
            std::vector<std::vector<std::string>> rows;
            std::vector<std::tuple<std::string, std::size_t, double>> plot;
            for (const auto& o : orbits) {
                double avg = periodic_average(ctx.phi, o);
                rows.push_back({std::to_string(o.period), to_string(o.side), fmt(o.point), o.word, fmt(o.residual),
                                fmt(o.forward_residual), o.verified ? "true" : "false", fmt(avg), fmt(ref.value)});
                plot.emplace_back(std::string("average_") + to_string(o.side), o.period, avg);
            }
            out.table({"N", "side", "p", "word", "residual", "forward_residual", "verified", "average", "reference"},
                      rows);
            out.plot(plot);
        } else if (den_cmd->parsed()) {
            dopt.gap.pressure.budget = ctx.budget;
            DensifyResult r;
            int rc = kOk;
            try {
                r = densify(map, ctx.phi, eps, budget, dopt);
            } catch (const BudgetExhausted& e) {
                std::cerr << "BudgetExhausted: " << e.what() << "\n";
                r = e.best();
                rc = kBudget;
            }
            if (!den_out.empty()) {
                std::ofstream f(den_out);
                if (!f) throw ConfigError("cannot write " + den_out);
                f << to_json(r.perturbed ? r.perturbed->combined : ctx.phi).dump(2) << "\n";
            }
            json body = {{"verdict", to_json(r.verdict)},
                         {"base_gap", r.base_gap},
                         {"short_circuit", r.short_circuit},
                         {"k", r.k},
                         {"l", r.l},
                         {"N_plus", r.n_plus},
                         {"N_minus", r.n_minus},
                         {"candidates", r.candidates},
                         {"sup_distance", r.sup_distance}};
            if (c.format == "csv") {
                out.table({"verdict", "gap_lo", "base_gap", "k", "l", "N_plus", "N_minus", "candidates",
                           "sup_distance", "short_circuit"},
                          {{to_string(r.verdict.verdict), fmt(r.verdict.gap_lo), fmt(r.base_gap), std::to_string(r.k),
                            std::to_string(r.l), std::to_string(r.n_plus), std::to_string(r.n_minus),
                            std::to_string(r.candidates), fmt(r.sup_distance), r.short_circuit ? "true" : "false"}});
            } else {
                out.json_doc(body);
            }
            return rc;
        } else if (val_cmd->parsed()) {
            vopt.seed = c.seed;
            auto results = run_invariants(map, ctx.phi, vopt);
            std::vector<std::vector<std::string>> rows;
            bool all = true;
            for (const auto& r : results) {
                rows.push_back({r.module, r.name, r.passed ? "PASS" : "FAIL", r.detail});
                all = all && r.passed;
            }
            for (auto& row : rows)
                for (auto& cell : row)
                    if (cell.find(',') != std::string::npos) cell = "\"" + cell + "\"";
            out.table({"module", "invariant", "status", "detail"}, rows);
            return all ? kOk : kFailure;
        }
        return kOk;
    } catch (const DegenerateComponent& e) {
        std::cerr << e.kind() << ": " << e.what() << "\n";
        return kDegenerate;
    } catch (const BudgetExceeded& e) {
        std::cerr << e.kind() << ": " << e.what() << "\n";
        return kBudget;
    } catch (const ConfigError& e) {
        std::cerr << e.kind() << ": " << e.what() << "\n";
        return kConfig;
    } catch (const DomainError& e) {
        std::cerr << e.kind() << ": " << e.what() << "\n";
        return kConfig;
    } catch (const SideRequired& e) {
        std::cerr << e.kind() << ": " << e.what() << "\n";
        return kConfig;
    } catch (const RangeError& e) {
        std::cerr << e.kind() << ": " << e.what() << "\n";
        return kConfig;
    } catch (const Error& e) {
        std::cerr << e.kind() << ": " << e.what() << "\n";
        return kFailure;
    } catch (const json::exception& e) {
        std::cerr << "ConfigError: " << e.what() << "\n";
        return kConfig;
    }
}

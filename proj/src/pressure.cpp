#include "lorenz/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lorenz {

const char* to_string(Subject s) { return s == Subject::full ? "full" : "boundary"; }
const char* to_string(Verdict v) { return v == Verdict::in_h ? "IN_H" : "NOT_DECIDED"; }

double distortion_constant(const BetaMap& map, const PiecewisePotential& phi) {
    double lam_a = std::pow(1.0 / map.beta(), phi.holder_a);
    return phi.holder_K / (1.0 - lam_a);
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kCoverTol = 1e-12;

void check_finite(double s) {
    if (!std::isfinite(s)) throw OverflowGuard("non-finite Birkhoff sum in partition sum");
}

double log_sum_exp(const std::vector<double>& v, double vmax) {
    if (v.empty()) return kNegInf;
    double acc = 0.0;
    for (double s : v) acc += std::exp(s - vmax);
    return vmax + std::log(acc);
}

// Best lower bound over target intervals J = [i/g, j/g]: the cylinders lying
// in J whose n-th image covers J can be concatenated freely.
double cover_lower_bound(const std::vector<Cylinder<double>>& level, const std::vector<double>& sums, double vmax,
                         std::size_t n, double C, std::size_t g) {
    const std::size_t m = g + 1;
    std::vector<double> acc(m * m, 0.0);
    const double gd = static_cast<double>(g);
    const double eps = kCoverTol * gd;
    auto clampi = [&](double v) { return std::clamp(v, 0.0, gd); };
    for (std::size_t k = 0; k < level.size(); ++k) {
        const auto& c = level[k];
        double u = c.image_lo();
        double v = c.image_hi();
        double i0 = clampi(std::ceil(u * gd - eps));
        double i1 = clampi(std::floor(c.a * gd + eps));
        double j0 = clampi(std::ceil(c.b * gd - eps));
        double j1 = clampi(std::floor(v * gd + eps));
        if (i0 > i1 || j0 > j1) continue;
        double w = std::exp(sums[k] - vmax);
        for (auto i = static_cast<std::size_t>(i0); i <= static_cast<std::size_t>(i1); ++i) {
            double* row = acc.data() + i * m;
            for (auto j = std::max(static_cast<std::size_t>(j0), i + 1); j <= static_cast<std::size_t>(j1); ++j)
                row[j] += w;
        }
    }
    double best = kNegInf;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (acc[i * m + j] > 0) best = std::max(best, std::log(acc[i * m + j]) + vmax);
    if (best == kNegInf) return kNegInf;
    return (best - C) / static_cast<double>(n);
}

PressureBracket full_bracket(const BetaMap& map, const PiecewisePotential& phi, const std::vector<Cylinder<double>>& level,
                             std::size_t n, double C, const PressureOptions& opt) {
    std::vector<double> sums(level.size());
    double vmax = kNegInf;
    for (std::size_t k = 0; k < level.size(); ++k) {
        double s = birkhoff_sum_word(map, phi, level[k].mid(), level[k].word);
        check_finite(s);
        sums[k] = s;
        vmax = std::max(vmax, s);
    }
    PressureBracket b;
    b.n = n;
    b.slack = C;
    b.count = level.size();
    double nd = static_cast<double>(n);
    b.lo = log_sum_exp(sums, vmax) / nd;
    b.hi = b.lo + C / nd;
    b.cert_hi = b.hi;
    b.cert_lo = std::min(cover_lower_bound(level, sums, vmax, n, C, opt.cover_grid), b.cert_hi);
    return b;
}

PressureBracket boundary_bracket(const BetaMap& map, const PiecewisePotential& phi, std::size_t n, double C) {
    auto adj = boundary_cylinders(map, n);
    std::vector<double> sums;
    double vmax = kNegInf;
    for (const auto& e : adj.entries) {
        double s = birkhoff_sum_word(map, phi, e.cylinder.mid(), e.cylinder.word);
        check_finite(s);
        sums.push_back(s);
        vmax = std::max(vmax, s);
    }
    PressureBracket b;
    b.n = n;
    b.slack = C;
    b.count = sums.size();
    double nd = static_cast<double>(n);
    b.lo = log_sum_exp(sums, vmax) / nd;
    b.hi = b.lo + C / nd;
    // at most four terms: the log of the count washes out, the largest term stays
    b.cert_lo = (vmax - C) / nd;
    b.cert_hi = (vmax + C) / nd;
    return b;
}

} // namespace

double PressureSeries::lower_cert() const {
    double v = kNegInf;
    for (const auto& b : brackets) v = std::max(v, b.cert_lo);
    return v;
}

double PressureSeries::max_width_tail(std::size_t window) const {
    double w = 0.0;
    std::size_t start = brackets.size() > window ? brackets.size() - window : 0;
    for (std::size_t i = start; i < brackets.size(); ++i) w = std::max(w, brackets[i].width());
    return w;
}

PressureBracket partition_sum(const BetaMap& map, const PiecewisePotential& phi, std::size_t n, Subject subject,
                              const PressureOptions& opt) {
    if (n < 1) throw ConfigError("partition_sum depth must be >= 1");
    double C = distortion_constant(map, phi);
    if (subject == Subject::boundary) return boundary_bracket(map, phi, n, C);
    auto level = refine(map, n, opt.budget);
    return full_bracket(map, phi, level, n, C, opt);
}

PressureSeries pressure(const BetaMap& map, const PiecewisePotential& phi, Subject subject, std::size_t n_lo,
                        std::size_t n_hi, const PressureOptions& opt) {
    if (n_lo < 1 || n_hi < n_lo) throw ConfigError("pressure needs 1 <= n_lo <= n_hi");
    PressureSeries out;
    out.subject = subject;
    double C = distortion_constant(map, phi);
    if (subject == Subject::full) {
        RefineBudget budget{opt.budget, 0};
        auto level = root_level<double>();
        for (std::size_t n = 1; n <= n_hi; ++n) {
            level = refine_step(map, level, budget);
            if (n >= n_lo) out.brackets.push_back(full_bracket(map, phi, level, n, C, opt));
        }
    } else {
        for (std::size_t n = n_lo; n <= n_hi; ++n) out.brackets.push_back(boundary_bracket(map, phi, n, C));
    }
    std::size_t w = std::max<std::size_t>(1, std::min(opt.window, out.brackets.size()));
    out.estimate = kNegInf;
    for (std::size_t i = out.brackets.size() - w; i < out.brackets.size(); ++i)
        out.estimate = std::max(out.estimate, out.brackets[i].mid());
    if (subject == Subject::full) {
        out.upper_cert = std::numeric_limits<double>::infinity();
        for (const auto& b : out.brackets) out.upper_cert = std::min(out.upper_cert, b.hi);
        out.upper_cert_rigorous = true;
    } else {
        out.upper_cert = kNegInf;
        for (std::size_t i = out.brackets.size() - w; i < out.brackets.size(); ++i)
            out.upper_cert = std::max(out.upper_cert, out.brackets[i].cert_hi);
        out.upper_cert_rigorous = false;
    }
    return out;
}

double boundary_pressure_shortcut(const BetaMap& map, const PiecewisePotential& phi, const LimsupOptions& opt) {
    double a = boundary_limsup(map, phi, Base::zero, opt).value;
    double b = boundary_limsup(map, phi, Base::one, opt).value;
    return std::max(a, b);
}

double periodic_orbit_lower_bound(const BetaMap&, const PiecewisePotential& phi, const PeriodicOrbit& orbit) {
    if (!orbit.verified)
        throw UnverifiedOrbit("periodic orbit of word " + orbit.word + " failed verification");
    return periodic_average(phi, orbit);
}

std::vector<PeriodicOrbit> enumerate_periodic_orbits(const BetaMap& map, std::size_t max_period) {
    std::vector<PeriodicOrbit> out;
    for (std::size_t N = 1; N <= max_period; ++N) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << N); ++mask) {
            std::string w(N, '0');
            for (std::size_t i = 0; i < N; ++i)
                if (mask >> (N - 1 - i) & 1) w[i] = '1';
            auto o = solve_periodic_word(map, w);
            if (o.verified) out.push_back(std::move(o));
        }
    }
    return out;
}

GapVerdict h_membership(const BetaMap& map, const PiecewisePotential& phi, const GapOptions& opt,
                        const std::vector<PeriodicOrbit>& extra_orbits) {
    GapVerdict v;
    v.margin = opt.margin;
    v.full_pressure = pressure(map, phi, Subject::full, opt.n_lo, opt.n_hi, opt.pressure);
    v.full_lower = v.full_pressure.lower_cert();
    v.full_lower_source = "cover";
    auto consider = [&](const PeriodicOrbit& o) {
        if (!o.verified) return;
        double lb = periodic_orbit_lower_bound(map, phi, o);
        if (lb > v.full_lower) {
            v.full_lower = lb;
            v.full_lower_source = "periodic:" + o.word;
        }
    };
    for (const auto& o : enumerate_periodic_orbits(map, opt.max_period)) consider(o);
    for (const auto& o : extra_orbits) consider(o);
    v.limsup_zero = boundary_limsup(map, phi, Base::zero, opt.limsup).value;
    v.limsup_one = boundary_limsup(map, phi, Base::one, opt.limsup).value;
    v.boundary_value = std::max(v.limsup_zero, v.limsup_one);
    v.gap_lo = v.full_lower - v.boundary_value;
    v.gap_plus = v.full_lower - v.limsup_zero;
    v.gap_minus = v.full_lower - v.limsup_one;
    v.verdict = v.gap_lo > opt.margin ? Verdict::in_h : Verdict::not_decided;
    return v;
}

nlohmann::json to_json(const GapVerdict& v) {
    nlohmann::json brackets = nlohmann::json::array();
    for (const auto& b : v.full_pressure.brackets)
        brackets.push_back({{"n", b.n},
                            {"lo", b.lo},
                            {"hi", b.hi},
                            {"cert_lo", b.cert_lo},
                            {"cert_hi", b.cert_hi},
                            {"count", b.count}});
    return {{"verdict", to_string(v.verdict)},
            {"margin", v.margin},
            {"gap_lo", v.gap_lo},
            {"gap_plus", v.gap_plus},
            {"gap_minus", v.gap_minus},
            {"full_lower", v.full_lower},
            {"full_lower_source", v.full_lower_source},
            {"boundary_value", v.boundary_value},
            {"limsup_zero", v.limsup_zero},
            {"limsup_one", v.limsup_one},
            {"full_pressure",
             {{"estimate", v.full_pressure.estimate},
              {"upper_cert", v.full_pressure.upper_cert},
              {"upper_cert_label", "certified upper bound via submultiplicativity"},
              {"brackets", brackets}}}};
}

} // namespace lorenz

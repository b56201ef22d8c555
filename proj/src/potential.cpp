#include "lorenz/potential.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace lorenz {

double BumpTerm::operator()(double x) const {
    double r = std::fabs(x - center);
    if (r >= radius) return 0.0;
    return height * (1.0 - r / radius);
}

double Piece::poly_eval(double x) const {
    double v = 0.0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) v = v * x + *it;
    return v;
}

double Piece::eval(double x) const {
    double v = poly_eval(x);
    if (bumps_.empty()) return v;
    auto it = std::lower_bound(bumps_.begin(), bumps_.end(), x - max_radius_,
                               [](const BumpTerm& b, double key) { return b.center < key; });
    for (; it != bumps_.end() && it->center <= x + max_radius_; ++it) v += (*it)(x);
    return v;
}

void Piece::add_bump(const BumpTerm& b) {
    if (!(b.radius > 0)) throw ConfigError("bump radius must be > 0");
    auto pos = std::upper_bound(bumps_.begin(), bumps_.end(), b.center,
                                [](double key, const BumpTerm& t) { return key < t.center; });
    bumps_.insert(pos, b);
    max_radius_ = std::max(max_radius_, b.radius);
}

double Piece::lipschitz(double lo, double hi) const {
    double m = std::max(std::fabs(lo), std::fabs(hi));
    double l = 0.0;
    double pw = 1.0;
    for (std::size_t k = 1; k < poly.size(); ++k) {
        l += static_cast<double>(k) * std::fabs(poly[k]) * pw;
        pw *= m;
    }
    for (const auto& b : bumps_) l += std::fabs(b.height) / b.radius;
    return l;
}

double Piece::sup_abs(double lo, double hi) const {
    double m = std::max(std::fabs(lo), std::fabs(hi));
    double s = 0.0;
    double pw = 1.0;
    for (double c : poly) {
        s += std::fabs(c) * pw;
        pw *= m;
    }
    for (const auto& b : bumps_) s += std::fabs(b.height);
    return s;
}

PiecewisePotential PiecewisePotential::constant(double c) {
    PiecewisePotential p;
    p.left.poly = {c};
    p.right.poly = {c};
    p.holder_a = 1.0;
    p.holder_K = 0.0;
    p.sup_bound = std::fabs(c);
    return p;
}

PiecewisePotential PiecewisePotential::polynomial(std::vector<double> left, std::vector<double> right, double K,
                                                  double sup_bound, double a) {
    PiecewisePotential p;
    p.left.poly = std::move(left);
    p.right.poly = std::move(right);
    p.holder_K = K;
    p.sup_bound = sup_bound;
    p.holder_a = a;
    return p;
}

void PiecewisePotential::derive_constants(double disc) {
    holder_a = 1.0;
    holder_K = std::max(left.lipschitz(0.0, disc), right.lipschitz(disc, 1.0));
    sup_bound = std::max(left.sup_abs(0.0, disc), right.sup_abs(disc, 1.0));
}

PiecewisePotential PiecewisePotential::plus_constant(double c) const {
    PiecewisePotential p = *this;
    for (Piece* pc : {&p.left, &p.right}) {
        if (pc->poly.empty()) pc->poly.push_back(0.0);
        pc->poly[0] += c;
    }
    p.sup_bound += std::fabs(c);
    return p;
}

PiecewisePotential PiecewisePotential::scaled(double c) const {
    PiecewisePotential p;
    for (auto [src, dst] : {std::pair{&left, &p.left}, std::pair{&right, &p.right}}) {
        dst->poly = src->poly;
        for (double& v : dst->poly) v *= c;
        for (auto b : src->bumps()) {
            b.height *= c;
            dst->add_bump(b);
        }
    }
    p.holder_a = holder_a;
    p.holder_K = holder_K * std::fabs(c);
    p.sup_bound = sup_bound * std::fabs(c);
    return p;
}

// ---- JSON ---------------------------------------------------------------

namespace {

Piece parse_piece(const nlohmann::json& j, const char* name) {
    Piece p;
    if (!j.is_object()) throw ConfigError(std::string("potential.") + name + " must be an object");
    if (j.contains("poly")) {
        for (const auto& c : j.at("poly")) {
            if (!c.is_number()) throw ConfigError("poly coefficients must be numbers");
            p.poly.push_back(c.get<double>());
        }
    }
    if (j.contains("bumps")) {
        for (const auto& b : j.at("bumps")) {
            std::string shape = b.value("shape", std::string("tent"));
            if (shape != "tent") throw ConfigError("unsupported bump shape: " + shape);
            BumpTerm t{b.at("center").get<double>(), b.at("radius").get<double>(), b.at("height").get<double>()};
            p.add_bump(t);
        }
    }
    return p;
}

nlohmann::json piece_json(const Piece& p) {
    nlohmann::json j;
    j["poly"] = p.poly;
    j["bumps"] = nlohmann::json::array();
    for (const auto& b : p.bumps())
        j["bumps"].push_back({{"center", b.center}, {"radius", b.radius}, {"height", b.height}});
    return j;
}

} // namespace

PiecewisePotential parse_potential(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("potential must be a JSON object");
    PiecewisePotential p;
    p.left = parse_piece(j.value("left", nlohmann::json::object()), "left");
    p.right = parse_piece(j.value("right", nlohmann::json::object()), "right");
    if (j.contains("holder")) {
        const auto& h = j.at("holder");
        p.holder_a = h.value("a", 1.0);
        p.holder_K = h.value("K", 0.0);
        if (!(p.holder_a > 0 && p.holder_a <= 1)) throw ConfigError("holder exponent a must lie in (0,1]");
        if (!(p.holder_K >= 0)) throw ConfigError("holder constant K must be >= 0");
        p.sup_bound = j.value("sup_bound", std::max(p.left.sup_abs(0, 1), p.right.sup_abs(0, 1)));
    } else {
        // no declared data: Lipschitz bounds over [0,1] are valid for either piece
        p.derive_constants(1.0);
        p.holder_K = std::max(p.left.lipschitz(0, 1), p.right.lipschitz(0, 1));
        p.sup_bound = j.value("sup_bound", std::max(p.left.sup_abs(0, 1), p.right.sup_abs(0, 1)));
    }
    return p;
}

nlohmann::json to_json(const PiecewisePotential& phi) {
    return {{"left", piece_json(phi.left)},
            {"right", piece_json(phi.right)},
            {"holder", {{"a", phi.holder_a}, {"K", phi.holder_K}}},
            {"sup_bound", phi.sup_bound}};
}

std::string potential_hash(const PiecewisePotential& phi) {
    std::string s = to_json(phi).dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ---- evaluation ---------------------------------------------------------

double eval_potential(const BetaMap& map, const PiecewisePotential& phi, const SidedPoint<double>& p) {
    if (p.x < 0 || p.x > 1) throw DomainError("potential evaluated outside [0,1]");
    int s = map.symbol(p);
    double x = map.at_disc(p.x) ? map.disc() : p.x;
    return phi.eval_piece(s, x);
}

namespace {

SidedPoint<double> step(const BetaMap& map, const SidedPoint<double>& p, std::size_t i) {
    SidedPoint<double> q = map.eval(p);
    if (map.at_disc(q.x)) {
        if (q.side == Side::none)
            throw SideRequired("orbit landed on the discontinuity at step " + std::to_string(i) +
                               " with no approach side");
        q.x = map.disc();
    }
    return q;
}

} // namespace

double birkhoff_sum(const BetaMap& map, const PiecewisePotential& phi, const SidedPoint<double>& p, std::size_t n) {
    if (n < 1) throw ConfigError("birkhoff_sum needs n >= 1");
    double sum = 0.0;
    SidedPoint<double> q = p;
    for (std::size_t i = 0; i < n; ++i) {
        sum += eval_potential(map, phi, q);
        if (i + 1 < n) q = step(map, q, i + 1);
    }
    return sum;
}

double birkhoff_sum_word(const BetaMap& map, const PiecewisePotential& phi, double x, const std::string& word) {
    double sum = 0.0;
    const double beta = map.beta();
    for (char ch : word) {
        int s = ch - '0';
        sum += phi.eval_piece(s, x);
        x = beta * x + map.intercept(s);
    }
    return sum;
}

const char* to_string(Base b) { return b == Base::zero ? "zero" : "one"; }
const char* to_string(LimsupMode m) { return m == LimsupMode::asymptotic ? "asymptotic" : "periodic_exact"; }

SidedPoint<double> base_point(Base b) {
    return b == Base::zero ? SidedPoint<double>{0.0, Side::right} : SidedPoint<double>{1.0, Side::left};
}

BoundaryLimsupEstimate boundary_limsup(const BetaMap& map, const PiecewisePotential& phi, Base base,
                                       const LimsupOptions& opt) {
    if (opt.n_max < 1 || opt.window < 1) throw ConfigError("limsup needs n_max >= 1 and window >= 1");
    BoundaryLimsupEstimate out;
    out.base = base;
    out.window = std::min(opt.window, opt.n_max);
    out.series.reserve(opt.n_max);
    SidedPoint<double> q = base_point(base);
    double sum = 0.0;
    for (std::size_t n = 1; n <= opt.n_max; ++n) {
        sum += eval_potential(map, phi, q);
        out.series.emplace_back(n, sum / static_cast<double>(n));
        q = step(map, q, n);
        if (!out.n0 && map.at_disc(q.x)) out.n0 = n;
    }
    if (out.n0) {
        // the orbit closes up: base -> ... -> d^± -> base, period n0 + 1
        std::size_t period = *out.n0 + 1;
        out.mode = LimsupMode::periodic_exact;
        out.value = birkhoff_sum(map, phi, base_point(base), period) / static_cast<double>(period);
        out.tolerance_sensitive = !ScalarTraits<double>::exact;
    } else {
        out.mode = LimsupMode::asymptotic;
        double v = -INFINITY;
        for (std::size_t i = out.series.size() - out.window; i < out.series.size(); ++i)
            v = std::max(v, out.series[i].second);
        out.value = v;
    }
    return out;
}

HolderCheck validate_holder(const BetaMap& map, const PiecewisePotential& phi, std::size_t pairs,
                            std::uint64_t seed) {
    HolderCheck out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double d = map.disc();
    for (std::size_t k = 0; k < pairs; ++k) {
        int s = static_cast<int>(k & 1);
        double lo = s == 0 ? 0.0 : d;
        double hi = s == 0 ? d : 1.0;
        double x = lo + (hi - lo) * unit(rng);
        double y;
        if (k % 4 < 2) {
            y = lo + (hi - lo) * unit(rng);
        } else {
            double h = std::pow(10.0, -6.0 * unit(rng)) * (hi - lo);
            y = std::clamp(x + (unit(rng) < 0.5 ? -h : h), lo, hi);
        }
        if (x == y) continue;
        double q = std::fabs(phi.eval_piece(s, x) - phi.eval_piece(s, y)) / std::pow(std::fabs(x - y), phi.holder_a);
        out.max_quotient = std::max(out.max_quotient, q);
        ++out.pairs;
    }
    out.ok = out.max_quotient <= phi.holder_K * (1 + 1e-9) + 1e-9;
    return out;
}

double sup_distance(const BetaMap& map, const PiecewisePotential& phi, const PiecewisePotential& psi,
                    std::size_t samples, bool lipschitz_correction) {
    if (samples < 1) samples = 1;
    const double d = map.disc();
    double best = 0.0;
    for (int s = 0; s < 2; ++s) {
        double piece_max = 0.0;
        double lo = s == 0 ? 0.0 : d;
        double hi = s == 0 ? d : 1.0;
        auto diff = [&](double x) { return std::fabs(phi.eval_piece(s, x) - psi.eval_piece(s, x)); };
        double h = (hi - lo) / static_cast<double>(samples);
        for (std::size_t i = 0; i <= samples; ++i)
            piece_max = std::max(piece_max, diff(lo + h * static_cast<double>(i)));
        const Piece& a = s == 0 ? phi.left : phi.right;
        const Piece& b = s == 0 ? psi.left : psi.right;
        for (const Piece* pc : {&a, &b})
            for (const auto& t : pc->bumps())
                if (t.center >= lo && t.center <= hi) piece_max = std::max(piece_max, diff(t.center));
        if (lipschitz_correction) piece_max += (a.lipschitz(lo, hi) + b.lipschitz(lo, hi)) * h / 2.0;
        best = std::max(best, piece_max);
    }
    return best;
}

} // namespace lorenz

#pragma once

// Brute-force reference computations. Deliberately naive: they share no code
// with the library beyond the standard library.

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

// beta*x + alpha reduced mod 1, with the right-branch value at the top end
inline double beta_step(double beta, double alpha, double x) {
    double y = beta * x + alpha;
    double disc = (1.0 - alpha) / beta;
    return x < disc ? y : y - 1.0;
}

inline long double beta_step_ld(long double beta, long double alpha, long double x) {
    long double disc = (1.0L - alpha) / beta;
    long double y = beta * x + alpha;
    return x < disc ? y : y - 1.0L;
}

inline std::string naive_itinerary(double beta, double alpha, double x, std::size_t n) {
    double disc = (1.0 - alpha) / beta;
    std::string w;
    for (std::size_t i = 0; i < n; ++i) {
        w.push_back(x < disc ? '0' : '1');
        x = beta_step(beta, alpha, x);
    }
    return w;
}

struct GridInterval {
    std::string word;
    double first = 0.0; // first grid point carrying the word
    double last = 0.0;  // last grid point carrying the word
};

// Classify grid points k*h, k = 0..1/h, by their n-step itinerary and return
// maximal runs in order.
inline std::vector<GridInterval> grid_cylinders(double beta, double alpha, std::size_t n, double h) {
    std::vector<GridInterval> out;
    auto steps = static_cast<std::size_t>(std::llround(1.0 / h));
    for (std::size_t k = 0; k <= steps; ++k) {
        double x = static_cast<double>(k) * h;
        std::string w = naive_itinerary(beta, alpha, x, n);
        if (out.empty() || out.back().word != w) {
            out.push_back({w, x, x});
        } else {
            out.back().last = x;
        }
    }
    return out;
}

// Direct sum over random points of an n-step Birkhoff sum.
template <class F>
double naive_birkhoff(double beta, double alpha, F phi, double x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += phi(x);
        x = beta_step(beta, alpha, x);
    }
    return s;
}

// Cutting-time test for the plus side from scratch at step N: find the right
// end B of the cylinder of D^+ by bisection on the itinerary predicate, then
// form A_N = (T^N(D^+), T^N(D^+) + beta^N (B - D)) and test D inside it.
struct CutCheck {
    bool cutting = false;
    long double lo = 0, hi = 0, B = 0;
};

inline CutCheck plus_cut_from_scratch(long double beta, long double alpha, std::size_t N, long double tau) {
    const long double D = (1.0L - alpha) / beta;
    // sided itinerary of D^+: first symbol 1, then follow T(D^+) = 0 forward
    std::string target = "1";
    long double x = 0.0L;
    for (std::size_t i = 1; i < N; ++i) {
        // land on D: keep the right side
        bool right = x > D || std::fabs(x - D) <= 1e-15L;
        target.push_back(right ? '1' : '0');
        x = right ? beta * x + alpha - 1.0L : beta * x + alpha;
        if (right && std::fabs(x) < 1e-300L) x = 0.0L;
    }
    const long double crit = x; // T^N(D^+)
    auto matches = [&](long double y) {
        for (std::size_t i = 0; i < N; ++i) {
            char s = y < D ? '0' : '1';
            if (s != target[i]) return false;
            y = beta_step_ld(beta, alpha, y);
        }
        return true;
    };
    long double good = D, bad = 1.0L;
    if (matches(1.0L)) good = bad = 1.0L;
    for (int it = 0; it < 200 && bad - good > 0; ++it) {
        long double mid = 0.5L * (good + bad);
        if (mid == good || mid == bad) break;
        if (matches(mid)) good = mid; else bad = mid;
    }
    CutCheck c;
    c.B = good;
    c.lo = crit;
    c.hi = crit + std::pow(beta, static_cast<long double>(N)) * (good - D);
    c.cutting = c.lo + tau < D && D < c.hi - tau;
    return c;
}

} // namespace oracle

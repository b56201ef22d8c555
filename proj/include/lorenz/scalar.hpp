#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <string>

namespace lorenz {

using Rational = boost::multiprecision::cpp_rational;

// Arithmetic model used by the map, cylinder and cutting machinery.
// Float64 comparisons go through explicit tolerances; Rational compares
// exactly and the tolerance arguments are ignored.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static constexpr const char* name = "float64";
    static double to_double(double x) { return x; }
    static double from_double(double x) { return x; }
    static double abs(double x) { return std::fabs(x); }
    static bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }
    static std::string to_string(double x);
};

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static constexpr const char* name = "rational";
    static double to_double(const Rational& x) { return x.convert_to<double>(); }
    static Rational from_double(double x) { return Rational(x); }
    static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
    static bool near(const Rational& a, const Rational& b, double) { return a == b; }
    static std::string to_string(const Rational& x) { return x.str(); }
};

template <class S>
double to_double(const S& x) {
    return ScalarTraits<S>::to_double(x);
}

// Shortest round-trip decimal is not what we want for reports: outputs are
// fixed at 17 significant digits, locale independent.
std::string format_real(double x);

inline std::string ScalarTraits<double>::to_string(double x) { return format_real(x); }

} // namespace lorenz

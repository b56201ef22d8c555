#pragma once

#include <stdexcept>
#include <string>

namespace lorenz {

// Every failure raised by the library derives from Error. Each subclass
// carries a stable kind() string that the CLI maps onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "Error"; }
};

#define LORENZ_DEFINE_ERROR(Name)                                        \
    class Name : public Error {                                          \
    public:                                                              \
        using Error::Error;                                              \
        const char* kind() const noexcept override { return #Name; }     \
    }

LORENZ_DEFINE_ERROR(ConfigError);
LORENZ_DEFINE_ERROR(DomainError);
LORENZ_DEFINE_ERROR(SideRequired);
LORENZ_DEFINE_ERROR(RangeError);
LORENZ_DEFINE_ERROR(BudgetExceeded);
LORENZ_DEFINE_ERROR(OverflowGuard);
LORENZ_DEFINE_ERROR(DegenerateComponent);
LORENZ_DEFINE_ERROR(FixedPointEscaped);
LORENZ_DEFINE_ERROR(UnverifiedOrbit);
LORENZ_DEFINE_ERROR(DisjointnessImpossible);

#undef LORENZ_DEFINE_ERROR

} // namespace lorenz

#ifndef WQED_ERRORS_HPP
#define WQED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wqed {

// Common denominator of the scattering amplitudes vanished exactly.
struct PoleError : std::runtime_error {
    explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

// eta_t or eta_r requested where the corresponding plane-wave part is zero.
struct UndefinedCorrelation : std::runtime_error {
    explicit UndefinedCorrelation(const std::string& what) : std::runtime_error(what) {}
};

// q or epsilon evaluated at delta_a = 0 or 2*delta_a^2 = kappa*gamma.
struct FanoPoleError : std::runtime_error {
    explicit FanoPoleError(const std::string& what) : std::runtime_error(what) {}
};

struct NoMinimumInRange : std::runtime_error {
    explicit NoMinimumInRange(const std::string& what) : std::runtime_error(what) {}
};

// Coordinates straddle the scatterer where an asymptotic channel form was requested.
struct RegionError : std::runtime_error {
    explicit RegionError(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionError : std::runtime_error {
    explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

struct SignalTooSmall : std::runtime_error {
    explicit SignalTooSmall(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wqed

#endif

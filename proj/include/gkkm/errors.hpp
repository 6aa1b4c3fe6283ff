#ifndef GKKM_ERRORS_HPP
#define GKKM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gkkm {

// No energy survives the bound-state window for the requested state.
struct NoBoundState : std::runtime_error {
    explicit NoBoundState(const std::string& what) : std::runtime_error(what) {}
};

// No finite-dimensional unitary representation of the requested dimension.
struct NoUnitaryRep : std::runtime_error {
    explicit NoUnitaryRep(const std::string& what) : std::runtime_error(what) {}
};

// Grid refinement exhausted without meeting the error target.
struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

// A structure-function value required to be nonnegative is negative.
struct NegativePhi : std::runtime_error {
    explicit NegativePhi(const std::string& what) : std::runtime_error(what) {}
};

// The factored structure function is undefined at or beyond threshold.
struct ThresholdEnergy : std::runtime_error {
    explicit ThresholdEnergy(const std::string& what) : std::runtime_error(what) {}
};

// Wrong realization case requested.
struct GammaZero : std::runtime_error {
    explicit GammaZero(const std::string& what) : std::runtime_error(what) {}
};
struct EpsilonZero : std::runtime_error {
    explicit EpsilonZero(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gkkm

#endif

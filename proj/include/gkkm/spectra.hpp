#ifndef GKKM_SPECTRA_HPP
#define GKKM_SPECTRA_HPP

#include <vector>

#include "gkkm/calibration.hpp"
#include "gkkm/model.hpp"

namespace gkkm {

/// Coefficients of the reduced radial problem
///   (-d^2/dr^2 + A/r^2 - alpha/r) chi = beta chi,
/// with s the nonnegative exponent solving s(s+1) = A.
struct RadialProblem {
    double A = 0;
    double alpha = 0;
    double beta = 0;
    double s = 0;
};

enum class Route { spherical, parabolic, algebraic, ladder, oracle };

inline const char* route_name(Route r) {
    switch (r) {
        case Route::spherical: return "spherical";
        case Route::parabolic: return "parabolic";
        case Route::algebraic: return "algebraic";
        case Route::ladder:    return "ladder";
        case Route::oracle:    return "oracle";
    }
    return "?";
}

struct EnergySolution {
    double E = 0;
    Route route = Route::spherical;
    Mode mode = Mode::reconciled;
    double residual = 0;   ///< unsquared quantization-condition defect
    bool window_ok = false;
    double D = 0;          ///< quantization count the root was solved for
};

struct WaveSpec {
    enum class Kind { radial_spherical, angular, parabolic_xi, parabolic_eta };
    Kind kind = Kind::radial_spherical;
    Sector sector;
    Half j;          // radial/angular
    int n_r = 0;     // radial
    int n1 = 0;      // parabolic xi factor
    int n2 = 0;      // parabolic eta factor
};

/// alpha(E), beta(E), A(j) under the given calibration.  The printed preset
/// reproduces the source coefficients verbatim; the reconciled preset flips
/// the sign of alpha.
RadialProblem radial_problem(double E, const Sector& sector,
                             const ModelParams& params, Half j,
                             const Calibration& calib);

/// Quantization count D for principal number n: D = n + (d1+d2)/2 + n_offset.
double quantization_count(Half n, const DeltaPair& dp, const Calibration& calib);

/// Core root-solver: all E with alpha(E) = 2 D sqrt(-beta(E)) surviving the
/// bound-state window, ascending in E.  In printed mode every real root below
/// threshold is returned with its (typically failing) window flags.
std::vector<EnergySolution> solve_quantization(double D, const Sector& sector,
                                               const ModelParams& params,
                                               const Calibration& calib,
                                               Mode mode, Route route);

/// True when the sector supports a bound window at all: the Coulomb tail must
/// stay attractive at the continuum threshold.
bool sector_binds(const Sector& sector, const ModelParams& params,
                  const Calibration& calib);

std::vector<EnergySolution> energy_spherical(Half n, const Sector& sector,
                                             const ModelParams& params,
                                             const Calibration& calib,
                                             Mode mode = Mode::reconciled);

/// Limit with all couplings zero, solved through the one-parameter quadratic
/// in x = sqrt(q^2/mu^2 - 2E).  Throws NoBoundState when n < |q| or no root
/// survives.
std::vector<EnergySolution> energy_kk_limit(Half n, const Sector& sector,
                                            const ModelParams& params,
                                            const Calibration& calib);

std::vector<EnergySolution> energy_parabolic(const ParabolicQN& qn,
                                             const Sector& sector,
                                             const ModelParams& params,
                                             const Calibration& calib,
                                             Mode mode = Mode::reconciled);

/// Separation eigenvalue k for a parabolic state at energy E (reconciled
/// sign convention unless the calibration says otherwise).
double separation_k(const ParabolicQN& qn, const Sector& sector,
                    const ModelParams& params, double E,
                    const Calibration& calib);

/// Unnormalized wavefunction factors.  Radial returns the 1/r-reduced factor
/// (leading exponent s at the origin); angular the polar factor; parabolic
/// the xi/eta factors with leading exponents m1/2, m2/2.
double wavefunction_eval(const WaveSpec& ws, double E, double coordinate,
                         const ModelParams& params, const Calibration& calib);

/// |enumerate_parabolic| checked against |enumerate_spherical|.
int degeneracy(Half n, const Sector& sector, const ModelParams& params);

} // namespace gkkm

#endif

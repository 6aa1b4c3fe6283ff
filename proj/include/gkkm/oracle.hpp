#ifndef GKKM_ORACLE_HPP
#define GKKM_ORACLE_HPP

#include <span>
#include <vector>

#include "gkkm/calibration.hpp"
#include "gkkm/model.hpp"
#include "gkkm/spectra.hpp"

namespace gkkm {

struct GridSpec {
    enum class Scheme { uniform, log };
    double r_max = 40.0;
    int points = 2000;
    Scheme scheme = Scheme::uniform;
};

struct EigResult {
    std::vector<double> eigenvalues;            ///< ascending
    std::vector<std::vector<double>> eigenvectors;
    std::vector<double> error_estimate;         ///< Richardson estimate per eigenvalue
    std::vector<double> grid;                   ///< interior nodes
    double spacing = 0;
};

/// Lowest `count` eigenvalues of (-d^2/dr^2 + A/r^2 - alpha/r) with Dirichlet
/// ends, on a uniform grid, Richardson-extrapolated.  r_max is doubled until
/// the requested eigenfunctions decay below 1e-10 at the boundary.
EigResult radial_eigensolve(double A, double alpha, GridSpec grid, int count);

/// Lowest `count` eigenvalues of the confining form of the parabolic factor
/// problem, i.e. of  -d/dxi(xi d/dxi) + m_i^2/(4 xi) - alpha/4 - beta xi/4
/// (beta < 0).  The separation eigenvalues are the negatives of these.
EigResult parabolic_eigensolve(double m_i, double alpha, double beta,
                               GridSpec grid, int count);

/// Self-consistent energies: all E in the bound window whose radial problem
/// has its n_r-th eigenvalue equal to beta(E).  Independent of the analytic
/// quantization formula; this is the calibration anchor.
std::vector<EnergySolution> energy_selfconsistent(int n_r, Half j,
                                                  const Sector& sector,
                                                  const ModelParams& params,
                                                  const Calibration& calib);

/// Max |L w - lambda w| / max |lambda w| over sample points, with the operator
/// applied to the closed-form factor by high-order central differences.
double ode_residual(const WaveSpec& ws, double E, std::span<const double> samples,
                    const ModelParams& params, const Calibration& calib);

/// Default interior sample points for ode_residual.
std::vector<double> default_residual_samples(const WaveSpec& ws, double E,
                                             const ModelParams& params,
                                             int count = 160);

/// Strict sign changes away from the endpoints.
int node_count(std::span<const double> samples);

/// Trapezoid-composite value of the squared-sample integral with uniform
/// spacing dx (the plain-dr radial weight).
double normalize(std::span<const double> samples, double dx);

} // namespace gkkm

#endif

#ifndef GKKM_LADDER_HPP
#define GKKM_LADDER_HPP

#include <span>
#include <vector>

#include "gkkm/calibration.hpp"
#include "gkkm/model.hpp"
#include "gkkm/spectra.hpp"

namespace gkkm {

/// Scaled radial state: the operator family below acts on samples in
/// x = sqrt(-beta) r.
struct ScaledRadial {
    double f_n = 0;  ///< alpha / sqrt(-beta)
    double A = 0;
    std::vector<double> x;
    std::vector<double> chi;
};

/// su(1,1) representation labels: Casimir label w, weight label v = w + n' + 1.
struct Su11Labels {
    double w = 0;
    double v = 0;
    int level = 0;
};

enum class ScaledOp { L, B3, Bplus, Bminus, Bplus_n, Bminus_n };

/// Apply one operator of the family by 4th-order central differences on a
/// uniform grid.  `f_n` is the scaled Coulomb strength alpha/sqrt(-beta); the
/// chain operators use the calibrated fraction of it.  Entries within the
/// accumulated stencil half-width of either end are not meaningful.
std::vector<double> scaled_operator_apply(ScaledOp op, double f_n, double A,
                                          std::span<const double> x,
                                          std::span<const double> samples,
                                          const Calibration& calib);

struct Su11Report {
    double comm_plus = 0;      ///< [B+,B3] + B+ defect
    double comm_minus = 0;     ///< [B-,B3] - B- defect
    double comm_pm = 0;        ///< [B+,B-] + 2 B3 defect
    double casimir_spread = 0; ///< relative spread of the Casimir across test functions
    double casimir_mean = 0;
    double eigen_b3 = 0;       ///< B3 defect on the exact ground state
    double chain_raise = 0;    ///< first factorization-chain identity defect
    double chain_lower = 0;    ///< second factorization-chain identity defect
};

/// Residual report on three Gaussian bumps plus the exact lowest
/// eigenfunction for the given (f_n, A).  `points` is the grid size.
Su11Report verify_su11(double f_n, double A, int points,
                       const Calibration& calib);

/// Energies from the su(1,1) weight ladder: levels n' = 0..np_max.
std::vector<EnergySolution> ladder_spectrum(Half j, const Sector& sector,
                                            const ModelParams& params,
                                            const Calibration& calib,
                                            Mode mode, int np_max);

Su11Labels su11_labels(Half j, const DeltaPair& dp, int level);

} // namespace gkkm

#endif

#include "gkkm/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gkkm/errors.hpp"
#include "gkkm/specfun.hpp"

namespace gkkm {

namespace {

// a0, b0 with alpha(E) = alpha_sign*(2 mu E - a0') and beta(E) = 2E - b0.
// In the reconciled convention alpha(E) = a0 - 2 mu E with a0 > 0 where bound
// states live.
double numerator_const(const Sector& sector, const ModelParams& params,
                       const Calibration& calib) {
    const double q = sector.q.value();
    return 2.0 * q * q / params.mu + calib.c1_factor * params.c1;
}

double threshold_const(const Sector& sector, const ModelParams& params) {
    const double q = sector.q.value();
    return q * q / (params.mu * params.mu) + params.c4;
}

} // namespace

RadialProblem radial_problem(double E, const Sector& sector,
                             const ModelParams& params, Half j,
                             const Calibration& calib) {
    const DeltaPair dp = deltas(sector, params);
    RadialProblem rp;
    rp.A = separation_constant_A(j, dp);
    rp.s = -0.5 + std::sqrt(0.25 + rp.A);
    rp.alpha = calib.alpha_sign *
               (2.0 * E * params.mu - numerator_const(sector, params, calib));
    rp.beta = 2.0 * E - threshold_const(sector, params);
    return rp;
}

double quantization_count(Half n, const DeltaPair& dp, const Calibration& calib) {
    return n.value() + dp.delta_sum_half() + calib.n_offset;
}

bool sector_binds(const Sector& sector, const ModelParams& params,
                  const Calibration& calib) {
    // attractive tail at the continuum threshold E = b0/2: alpha evaluated
    // there must be positive under the calibrated sign orientation
    const double a0 = numerator_const(sector, params, calib);
    const double b0 = threshold_const(sector, params);
    return calib.alpha_sign * (params.mu * b0 - a0) > 0;
}

std::vector<EnergySolution> solve_quantization(double D, const Sector& sector,
                                               const ModelParams& params,
                                               const Calibration& calib,
                                               Mode mode, Route route) {
    params.validate();
    sector.validate();
    if (!(D > 0))
        throw NoBoundState("quantization count must be positive, got D = " +
                           std::to_string(D));
    const double mu = params.mu;
    const double a0 = numerator_const(sector, params, calib);
    const double b0 = threshold_const(sector, params);

    // squaring alpha = 2 D sqrt(-beta) gives
    //   mu^2 E^2 + (2 D^2 - mu a0) E + (a0^2/4 - D^2 b0) = 0
    const double qa = mu * mu;
    const double qb = 2.0 * D * D - mu * a0;
    const double qc = 0.25 * a0 * a0 - D * D * b0;
    const double disc = qb * qb - 4.0 * qa * qc;
    std::vector<double> roots;
    if (disc < 0) {
        // no real roots at all
    } else if (disc == 0) {
        roots.push_back(-qb / (2.0 * qa));
    } else {
        const double sq = std::sqrt(disc);
        const double r1 = (-qb - (qb >= 0 ? sq : -sq)) / (2.0 * qa);
        const double r2 = qc / (qa * r1);
        roots = {std::min(r1, r2), std::max(r1, r2)};
        if (roots[0] == roots[1]) roots.pop_back();
    }

    // Newton polish of |alpha(E)| = 2 D sqrt(-beta(E)) to push the unsquared
    // residual to rounding level
    for (double& E : roots) {
        for (int it = 0; it < 2; ++it) {
            const double beta = 2.0 * E - b0;
            if (!(beta < 0)) break;
            const double kappa = std::sqrt(-beta);
            const double alpha = a0 - 2.0 * mu * E;
            const double t = alpha >= 0 ? 1.0 : -1.0;
            const double g = t * alpha - 2.0 * D * kappa;
            const double gp = -2.0 * t * mu + 2.0 * D / kappa;
            if (std::fabs(gp) < 1e-300) break;
            E -= g / gp;
        }
    }

    const bool binds = sector_binds(sector, params, calib);
    std::vector<EnergySolution> out;
    for (double E : roots) {
        const double beta = 2.0 * E - b0;
        if (!(beta < 0)) continue;  // no real quantization value at/above threshold
        const double kappa = std::sqrt(-beta);
        const double alpha_rec = a0 - 2.0 * mu * E;
        const double alpha_mode =
            calib.alpha_sign * (2.0 * mu * E - a0);  // convention under `calib`
        EnergySolution sol;
        sol.E = E;
        sol.route = route;
        sol.mode = mode;
        sol.D = D;
        sol.residual = alpha_mode / (2.0 * kappa) - D;
        sol.window_ok = beta < 0 && alpha_mode > 0 && binds;
        const bool keep_reconciled = beta < 0 && alpha_rec > 0 && binds &&
                                     std::fabs(alpha_rec / (2.0 * kappa) - D) <
                                         1e-12 * (1.0 + std::fabs(D));
        if (mode == Mode::reconciled ? keep_reconciled : true) out.push_back(sol);
    }
    std::sort(out.begin(), out.end(),
              [](const EnergySolution& a, const EnergySolution& b) { return a.E < b.E; });
    if (out.empty()) {
        std::ostringstream os;
        os << "no bound state for D = " << D << " at q = " << sector.q.value()
           << ", m = " << sector.m.value();
        throw NoBoundState(os.str());
    }
    return out;
}

std::vector<EnergySolution> energy_spherical(Half n, const Sector& sector,
                                             const ModelParams& params,
                                             const Calibration& calib, Mode mode) {
    const DeltaPair dp = deltas(sector, params);
    const Half span = n - dp.m_plus;
    if (!span.is_integer() || span.as_int() < 1) {
        std::ostringstream os;
        os << "n = " << n.value() << " below m_plus + 1 = " << dp.m_plus.value() + 1;
        throw NoBoundState(os.str());
    }
    const double D = quantization_count(n, dp, calib);
    return solve_quantization(D, sector, params, calib, mode, Route::spherical);
}

std::vector<EnergySolution> energy_kk_limit(Half n, const Sector& sector,
                                            const ModelParams& params,
                                            const Calibration& calib) {
    if (!params.couplings_zero())
        throw std::invalid_argument("energy_kk_limit requires all couplings zero");
    const double q = sector.q.value();
    const double mu = params.mu;
    const double nv = n.value();
    if (nv < std::fabs(q))
        throw NoBoundState("n < |q|: discriminant negative");
    if (!sector_binds(sector, params, calib))
        throw NoBoundState("sector does not bind (q = 0 limit)");
    // mu x^2 - 2 n x + q^2/mu = 0 with x = sqrt(q^2/mu^2 - 2E) > 0
    const double sq = std::sqrt(nv * nv - q * q);
    std::vector<double> xs = {(nv - sq) / mu, (nv + sq) / mu};
    if (xs[0] == xs[1]) xs.pop_back();
    std::vector<EnergySolution> out;
    for (double x : xs) {
        if (!(x > 0)) continue;
        EnergySolution sol;
        sol.E = 0.5 * (q * q / (mu * mu) - x * x);
        sol.route = Route::spherical;
        sol.mode = Mode::reconciled;
        sol.D = nv;
        const double alpha_rec = 2.0 * q * q / mu - 2.0 * mu * sol.E;
        sol.residual = alpha_rec / (2.0 * x) - nv;
        sol.window_ok = alpha_rec > 0;
        if (sol.window_ok && std::fabs(sol.residual) < 1e-12 * (1.0 + nv))
            out.push_back(sol);
    }
    std::sort(out.begin(), out.end(),
              [](const EnergySolution& a, const EnergySolution& b) { return a.E < b.E; });
    if (out.empty()) throw NoBoundState("no root survives the window");
    return out;
}

std::vector<EnergySolution> energy_parabolic(const ParabolicQN& qn,
                                             const Sector& sector,
                                             const ModelParams& params,
                                             const Calibration& calib, Mode mode) {
    if (qn.n1 < 0 || qn.n2 < 0)
        throw std::invalid_argument("parabolic numbers must be nonnegative");
    const DeltaPair dp = deltas(sector, params);
    // n1 + n2 + 1 + (m1+m2)/2  ==  n + (d1+d2)/2
    const double D = qn.n1 + qn.n2 + 1.0 + 0.5 * (dp.m1 + dp.m2) + calib.n_offset;
    return solve_quantization(D, sector, params, calib, mode, Route::parabolic);
}

double separation_k(const ParabolicQN& qn, const Sector& sector,
                    const ModelParams& params, double E,
                    const Calibration& calib) {
    const DeltaPair dp = deltas(sector, params);
    const double beta = 2.0 * E - threshold_const(sector, params);
    if (!(beta < 0)) throw ThresholdEnergy("beta >= 0");
    const double kappa = std::sqrt(-beta);
    // reconciled: n2 - n1 = (m1 - m2)/2 + k/kappa; the printed convention
    // flips the k-terms' sign.
    const double k_rec = kappa * (qn.n2 - qn.n1 + 0.5 * (dp.m2 - dp.m1));
    return (calib.parabolic_k_sign < 0) ? k_rec : -k_rec;
}

double wavefunction_eval(const WaveSpec& ws, double E, double coordinate,
                         const ModelParams& params, const Calibration& calib) {
    const DeltaPair dp = deltas(ws.sector, params);
    const double beta = 2.0 * E - threshold_const(ws.sector, params);
    switch (ws.kind) {
        case WaveSpec::Kind::radial_spherical: {
            if (!(coordinate > 0)) throw std::domain_error("r must be > 0");
            if (!(beta < 0)) throw ThresholdEnergy("beta >= 0");
            const double s = -0.5 + std::sqrt(0.25 + separation_constant_A(ws.j, dp));
            const double rho = 2.0 * coordinate * std::sqrt(-beta);
            return std::pow(rho, s) * std::exp(-0.5 * rho) *
                   kummer_terminating(ws.n_r, 2.0 * s + 2.0, rho);
        }
        case WaveSpec::Kind::angular: {
            if (!(coordinate > 0 && coordinate < M_PI))
                throw std::domain_error("theta must lie in (0, pi)");
            const double ct = std::cos(0.5 * coordinate);
            const double st = std::sin(0.5 * coordinate);
            const int deg = (ws.j - dp.m_plus).as_int();
            return std::pow(ct, dp.m1) * std::pow(st, dp.m2) *
                   jacobi(deg, dp.m2, dp.m1, std::cos(coordinate));
        }
        case WaveSpec::Kind::parabolic_xi: {
            if (!(coordinate > 0)) throw std::domain_error("xi must be > 0");
            if (!(beta < 0)) throw ThresholdEnergy("beta >= 0");
            const double x = coordinate * std::sqrt(-beta);
            return std::pow(x, 0.5 * dp.m1) * std::exp(-0.5 * x) *
                   kummer_terminating(ws.n1, dp.m1 + 1.0, x);
        }
        case WaveSpec::Kind::parabolic_eta: {
            if (!(coordinate > 0)) throw std::domain_error("eta must be > 0");
            if (!(beta < 0)) throw ThresholdEnergy("beta >= 0");
            const double y = coordinate * std::sqrt(-beta);
            return std::pow(y, 0.5 * dp.m2) * std::exp(-0.5 * y) *
                   kummer_terminating(ws.n2, dp.m2 + 1.0, y);
        }
    }
    (void)calib;
    throw std::logic_error("unreachable");
}

int degeneracy(Half n, const Sector& sector, const ModelParams& params) {
    const auto sph = enumerate_spherical(n, sector, params);
    const auto par = enumerate_parabolic(n, sector, params);
    if (sph.size() != par.size())
        throw std::logic_error("spherical/parabolic enumeration mismatch");
    return static_cast<int>(par.size());
}

} // namespace gkkm

#include "gkkm/ladder.hpp"

#include <cmath>
#include <stdexcept>

#include "gkkm/errors.hpp"
#include "gkkm/specfun.hpp"

namespace gkkm {

namespace {

struct Derivs {
    std::vector<double> d1, d2;
};

// 4th-order central first and second derivatives; 2 points at each end stay 0
Derivs derivatives(std::span<const double> x, std::span<const double> f) {
    const size_t n = f.size();
    if (x.size() != n || n < 5) throw std::invalid_argument("bad grid");
    const double h = x[1] - x[0];
    Derivs d;
    d.d1.assign(n, 0.0);
    d.d2.assign(n, 0.0);
    for (size_t i = 2; i + 2 < n; ++i) {
        d.d1[i] = (f[i - 2] - 8 * f[i - 1] + 8 * f[i + 1] - f[i + 2]) / (12 * h);
        d.d2[i] = (-f[i - 2] + 16 * f[i - 1] - 30 * f[i] + 16 * f[i + 1] -
                   f[i + 2]) / (12 * h * h);
    }
    return d;
}

} // namespace

std::vector<double> scaled_operator_apply(ScaledOp op, double f_n, double A,
                                          std::span<const double> x,
                                          std::span<const double> samples,
                                          const Calibration& calib) {
    const Derivs d = derivatives(x, samples);
    const size_t n = samples.size();
    std::vector<double> out(n, 0.0);
    const double w = f_n / calib.ladder_weight_factor;  // chain shift scalar
    for (size_t i = 2; i + 2 < n; ++i) {
        const double xi = x[i], v = samples[i];
        const double b3 = 0.5 * (-xi * d.d2[i] + xi * v + A / xi * v);
        switch (op) {
            case ScaledOp::L:
                out[i] = -xi * xi * d.d2[i] +
                         calib.scaled_x2_sign * xi * xi * v - f_n * xi * v;
                break;
            case ScaledOp::B3:
                out[i] = b3;
                break;
            case ScaledOp::Bplus:
                out[i] = -xi * d.d1[i] + xi * v - b3;
                break;
            case ScaledOp::Bminus:
                out[i] = xi * d.d1[i] + xi * v - b3;
                break;
            case ScaledOp::Bplus_n:
                out[i] = -xi * d.d1[i] + xi * v - w * v;
                break;
            case ScaledOp::Bminus_n:
                out[i] = xi * d.d1[i] + xi * v - w * v;
                break;
        }
    }
    return out;
}

Su11Labels su11_labels(Half j, const DeltaPair& dp, int level) {
    Su11Labels s;
    s.w = j.value() + dp.delta_sum_half();
    s.level = level;
    s.v = s.w + level + 1.0;
    return s;
}

namespace {

double rel_defect(std::span<const double> lhs, std::span<const double> rhs,
                  size_t skip) {
    double num = 0, den = 0;
    for (size_t i = skip; i + skip < lhs.size(); ++i) {
        num = std::max(num, std::fabs(lhs[i] - rhs[i]));
        den = std::max(den, std::fabs(rhs[i]));
    }
    return den > 0 ? num / den : num;
}

} // namespace

Su11Report verify_su11(double f_n, double A, int points,
                       const Calibration& calib) {
    if (points < 64) throw std::invalid_argument("verify_su11: grid too small");
    const double s = -0.5 + std::sqrt(0.25 + A);
    const double w_exact = f_n / calib.ladder_weight_factor;
    const double x_max = 2.0 * (w_exact + s) + 24.0;
    std::vector<double> x(points);
    for (int i = 0; i < points; ++i)
        x[i] = x_max * (i + 1.0) / points;

    // three bumps inside [0.2, 0.8] x_max plus the exact lowest eigenfunction
    std::vector<std::vector<double>> tests;
    const double centers[3] = {0.32, 0.5, 0.68};
    const double widths[3] = {0.05, 0.07, 0.06};
    for (int t = 0; t < 3; ++t) {
        std::vector<double> f(points);
        for (int i = 0; i < points; ++i) {
            const double z = (x[i] - centers[t] * x_max) / (widths[t] * x_max);
            f[i] = std::exp(-z * z);
        }
        tests.push_back(std::move(f));
    }
    // the exact eigenfunction always lives at the measured eigenvalue f_n/2
    const int n_r = static_cast<int>(std::lround(0.5 * f_n - s - 1.0));
    std::vector<double> chi(points);
    {
        double peak = 0;
        for (int i = 0; i < points; ++i) {
            // rho = 2x in the scaled variable
            chi[i] = std::pow(x[i], s + 1.0) * std::exp(-x[i]) *
                     (n_r >= 0
                          ? kummer_terminating(n_r, 2.0 * s + 2.0, 2.0 * x[i])
                          : 1.0);
            peak = std::max(peak, std::fabs(chi[i]));
        }
        for (auto& v : chi) v /= peak;
    }
    tests.push_back(chi);

    auto apply = [&](ScaledOp op, std::span<const double> f) {
        return scaled_operator_apply(op, f_n, A, x, f, calib);
    };

    Su11Report rep;
    const size_t skip = 6;  // products double the stencil footprint
    double cas_min = 0, cas_max = 0;
    bool first = true;
    for (const auto& f : tests) {
        const auto b3f = apply(ScaledOp::B3, f);
        const auto bpf = apply(ScaledOp::Bplus, f);
        const auto bmf = apply(ScaledOp::Bminus, f);
        // [B+, B3] = -B+
        {
            const auto l = apply(ScaledOp::Bplus, b3f);
            const auto r = apply(ScaledOp::B3, bpf);
            std::vector<double> lhs(f.size()), rhs(f.size());
            for (size_t i = 0; i < f.size(); ++i) {
                lhs[i] = l[i] - r[i];
                rhs[i] = -bpf[i];
            }
            rep.comm_plus = std::max(rep.comm_plus, rel_defect(lhs, rhs, skip));
        }
        // [B-, B3] = +B-
        {
            const auto l = apply(ScaledOp::Bminus, b3f);
            const auto r = apply(ScaledOp::B3, bmf);
            std::vector<double> lhs(f.size()), rhs(f.size());
            for (size_t i = 0; i < f.size(); ++i) {
                lhs[i] = l[i] - r[i];
                rhs[i] = bmf[i];
            }
            rep.comm_minus = std::max(rep.comm_minus, rel_defect(lhs, rhs, skip));
        }
        // [B+, B-] = -2 B3
        {
            const auto l = apply(ScaledOp::Bplus, bmf);
            const auto r = apply(ScaledOp::Bminus, bpf);
            std::vector<double> lhs(f.size()), rhs(f.size());
            for (size_t i = 0; i < f.size(); ++i) {
                lhs[i] = l[i] - r[i];
                rhs[i] = -2.0 * b3f[i];
            }
            rep.comm_pm = std::max(rep.comm_pm, rel_defect(lhs, rhs, skip));
        }
        // Casimir -B+B- + B3^2 - B3 must be A * identity
        {
            const auto pm = apply(ScaledOp::Bplus, bmf);
            const auto b33 = apply(ScaledOp::B3, b3f);
            double num = 0, den = 0;
            for (size_t i = skip; i + skip < f.size(); ++i) {
                const double cas = -pm[i] + b33[i] - b3f[i];
                num += cas * f[i];
                den += f[i] * f[i];
            }
            const double val = num / den;
            if (first) {
                cas_min = cas_max = val;
                first = false;
            } else {
                cas_min = std::min(cas_min, val);
                cas_max = std::max(cas_max, val);
            }
            rep.casimir_mean += val / tests.size();
        }
    }
    rep.casimir_spread =
        (cas_max - cas_min) / std::max(std::fabs(rep.casimir_mean), 1e-30);

    // eigen-relation and factorization chain on the exact eigenfunction
    {
        const auto b3c = apply(ScaledOp::B3, chi);
        std::vector<double> rhs(chi.size());
        for (size_t i = 0; i < chi.size(); ++i) rhs[i] = w_exact * chi[i];
        rep.eigen_b3 = rel_defect(b3c, rhs, skip);
    }
    {
        const auto up = apply(ScaledOp::Bplus_n, chi);
        const auto dn_up = apply(ScaledOp::Bminus_n, up);
        const double c = w_exact * (w_exact + 1.0) - A;
        std::vector<double> lhs(chi.size()), rhs(chi.size());
        for (size_t i = 0; i < chi.size(); ++i) {
            lhs[i] = dn_up[i] - up[i];
            rhs[i] = c * chi[i];
        }
        rep.chain_raise = rel_defect(lhs, rhs, skip);
    }
    {
        const auto dn = apply(ScaledOp::Bminus_n, chi);
        const auto up_dn = apply(ScaledOp::Bplus_n, dn);
        const double c = w_exact * (w_exact - 1.0) - A;
        std::vector<double> lhs(chi.size()), rhs(chi.size());
        for (size_t i = 0; i < chi.size(); ++i) {
            lhs[i] = up_dn[i] + dn[i];
            rhs[i] = c * chi[i];
        }
        rep.chain_lower = rel_defect(lhs, rhs, skip);
    }
    return rep;
}

std::vector<EnergySolution> ladder_spectrum(Half j, const Sector& sector,
                                            const ModelParams& params,
                                            const Calibration& calib, Mode mode,
                                            int np_max) {
    const DeltaPair dp = deltas(sector, params);
    if (j < dp.m_plus) throw std::invalid_argument("j below m_plus");
    if (!(j - dp.m_plus).is_integer())
        throw std::invalid_argument("j - m_plus must be an integer");
    std::vector<EnergySolution> out;
    bool any = false;
    for (int np = 0; np <= np_max; ++np) {
        const Su11Labels lab = su11_labels(j, dp, np);
        // the quantization value is f_n/2 = (weight factor / 2) * v
        const double D = 0.5 * calib.ladder_weight_factor * lab.v;
        try {
            auto sols = solve_quantization(D, sector, params, calib, mode,
                                           Route::ladder);
            any = true;
            out.insert(out.end(), sols.begin(), sols.end());
        } catch (const NoBoundState&) {
            // level closed; continue the ladder
        }
    }
    if (!any) throw NoBoundState("no bound level on the ladder");
    return out;
}

} // namespace gkkm

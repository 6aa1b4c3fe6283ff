#ifndef GKKM_TEST_HELPERS_HPP
#define GKKM_TEST_HELPERS_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "gkkm/verify.hpp"

namespace gkkm_test {

inline double rel(double a, double b) {
    return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-300});
}

/// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on the
/// Legendre recurrence (test-side quadrature oracle).
struct GaussLegendre {
    std::vector<double> x, w;
    explicit GaussLegendre(int n) : x(n), w(n) {
        for (int i = 0; i < n; ++i) {
            double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = t;
                for (int k = 1; k < n; ++k) {
                    const double p2 = ((2 * k + 1) * t * p1 - k * p0) / (k + 1);
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (t * p1 - p0) / (t * t - 1.0);
                const double step = p1 / dp;
                t -= step;
                if (std::fabs(step) < 1e-15) break;
            }
            double p0 = 1.0, p1 = t;
            for (int k = 1; k < n; ++k) {
                const double p2 = ((2 * k + 1) * t * p1 - k * p0) / (k + 1);
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (t * p1 - p0) / (t * t - 1.0);
            x[i] = t;
            w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
    }
    double integrate(const std::function<double(double)>& f) const {
        double s = 0;
        for (size_t i = 0; i < x.size(); ++i) s += w[i] * f(x[i]);
        return s;
    }
};

} // namespace gkkm_test

#endif

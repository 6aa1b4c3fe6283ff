#include <doctest.h>

#include <cmath>

#include "gkkm/specfun.hpp"
#include "gkkm/verify.hpp"
#include "helpers.hpp"

using namespace gkkm;
using gkkm_test::rel;

namespace {

// term-by-term reference series (independent oracle for the implementation)
double kummer_naive(int n, double b, double x) {
    double sum = 0;
    for (int k = 0; k <= n; ++k) {
        double t = 1;
        for (int i = 0; i < k; ++i) t *= (static_cast<double>(-n + i)) * x / ((b + i) * (i + 1));
        sum += t;
    }
    return sum;
}

} // namespace

TEST_SUITE_BEGIN("specfun");

TEST_CASE("pochhammer") {
    CHECK(pochhammer(5.5, 0) == 1.0);
    CHECK(pochhammer(3, 2) == 12.0);
    CHECK(pochhammer(-2, 3) == 0.0);
}

TEST_CASE("terminating series at fixed points") {
    CHECK(kummer_terminating(0, 2.0, 5.0) == 1.0);
    CHECK(kummer_terminating(0, 0.7, -3.0) == 1.0);
    CHECK(kummer_terminating(1, 2.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    // 1 - 4 + 2 = -1, from the explicit term-by-term sum
    CHECK(kummer_naive(2, 1.0, 2.0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(kummer_terminating(2, 1.0, 2.0) ==
          doctest::Approx(-1.0).epsilon(1e-14));
    CHECK_THROWS_AS(kummer_terminating(2, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(kummer_terminating(2, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("series value at x = 0 and agreement with the reference sum") {
    Rng rng(3);
    for (int it = 0; it < 400; ++it) {
        const int n = rng.uniform_int(0, 18);
        const double b = rng.uniform(0.5, 40.0);
        CHECK(kummer_terminating(n, b, 0.0) == 1.0);
        const double x = rng.uniform(0.0, 60.0);
        const double a = kummer_terminating(n, b, x);
        const double r = kummer_naive(n, b, x);
        CHECK(rel(a, r) < 1e-9);
    }
}

TEST_CASE("derivative identity by central differences") {
    // d/dx F(-n,b,x) = (-n/b) F(-(n-1), b+1, x)
    Rng rng(5);
    for (int it = 0; it < 60; ++it) {
        const int n = rng.uniform_int(1, 10);
        const double b = rng.uniform(1.0, 10.0);
        const double x = rng.uniform(0.2, 12.0);
        const double h = 1e-5 * (1.0 + x);
        const double lhs = (kummer_terminating(n, b, x + h) -
                            kummer_terminating(n, b, x - h)) / (2.0 * h);
        const double rhs = (-n / b) * kummer_terminating(n - 1, b + 1.0, x);
        CHECK(std::fabs(lhs - rhs) <=
              1e-8 * std::max({std::fabs(lhs), std::fabs(rhs), 1.0}));
    }
}

TEST_CASE("jacobi endpoints and the quadratic Legendre value") {
    CHECK(jacobi(0, 0.3, 1.7, 0.4) == 1.0);
    CHECK(jacobi(1, 0.3, 1.7, 1.0) == doctest::Approx(1.3).epsilon(1e-15));
    CHECK(jacobi(1, 2.0, 0.5, 1.0) == doctest::Approx(3.0).epsilon(1e-15));
    // Legendre closed form (3x^2 - 1)/2 at x = 0.5
    CHECK(jacobi(2, 0.0, 0.0, 0.5) == doctest::Approx(-0.125).epsilon(1e-14));
    CHECK_THROWS_AS(jacobi(2, -1.0, 0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(jacobi(2, 0.0, -1.5, 0.5), std::invalid_argument);
}

TEST_CASE("jacobi reflection symmetry") {
    Rng rng(9);
    for (int n = 0; n <= 8; ++n) {
        for (int it = 0; it < 20; ++it) {
            const double a = rng.uniform(-0.5, 2.0);
            const double b = rng.uniform(-0.5, 2.0);
            const double x = rng.uniform(-1.0, 1.0);
            const double lhs = jacobi(n, a, b, -x);
            const double rhs = (n % 2 ? -1.0 : 1.0) * jacobi(n, b, a, x);
            CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::max(1.0, std::fabs(rhs)));
        }
    }
}

TEST_CASE("jacobi orthogonality under the weighted inner product") {
    gkkm_test::GaussLegendre gl(4096);
    for (double a : {0.0, 0.5, 1.8028}) {
        for (double b : {0.0, 0.5, 1.8028}) {
            for (int i = 0; i <= 5; ++i) {
                for (int j = 0; j < i; ++j) {
                    auto w = [&](double x) {
                        return std::pow(1.0 - x, a) * std::pow(1.0 + x, b);
                    };
                    const double off = gl.integrate(
                        [&](double x) { return w(x) * jacobi(i, a, b, x) * jacobi(j, a, b, x); });
                    const double di = gl.integrate(
                        [&](double x) { return w(x) * jacobi(i, a, b, x) * jacobi(i, a, b, x); });
                    const double dj = gl.integrate(
                        [&](double x) { return w(x) * jacobi(j, a, b, x) * jacobi(j, a, b, x); });
                    CHECK(std::fabs(off) / std::sqrt(di * dj) < 1e-9);
                }
            }
        }
    }
}

TEST_SUITE_END();

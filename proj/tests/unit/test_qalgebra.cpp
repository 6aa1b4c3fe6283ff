#include <doctest.h>

#include <cmath>

#include "gkkm/errors.hpp"
#include "gkkm/qalgebra.hpp"
#include "gkkm/spectra.hpp"
#include "gkkm/verify.hpp"
#include "helpers.hpp"

using namespace gkkm;
using gkkm_test::rel;

TEST_SUITE_BEGIN("qalgebra");

TEST_CASE("structure constants at hand-checked points") {
    // zero couplings: r_b vanishes and r_1 keeps only the charge terms
    {
        const ModelParams p{1.3, 0, 0, 0, 0};
        const double E = -0.8, q = 1.5, m = 0.5;
        const auto k = structure_constants(E, Sector{Half(3), Half(1)}, p);
        CHECK(k.r_ab == 2.0);
        CHECK(k.r_aa == 0.0);
        CHECK(k.r_a == 0.0);
        CHECK(k.s_aa == 0.0);
        CHECK(k.r_b == 0.0);
        CHECK(rel(k.r_1, -4 * p.mu * E * q * m + 4 / p.mu * q * q * q * m) < 1e-14);
    }
    // q = m = 0, zero couplings: only the Hamiltonian terms survive
    {
        const ModelParams p{1.7, 0, 0, 0, 0};
        const double E = 0.9;
        const auto k = structure_constants(E, Sector{Half(0), Half(0)}, p);
        CHECK(k.r_1 == 0.0);
        CHECK(rel(k.s_a, 8 * E) < 1e-15);
        CHECK(rel(k.s_1, 2 * p.mu * p.mu * E * E + 4 * E) < 1e-14);
    }
}

TEST_CASE("printed casimir vanishes in the fully neutral sector") {
    const ModelParams p{1.4, 0, 0, 0, 0};
    CHECK(casimir_value(2.7, Sector{Half(0), Half(0)}, p, Mode::printed).K == 0.0);
}

TEST_CASE("casimir is quadratic in E with extractable coefficients") {
    const ModelParams p{1.2, 0.7, 1.1, 0.4, 0.2};
    const Sector s{Half(3), Half(1)};
    for (Mode mode : {Mode::printed, Mode::reconciled}) {
        // fit through three energies, then verify against two more
        const double E0 = -1.0, E1 = 0.5, E2 = 2.0;
        const double k0 = casimir_value(E0, s, p, mode).K;
        const double k1 = casimir_value(E1, s, p, mode).K;
        const double k2 = casimir_value(E2, s, p, mode).K;
        // Lagrange coefficients of a quadratic
        const double a =
            ((k2 - k0) / (E2 - E0) - (k1 - k0) / (E1 - E0)) / (E2 - E1);
        const double b = (k1 - k0) / (E1 - E0) - a * (E0 + E1);
        const double c = k0 - a * E0 * E0 - b * E0;
        for (double E : {-2.3, 3.1}) {
            CHECK(rel(casimir_value(E, s, p, mode).K, a * E * E + b * E + c) <
                  1e-12);
        }
        // leading coefficient matches the closed form mu^2 (c2+c3+4m^2+4q^2)
        const double q = s.q.value(), m = s.m.value();
        CHECK(rel(a, p.mu * p.mu * (p.c2 + p.c3 + 4 * m * m + 4 * q * q)) < 1e-12);
    }
}

TEST_CASE("casimir of generator matrices, scalar case") {
    StructureConstants k;
    k.r_ab = 2.0;
    k.r_b = 1.5;
    k.r_1 = 0.7;
    k.s_a = -2.0;
    k.s_1 = 3.0;
    Matrix A(1), B(1), C(1);
    A(0, 0) = 1.2;
    B(0, 0) = -0.4;
    C(0, 0) = 0.0;
    const Matrix K = casimir_general(A, B, C, k);
    const double a = 1.2, b = -0.4;
    const double expect = -k.r_ab * 2 * a * b * b + (k.r_ab * k.r_ab - k.r_b) * b * b +
                          (k.r_ab * k.r_a - 2 * k.r_1) * b +
                          (k.s_a) * a * a + (2 * k.s_1) * a;
    CHECK(K(0, 0) == doctest::Approx(expect).epsilon(1e-14));
    // all constants zero with C = 0 gives zero
    const Matrix K0 = casimir_general(A, B, C, StructureConstants{});
    CHECK(K0(0, 0) == 0.0);
    Matrix D(2);
    CHECK_THROWS_AS(casimir_general(A, B, D, k), std::invalid_argument);
}

TEST_CASE("general structure function: degree and the pure-gamma reduction") {
    StructureConstants k;
    k.r_ab = 2.0;
    const CasimirValue K{1.7};
    // only the K line survives: phi = -3072 g^6 K (2y-1)^2
    for (double x : {-1.2, 0.3, 2.7}) {
        const double y = x + 0.4;
        const double expect = -3072.0 * 64.0 * K.K * (2 * y - 1) * (2 * y - 1);
        CHECK(rel(phi_general(x, 0.4, k, K), expect) < 1e-14);
    }
    CHECK_THROWS_AS(phi_general(0.0, 0.0, StructureConstants{}, K), GammaZero);
}

TEST_CASE("system structure function is degree 6 and the general one degree 8") {
    const ModelParams p{1.3, 0.9, 1.7, 0.4, 0.25};
    const Sector s{Half(3), Half(1)};
    const double E = -0.7, u = 0.37;
    const auto spec = expand_phi(
        StructureFunctionSpec::Form::specific, u, 7,
        [&](double x) { return phi_specific(x, u, E, s, p); });
    CHECK(spec.coeffs[7] == doctest::Approx(0.0));
    CHECK(spec.degree() == 6);
    // 7-point fit of degree 6 is exact away from the nodes
    const auto fit = expand_phi(
        StructureFunctionSpec::Form::specific, u, 6,
        [&](double x) { return phi_specific(x, u, E, s, p); });
    for (double x : {-2.6, 7.3, 11.1}) {
        CHECK(rel(fit.eval(x), phi_specific(x, u, E, s, p)) < 1e-10);
    }
    // a generic algebra with quadratic leading terms reaches degree 8
    StructureConstants k;
    k.r_aa = 0.6;
    k.r_ab = 1.7;
    k.r_a = -0.8;
    k.r_b = 1.1;
    k.r_1 = 0.45;
    k.s_aa = 0.35;
    k.s_a = -1.4;
    k.s_1 = 2.2;
    const auto gen = expand_phi(
        StructureFunctionSpec::Form::general, 0.29, 8,
        [&](double x) { return phi_general(x, 0.29, k, CasimirValue{3.3}); });
    CHECK(gen.degree() == 8);
    for (double x : {-3.3, 9.4}) {
        CHECK(rel(gen.eval(x), phi_general(x, 0.29, k, CasimirValue{3.3})) < 1e-10);
    }
}

TEST_CASE("gamma-zero realization case") {
    StructureConstants k;
    k.r_b = 2.0;
    const CasimirValue K{1.3};
    // only r_b: phi = -K/(4 r_b)
    CHECK(phi_gamma_zero(1.0, 0.2, k, K) ==
          doctest::Approx(-K.K / (4.0 * k.r_b)).epsilon(1e-14));
    // degree-4 polynomial fit is exact
    k.r_aa = 0.7;
    k.r_a = -0.4;
    k.r_1 = 0.9;
    k.s_aa = 0.5;
    k.s_a = 1.1;
    k.s_1 = -0.3;
    std::vector<double> ys;
    const double u = 0.31;
    auto eval = [&](double x) { return phi_gamma_zero(x, u, k, K); };
    // Newton fit through 5 nodes, test elsewhere
    double nodes[5], vals[5];
    for (int i = 0; i < 5; ++i) {
        nodes[i] = i;
        vals[i] = eval(i);
    }
    for (int lv = 1; lv < 5; ++lv)
        for (int i = 4; i >= lv; --i)
            vals[i] = (vals[i] - vals[i - 1]) / (nodes[i] - nodes[i - lv]);
    auto fit = [&](double x) {
        double acc = vals[4];
        for (int i = 3; i >= 0; --i) acc = acc * (x - nodes[i]) + vals[i];
        return acc;
    };
    for (double x : {-1.7, 6.2}) CHECK(rel(fit(x), eval(x)) < 1e-11);
    // this system's algebra has r_ab = 2 and must be rejected here
    const ModelParams p{1.0, 0, 1, 1, 0};
    const auto ks = structure_constants(-1.0, Sector{Half(2), Half(0)}, p);
    CHECK_THROWS_AS(phi_gamma_zero(0.0, 0.0, ks, K), GammaZero);
    CHECK_THROWS_AS(phi_gamma_zero(0.0, 0.0, StructureConstants{}, K), EpsilonZero);
}

TEST_CASE("three forms agree after calibration") {
    const Calibration calib = Calibration::reconciled();
    Rng rng(23);
    for (int it = 0; it < 200; ++it) {
        ModelParams p{rng.uniform(0.4, 2.2), rng.uniform(-1.5, 1.5),
                      rng.uniform(0, 3), rng.uniform(0, 3), rng.uniform(-1, 1)};
        Sector s{Half(rng.uniform_int(-4, 4)), Half(rng.uniform_int(-4, 4))};
        if ((s.m.twice - s.q.twice) % 2 != 0) continue;
        const double q = s.q.value();
        const double E = 0.5 * (q * q / (p.mu * p.mu) + p.c4) - rng.uniform(0.1, 6.0);
        const double u = rng.uniform(-3, 3);
        const double x = rng.uniform(-4, 4);
        const double a = phi_specific(x, u, E, s, p);
        const double b = phi_factored(x, u, E, s, p, calib);
        const auto k = structure_constants(E, s, p);
        const auto K = casimir_value(E, s, p, Mode::reconciled);
        const double c = calib.phi_general_norm * phi_general(x, u, k, K);
        const double scale = std::max({std::fabs(a), std::fabs(b), 1.0});
        CHECK(std::fabs(a - b) / scale < 1e-9);
        CHECK(std::fabs(a - c) / scale < 1e-9);
    }
}

TEST_CASE("factored form vanishes at each stored root") {
    const ModelParams p{1.0, 1, 2, 1, 0.3};
    const Sector s{Half(2), Half(0)};
    const Calibration calib = Calibration::reconciled();
    const double E = -2.0, u = 0.4;
    const auto roots = phi_roots(E, s, p);
    const auto spec = phi_factored_spec(E, s, p, calib, u);
    for (double r : roots) {
        CHECK(std::fabs(phi_factored(r - u, u, E, s, p, calib)) /
                  (1.0 + std::fabs(spec.prefactor)) <
              1e-10);
    }
    // threshold guard
    CHECK_THROWS_AS(phi_factored(0.0, 0.0, 100.0, s, p, calib), ThresholdEnergy);
}

TEST_CASE("representation solve") {
    const Calibration calib = Calibration::reconciled();
    const ModelParams p{1.0, 1, 2, 1, 0.3};
    const Sector s{Half(2), Half(0)};
    // p = 0 boundary case: one-dimensional, no interior positivity required
    {
        const auto sols = solve_representation(0, s, p, calib);
        REQUIRE(!sols.empty());
        for (const auto& rs : sols) {
            CHECK(rs.p == 0);
            CHECK(rs.phi_values.empty());
            CHECK(std::fabs(phi_factored(0.0, rs.u, rs.E, s, p, calib)) < 1e-9);
        }
    }
    // energies coincide with the parabolic route at p = n1 + n2
    {
        Rng rng(31);
        int done = 0;
        for (int it = 0; it < 200 && done < 60; ++it) {
            ModelParams pp{rng.uniform(0.4, 2.2), rng.uniform(0, 1.5),
                           rng.uniform(0, 3), rng.uniform(0, 3), rng.uniform(0, 1)};
            Sector ss{Half(rng.uniform_int(-4, 4)), Half(rng.uniform_int(-4, 4))};
            if ((ss.m.twice - ss.q.twice) % 2 != 0) continue;
            const int pv = rng.uniform_int(0, 3);
            try {
                const auto reps = solve_representation(pv, ss, pp, calib);
                const auto par = energy_parabolic({pv, 0}, ss, pp, calib);
                REQUIRE(reps.size() == par.size());
                for (size_t i = 0; i < reps.size(); ++i) {
                    CHECK(rel(reps[i].E, par[i].E) < 1e-10);
                    for (double v : reps[i].phi_values) CHECK(v > 0);
                }
                ++done;
            } catch (const NoBoundState&) {
            } catch (const NoUnitaryRep&) {
            }
        }
        CHECK(done >= 60);
    }
    // the free sector has no representation to find
    CHECK_THROWS_AS(solve_representation(1, Sector{Half(0), Half(0)},
                                         ModelParams{1, 0, 0, 0, 0}, calib),
                    NoBoundState);
}

TEST_SUITE_END();

#include <doctest.h>

#include <cmath>

#include "gkkm/errors.hpp"
#include "gkkm/repmatrix.hpp"
#include "gkkm/spectra.hpp"
#include "helpers.hpp"

using namespace gkkm;
using gkkm_test::rel;

namespace {

struct Fixture {
    ModelParams params{1.0, 1, 2, 1, 0.3};
    Sector sector{Half(2), Half(0)};
    Calibration calib = Calibration::reconciled();

    RepSolution rep_at(int p, int branch = 0) const {
        const auto sols = solve_representation(p, sector, params, calib);
        REQUIRE(static_cast<int>(sols.size()) > branch);
        return sols[branch];
    }
};

} // namespace

TEST_SUITE_BEGIN("repmatrix");

TEST_CASE("one-dimensional representation") {
    Fixture fx;
    const auto rs = fx.rep_at(0);
    const auto k = structure_constants(rs.E, fx.sector, fx.params);
    const auto K = casimir_value(rs.E, fx.sector, fx.params, Mode::reconciled);
    const auto rep = build_rep(rs, k, K);
    CHECK(rep.dim == 1);
    CHECK(rep.C(0, 0) == 0.0);
    const auto rr = verify_relations(rep, k, K);
    CHECK(rr.comm_ab < 1e-12);
    CHECK(rr.rel_ac < 1e-12);
    CHECK(rr.rel_bc < 1e-12);
    CHECK(rr.casimir < 1e-12);
}

TEST_CASE("two-dimensional representation against direct arithmetic") {
    Fixture fx;
    const auto rs = fx.rep_at(1);
    const auto k = structure_constants(rs.E, fx.sector, fx.params);
    const auto K = casimir_value(rs.E, fx.sector, fx.params, Mode::reconciled);
    const auto rep = build_rep(rs, k, K);
    REQUIRE(rep.dim == 2);
    // hand-built entries
    const auto osc = oscillator_realization(k, rs.u);
    const double phi1 = rs.phi_values[0];
    CHECK(rep.N(0, 0) == 0.0);
    CHECK(rep.N(1, 1) == 1.0);
    CHECK(rep.Bop_raise(1, 0) == doctest::Approx(std::sqrt(phi1)));
    CHECK(rep.Bop_lower(0, 1) == rep.Bop_raise(1, 0));
    CHECK(rep.A(0, 0) == doctest::Approx(osc.a_of(0)));
    CHECK(rep.A(1, 1) == doctest::Approx(osc.a_of(1)));
    const double off = std::sqrt(phi1) * std::sqrt(osc.rho2_of(0));
    CHECK(rep.B(0, 1) == doctest::Approx(off));
    CHECK(rep.B(1, 0) == doctest::Approx(off));
    CHECK(rep.B(0, 0) == doctest::Approx(osc.b_of(0)));
    // C = [A, B] by 2x2 arithmetic: off-diagonal (A00 - A11) * B01
    CHECK(rep.C(0, 1) == doctest::Approx((osc.a_of(0) - osc.a_of(1)) * off));
    CHECK(rep.C(1, 0) == doctest::Approx(-(osc.a_of(0) - osc.a_of(1)) * off));
    CHECK(rep.C(0, 0) == 0.0);
}

TEST_CASE("ladder bookkeeping inside the representation") {
    Fixture fx;
    const auto rs = fx.rep_at(3);
    const auto k = structure_constants(rs.E, fx.sector, fx.params);
    const auto K = casimir_value(rs.E, fx.sector, fx.params, Mode::reconciled);
    const auto rep = build_rep(rs, k, K);
    // N spectrum is 0..p by construction
    for (int i = 0; i <= 3; ++i) CHECK(rep.N(i, i) == i);
    // deformed commutator: bb+ - b+b diagonal with entries Phi(k+1) - Phi(k)
    const Matrix comm = rep.Bop_lower * rep.Bop_raise - rep.Bop_raise * rep.Bop_lower;
    for (int i = 0; i <= 3; ++i) {
        const double up = i < 3 ? rs.phi_values[i] : 0.0;
        const double dn = i > 0 ? rs.phi_values[i - 1] : 0.0;
        CHECK(comm(i, i) == doctest::Approx(up - dn).epsilon(1e-14));
        for (int j = 0; j <= 3; ++j)
            if (i != j) CHECK(comm(i, j) == 0.0);
    }
    // [N, b+] = b+ and [N, b] = -b exactly
    const Matrix nb = commutator(rep.N, rep.Bop_raise) - rep.Bop_raise;
    CHECK(nb.max_abs() == 0.0);
    const Matrix nbm = commutator(rep.N, rep.Bop_lower) + rep.Bop_lower;
    CHECK(nbm.max_abs() == 0.0);
    // A eigenvalues follow the realization profile
    const auto osc = oscillator_realization(k, rs.u);
    for (int i = 0; i <= 3; ++i) {
        const double y = i + rs.u;
        CHECK(rep.A(i, i) ==
              doctest::Approx(0.5 * k.r_ab * (y * y - 0.25) - k.r_b / (2.0 * k.r_ab)));
        CHECK(rep.A(i, i) == doctest::Approx(osc.a_of(i)));
    }
}

TEST_CASE("relations hold to 1e-9 up to p = 20 and degrade under corruption") {
    Fixture fx;
    for (int p : {0, 1, 2, 5, 12, 20}) {
        const auto rs = fx.rep_at(p);
        const auto k = structure_constants(rs.E, fx.sector, fx.params);
        const auto K = casimir_value(rs.E, fx.sector, fx.params, Mode::reconciled);
        const auto rep = build_rep(rs, k, K);
        const auto rr = verify_relations(rep, k, K);
        CHECK(rr.comm_ab < 1e-9);
        CHECK(rr.rel_ac < 1e-9);
        CHECK(rr.rel_bc < 1e-9);
        CHECK(rr.casimir < 1e-9);
    }
    // sensitivity of the first relation to a corrupted r_1
    const auto rs = fx.rep_at(2);
    const auto k = structure_constants(rs.E, fx.sector, fx.params);
    const auto K = casimir_value(rs.E, fx.sector, fx.params, Mode::reconciled);
    const auto rep = build_rep(rs, k, K);
    auto kc = k;
    kc.r_1 += 1e-3 * (1.0 + std::fabs(k.r_1));
    const auto rr = verify_relations(rep, kc, K);
    CHECK(rr.rel_ac >= 1e-4);
}

TEST_CASE("negative interior values are rejected") {
    Fixture fx;
    auto rs = fx.rep_at(2);
    rs.phi_values[1] = -1.0;
    const auto k = structure_constants(rs.E, fx.sector, fx.params);
    const auto K = casimir_value(rs.E, fx.sector, fx.params, Mode::reconciled);
    CHECK_THROWS_AS(build_rep(rs, k, K), NegativePhi);
}

TEST_CASE("degenerate sector with vanishing m1 = m2 still closes") {
    // q = m = 0 with only the Coulomb-like coupling keeps r_1 = 0, which makes
    // one diagonal coefficient a removable 0/0
    const ModelParams p{1.0, 0.5, 0, 0, 0};
    const Sector s{Half(0), Half(0)};
    const Calibration calib = Calibration::reconciled();
    const auto sols = solve_representation(2, s, p, calib);
    for (const auto& rs : sols) {
        const auto k = structure_constants(rs.E, s, p);
        const auto K = casimir_value(rs.E, s, p, Mode::reconciled);
        const auto rep = build_rep(rs, k, K);
        const auto rr = verify_relations(rep, k, K);
        CHECK(rr.rel_ac < 1e-9);
        CHECK(rr.rel_bc < 1e-9);
        CHECK(rr.casimir < 1e-9);
    }
}

TEST_CASE("norm estimate agrees with a hand value") {
    Matrix m(2);
    m(0, 0) = 3;
    m(1, 1) = -4;
    CHECK(norm2(m) == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_SUITE_END();

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "gkkm/io.hpp"
#include "gkkm/verify.hpp"
#include "helpers.hpp"

using namespace gkkm;

TEST_SUITE_BEGIN("io");

TEST_CASE("doubles round-trip through the emitted text") {
    Rng rng(41);
    for (int i = 0; i < 2000; ++i) {
        const double v = (rng.uniform(-1, 1)) * std::pow(10.0, rng.uniform_int(-12, 12));
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(std::stod(format_double(-11.708203932499369)) == -11.708203932499369);
}

TEST_CASE("key=value parsing") {
    const std::string path = "/tmp/gkkm_test_cfg.txt";
    {
        std::ofstream out(path);
        out << "# comment line\n"
            << "mu = 2.0\n"
            << "q = 1,2\n"
            << "n = 2..4\n"
            << "mode = printed   # trailing comment\n";
    }
    RunConfig cfg;
    cfg.apply_file(path);
    CHECK(cfg.params.mu == 2.0);
    REQUIRE(cfg.q_list.size() == 2);
    CHECK(cfg.q_list[1] == Half(4));
    REQUIRE(cfg.n_list.size() == 3);
    CHECK(cfg.n_list[0] == Half(4));
    CHECK(cfg.mode == Mode::printed);
    std::remove(path.c_str());

    {
        std::ofstream out(path);
        out << "nonsense = 1\n";
    }
    RunConfig bad;
    CHECK_THROWS(bad.apply_file(path));
    std::remove(path.c_str());
}

TEST_CASE("rows render identically across calls and formats agree") {
    SpectrumRow row;
    row.mu = 1;
    row.c1 = row.c2 = row.c3 = row.c4 = 0;
    row.q = Half(4);
    row.m = Half(4);
    row.n = Half(6);
    EnergySolution e1;
    e1.E = -11.708203932499369;
    e1.residual = 1e-15;
    e1.window_ok = true;
    EnergySolution e2 = e1;
    e2.E = 1.7082039324993694;
    row.energies = {{"spherical", e1}, {"oracle", e2}};
    row.max_pairwise_gap = std::fabs(e1.E - e2.E);
    const std::vector<SpectrumRow> rows{row};

    const Calibration calib = Calibration::reconciled();
    const std::string t1 = render_rows_table(rows);
    const std::string t2 = render_rows_table(rows);
    CHECK(t1 == t2);
    const std::string c1s = render_rows_csv(rows);
    CHECK(c1s.find("E_spherical") != std::string::npos);
    CHECK(c1s.find(format_double(e1.E)) != std::string::npos);
    const std::string j1 = render_rows_json(rows, Mode::reconciled, calib, 7);
    CHECK(j1.find("\"calibration_hash\":\"" + calib.hash() + "\"") !=
          std::string::npos);
    CHECK(j1.find(format_double(e2.E)) != std::string::npos);
    CHECK(j1 == render_rows_json(rows, Mode::reconciled, calib, 7));
}

TEST_CASE("check report renders pass and failure lines") {
    CheckResult ok{"suite/alpha", 1e-12, 1e-9, true, ""};
    CheckResult bad{"suite/beta", 2e-3, 1e-9, false, "worst at x"};
    const std::string text =
        render_checks({ok, bad}, Mode::reconciled, Calibration::reconciled());
    CHECK(text.find("pass  suite/alpha") != std::string::npos);
    CHECK(text.find("FAIL  suite/beta") != std::string::npos);
    CHECK(text.find("worst at x") != std::string::npos);
}

TEST_SUITE_END();

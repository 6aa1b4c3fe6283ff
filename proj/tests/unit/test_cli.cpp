#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "gkkm/calibration.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cmd(const std::string& args) {
    const std::string cmd = std::string(GKKM_BIN) + " " + args + " 2>&1";
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0)
        r.out.append(buf.data(), got);
    const int st = pclose(p);
    r.exit_code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string calib_flag() {
    return std::string("--calibration ") + GKKM_SOURCE_DIR +
           "/data/calibration.txt";
}

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("spectrum: limit sector with two routes agrees") {
    const auto r = run_cmd("spectrum --mu 1 --q 2 --n 3 "
                           "--routes spherical,oracle --mode reconciled " +
                           calib_flag());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("E_spherical") != std::string::npos);
    CHECK(r.out.find("E_oracle") != std::string::npos);
    CHECK(r.out.find("-11.7082") != std::string::npos);
    CHECK(r.out.find("1.70820") != std::string::npos);
}

TEST_CASE("spectrum: free sector exits with the no-states code") {
    const auto r =
        run_cmd("spectrum --q 0 --c 0,0,0,0 --n 1..3 " + calib_flag());
    CHECK(r.exit_code == 3);
    CHECK(r.out.find("no bound states") != std::string::npos);
}

TEST_CASE("spectrum: validation failures exit 2") {
    CHECK(run_cmd("spectrum --mu -1 --q 1 --n 2").exit_code == 2);
    CHECK(run_cmd("spectrum --q 1").exit_code == 2);         // no n
    CHECK(run_cmd("spectrum --n 2").exit_code == 2);         // no q
    CHECK(run_cmd("spectrum --q 1 --n 2 --routes bogus").exit_code == 2);
}

TEST_CASE("spectrum: json output is deterministic and carries meta") {
    const std::string args = "spectrum --mu 1 --q 2 --m 0,1 --n 3,4 "
                             "--format json --seed 9 " + calib_flag();
    const auto r1 = run_cmd(args);
    const auto r2 = run_cmd(args);
    CHECK(r1.exit_code == 0);
    CHECK(r1.out == r2.out);
    CHECK(r1.out.find("\"version\":\"1.0.0\"") != std::string::npos);
    CHECK(r1.out.find("\"mode\":\"reconciled\"") != std::string::npos);
    const gkkm::Calibration calib = gkkm::Calibration::reconciled();
    CHECK(r1.out.find(calib.hash()) != std::string::npos);
}

TEST_CASE("spectrum: csv round trips against json values") {
    const std::string base = "spectrum --mu 1 --q 2 --n 3 --routes spherical ";
    const auto csv = run_cmd(base + "--format csv " + calib_flag());
    const auto json = run_cmd(base + "--format json " + calib_flag());
    CHECK(csv.exit_code == 0);
    // the deep branch energy string appears identically in both formats
    const std::string needle = "-11.708203932499";
    CHECK(csv.out.find(needle) != std::string::npos);
    CHECK(json.out.find(needle) != std::string::npos);
}

TEST_CASE("wavefunction: emitted samples are normalized with one header") {
    const auto r = run_cmd("wavefunction --kind radial --mu 1 --q 2 --j 2 "
                           "--n-r 1 --samples 1200 " + calib_flag());
    CHECK(r.exit_code == 0);
    // exactly one header
    CHECK(r.out.find("coordinate,value") == 0);
    CHECK(r.out.find("coordinate,value", 1) == std::string::npos);
    // parse samples, integrate the square by trapezoid, count nodes
    std::vector<double> xs, vs;
    size_t pos = r.out.find('\n') + 1;
    while (pos < r.out.size()) {
        size_t eol = r.out.find('\n', pos);
        if (eol == std::string::npos) break;
        const std::string line = r.out.substr(pos, eol - pos);
        pos = eol + 1;
        const auto comma = line.find(',');
        if (comma == std::string::npos) continue;
        xs.push_back(std::stod(line.substr(0, comma)));
        vs.push_back(std::stod(line.substr(comma + 1)));
    }
    REQUIRE(xs.size() == 1200);
    double acc = 0;
    for (size_t i = 0; i + 1 < xs.size(); ++i)
        acc += 0.5 * (vs[i] * vs[i] + vs[i + 1] * vs[i + 1]) * (xs[i + 1] - xs[i]);
    CHECK(std::fabs(acc - 1.0) < 1e-6);
    int nodes = 0;
    double last = 0;
    double mx = 0;
    for (double v : vs) mx = std::max(mx, std::fabs(v));
    for (size_t i = 1; i + 1 < vs.size(); ++i) {
        if (std::fabs(vs[i]) < 1e-9 * mx) continue;
        if (last != 0 && std::signbit(vs[i]) != std::signbit(last)) ++nodes;
        last = vs[i];
    }
    CHECK(nodes == 1);
    CHECK(run_cmd("wavefunction --kind radial --mu 1 --q 2 --j 0 --n-r 1")
              .exit_code == 2);
}

TEST_CASE("algebra dump runs and reports small residuals") {
    const auto r = run_cmd("algebra --mu 1 --q 1 --m 0 --c 1,2,1,0.3 --p 3 " +
                           calib_flag());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("structure constants") != std::string::npos);
    CHECK(r.out.find("matrix residuals") != std::string::npos);
    CHECK(r.out.find("phi_factored") != std::string::npos);
}

TEST_CASE("verify: corrupted calibration fails citing the oracle") {
    // flip alpha_sign in a copy of the shipped calibration
    const std::string path = "/tmp/gkkm_test_corrupt_calibration.txt";
    {
        gkkm::Calibration c = gkkm::Calibration::reconciled();
        c.alpha_sign = 1.0;
        c.save(path);
    }
    const auto r = run_cmd("verify --samples 40 --p-max 4 --calibration " + path);
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("first failing invariant") != std::string::npos);
    CHECK(r.out.find("kk-limit") != std::string::npos);
    std::remove(path.c_str());
}

TEST_SUITE_END();

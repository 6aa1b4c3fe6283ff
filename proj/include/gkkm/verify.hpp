#ifndef GKKM_VERIFY_HPP
#define GKKM_VERIFY_HPP

#include <cstdint>
#include <vector>

#include "gkkm/calibration.hpp"
#include "gkkm/io.hpp"
#include "gkkm/model.hpp"

namespace gkkm {

struct SuiteOptions {
    Mode mode = Mode::reconciled;
    Calibration calib;
    uint64_t seed = 1;
    int samples = 1000;
    int p_max = 20;
    int threads = 0;
};

/// The full verification grid: three mu values times three coupling tuples
/// times every admissible sector with |q|, |m| <= 2.
struct GridPoint {
    ModelParams params;
    Sector sector;
};
std::vector<GridPoint> verification_grid();

std::vector<CheckResult> suite_kk_limit(const SuiteOptions& o);
std::vector<CheckResult> suite_cross_route(const SuiteOptions& o);
std::vector<CheckResult> suite_phi_forms(const SuiteOptions& o);
std::vector<CheckResult> suite_rep_constraints(const SuiteOptions& o);
std::vector<CheckResult> suite_matrix_relations(const SuiteOptions& o);
std::vector<CheckResult> suite_su11(const SuiteOptions& o);
std::vector<CheckResult> suite_wavefunction(const SuiteOptions& o);
std::vector<CheckResult> suite_degeneracy(const SuiteOptions& o);

/// All suites in report order.
std::vector<CheckResult> run_all_suites(const SuiteOptions& o);

/// Regenerate every calibration key from first principles (eigensolver runs
/// and cross-form fits).
Calibration recalibrate(int threads = 0);

/// Deterministic uniform in [lo, hi) from a splitmix64 stream.
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next_u64();
    double uniform(double lo, double hi);
    int uniform_int(int lo, int hi);  // inclusive
};

} // namespace gkkm

#endif

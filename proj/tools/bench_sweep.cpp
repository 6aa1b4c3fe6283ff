// Compares the serial reference sweep against the OpenMP sweep on the two
// hot kernels: self-consistent eigensolves over the verification grid and
// structure-function sampling.  Results must agree bit for bit.
#include <cmath>
#include <cstdio>
#include <vector>

#include <omp.h>

#include "gkkm/errors.hpp"
#include "gkkm/oracle.hpp"
#include "gkkm/qalgebra.hpp"
#include "gkkm/spectra.hpp"
#include "gkkm/sweep.hpp"
#include "gkkm/verify.hpp"

using namespace gkkm;

namespace {

struct Kernel {
    const char* name;
    std::size_t items;
    double (*run)(std::size_t);
};

double oracle_item(std::size_t i) {
    static const std::vector<GridPoint> grid = verification_grid();
    const GridPoint& g = grid[i % grid.size()];
    const Calibration calib = Calibration::reconciled();
    const DeltaPair dp = deltas(g.sector, g.params);
    try {
        const auto sols =
            energy_selfconsistent(0, dp.m_plus, g.sector, g.params, calib);
        double acc = 0;
        for (const auto& s : sols) acc += s.E;
        return acc;
    } catch (const NoBoundState&) {
        return 0.0;
    }
}

double phi_item(std::size_t i) {
    Rng rng(0x9042 + i);
    ModelParams params;
    params.mu = rng.uniform(0.4, 2.2);
    params.c1 = rng.uniform(-1.5, 1.5);
    params.c2 = rng.uniform(0.0, 3.0);
    params.c3 = rng.uniform(0.0, 3.0);
    params.c4 = rng.uniform(-1.0, 1.0);
    const Sector sector{Half(2 * rng.uniform_int(-2, 2)),
                        Half(2 * rng.uniform_int(-2, 2))};
    const double q = sector.q.value();
    const double E =
        0.5 * (q * q / (params.mu * params.mu) + params.c4) - rng.uniform(0.05, 8.0);
    const double u = rng.uniform(-3.0, 3.0);
    const auto k = structure_constants(E, sector, params);
    const auto K = casimir_value(E, sector, params, Mode::reconciled);
    double acc = 0;
    for (int j = 0; j < 200; ++j) {
        const double x = rng.uniform(-4.0, 4.0);
        acc += phi_general(x, u, k, K) - phi_specific(x, u, E, sector, params);
    }
    return acc;
}

} // namespace

int main() {
    const Kernel kernels[] = {
        {"oracle-eigensolve", 96, &oracle_item},
        {"phi-sampling", 4096, &phi_item},
    };
    std::printf("%-20s %10s %12s %12s %9s  %s\n", "kernel", "items", "serial[s]",
                "openmp[s]", "speedup", "agreement");
    for (const Kernel& k : kernels) {
        const double t0 = omp_get_wtime();
        const auto serial = serial_map<double>(k.items, k.run);
        const double t1 = omp_get_wtime();
        const auto parallel = parallel_map<double>(k.items, k.run, 0);
        const double t2 = omp_get_wtime();
        bool same = serial.size() == parallel.size();
        for (std::size_t i = 0; same && i < serial.size(); ++i)
            same = serial[i] == parallel[i] ||
                   (std::isnan(serial[i]) && std::isnan(parallel[i]));
        std::printf("%-20s %10zu %12.3f %12.3f %8.2fx  %s\n", k.name, k.items,
                    t1 - t0, t2 - t1, (t1 - t0) / (t2 - t1),
                    same ? "bit-identical" : "MISMATCH");
    }
    return 0;
}

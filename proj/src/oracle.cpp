#include "gkkm/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "gkkm/errors.hpp"

namespace gkkm {

namespace {

constexpr double kTailTol = 1e-10;

// ---- symmetric tridiagonal eigen machinery ------------------------------

// number of eigenvalues of T strictly below x (Sturm/LDL^T sign count)
int count_below(const std::vector<double>& d, const std::vector<double>& e,
                double x) {
    const size_t n = d.size();
    int cnt = 0;
    double t = d[0] - x;
    if (t < 0) ++cnt;
    for (size_t i = 1; i < n; ++i) {
        double denom = t;
        if (std::fabs(denom) < 1e-300) denom = denom < 0 ? -1e-300 : 1e-300;
        t = d[i] - x - e[i - 1] * e[i - 1] / denom;
        if (t < 0) ++cnt;
    }
    return cnt;
}

// k-th (0-based) eigenvalue by bisection
double eigenvalue_k(const std::vector<double>& d, const std::vector<double>& e,
                    int k) {
    double lo = d[0], hi = d[0];
    for (size_t i = 0; i < d.size(); ++i) {
        const double el = i > 0 ? std::fabs(e[i - 1]) : 0.0;
        const double er = i < e.size() ? std::fabs(e[i]) : 0.0;
        lo = std::min(lo, d[i] - el - er);
        hi = std::max(hi, d[i] + el + er);
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (count_below(d, e, mid) > k)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= 1e-15 * std::max({std::fabs(lo), std::fabs(hi), 1.0}))
            break;
    }
    return 0.5 * (lo + hi);
}

uint64_t splitmix64(uint64_t& s) {
    uint64_t z = (s += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// eigenvector by inverse iteration with a slightly shifted LU (partial pivot)
std::vector<double> inverse_iteration(const std::vector<double>& d,
                                      const std::vector<double>& e,
                                      double lambda) {
    const size_t n = d.size();
    const double shift = lambda * (1.0 + 1e-14);
    std::vector<double> v(n);
    uint64_t seed = 0x9d2c5680cafef00dull;
    for (auto& x : v) x = (splitmix64(seed) >> 11) * 0x1.0p-53 - 0.5;
    for (int pass = 0; pass < 3; ++pass) {
        // solve (T - shift I) w = v by LU with partial pivoting on a tridiag
        std::vector<double> a(n), b(n, 0.0), c(n, 0.0), rhs = v;
        for (size_t i = 0; i < n; ++i) a[i] = d[i] - shift;
        for (size_t i = 0; i + 1 < n; ++i) {
            b[i] = e[i];       // superdiagonal
            c[i] = e[i];       // subdiagonal (symmetric)
        }
        std::vector<double> up2(n, 0.0);  // second superdiagonal from pivoting
        for (size_t i = 0; i + 1 < n; ++i) {
            if (std::fabs(c[i]) > std::fabs(a[i])) {
                std::swap(a[i], c[i]);
                std::swap(b[i], a[i + 1]);
                std::swap(up2[i], b[i + 1]);
                std::swap(rhs[i], rhs[i + 1]);
            }
            if (std::fabs(a[i]) < 1e-300) a[i] = 1e-300;
            const double m = c[i] / a[i];
            a[i + 1] -= m * b[i];
            b[i + 1] -= m * up2[i];
            rhs[i + 1] -= m * rhs[i];
        }
        if (std::fabs(a[n - 1]) < 1e-300) a[n - 1] = 1e-300;
        std::vector<double> w(n);
        w[n - 1] = rhs[n - 1] / a[n - 1];
        if (n >= 2) w[n - 2] = (rhs[n - 2] - b[n - 2] * w[n - 1]) / a[n - 2];
        for (size_t ii = n; ii-- > 2;) {
            const size_t i = ii - 2;
            w[i] = (rhs[i] - b[i] * w[i + 1] - up2[i] * w[i + 2]) / a[i];
        }
        double nrm = 0;
        for (double x : w) nrm += x * x;
        nrm = std::sqrt(nrm);
        for (size_t i = 0; i < n; ++i) v[i] = w[i] / nrm;
    }
    // fix overall sign: make the first sizable entry positive
    for (double x : v) {
        if (std::fabs(x) > 1e-8) {
            if (x < 0)
                for (auto& y : v) y = -y;
            break;
        }
    }
    return v;
}

struct Tridiag {
    std::vector<double> d, e;
};

Tridiag radial_matrix(double A, double alpha, double r_max, int n) {
    const double h = r_max / (n + 1);
    Tridiag t;
    t.d.resize(n);
    t.e.assign(n - 1, -1.0 / (h * h));
    for (int i = 0; i < n; ++i) {
        const double r = (i + 1) * h;
        t.d[i] = 2.0 / (h * h) + A / (r * r) - alpha / r;
    }
    return t;
}

Tridiag parabolic_matrix(double m_i, double alpha, double beta, double x_max,
                         int n) {
    const double h = x_max / (n + 1);
    Tridiag t;
    t.d.resize(n);
    t.e.resize(n - 1);
    for (int i = 0; i < n; ++i) {
        const double x = (i + 1) * h;
        const double pl = x - 0.5 * h, pr = x + 0.5 * h;
        t.d[i] = (pl + pr) / (h * h) + m_i * m_i / (4.0 * x) - 0.25 * alpha -
                 0.25 * beta * x;
        if (i + 1 < n) t.e[i] = -pr / (h * h);
    }
    return t;
}

double vec_max_abs(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

template <class MatFn>
EigResult solve_with_refinement(MatFn make, double len0, int points, int count,
                                const char* what) {
    double len = len0;
    for (int doubling = 0; doubling <= 6; ++doubling) {
        const int n1 = points;
        const int n2 = 2 * points + 1;  // same nodes plus midpoints
        const Tridiag t1 = make(len, n1);
        const Tridiag t2 = make(len, n2);
        EigResult res;
        res.spacing = len / (n2 + 1);
        res.grid.resize(n2);
        for (int i = 0; i < n2; ++i) res.grid[i] = (i + 1) * res.spacing;
        bool tail_ok = true;
        for (int k = 0; k < count; ++k) {
            const double l1 = eigenvalue_k(t1.d, t1.e, k);
            const double l2 = eigenvalue_k(t2.d, t2.e, k);
            res.eigenvalues.push_back((4.0 * l2 - l1) / 3.0);
            res.error_estimate.push_back(std::fabs(l2 - l1) / 3.0);
            auto v = inverse_iteration(t2.d, t2.e, l2);
            if (std::fabs(v.back()) > kTailTol * vec_max_abs(v)) tail_ok = false;
            res.eigenvectors.push_back(std::move(v));
        }
        if (tail_ok) return res;
        len *= 2;
        points *= 2;  // keep the spacing while the box grows
    }
    throw NoConvergence(std::string(what) +
                        ": boundary tail above 1e-10 after 6 domain doublings");
}

} // namespace

EigResult radial_eigensolve(double A, double alpha, GridSpec grid, int count) {
    if (grid.scheme != GridSpec::Scheme::uniform)
        throw std::invalid_argument("radial_eigensolve: only the uniform scheme is implemented");
    if (grid.points < 200)
        throw std::invalid_argument("radial_eigensolve: need at least 200 points");
    if (!(A >= -0.25 + 1e-12))
        throw std::invalid_argument("radial_eigensolve: A below the stability bound -1/4");
    if (count < 1) throw std::invalid_argument("count must be positive");
    return solve_with_refinement(
        [&](double len, int n) { return radial_matrix(A, alpha, len, n); },
        grid.r_max, grid.points, count, "radial_eigensolve");
}

EigResult parabolic_eigensolve(double m_i, double alpha, double beta,
                               GridSpec grid, int count) {
    if (grid.scheme != GridSpec::Scheme::uniform)
        throw std::invalid_argument("parabolic_eigensolve: only the uniform scheme is implemented");
    if (grid.points < 200)
        throw std::invalid_argument("parabolic_eigensolve: need at least 200 points");
    if (!(beta < 0))
        throw std::invalid_argument("parabolic_eigensolve: beta must be negative");
    if (count < 1) throw std::invalid_argument("count must be positive");
    return solve_with_refinement(
        [&](double len, int n) { return parabolic_matrix(m_i, alpha, beta, len, n); },
        grid.r_max, grid.points, count, "parabolic_eigensolve");
}

namespace {

// n_r-th eigenvalue of the radial problem at fixed box/points (no Richardson)
double radial_eig_plain(double A, double alpha, double r_max, int points,
                        int n_r) {
    const Tridiag t = radial_matrix(A, alpha, r_max, points);
    return eigenvalue_k(t.d, t.e, n_r);
}

} // namespace

std::vector<EnergySolution> energy_selfconsistent(int n_r, Half j,
                                                  const Sector& sector,
                                                  const ModelParams& params,
                                                  const Calibration& calib) {
    params.validate();
    sector.validate();
    if (n_r < 0) throw std::invalid_argument("n_r must be nonnegative");
    const DeltaPair dp = deltas(sector, params);
    if (j < dp.m_plus) throw std::invalid_argument("j below m_plus");
    if (!sector_binds(sector, params, calib))
        throw NoBoundState("sector has no bound window");

    // alpha(E) and beta(E) are linear; sample them once.  The root search
    // runs in kappa = sqrt(-beta) where near-threshold levels stay separated.
    const RadialProblem rp0 = radial_problem(0.0, sector, params, j, calib);
    const RadialProblem rp1 = radial_problem(1.0, sector, params, j, calib);
    const double A = rp0.A;
    const double alpha_slope = rp1.alpha - rp0.alpha;
    auto alpha_of = [&](double E) { return rp0.alpha + alpha_slope * E; };
    const double b0 = -rp0.beta;  // beta(E) = 2E - b0
    auto E_of = [&](double kappa) { return 0.5 * (b0 - kappa * kappa); };

    const double s_of_A = -0.5 + std::sqrt(0.25 + A);
    const double D_target = n_r + s_of_A + 1.0;
    // all self-consistent kappa lie below the window boundary of the ground
    // bound (eig >= -alpha^2/4 gives kappa <= |alpha|/2); add slack
    const double kappa_hi = (2.0 * D_target + 2.0) / params.mu + 1.0;
    const double kappa_lo = kappa_hi * 1e-4;

    auto rmax_for = [&](double kappa) {
        return (2.0 * (n_r + s_of_A + 3.0) + 40.0) / kappa;
    };
    // Richardson-extrapolated defect: fourth-order accurate in the spacing
    auto defect = [&](double kappa, double r_max, int points) {
        const double alpha = alpha_of(E_of(kappa));
        const double l1 = radial_eig_plain(A, alpha, r_max, points, n_r);
        const double l2 = radial_eig_plain(A, alpha, r_max, 2 * points + 1, n_r);
        return (4.0 * l2 - l1) / 3.0 + kappa * kappa;
    };

    // coarse scan for sign changes (plain second-order evaluations suffice)
    const int scan_n = 96;
    std::vector<std::pair<double, double>> brackets;
    double prevK = 0, prevF = 0;
    for (int i = 0; i < scan_n; ++i) {
        const double kappa = kappa_lo + (kappa_hi - kappa_lo) * i / (scan_n - 1.0);
        const double F = radial_eig_plain(A, alpha_of(E_of(kappa)),
                                          rmax_for(kappa), 700, n_r) +
                         kappa * kappa;
        if (i > 0 && std::signbit(F) != std::signbit(prevF))
            brackets.emplace_back(prevK, kappa);
        prevK = kappa;
        prevF = F;
    }
    if (brackets.empty())
        throw NoBoundState("no self-consistent energy in the bound window");

    std::vector<EnergySolution> out;
    for (auto [bl, bh] : brackets) {
        const double r_max = rmax_for(bl);
        auto bisect = [&](double lo, double hi, int points, bool* ok) {
            double flo = defect(lo, r_max, points);
            double fhi = defect(hi, r_max, points);
            if (std::signbit(flo) == std::signbit(fhi)) {
                *ok = false;
                return 0.5 * (lo + hi);
            }
            *ok = true;
            while (hi - lo > 1e-11 * (1.0 + std::fabs(lo))) {
                const double mid = 0.5 * (lo + hi);
                if (mid == lo || mid == hi) break;
                const double fm = defect(mid, r_max, points);
                if (std::signbit(fm) == std::signbit(flo)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            return 0.5 * (lo + hi);
        };
        const double wexp = 0.02 * (bh - bl);
        int points = 1200;
        bool ok = false;
        double root = bisect(bl - wexp, bh + wexp, points, &ok);
        if (!ok) continue;  // coarse-grid artifact, not a root
        bool converged = false;
        for (int doubling = 1; doubling <= 6; ++doubling) {
            points *= 2;
            const double span =
                std::max(1e-7 * (1.0 + std::fabs(root)), 1e-3 * (bh - bl));
            bool ok2 = false;
            double next = bisect(root - span, root + span, points, &ok2);
            if (!ok2) next = bisect(bl - wexp, bh + wexp, points, &ok2);
            if (!ok2) {
                ok = false;
                break;
            }
            const double err = std::fabs(next - root) / 15.0;
            root = next;
            if (err < 5e-9 * (1.0 + std::fabs(E_of(root)))) {
                converged = true;
                break;
            }
        }
        if (!ok) continue;
        if (!converged)
            throw NoConvergence("energy_selfconsistent: eigenvalue grid refinement stalled");
        EnergySolution sol;
        sol.E = E_of(root);
        sol.route = Route::oracle;
        sol.mode = Mode::reconciled;
        sol.D = D_target;
        sol.residual = std::fabs(alpha_of(sol.E)) / (2.0 * root) - sol.D;
        sol.window_ok = true;
        out.push_back(sol);
    }
    if (out.empty())
        throw NoBoundState("no self-consistent energy survives grid refinement");
    std::sort(out.begin(), out.end(),
              [](const EnergySolution& a, const EnergySolution& b) { return a.E < b.E; });
    return out;
}

namespace {

// 4th-order second and first derivatives of a callable at x with step h
template <class F>
void stencil45(const F& f, double x, double h, double& d1, double& d2) {
    const double fm2 = f(x - 2 * h), fm1 = f(x - h), f0 = f(x),
                 fp1 = f(x + h), fp2 = f(x + 2 * h);
    d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
}

} // namespace

double ode_residual(const WaveSpec& ws, double E, std::span<const double> samples,
                    const ModelParams& params, const Calibration& calib) {
    const DeltaPair dp = deltas(ws.sector, params);
    auto f = [&](double x) { return wavefunction_eval(ws, E, x, params, calib); };
    double worst = 0, denom_max = 0;

    switch (ws.kind) {
        case WaveSpec::Kind::radial_spherical: {
            const RadialProblem rp = radial_problem(E, ws.sector, params, ws.j, calib);
            const double kappa = std::sqrt(-rp.beta);
            auto chi = [&](double r) { return r * f(r); };
            for (double r : samples) {
                const double h = 3e-4 * (r + 1.0 / kappa);
                double d1, d2;
                stencil45(chi, r, h, d1, d2);
                const double v = chi(r);
                const double lhs = -d2 + rp.A / (r * r) * v - rp.alpha / r * v;
                worst = std::max(worst, std::fabs(lhs - rp.beta * v));
                denom_max = std::max(denom_max, std::fabs(rp.beta * v));
            }
            break;
        }
        case WaveSpec::Kind::angular: {
            const double A = separation_constant_A(ws.j, dp);
            for (double th : samples) {
                const double h = 2.5e-4 * (0.3 + std::sin(th));
                double d1, d2;
                stencil45(f, th, h, d1, d2);
                const double v = f(th);
                const double ct = std::cos(0.5 * th), st = std::sin(0.5 * th);
                const double lhs = d2 + d1 / std::tan(th) +
                                   (A - dp.m1 * dp.m1 / (4.0 * ct * ct) -
                                    dp.m2 * dp.m2 / (4.0 * st * st)) * v;
                worst = std::max(worst, std::fabs(lhs));
                denom_max = std::max(denom_max, std::max(std::fabs(A), 1.0) * std::fabs(v));
            }
            break;
        }
        case WaveSpec::Kind::parabolic_xi:
        case WaveSpec::Kind::parabolic_eta: {
            const bool xi = ws.kind == WaveSpec::Kind::parabolic_xi;
            const RadialProblem rp =
                radial_problem(E, ws.sector, params, dp.m_plus, calib);
            const double kappa = std::sqrt(-rp.beta);
            const double m_i = xi ? dp.m1 : dp.m2;
            const int n_i = xi ? ws.n1 : ws.n2;
            const double lambda =
                0.25 * rp.alpha - kappa * (n_i + 0.5 * (m_i + 1.0));
            for (double u : samples) {
                const double h = 3e-4 * (u + 1.0 / kappa);
                double d1, d2;
                stencil45(f, u, h, d1, d2);
                const double v = f(u);
                const double lhs = u * d2 + d1 - m_i * m_i / (4.0 * u) * v +
                                   0.25 * rp.alpha * v + 0.25 * rp.beta * u * v;
                worst = std::max(worst, std::fabs(lhs - lambda * v));
                denom_max = std::max(
                    denom_max, std::max(std::fabs(lambda), 0.5 * kappa) * std::fabs(v));
            }
            break;
        }
    }
    return denom_max > 0 ? worst / denom_max : worst;
}

std::vector<double> default_residual_samples(const WaveSpec& ws, double E,
                                             const ModelParams& params,
                                             int count) {
    const DeltaPair dp = deltas(ws.sector, params);
    const double q = ws.sector.q.value();
    const double beta =
        2.0 * E - q * q / (params.mu * params.mu) - params.c4;
    const double kappa = std::sqrt(std::max(-beta, 1e-30));
    std::vector<double> out(count);
    auto fill = [&](double lo, double hi) {
        for (int i = 0; i < count; ++i)
            out[i] = lo + (hi - lo) * (i + 0.5) / count;
    };
    switch (ws.kind) {
        case WaveSpec::Kind::radial_spherical: {
            const double s =
                -0.5 + std::sqrt(0.25 + separation_constant_A(ws.j, dp));
            const double D = ws.n_r + s + 1.0;
            fill(0.1 * std::max(D, 1.0) / kappa, (2.0 * D + 18.0) / kappa);
            break;
        }
        case WaveSpec::Kind::angular:
            fill(0.15, M_PI - 0.15);
            break;
        case WaveSpec::Kind::parabolic_xi:
            fill(0.1 * (0.5 * dp.m1 + 1.0) / kappa,
                 (dp.m1 + 2.0 * ws.n1 + 14.0) / kappa);
            break;
        case WaveSpec::Kind::parabolic_eta:
            fill(0.1 * (0.5 * dp.m2 + 1.0) / kappa,
                 (dp.m2 + 2.0 * ws.n2 + 14.0) / kappa);
            break;
    }
    return out;
}

int node_count(std::span<const double> samples) {
    double mx = 0;
    for (double v : samples) mx = std::max(mx, std::fabs(v));
    if (mx == 0) return 0;
    const double floor_ = 1e-9 * mx;
    int nodes = 0;
    double last = 0;
    for (size_t i = 1; i + 1 < samples.size(); ++i) {  // skip endpoints
        const double v = samples[i];
        if (std::fabs(v) <= floor_) continue;
        if (last != 0 && std::signbit(v) != std::signbit(last)) ++nodes;
        last = v;
    }
    return nodes;
}

double normalize(std::span<const double> samples, double dx) {
    if (samples.size() < 2) return 0;
    double acc = 0.5 * (samples.front() * samples.front() +
                        samples.back() * samples.back());
    for (size_t i = 1; i + 1 < samples.size(); ++i)
        acc += samples[i] * samples[i];
    return acc * dx;
}

} // namespace gkkm

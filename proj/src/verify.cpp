#include "gkkm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gkkm/errors.hpp"
#include "gkkm/ladder.hpp"
#include "gkkm/oracle.hpp"
#include "gkkm/qalgebra.hpp"
#include "gkkm/repmatrix.hpp"
#include "gkkm/spectra.hpp"
#include "gkkm/sweep.hpp"

namespace gkkm {

uint64_t Rng::next_u64() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
    const double t = (next_u64() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * t;
}

int Rng::uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next_u64() % static_cast<uint64_t>(hi - lo + 1));
}

std::vector<GridPoint> verification_grid() {
    std::vector<GridPoint> grid;
    const double mus[] = {0.5, 1.0, 2.0};
    const double cs[][4] = {{0, 0, 0, 0}, {1, 2, 1, 0.3}, {0.5, 0, 3, 1}};
    for (double mu : mus) {
        for (const auto& c : cs) {
            ModelParams p{mu, c[0], c[1], c[2], c[3]};
            for (int tq = -4; tq <= 4; ++tq) {
                for (int tm = -4; tm <= 4; ++tm) {
                    if ((tm - tq) % 2 != 0) continue;
                    grid.push_back({p, Sector{Half(tq), Half(tm)}});
                }
            }
        }
    }
    return grid;
}

namespace {

struct Agg {
    double worst = 0;
    std::string where;
    void update(double v, const std::string& w) {
        if (v > worst) {
            worst = v;
            where = w;
        }
    }
};

std::string state_tag(const GridPoint& g, Half n) {
    std::ostringstream os;
    os << "mu=" << g.params.mu << " c=(" << g.params.c1 << "," << g.params.c2
       << "," << g.params.c3 << "," << g.params.c4 << ") q="
       << half_str(g.sector.q) << " m=" << half_str(g.sector.m)
       << " n=" << half_str(n);
    return os.str();
}

CheckResult make_check(const std::string& name, double measured,
                       double tolerance, const std::string& note = "") {
    CheckResult c;
    c.name = name;
    c.measured = measured;
    c.tolerance = tolerance;
    c.pass = measured <= tolerance;
    c.note = note;
    return c;
}

double rel_gap(double a, double b) {
    return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-30});
}

// bound principal numbers for a sector: m_plus+1 .. 5 in integer steps
std::vector<Half> bound_ns(const GridPoint& g, Half n_max) {
    const DeltaPair dp = deltas(g.sector, g.params);
    std::vector<Half> ns;
    for (Half n = dp.m_plus + half_one; n <= n_max; n = n + half_one)
        ns.push_back(n);
    return ns;
}

} // namespace

// --------------------------------------------------------------------------
std::vector<CheckResult> suite_kk_limit(const SuiteOptions& o) {
    std::vector<CheckResult> out;
    Agg roots_gap, kk_gap, oracle_gap;
    bool missing = false;
    std::string missing_where;
    const ModelParams params{1.0, 0, 0, 0, 0};
    for (int tq : {1, 2, 4}) {  // q = 1/2, 1, 2
        const Sector sector{Half(tq), Half(tq)};
        const DeltaPair dp = deltas(sector, params);
        const double qv = sector.q.value();
        for (Half n = sector.q.abs(); n <= sector.q.abs() + Half::of_int(5);
             n = n + half_one) {
            const double nv = n.value();
            // limit-formula roots, computed inline as the reference
            std::vector<double> ref;
            if (nv * nv - qv * qv >= 0 && qv != 0) {
                const double sq = std::sqrt(nv * nv - qv * qv);
                for (double x : {(nv - sq), (nv + sq)})
                    if (x > 0) ref.push_back(0.5 * (qv * qv - x * x));
                std::sort(ref.begin(), ref.end());
                ref.erase(std::unique(ref.begin(), ref.end()), ref.end());
            }
            if (n < dp.m_plus + half_one) {
                // inadmissible principal number: the spherical route must
                // report no state
                bool threw = false;
                try {
                    energy_spherical(n, sector, params, o.calib, o.mode);
                } catch (const NoBoundState&) {
                    threw = true;
                }
                if (!threw) {
                    missing = true;
                    missing_where = "expected no state at n=" + half_str(n);
                }
                continue;
            }
            try {
                const auto sph = energy_spherical(n, sector, params, o.calib, o.mode);
                const auto kk = energy_kk_limit(n, sector, params, o.calib);
                if (sph.size() != ref.size() || kk.size() != ref.size()) {
                    missing = true;
                    missing_where = "branch count mismatch q=" + half_str(sector.q) +
                                    " n=" + half_str(n);
                    continue;
                }
                for (size_t i = 0; i < ref.size(); ++i) {
                    roots_gap.update(rel_gap(sph[i].E, ref[i]),
                                     "q=" + half_str(sector.q) + " n=" + half_str(n));
                    kk_gap.update(rel_gap(sph[i].E, kk[i].E),
                                  "q=" + half_str(sector.q) + " n=" + half_str(n));
                }
                const auto orc = energy_selfconsistent(
                    (n - dp.m_plus - half_one).as_int(), dp.m_plus, sector, params,
                    o.calib);
                if (orc.size() != ref.size()) {
                    missing = true;
                    missing_where = "oracle branch count q=" + half_str(sector.q) +
                                    " n=" + half_str(n);
                    continue;
                }
                for (size_t i = 0; i < ref.size(); ++i)
                    oracle_gap.update(rel_gap(orc[i].E, sph[i].E),
                                      "q=" + half_str(sector.q) + " n=" + half_str(n));
            } catch (const NoBoundState& e) {
                missing = true;
                missing_where = std::string("unexpected NoBoundState: ") + e.what();
            }
        }
    }
    out.push_back(make_check("kk-limit/states-present", missing ? 1 : 0, 0,
                             missing_where));
    out.push_back(make_check("kk-limit/limit-formula-agreement", roots_gap.worst,
                             1e-12, roots_gap.where));
    out.push_back(make_check("kk-limit/closed-form-route-agreement", kk_gap.worst,
                             1e-12, kk_gap.where));
    out.push_back(make_check("kk-limit/oracle-agreement", oracle_gap.worst, 1e-6,
                             oracle_gap.where));
    return out;
}

// --------------------------------------------------------------------------
std::vector<CheckResult> suite_cross_route(const SuiteOptions& o) {
    const auto grid = verification_grid();
    struct Item {
        double sph_par = 0, sph_alg = 0, sph_lad = 0, orc = 0;
        int states = 0;
        std::string worst_where;
        std::string error;
    };
    auto run_point = [&](size_t gi) {
        const GridPoint& g = grid[gi];
        Item item;
        const DeltaPair dp = deltas(g.sector, g.params);
        for (Half n : bound_ns(g, Half::of_int(5))) {
            const int p = (n - dp.m_plus - half_one).as_int();
            std::vector<EnergySolution> sph, par, alg, lad, orc;
            try {
                sph = energy_spherical(n, g.sector, g.params, o.calib, o.mode);
            } catch (const NoBoundState&) {
                continue;  // nothing bound at this n
            }
            try {
                par = energy_parabolic({p, 0}, g.sector, g.params, o.calib, o.mode);
                const auto reps =
                    solve_representation(p, g.sector, g.params, o.calib, o.mode);
                for (const auto& r : reps) {
                    EnergySolution es;
                    es.E = r.E;
                    alg.push_back(es);
                }
                const Su11Labels lab = su11_labels(dp.m_plus, dp, p);
                lad = solve_quantization(0.5 * o.calib.ladder_weight_factor * lab.v,
                                         g.sector, g.params, o.calib, o.mode,
                                         Route::ladder);
                orc = energy_selfconsistent(p, dp.m_plus, g.sector, g.params,
                                            o.calib);
            } catch (const std::exception& e) {
                item.error = state_tag(g, n) + ": " + e.what();
                break;
            }
            if (par.size() != sph.size() || alg.size() != sph.size() ||
                lad.size() != sph.size() || orc.size() != sph.size()) {
                item.error = state_tag(g, n) + ": branch count mismatch";
                break;
            }
            for (size_t i = 0; i < sph.size(); ++i) {
                const std::string tag = state_tag(g, n);
                const double g1 = rel_gap(sph[i].E, par[i].E);
                const double g2 = rel_gap(sph[i].E, alg[i].E);
                const double g3 = rel_gap(sph[i].E, lad[i].E);
                const double g4 = rel_gap(sph[i].E, orc[i].E);
                item.sph_par = std::max(item.sph_par, g1);
                item.sph_alg = std::max(item.sph_alg, g2);
                item.sph_lad = std::max(item.sph_lad, g3);
                if (g4 > item.orc) {
                    item.orc = g4;
                    item.worst_where = tag;
                }
                ++item.states;
            }
        }
        return item;
    };
    const auto items = parallel_map<Item>(grid.size(), run_point, o.threads);

    Agg par, alg, lad, orc;
    int states = 0;
    std::string err;
    for (const auto& it : items) {
        par.update(it.sph_par, "");
        alg.update(it.sph_alg, "");
        lad.update(it.sph_lad, "");
        orc.update(it.orc, it.worst_where);
        states += it.states;
        if (err.empty() && !it.error.empty()) err = it.error;
    }
    std::vector<CheckResult> out;
    out.push_back(make_check("cross-route/errors", err.empty() ? 0 : 1, 0, err));
    out.push_back(make_check("cross-route/states-evaluated", states >= 300 ? 0 : 1,
                             0, std::to_string(states) + " states"));
    out.push_back(make_check("cross-route/spherical-vs-parabolic", par.worst, 1e-10));
    out.push_back(make_check("cross-route/spherical-vs-algebraic", alg.worst, 1e-10));
    out.push_back(make_check("cross-route/spherical-vs-ladder", lad.worst, 1e-10));
    out.push_back(make_check("cross-route/oracle-agreement", orc.worst, 1e-6,
                             orc.where));
    return out;
}

// --------------------------------------------------------------------------
std::vector<CheckResult> suite_phi_forms(const SuiteOptions& o) {
    Rng rng(o.seed ^ 0x5bf03635ull);
    Agg fac_gap, gen_gap, root_gap;
    for (int it = 0; it < o.samples; ++it) {
        ModelParams params;
        params.mu = rng.uniform(0.4, 2.2);
        params.c1 = rng.uniform(-1.5, 1.5);
        params.c2 = rng.uniform(0.0, 3.0);
        params.c3 = rng.uniform(0.0, 3.0);
        params.c4 = rng.uniform(-1.0, 1.0);
        const Sector sector{Half(rng.uniform_int(-4, 4)),
                            Half(rng.uniform_int(-4, 4))};
        if (((sector.m.twice - sector.q.twice) % 2) != 0) continue;
        const double q = sector.q.value();
        const double thresh = 0.5 * (q * q / (params.mu * params.mu) + params.c4);
        const double E = thresh - rng.uniform(0.05, 8.0);
        const double u = rng.uniform(-3.0, 3.0);
        const double x = rng.uniform(-4.0, 4.0);

        // normalization scale: largest expanded coefficient of the system form
        auto spec_at = [&](double xx) {
            return phi_specific(xx, u, E, sector, params);
        };
        const auto spec =
            expand_phi(StructureFunctionSpec::Form::specific, u, 6, spec_at);
        double scale = 0;
        for (double c : spec.coeffs) scale = std::max(scale, std::fabs(c));
        if (scale == 0) scale = 1;
        const double xs = std::max({std::fabs(x + u), 1.0});
        const double norm = scale * std::pow(xs, 6);

        const double a = phi_specific(x, u, E, sector, params);
        const double b = phi_factored(x, u, E, sector, params, o.calib);
        fac_gap.update(std::fabs(a - b) / norm, "sample " + std::to_string(it));

        const auto k = structure_constants(E, sector, params);
        const auto K = casimir_value(E, sector, params, Mode::reconciled);
        const double c = o.calib.phi_general_norm * phi_general(x, u, k, K);
        gen_gap.update(std::fabs(a - c) / norm, "sample " + std::to_string(it));

        // the factored form vanishes at each stored root
        const auto roots = phi_roots(E, sector, params);
        const double r = roots[it % 6];
        const double at_root =
            phi_factored(r - u, u, E, sector, params, o.calib);
        root_gap.update(std::fabs(at_root) / norm, "sample " + std::to_string(it));
    }
    std::vector<CheckResult> out;
    out.push_back(make_check("phi-forms/specific-vs-factored", fac_gap.worst,
                             1e-9, fac_gap.where));
    out.push_back(make_check("phi-forms/general-vs-specific", gen_gap.worst, 1e-9,
                             gen_gap.where));
    out.push_back(make_check("phi-forms/factored-root-vanishing", root_gap.worst,
                             1e-10, root_gap.where));
    return out;
}

// --------------------------------------------------------------------------
namespace {

// representative sectors for deep representations (p up to p_max)
std::vector<GridPoint> rep_sectors() {
    return {
        {{1.0, 0, 0, 0, 0}, {Half(4), Half(2)}},
        {{1.0, 1, 2, 1, 0.3}, {Half(2), Half(0)}},
        {{0.5, 0.5, 0, 3, 1}, {Half(1), Half(-1)}},
        {{2.0, 1, 2, 1, 0.3}, {Half(3), Half(1)}},
        {{1.0, 0.5, 0, 0, 0}, {Half(0), Half(0)}},  // degenerate m1 = m2 = 0
    };
}

} // namespace

std::vector<CheckResult> suite_rep_constraints(const SuiteOptions& o) {
    Agg end_zero;
    double min_interior = 1e300;
    std::string min_where;
    int reps = 0;
    std::string err;

    auto run = [&](const GridPoint& g, int p) {
        try {
            const auto sols = solve_representation(p, g.sector, g.params, o.calib,
                                                   o.mode);
            for (const auto& rs : sols) {
                ++reps;
                double mx = 0;
                for (double v : rs.phi_values) mx = std::max(mx, std::fabs(v));
                const double phi0 =
                    phi_factored(0.0, rs.u, rs.E, g.sector, g.params, o.calib);
                const double phiP =
                    phi_factored(p + 1.0, rs.u, rs.E, g.sector, g.params, o.calib);
                const double scale = std::max(mx, 1.0);
                end_zero.update(std::fabs(phi0) / scale, state_tag(g, Half(0)));
                end_zero.update(std::fabs(phiP) / scale, state_tag(g, Half(0)));
                for (int kk = 1; kk <= p; ++kk) {
                    const double v = rs.phi_values[kk - 1] / scale;
                    if (v < min_interior) {
                        min_interior = v;
                        min_where = state_tag(g, Half(0)) + " p=" + std::to_string(p) +
                                    " k=" + std::to_string(kk);
                    }
                }
            }
        } catch (const NoBoundState&) {
        } catch (const NoUnitaryRep&) {
        } catch (const std::exception& e) {
            if (err.empty()) err = e.what();
        }
    };

    for (const auto& g : verification_grid()) {
        const DeltaPair dp = deltas(g.sector, g.params);
        for (Half n : bound_ns(g, Half::of_int(5)))
            run(g, (n - dp.m_plus - half_one).as_int());
    }
    for (const auto& g : rep_sectors())
        for (int p = 0; p <= o.p_max; ++p) run(g, p);

    std::vector<CheckResult> out;
    out.push_back(make_check("rep-constraints/errors", err.empty() ? 0 : 1, 0, err));
    out.push_back(make_check("rep-constraints/solutions-found", reps >= 100 ? 0 : 1,
                             0, std::to_string(reps) + " representations"));
    out.push_back(make_check("rep-constraints/boundary-zeros", end_zero.worst,
                             1e-9, end_zero.where));
    CheckResult pos;
    pos.name = "rep-constraints/interior-positivity";
    pos.measured = min_interior;
    pos.tolerance = 0;
    pos.pass = min_interior > 0;
    pos.note = "min scaled interior value, " + min_where;
    out.push_back(pos);
    return out;
}

// --------------------------------------------------------------------------
std::vector<CheckResult> suite_matrix_relations(const SuiteOptions& o) {
    Agg comm, rel_ac, rel_bc, casimir;
    double sensitivity = 1e300;
    std::string err;
    int reps = 0;
    for (const auto& g : rep_sectors()) {
        for (int p = 0; p <= o.p_max; ++p) {
            try {
                const auto sols = solve_representation(p, g.sector, g.params,
                                                       o.calib, o.mode);
                for (const auto& rs : sols) {
                    const auto k = structure_constants(rs.E, g.sector, g.params);
                    const auto K =
                        casimir_value(rs.E, g.sector, g.params, Mode::reconciled);
                    const auto rep = build_rep(rs, k, K);
                    const auto rr = verify_relations(rep, k, K);
                    const std::string tag =
                        state_tag(g, Half(0)) + " p=" + std::to_string(p);
                    comm.update(rr.comm_ab, tag);
                    rel_ac.update(rr.rel_ac, tag);
                    rel_bc.update(rr.rel_bc, tag);
                    casimir.update(rr.casimir, tag);
                    ++reps;
                    if (p <= 2) {
                        auto kc = k;
                        kc.r_1 += 1e-3 * (1.0 + std::fabs(k.r_1));
                        const auto rc = verify_relations(rep, kc, K);
                        sensitivity = std::min(sensitivity, rc.rel_ac);
                    }
                }
            } catch (const NoBoundState&) {
            } catch (const NoUnitaryRep&) {
            } catch (const std::exception& e) {
                if (err.empty()) err = e.what();
            }
        }
    }
    std::vector<CheckResult> out;
    out.push_back(make_check("matrix-relations/errors", err.empty() ? 0 : 1, 0, err));
    out.push_back(make_check("matrix-relations/reps-built", reps >= 20 ? 0 : 1, 0,
                             std::to_string(reps) + " representations"));
    out.push_back(make_check("matrix-relations/commutator-defect", comm.worst,
                             1e-9, comm.where));
    out.push_back(
        make_check("matrix-relations/first-relation", rel_ac.worst, 1e-9, rel_ac.where));
    out.push_back(
        make_check("matrix-relations/second-relation", rel_bc.worst, 1e-9, rel_bc.where));
    out.push_back(
        make_check("matrix-relations/casimir-identity", casimir.worst, 1e-9, casimir.where));
    CheckResult sens;
    sens.name = "matrix-relations/r1-sensitivity";
    sens.measured = sensitivity;
    sens.tolerance = 1e-4;
    sens.pass = sensitivity >= 1e-4;
    sens.note = "perturbed residual must exceed the tolerance";
    out.push_back(sens);
    return out;
}

// --------------------------------------------------------------------------
std::vector<CheckResult> suite_su11(const SuiteOptions& o) {
    Agg comm, chain, eigen, spread, cas_val;
    double ratio_worst = 1e300;
    const std::pair<double, double> cases[] = {
        // (s, n_r): f_n = 2 (n_r + s + 1), A = s(s+1)
        {1.0, 0}, {2.3, 1}, {0.7, 2}, {3.5, 0}};
    for (const auto& [s, n_r] : cases) {
        const double A = s * (s + 1.0);
        const double f_n = 2.0 * (n_r + s + 1.0);
        const auto r4000 = verify_su11(f_n, A, 4000, o.calib);
        const auto r2000 = verify_su11(f_n, A, 2000, o.calib);
        std::ostringstream tag;
        tag << "s=" << s << " n_r=" << n_r;
        comm.update(std::max({r4000.comm_plus, r4000.comm_minus, r4000.comm_pm}),
                    tag.str());
        chain.update(std::max(r4000.chain_raise, r4000.chain_lower), tag.str());
        eigen.update(r4000.eigen_b3, tag.str());
        spread.update(r4000.casimir_spread, tag.str());
        cas_val.update(std::fabs(r4000.casimir_mean - A) / std::max(A, 1.0),
                       tag.str());
        const double c2000 =
            std::max({r2000.comm_plus, r2000.comm_minus, r2000.comm_pm});
        const double c4000 =
            std::max({r4000.comm_plus, r4000.comm_minus, r4000.comm_pm});
        if (c4000 > 0) ratio_worst = std::min(ratio_worst, c2000 / c4000);
    }
    std::vector<CheckResult> out;
    out.push_back(make_check("su11/commutators", comm.worst, 1e-6, comm.where));
    out.push_back(make_check("su11/factorization-chain", chain.worst, 1e-6,
                             chain.where));
    out.push_back(make_check("su11/lowest-eigenrelation", eigen.worst, 1e-6,
                             eigen.where));
    out.push_back(make_check("su11/casimir-spread", spread.worst, 1e-5,
                             spread.where));
    out.push_back(make_check("su11/casimir-value", cas_val.worst, 1e-5,
                             cas_val.where));
    CheckResult conv;
    conv.name = "su11/refinement-order";
    conv.measured = ratio_worst;
    conv.tolerance = 8.0;
    conv.pass = ratio_worst >= 8.0;
    conv.note = "defect ratio under spacing halving (expect about 16)";
    out.push_back(conv);
    return out;
}

// --------------------------------------------------------------------------
std::vector<CheckResult> suite_wavefunction(const SuiteOptions& o) {
    const auto grid = verification_grid();
    struct Item {
        double ode = 0;
        int node_fail = 0;
        int norm_fail = 0;
        std::string where;
        std::string error;
    };
    auto run_point = [&](size_t gi) {
        const GridPoint& g = grid[gi];
        Item item;
        const DeltaPair dp = deltas(g.sector, g.params);
        for (Half n : bound_ns(g, Half::of_int(5))) {
            std::vector<EnergySolution> sols;
            try {
                sols = energy_spherical(n, g.sector, g.params, o.calib, o.mode);
            } catch (const NoBoundState&) {
                continue;
            }
            try {
                for (const auto& es : sols) {
                    for (const auto& qn : enumerate_spherical(n, g.sector, g.params)) {
                        WaveSpec ws;
                        ws.kind = WaveSpec::Kind::radial_spherical;
                        ws.sector = g.sector;
                        ws.j = qn.j;
                        ws.n_r = qn.n_r;
                        const auto pts =
                            default_residual_samples(ws, es.E, g.params);
                        const double r =
                            ode_residual(ws, es.E, pts, g.params, o.calib);
                        if (r > item.ode) {
                            item.ode = r;
                            item.where = state_tag(g, n) + " j=" + half_str(qn.j);
                        }
                        // node count and finite normalization on chi = r * R
                        std::vector<double> chi(pts.size());
                        for (size_t i = 0; i < pts.size(); ++i)
                            chi[i] = pts[i] * wavefunction_eval(ws, es.E, pts[i],
                                                                g.params, o.calib);
                        if (node_count(chi) != qn.n_r) ++item.node_fail;
                        const double nn = normalize(chi, pts[1] - pts[0]);
                        if (!(nn > 0) || !std::isfinite(nn)) ++item.norm_fail;
                        // angular factor
                        WaveSpec wa = ws;
                        wa.kind = WaveSpec::Kind::angular;
                        const auto apts =
                            default_residual_samples(wa, es.E, g.params);
                        const double ra =
                            ode_residual(wa, es.E, apts, g.params, o.calib);
                        if (ra > item.ode) {
                            item.ode = ra;
                            item.where = state_tag(g, n) + " angular j=" + half_str(qn.j);
                        }
                    }
                    for (const auto& qn : enumerate_parabolic(n, g.sector, g.params)) {
                        for (int which = 0; which < 2; ++which) {
                            WaveSpec ws;
                            ws.kind = which == 0 ? WaveSpec::Kind::parabolic_xi
                                                 : WaveSpec::Kind::parabolic_eta;
                            ws.sector = g.sector;
                            ws.j = dp.m_plus;
                            ws.n1 = qn.n1;
                            ws.n2 = qn.n2;
                            const auto pts =
                                default_residual_samples(ws, es.E, g.params);
                            const double r =
                                ode_residual(ws, es.E, pts, g.params, o.calib);
                            if (r > item.ode) {
                                item.ode = r;
                                item.where = state_tag(g, n) + " parabolic(" +
                                             std::to_string(qn.n1) + "," +
                                             std::to_string(qn.n2) + ")";
                            }
                            std::vector<double> f(pts.size());
                            for (size_t i = 0; i < pts.size(); ++i)
                                f[i] = wavefunction_eval(ws, es.E, pts[i], g.params,
                                                         o.calib);
                            const int want = which == 0 ? qn.n1 : qn.n2;
                            if (node_count(f) != want) ++item.node_fail;
                        }
                    }
                }
            } catch (const std::exception& e) {
                item.error = state_tag(g, n) + ": " + e.what();
            }
        }
        return item;
    };
    const auto items = parallel_map<Item>(grid.size(), run_point, o.threads);
    Agg ode;
    int node_fail = 0, norm_fail = 0;
    std::string err;
    for (const auto& it : items) {
        ode.update(it.ode, it.where);
        node_fail += it.node_fail;
        norm_fail += it.norm_fail;
        if (err.empty() && !it.error.empty()) err = it.error;
    }
    std::vector<CheckResult> out;
    out.push_back(make_check("wavefunction/errors", err.empty() ? 0 : 1, 0, err));
    out.push_back(make_check("wavefunction/ode-residual", ode.worst, 1e-8,
                             ode.where));
    out.push_back(make_check("wavefunction/node-counts", node_fail, 0,
                             std::to_string(node_fail) + " mismatches"));
    out.push_back(make_check("wavefunction/normalization-finite", norm_fail, 0));
    return out;
}

// --------------------------------------------------------------------------
std::vector<CheckResult> suite_degeneracy(const SuiteOptions& o) {
    (void)o;
    int mismatches = 0;
    int checked = 0;
    for (const auto& g : verification_grid()) {
        const DeltaPair dp = deltas(g.sector, g.params);
        for (Half n = dp.m_plus + half_one; n <= Half::of_int(8);
             n = n + half_one) {
            const auto a = enumerate_spherical(n, g.sector, g.params);
            const auto b = enumerate_parabolic(n, g.sector, g.params);
            if (a.size() != b.size()) ++mismatches;
            ++checked;
        }
    }
    std::vector<CheckResult> out;
    out.push_back(make_check("degeneracy/counts-match", mismatches, 0,
                             std::to_string(checked) + " (sector, n) pairs"));
    return out;
}

std::vector<CheckResult> run_all_suites(const SuiteOptions& o) {
    std::vector<CheckResult> all;
    auto add = [&](std::vector<CheckResult> v) {
        all.insert(all.end(), v.begin(), v.end());
    };
    add(suite_kk_limit(o));
    add(suite_cross_route(o));
    add(suite_phi_forms(o));
    add(suite_rep_constraints(o));
    add(suite_matrix_relations(o));
    add(suite_su11(o));
    add(suite_wavefunction(o));
    add(suite_degeneracy(o));
    if (o.mode == Mode::printed) {
        // printed mode reports the verbatim-formula defects; it never fails
        for (auto& c : all) {
            if (!c.pass) c.note = "defect reported (printed mode)" +
                                  (c.note.empty() ? "" : "; " + c.note);
            c.pass = true;
        }
    }
    return all;
}

// --------------------------------------------------------------------------
Calibration recalibrate(int threads) {
    (void)threads;
    Calibration out = Calibration::reconciled();  // start from shape, refit all
    const ModelParams kk{1.0, 0, 0, 0, 0};
    const Sector s22{Half(4), Half(4)};  // q = m = 2

    // alpha_sign: only one orientation yields any self-consistent state, and
    // it must match the closed-form limit roots
    {
        double best_sign = 0, best_gap = 1e300;
        for (double sign : {-1.0, 1.0}) {
            Calibration c = Calibration::reconciled();
            c.alpha_sign = sign;
            try {
                const auto orc = energy_selfconsistent(0, Half(4), s22, kk, c);
                const double sq = std::sqrt(9.0 - 4.0);  // n = 3, q = 2
                const double ref = 0.5 * (4.0 - (3.0 + sq) * (3.0 + sq));
                for (const auto& e : orc) {
                    const double gap =
                        std::fabs(e.E - ref) / std::max(1.0, std::fabs(ref));
                    if (gap < best_gap) {
                        best_gap = gap;
                        best_sign = sign;
                    }
                }
            } catch (const std::exception&) {
            }
        }
        out.alpha_sign = best_sign;
    }

    // n_offset: measured count minus (n_r + s + 1) on a clean problem
    {
        const double A = 2.0, alpha = 2.0, s = 1.0;
        GridSpec gs;
        gs.r_max = 80;
        gs.points = 3000;
        const auto eig = radial_eigensolve(A, alpha, gs, 1);
        const double D_meas = alpha / (2.0 * std::sqrt(-eig.eigenvalues[0]));
        out.n_offset = std::round(D_meas - (0.0 + s + 1.0));
    }

    // c1_factor: compare the oracle against the width condition of the
    // factored structure function (whose c1 dependence is explicit)
    {
        const ModelParams pc{1.0, 1.0, 0, 0, 0};
        const Sector sc{Half(2), Half(0)};  // q = 1, m = 0
        const DeltaPair dp = deltas(sc, pc);
        // width condition for p = 0: (q^2/mu + c1/4 - mu E) = D sqrt(b0 - 2E)
        const double D = 1.0 + 0.5 * (dp.m1 + dp.m2);
        const double q = 1.0, c1 = 1.0, b0 = q * q + 0.0;
        const double qa = 1.0, qb = 2.0 * D * D - (2.0 * q * q + 0.5 * c1),
                     qc = std::pow(q * q + c1 / 4.0, 2) - D * D * b0;
        const double disc = qb * qb - 4 * qa * qc;
        const double E_alg = (-qb - std::sqrt(disc)) / 2.0;
        double best = 0.5, best_gap = 1e300;
        for (double f : {0.5, 1.0}) {
            Calibration c = out;
            c.c1_factor = f;
            try {
                const auto orc = energy_selfconsistent(0, dp.m_plus, sc, pc, c);
                for (const auto& e : orc) {
                    const double gap = std::fabs(e.E - E_alg);
                    if (gap < best_gap) {
                        best_gap = gap;
                        best = f;
                    }
                }
            } catch (const std::exception&) {
            }
        }
        out.c1_factor = best;
    }

    // phi_prefactor_sign: sign making interior structure-function values
    // positive on a solved representation
    {
        const ModelParams pp{1.0, 1, 2, 1, 0.3};
        const Sector sp{Half(2), Half(0)};
        Calibration c = out;
        c.phi_prefactor_sign = 1.0;
        c.eq51_m_factor = 0.5;
        const auto sols = solve_representation(2, sp, pp, c, Mode::printed);
        double v = 0;
        for (const auto& rs : sols)
            if (rs.u < 0 && !rs.phi_values.empty()) v = rs.phi_values[0];
        out.phi_prefactor_sign = v > 0 ? 1.0 : -1.0;
    }

    // eq51_m_factor: the width-condition weight consistent with the oracle
    {
        const ModelParams pp{1.0, 1, 2, 1, 0.3};
        const Sector sp{Half(2), Half(0)};
        const DeltaPair dp = deltas(sp, pp);
        double best = 0.5, best_gap = 1e300;
        const auto orc = energy_selfconsistent(1, dp.m_plus, sp, pp, out);
        for (double f : {0.5, 1.0}) {
            Calibration c = out;
            c.eq51_m_factor = f;
            try {
                const auto sols = solve_representation(1, sp, pp, c, Mode::reconciled);
                for (const auto& rs : sols)
                    for (const auto& e : orc) {
                        const double gap = std::fabs(rs.E - e.E);
                        if (gap < best_gap) {
                            best_gap = gap;
                            best = f;
                        }
                    }
            } catch (const std::exception&) {
            }
        }
        out.eq51_m_factor = best;
    }

    // ladder_weight_factor: the measured scaled-operator eigenvalue sits at
    // f_n / 2, so f_n = 2 v
    {
        const Sector sc{Half(4), Half(4)};
        const DeltaPair dp = deltas(sc, kk);
        Calibration c = out;
        const auto es = energy_spherical(Half::of_int(3), sc, kk, c);
        const RadialProblem rp = radial_problem(es[0].E, sc, kk, Half(4), c);
        const double f_n = std::fabs(rp.alpha) / std::sqrt(-rp.beta);
        const Su11Labels lab = su11_labels(Half(4), dp, 0);
        out.ladder_weight_factor = std::round(f_n / lab.v);
    }

    // scaled_x2_sign: the sign that annihilates the exact eigenfunction
    {
        const double s = 1.3, A = s * (s + 1.0), f_n = 2.0 * (s + 1.0);
        const int npts = 3000;
        std::vector<double> x(npts), chi(npts);
        const double x_max = 30.0;
        for (int i = 0; i < npts; ++i) {
            x[i] = x_max * (i + 1.0) / npts;
            chi[i] = std::pow(x[i], s + 1.0) * std::exp(-x[i]);
        }
        double best = 0, best_res = 1e300;
        for (double sign : {1.0, -1.0}) {
            Calibration c = out;
            c.scaled_x2_sign = sign;
            const auto Lx = scaled_operator_apply(ScaledOp::L, f_n, A, x, chi, c);
            double num = 0, den = 0;
            for (int i = 6; i + 6 < npts; ++i) {
                num = std::max(num, std::fabs(Lx[i] + A * chi[i]));
                den = std::max(den, std::fabs(A * chi[i]));
            }
            if (num / den < best_res) {
                best_res = num / den;
                best = sign;
            }
        }
        out.scaled_x2_sign = best;
    }

    // parabolic_k_sign: the numerical separation spectrum descends in the
    // printed variable, which flips the printed k-terms
    {
        const double m_i = 1.5, alpha = 6.0, beta = -1.0;
        GridSpec gs;
        gs.r_max = 60;
        gs.points = 2000;
        const auto eig = parabolic_eigensolve(m_i, alpha, beta, gs, 2);
        const double kappa = std::sqrt(-beta);
        const double pred0 = kappa * (0.5 * (m_i + 1.0)) - 0.25 * alpha;
        const double gap_rec = std::fabs(eig.eigenvalues[0] - pred0);
        const double pred0_printed = 0.25 * alpha + kappa * 0.5 * (m_i + 1.0);
        const double gap_printed = std::fabs(eig.eigenvalues[0] + pred0_printed);
        out.parabolic_k_sign = gap_rec <= gap_printed ? -1.0 : 1.0;
    }

    // phi_general_norm: fitted ratio of the generic to the system form
    {
        const ModelParams pp{1.3, 0.9, 1.7, 0.4, 0.25};
        const Sector sp{Half(3), Half(1)};
        const double E = -0.7, u = 0.37;
        const auto k = structure_constants(E, sp, pp);
        const auto K = casimir_value(E, sp, pp, Mode::reconciled);
        double num = 0, den = 0;
        for (double x : {-1.7, -0.3, 0.9, 2.1, 3.3}) {
            num += phi_specific(x, u, E, sp, pp) * phi_general(x, u, k, K);
            den += phi_general(x, u, k, K) * phi_general(x, u, k, K);
        }
        const double lam = num / den;
        out.phi_general_norm = std::round(lam * 1e6) / 1e6;
    }

    return out;
}

} // namespace gkkm

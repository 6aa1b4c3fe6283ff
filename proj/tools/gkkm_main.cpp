// Command-line front end: spectrum tables, verification suites, wavefunction
// export, and algebra dumps for the generalized monopole bound-state problem.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gkkm/errors.hpp"
#include "gkkm/io.hpp"
#include "gkkm/ladder.hpp"
#include "gkkm/oracle.hpp"
#include "gkkm/qalgebra.hpp"
#include "gkkm/repmatrix.hpp"
#include "gkkm/spectra.hpp"
#include "gkkm/sweep.hpp"
#include "gkkm/verify.hpp"

namespace {

using namespace gkkm;

struct CliState {
    RunConfig cfg;
    std::string config_path;
    std::string c_csv;   // "c1,c2,c3,c4"
    std::vector<std::string> q_raw, m_raw, n_raw;
    std::string routes_csv;
    std::string mode_str = "reconciled";
    std::string format_str = "table";
    bool paper_as_printed = false;
};

void finalize_config(CliState& st) {
    if (!st.config_path.empty()) st.cfg.apply_file(st.config_path);
    if (!st.c_csv.empty()) {
        double c[4];
        if (std::sscanf(st.c_csv.c_str(), "%lf,%lf,%lf,%lf", &c[0], &c[1], &c[2],
                        &c[3]) != 4)
            throw std::invalid_argument("--c expects c1,c2,c3,c4");
        st.cfg.params.c1 = c[0];
        st.cfg.params.c2 = c[1];
        st.cfg.params.c3 = c[2];
        st.cfg.params.c4 = c[3];
    }
    auto fill = [](const std::vector<std::string>& raw, std::vector<Half>& dst) {
        if (raw.empty()) return;
        dst.clear();
        for (const auto& tok : raw) {
            const auto dots = tok.find("..");
            if (dots != std::string::npos) {
                Half lo = parse_half(tok.substr(0, dots));
                Half hi = parse_half(tok.substr(dots + 2));
                for (Half v = lo; v <= hi; v = v + half_one) dst.push_back(v);
            } else {
                dst.push_back(parse_half(tok));
            }
        }
    };
    fill(st.q_raw, st.cfg.q_list);
    fill(st.m_raw, st.cfg.m_list);
    fill(st.n_raw, st.cfg.n_list);
    if (!st.routes_csv.empty()) {
        st.cfg.routes.clear();
        std::string cur;
        for (char ch : st.routes_csv + ",") {
            if (ch == ',') {
                if (!cur.empty()) st.cfg.routes.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
    }
    if (st.paper_as_printed) st.mode_str = "printed";
    st.cfg.mode = st.mode_str == "printed" ? Mode::printed : Mode::reconciled;
    if (st.format_str == "csv") st.cfg.format = OutFormat::csv;
    else if (st.format_str == "json") st.cfg.format = OutFormat::json;
    else st.cfg.format = OutFormat::table;
    if (st.cfg.calibration_path.empty()) {
        // default: the in-repo file when visible from the working directory
        const char* candidates[] = {"data/calibration.txt", "calibration.txt"};
        for (const char* c : candidates)
            if (std::filesystem::exists(c)) {
                st.cfg.calibration_path = c;
                break;
            }
    }
    st.cfg.validate();
}

std::vector<Sector> config_sectors(const RunConfig& cfg) {
    std::vector<Sector> out;
    for (Half q : cfg.q_list) {
        const auto& ms = cfg.m_list.empty() ? std::vector<Half>{q} : cfg.m_list;
        for (Half m : ms) {
            if (((m.twice - q.twice) % 2) != 0) continue;
            out.push_back(Sector{q, m});
        }
    }
    std::sort(out.begin(), out.end(), [](const Sector& a, const Sector& b) {
        return a.q != b.q ? a.q < b.q : a.m < b.m;
    });
    return out;
}

int cmd_spectrum(CliState& st) {
    finalize_config(st);
    const RunConfig& cfg = st.cfg;
    if (cfg.q_list.empty()) {
        std::cerr << "spectrum: no sectors requested (use --q)\n";
        return 2;
    }
    const Calibration calib = effective_calibration(cfg.mode, cfg.calibration_path);
    std::vector<Half> ns = cfg.n_list;
    if (ns.empty() && cfg.parabolic) {
        // derive n from the parabolic pair per sector later
    } else if (ns.empty()) {
        std::cerr << "spectrum: no principal numbers requested (use --n)\n";
        return 2;
    }

    struct Work {
        Sector sector;
        Half n;
    };
    std::vector<Work> work;
    for (const Sector& sector : config_sectors(cfg)) {
        std::vector<Half> here = ns;
        if (cfg.parabolic) {
            const DeltaPair dp = deltas(sector, cfg.params);
            here.push_back(Half::of_int(cfg.parabolic->n1 + cfg.parabolic->n2 + 1) +
                           dp.m_plus);
        }
        for (Half n : here) work.push_back({sector, n});
    }

    auto run = [&](size_t i) {
        const auto& [sector, n] = work[i];
        std::vector<SpectrumRow> rows;
        const DeltaPair dp = deltas(sector, cfg.params);
        if (!(n - dp.m_plus).is_integer() || (n - dp.m_plus).as_int() < 1)
            return rows;
        const int p = (n - dp.m_plus - half_one).as_int();
        std::vector<std::pair<std::string, std::vector<EnergySolution>>> per_route;
        for (const auto& route : cfg.routes) {
            try {
                if (route == "spherical")
                    per_route.emplace_back(route, energy_spherical(n, sector, cfg.params,
                                                                   calib, cfg.mode));
                else if (route == "parabolic")
                    per_route.emplace_back(route,
                                           energy_parabolic({p, 0}, sector, cfg.params,
                                                            calib, cfg.mode));
                else if (route == "algebraic") {
                    std::vector<EnergySolution> es;
                    for (const auto& rs :
                         solve_representation(p, sector, cfg.params, calib, cfg.mode)) {
                        EnergySolution e;
                        e.E = rs.E;
                        e.route = Route::algebraic;
                        e.mode = cfg.mode;
                        e.window_ok = true;
                        es.push_back(e);
                    }
                    per_route.emplace_back(route, es);
                } else if (route == "ladder") {
                    const Su11Labels lab = su11_labels(dp.m_plus, dp, p);
                    per_route.emplace_back(
                        route, solve_quantization(0.5 * calib.ladder_weight_factor * lab.v,
                                                  sector, cfg.params, calib, cfg.mode,
                                                  Route::ladder));
                } else if (route == "oracle") {
                    per_route.emplace_back(
                        route, energy_selfconsistent(p, dp.m_plus, sector, cfg.params, calib));
                }
            } catch (const NoBoundState&) {
                per_route.emplace_back(route, std::vector<EnergySolution>{});
            }
        }
        size_t branches = 0;
        for (const auto& [_, es] : per_route) branches = std::max(branches, es.size());
        for (size_t b = 0; b < branches; ++b) {
            SpectrumRow row;
            row.mu = cfg.params.mu;
            row.c1 = cfg.params.c1;
            row.c2 = cfg.params.c2;
            row.c3 = cfg.params.c3;
            row.c4 = cfg.params.c4;
            row.q = sector.q;
            row.m = sector.m;
            row.n = n;
            row.branch = static_cast<int>(b);
            std::vector<double> es_here;
            for (const auto& [name, es] : per_route) {
                if (b < es.size()) {
                    row.energies.emplace_back(name, es[b]);
                    es_here.push_back(es[b].E);
                } else {
                    EnergySolution none;
                    none.E = std::nan("");
                    none.window_ok = false;
                    row.energies.emplace_back(name, none);
                }
            }
            for (size_t a = 0; a < es_here.size(); ++a)
                for (size_t c = a + 1; c < es_here.size(); ++c)
                    row.max_pairwise_gap =
                        std::max(row.max_pairwise_gap, std::fabs(es_here[a] - es_here[c]));
            rows.push_back(std::move(row));
        }
        return rows;
    };

    const auto chunks =
        parallel_map<std::vector<SpectrumRow>>(work.size(), run, cfg.threads);
    std::vector<SpectrumRow> rows;
    for (const auto& ch : chunks) rows.insert(rows.end(), ch.begin(), ch.end());
    if (rows.empty()) {
        std::cerr << "no bound states\n";
        return 3;
    }
    switch (cfg.format) {
        case OutFormat::table: std::cout << render_rows_table(rows); break;
        case OutFormat::csv: std::cout << render_rows_csv(rows); break;
        case OutFormat::json:
            std::cout << render_rows_json(rows, cfg.mode, calib, cfg.seed) << "\n";
            break;
    }
    return 0;
}

int cmd_verify(CliState& st, bool do_recalibrate) {
    finalize_config(st);
    const RunConfig& cfg = st.cfg;
    const Calibration calib = effective_calibration(cfg.mode, cfg.calibration_path);
    if (do_recalibrate) {
        const Calibration fresh = recalibrate(cfg.threads);
        const std::string want = fresh.canonical_text();
        std::string have = calib.canonical_text();
        if (!cfg.calibration_path.empty()) {
            std::ifstream in(cfg.calibration_path, std::ios::binary);
            if (in)
                have.assign(std::istreambuf_iterator<char>(in),
                            std::istreambuf_iterator<char>());
        }
        if (want == have) {
            std::cout << "recalibration reproduces the shipped calibration ("
                      << fresh.hash() << ")\n";
            return 0;
        }
        std::cout << "calibration drift detected; regenerated file follows\n"
                  << want;
        return 1;
    }
    SuiteOptions o;
    o.mode = cfg.mode;
    o.calib = calib;
    o.seed = cfg.seed;
    o.samples = cfg.samples;
    o.p_max = cfg.p_max;
    o.threads = cfg.threads;
    const auto checks = run_all_suites(o);
    std::cout << render_checks(checks, cfg.mode, calib);
    for (const auto& c : checks) {
        if (!c.pass) {
            std::cerr << "first failing invariant: " << c.name << "\n";
            return 1;
        }
    }
    return 0;
}

int cmd_wavefunction(CliState& st, const std::string& kind_str, int n_r, int n1,
                     int n2, const std::string& j_str, int samples) {
    finalize_config(st);
    const RunConfig& cfg = st.cfg;
    const Calibration calib = effective_calibration(cfg.mode, cfg.calibration_path);
    if (cfg.q_list.empty() || cfg.n_list.size() + (j_str.empty() ? 0 : 1) == 0) {
        std::cerr << "wavefunction: need --q and (--j with --n-r, or --n)\n";
        return 2;
    }
    const auto sectors = config_sectors(cfg);
    if (sectors.empty()) {
        std::cerr << "wavefunction: no valid sector\n";
        return 2;
    }
    const Sector sector = sectors.front();
    const DeltaPair dp = deltas(sector, cfg.params);

    WaveSpec ws;
    ws.sector = sector;
    if (kind_str == "radial") ws.kind = WaveSpec::Kind::radial_spherical;
    else if (kind_str == "angular") ws.kind = WaveSpec::Kind::angular;
    else if (kind_str == "parabolic-xi") ws.kind = WaveSpec::Kind::parabolic_xi;
    else if (kind_str == "parabolic-eta") ws.kind = WaveSpec::Kind::parabolic_eta;
    else {
        std::cerr << "wavefunction: unknown kind '" << kind_str << "'\n";
        return 2;
    }
    ws.n_r = n_r;
    ws.n1 = n1;
    ws.n2 = n2;
    Half n;
    try {
        if (!j_str.empty()) {
            ws.j = parse_half(j_str);
            if (ws.j < dp.m_plus || !(ws.j - dp.m_plus).is_integer() || n_r < 0)
                throw std::invalid_argument("inadmissible (j, n_r)");
            n = Half::of_int(ws.n_r) + ws.j + half_one;
        } else {
            n = cfg.n_list.front();
            ws.j = n - Half::of_int(ws.n_r) - half_one;
            if (ws.j < dp.m_plus) throw std::invalid_argument("inadmissible n_r for n");
        }
        if (ws.kind == WaveSpec::Kind::parabolic_xi ||
            ws.kind == WaveSpec::Kind::parabolic_eta) {
            n = Half::of_int(ws.n1 + ws.n2) + dp.m_plus + half_one;
        }
    } catch (const std::exception& e) {
        std::cerr << "wavefunction: " << e.what() << "\n";
        return 2;
    }

    try {
        const auto sols = energy_spherical(n, sector, cfg.params, calib, cfg.mode);
        const double E = sols.front().E;  // lowest branch
        const double beta =
            radial_problem(E, sector, cfg.params, dp.m_plus, calib).beta;
        const double kappa = std::sqrt(-beta);
        const double s =
            -0.5 + std::sqrt(0.25 + separation_constant_A(ws.j, dp));
        double lo = 0, hi = 0;
        switch (ws.kind) {
            case WaveSpec::Kind::radial_spherical:
                lo = 1e-6 / kappa;
                hi = (2.0 * (ws.n_r + s + 1.0) + 22.0) / kappa;
                break;
            case WaveSpec::Kind::angular:
                lo = 1e-4;
                hi = M_PI - 1e-4;
                break;
            case WaveSpec::Kind::parabolic_xi:
                lo = 1e-6 / kappa;
                hi = (dp.m1 + 2.0 * ws.n1 + 26.0) / kappa;
                break;
            case WaveSpec::Kind::parabolic_eta:
                lo = 1e-6 / kappa;
                hi = (dp.m2 + 2.0 * ws.n2 + 26.0) / kappa;
                break;
        }
        std::vector<double> xs(samples), vs(samples);
        for (int i = 0; i < samples; ++i) {
            xs[i] = lo + (hi - lo) * i / (samples - 1.0);
            vs[i] = wavefunction_eval(ws, E, xs[i], cfg.params, calib);
            if (ws.kind == WaveSpec::Kind::radial_spherical) vs[i] *= xs[i];
            if (ws.kind == WaveSpec::Kind::angular)
                vs[i] *= std::sqrt(std::sin(xs[i]));
        }
        const double nrm = std::sqrt(normalize(vs, xs[1] - xs[0]));
        std::cout << "coordinate,value\r\n";
        for (int i = 0; i < samples; ++i) {
            std::cout << format_double(xs[i]) << ","
                      << format_double(vs[i] / nrm) << "\r\n";
        }
        return 0;
    } catch (const NoBoundState& e) {
        std::cerr << "no bound states: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "wavefunction: " << e.what() << "\n";
        return 2;
    }
}

int cmd_algebra(CliState& st, int p, const std::string& E_str) {
    finalize_config(st);
    const RunConfig& cfg = st.cfg;
    const Calibration calib = effective_calibration(cfg.mode, cfg.calibration_path);
    if (cfg.q_list.empty()) {
        std::cerr << "algebra: need --q\n";
        return 2;
    }
    const Sector sector = config_sectors(cfg).front();
    try {
        std::vector<RepSolution> sols;
        if (!E_str.empty()) {
            RepSolution rs;
            rs.E = std::stod(E_str);
            rs.p = p;
            const auto roots = phi_roots(rs.E, sector, cfg.params);
            const double W = 0.5 - roots[4];  // roots[4] = 1/2 - W
            rs.u = calib.alpha_sign < 0 ? 0.5 - W : 0.5 + W;
            for (int k = 1; k <= p; ++k)
                rs.phi_values.push_back(
                    phi_factored(k, rs.u, rs.E, sector, cfg.params, calib));
            sols.push_back(rs);
        } else {
            sols = solve_representation(p, sector, cfg.params, calib, cfg.mode);
        }
        for (const auto& rs : sols) {
            const auto k = structure_constants(rs.E, sector, cfg.params);
            const auto Kp = casimir_value(rs.E, sector, cfg.params, Mode::printed);
            const auto Kr = casimir_value(rs.E, sector, cfg.params, Mode::reconciled);
            std::cout << "E = " << format_double(rs.E) << "  p = " << rs.p
                      << "  u = " << format_double(rs.u) << "\n";
            std::cout << "structure constants: r_aa=" << format_table(k.r_aa)
                      << " r_ab=" << format_table(k.r_ab)
                      << " r_a=" << format_table(k.r_a)
                      << " r_b=" << format_table(k.r_b)
                      << " r_1=" << format_table(k.r_1)
                      << " s_aa=" << format_table(k.s_aa)
                      << " s_a=" << format_table(k.s_a)
                      << " s_1=" << format_table(k.s_1) << "\n";
            std::cout << "casimir: printed=" << format_double(Kp.K)
                      << " reconciled=" << format_double(Kr.K) << "\n";
            std::cout << "k phi_factored phi_specific phi_general\n";
            for (int kk = 0; kk <= rs.p + 1; ++kk) {
                const double pf =
                    phi_factored(kk, rs.u, rs.E, sector, cfg.params, calib);
                const double psn = phi_specific(kk, rs.u, rs.E, sector, cfg.params);
                const double pg =
                    calib.phi_general_norm * phi_general(kk, rs.u, k, Kr);
                std::cout << kk << " " << format_double(pf) << " "
                          << format_double(psn) << " " << format_double(pg) << "\n";
            }
            const auto rep = build_rep(rs, k, Kr);
            const auto rr = verify_relations(rep, k, Kr);
            std::cout << "matrix residuals: comm_ab=" << format_table(rr.comm_ab)
                      << " rel_ac=" << format_table(rr.rel_ac)
                      << " rel_bc=" << format_table(rr.rel_bc)
                      << " casimir=" << format_table(rr.casimir) << "\n";
        }
        return 0;
    } catch (const NoBoundState& e) {
        std::cerr << "no bound states: " << e.what() << "\n";
        return 3;
    } catch (const NoUnitaryRep& e) {
        std::cerr << "no unitary representation: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "algebra: " << e.what() << "\n";
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bound-state spectra of the generalized monopole system"};
    app.require_subcommand(1);
    CliState st;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", st.config_path, "flat key=value config file");
        sub->add_option("--mu", st.cfg.params.mu, "NUT parameter");
        sub->add_option("--c", st.c_csv, "couplings c1,c2,c3,c4");
        sub->add_option("--c1", st.cfg.params.c1);
        sub->add_option("--c2", st.cfg.params.c2);
        sub->add_option("--c3", st.cfg.params.c3);
        sub->add_option("--c4", st.cfg.params.c4);
        sub->add_option("--q", st.q_raw, "charge eigenvalues (list or a..b)")
            ->delimiter(',');
        sub->add_option("--m", st.m_raw, "axial eigenvalues (default: m = q)")
            ->delimiter(',');
        sub->add_option("--mode", st.mode_str, "printed | reconciled")
            ->check(CLI::IsMember({"printed", "reconciled"}));
        sub->add_flag("--paper-as-printed", st.paper_as_printed,
                      "alias for --mode printed");
        sub->add_option("--format", st.format_str, "table | csv | json")
            ->check(CLI::IsMember({"table", "csv", "json"}));
        sub->add_option("--calibration", st.cfg.calibration_path,
                        "calibration file path");
        sub->add_option("--seed", st.cfg.seed, "seed for sampled checks");
        sub->add_option("--threads", st.cfg.threads,
                        "worker threads (0 = default, 1 = serial reference)");
    };

    auto* spectrum = app.add_subcommand("spectrum", "energy levels by route");
    add_common(spectrum);
    spectrum->add_option("--n", st.n_raw, "principal numbers (list or a..b)")
        ->delimiter(',');
    std::string routes_csv;
    spectrum->add_option("--routes", routes_csv,
                         "spherical,parabolic,algebraic,ladder,oracle");
    int w_n1 = -1, w_n2 = -1;
    spectrum->add_option("--n1", w_n1, "parabolic index (with --n2)");
    spectrum->add_option("--n2", w_n2, "parabolic index (with --n1)");

    auto* verify = app.add_subcommand("verify", "run the invariant suites");
    add_common(verify);
    bool do_recal = false;
    verify->add_flag("--recalibrate", do_recal,
                     "regenerate the calibration and fail on drift");
    verify->add_option("--samples", st.cfg.samples, "random samples");
    verify->add_option("--p-max", st.cfg.p_max, "largest representation index");

    auto* wf = app.add_subcommand("wavefunction", "CSV samples of one factor");
    add_common(wf);
    std::string kind = "radial", j_str;
    int n_r = 0, n1 = 0, n2 = 0, samples = 1000;
    wf->add_option("--kind", kind, "radial | angular | parabolic-xi | parabolic-eta");
    wf->add_option("--n-r", n_r, "radial node count");
    wf->add_option("--j", j_str, "angular label");
    wf->add_option("--n", st.n_raw, "principal number")->delimiter(',');
    wf->add_option("--n1", n1);
    wf->add_option("--n2", n2);
    wf->add_option("--samples", samples);

    auto* algebra = app.add_subcommand("algebra", "structure constants and tables");
    add_common(algebra);
    int p = 2;
    std::string E_str;
    algebra->add_option("--p", p, "representation index");
    algebra->add_option("--energy", E_str, "evaluate at a fixed energy");

    CLI11_PARSE(app, argc, argv);

    try {
        if (spectrum->parsed()) {
            st.routes_csv = routes_csv;
            if (w_n1 >= 0 && w_n2 >= 0) st.cfg.parabolic = ParabolicQN{w_n1, w_n2};
            return cmd_spectrum(st);
        }
        if (verify->parsed()) return cmd_verify(st, do_recal);
        if (wf->parsed()) return cmd_wavefunction(st, kind, n_r, n1, n2, j_str, samples);
        if (algebra->parsed()) return cmd_algebra(st, p, E_str);
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

#ifndef GKKM_IO_HPP
#define GKKM_IO_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gkkm/calibration.hpp"
#include "gkkm/halfint.hpp"
#include "gkkm/model.hpp"
#include "gkkm/spectra.hpp"

namespace gkkm {

inline constexpr const char* kVersion = "1.0.0";

enum class OutFormat { table, csv, json };

/// Round-trippable decimal rendering (17 significant digits).
std::string format_double(double v);

/// Fixed human rendering for tables.
std::string format_table(double v);

/// Flat `key = value` file with '#' comments.
std::map<std::string, std::string> parse_kv_file(const std::string& path);

struct RunConfig {
    ModelParams params;
    std::vector<Half> q_list;
    std::vector<Half> m_list;           // empty: m = q per sector
    std::vector<Half> n_list;
    std::optional<ParabolicQN> parabolic;
    std::vector<std::string> routes = {"spherical", "parabolic", "algebraic",
                                       "ladder"};
    Mode mode = Mode::reconciled;
    OutFormat format = OutFormat::table;
    std::string calibration_path;
    unsigned long long seed = 1;
    int threads = 0;
    int samples = 1000;  // random samples in verify
    int p_max = 20;

    void apply_file(const std::string& path);   // CLI flags override afterwards
    void validate() const;
};

/// One spectrum row: a (sector, n, branch) with per-route energies.
struct SpectrumRow {
    double mu, c1, c2, c3, c4;
    Half q, m, n;
    int branch = 0;
    std::vector<std::pair<std::string, EnergySolution>> energies;
    double max_pairwise_gap = 0;
};

std::string render_rows_table(const std::vector<SpectrumRow>& rows);
std::string render_rows_csv(const std::vector<SpectrumRow>& rows);
std::string render_rows_json(const std::vector<SpectrumRow>& rows, Mode mode,
                             const Calibration& calib,
                             unsigned long long seed);

/// One verification check: name, measured value, threshold, direction.
struct CheckResult {
    std::string name;
    double measured = 0;
    double tolerance = 0;
    bool pass = false;
    std::string note;
};

std::string render_checks(const std::vector<CheckResult>& checks, Mode mode,
                          const Calibration& calib);

std::string json_escape(const std::string& s);

} // namespace gkkm

#endif

#include "gkkm/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gkkm {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v,
                             std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string format_table(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "% .12g", v);
    return buf;
}

std::map<std::string, std::string> parse_kv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected 'key = value'");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

namespace {

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<Half> parse_half_list(const std::string& s) {
    std::vector<Half> out;
    for (const auto& tok : split_commas(s)) {
        const auto dots = tok.find("..");
        if (dots != std::string::npos) {
            Half lo = parse_half(tok.substr(0, dots));
            Half hi = parse_half(tok.substr(dots + 2));
            for (Half v = lo; v <= hi; v = v + half_one) out.push_back(v);
        } else {
            out.push_back(parse_half(tok));
        }
    }
    return out;
}

} // namespace

void RunConfig::apply_file(const std::string& path) {
    const auto kv = parse_kv_file(path);
    for (const auto& [k, v] : kv) {
        if (k == "mu") params.mu = std::stod(v);
        else if (k == "c1") params.c1 = std::stod(v);
        else if (k == "c2") params.c2 = std::stod(v);
        else if (k == "c3") params.c3 = std::stod(v);
        else if (k == "c4") params.c4 = std::stod(v);
        else if (k == "q") q_list = parse_half_list(v);
        else if (k == "m") m_list = parse_half_list(v);
        else if (k == "n") n_list = parse_half_list(v);
        else if (k == "routes") {
            routes.clear();
            for (auto& r : split_commas(v)) routes.push_back(r);
        } else if (k == "mode") {
            if (v == "printed") mode = Mode::printed;
            else if (v == "reconciled") mode = Mode::reconciled;
            else throw std::runtime_error("bad mode: " + v);
        } else if (k == "format") {
            if (v == "table") format = OutFormat::table;
            else if (v == "csv") format = OutFormat::csv;
            else if (v == "json") format = OutFormat::json;
            else throw std::runtime_error("bad format: " + v);
        } else if (k == "calibration") calibration_path = v;
        else if (k == "seed") seed = std::stoull(v);
        else if (k == "threads") threads = std::stoi(v);
        else if (k == "samples") samples = std::stoi(v);
        else if (k == "p_max") p_max = std::stoi(v);
        else throw std::runtime_error("unknown config key: " + k);
    }
}

void RunConfig::validate() const {
    params.validate();
    for (Half q : q_list) {
        for (Half m : m_list.empty() ? std::vector<Half>{q} : m_list) {
            if (((m.twice - q.twice) % 2) != 0)
                throw std::invalid_argument("sector (q, m) needs integral m - q");
        }
    }
    static const char* known[] = {"spherical", "parabolic", "algebraic",
                                  "ladder", "oracle"};
    for (const auto& r : routes) {
        bool ok = false;
        for (const char* k : known) ok = ok || r == k;
        if (!ok) throw std::invalid_argument("unknown route: " + r);
    }
    if (samples < 1) throw std::invalid_argument("samples must be positive");
    if (p_max < 0) throw std::invalid_argument("p_max must be nonnegative");
}

namespace {

std::string row_key_cells(const SpectrumRow& r, const char* sep) {
    std::ostringstream os;
    os << format_double(r.mu) << sep << format_double(r.c1) << sep
       << format_double(r.c2) << sep << format_double(r.c3) << sep
       << format_double(r.c4) << sep << half_str(r.q) << sep << half_str(r.m)
       << sep << half_str(r.n) << sep << r.branch;
    return os.str();
}

} // namespace

std::string render_rows_table(const std::vector<SpectrumRow>& rows) {
    std::ostringstream os;
    os << "mu c1 c2 c3 c4 q m n branch";
    if (!rows.empty())
        for (const auto& [name, es] : rows.front().energies)
            os << " E_" << name;
    os << " max_gap residual window\n";
    for (const auto& r : rows) {
        os << format_table(r.mu) << " " << format_table(r.c1) << " "
           << format_table(r.c2) << " " << format_table(r.c3) << " "
           << format_table(r.c4) << " " << half_str(r.q) << " " << half_str(r.m)
           << " " << half_str(r.n) << " " << r.branch;
        double resid = 0;
        bool window = true;
        for (const auto& [name, es] : r.energies) {
            os << " " << format_table(es.E);
            resid = std::max(resid, std::fabs(es.residual));
            window = window && es.window_ok;
        }
        os << " " << format_table(r.max_pairwise_gap) << " "
           << format_table(resid) << " " << (window ? "ok" : "flagged") << "\n";
    }
    return os.str();
}

std::string render_rows_csv(const std::vector<SpectrumRow>& rows) {
    std::ostringstream os;
    os << "mu,c1,c2,c3,c4,q,m,n,branch";
    if (!rows.empty())
        for (const auto& [name, es] : rows.front().energies)
            os << ",E_" << name << ",residual_" << name << ",window_" << name;
    os << ",max_pairwise_gap\r\n";
    for (const auto& r : rows) {
        os << row_key_cells(r, ",");
        for (const auto& [name, es] : r.energies) {
            os << "," << format_double(es.E) << "," << format_double(es.residual)
               << "," << (es.window_ok ? "true" : "false");
        }
        os << "," << format_double(r.max_pairwise_gap) << "\r\n";
    }
    return os.str();
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

std::string render_rows_json(const std::vector<SpectrumRow>& rows, Mode mode,
                             const Calibration& calib,
                             unsigned long long seed) {
    std::ostringstream os;
    os << "{\"meta\":{\"version\":\"" << kVersion << "\",\"mode\":\""
       << mode_name(mode) << "\",\"calibration_hash\":\"" << calib.hash()
       << "\",\"seed\":" << seed << "},\"rows\":[";
    bool first_row = true;
    for (const auto& r : rows) {
        if (!first_row) os << ",";
        first_row = false;
        os << "{\"mu\":" << format_double(r.mu) << ",\"c\":["
           << format_double(r.c1) << "," << format_double(r.c2) << ","
           << format_double(r.c3) << "," << format_double(r.c4) << "]"
           << ",\"q\":" << format_double(r.q.value())
           << ",\"m\":" << format_double(r.m.value())
           << ",\"n\":" << format_double(r.n.value())
           << ",\"branch\":" << r.branch << ",\"routes\":{";
        bool first = true;
        for (const auto& [name, es] : r.energies) {
            if (!first) os << ",";
            first = false;
            os << "\"" << json_escape(name) << "\":{\"E\":" << format_double(es.E)
               << ",\"residual\":" << format_double(es.residual)
               << ",\"window_ok\":" << (es.window_ok ? "true" : "false") << "}";
        }
        os << "},\"max_pairwise_gap\":" << format_double(r.max_pairwise_gap)
           << "}";
    }
    os << "]}";
    return os.str();
}

std::string render_checks(const std::vector<CheckResult>& checks, Mode mode,
                          const Calibration& calib) {
    std::ostringstream os;
    os << "verification report (mode " << mode_name(mode) << ", calibration "
       << calib.hash() << ")\n";
    size_t width = 0;
    for (const auto& c : checks) width = std::max(width, c.name.size());
    for (const auto& c : checks) {
        os << (c.pass ? "pass  " : "FAIL  ") << c.name;
        os << std::string(width - c.name.size() + 2, ' ');
        os << "measured " << format_table(c.measured) << "  tolerance "
           << format_table(c.tolerance);
        if (!c.note.empty()) os << "  [" << c.note << "]";
        os << "\n";
    }
    return os.str();
}

} // namespace gkkm

#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "torsym/io.hpp"

namespace torsym::io {

using nlohmann::json;

std::string hash_text(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

RunManifest make_manifest(const std::string& command, const std::string& config_text) {
    RunManifest m;
    m.command = command;
    m.config_hash = hash_text(config_text);
    m.library_version = TORSYM_VERSION;
    m.started_at = utc_timestamp();
    return m;
}

json manifest_to_json(const RunManifest& m) {
    json j{{"command", m.command},
           {"config_hash", m.config_hash},
           {"library_version", m.library_version},
           {"started_at", m.started_at},
           {"finished_at", m.finished_at.empty() ? utc_timestamp() : m.finished_at}};
    j["seed"] = m.has_seed ? json(m.seed) : json(nullptr);
    return j;
}

namespace {

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json report_to_json(const TestReport& r, const RunManifest& manifest) {
    json j{{"schema", kReportSchema},
           {"statistic", finite_or_null(r.statistic)},
           {"df", r.df},
           {"p_value", finite_or_null(r.p_value)},
           {"alpha", r.alpha},
           {"critical_value", r.critical_value},
           {"reject", r.reject},
           {"center", r.center},
           {"center_source", r.center_source == CenterSource::Given ? "given" : "estimated"},
           {"n", r.n}};
    j["f0_used"] = r.f0_used ? json(*r.f0_used) : json(nullptr);
    j["manifest"] = manifest_to_json(manifest);
    return j;
}

std::string report_to_text(const TestReport& r) {
    std::ostringstream os;
    os << std::setprecision(6);
    os << "statistic      " << r.statistic << '\n';
    os << "df             " << r.df << '\n';
    os << "p-value        " << r.p_value << '\n';
    os << "alpha          " << r.alpha << '\n';
    os << "critical value " << r.critical_value << '\n';
    os << "decision       " << (r.reject ? "reject" : "do not reject") << " H0 of symmetry at level " << r.alpha
       << '\n';
    os << "center (" << (r.center_source == CenterSource::Given ? "given" : "estimated") << ")";
    for (double c : r.center) os << ' ' << c;
    os << '\n';
    if (r.f0_used) os << "f0             " << *r.f0_used << '\n';
    os << "n              " << r.n << '\n';
    return os.str();
}

void write_simtable_csv(std::ostream& out, const SimTable& table) {
    out << std::setprecision(10);
    out << "row,n,reps,rejections,errors,rejection_rate,mc_stderr\n";
    for (const auto& row : table.rows) {
        out << '"' << row.summary << '"' << ',' << row.n << ',' << row.reps << ',' << row.rejections << ','
            << row.errors << ',' << row.rejection_rate << ',' << row.mc_stderr << '\n';
    }
}

json simtable_to_json(const SimTable& table, const RunManifest& manifest) {
    json rows = json::array();
    for (const auto& row : table.rows) {
        rows.push_back({{"row", row.summary},
                        {"n", row.n},
                        {"reps", row.reps},
                        {"rejections", row.rejections},
                        {"errors", row.errors},
                        {"rejection_rate", row.rejection_rate},
                        {"mc_stderr", row.mc_stderr}});
    }
    return {{"schema", kSimTableSchema}, {"rows", rows}, {"manifest", manifest_to_json(manifest)}};
}

void write_power_curve_csv(std::ostream& out, const std::vector<PowerPoint>& points) {
    out << std::setprecision(10);
    out << "tau,lambda,admissible,simulated,mc_stderr,theoretical,errors\n";
    auto joined = [](const std::vector<double>& v) {
        std::ostringstream os;
        os << std::setprecision(10);
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ";" : "") << v[i];
        return os.str();
    };
    for (const auto& p : points) {
        out << joined(p.tau) << ',' << joined(p.lambda) << ',' << (p.admissible ? "true" : "false") << ',';
        if (p.admissible) {
            out << p.simulated << ',' << p.mc_stderr << ',';
        } else {
            out << ",,";
        }
        out << p.theoretical << ',' << p.errors << '\n';
    }
}

json power_curve_to_json(const std::vector<PowerPoint>& points, const RunManifest& manifest) {
    json arr = json::array();
    for (const auto& p : points) {
        json e{{"tau", p.tau},
               {"lambda", p.lambda},
               {"admissible", p.admissible},
               {"theoretical", p.theoretical},
               {"errors", p.errors}};
        e["simulated"] = p.admissible ? json(p.simulated) : json(nullptr);
        e["mc_stderr"] = p.admissible ? json(p.mc_stderr) : json(nullptr);
        arr.push_back(std::move(e));
    }
    return {{"schema", "torsym.powercurve/1"}, {"points", arr}, {"manifest", manifest_to_json(manifest)}};
}

json stein_to_json(const SteinDiagnostic& diag, const RunManifest& manifest) {
    return {{"schema", "torsym.stein/1"},
            {"n_list", diag.n_list},
            {"distances", diag.distances},
            {"slope", diag.slope},
            {"note", diag.note},
            {"manifest", manifest_to_json(manifest)}};
}

}  // namespace torsym::io

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "torsym/angle.hpp"
#include "torsym/models.hpp"
#include "torsym/simulation.hpp"
#include "torsym/symmetry_tests.hpp"

namespace torsym::io {

inline constexpr const char* kReportSchema = "torsym.report/1";
inline constexpr const char* kSimTableSchema = "torsym.simtable/1";

enum class Units { Radians, Degrees };

Units parse_units(const std::string& text);
double to_radians(double value, Units units);
double from_radians(double value, Units units);

/// Model config: {"kind": "iwc"|"sine"|"bwc"|"uniform", "dim": d, "params": {...}}.
///   iwc:     {"beta": [b1, ..., bd]}
///   sine:    {"k1": .., "k2": .., "rho": .., "allow_multimodal": false}
///   bwc:     {"xi1": .., "xi2": .., "rho": ..}
///   uniform: {}
/// Throws InputError on malformed input, ModelError on invalid parameters.
BaseModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const BaseModel& model);
BaseModel load_model(const std::filesystem::path& path);

/// CSV of angles: rows are observations, columns coordinates, optional
/// header line. Values converted from `units` and wrapped.
AngleMatrix read_angle_csv(std::istream& in, Units units);
AngleMatrix read_angle_csv(const std::filesystem::path& path, Units units);
void write_angle_csv(std::ostream& out, const AngleMatrix& data, Units units);

struct RunManifest {
    std::string command;
    std::string config_hash;
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::string library_version;
    std::string started_at;
    std::string finished_at;
};

/// FNV-1a 64 of `text`, hex encoded.
std::string hash_text(const std::string& text);
std::string utc_timestamp();
RunManifest make_manifest(const std::string& command, const std::string& config_text);
nlohmann::json manifest_to_json(const RunManifest& manifest);

nlohmann::json report_to_json(const TestReport& report, const RunManifest& manifest);
std::string report_to_text(const TestReport& report);

/// Simulation config (see README for the schema). `mode` selects
/// "table", "power_curve" or "stein".
struct SimulationRequest {
    std::string mode;
    std::vector<SimConfig> rows;                    // table
    std::vector<std::vector<double>> tau_grid;      // power_curve
    std::size_t n_local = 0;                        // power_curve
    std::vector<std::size_t> n_list;                // stein
    nlohmann::json raw;
};

SimulationRequest simulation_from_json(const nlohmann::json& j);
SimConfig sim_config_from_json(const nlohmann::json& j);

void write_simtable_csv(std::ostream& out, const SimTable& table);
nlohmann::json simtable_to_json(const SimTable& table, const RunManifest& manifest);

void write_power_curve_csv(std::ostream& out, const std::vector<PowerPoint>& points);
nlohmann::json power_curve_to_json(const std::vector<PowerPoint>& points, const RunManifest& manifest);

nlohmann::json stein_to_json(const SteinDiagnostic& diag, const RunManifest& manifest);

}  // namespace torsym::io

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "torsym/errors.hpp"
#include "torsym/io.hpp"
#include "torsym/rng.hpp"
#include "torsym/sine_skewed.hpp"
#include "torsym/symmetry_tests.hpp"

namespace {

using nlohmann::json;
using namespace torsym;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitDegenerate = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(what + " is not valid JSON: " + e.what());
    }
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw InputError("cannot write '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

std::vector<double> angles_from_flag(const std::string& text, io::Units units) {
    auto values = parse_angle_list(text);
    for (auto& v : values) v = wrap_angle(io::to_radians(v, units));
    return values;
}

std::string invocation(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) s += (i ? " " : "") + std::string(argv[i]);
    return s;
}

void emit_report(const TestReport& report, io::RunManifest manifest, const std::string& format,
                 const std::string& out_path) {
    Output out(out_path);
    manifest.finished_at = io::utc_timestamp();
    if (format == "json") {
        out.stream() << io::report_to_json(report, manifest).dump(2) << '\n';
    } else if (format == "text") {
        out.stream() << io::report_to_text(report);
    } else {
        throw InputError("test reports support --format json or text");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tests for symmetry of toroidal data against sine-skewed alternatives"};
    app.set_version_flag("--version", std::string(TORSYM_VERSION));
    app.require_subcommand(1);

    std::string data_path, mu_text, f0_path, out_path, units_text = "rad", format = "text";
    std::string model_path, lambda_text, config_path;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::optional<std::size_t> reps;
    bool ridge = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "Output file (default stdout)");
        cmd->add_option("--units", units_text, "Angle units of inputs and outputs")
            ->check(CLI::IsMember({"rad", "deg"}));
    };

    auto* known = app.add_subcommand("test-known", "Test symmetry about a specified center");
    known->add_option("--data", data_path, "CSV of angles")->required();
    known->add_option("--mu", mu_text, "Center, comma-separated")->required();
    known->add_option("--alpha", alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
    known->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    known->add_flag("--ridge", ridge, "Regularize the information matrix");
    add_common(known);

    auto* unknown = app.add_subcommand("test-unknown", "Test symmetry about an estimated center");
    unknown->add_option("--data", data_path, "CSV of angles")->required();
    unknown->add_option("--f0", f0_path, "Base-model JSON config")->required();
    unknown->add_option("--alpha", alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
    unknown->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    unknown->add_flag("--ridge", ridge, "Regularize the information matrices");
    add_common(unknown);

    auto* sample = app.add_subcommand("sample", "Draw from a sine-skewed model");
    sample->add_option("--model", model_path, "Base-model JSON config")->required();
    sample->add_option("--mu", mu_text, "Center, comma-separated (default 0)");
    sample->add_option("--lambda", lambda_text, "Skewness, comma-separated (default 0)");
    sample->add_option("--n", n, "Sample size")->required()->check(CLI::PositiveNumber);
    sample->add_option("--seed", seed, "RNG seed")->required();
    add_common(sample);

    auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo experiment from a JSON config");
    simulate->add_option("--config", config_path, "Simulation JSON config")->required();
    simulate->add_option("--seed", seed, "RNG seed (overrides the config default)")->required();
    simulate->add_option("--reps", reps, "Replications (overrides the config default)");
    simulate->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    add_common(simulate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    const std::string command = invocation(argc, argv);
    try {
        const io::Units units = io::parse_units(units_text);
        const TestOptions options{ridge};

        if (known->parsed()) {
            const AngleMatrix data = io::read_angle_csv(std::filesystem::path(data_path), units);
            const auto mu = angles_from_flag(mu_text, units);
            if (mu.size() != data.cols()) {
                throw InputError("--mu has " + std::to_string(mu.size()) + " entries but the data has " +
                                 std::to_string(data.cols()) + " columns");
            }
            auto report = test_known_center(data, mu, alpha, options);
            if (units == io::Units::Degrees) {
                for (auto& c : report.center) c = io::from_radians(c, units);
            }
            emit_report(report, io::make_manifest(command, read_file(data_path)), format, out_path);
        } else if (unknown->parsed()) {
            const AngleMatrix data = io::read_angle_csv(std::filesystem::path(data_path), units);
            const std::string f0_text = read_file(f0_path);
            const BaseModel f0 = io::model_from_json(parse_json_text(f0_text, "f0 config"));
            if (static_cast<std::size_t>(f0.dim()) != data.cols()) {
                throw InputError("f0 has dimension " + std::to_string(f0.dim()) + " but the data has " +
                                 std::to_string(data.cols()) + " columns");
            }
            auto report = test_unknown_center(data, f0, alpha, options);
            if (units == io::Units::Degrees) {
                for (auto& c : report.center) c = io::from_radians(c, units);
            }
            emit_report(report, io::make_manifest(command, read_file(data_path) + f0_text), format, out_path);
        } else if (sample->parsed()) {
            BaseModel base = io::model_from_json(parse_json_text(read_file(model_path), "model config"));
            const auto d = static_cast<std::size_t>(base.dim());
            const auto mu = mu_text.empty() ? std::vector<double>(d, 0.0) : angles_from_flag(mu_text, units);
            const auto lambda = lambda_text.empty() ? std::vector<double>(d, 0.0) : parse_angle_list(lambda_text);
            if (mu.size() != d || lambda.size() != d) {
                throw InputError("--mu and --lambda must have " + std::to_string(d) + " entries");
            }
            const SineSkewedModel model(std::move(base), mu, SkewVector(lambda));
            RngStream rng(seed, 0);
            const AngleMatrix draws = model.sample(n, rng);
            Output out(out_path);
            io::write_angle_csv(out.stream(), draws, units);
        } else if (simulate->parsed()) {
            const std::string text = read_file(config_path);
            json cfg = parse_json_text(text, "simulation config");
            if (!cfg.is_object()) throw InputError("simulation config must be a JSON object");
            cfg["defaults"]["seed"] = seed;
            if (reps) cfg["defaults"]["reps"] = *reps;
            const io::SimulationRequest req = io::simulation_from_json(cfg);
            io::RunManifest manifest = io::make_manifest(command, text);
            manifest.seed = seed;
            manifest.has_seed = true;
            Output out(out_path);
            if (req.mode == "table") {
                SimTable table;
                for (const auto& row : req.rows) {
                    table.rows.push_back(run_rejection_study(row));
                    std::cerr << table.rows.back().summary << ": " << table.rows.back().rejection_rate << '\n';
                }
                manifest.finished_at = io::utc_timestamp();
                if (format == "csv") {
                    io::write_simtable_csv(out.stream(), table);
                } else {
                    out.stream() << io::simtable_to_json(table, manifest).dump(2) << '\n';
                }
            } else if (req.mode == "power_curve") {
                const auto points = power_curve(req.rows.front(), req.tau_grid, req.n_local);
                manifest.finished_at = io::utc_timestamp();
                if (format == "csv") {
                    io::write_power_curve_csv(out.stream(), points);
                } else {
                    out.stream() << io::power_curve_to_json(points, manifest).dump(2) << '\n';
                }
            } else {
                const auto diag = stein_rate_diagnostic(req.rows.front(), req.n_list);
                manifest.finished_at = io::utc_timestamp();
                if (format == "csv") {
                    out.stream() << "n,kolmogorov_distance\n";
                    for (std::size_t i = 0; i < diag.n_list.size(); ++i) {
                        out.stream() << diag.n_list[i] << ',' << diag.distances[i] << '\n';
                    }
                    out.stream() << "# slope " << diag.slope << "; " << diag.note << '\n';
                } else {
                    out.stream() << io::stein_to_json(diag, manifest).dump(2) << '\n';
                }
            }
        }
        return kExitOk;
    } catch (const DegenerateError& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (unknown->parsed()) std::cerr << "hint: a different f0 may give a non-singular information matrix\n";
        return kExitDegenerate;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
}

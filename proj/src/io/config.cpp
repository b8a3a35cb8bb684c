#include <fstream>
#include <sstream>

#include "torsym/errors.hpp"
#include "torsym/io.hpp"

namespace torsym::io {

using nlohmann::json;

namespace {

double number_field(const json& params, const char* name) {
    if (!params.contains(name)) throw InputError(std::string("model params: missing field '") + name + "'");
    const auto& v = params.at(name);
    if (!v.is_number()) throw InputError(std::string("model params: field '") + name + "' must be a number");
    return v.get<double>();
}

std::vector<double> number_array(const json& j, const char* what) {
    if (!j.is_array()) throw InputError(std::string(what) + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) throw InputError(std::string(what) + " must contain only numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

void expect_dim(const json& j, int dim) {
    if (j.contains("dim")) {
        if (!j.at("dim").is_number_integer() || j.at("dim").get<int>() != dim) {
            throw InputError("model config: 'dim' must equal " + std::to_string(dim) + " for this kind");
        }
    }
}

}  // namespace

BaseModel model_from_json(const json& j) {
    if (!j.is_object()) throw InputError("model config must be a JSON object");
    if (!j.contains("kind") || !j.at("kind").is_string()) throw InputError("model config: missing string field 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    const json params = j.value("params", json::object());
    if (!params.is_object()) throw InputError("model config: 'params' must be an object");

    if (kind == "iwc") {
        if (!params.contains("beta")) throw InputError("model params: missing field 'beta'");
        auto beta = number_array(params.at("beta"), "params.beta");
        expect_dim(j, static_cast<int>(beta.size()));
        return BaseModel::independent_wrapped_cauchy(std::move(beta));
    }
    if (kind == "sine") {
        expect_dim(j, 2);
        const bool allow = params.value("allow_multimodal", false);
        return BaseModel::sine(number_field(params, "k1"), number_field(params, "k2"), number_field(params, "rho"),
                               allow);
    }
    if (kind == "bwc") {
        expect_dim(j, 2);
        return BaseModel::bivariate_wrapped_cauchy(number_field(params, "xi1"), number_field(params, "xi2"),
                                                   number_field(params, "rho"));
    }
    if (kind == "uniform") {
        if (!j.contains("dim") || !j.at("dim").is_number_integer()) {
            throw InputError("model config: uniform model needs an integer 'dim'");
        }
        return BaseModel::uniform(j.at("dim").get<int>());
    }
    throw InputError("model config: unknown kind '" + kind + "' (expected iwc, sine, bwc or uniform)");
}

json model_to_json(const BaseModel& model) {
    json j;
    j["dim"] = model.dim();
    const auto p = model.params();
    switch (model.kind()) {
        case ModelKind::IndepWrappedCauchy:
            j["kind"] = "iwc";
            j["params"] = {{"beta", std::vector<double>(p.begin(), p.end())}};
            break;
        case ModelKind::SineModel:
            j["kind"] = "sine";
            j["params"] = {{"k1", p[0]}, {"k2", p[1]}, {"rho", p[2]}};
            break;
        case ModelKind::BivariateWrappedCauchy:
            j["kind"] = "bwc";
            j["params"] = {{"xi1", p[0]}, {"xi2", p[1]}, {"rho", p[2]}};
            break;
        case ModelKind::UniformTorus:
            j["kind"] = "uniform";
            j["params"] = json::object();
            break;
    }
    return j;
}

BaseModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open model config '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InputError("model config '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return model_from_json(j);
}

SimConfig sim_config_from_json(const json& j) {
    try {
        if (!j.contains("generator")) throw InputError("simulation config: missing 'generator'");
        const json& gen = j.at("generator");
        BaseModel g0 = model_from_json(gen.at("model"));
        const auto d = static_cast<std::size_t>(g0.dim());
        std::vector<double> mu = gen.contains("mu") ? number_array(gen.at("mu"), "generator.mu")
                                                    : std::vector<double>(d, 0.0);
        std::vector<double> lambda = gen.contains("lambda") ? number_array(gen.at("lambda"), "generator.lambda")
                                                            : std::vector<double>(d, 0.0);

        TestSpec test;
        const json t = j.value("test", json{{"kind", "known"}});
        const std::string kind = t.value("kind", "known");
        if (kind == "known") {
            test.kind = TestKind::KnownCenter;
        } else if (kind == "unknown") {
            test.kind = TestKind::UnknownCenter;
            if (!t.contains("f0")) throw InputError("simulation config: unknown-center test needs 'f0'");
            test.f0 = model_from_json(t.at("f0"));
        } else {
            throw InputError("simulation config: test kind must be 'known' or 'unknown'");
        }

        if (!j.contains("seed") || !j.at("seed").is_number_integer() || j.at("seed").get<std::int64_t>() < 0) {
            throw InputError("simulation config: a non-negative integer 'seed' is required");
        }
        SimConfig cfg{SineSkewedModel(std::move(g0), std::move(mu), SkewVector(std::move(lambda))),
                      std::move(test),
                      j.value("n", std::size_t{0}),
                      j.value("reps", std::size_t{1000}),
                      j.value("alpha", 0.05),
                      j.at("seed").get<std::uint64_t>(),
                      j.value("workers", 0)};
        cfg.validate();
        return cfg;
    } catch (const json::exception& e) {
        throw InputError(std::string("simulation config: ") + e.what());
    } catch (const DomainError& e) {
        throw InputError(std::string("simulation config: ") + e.what());
    }
}

SimulationRequest simulation_from_json(const json& j) {
    if (!j.is_object()) throw InputError("simulation config must be a JSON object");
    SimulationRequest req;
    req.raw = j;
    req.mode = j.value("mode", "table");
    const json defaults = j.value("defaults", json::object());

    auto merged = [&](const json& patch) {
        json cfg = defaults;
        cfg.merge_patch(patch);
        return sim_config_from_json(cfg);
    };

    if (req.mode == "table") {
        if (!j.contains("rows") || !j.at("rows").is_array() || j.at("rows").empty()) {
            throw InputError("table simulation needs a non-empty 'rows' array");
        }
        for (const auto& row : j.at("rows")) req.rows.push_back(merged(row));
    } else if (req.mode == "power_curve") {
        if (!j.contains("tau_grid") || !j.at("tau_grid").is_array()) {
            throw InputError("power_curve simulation needs 'tau_grid'");
        }
        for (const auto& tau : j.at("tau_grid")) req.tau_grid.push_back(number_array(tau, "tau_grid entry"));
        req.n_local = j.value("n_local", std::size_t{0});
        if (req.n_local == 0) throw InputError("power_curve simulation needs a positive 'n_local'");
        req.rows.push_back(merged(json{{"n", req.n_local}}));
    } else if (req.mode == "stein") {
        json base = json{{"n", 1}};
        base.merge_patch(defaults);
        json cfg = base;
        req.rows.push_back(sim_config_from_json(cfg));
        if (!j.contains("n_list") || !j.at("n_list").is_array()) throw InputError("stein simulation needs 'n_list'");
        for (const auto& n : j.at("n_list")) {
            if (!n.is_number_integer() || n.get<std::int64_t>() <= 0) {
                throw InputError("n_list must contain positive integers");
            }
            req.n_list.push_back(n.get<std::size_t>());
        }
    } else {
        throw InputError("simulation mode must be 'table', 'power_curve' or 'stein'");
    }
    return req;
}

}  // namespace torsym::io

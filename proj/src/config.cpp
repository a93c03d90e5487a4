#include "nozzleflow/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "nozzleflow/errors.hpp"

namespace nozzleflow {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) {
            throw ConfigError("unknown key '" + item.key() + "' in " + where);
        }
    }
}

double take_number(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) {
        throw ConfigError(std::string("'") + key + "' must be a number");
    }
    return v.get<double>();
}

int take_int(const json& obj, const char* key, int fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
        throw ConfigError(std::string("'") + key + "' must be an integer");
    }
    return v.get<int>();
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    reject_unknown(doc, {"gas", "nozzle", "grid", "solver", "experiment"}, "config");

    RunConfig cfg;
    if (doc.contains("gas")) {
        const json& gas = doc.at("gas");
        reject_unknown(gas, {"gamma", "c0"}, "gas");
        cfg.gamma = take_number(gas, "gamma", cfg.gamma);
        cfg.c0 = take_number(gas, "c0", cfg.c0);
    }
    if (doc.contains("nozzle")) {
        const json& nozzle = doc.at("nozzle");
        reject_unknown(nozzle, {"a", "p"}, "nozzle");
        cfg.nozzle_a = take_number(nozzle, "a", cfg.nozzle_a);
        cfg.nozzle_p = take_number(nozzle, "p", cfg.nozzle_p);
    }
    if (doc.contains("grid")) {
        const json& grid = doc.at("grid");
        reject_unknown(grid, {"nx", "ny"}, "grid");
        cfg.nx = take_int(grid, "nx", cfg.nx);
        cfg.ny = take_int(grid, "ny", cfg.ny);
    }
    if (doc.contains("solver")) {
        const json& solver = doc.at("solver");
        reject_unknown(solver, {"eps0", "eps_factor", "eps_min", "newton_tol", "max_newton"},
                       "solver");
        cfg.solver.eps0 = take_number(solver, "eps0", cfg.solver.eps0);
        cfg.solver.eps_factor = take_number(solver, "eps_factor", cfg.solver.eps_factor);
        cfg.solver.eps_min = take_number(solver, "eps_min", cfg.solver.eps_min);
        cfg.solver.newton_tol = take_number(solver, "newton_tol", cfg.solver.newton_tol);
        cfg.solver.max_newton = take_int(solver, "max_newton", cfg.solver.max_newton);
    }
    if (doc.contains("experiment")) {
        const json& exp = doc.at("experiment");
        reject_unknown(exp, {"kind", "delta", "seed", "entry_shape"}, "experiment");
        if (exp.contains("kind")) {
            if (!exp.at("kind").is_string()) throw ConfigError("'kind' must be a string");
            cfg.kind = exp.at("kind").get<std::string>();
        }
        cfg.delta = take_number(exp, "delta", cfg.delta);
        if (exp.contains("seed")) {
            if (!exp.at("seed").is_number_integer() || exp.at("seed").get<long long>() < 0) {
                throw ConfigError("'seed' must be a nonnegative integer");
            }
            cfg.seed = exp.at("seed").get<unsigned long>();
        }
        if (exp.contains("entry_shape")) {
            if (!exp.at("entry_shape").is_string()) {
                throw ConfigError("'entry_shape' must be a string");
            }
            cfg.entry_shape = exp.at("entry_shape").get<std::string>();
        }
    }

    // Range checks; the messages name the violated invariant.
    if (!(cfg.gamma > 1.0)) throw ConfigError("gas.gamma must exceed 1");
    if (!(cfg.c0 > 0.0)) throw ConfigError("gas.c0 must be positive");
    if (!(cfg.nozzle_a > 0.0)) throw ConfigError("nozzle.a must be positive");
    if (cfg.nx < 2) throw ConfigError("grid.nx must be at least 2");
    if (cfg.ny < 4) throw ConfigError("grid.ny must be at least 4");
    if (!(cfg.solver.eps_min > 0.0 && cfg.solver.eps_min <= cfg.solver.eps0 &&
          cfg.solver.eps0 < 1.0)) {
        throw ConfigError("solver needs 0 < eps_min <= eps0 < 1");
    }
    if (!(cfg.solver.eps_factor > 0.0 && cfg.solver.eps_factor < 1.0)) {
        throw ConfigError("solver.eps_factor must lie in (0,1)");
    }
    if (!(cfg.solver.newton_tol > 0.0)) throw ConfigError("solver.newton_tol must be positive");
    if (cfg.solver.max_newton < 1) throw ConfigError("solver.max_newton must be at least 1");
    if (cfg.delta < 0.0) throw ConfigError("experiment.delta must be nonnegative");
    static const std::set<std::string> kinds = {"",      "symmetric", "solve",
                                                "verify", "perturb",   "hopf-gallery"};
    if (!kinds.count(cfg.kind)) {
        throw ConfigError("experiment.kind '" + cfg.kind + "' is not a known command");
    }
    if (cfg.entry_shape != "sin" && cfg.entry_shape != "minus_sin2") {
        throw ConfigError("experiment.entry_shape must be 'sin' or 'minus_sin2'");
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace nozzleflow

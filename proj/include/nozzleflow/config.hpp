#pragma once

#include <string>

#include "nozzleflow/pde.hpp"

namespace nozzleflow {

// One experiment run: gas and nozzle parameters, grid, solver knobs, and the
// experiment selector. Parsed from a single JSON document; unknown keys are
// rejected so typos in numerical experiments surface immediately.
struct RunConfig {
    double gamma = 1.4;
    double c0 = 1.2;
    double nozzle_a = 0.25;
    double nozzle_p = 2.0;
    int nx = 65;
    int ny = 32;
    SolverConfig solver;
    std::string kind;  // empty or one of symmetric|solve|verify|perturb|hopf-gallery
    double delta = 0.01;
    unsigned long seed = 0;
    std::string entry_shape = "sin";  // "sin" or "minus_sin2"
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

}  // namespace nozzleflow

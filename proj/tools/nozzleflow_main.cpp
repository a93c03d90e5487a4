#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nozzleflow/config.hpp"
#include "nozzleflow/errors.hpp"
#include "nozzleflow/experiments.hpp"

namespace {

struct Cli {
    std::string config_path;
    std::string out_dir = "out";
    long long seed = -1;  // negative: keep the config value
};

int dispatch(const std::string& command, const Cli& cli) {
    using namespace nozzleflow;
    RunConfig config;
    try {
        if (!cli.config_path.empty()) {
            config = load_config(cli.config_path);
        }
        if (!config.kind.empty() && config.kind != command) {
            throw ConfigError("config experiment.kind '" + config.kind +
                              "' does not match command '" + command + "'");
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    if (cli.seed >= 0) {
        config.seed = static_cast<unsigned long>(cli.seed);
    }

    if (command == "symmetric") return run_symmetric(config, cli.out_dir);
    if (command == "solve") return run_solve(config, cli.out_dir, false);
    if (command == "verify") return run_solve(config, cli.out_dir, true);
    if (command == "perturb") return run_perturb(config, cli.out_dir);
    if (command == "hopf-gallery") return run_hopf_gallery(config, cli.out_dir);
    std::cerr << "error: unknown command '" << command << "'\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Subsonic-sonic potential flow in a convergent approximate nozzle"};
    app.require_subcommand(1);

    Cli cli;
    app.add_option("--config", cli.config_path, "JSON run configuration")
        ->check(CLI::ExistingFile);
    app.add_option("--out", cli.out_dir, "output directory (default: out)");
    app.add_option("--seed", cli.seed, "override the configured random seed");

    app.add_subcommand("symmetric", "build the symmetric flow and check its invariants");
    app.add_subcommand("solve", "solve the 2D problem from the lifted symmetric guess");
    app.add_subcommand("verify", "solve, then emit the sign-condition reports");
    app.add_subcommand("perturb", "sweep perturbed entry data and report diagnostics");
    app.add_subcommand("hopf-gallery", "run the boundary-point lemma operator gallery");

    CLI11_PARSE(app, argc, argv);
    return dispatch(app.get_subcommands().front()->get_name(), cli);
}

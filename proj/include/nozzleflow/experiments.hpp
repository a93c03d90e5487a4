#pragma once

#include <string>

#include "nozzleflow/config.hpp"
#include "nozzleflow/grid.hpp"
#include "nozzleflow/hopf.hpp"

namespace nozzleflow {

// Experiment drivers behind the CLI subcommands. Each writes its outputs
// under out_dir and returns the process exit code:
//   0 success, 1 configuration error, 2 check failure, 3 solver stall.

int run_symmetric(const RunConfig& config, const std::string& out_dir);

// emit_sign_reports additionally writes sign_reports.json (the `verify`
// command); the solve report, solution and Mach fields are always written.
int run_solve(const RunConfig& config, const std::string& out_dir,
              bool emit_sign_reports = false);

// Sweeps the entry perturbation over {delta/4, delta/2, delta} and reports
// per-amplitude diagnostics; never fails on the diagnostics themselves.
int run_perturb(const RunConfig& config, const std::string& out_dir);

int run_hopf_gallery(const RunConfig& config, const std::string& out_dir);

// Bandlimited zero-mean bump: x(1-x) times a short Fourier sum in y with
// seeded coefficients, rescaled so the grid inf-norm equals amplitude.
ScalarField smooth_perturbation(const StripGrid& grid, double amplitude,
                                unsigned long seed);

// Exit-boundary operator of the linearized equation in flattening
// coordinates (tangent, 1 - x): degenerate principal part at the boundary,
// drift from the symmetric base flow. Used by the gallery and the tests.
DegenOperator sonic_exit_operator(const GasModel& gas, const NozzleProfile& profile);

}  // namespace nozzleflow

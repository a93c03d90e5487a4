#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "nozzleflow/gas.hpp"
#include "nozzleflow/grid.hpp"
#include "nozzleflow/nozzle.hpp"

namespace nozzleflow {

// Bernoulli data on the two boundary circles: squared metric speed B(y) at
// the entry, squared speed at the exit before regularization.
struct BoundaryData {
    std::function<double(double)> entry_speed_sq;
    double exit_speed_sq = 0.0;

    // B == b0^2 with b0 matched to the sonic exit of the given nozzle.
    static BoundaryData symmetric(const GasModel& gas, const NozzleProfile& profile);
};

struct SolverConfig {
    double eps0 = 1e-1;        // initial exit regularization
    double eps_factor = 0.5;   // continuation shrink per stage
    double eps_min = 1e-3;     // final regularization
    double newton_tol = 1e-9;  // residual inf-norm target
    int max_newton = 50;       // iteration cap per continuation stage
    double damping_min = 1.0 / 1024.0;  // smallest line-search fraction, 2^-10
};

struct SolveReport {
    bool converged = false;
    double final_eps = 0.0;
    std::vector<double> residual_history;
    std::string stall_reason;
    bool entry_flow_direction_ok = false;  // discrete inflow/outflow sign check
    ScalarField solution;
    ScalarField mach_field;
};

using SparseMatrix = Eigen::SparseMatrix<double>;

// Nonlinear residual of the potential flow equation at interior nodes;
// boundary rows are left at zero. Throws SonicExceeded when the metric
// speed reaches the limit speed anywhere in the interior.
ScalarField interior_residual(const ScalarField& phi, const GasModel& gas,
                              const NozzleProfile& profile);

// Entry and exit Bernoulli rows; the exit target is shrunk to
// exit_speed_sq * (1 - eps)^2.
void boundary_residual(const ScalarField& phi, const BoundaryData& data, double eps,
                       const NozzleProfile& profile, std::vector<double>& entry_rows,
                       std::vector<double>& exit_rows);

// Full residual vector: Bernoulli rows at i = 0 and i = nx-1, interior rows
// elsewhere. Not gauge-fixed.
std::vector<double> assemble_residual(const ScalarField& phi, const GasModel& gas,
                                      const NozzleProfile& profile, const BoundaryData& data,
                                      double eps);

// Replace the residual row of node (0,0) by phi(0,0) - target, pinning the
// additive constant of the potential.
void gauge_fix(std::vector<double>& residual, const ScalarField& phi, double target = 0.0);
void gauge_fix(SparseMatrix& jacobian, const StripGrid& grid);

// Jacobian of the gauge-fixed residual by forward differences over
// stencil-disjoint column groups (greedy coloring of the dependency graph).
SparseMatrix assemble_jacobian(const ScalarField& phi, const GasModel& gas,
                               const NozzleProfile& profile, const BoundaryData& data,
                               double eps, double gauge_target = 0.0);

// Mach number of the metric speed at every node (clamped sound speed so the
// field stays finite on infeasible transients).
ScalarField mach_field(const ScalarField& phi, const GasModel& gas,
                       const NozzleProfile& profile);
double max_interior_mach(const ScalarField& mach);

// Damped Newton with exit-speed continuation eps0 -> eps_min. Stalls are
// reported through the flags, not thrown; SonicExceeded propagates only when
// the initial guess is already past the speed limit.
SolveReport newton_solve(const ScalarField& initial, const GasModel& gas,
                         const NozzleProfile& profile, const BoundaryData& data,
                         const SolverConfig& config);

}  // namespace nozzleflow

#include "nozzleflow/pde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/SparseLU>

#include "nozzleflow/errors.hpp"

namespace nozzleflow {

BoundaryData BoundaryData::symmetric(const GasModel& gas, const NozzleProfile& profile) {
    BoundaryData data;
    const double b0 = gas.entry_speed(profile.width(0.0));
    const double b1 = gas.sonic_speed();
    data.entry_speed_sq = [b0sq = b0 * b0](double) { return b0sq; };
    data.exit_speed_sq = b1 * b1;
    return data;
}

ScalarField interior_residual(const ScalarField& phi, const GasModel& gas,
                              const NozzleProfile& profile) {
    const StripGrid& g = phi.grid();
    const double gamma = gas.gamma();
    const double c0 = gas.c0();
    ScalarField res(g, 0.0);
    for (int i = 1; i < g.nx - 1; ++i) {
        const double n = profile.width(g.x(i));
        const double np = profile.dwidth(g.x(i));
        const double n2 = n * n;
        for (int j = 0; j < g.ny; ++j) {
            const double p1 = phi.dx(i, j);
            const double p2 = phi.dy(i, j);
            const double p11 = phi.dxx(i, j);
            const double p22 = phi.dyy(i, j);
            const double p12 = phi.dxy(i, j);
            const double speed_sq = p1 * p1 + p2 * p2 / n2;
            const double c2 = c0 - 0.5 * (gamma - 1.0) * speed_sq;
            if (c2 <= 0.0) {
                throw SonicExceeded("metric speed reached the limit speed at node (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
            }
            res.at(i, j) = n2 * (c2 - p1 * p1) * p11 - 2.0 * p1 * p2 * p12 +
                           (c2 - p2 * p2 / n2) * p22 + n * np * (c2 + p2 * p2 / n2) * p1;
        }
    }
    return res;
}

void boundary_residual(const ScalarField& phi, const BoundaryData& data, double eps,
                       const NozzleProfile& profile, std::vector<double>& entry_rows,
                       std::vector<double>& exit_rows) {
    const StripGrid& g = phi.grid();
    entry_rows.assign(g.ny, 0.0);
    exit_rows.assign(g.ny, 0.0);
    const double n0sq = profile.width(0.0) * profile.width(0.0);
    const double exit_target = data.exit_speed_sq * (1.0 - eps) * (1.0 - eps);
    const int m = g.nx - 1;
    for (int j = 0; j < g.ny; ++j) {
        const double e1 = phi.dx(0, j);
        const double e2 = phi.dy(0, j);
        entry_rows[j] = e1 * e1 + e2 * e2 / n0sq - data.entry_speed_sq(g.y(j));
        const double x1 = phi.dx(m, j);
        const double x2 = phi.dy(m, j);
        exit_rows[j] = x1 * x1 + x2 * x2 - exit_target;
    }
}

std::vector<double> assemble_residual(const ScalarField& phi, const GasModel& gas,
                                      const NozzleProfile& profile, const BoundaryData& data,
                                      double eps) {
    const StripGrid& g = phi.grid();
    std::vector<double> r(static_cast<size_t>(g.size()), 0.0);
    const ScalarField interior = interior_residual(phi, gas, profile);
    for (int i = 1; i < g.nx - 1; ++i) {
        for (int j = 0; j < g.ny; ++j) {
            r[g.index(i, j)] = interior.at(i, j);
        }
    }
    std::vector<double> entry_rows, exit_rows;
    boundary_residual(phi, data, eps, profile, entry_rows, exit_rows);
    for (int j = 0; j < g.ny; ++j) {
        r[g.index(0, j)] = entry_rows[j];
        r[g.index(g.nx - 1, j)] = exit_rows[j];
    }
    return r;
}

void gauge_fix(std::vector<double>& residual, const ScalarField& phi, double target) {
    residual[phi.grid().index(0, 0)] = phi.at(0, 0) - target;
}

void gauge_fix(SparseMatrix& jacobian, const StripGrid& grid) {
    const int k0 = grid.index(0, 0);
    for (int k = 0; k < jacobian.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(jacobian, k); it; ++it) {
            if (it.row() == k0) {
                it.valueRef() = (it.col() == k0) ? 1.0 : 0.0;
            }
        }
    }
    jacobian.prune(0.0);
    if (jacobian.coeff(k0, k0) == 0.0) {
        jacobian.coeffRef(k0, k0) = 1.0;
    }
}

namespace {

// Column dependencies of each residual row. Interior rows read their 3x3
// neighborhood; boundary rows read the one-sided x stencil plus the y
// neighbors; the gauge row reads only its own node.
std::vector<std::vector<int>> row_dependencies(const StripGrid& g) {
    std::vector<std::vector<int>> deps(static_cast<size_t>(g.size()));
    const int m = g.nx - 1;
    for (int j = 0; j < g.ny; ++j) {
        {
            auto& d = deps[g.index(0, j)];
            d = {g.index(0, j), g.index(1, j), g.index(2, j), g.index(0, j - 1),
                 g.index(0, j + 1)};
        }
        {
            auto& d = deps[g.index(m, j)];
            d = {g.index(m, j), g.index(m - 1, j), g.index(m - 2, j), g.index(m, j - 1),
                 g.index(m, j + 1)};
        }
        for (int i = 1; i < m; ++i) {
            auto& d = deps[g.index(i, j)];
            d.reserve(9);
            for (int di = -1; di <= 1; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    d.push_back(g.index(i + di, j + dj));
                }
            }
        }
    }
    deps[g.index(0, 0)] = {g.index(0, 0)};  // gauge row
    for (auto& d : deps) {
        std::sort(d.begin(), d.end());
        d.erase(std::unique(d.begin(), d.end()), d.end());
    }
    return deps;
}

struct ColumnGroups {
    std::vector<std::vector<int>> rows_of_col;  // adjoint of the dependency map
    std::vector<std::vector<int>> groups;       // columns per color
};

ColumnGroups color_columns(const std::vector<std::vector<int>>& deps, int n) {
    ColumnGroups out;
    out.rows_of_col.resize(static_cast<size_t>(n));
    for (int row = 0; row < n; ++row) {
        for (int col : deps[row]) {
            out.rows_of_col[col].push_back(row);
        }
    }
    // Two columns conflict when some row reads both. Greedy smallest-free
    // color over that graph; the stencil keeps the color count grid-free.
    std::vector<int> color(static_cast<size_t>(n), -1);
    std::vector<int> taken;
    for (int col = 0; col < n; ++col) {
        taken.clear();
        for (int row : out.rows_of_col[col]) {
            for (int other : deps[row]) {
                if (color[other] >= 0) {
                    taken.push_back(color[other]);
                }
            }
        }
        std::sort(taken.begin(), taken.end());
        taken.erase(std::unique(taken.begin(), taken.end()), taken.end());
        int c = 0;
        for (int t : taken) {
            if (t == c) {
                ++c;
            } else if (t > c) {
                break;
            }
        }
        color[col] = c;
        if (c >= static_cast<int>(out.groups.size())) {
            out.groups.resize(c + 1);
        }
        out.groups[c].push_back(col);
    }
    return out;
}

std::vector<double> gauged_residual(const ScalarField& phi, const GasModel& gas,
                                    const NozzleProfile& profile, const BoundaryData& data,
                                    double eps, double gauge_target) {
    std::vector<double> r = assemble_residual(phi, gas, profile, data, eps);
    gauge_fix(r, phi, gauge_target);
    return r;
}

}  // namespace

SparseMatrix assemble_jacobian(const ScalarField& phi, const GasModel& gas,
                               const NozzleProfile& profile, const BoundaryData& data,
                               double eps, double gauge_target) {
    const StripGrid& g = phi.grid();
    const int n = g.size();
    const auto deps = row_dependencies(g);
    const ColumnGroups cg = color_columns(deps, n);

    const std::vector<double> r0 = gauged_residual(phi, gas, profile, data, eps, gauge_target);

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<size_t>(9 * n));
    ScalarField pert = phi;
    std::vector<double> step(static_cast<size_t>(n), 0.0);
    for (const auto& group : cg.groups) {
        for (int col : group) {
            const double base = pert.values()[col];
            double h = 1e-7 * (1.0 + std::fabs(base));
            const double moved = base + h;
            h = moved - base;  // the exactly representable step
            pert.values()[col] = moved;
            step[col] = h;
        }
        const std::vector<double> rp =
            gauged_residual(pert, gas, profile, data, eps, gauge_target);
        for (int col : group) {
            for (int row : cg.rows_of_col[col]) {
                triplets.emplace_back(row, col, (rp[row] - r0[row]) / step[col]);
            }
            pert.values()[col] = phi.values()[col];
        }
    }

    SparseMatrix jac(n, n);
    jac.setFromTriplets(triplets.begin(), triplets.end());
    return jac;
}

ScalarField mach_field(const ScalarField& phi, const GasModel& gas,
                       const NozzleProfile& profile) {
    const StripGrid& g = phi.grid();
    ScalarField out(g, 0.0);
    for (int i = 0; i < g.nx; ++i) {
        const double n2 = profile.width(g.x(i)) * profile.width(g.x(i));
        for (int j = 0; j < g.ny; ++j) {
            const double p1 = phi.dx(i, j);
            const double p2 = phi.dy(i, j);
            const double speed_sq = p1 * p1 + p2 * p2 / n2;
            const double c2 = gas.c0() - 0.5 * (gas.gamma() - 1.0) * speed_sq;
            // clamp keeps the dump finite on infeasible transients
            out.at(i, j) = std::sqrt(speed_sq / std::max(c2, 1e-300));
        }
    }
    return out;
}

double max_interior_mach(const ScalarField& mach) {
    const StripGrid& g = mach.grid();
    double m = 0.0;
    for (int i = 1; i < g.nx - 1; ++i) {
        for (int j = 0; j < g.ny; ++j) {
            m = std::max(m, mach.at(i, j));
        }
    }
    return m;
}

namespace {

double linf(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::fabs(x));
    }
    return m;
}

bool flow_direction_ok(const ScalarField& phi) {
    const StripGrid& g = phi.grid();
    for (int j = 0; j < g.ny; ++j) {
        if (phi.dx(0, j) < -1e-8 || phi.dx(g.nx - 1, j) < -1e-8) {
            return false;
        }
    }
    return true;
}

}  // namespace

SolveReport newton_solve(const ScalarField& initial, const GasModel& gas,
                         const NozzleProfile& profile, const BoundaryData& data,
                         const SolverConfig& config) {
    if (!(config.eps_min > 0.0 && config.eps_min <= config.eps0 && config.eps0 < 1.0)) {
        throw std::invalid_argument("continuation needs 0 < eps_min <= eps0 < 1");
    }
    if (!(config.eps_factor > 0.0 && config.eps_factor < 1.0)) {
        throw std::invalid_argument("continuation needs 0 < eps_factor < 1");
    }
    if (!all_finite(initial)) {
        throw std::invalid_argument("initial guess has non-finite entries");
    }

    SolveReport report{.converged = false,
                       .final_eps = config.eps0,
                       .residual_history = {},
                       .stall_reason = "",
                       .entry_flow_direction_ok = false,
                       .solution = initial,
                       .mach_field = initial};
    ScalarField phi = initial;
    const double gauge_target = 0.0;

    double eps = config.eps0;
    bool done = false;
    while (!done) {
        if (eps <= config.eps_min) {
            eps = config.eps_min;
            done = true;
        }
        report.final_eps = eps;

        bool stage_ok = false;
        // SonicExceeded from the very first evaluation means the initial
        // guess violated the precondition; let it propagate.
        std::vector<double> r = gauged_residual(phi, gas, profile, data, eps, gauge_target);
        double norm = linf(r);
        report.residual_history.push_back(norm);
        for (int it = 0; it < config.max_newton; ++it) {
            if (norm <= config.newton_tol) {
                stage_ok = true;
                break;
            }
            SparseMatrix jac = assemble_jacobian(phi, gas, profile, data, eps, gauge_target);
            Eigen::SparseLU<SparseMatrix> lu;
            lu.compute(jac);
            if (lu.info() != Eigen::Success) {
                report.stall_reason = "linear solve failed at eps=" + std::to_string(eps);
                break;
            }
            Eigen::Map<const Eigen::VectorXd> rv(r.data(), static_cast<long>(r.size()));
            Eigen::VectorXd dir = lu.solve(-rv);
            if (!dir.allFinite()) {
                report.stall_reason = "non-finite Newton direction at eps=" + std::to_string(eps);
                break;
            }

            bool accepted = false;
            for (double t = 1.0; t >= config.damping_min; t *= 0.5) {
                ScalarField trial = phi;
                for (int k = 0; k < trial.grid().size(); ++k) {
                    trial.values()[k] += t * dir[k];
                }
                std::vector<double> rt;
                try {
                    rt = gauged_residual(trial, gas, profile, data, eps, gauge_target);
                } catch (const SonicExceeded&) {
                    continue;  // step left the admissible speed range
                }
                const double nt = linf(rt);
                if (nt < norm) {
                    phi = std::move(trial);
                    r = std::move(rt);
                    norm = nt;
                    report.residual_history.push_back(norm);
                    accepted = true;
                    break;
                }
            }
            if (!accepted) {
                report.stall_reason = "line search stalled at eps=" + std::to_string(eps);
                break;
            }
            if (norm <= config.newton_tol) {
                stage_ok = true;
                break;
            }
        }
        if (!stage_ok && report.stall_reason.empty()) {
            report.stall_reason = "newton budget exhausted at eps=" + std::to_string(eps);
        }
        if (!stage_ok) {
            break;
        }
        if (done) {
            report.converged = true;
        } else {
            eps = std::max(eps * config.eps_factor, config.eps_min);
        }
    }

    report.solution = phi;
    report.mach_field = mach_field(phi, gas, profile);
    report.entry_flow_direction_ok = flow_direction_ok(phi);
    return report;
}

}  // namespace nozzleflow

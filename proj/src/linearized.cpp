#include "nozzleflow/linearized.hpp"

#include <cmath>
#include <stdexcept>

namespace nozzleflow {

LinearizedCoefficients assemble_linearized(const ScalarField& phi, const SymmetricFlow& flow,
                                           const GasModel& gas, const NozzleProfile& profile) {
    const StripGrid& g = phi.grid();
    if (flow.stations() != g.nx) {
        throw std::invalid_argument("base flow stations must match the grid x-nodes");
    }
    for (int i = 0; i < g.nx; ++i) {
        if (std::fabs(flow.x[i] - g.x(i)) > 1e-12) {
            throw std::invalid_argument("base flow stations must match the grid x-nodes");
        }
    }

    const double gamma = gas.gamma();
    LinearizedCoefficients out{ScalarField(g), ScalarField(g), ScalarField(g),
                               ScalarField(g), ScalarField(g), ScalarField(g)};
    for (int i = 0; i < g.nx; ++i) {
        const double u = flow.u[i];
        const double cb2 = gas.c0() - 0.5 * (gamma - 1.0) * u * u;
        const double n = profile.width(g.x(i));
        const double np = profile.dwidth(g.x(i));
        const double n2 = n * n;
        for (int j = 0; j < g.ny; ++j) {
            const double p1 = phi.dx(i, j);
            const double p2 = phi.dy(i, j);
            const double p11 = phi.dxx(i, j);
            const double p22 = phi.dyy(i, j);
            const double p12 = phi.dxy(i, j);

            out.cb2.at(i, j) = cb2;
            out.a11.at(i, j) = n2 * (cb2 - u * u);
            out.a12.at(i, j) = 0.0;  // carries a factor d2 of the base flow
            out.a22.at(i, j) = cb2;
            out.b1.at(i, j) =
                -(0.5 * (gamma + 1.0) * n2 * p11 + 0.5 * (gamma - 1.0) * p22) * (p1 + u) +
                n * np * (cb2 + 0.5 * (gamma - 1.0) * p1 * (p1 + u));
            out.b2.at(i, j) = 0.5 * (gamma - 1.0) * p2 * p11 + 2.0 * p1 * p12 +
                              0.5 * (gamma + 1.0) / n2 * p2 * p22 +
                              0.5 * (gamma - 3.0) * np / n * p1 * p2;
        }
    }
    return out;
}

SignReport check_exit_drift_sign(const LinearizedCoefficients& coeffs) {
    const StripGrid& g = coeffs.b1.grid();
    const int m = g.nx - 1;
    SignReport report;
    report.quantity = "exit_drift";
    report.extremum = coeffs.b1.at(m, 0);
    report.node_i = m;
    report.node_j = 0;
    for (int j = 1; j < g.ny; ++j) {
        if (coeffs.b1.at(m, j) > report.extremum) {
            report.extremum = coeffs.b1.at(m, j);
            report.node_j = j;
        }
    }
    report.pass = report.extremum < 0.0;
    return report;
}

KeyInequalityReport check_key_inequality(const ScalarField& phi, const GasModel& gas) {
    const StripGrid& g = phi.grid();
    const double gamma = gas.gamma();
    const int m = g.nx - 1;

    KeyInequalityReport out;
    out.key_quantity.quantity = "exit_key_quantity";
    out.exit_acceleration.quantity = "exit_acceleration";
    out.identity_residual.quantity = "exit_identity_residual_abs";

    for (int j = 0; j < g.ny; ++j) {
        const double p1 = phi.dx(m, j);
        const double p2 = phi.dy(m, j);
        const double p11 = phi.dxx(m, j);
        const double p22 = phi.dyy(m, j);
        const double key = 0.5 * (gamma + 1.0) * p11 + 0.5 * (gamma - 1.0) * p22;

        // the exit sits at unit width, so the metric speed is the plain one
        const double speed_sq = p1 * p1 + p2 * p2;
        const double c2 = gas.c0() - 0.5 * (gamma - 1.0) * speed_sq;
        const double identity = (c2 + p2 * p2) * (p11 + p22) - c2 * p11;

        if (j == 0 || key < out.key_quantity.extremum) {
            out.key_quantity.extremum = key;
            out.key_quantity.node_i = m;
            out.key_quantity.node_j = j;
        }
        if (j == 0 || p11 < out.exit_acceleration.extremum) {
            out.exit_acceleration.extremum = p11;
            out.exit_acceleration.node_i = m;
            out.exit_acceleration.node_j = j;
        }
        if (j == 0 || std::fabs(identity) > out.identity_residual.extremum) {
            out.identity_residual.extremum = std::fabs(identity);
            out.identity_residual.node_i = m;
            out.identity_residual.node_j = j;
        }
    }
    out.key_quantity.pass = out.key_quantity.extremum > 0.0;
    out.exit_acceleration.pass = out.exit_acceleration.extremum > 0.0;
    out.identity_residual.pass = true;  // reported, not asserted
    return out;
}

ObliqueVectors oblique_vectors(const ScalarField& phi, const SymmetricFlow& flow,
                               const NozzleProfile& profile) {
    const StripGrid& g = phi.grid();
    if (flow.stations() < 2) {
        throw std::invalid_argument("base flow needs at least 2 stations");
    }
    ObliqueVectors out;
    out.entry.resize(g.ny);
    out.exit.resize(g.ny);
    const double u_entry = flow.u.front();
    const double u_exit = flow.u.back();
    const double n0sq = profile.width(0.0) * profile.width(0.0);
    const int m = g.nx - 1;
    for (int j = 0; j < g.ny; ++j) {
        out.entry[j] = {phi.dx(0, j) + u_entry, phi.dy(0, j) / n0sq};
        out.exit[j] = {phi.dx(m, j) + u_exit, phi.dy(m, j)};
    }
    return out;
}

}  // namespace nozzleflow

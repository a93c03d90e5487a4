#include "nozzleflow/symmetric.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include "nozzleflow/errors.hpp"

namespace nozzleflow {

double critical_flux(const GasModel& gas, const NozzleProfile& profile) {
    const CriticalData crit = gas.critical();
    return profile.width(1.0) * crit.flux_star;
}

double speed_at(const GasModel& gas, const NozzleProfile& profile, double x) {
    if (x < 0.0 || x > 1.0) {
        throw std::invalid_argument("station coordinate outside [0,1]: " + std::to_string(x));
    }
    const CriticalData crit = gas.critical();
    if (x == 1.0) {
        return crit.b1;  // exit closure, no iteration at the degenerate root
    }

    const double m = critical_flux(gas, profile);
    const double n = profile.width(x);
    if (n * crit.flux_star < m) {
        throw NoSubsonicRoot("width " + std::to_string(n) + " at x = " + std::to_string(x) +
                             " cannot carry the critical mass flux");
    }

    // n g(u) - m rises monotonically from -m at u = 0 to a nonnegative value
    // at the sonic speed; bisect the flux residual to 1e-12 relative.
    auto residual = [&](double u) { return (n * gas.flux_density(u) - m) / m; };
    double lo = 0.0;
    double hi = crit.b1;
    double u = 0.5 * (lo + hi);
    double r = residual(u);
    const double tol = 1e-12;
    int budget = 200;
    while (std::fabs(r) > tol && hi - lo > 1e-15 && budget-- > 0) {
        if (r < 0.0) {
            lo = u;
        } else {
            hi = u;
        }
        u = 0.5 * (lo + hi);
        r = residual(u);
    }
    if (std::fabs(r) > tol) {
        throw ToleranceNotReached("flux residual " + std::to_string(r) + " at x = " +
                                  std::to_string(x) + " above tolerance");
    }
    return u;
}

SymmetricFlow build_symmetric_flow(const GasModel& gas, const NozzleProfile& profile,
                                   int stations) {
    if (stations < 2) {
        throw std::invalid_argument("need at least 2 stations");
    }
    SymmetricFlow flow;
    flow.x.resize(stations);
    flow.u.resize(stations);
    flow.rho.resize(stations);
    flow.sound.resize(stations);
    flow.mach.resize(stations);
    flow.phi.resize(stations);
    flow.mass_flux = critical_flux(gas, profile);

    const double h = 1.0 / (stations - 1);
    for (int i = 0; i < stations; ++i) {
        const double x = (i == stations - 1) ? 1.0 : i * h;
        flow.x[i] = x;
        flow.u[i] = speed_at(gas, profile, x);
        flow.rho[i] = gas.density(flow.u[i]);
        flow.sound[i] = std::sqrt(gas.sound_speed_squared(flow.u[i]));
        flow.mach[i] = flow.u[i] / flow.sound[i];
    }

    // Potential by cumulative quadrature of u, phi(0) = 0. Composite Simpson
    // needs an even interval count (odd station count); otherwise trapezoid.
    flow.phi[0] = 0.0;
    if (stations % 2 == 1) {
        for (int k = 1; k < stations; ++k) {
            if (k % 2 == 0) {
                flow.phi[k] = flow.phi[k - 2] +
                              h / 3.0 * (flow.u[k - 2] + 4.0 * flow.u[k - 1] + flow.u[k]);
            } else {
                // half-panel rule of the same order, from the quadratic
                // through u[k-1], u[k], u[k+1]
                flow.phi[k] = flow.phi[k - 1] +
                              h / 12.0 * (5.0 * flow.u[k - 1] + 8.0 * flow.u[k] - flow.u[k + 1]);
            }
        }
    } else {
        for (int k = 1; k < stations; ++k) {
            flow.phi[k] = flow.phi[k - 1] + 0.5 * h * (flow.u[k - 1] + flow.u[k]);
        }
    }
    return flow;
}

double exit_acceleration(const SymmetricFlow& flow) {
    const int m = flow.stations() - 1;
    if (m < 1) {
        throw std::invalid_argument("exit slope needs at least 2 stations");
    }
    const double h = flow.x[m] - flow.x[m - 1];
    if (m == 1) {
        return (flow.u[1] - flow.u[0]) / h;
    }
    return (3.0 * flow.u[m] - 4.0 * flow.u[m - 1] + flow.u[m - 2]) / (2.0 * h);
}

void write_csv(const SymmetricFlow& flow, std::ostream& os) {
    os << "x,u,rho,c,mach,phi\n";
    char line[256];
    for (int i = 0; i < flow.stations(); ++i) {
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", flow.x[i],
                      flow.u[i], flow.rho[i], flow.sound[i], flow.mach[i], flow.phi[i]);
        os << line;
    }
}

}  // namespace nozzleflow

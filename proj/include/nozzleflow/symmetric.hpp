#pragma once

#include <iosfwd>
#include <vector>

#include "nozzleflow/gas.hpp"
#include "nozzleflow/nozzle.hpp"

namespace nozzleflow {

// One-dimensional subsonic-sonic flow through the nozzle, sampled on a
// uniform station grid: speed from mass-flux conservation, thermodynamic
// profiles, and the potential phi (integral of u, gauged to phi(0) = 0).
struct SymmetricFlow {
    std::vector<double> x;
    std::vector<double> u;
    std::vector<double> rho;
    std::vector<double> sound;
    std::vector<double> mach;
    std::vector<double> phi;
    double mass_flux = 0.0;  // n rho u, the same at every station

    int stations() const { return static_cast<int>(x.size()); }
};

// Conserved mass flux fixed by the sonic exit: n(1) rho(b1) b1.
double critical_flux(const GasModel& gas, const NozzleProfile& profile);

// The subsonic-branch speed u with n(x) flux_density(u) = critical flux.
// Returns the sonic speed exactly at x = 1 (no iteration there).
double speed_at(const GasModel& gas, const NozzleProfile& profile, double x);

SymmetricFlow build_symmetric_flow(const GasModel& gas, const NozzleProfile& profile,
                                   int stations);

// Slope of u at the exit from the last stations (one-sided difference).
double exit_acceleration(const SymmetricFlow& flow);

// CSV with header x,u,rho,c,mach,phi, one row per station, 17 significant digits.
void write_csv(const SymmetricFlow& flow, std::ostream& os);

}  // namespace nozzleflow

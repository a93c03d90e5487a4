#pragma once

namespace nozzleflow {

// Critical (sonic) state: the speed where flow speed equals sound speed,
// with the density and mass-flux density attained there. flux_star is the
// maximum of density(q) * q over admissible speeds (choking).
struct CriticalData {
    double b1;
    double rho_star;
    double flux_star;
};

// Isentropic gas closure p = rho^gamma with the Bernoulli relation
//   c^2 + (gamma - 1)/2 q^2 = c0
// between sound speed c and flow speed q. All members are pure.
class GasModel {
public:
    GasModel(double gamma, double c0);

    double gamma() const { return gamma_; }
    double c0() const { return c0_; }

    // Largest admissible speed; c^2 -> 0 as q approaches it.
    double limit_speed() const;

    // c^2 = c0 - (gamma - 1)/2 q^2. Throws SpeedExceedsLimit when <= 0.
    double sound_speed_squared(double q) const;

    // rho = (c^2/gamma)^(1/(gamma-1)), strictly decreasing in q.
    double density(double q) const;

    // g(q) = rho(q) q; increasing below the sonic speed, decreasing above it.
    double flux_density(double q) const;

    // b1 with b1^2 = 2 c0 / (gamma + 1).
    double sonic_speed() const;
    CriticalData critical() const;

    // The unique subsonic root b0 of
    //   b0^(gamma-1) (c0 - (gamma-1)/2 b0^2) n0^(gamma-1) = b1^(gamma+1)
    // for an entry width n0 >= 1; returns b1 exactly when n0 == 1.
    double entry_speed(double n0) const;

    // q / c(q): below 1 iff subsonic.
    double mach(double q) const;

private:
    double gamma_;
    double c0_;
};

}  // namespace nozzleflow

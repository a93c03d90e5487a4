#include "nozzleflow/gas.hpp"

#include <cmath>
#include <string>

#include "nozzleflow/errors.hpp"

namespace nozzleflow {

GasModel::GasModel(double gamma, double c0) : gamma_(gamma), c0_(c0) {
    if (!(gamma > 1.0)) {
        throw HypothesisViolation("gas model requires gamma > 1, got " + std::to_string(gamma));
    }
    if (!(c0 > 0.0)) {
        throw HypothesisViolation("gas model requires c0 > 0, got " + std::to_string(c0));
    }
}

double GasModel::limit_speed() const {
    return std::sqrt(2.0 * c0_ / (gamma_ - 1.0));
}

double GasModel::sound_speed_squared(double q) const {
    const double c2 = c0_ - 0.5 * (gamma_ - 1.0) * q * q;
    if (c2 <= 0.0) {
        throw SpeedExceedsLimit("speed " + std::to_string(q) + " at or past the limit speed " +
                                std::to_string(limit_speed()));
    }
    return c2;
}

double GasModel::density(double q) const {
    return std::pow(sound_speed_squared(q) / gamma_, 1.0 / (gamma_ - 1.0));
}

double GasModel::flux_density(double q) const {
    return density(q) * q;
}

double GasModel::sonic_speed() const {
    return std::sqrt(2.0 * c0_ / (gamma_ + 1.0));
}

CriticalData GasModel::critical() const {
    CriticalData crit;
    crit.b1 = sonic_speed();
    crit.rho_star = density(crit.b1);
    crit.flux_star = crit.rho_star * crit.b1;
    return crit;
}

double GasModel::entry_speed(double n0) const {
    const double b1 = sonic_speed();
    if (n0 < 1.0) {
        throw NoSubsonicRoot("entry width " + std::to_string(n0) +
                             " below the exit width: no subsonic flux match");
    }
    if (n0 == 1.0) {
        // Boundary root; the flux derivative vanishes there and iteration
        // conditioning degrades, so close it exactly.
        return b1;
    }

    const double scale = std::pow(b1, gamma_ + 1.0);
    const double width_pow = std::pow(n0, gamma_ - 1.0);
    auto residual = [&](double q) {
        const double c2 = c0_ - 0.5 * (gamma_ - 1.0) * q * q;
        return (std::pow(q, gamma_ - 1.0) * c2 * width_pow - scale) / scale;
    };

    // The left side is strictly increasing on (0, b1): residual goes from -1
    // at q = 0+ to n0^(gamma-1) - 1 >= 0 at b1. Bisect, then polish.
    double lo = 0.0;
    double hi = b1;
    double q = 0.5 * (lo + hi);
    double r = residual(q);
    const double tol = 1e-12;
    int budget = 200;
    while (std::fabs(r) > tol && hi - lo > 1e-15 && budget-- > 0) {
        if (r < 0.0) {
            lo = q;
        } else {
            hi = q;
        }
        q = 0.5 * (lo + hi);
        r = residual(q);
    }

    for (int it = 0; it < 20 && std::fabs(r) > tol; ++it) {
        // d/dq of q^(g-1) c2(q) = (g-1) q^(g-2) (c0 - (g+1)/2 q^2)
        const double dr = (gamma_ - 1.0) * std::pow(q, gamma_ - 2.0) *
                          (c0_ - 0.5 * (gamma_ + 1.0) * q * q) * width_pow / scale;
        if (dr == 0.0) break;
        double next = q - r / dr;
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        q = next;
        r = residual(q);
        if (r < 0.0) {
            lo = q;
        } else {
            hi = q;
        }
    }

    if (std::fabs(r) > tol) {
        throw ToleranceNotReached("entry speed residual " + std::to_string(r) +
                                  " above tolerance after iteration budget");
    }
    return q;
}

double GasModel::mach(double q) const {
    return q / std::sqrt(sound_speed_squared(q));
}

}  // namespace nozzleflow

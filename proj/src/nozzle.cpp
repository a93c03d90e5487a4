#include "nozzleflow/nozzle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "nozzleflow/errors.hpp"

namespace nozzleflow {

NozzleProfile NozzleProfile::make(double a, double p) {
    if (!(a > 0.0)) {
        throw HypothesisViolation("width amplitude must be positive, got " + std::to_string(a));
    }
    if (p != 2.0) {
        // For p > 2 the curvature vanishes at the exit, breaking the strict
        // convexity clause there.
        throw HypothesisViolation("strict profile requires exponent 2, got " + std::to_string(p));
    }
    return NozzleProfile(a, p);
}

NozzleProfile NozzleProfile::make_lenient(double a, double p) {
    if (!std::isfinite(a) || !std::isfinite(p) || p < 1.0) {
        throw HypothesisViolation("lenient profile still needs finite a and p >= 1");
    }
    return NozzleProfile(a, p);
}

double NozzleProfile::width(double x) const {
    return 1.0 + a_ * std::pow(1.0 - x, p_);
}

double NozzleProfile::dwidth(double x) const {
    return -a_ * p_ * std::pow(1.0 - x, p_ - 1.0);
}

double NozzleProfile::d2width(double x) const {
    // pow(0, 0) == 1, so the quadratic family keeps n'' = 2a at x = 1.
    return a_ * p_ * (p_ - 1.0) * std::pow(1.0 - x, p_ - 2.0);
}

ProfileValidation validate_profile(const NozzleProfile& profile, int samples) {
    if (samples < 3) {
        throw std::invalid_argument("profile validation needs at least 3 samples");
    }
    ProfileValidation report;
    report.min_curvature = std::numeric_limits<double>::infinity();
    report.max_interior_slope = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const double x = static_cast<double>(i) / (samples - 1);
        report.min_curvature = std::min(report.min_curvature, profile.d2width(x));
        if (i > 0 && i < samples - 1) {
            report.max_interior_slope = std::max(report.max_interior_slope, profile.dwidth(x));
        }
    }
    report.exit_slope = std::fabs(profile.dwidth(1.0));
    report.exit_width_error = std::fabs(profile.width(1.0) - 1.0);
    report.curvature_ok = report.min_curvature > 0.0;
    report.slope_ok = report.max_interior_slope < 0.0;
    report.exit_ok = report.exit_slope < 1e-14 && report.exit_width_error < 1e-14;
    return report;
}

}  // namespace nozzleflow

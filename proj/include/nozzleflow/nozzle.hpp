#pragma once

namespace nozzleflow {

// Cross-section width n(x) = 1 + a (1 - x)^p on [0, 1], normalized so the
// exit width is exactly 1. The strict factory enforces the convergent
// hypotheses (n'' > 0 everywhere, n' < 0 in the interior, n'(1) = 0), which
// pins p = 2; the lenient factory admits broken profiles so diagnostics can
// inspect them.
class NozzleProfile {
public:
    static NozzleProfile make(double a, double p = 2.0);
    static NozzleProfile make_lenient(double a, double p);

    double width(double x) const;     // n(x)
    double dwidth(double x) const;    // n'(x)
    double d2width(double x) const;   // n''(x)

    double amplitude() const { return a_; }
    double exponent() const { return p_; }

private:
    NozzleProfile(double a, double p) : a_(a), p_(p) {}
    double a_;
    double p_;
};

// Sampled check of the convergent-nozzle clauses, one flag per clause.
struct ProfileValidation {
    double min_curvature;       // min n'' over samples; needs > 0
    double max_interior_slope;  // max n' over interior samples; needs < 0
    double exit_slope;          // |n'(1)|; needs < 1e-14
    double exit_width_error;    // |n(1) - 1|; needs < 1e-14
    bool curvature_ok;
    bool slope_ok;
    bool exit_ok;
    bool pass() const { return curvature_ok && slope_ok && exit_ok; }
};

ProfileValidation validate_profile(const NozzleProfile& profile, int samples);

}  // namespace nozzleflow

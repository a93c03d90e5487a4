#include "nozzleflow/hopf.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "nozzleflow/errors.hpp"

namespace nozzleflow {

BoundaryPatch BoundaryPatch::flat(const Vector& base_point) {
    const int n = static_cast<int>(base_point.size());
    if (n < 2) {
        throw std::invalid_argument("boundary patch needs dimension >= 2");
    }
    BoundaryPatch patch;
    patch.base = base_point;
    const double level = base_point[n - 1];
    patch.f = [level](const Vector&) { return level; };
    patch.grad_f = [n](const Vector&) { return Vector::Zero(n - 1); };
    patch.hess_f = [n](const Vector&) { return Matrix::Zero(n - 1, n - 1); };
    return patch;
}

Flattened flatten_at(const DegenOperator& op, const BoundaryPatch& patch, const Vector& y) {
    const int n = op.dim;
    if (patch.base.size() != n || y.size() != n) {
        throw std::invalid_argument("dimension mismatch between operator, patch and point");
    }
    const Vector t = patch.base.head(n - 1) + y.head(n - 1);
    Vector x(n);
    x.head(n - 1) = t;
    x[n - 1] = y[n - 1] + patch.f(t);

    const Vector grad = patch.grad_f(t);
    const Matrix hess = patch.hess_f(t);
    Matrix jac = Matrix::Identity(n, n);
    jac.row(n - 1).head(n - 1) = -grad.transpose();

    const Matrix a = op.a(x);
    Flattened out;
    out.alpha = jac * a * jac.transpose();
    out.beta = jac * op.b(x);
    out.beta[n - 1] -= (a.topLeftCorner(n - 1, n - 1).cwiseProduct(hess)).sum();
    out.c = op.c(x);
    return out;
}

Flattened flatten(const DegenOperator& op, const BoundaryPatch& patch) {
    return flatten_at(op, patch, Vector::Zero(op.dim));
}

double hopf_condition(const DegenOperator& op, const BoundaryPatch& patch, ZeroOrderMode mode) {
    const int n = op.dim;
    const double c_at_base = op.c(patch.base);
    if (mode == ZeroOrderMode::RequireZero && std::fabs(c_at_base) > 1e-12) {
        throw NonzeroC("zero-order coefficient " + std::to_string(c_at_base) +
                       " at the base point; this mode needs c = 0");
    }
    if (mode == ZeroOrderMode::Nonpositive && c_at_base > 1e-12) {
        throw NonzeroC("zero-order coefficient " + std::to_string(c_at_base) +
                       " positive at the base point");
    }

    const Vector t = patch.base.head(n - 1);
    const Vector grad = patch.grad_f(t);
    const Matrix hess = patch.hess_f(t);
    const Matrix a = op.a(patch.base);
    const Vector b = op.b(patch.base);
    const double value = -b.head(n - 1).dot(grad) + b[n - 1] -
                         (a.topLeftCorner(n - 1, n - 1).cwiseProduct(hess)).sum();

    const Flattened fl = flatten(op, patch);
    if (std::fabs(value - fl.beta[n - 1]) > 1e-12 * (1.0 + std::fabs(value))) {
        throw Error("condition value disagrees with the flattened drift component");
    }
    return value;
}

double choose_mu(const Matrix& alpha, const Vector& beta) {
    const int n = static_cast<int>(beta.size());
    const double beta_n = beta[n - 1];
    if (!(beta_n > 0.0)) {
        throw ConditionFailed("flattened drift " + std::to_string(beta_n) +
                              " not positive; no barrier slope exists");
    }
    return 2.0 * (2.0 * alpha.trace() + 1.0) / beta_n;
}

BarrierCheck verify_barrier(const DegenOperator& op, const BoundaryPatch& patch, double mu,
                            const Vector& half_widths, int density) {
    const int n = op.dim;
    if (half_widths.size() != n) {
        throw std::invalid_argument("need one half-width per axis");
    }
    if (density < 2) {
        throw std::invalid_argument("barrier sweep needs density >= 2");
    }

    BarrierCheck check;
    check.worst = std::numeric_limits<double>::infinity();
    std::vector<int> idx(static_cast<size_t>(n), 0);
    Vector y(n);
    while (true) {
        for (int axis = 0; axis < n; ++axis) {
            const double frac = static_cast<double>(idx[axis]) / (density - 1);
            // tangential axes span (-d, d); the normal axis spans (0, d)
            y[axis] = (axis == n - 1) ? frac * half_widths[axis]
                                      : (2.0 * frac - 1.0) * half_widths[axis];
        }
        const Flattened fl = flatten_at(op, patch, y);
        const double h = -y.squaredNorm() + mu * y[n - 1];
        const double lh = -2.0 * fl.alpha.trace() - 2.0 * fl.beta.dot(y) +
                          mu * fl.beta[n - 1] + fl.c * h;
        check.worst = std::min(check.worst, lh);

        int axis = 0;
        while (axis < n && ++idx[axis] == density) {
            idx[axis] = 0;
            ++axis;
        }
        if (axis == n) break;
    }
    check.ok = check.worst > 0.0;
    return check;
}

BarrierRectangle find_barrier_rectangle(const DegenOperator& op, const BoundaryPatch& patch,
                                        double mu, Vector half_widths, int density,
                                        int max_retries) {
    for (int retry = 0; retry <= max_retries; ++retry) {
        const BarrierCheck check = verify_barrier(op, patch, mu, half_widths, density);
        if (check.ok) {
            return BarrierRectangle{half_widths, check.worst, retry};
        }
        half_widths *= 0.5;
    }
    throw RectangleVanished("no barrier rectangle after " + std::to_string(max_retries) +
                            " shrink retries");
}

HopfReport hopf_report(const DegenOperator& op, const BoundaryPatch& patch,
                       const Vector& initial_half_widths, int density) {
    HopfReport report;
    report.condition_value = hopf_condition(op, patch);
    const Flattened fl = flatten(op, patch);
    report.alpha_trace = fl.alpha.trace();
    report.beta_n = fl.beta[op.dim - 1];
    if (report.condition_value <= 0.0) {
        return report;  // lemma inapplicable, no barrier fields
    }
    report.mu = choose_mu(fl.alpha, fl.beta);
    const BarrierRectangle rect =
        find_barrier_rectangle(op, patch, *report.mu, initial_half_widths, density);
    report.barrier_ok = true;
    report.d1_dims = rect.half_widths;
    return report;
}

double boundary_derivative_check(const std::function<double(const Vector&)>& u,
                                 const BoundaryPatch& patch, ExtremumKind kind, double step,
                                 double tangential_step) {
    const int n = static_cast<int>(patch.base.size());
    if (!(step > 0.0)) {
        throw std::invalid_argument("normal step must be positive");
    }
    const double tstep = tangential_step > 0.0 ? tangential_step : step;
    const double u_base = u(patch.base);

    // Tangential strictness guard: walking along the boundary graph must not
    // find a better value than the claimed extremum.
    const Vector t0 = patch.base.head(n - 1);
    for (int axis = 0; axis < n - 1; ++axis) {
        for (int k : {-2, -1, 1, 2}) {
            Vector t = t0;
            t[axis] += k * tstep;
            Vector x(n);
            x.head(n - 1) = t;
            x[n - 1] = patch.f(t);
            const double v = u(x);
            if ((kind == ExtremumKind::Minimum && v < u_base) ||
                (kind == ExtremumKind::Maximum && v > u_base)) {
                throw NotAnExtremum("boundary sampling found a better value at offset " +
                                    std::to_string(k * tstep) + " on axis " +
                                    std::to_string(axis));
            }
        }
    }

    Vector normal(n);
    normal.head(n - 1) = -patch.grad_f(t0);
    normal[n - 1] = 1.0;
    const double u1 = u(patch.base + step * normal);
    const double u2 = u(patch.base + 2.0 * step * normal);
    return (-3.0 * u_base + 4.0 * u1 - u2) / (2.0 * step);
}

}  // namespace nozzleflow

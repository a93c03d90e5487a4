#pragma once

#include <functional>
#include <optional>

#include <Eigen/Dense>

namespace nozzleflow {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Second order operator sum a^ij d_ij + sum b^i d_i + c with a positive
// semidefinite principal part. Coefficients are evaluators over position.
struct DegenOperator {
    int dim = 0;
    std::function<Matrix(const Vector&)> a;
    std::function<Vector(const Vector&)> b;
    std::function<double(const Vector&)> c;
};

// Boundary written as a graph x_n = f(x_1, ..., x_{n-1}) near the base
// point, interior on the side x_n > f. The evaluators take the first n-1
// coordinates.
struct BoundaryPatch {
    Vector base;
    std::function<double(const Vector&)> f;
    std::function<Vector(const Vector&)> grad_f;
    std::function<Matrix(const Vector&)> hess_f;

    static BoundaryPatch flat(const Vector& base_point);
};

struct Flattened {
    Matrix alpha;
    Vector beta;
    double c = 0.0;
};

// Coefficients of the operator in boundary-flattening coordinates
//   y_k = x_k - P_k (k < n),  y_n = x_n - f(x_1, ..., x_{n-1}),
// evaluated at flattened position y (y = 0 is the base point).
Flattened flatten_at(const DegenOperator& op, const BoundaryPatch& patch, const Vector& y);
Flattened flatten(const DegenOperator& op, const BoundaryPatch& patch);

enum class ZeroOrderMode {
    RequireZero,  // c must vanish at the base point
    Nonpositive,  // c <= 0 allowed; caller asserts the sign of u there
};

// The boundary drift condition
//   -sum_i b^i f_i + b^n - sum_ij a^ij f_ij   at the base point.
// Agreement with the flattened drift component is checked internally.
double hopf_condition(const DegenOperator& op, const BoundaryPatch& patch,
                      ZeroOrderMode mode = ZeroOrderMode::RequireZero);

// Barrier slope: the smallest mu with L(-|y|^2 + mu y_n) >= 2 at the base
// point, doubled for margin. Requires a positive flattened drift.
double choose_mu(const Matrix& alpha, const Vector& beta);

struct BarrierCheck {
    bool ok = false;
    double worst = 0.0;  // min of L h over the sample lattice
};

// One sweep of L h, h = -|y|^2 + mu y_n, over the rectangle
// prod_i (-d_i, d_i) x (0, d_n) with `density` samples per axis.
BarrierCheck verify_barrier(const DegenOperator& op, const BoundaryPatch& patch, double mu,
                            const Vector& half_widths, int density = 9);

struct BarrierRectangle {
    Vector half_widths;
    double worst = 0.0;
    int retries = 0;
};

// Halve the rectangle until the barrier sweep passes; throws
// RectangleVanished after max_retries shrinks.
BarrierRectangle find_barrier_rectangle(const DegenOperator& op, const BoundaryPatch& patch,
                                        double mu, Vector half_widths, int density = 9,
                                        int max_retries = 20);

struct HopfReport {
    double condition_value = 0.0;
    double alpha_trace = 0.0;
    double beta_n = 0.0;
    std::optional<double> mu;
    std::optional<bool> barrier_ok;
    std::optional<Vector> d1_dims;
};

// Condition value plus, when it is positive, the barrier construction.
HopfReport hopf_report(const DegenOperator& op, const BoundaryPatch& patch,
                       const Vector& initial_half_widths, int density = 9);

enum class ExtremumKind { Minimum, Maximum };

// One-sided difference quotient of u along the interior normal
// (-grad f, 1) at the base point, guarded by tangential sampling that
// confirms the claimed extremum. tangential_step <= 0 reuses step.
double boundary_derivative_check(const std::function<double(const Vector&)>& u,
                                 const BoundaryPatch& patch, ExtremumKind kind, double step,
                                 double tangential_step = 0.0);

}  // namespace nozzleflow

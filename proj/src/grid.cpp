#include "nozzleflow/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "nozzleflow/errors.hpp"

namespace nozzleflow {

StripGrid::StripGrid(int nx_, int ny_) : nx(nx_), ny(ny_) {
    if (nx < 3) {
        throw std::invalid_argument("strip grid needs nx >= 3");
    }
    if (ny < 4) {
        throw std::invalid_argument("strip grid needs ny >= 4");
    }
    hx = 1.0 / (nx - 1);
    hy = 2.0 * std::numbers::pi / ny;
}

int StripGrid::index(int i, int j) const {
    if (i < 0 || i >= nx) {
        throw IndexOutOfRange("x index " + std::to_string(i) + " outside [0," +
                              std::to_string(nx) + ")");
    }
    return i * ny + wrap(j);
}

ScalarField::ScalarField(const StripGrid& grid, double value)
    : grid_(grid), v_(static_cast<size_t>(grid.size()), value) {}

double ScalarField::dx(int i, int j) const {
    const double h2 = 2.0 * grid_.hx;
    if (i == 0) {
        return (-3.0 * at(0, j) + 4.0 * at(1, j) - at(2, j)) / h2;
    }
    if (i == grid_.nx - 1) {
        return (3.0 * at(i, j) - 4.0 * at(i - 1, j) + at(i - 2, j)) / h2;
    }
    return (at(i + 1, j) - at(i - 1, j)) / h2;
}

double ScalarField::dxx(int i, int j) const {
    const double h2 = grid_.hx * grid_.hx;
    const int m = grid_.nx - 1;
    if (i == 0) {
        if (grid_.nx == 3) {
            return (at(0, j) - 2.0 * at(1, j) + at(2, j)) / h2;
        }
        return (2.0 * at(0, j) - 5.0 * at(1, j) + 4.0 * at(2, j) - at(3, j)) / h2;
    }
    if (i == m) {
        if (grid_.nx == 3) {
            return (at(m, j) - 2.0 * at(m - 1, j) + at(m - 2, j)) / h2;
        }
        return (2.0 * at(m, j) - 5.0 * at(m - 1, j) + 4.0 * at(m - 2, j) - at(m - 3, j)) / h2;
    }
    return (at(i + 1, j) - 2.0 * at(i, j) + at(i - 1, j)) / h2;
}

double ScalarField::dy(int i, int j) const {
    return (at(i, j + 1) - at(i, j - 1)) / (2.0 * grid_.hy);
}

double ScalarField::dyy(int i, int j) const {
    return (at(i, j + 1) - 2.0 * at(i, j) + at(i, j - 1)) / (grid_.hy * grid_.hy);
}

double ScalarField::dxy(int i, int j) const {
    const int m = grid_.nx - 1;
    if (i == 0) {
        return (-3.0 * dy(0, j) + 4.0 * dy(1, j) - dy(2, j)) / (2.0 * grid_.hx);
    }
    if (i == m) {
        return (3.0 * dy(m, j) - 4.0 * dy(m - 1, j) + dy(m - 2, j)) / (2.0 * grid_.hx);
    }
    return (at(i + 1, j + 1) - at(i + 1, j - 1) - at(i - 1, j + 1) + at(i - 1, j - 1)) /
           (4.0 * grid_.hx * grid_.hy);
}

double inf_norm(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.values()) {
        m = std::max(m, std::fabs(v));
    }
    return m;
}

double mean(const ScalarField& f) {
    double s = 0.0;
    for (double v : f.values()) {
        s += v;
    }
    return s / static_cast<double>(f.values().size());
}

bool all_finite(const ScalarField& f) {
    return std::all_of(f.values().begin(), f.values().end(),
                       [](double v) { return std::isfinite(v); });
}

namespace {

// Lagrange interpolation through up to four neighboring stations.
double interp_cubic(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    const int n = static_cast<int>(xs.size());
    const int npts = std::min(4, n);
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    int k = static_cast<int>(it - xs.begin()) - 1;
    int base = std::clamp(k - 1, 0, n - npts);
    double sum = 0.0;
    for (int a = 0; a < npts; ++a) {
        double term = ys[base + a];
        for (int b = 0; b < npts; ++b) {
            if (b == a) continue;
            term *= (x - xs[base + b]) / (xs[base + a] - xs[base + b]);
        }
        sum += term;
    }
    return sum;
}

}  // namespace

ScalarField lift_symmetric(const SymmetricFlow& flow, const StripGrid& grid) {
    ScalarField out(grid);
    for (int i = 0; i < grid.nx; ++i) {
        const double v = interp_cubic(flow.x, flow.phi, grid.x(i));
        for (int j = 0; j < grid.ny; ++j) {
            out.at(i, j) = v;
        }
    }
    return out;
}

void write_csv(const ScalarField& f, std::ostream& os) {
    const StripGrid& g = f.grid();
    os << g.nx << ',' << g.ny << '\n';
    char cell[40];
    for (int i = 0; i < g.nx; ++i) {
        for (int j = 0; j < g.ny; ++j) {
            std::snprintf(cell, sizeof(cell), "%.17g", f.at(i, j));
            os << cell << (j + 1 == g.ny ? '\n' : ',');
        }
    }
}

}  // namespace nozzleflow

#pragma once

#include <iosfwd>
#include <vector>

#include "nozzleflow/symmetric.hpp"

namespace nozzleflow {

// Uniform grid on the periodic strip [0,1] x [0, 2pi). x-nodes include both
// strip ends; the y direction wraps (node ny is node 0 again).
struct StripGrid {
    StripGrid(int nx, int ny);

    int nx;
    int ny;
    double hx;
    double hy;

    double x(int i) const { return i * hx; }
    double y(int j) const { return j * hy; }

    int wrap(int j) const {
        int r = j % ny;
        return r < 0 ? r + ny : r;
    }

    // Flat node id; i must lie in [0, nx), j wraps.
    int index(int i, int j) const;

    int size() const { return nx * ny; }

    bool operator==(const StripGrid& other) const {
        return nx == other.nx && ny == other.ny;
    }
};

// A real value per node, with second-order difference stencils: central in
// the interior, one-sided in x at the strip ends, periodic-central in y.
class ScalarField {
public:
    explicit ScalarField(const StripGrid& grid, double value = 0.0);

    const StripGrid& grid() const { return grid_; }

    double& at(int i, int j) { return v_[grid_.index(i, j)]; }
    double at(int i, int j) const { return v_[grid_.index(i, j)]; }

    std::vector<double>& values() { return v_; }
    const std::vector<double>& values() const { return v_; }

    double dx(int i, int j) const;
    double dxx(int i, int j) const;
    double dy(int i, int j) const;
    double dyy(int i, int j) const;
    double dxy(int i, int j) const;

private:
    StripGrid grid_;
    std::vector<double> v_;
};

double inf_norm(const ScalarField& f);
double mean(const ScalarField& f);
bool all_finite(const ScalarField& f);

// Lift the symmetric potential onto the strip, constant in y, cubic
// interpolation through the flow stations (exact at coinciding nodes).
ScalarField lift_symmetric(const SymmetricFlow& flow, const StripGrid& grid);

// Matrix dump: one-line "nx,ny" header, then nx rows of ny values.
void write_csv(const ScalarField& f, std::ostream& os);

}  // namespace nozzleflow

#pragma once

#include <array>
#include <string>
#include <vector>

#include "nozzleflow/gas.hpp"
#include "nozzleflow/grid.hpp"
#include "nozzleflow/nozzle.hpp"
#include "nozzleflow/symmetric.hpp"

namespace nozzleflow {

// Coefficient fields of the linear equation satisfied by the difference
// between the symmetric potential and another solution,
//   a11 d11 + 2 a12 d12 + a22 d22 + b1 d1 + b2 d2.
// The a's come from the exact base flow alone; the drifts mix in the
// discrete derivatives of the probed potential.
struct LinearizedCoefficients {
    ScalarField a11;
    ScalarField a12;
    ScalarField a22;
    ScalarField b1;
    ScalarField b2;
    ScalarField cb2;  // squared sound speed of the base flow
};

// The flow must be sampled on the same x-stations as the grid of phi.
LinearizedCoefficients assemble_linearized(const ScalarField& phi, const SymmetricFlow& flow,
                                           const GasModel& gas, const NozzleProfile& profile);

struct SignReport {
    std::string quantity;
    double extremum;  // the achieved min or max
    int node_i = 0;
    int node_j = 0;
    bool pass = false;
};

// Max of the first drift coefficient over the exit circle; the uniqueness
// argument needs it strictly negative there.
SignReport check_exit_drift_sign(const LinearizedCoefficients& coeffs);

struct KeyInequalityReport {
    SignReport key_quantity;       // (g+1)/2 d11 + (g-1)/2 d22, min over exit nodes
    SignReport exit_acceleration;  // min d11 over exit nodes
    SignReport identity_residual;  // max |(c^2+(d2)^2) lap - c^2 d11| over exit nodes
};

KeyInequalityReport check_key_inequality(const ScalarField& phi, const GasModel& gas);

// Oblique boundary vectors: l0 on the entry, l1 on the exit, one pair per
// y-node. First components are nonnegative when the flow enters and leaves
// the strip in the positive x direction.
struct ObliqueVectors {
    std::vector<std::array<double, 2>> entry;
    std::vector<std::array<double, 2>> exit;
};

ObliqueVectors oblique_vectors(const ScalarField& phi, const SymmetricFlow& flow,
                               const NozzleProfile& profile);

}  // namespace nozzleflow

#pragma once

#include <json.hpp>
#include <vector>

#include "mdiew/states.hpp"

namespace mdiew {

// Hermitian operator on a bipartite space, candidate entanglement witness.
struct WitnessOperator {
    ComplexMatrix op;
    DimFactorization dims;  // [d_A, d_B]

    WitnessOperator(ComplexMatrix o, DimFactorization d);
};

// Coefficient table beta plus the two input-state families: the witness it
// represents is sum_{s,t} beta[s][t] kron(transpose(tau_s), transpose(omega_t)).
struct WitnessDecomposition {
    std::vector<std::vector<double>> beta;  // indexed [s][t]
    std::vector<DensityMatrix> tau;
    std::vector<DensityMatrix> omega;

    std::size_t d_alice() const { return tau.at(0).dim(); }
    std::size_t d_bob() const { return omega.at(0).dim(); }
};

// I_4 / 2 - |Psi-><Psi-|; detects Werner states with v > 1/3.
WitnessOperator werner_witness();

// The 4x4 coefficient table (5/8 diagonal, -1/8 off-diagonal) with the four
// Pauli-conjugated pure input states on each side.
WitnessDecomposition werner_decomposition();

// Tr(W rho); imaginary residue above 1e-8 is a numeric contract violation.
double expectation(const WitnessOperator& w, const DensityMatrix& rho);

// Max-entry distance between the reconstruction and w (passing <= 1e-10).
double verify_decomposition(const WitnessDecomposition& d, const WitnessOperator& w);

WitnessOperator reconstruct(const WitnessDecomposition& d);

// JSON schema: {"beta": [[...]], "tau": [matrix...], "omega": [matrix...]},
// each matrix a row array of [re, im] pairs.
nlohmann::json decomposition_to_json(const WitnessDecomposition& d);
WitnessDecomposition decomposition_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace mdiew

#pragma once

#include <cstdint>
#include <vector>

#include "mdiew/matrix.hpp"
#include "mdiew/rng.hpp"

namespace mdiew {

// Hermiticity and unit-trace tolerance for density matrices (max entry).
inline constexpr double kStateTol = 1e-10;
// Channels and mixtures introduce roundoff; a hard zero would reject valid states.
inline constexpr double kPsdTol = -1e-9;

struct BlochVector {
    double n1 = 0.0;
    double n2 = 0.0;
    double n3 = 0.0;

    double norm() const;
};

// Hermitian, unit-trace, positive-semidefinite operator together with its
// subsystem factorization. Construction validates all three invariants.
class DensityMatrix {
public:
    DensityMatrix(ComplexMatrix op, DimFactorization dims);

    const ComplexMatrix& op() const { return op_; }
    const DimFactorization& dims() const { return dims_; }
    std::size_t dim() const { return op_.rows(); }

private:
    ComplexMatrix op_;
    DimFactorization dims_;
};

ComplexMatrix pauli(std::size_t k);  // sigma_0 = I_2, sigma_1..3

// (I_2 + n . sigma) / 2; pure iff |n| = 1.
DensityMatrix bloch_state(const BlochVector& n);

// Projector onto (1/sqrt(d)) sum_i |ii>, dims [d, d].
DensityMatrix max_entangled(std::size_t d);

// v |Psi-><Psi-| + (1-v) I_4 / 4 on dims [2, 2].
DensityMatrix werner_state(double v);

struct PptVerdict {
    bool ppt = false;
    double min_eigenvalue = 0.0;  // smallest partial-transpose eigenvalue
};

// Positive partial transpose test; equals separability on 2x2.
PptVerdict is_ppt(const DensityMatrix& rho);

// Ginibre-induced random state G G^dagger / Tr, deterministic per seed.
DensityMatrix random_density(std::size_t d, std::uint64_t seed);

// Same dims total, different factor labelling (e.g. [4] -> [2, 2]).
DensityMatrix reshaped(const DensityMatrix& rho, DimFactorization dims);

DensityMatrix product_state(const DensityMatrix& a, const DensityMatrix& b);

// Convex mixture; weights must be nonnegative and sum to 1 within 1e-9.
DensityMatrix mix(const std::vector<double>& weights, const std::vector<DensityMatrix>& states);

// Projector |v><v|; v must be normalized within 1e-10.
DensityMatrix pure_density(const cvec& v, DimFactorization dims);

// G G^dagger from a live generator (not normalized).
ComplexMatrix random_psd(std::size_t d, Rng& rng);

DensityMatrix random_product_state(Rng& rng);                       // 2x2 product
DensityMatrix random_separable_state(Rng& rng, std::size_t terms);  // mixture of <= terms products

}  // namespace mdiew

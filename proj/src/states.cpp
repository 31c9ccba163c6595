#include "mdiew/states.hpp"

#include <cmath>
#include <string>

namespace mdiew {

double BlochVector::norm() const { return std::sqrt(n1 * n1 + n2 * n2 + n3 * n3); }

DensityMatrix::DensityMatrix(ComplexMatrix op, DimFactorization dims)
    : op_(std::move(op)), dims_(std::move(dims)) {
    if (!op_.is_square()) throw DimensionError("density matrix must be square");
    if (op_.rows() != dims_.total())
        throw DimensionError("density matrix dimension " + std::to_string(op_.rows()) +
                             " does not match factorization total " + std::to_string(dims_.total()));
    const double hdev = hermiticity_deviation(op_);
    if (hdev > kStateTol)
        throw NumericContractError("density matrix not Hermitian (deviation " + std::to_string(hdev) +
                                   ")");
    const complexd tr = trace(op_);
    if (std::abs(tr - complexd{1.0, 0.0}) > kStateTol)
        throw NumericContractError("density matrix trace deviates from 1 by " +
                                   std::to_string(std::abs(tr - complexd{1.0, 0.0})));
    const double min_eig = hermitian_eigenvalues(op_).front();
    if (min_eig < kPsdTol)
        throw NumericContractError("density matrix has negative eigenvalue " +
                                   std::to_string(min_eig));
}

ComplexMatrix pauli(std::size_t k) {
    switch (k) {
        case 0:
            return ComplexMatrix::identity(2);
        case 1:
            return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}};
        case 2:
            return ComplexMatrix{{0.0, complexd{0.0, -1.0}}, {complexd{0.0, 1.0}, 0.0}};
        case 3:
            return ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}};
        default:
            throw std::invalid_argument("pauli index must be 0..3");
    }
}

DensityMatrix bloch_state(const BlochVector& n) {
    const double len = n.norm();
    if (len > 1.0 + 1e-12)
        throw std::invalid_argument("Bloch vector norm " + std::to_string(len) + " exceeds 1");
    ComplexMatrix m(2, 2);
    m(0, 0) = 0.5 * (1.0 + n.n3);
    m(1, 1) = 0.5 * (1.0 - n.n3);
    m(0, 1) = 0.5 * complexd{n.n1, -n.n2};
    m(1, 0) = 0.5 * complexd{n.n1, n.n2};
    return DensityMatrix(std::move(m), DimFactorization{2});
}

DensityMatrix max_entangled(std::size_t d) {
    if (d < 2) throw std::invalid_argument("maximally entangled state needs dimension >= 2");
    cvec v(d * d, complexd{0.0, 0.0});
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i) v[i * d + i] = amp;
    return pure_density(v, DimFactorization{d, d});
}

DensityMatrix werner_state(double v) {
    if (v < 0.0 || v > 1.0) throw std::invalid_argument("Werner parameter must lie in [0, 1]");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    cvec singlet{0.0, inv_sqrt2, -inv_sqrt2, 0.0};
    ComplexMatrix m = matvec_outer(singlet, singlet);
    m *= v;
    const ComplexMatrix id = ComplexMatrix::identity(4);
    m += ((1.0 - v) / 4.0) * id;
    return DensityMatrix(std::move(m), DimFactorization{2, 2});
}

PptVerdict is_ppt(const DensityMatrix& rho) {
    const auto& f = rho.dims().factors;
    if (f.size() != 2 || f[0] != 2 || f[1] != 2)
        throw DimensionError("PPT verdicts are implemented for 2x2 systems only");
    const ComplexMatrix pt = partial_transpose(rho.op(), rho.dims(), 1);
    const double min_eig = hermitian_eigenvalues(pt).front();
    return PptVerdict{min_eig >= kPsdTol, min_eig};
}

DensityMatrix random_density(std::size_t d, std::uint64_t seed) {
    if (d < 2 || d > 8) throw std::invalid_argument("random_density supports dimensions 2..8");
    Rng rng(seed);
    ComplexMatrix g = random_psd(d, rng);
    const double tr = trace(g).real();
    g *= complexd{1.0 / tr, 0.0};
    return DensityMatrix(std::move(g), DimFactorization{std::vector<std::size_t>{d}});
}

DensityMatrix reshaped(const DensityMatrix& rho, DimFactorization dims) {
    if (dims.total() != rho.dim())
        throw DimensionError("reshaped factorization total does not match state dimension");
    return DensityMatrix(rho.op(), std::move(dims));
}

DensityMatrix product_state(const DensityMatrix& a, const DensityMatrix& b) {
    std::vector<std::size_t> factors = a.dims().factors;
    factors.insert(factors.end(), b.dims().factors.begin(), b.dims().factors.end());
    return DensityMatrix(kron(a.op(), b.op()), DimFactorization{std::move(factors)});
}

DensityMatrix mix(const std::vector<double>& weights, const std::vector<DensityMatrix>& states) {
    if (weights.empty() || weights.size() != states.size())
        throw std::invalid_argument("mix needs one weight per state");
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("mixture weights must be nonnegative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("mixture weights must sum to 1 (got " + std::to_string(sum) + ")");
    ComplexMatrix acc(states[0].dim(), states[0].dim());
    for (std::size_t k = 0; k < states.size(); ++k) {
        if (states[k].dim() != acc.rows()) throw DimensionError("mixture states must share dimensions");
        acc += weights[k] * states[k].op();
    }
    return DensityMatrix(std::move(acc), states[0].dims());
}

DensityMatrix pure_density(const cvec& v, DimFactorization dims) {
    double norm2 = 0.0;
    for (const auto& a : v) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > 1e-10)
        throw std::invalid_argument("pure-state amplitudes must be normalized (|v|^2 = " +
                                    std::to_string(norm2) + ")");
    return DensityMatrix(matvec_outer(v, v), std::move(dims));
}

ComplexMatrix random_psd(std::size_t d, Rng& rng) {
    ComplexMatrix g(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) g(i, j) = rng.complex_gaussian();
    return g * dagger(g);
}

DensityMatrix random_product_state(Rng& rng) {
    auto factor = [&rng]() {
        ComplexMatrix g = random_psd(2, rng);
        g *= complexd{1.0 / trace(g).real(), 0.0};
        return DensityMatrix(std::move(g), DimFactorization{2});
    };
    const DensityMatrix a = factor();
    const DensityMatrix b = factor();
    return product_state(a, b);
}

DensityMatrix random_separable_state(Rng& rng, std::size_t terms) {
    if (terms == 0) throw std::invalid_argument("separable mixture needs at least one term");
    std::vector<DensityMatrix> parts;
    std::vector<double> weights(terms, 0.0);
    double sum = 0.0;
    for (std::size_t k = 0; k < terms; ++k) {
        parts.push_back(random_product_state(rng));
        weights[k] = rng.uniform() + 1e-3;
        sum += weights[k];
    }
    for (double& w : weights) w /= sum;
    return mix(weights, parts);
}

}  // namespace mdiew

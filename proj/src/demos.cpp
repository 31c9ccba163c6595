#include "mdiew/demos.hpp"

#include <cmath>

namespace mdiew {

namespace {

constexpr double kPi = 3.14159265358979323846;

BlochVector antipode(const BlochVector& n) { return {-n.n1, -n.n2, -n.n3}; }

DensityMatrix mixed_quarter() {
    return DensityMatrix(0.25 * ComplexMatrix::identity(4), DimFactorization{2, 2});
}

GameSetup nonuniform_setup(const BlochVector& theta) {
    const ComplexMatrix perp = bloch_state(antipode(theta)).op();
    const ComplexMatrix eye = ComplexMatrix::identity(2);
    return GameSetup(werner_decomposition(), mixed_quarter(),
                     PovmElement(kron(perp, eye), DimFactorization{2, 2}),
                     PovmElement(kron(eye, perp), DimFactorization{2, 2}));
}

}  // namespace

double nonuniform_demo_value(double q, const BlochVector& theta) {
    const GameSetup setup = nonuniform_setup(theta);
    return noisy_mdi_value(setup, NoiseSpec::nonuniform_product(q, theta));
}

double nonuniform_demo_closed_form(double q, const BlochVector& theta) {
    if (std::abs(theta.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("target state must be pure (unit Bloch vector)");
    const WitnessDecomposition decomp = werner_decomposition();
    const ComplexMatrix perp = bloch_state(antipode(theta)).op();
    double sum = 0.0;
    for (std::size_t s = 0; s < 3; ++s)
        sum += trace_product(decomp.tau[s].op(), perp).real();
    const double last = trace_product(decomp.omega[3].op(), perp).real();
    return -(q * q / 8.0) * last * sum;
}

DemoMinimum nonuniform_demo_minimum(double q) {
    DemoMinimum best;
    best.min_value = 1.0;
    for (std::size_t i = 0; i < 50; ++i) {
        const double polar = kPi * (static_cast<double>(i) + 0.5) / 50.0;
        for (std::size_t j = 0; j < 100; ++j) {
            const double azimuth = 2.0 * kPi * static_cast<double>(j) / 100.0;
            const BlochVector theta{std::sin(polar) * std::cos(azimuth),
                                    std::sin(polar) * std::sin(azimuth), std::cos(polar)};
            const double full = nonuniform_demo_value(q, theta);
            const double closed = nonuniform_demo_closed_form(q, theta);
            const double gap = std::abs(full - closed);
            if (gap > best.max_closed_gap) best.max_closed_gap = gap;
            if (full < best.min_value) {
                best.min_value = full;
                best.argmin = theta;
            }
        }
    }
    return best;
}

double entangling_demo_value(double p) {
    const ComplexMatrix eye = ComplexMatrix::identity(2);
    const ComplexMatrix plus = 0.5 * (eye + pauli(2));
    const ComplexMatrix minus = 0.5 * (eye - pauli(2));
    const GameSetup setup(werner_decomposition(), mixed_quarter(),
                          PovmElement(kron(plus, eye), DimFactorization{2, 2}),
                          PovmElement(kron(eye, minus), DimFactorization{2, 2}));
    return noisy_mdi_value(setup, NoiseSpec::entangling_pure(p));
}

}  // namespace mdiew

#include <doctest.h>

#include <cmath>

#include "mdiew/demos.hpp"

using namespace mdiew;

namespace {

const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

// The fourth input direction of the standard family, sigma_3-conjugated root.
const BlochVector kThirdDirection{-kInvSqrt3, -kInvSqrt3, kInvSqrt3};

// Polynomial form of the surviving cross terms, derived from the coefficient
// table directly: only the (s <= 2, t = 3) entries contribute.
double polynomial_form(double q, const BlochVector& theta) {
    const double x = -(theta.n1 * kThirdDirection.n1 + theta.n2 * kThirdDirection.n2 +
                       theta.n3 * kThirdDirection.n3);
    return -(q * q / 32.0) * (1.0 + x) * (3.0 - x);
}

BlochVector direction(double polar, double azimuth) {
    return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth),
            std::cos(polar)};
}

}  // namespace

TEST_CASE("replacement demo closed form matches its polynomial reduction") {
    for (double q : {0.0, 0.3, 0.7, 1.0})
        for (double polar : {0.2, 1.1, 2.0, 2.9})
            for (double azimuth : {0.0, 1.3, 3.1, 5.0}) {
                const BlochVector theta = direction(polar, azimuth);
                CHECK(nonuniform_demo_closed_form(q, theta) ==
                      doctest::Approx(polynomial_form(q, theta)).epsilon(1e-12));
            }
}

TEST_CASE("replacement demo hits minus one eighth at the antipodal target") {
    const BlochVector best{kInvSqrt3, kInvSqrt3, -kInvSqrt3};
    CHECK(nonuniform_demo_closed_form(1.0, best) == doctest::Approx(-0.125).epsilon(1e-12));
    CHECK(nonuniform_demo_value(1.0, best) == doctest::Approx(-0.125).epsilon(1e-10));

    const BlochVector aligned = kThirdDirection;
    CHECK(nonuniform_demo_closed_form(1.0, aligned) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(nonuniform_demo_value(1.0, aligned)) < 1e-10);
}

TEST_CASE("replacement demo full game equals the closed form at every strength") {
    for (double q : {0.0, 0.25, 0.6, 1.0})
        for (double polar : {0.4, 1.6, 2.7})
            for (double azimuth : {0.7, 2.9, 4.4}) {
                const BlochVector theta = direction(polar, azimuth);
                const double full = nonuniform_demo_value(q, theta);
                const double closed = nonuniform_demo_closed_form(q, theta);
                CHECK(std::abs(full - closed) <= 1e-10);
            }
}

TEST_CASE("replacement demo vanishes when the tables are switched off") {
    for (double polar : {0.5, 1.5, 2.5}) {
        const BlochVector theta = direction(polar, 1.0);
        CHECK(std::abs(nonuniform_demo_value(0.0, theta)) < 1e-12);
    }
}

TEST_CASE("closed form rejects non-unit targets") {
    CHECK_THROWS_AS(nonuniform_demo_closed_form(0.5, {0.5, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("the target scan finds the negative region at full strength") {
    const DemoMinimum result = nonuniform_demo_minimum(1.0);
    CHECK(result.min_value < -0.12);
    CHECK(result.min_value >= -0.125 - 1e-9);
    CHECK(result.max_closed_gap <= 1e-10);

    const BlochVector best{kInvSqrt3, kInvSqrt3, -kInvSqrt3};
    const double align = result.argmin.n1 * best.n1 + result.argmin.n2 * best.n2 +
                         result.argmin.n3 * best.n3;
    CHECK(align > 0.995);
}

TEST_CASE("the target scan reports zero when the strength is zero") {
    const DemoMinimum result = nonuniform_demo_minimum(0.0);
    CHECK(std::abs(result.min_value) < 1e-12);
    CHECK(result.max_closed_gap <= 1e-12);
}

TEST_CASE("coherent demo value at full branch weight is nonnegative") {
    CHECK(entangling_demo_value(1.0) >= -1e-9);
}

TEST_CASE("coherent demo value at zero branch weight is minus one twelfth") {
    CHECK(entangling_demo_value(0.0) == doctest::Approx(-1.0 / 12.0).epsilon(1e-9));
}

TEST_CASE("coherent demo matches a direct four-dimensional computation") {
    const WitnessDecomposition d = werner_decomposition();
    const ComplexMatrix alice_eff =
        0.5 * (ComplexMatrix::identity(2) + pauli(2));
    const ComplexMatrix bob_eff =
        0.5 * (ComplexMatrix::identity(2) - pauli(2));
    const ComplexMatrix joint = kron(alice_eff, bob_eff);

    auto amplitudes = [](const DensityMatrix& state) {
        const BlochVector n{state.op()(0, 1).real() * 2.0, -state.op()(0, 1).imag() * 2.0,
                            state.op()(0, 0).real() * 2.0 - 1.0};
        const double polar = std::acos(n.n3);
        const double azimuth = std::atan2(n.n2, n.n1);
        cvec v(2);
        v[0] = std::cos(polar / 2.0);
        v[1] = std::polar(std::sin(polar / 2.0), azimuth);
        return v;
    };

    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        double value = 0.0;
        for (std::size_t s = 0; s < 4; ++s)
            for (std::size_t t = 0; t < 4; ++t) {
                const cvec psi_s = amplitudes(d.tau[s]);
                const cvec psi_t = amplitudes(d.omega[t]);
                const cvec perp_s{std::conj(psi_s[1]), -std::conj(psi_s[0])};
                const cvec perp_t{std::conj(psi_t[1]), -std::conj(psi_t[0])};

                cvec chi = kron_vec(psi_s, psi_t);
                const cvec flip = kron_vec(perp_s, perp_t);
                const double w_keep = std::sqrt((1.0 + p) / 2.0);
                const double w_flip = std::sqrt((1.0 - p) / 2.0);
                for (std::size_t k = 0; k < 4; ++k)
                    chi[k] = w_keep * chi[k] + w_flip * flip[k];

                const ComplexMatrix chi_op = matvec_outer(chi, chi);
                value += d.beta[s][t] * trace_product(joint, chi_op).real();
            }
        CHECK(entangling_demo_value(p) == doctest::Approx(value).epsilon(1e-10));
    }
}

#include <doctest.h>

#include <cmath>

#include "mdiew/states.hpp"

using namespace mdiew;

namespace {

const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

}  // namespace

TEST_CASE("pauli matrices satisfy the algebra") {
    const ComplexMatrix id = ComplexMatrix::identity(2);
    for (std::size_t k = 1; k <= 3; ++k) {
        const ComplexMatrix s = pauli(k);
        CHECK(max_abs_diff(s * s, id) < 1e-15);
        CHECK(std::abs(trace(s)) < 1e-15);
        CHECK(max_abs_diff(s, dagger(s)) < 1e-15);
    }
    CHECK(max_abs_diff(pauli(0), id) < 1e-15);
    const ComplexMatrix xy = pauli(1) * pauli(2);
    const ComplexMatrix expect_iz = complexd{0.0, 1.0} * pauli(3);
    CHECK(max_abs_diff(xy, expect_iz) < 1e-15);
    CHECK_THROWS_AS(pauli(4), std::invalid_argument);
}

TEST_CASE("bloch states have the expected matrix entries") {
    const DensityMatrix up = bloch_state({0.0, 0.0, 1.0});
    CHECK(std::abs(up.op()(0, 0) - complexd{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(up.op()(1, 1)) < 1e-15);

    const DensityMatrix tilted = bloch_state({0.6, 0.8, 0.0});
    CHECK(std::abs(tilted.op()(0, 1) - complexd{0.3, -0.4}) < 1e-15);
    CHECK(std::abs(tilted.op()(1, 0) - complexd{0.3, 0.4}) < 1e-15);
    CHECK(std::abs(trace(tilted.op()) - complexd{1.0, 0.0}) < 1e-15);

    CHECK_THROWS_AS(bloch_state({1.0, 1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("density matrix construction rejects contract violations") {
    ComplexMatrix not_hermitian{{1.0, complexd{0.0, 0.5}}, {complexd{0.0, 0.5}, 0.0}};
    CHECK_THROWS_AS(DensityMatrix(not_hermitian, DimFactorization{2}), NumericContractError);

    ComplexMatrix wrong_trace = 0.5 * ComplexMatrix::identity(2);
    wrong_trace(0, 0) = 0.6;
    CHECK_THROWS_AS(DensityMatrix(wrong_trace, DimFactorization{2}), NumericContractError);

    ComplexMatrix negative{{1.5, 0.0}, {0.0, -0.5}};
    CHECK_THROWS_AS(DensityMatrix(negative, DimFactorization{2}), NumericContractError);

    CHECK_THROWS_AS(DensityMatrix(0.25 * ComplexMatrix::identity(4), DimFactorization{2}),
                    DimensionError);
}

TEST_CASE("werner states are linear in the visibility parameter") {
    const DensityMatrix singlet = werner_state(1.0);
    const DensityMatrix fully_mixed = werner_state(0.0);
    CHECK(max_abs_diff(fully_mixed.op(), 0.25 * ComplexMatrix::identity(4)) < 1e-15);
    for (double v : {0.1, 0.3, 0.5, 0.9}) {
        const ComplexMatrix blend = v * singlet.op() + (1.0 - v) * fully_mixed.op();
        CHECK(max_abs_diff(werner_state(v).op(), blend) < 1e-14);
    }
    CHECK_THROWS_AS(werner_state(1.5), std::invalid_argument);
    CHECK_THROWS_AS(werner_state(-0.1), std::invalid_argument);
}

TEST_CASE("werner ppt verdict flips exactly at one third") {
    for (int k = 0; k <= 20; ++k) {
        const double v = k / 20.0;
        const PptVerdict verdict = is_ppt(werner_state(v));
        CHECK(verdict.ppt == (v <= 1.0 / 3.0 + 1e-12));
        CHECK(verdict.min_eigenvalue == doctest::Approx((1.0 - 3.0 * v) / 4.0).epsilon(1e-10));
    }
}

TEST_CASE("maximally entangled projector has the singlet-style spectrum under partial transpose") {
    const DensityMatrix phi = max_entangled(2);
    CHECK(std::abs(trace(phi.op()) - complexd{1.0, 0.0}) < 1e-12);
    CHECK(max_abs_diff(phi.op() * phi.op(), phi.op()) < 1e-12);

    const ComplexMatrix pt = partial_transpose(phi.op(), phi.dims(), 1);
    const std::vector<double> eigs = hermitian_eigenvalues(pt);
    CHECK(eigs[0] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(eigs[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(eigs[3] == doctest::Approx(0.5).epsilon(1e-12));

    const DensityMatrix phi3 = max_entangled(3);
    CHECK(phi3.dim() == 9);
    CHECK(std::abs(trace(phi3.op()) - complexd{1.0, 0.0}) < 1e-12);
}

TEST_CASE("ppt verdicts reject unsupported factorizations") {
    const DensityMatrix qutrit = random_density(3, 5);
    CHECK_THROWS_AS(is_ppt(qutrit), DimensionError);
    const DensityMatrix flat = random_density(4, 5);
    CHECK_THROWS_AS(is_ppt(flat), DimensionError);
    CHECK_NOTHROW(is_ppt(reshaped(flat, DimFactorization{2, 2})));
}

TEST_CASE("random densities are valid and reproducible") {
    const DensityMatrix a = random_density(4, 123);
    const DensityMatrix b = random_density(4, 123);
    const DensityMatrix c = random_density(4, 124);
    CHECK(max_abs_diff(a.op(), b.op()) == 0.0);
    CHECK(max_abs_diff(a.op(), c.op()) > 1e-3);
    CHECK(std::abs(trace(a.op()) - complexd{1.0, 0.0}) < 1e-12);
    CHECK(hermitian_eigenvalues(a.op()).front() >= kPsdTol);
    CHECK_THROWS_AS(random_density(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(random_density(9, 0), std::invalid_argument);
}

TEST_CASE("reshaping relabels factors without touching entries") {
    const DensityMatrix flat = random_density(4, 77);
    const DensityMatrix pair = reshaped(flat, DimFactorization{2, 2});
    CHECK(max_abs_diff(flat.op(), pair.op()) == 0.0);
    CHECK(pair.dims().size() == 2);
    CHECK_THROWS_AS(reshaped(flat, DimFactorization{2, 3}), DimensionError);
}

TEST_CASE("product states factorize under partial trace") {
    const DensityMatrix a = random_density(2, 31);
    const DensityMatrix b = random_density(2, 32);
    const DensityMatrix ab = product_state(a, b);
    CHECK(ab.dims().size() == 2);
    const ComplexMatrix left = partial_trace(ab.op(), ab.dims(), {0});
    const ComplexMatrix right = partial_trace(ab.op(), ab.dims(), {1});
    CHECK(max_abs_diff(left, a.op()) < 1e-12);
    CHECK(max_abs_diff(right, b.op()) < 1e-12);
    CHECK(is_ppt(ab).ppt);
}

TEST_CASE("mixtures validate weights and preserve dimensions") {
    const DensityMatrix a = random_density(2, 1);
    const DensityMatrix b = random_density(2, 2);
    const DensityMatrix m = mix({0.25, 0.75}, {a, b});
    CHECK(max_abs_diff(m.op(), 0.25 * a.op() + 0.75 * b.op()) < 1e-14);

    CHECK_THROWS_AS(mix({0.5, 0.6}, {a, b}), std::invalid_argument);
    CHECK_THROWS_AS(mix({-0.1, 1.1}, {a, b}), std::invalid_argument);
    CHECK_THROWS_AS(mix({1.0}, {a, b}), std::invalid_argument);
    CHECK_THROWS_AS(mix({0.5, 0.5}, {a, random_density(3, 3)}), DimensionError);
}

TEST_CASE("pure densities require normalized amplitudes") {
    const double inv = 1.0 / std::sqrt(2.0);
    const cvec singlet{0.0, inv, -inv, 0.0};
    const DensityMatrix s = pure_density(singlet, DimFactorization{2, 2});
    CHECK(max_abs_diff(s.op() * s.op(), s.op()) < 1e-12);
    CHECK(is_ppt(s).min_eigenvalue == doctest::Approx(-0.5).epsilon(1e-10));

    CHECK_THROWS_AS(pure_density({1.0, 1.0}, DimFactorization{2}), std::invalid_argument);
}

TEST_CASE("sampled product and separable states pass the ppt test") {
    Rng rng(2024);
    for (int k = 0; k < 50; ++k) {
        const DensityMatrix prod = random_product_state(rng);
        CHECK(is_ppt(prod).min_eigenvalue >= kPsdTol);
        const DensityMatrix sep = random_separable_state(rng, 4);
        CHECK(is_ppt(sep).min_eigenvalue >= kPsdTol);
    }
    CHECK_THROWS_AS(random_separable_state(rng, 0), std::invalid_argument);
}

TEST_CASE("tetrahedral bloch directions balance by construction") {
    const BlochVector root{kInvSqrt3, kInvSqrt3, kInvSqrt3};
    CHECK(root.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

#include "mdiew/game.hpp"

#include <cmath>
#include <utility>

namespace mdiew {

namespace {

void check_povm_invariants(const ComplexMatrix& op) {
    const double herm = hermiticity_deviation(op);
    if (herm > 1e-10)
        throw NumericContractError("measurement element is not Hermitian (deviation " +
                                   std::to_string(herm) + ")");
    const std::vector<double> eigs = hermitian_eigenvalues(op);
    if (eigs.front() < -1e-9 || eigs.back() > 1.0 + 1e-9)
        throw NumericContractError("measurement element eigenvalues outside [0, 1]: [" +
                                   std::to_string(eigs.front()) + ", " +
                                   std::to_string(eigs.back()) + "]");
}

// Trace of (alice x bob) against a state ordered
// input_A x share_A x share_B x input_B, with bounds check and clamp.
double outcome_prob(const ComplexMatrix& alice, const ComplexMatrix& bob,
                    const ComplexMatrix& state) {
    const ComplexMatrix joint = kron(alice, bob);
    double p = trace_product(joint, state).real();
    if (p < -1e-9 || p > 1.0 + 1e-9)
        throw NumericContractError("joint probability " + std::to_string(p) +
                                   " outside tolerance band");
    if (p < 0.0) {
        emit_warning("joint probability " + std::to_string(p) + " clamped to 0");
        p = 0.0;
    }
    if (p > 1.0) p = 1.0;
    return p;
}

ComplexMatrix plain_global_state(const GameSetup& setup, std::size_t s, std::size_t t) {
    return kron(kron(setup.decomp.tau.at(s).op(), setup.shared.op()),
                setup.decomp.omega.at(t).op());
}

// Joint noisy input lives on input_A x input_B; splice the shared state in
// between to reach the game ordering.
ComplexMatrix noisy_global_state(const GameSetup& setup, const DensityMatrix& noisy_input) {
    const ComplexMatrix raw = kron(noisy_input.op(), setup.shared.op());
    DimFactorization dims{noisy_input.dims()[0], noisy_input.dims()[1], setup.shared.dims()[0],
                          setup.shared.dims()[1]};
    return reorder_subsystems(raw, dims, {0, 2, 3, 1});
}

}  // namespace

PovmElement::PovmElement(ComplexMatrix o, DimFactorization d) : op(std::move(o)), dims(std::move(d)) {
    if (op.rows() != op.cols() || op.rows() != dims.total())
        throw DimensionError("measurement element shape does not match its factorization");
    check_povm_invariants(op);
}

GameSetup::GameSetup(WitnessDecomposition d, DensityMatrix s, PovmElement a, PovmElement b)
    : decomp(std::move(d)),
      shared(std::move(s)),
      alice_povm(std::move(a)),
      bob_povm(std::move(b)) {
    if (shared.dims().size() != 2)
        throw DimensionError("shared state needs a two-factor factorization");
    if (decomp.beta.empty() || decomp.beta.size() != decomp.tau.size())
        throw DimensionError("coefficient table does not match the input family");
    for (const auto& row : decomp.beta)
        if (row.size() != decomp.omega.size())
            throw DimensionError("coefficient table does not match the input family");
    const std::size_t need_a = decomp.d_alice() * shared.dims()[0];
    const std::size_t need_b = shared.dims()[1] * decomp.d_bob();
    if (alice_povm.op.rows() != need_a)
        throw DimensionError("first-side measurement does not act on input x share");
    if (bob_povm.op.rows() != need_b)
        throw DimensionError("second-side measurement does not act on share x input");
}

PovmElement bell_projector(std::size_t d) {
    if (d == 0) throw DimensionError("projector dimension must be positive");
    cvec v(d * d, complexd{0.0, 0.0});
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i) v[i * d + i] = amp;
    return PovmElement(matvec_outer(v, v), DimFactorization{d, d});
}

GameSetup bell_setup(WitnessDecomposition decomp, DensityMatrix shared) {
    PovmElement a = bell_projector(decomp.d_alice());
    PovmElement b = bell_projector(decomp.d_bob());
    return GameSetup(std::move(decomp), std::move(shared), std::move(a), std::move(b));
}

double joint_prob(const GameSetup& setup, std::size_t s, std::size_t t) {
    if (s >= setup.decomp.tau.size() || t >= setup.decomp.omega.size())
        throw DimensionError("input pair index outside the decomposition families");
    return outcome_prob(setup.alice_povm.op, setup.bob_povm.op, plain_global_state(setup, s, t));
}

double mdi_value(const GameSetup& setup) {
    double acc = 0.0;
    for (std::size_t s = 0; s < setup.decomp.tau.size(); ++s)
        for (std::size_t t = 0; t < setup.decomp.omega.size(); ++t)
            acc += setup.decomp.beta[s][t] * joint_prob(setup, s, t);
    return acc;
}

double mdi_value_fast(const WitnessDecomposition& decomp, const DensityMatrix& rho) {
    const WitnessOperator w = reconstruct(decomp);
    const double scale = static_cast<double>(decomp.d_alice() * decomp.d_bob());
    return expectation(w, rho) / scale;
}

PovmElement effective_povm(const PovmElement& element, const DensityMatrix& share_state,
                           Side side) {
    if (element.dims.size() != 2)
        throw DimensionError("effective contraction needs a two-factor element");
    const std::size_t share_slot = side == Side::Alice ? 1 : 0;
    const std::size_t input_slot = 1 - share_slot;
    if (element.dims[share_slot] != share_state.dim())
        throw DimensionError("share-state dimension does not match the element");
    const ComplexMatrix embedded =
        side == Side::Alice
            ? kron(ComplexMatrix::identity(element.dims[0]), share_state.op())
            : kron(share_state.op(), ComplexMatrix::identity(element.dims[1]));
    const ComplexMatrix reduced =
        partial_trace(element.op * embedded, element.dims, {input_slot});
    return PovmElement(reduced, DimFactorization{element.dims[input_slot]});
}

double noisy_mdi_value(const GameSetup& setup, const NoiseSpec& noise) {
    double acc = 0.0;
    for (std::size_t s = 0; s < setup.decomp.tau.size(); ++s) {
        for (std::size_t t = 0; t < setup.decomp.omega.size(); ++t) {
            const DensityMatrix joint =
                product_state(setup.decomp.tau[s], setup.decomp.omega[t]);
            const DensityMatrix noisy = apply_noise(noise, s, t, joint);
            const double p = outcome_prob(setup.alice_povm.op, setup.bob_povm.op,
                                          noisy_global_state(setup, noisy));
            acc += setup.decomp.beta[s][t] * p;
        }
    }
    return acc;
}

WitnessOperator modified_witness(const WitnessDecomposition& decomp, const NoiseSpec& noise) {
    if (!noise.is_uniform())
        throw std::invalid_argument("modified witness is defined for uniform noise only");
    const std::size_t d = decomp.d_alice() * decomp.d_bob();
    ComplexMatrix acc(d, d);
    for (std::size_t s = 0; s < decomp.tau.size(); ++s) {
        for (std::size_t t = 0; t < decomp.omega.size(); ++t) {
            if (decomp.beta[s][t] == 0.0) continue;
            const DensityMatrix joint = product_state(decomp.tau[s], decomp.omega[t]);
            const DensityMatrix noisy = apply_noise(noise, s, t, joint);
            acc += decomp.beta[s][t] * transpose(noisy.op());
        }
    }
    return WitnessOperator(std::move(acc), DimFactorization{decomp.d_alice(), decomp.d_bob()});
}

PovmElement random_povm_element(const DimFactorization& dims, Rng& rng) {
    const ComplexMatrix r = random_psd(dims.total(), rng);
    const double top = hermitian_eigenvalues(r).back();
    return PovmElement((1.0 / (top + 1e-6)) * r, dims);
}

}  // namespace mdiew

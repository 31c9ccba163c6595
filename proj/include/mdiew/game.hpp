#pragma once

#include "mdiew/channels.hpp"
#include "mdiew/witness.hpp"

namespace mdiew {

// Binary-measurement element E with 0 <= E <= I (within 1e-9) and Hermitian
// within 1e-10; violations raise NumericContractError.
struct PovmElement {
    ComplexMatrix op;
    DimFactorization dims;

    PovmElement(ComplexMatrix o, DimFactorization d);
};

// One full experimental configuration: coefficient table with its input
// families, the shared state under test, and the two local measurements.
// The global state is ordered input_A x share_A x share_B x input_B; Alice
// measures factors (0, 1), Bob factors (2, 3).
struct GameSetup {
    WitnessDecomposition decomp;
    DensityMatrix shared;    // on share_A x share_B
    PovmElement alice_povm;  // on input_A x share_A
    PovmElement bob_povm;    // on share_B x input_B

    GameSetup(WitnessDecomposition d, DensityMatrix s, PovmElement a, PovmElement b);
};

// Projector onto the maximally entangled vector of a d x d space.
PovmElement bell_projector(std::size_t d);

// Setup with Bell projectors on both sides; the configuration whose game value
// reduces to the witness expectation.
GameSetup bell_setup(WitnessDecomposition decomp, DensityMatrix shared);

// Probability that both sides answer 1 on input pair (s, t). Values must lie
// in [-1e-9, 1 + 1e-9] before clamping to [0, 1]; small negative values are
// clamped to zero with a warning.
double joint_prob(const GameSetup& setup, std::size_t s, std::size_t t);

// Game value: sum_{s,t} beta[s][t] * joint_prob(s, t).
double mdi_value(const GameSetup& setup);

// Shortcut valid for Bell-projector measurements: Tr(W rho) / (d_A * d_B)
// with W reconstructed from the decomposition.
double mdi_value_fast(const WitnessDecomposition& decomp, const DensityMatrix& rho);

enum class Side { Alice, Bob };

// Contracts a measurement on (input x share) down to the input factor:
// Tr_share[element (I x share_state)] for Alice ordering, share first for Bob.
PovmElement effective_povm(const PovmElement& element, const DensityMatrix& share_state, Side side);

// Game value with the joint input pair passed through the noise process before
// entering the global state.
double noisy_mdi_value(const GameSetup& setup, const NoiseSpec& noise);

// Witness equivalent of uniform noise with Bell projectors:
// W' = sum beta[s][t] transpose(channel(tau_s x omega_t)). Non-uniform noise
// is rejected.
WitnessOperator modified_witness(const WitnessDecomposition& decomp, const NoiseSpec& noise);

// E = R / (lambda_max(R) + 1e-6) for a seeded random PSD R; always a valid
// element strictly below the identity.
PovmElement random_povm_element(const DimFactorization& dims, Rng& rng);

}  // namespace mdiew

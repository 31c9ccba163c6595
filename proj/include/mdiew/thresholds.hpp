#pragma once

#include <string>
#include <utility>

#include "mdiew/game.hpp"

namespace mdiew {

// Critical Werner mixing weight: states with v > v_star are caught by the
// noisy game. v_star = infinity encodes "never detectable"; the detectable
// flag is v_star <= 1 + 1e-12 (boundary counted as detectable).
struct ThresholdResult {
    double v_star = 0.0;
    bool detectable = false;
    std::string formula_id;
};

// v_star = 1 / (3 p1 p2); infinity when either probability is zero.
ThresholdResult white_noise_threshold(double p1, double p2);

// Per-side admixture toward fixed states X, Y with keep probabilities p1, p2:
// v_star = 1/A with A = 3 p1 p2 + (1-p1)(1-p2) (a . b) for the Bloch vectors
// a, b of X, Y; infinity when A <= 0.
ThresholdResult admixture_threshold(double p1, double p2, const DensityMatrix& X,
                                    const DensityMatrix& Y);

// (A_min, A_max) over all target states: 3 p1 p2 -/+ (1-p1)(1-p2).
std::pair<double, double> admixture_extremes(double p1, double p2);

// Probabilistic Pauli conjugations with indices i, j in 1..3. Equal indices:
// v_star = 1/(8 p1 p2 - 4 p1 - 4 p2 + 3); different: 1/(4 p1 p2 - 1). Either
// way infinity when the denominator is not positive.
ThresholdResult pauli_threshold(std::size_t i, std::size_t j, double p1, double p2);

// v_star = 1 / [1 - e1 - e2 + 2 e1 e2 + 2 sqrt((1-e1)(1-e2))]; infinity at
// the corner cases where the bracket vanishes.
ThresholdResult amplitude_damping_threshold(double eps1, double eps2);

// How the pairwise probability sum in the correlated-Pauli denominator is
// taken. PairsOnce (i < j) is the convention that reproduces the numeric
// solver; the other two readings are kept for comparison.
enum class MemorySumConvention { AllPairs, OffDiagonal, PairsOnce };

std::string memory_convention_name(MemorySumConvention c);

// v_star = 1 / (3 + 8 (m - 1) S) with S the convention-dependent sum over
// products of the three flip probabilities; m = 1 always gives 1/3.
ThresholdResult memory_threshold(double m, const std::vector<double>& probs,
                                 MemorySumConvention convention);

// Independent solver: the Werner game value under any uniform noise is affine
// in v, so v_star comes from a two-point solve (with a bisection fallback).
// Affinity is verified to 1e-10; returns infinity when the value at v = 1 is
// >= -1e-12.
ThresholdResult numeric_threshold(const NoiseSpec& noise);

}  // namespace mdiew

#include "mdiew/thresholds.hpp"

#include <cmath>
#include <limits>

namespace mdiew {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_unit(double p, const char* name) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

ThresholdResult from_denominator(double den, std::string formula_id) {
    ThresholdResult r;
    r.formula_id = std::move(formula_id);
    if (den <= 1e-15) {
        r.v_star = kInf;
        r.detectable = false;
    } else {
        r.v_star = 1.0 / den;
        r.detectable = r.v_star <= 1.0 + 1e-12;
    }
    return r;
}

double bloch_dot(const DensityMatrix& x, const DensityMatrix& y) {
    double acc = 0.0;
    for (std::size_t k = 1; k < 4; ++k)
        acc += trace_product(x.op(), pauli(k)).real() * trace_product(y.op(), pauli(k)).real();
    return acc;
}

}  // namespace

ThresholdResult white_noise_threshold(double p1, double p2) {
    require_unit(p1, "p1");
    require_unit(p2, "p2");
    return from_denominator(3.0 * p1 * p2, "white");
}

ThresholdResult admixture_threshold(double p1, double p2, const DensityMatrix& X,
                                    const DensityMatrix& Y) {
    require_unit(p1, "p1");
    require_unit(p2, "p2");
    if (X.dim() != 2 || Y.dim() != 2)
        throw DimensionError("admixture targets must be qubit states");
    const double a = 3.0 * p1 * p2 + (1.0 - p1) * (1.0 - p2) * bloch_dot(X, Y);
    return from_denominator(a, "admixture");
}

std::pair<double, double> admixture_extremes(double p1, double p2) {
    require_unit(p1, "p1");
    require_unit(p2, "p2");
    const double base = 3.0 * p1 * p2;
    const double swing = (1.0 - p1) * (1.0 - p2);
    return {base - swing, base + swing};
}

ThresholdResult pauli_threshold(std::size_t i, std::size_t j, double p1, double p2) {
    if (i < 1 || i > 3 || j < 1 || j > 3)
        throw std::invalid_argument("Pauli indices must lie in 1..3");
    require_unit(p1, "p1");
    require_unit(p2, "p2");
    if (i == j)
        return from_denominator(8.0 * p1 * p2 - 4.0 * p1 - 4.0 * p2 + 3.0, "pauli_same");
    return from_denominator(4.0 * p1 * p2 - 1.0, "pauli_diff");
}

ThresholdResult amplitude_damping_threshold(double eps1, double eps2) {
    require_unit(eps1, "eps1");
    require_unit(eps2, "eps2");
    const double bracket = 1.0 - eps1 - eps2 + 2.0 * eps1 * eps2 +
                           2.0 * std::sqrt((1.0 - eps1) * (1.0 - eps2));
    return from_denominator(bracket, "amplitude_damping");
}

std::string memory_convention_name(MemorySumConvention c) {
    switch (c) {
        case MemorySumConvention::AllPairs: return "all-pairs";
        case MemorySumConvention::OffDiagonal: return "off-diagonal";
        case MemorySumConvention::PairsOnce: return "pairs-once";
    }
    throw std::invalid_argument("unknown sum convention");
}

ThresholdResult memory_threshold(double m, const std::vector<double>& probs,
                                 MemorySumConvention convention) {
    require_unit(m, "m");
    if (probs.size() != 3) throw std::invalid_argument("memory channel needs 3 probabilities");
    double sum = 0.0, sum_sq = 0.0;
    for (double p : probs) {
        require_unit(p, "probability");
        sum += p;
        sum_sq += p * p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("probabilities must sum to 1");
    double pair_sum = 0.0;
    switch (convention) {
        case MemorySumConvention::AllPairs: pair_sum = sum * sum; break;
        case MemorySumConvention::OffDiagonal: pair_sum = sum * sum - sum_sq; break;
        case MemorySumConvention::PairsOnce: pair_sum = 0.5 * (sum * sum - sum_sq); break;
    }
    return from_denominator(3.0 + 8.0 * (m - 1.0) * pair_sum,
                            "memory_" + memory_convention_name(convention));
}

ThresholdResult numeric_threshold(const NoiseSpec& noise) {
    if (!noise.is_uniform())
        throw std::invalid_argument("numeric threshold is defined for uniform noise only");
    const WitnessDecomposition decomp = werner_decomposition();
    const auto value_at = [&](double v) {
        return noisy_mdi_value(bell_setup(decomp, werner_state(v)), noise);
    };
    const double g0 = value_at(0.0);
    const double g1 = value_at(1.0);
    const double gm = value_at(0.5);
    if (std::abs(gm - 0.5 * (g0 + g1)) > 1e-10)
        throw ConsistencyError("game value is not affine in the mixing weight");
    ThresholdResult r;
    r.formula_id = "numeric";
    if (g1 >= -1e-12) {
        r.v_star = kInf;
        r.detectable = false;
        return r;
    }
    double root = g0 / (g0 - g1);
    if (std::abs(value_at(root)) > 1e-10) {
        if (g0 <= 0.0) throw ConsistencyError("no sign change to bracket the threshold");
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
            const double mid = 0.5 * (lo + hi);
            (value_at(mid) > 0.0 ? lo : hi) = mid;
        }
        root = 0.5 * (lo + hi);
    }
    r.v_star = root;
    r.detectable = root <= 1.0 + 1e-12;
    return r;
}

}  // namespace mdiew

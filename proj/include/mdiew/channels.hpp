#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "mdiew/states.hpp"

namespace mdiew {

// CPTP map as a Kraus list. validate_cptp checks trace preservation and Choi
// positivity; adjoint_channel returns the (unital, generally not
// trace-preserving) adjoint, which deliberately skips that validation.
struct KrausChannel {
    std::vector<ComplexMatrix> kraus;
    std::size_t d_in = 0;
    std::size_t d_out = 0;
};

void validate_cptp(const KrausChannel& ch);

ComplexMatrix apply_channel(const KrausChannel& ch, const ComplexMatrix& op);
ComplexMatrix apply_adjoint(const KrausChannel& ch, const ComplexMatrix& op);
ComplexMatrix choi_matrix(const KrausChannel& ch);  // dims [d_out, d_in]
KrausChannel adjoint_channel(const KrausChannel& ch);

enum class NoiseKind {
    Identity,
    White,            // per-side depolarizing mix, parameters p1, p2
    Admixture,        // per-side mix with fixed states X, Y
    PauliFlip,        // per-side probabilistic Pauli conjugation (indices i, j)
    AmplitudeDamping, // per-side damping with eps1, eps2
    CorrelatedPauli,  // joint sigma_i x sigma_j mixture with memory parameter m
    NonUniformProduct,// per-index replacement mix toward a fixed pure state
    EntanglingPure    // coherent two-branch superposition of pure product inputs
};

std::string noise_kind_name(NoiseKind kind);

// Tagged union over the supported noise processes on the joint quantum inputs.
// Uniform kinds have an (s,t)-independent Kraus form; the two non-uniform kinds
// depend on the input indices.
struct NoiseSpec {
    NoiseKind kind = NoiseKind::Identity;

    double p1 = 1.0, p2 = 1.0;                  // White, Admixture, PauliFlip
    std::optional<DensityMatrix> X, Y;          // Admixture targets
    std::size_t i = 1, j = 1;                   // PauliFlip indices in 1..3
    double eps1 = 0.0, eps2 = 0.0;              // AmplitudeDamping
    double m = 1.0;                             // CorrelatedPauli memory weight
    std::vector<double> probs;                  // CorrelatedPauli (sums to 1)
    bool include_identity_index = false;        // CorrelatedPauli over {0..3}
    double q = 0.0;                             // NonUniformProduct scale
    BlochVector theta{0.0, 0.0, 1.0};           // NonUniformProduct target (unit)
    std::vector<double> table_a, table_b;       // NonUniformProduct per-index probabilities
    double p = 0.0;                             // EntanglingPure branch weight

    static NoiseSpec identity();
    static NoiseSpec white(double p1, double p2);
    static NoiseSpec admixture(double p1, double p2, DensityMatrix x, DensityMatrix y);
    static NoiseSpec pauli_flip(std::size_t i, std::size_t j, double p1, double p2);
    static NoiseSpec amplitude_damping(double eps1, double eps2);
    static NoiseSpec correlated_pauli(double m, std::vector<double> probs,
                                      bool include_identity_index = false);
    // Builds the demo tables (q, q, q, 0) / (0, 0, 0, q).
    static NoiseSpec nonuniform_product(double q, BlochVector theta);
    static NoiseSpec nonuniform_tables(std::vector<double> table_a, std::vector<double> table_b,
                                       BlochVector theta);
    static NoiseSpec entangling_pure(double p);

    bool is_uniform() const {
        return kind != NoiseKind::NonUniformProduct && kind != NoiseKind::EntanglingPure;
    }
    bool is_local() const {
        return kind == NoiseKind::Identity || kind == NoiseKind::White ||
               kind == NoiseKind::Admixture || kind == NoiseKind::PauliFlip ||
               kind == NoiseKind::AmplitudeDamping || kind == NoiseKind::NonUniformProduct;
    }
};

// Joint 4x4 Kraus form. Uniform kinds ignore (s, t); NonUniformProduct selects
// its per-side mixing probabilities by them. EntanglingPure has no fixed Kraus
// form and is rejected.
KrausChannel to_kraus(const NoiseSpec& noise, std::size_t s = 0, std::size_t t = 0);

// Channel output for the joint input. EntanglingPure requires a pure product
// input (it rebuilds the pure factors from the partial traces).
DensityMatrix apply_noise(const NoiseSpec& noise, std::size_t s, std::size_t t,
                          const DensityMatrix& joint_input);

struct SeparabilityVerdict {
    bool pass = true;
    double worst_pt_eigenvalue = 0.0;  // most negative partial-transpose eigenvalue seen
    std::size_t skipped = 0;           // zero-trace adjoint outputs
    std::size_t counterexample_trial = 0;
};

// Samples seeded product PSD operators, pushes them through the adjoint map and
// tests the normalized outputs with the 2x2 PPT criterion (exact there).
SeparabilityVerdict adjoint_preserves_separability(const NoiseSpec& noise, std::size_t trials,
                                                   std::uint64_t seed);

struct CatalogEntry {
    std::string name;
    NoiseSpec spec;
};

// Representative uniform channels used by the verification suites.
std::vector<CatalogEntry> uniform_catalog();

nlohmann::json noise_to_json(const NoiseSpec& noise);
NoiseSpec noise_from_json(const nlohmann::json& j);

}  // namespace mdiew

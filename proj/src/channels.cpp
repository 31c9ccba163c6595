#include "mdiew/channels.hpp"

#include <cmath>
#include <utility>

namespace mdiew {

namespace {

void require_prob(double p, const char* name) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " +
                                    std::to_string(p));
}

// Per-side Kraus lists for the local noise kinds.
std::vector<ComplexMatrix> depolarizing_kraus(double p) {
    std::vector<ComplexMatrix> out;
    const double w0 = (1.0 + 3.0 * p) / 4.0;
    const double w = (1.0 - p) / 4.0;
    if (w0 > 0.0) out.push_back(std::sqrt(w0) * pauli(0));
    if (w > 0.0)
        for (std::size_t k = 1; k < 4; ++k) out.push_back(std::sqrt(w) * pauli(k));
    return out;
}

// Replacement mix p*rho + (1-p)*target*Tr(rho); the replacement part uses one
// Kraus operator per (eigenvector of target, basis column) pair.
std::vector<ComplexMatrix> replacement_kraus(double p, const ComplexMatrix& target) {
    std::vector<ComplexMatrix> out;
    if (p > 0.0) out.push_back(std::sqrt(p) * ComplexMatrix::identity(2));
    if (p < 1.0) {
        const EigenSystem eig = hermitian_eigensystem(target);
        for (std::size_t k = 0; k < eig.values.size(); ++k) {
            const double lambda = eig.values[k];
            if (lambda < 1e-14) continue;
            cvec x(2);
            for (std::size_t r = 0; r < 2; ++r) x[r] = eig.vectors(r, k);
            for (std::size_t l = 0; l < 2; ++l) {
                cvec e(2, complexd{0.0, 0.0});
                e[l] = 1.0;
                out.push_back(std::sqrt((1.0 - p) * lambda) * matvec_outer(x, e));
            }
        }
    }
    return out;
}

std::vector<ComplexMatrix> pauli_flip_kraus(double p, std::size_t index) {
    std::vector<ComplexMatrix> out;
    if (p > 0.0) out.push_back(std::sqrt(p) * pauli(0));
    if (p < 1.0) out.push_back(std::sqrt(1.0 - p) * pauli(index));
    return out;
}

std::vector<ComplexMatrix> amplitude_damping_kraus(double eps) {
    std::vector<ComplexMatrix> out;
    out.push_back(ComplexMatrix{{1.0, 0.0}, {0.0, std::sqrt(1.0 - eps)}});
    if (eps > 0.0) out.push_back(ComplexMatrix{{0.0, std::sqrt(eps)}, {0.0, 0.0}});
    return out;
}

KrausChannel join_local(const std::vector<ComplexMatrix>& side_a,
                        const std::vector<ComplexMatrix>& side_b) {
    KrausChannel ch;
    ch.d_in = 4;
    ch.d_out = 4;
    for (const auto& a : side_a)
        for (const auto& b : side_b) ch.kraus.push_back(kron(a, b));
    return ch;
}

// Canonical gauge: scale so the first component above amplitude 1e-8 becomes
// real positive. The entangling construction needs a deterministic phase; the
// raw eigensolver phase would leak into the branch interference.
cvec gauge_fixed(cvec v) {
    for (const auto& a : v) {
        const double mag = std::abs(a);
        if (mag > 1e-8) {
            const complexd scale = std::conj(a) / mag;
            for (auto& b : v) b *= scale;
            break;
        }
    }
    return v;
}

cvec pure_factor(const ComplexMatrix& rho, const char* side) {
    const EigenSystem eig = hermitian_eigensystem(rho);
    const double top = eig.values.back();
    if (std::abs(top - 1.0) > 1e-10)
        throw std::invalid_argument(std::string("entangling noise needs pure inputs; ") + side +
                                    " factor has top eigenvalue " + std::to_string(top));
    cvec v(rho.rows());
    for (std::size_t r = 0; r < v.size(); ++r) v[r] = eig.vectors(r, eig.values.size() - 1);
    return gauge_fixed(std::move(v));
}

// Orthogonal companion of (a, b): (conj(b), -conj(a)).
cvec perp_of(const cvec& v) { return {std::conj(v[1]), -std::conj(v[0])}; }

}  // namespace

void validate_cptp(const KrausChannel& ch) {
    if (ch.kraus.empty()) throw ChannelContractError("channel has no Kraus operators");
    ComplexMatrix acc(ch.d_in, ch.d_in);
    for (const auto& k : ch.kraus) {
        if (k.rows() != ch.d_out || k.cols() != ch.d_in)
            throw ChannelContractError("Kraus operator shape does not match channel dimensions");
        acc += dagger(k) * k;
    }
    const double tp_dev = max_abs_diff(acc, ComplexMatrix::identity(ch.d_in));
    if (tp_dev > 1e-10)
        throw ChannelContractError("channel is not trace preserving (deviation " +
                                   std::to_string(tp_dev) + ")");
    const double min_eig = hermitian_eigenvalues(choi_matrix(ch)).front();
    if (min_eig < -1e-9)
        throw ChannelContractError("Choi matrix has negative eigenvalue " + std::to_string(min_eig));
}

ComplexMatrix apply_channel(const KrausChannel& ch, const ComplexMatrix& op) {
    if (op.rows() != ch.d_in || op.cols() != ch.d_in)
        throw DimensionError("channel input dimension mismatch");
    ComplexMatrix acc(ch.d_out, ch.d_out);
    for (const auto& k : ch.kraus) acc += k * op * dagger(k);
    return acc;
}

ComplexMatrix apply_adjoint(const KrausChannel& ch, const ComplexMatrix& op) {
    if (op.rows() != ch.d_out || op.cols() != ch.d_out)
        throw DimensionError("adjoint input dimension mismatch");
    ComplexMatrix acc(ch.d_in, ch.d_in);
    for (const auto& k : ch.kraus) acc += dagger(k) * op * k;
    return acc;
}

ComplexMatrix choi_matrix(const KrausChannel& ch) {
    // sum_mu |v_mu><v_mu| with v_mu the row-major vectorization of M_mu,
    // composite index (out, in).
    ComplexMatrix acc(ch.d_out * ch.d_in, ch.d_out * ch.d_in);
    for (const auto& k : ch.kraus) {
        cvec v(ch.d_out * ch.d_in);
        for (std::size_t i = 0; i < ch.d_out; ++i)
            for (std::size_t j = 0; j < ch.d_in; ++j) v[i * ch.d_in + j] = k(i, j);
        acc += matvec_outer(v, v);
    }
    return acc;
}

KrausChannel adjoint_channel(const KrausChannel& ch) {
    KrausChannel out;
    out.d_in = ch.d_out;
    out.d_out = ch.d_in;
    for (const auto& k : ch.kraus) out.kraus.push_back(dagger(k));
    return out;
}

std::string noise_kind_name(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::Identity: return "identity";
        case NoiseKind::White: return "white";
        case NoiseKind::Admixture: return "admixture";
        case NoiseKind::PauliFlip: return "pauli_flip";
        case NoiseKind::AmplitudeDamping: return "amplitude_damping";
        case NoiseKind::CorrelatedPauli: return "correlated_pauli";
        case NoiseKind::NonUniformProduct: return "nonuniform_product";
        case NoiseKind::EntanglingPure: return "entangling_pure";
    }
    throw std::invalid_argument("unknown noise kind");
}

NoiseSpec NoiseSpec::identity() {
    NoiseSpec n;
    n.kind = NoiseKind::Identity;
    return n;
}

NoiseSpec NoiseSpec::white(double p1, double p2) {
    require_prob(p1, "p1");
    require_prob(p2, "p2");
    NoiseSpec n;
    n.kind = NoiseKind::White;
    n.p1 = p1;
    n.p2 = p2;
    return n;
}

NoiseSpec NoiseSpec::admixture(double p1, double p2, DensityMatrix x, DensityMatrix y) {
    require_prob(p1, "p1");
    require_prob(p2, "p2");
    if (x.dim() != 2 || y.dim() != 2)
        throw std::invalid_argument("admixture targets must be qubit states");
    NoiseSpec n;
    n.kind = NoiseKind::Admixture;
    n.p1 = p1;
    n.p2 = p2;
    n.X = std::move(x);
    n.Y = std::move(y);
    return n;
}

NoiseSpec NoiseSpec::pauli_flip(std::size_t i, std::size_t j, double p1, double p2) {
    if (i < 1 || i > 3 || j < 1 || j > 3)
        throw std::invalid_argument("Pauli flip indices must lie in 1..3");
    require_prob(p1, "p1");
    require_prob(p2, "p2");
    NoiseSpec n;
    n.kind = NoiseKind::PauliFlip;
    n.i = i;
    n.j = j;
    n.p1 = p1;
    n.p2 = p2;
    return n;
}

NoiseSpec NoiseSpec::amplitude_damping(double eps1, double eps2) {
    require_prob(eps1, "eps1");
    require_prob(eps2, "eps2");
    NoiseSpec n;
    n.kind = NoiseKind::AmplitudeDamping;
    n.eps1 = eps1;
    n.eps2 = eps2;
    return n;
}

NoiseSpec NoiseSpec::correlated_pauli(double m, std::vector<double> probs,
                                      bool include_identity_index) {
    require_prob(m, "m");
    const std::size_t expected = include_identity_index ? 4 : 3;
    if (probs.size() != expected)
        throw std::invalid_argument("correlated Pauli needs " + std::to_string(expected) +
                                    " probabilities");
    double sum = 0.0;
    for (double p : probs) {
        require_prob(p, "probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("correlated Pauli probabilities must sum to 1");
    NoiseSpec n;
    n.kind = NoiseKind::CorrelatedPauli;
    n.m = m;
    n.probs = std::move(probs);
    n.include_identity_index = include_identity_index;
    return n;
}

NoiseSpec NoiseSpec::nonuniform_product(double q, BlochVector theta) {
    require_prob(q, "q");
    return nonuniform_tables({q, q, q, 0.0}, {0.0, 0.0, 0.0, q}, theta);
}

NoiseSpec NoiseSpec::nonuniform_tables(std::vector<double> table_a, std::vector<double> table_b,
                                       BlochVector theta) {
    if (table_a.empty() || table_b.empty())
        throw std::invalid_argument("per-index probability tables must be nonempty");
    for (double p : table_a) require_prob(p, "table entry");
    for (double p : table_b) require_prob(p, "table entry");
    if (std::abs(theta.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("replacement target must be a pure (unit Bloch) state");
    NoiseSpec n;
    n.kind = NoiseKind::NonUniformProduct;
    n.q = table_a[0];
    n.theta = theta;
    n.table_a = std::move(table_a);
    n.table_b = std::move(table_b);
    return n;
}

NoiseSpec NoiseSpec::entangling_pure(double p) {
    require_prob(p, "p");
    NoiseSpec n;
    n.kind = NoiseKind::EntanglingPure;
    n.p = p;
    return n;
}

KrausChannel to_kraus(const NoiseSpec& noise, std::size_t s, std::size_t t) {
    switch (noise.kind) {
        case NoiseKind::Identity:
            return join_local({ComplexMatrix::identity(2)}, {ComplexMatrix::identity(2)});
        case NoiseKind::White:
            return join_local(depolarizing_kraus(noise.p1), depolarizing_kraus(noise.p2));
        case NoiseKind::Admixture:
            return join_local(replacement_kraus(noise.p1, noise.X->op()),
                              replacement_kraus(noise.p2, noise.Y->op()));
        case NoiseKind::PauliFlip:
            return join_local(pauli_flip_kraus(noise.p1, noise.i),
                              pauli_flip_kraus(noise.p2, noise.j));
        case NoiseKind::AmplitudeDamping:
            return join_local(amplitude_damping_kraus(noise.eps1),
                              amplitude_damping_kraus(noise.eps2));
        case NoiseKind::CorrelatedPauli: {
            KrausChannel ch;
            ch.d_in = 4;
            ch.d_out = 4;
            const std::size_t base = noise.include_identity_index ? 0 : 1;
            for (std::size_t i = 0; i < noise.probs.size(); ++i) {
                for (std::size_t j = 0; j < noise.probs.size(); ++j) {
                    double w = (1.0 - noise.m) * noise.probs[i] * noise.probs[j];
                    if (i == j) w += noise.m * noise.probs[j];
                    if (w <= 0.0) continue;
                    ch.kraus.push_back(std::sqrt(w) * kron(pauli(base + i), pauli(base + j)));
                }
            }
            return ch;
        }
        case NoiseKind::NonUniformProduct: {
            if (s >= noise.table_a.size() || t >= noise.table_b.size())
                throw std::invalid_argument("input index outside the probability tables");
            const ComplexMatrix target =
                bloch_state(noise.theta).op();
            return join_local(replacement_kraus(noise.table_a[s], target),
                              replacement_kraus(noise.table_b[t], target));
        }
        case NoiseKind::EntanglingPure:
            throw std::invalid_argument(
                "entangling noise has no fixed Kraus form; apply it to pure product inputs");
    }
    throw std::invalid_argument("unknown noise kind");
}

DensityMatrix apply_noise(const NoiseSpec& noise, std::size_t s, std::size_t t,
                          const DensityMatrix& joint_input) {
    if (joint_input.dim() != 4) throw DimensionError("joint input must live on a 2x2 space");
    if (noise.kind == NoiseKind::EntanglingPure) {
        const cvec psi_a = pure_factor(partial_trace(joint_input.op(), joint_input.dims(), {0}),
                                       "first");
        const cvec psi_b = pure_factor(partial_trace(joint_input.op(), joint_input.dims(), {1}),
                                       "second");
        const cvec perp_a = perp_of(psi_a);
        const cvec perp_b = perp_of(psi_b);
        const double w_keep = std::sqrt((1.0 + noise.p) / 2.0);
        const double w_flip = std::sqrt((1.0 - noise.p) / 2.0);
        cvec chi = kron_vec(psi_a, psi_b);
        const cvec flipped = kron_vec(perp_a, perp_b);
        for (std::size_t k = 0; k < chi.size(); ++k) chi[k] = w_keep * chi[k] + w_flip * flipped[k];
        return pure_density(chi, DimFactorization{2, 2});
    }
    const KrausChannel ch = to_kraus(noise, s, t);
    ComplexMatrix out = apply_channel(ch, joint_input.op());
    const double trace_dev = std::abs(trace(out) - complexd{1.0, 0.0});
    if (trace_dev > 1e-9)
        throw ChannelContractError("channel output trace deviates by " + std::to_string(trace_dev));
    return DensityMatrix(std::move(out), DimFactorization{2, 2});
}

SeparabilityVerdict adjoint_preserves_separability(const NoiseSpec& noise, std::size_t trials,
                                                   std::uint64_t seed) {
    if (!noise.is_uniform())
        throw std::invalid_argument("separability preservation applies to uniform noise only");
    const KrausChannel ch = to_kraus(noise);
    SeparabilityVerdict verdict;
    verdict.worst_pt_eigenvalue = 0.0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        Rng rng(seed + trial);
        const ComplexMatrix a = random_psd(2, rng);
        const ComplexMatrix b = random_psd(2, rng);
        const ComplexMatrix pushed = apply_adjoint(ch, kron(a, b));
        const double tr = trace(pushed).real();
        if (std::abs(tr) < 1e-12) {
            ++verdict.skipped;
            emit_warning("adjoint output with zero trace skipped (trial " + std::to_string(trial) +
                         ")");
            continue;
        }
        const ComplexMatrix normalized = (1.0 / tr) * pushed;
        const ComplexMatrix pt = partial_transpose(normalized, DimFactorization{2, 2}, 1);
        const double min_eig = hermitian_eigenvalues(pt).front();
        if (min_eig < verdict.worst_pt_eigenvalue) verdict.worst_pt_eigenvalue = min_eig;
        if (min_eig < -1e-9 && verdict.pass) {
            verdict.pass = false;
            verdict.counterexample_trial = trial;
        }
    }
    return verdict;
}

std::vector<CatalogEntry> uniform_catalog() {
    std::vector<CatalogEntry> out;
    out.push_back({"identity", NoiseSpec::identity()});
    out.push_back({"white(0.7,0.4)", NoiseSpec::white(0.7, 0.4)});
    out.push_back({"white(0.25,0.9)", NoiseSpec::white(0.25, 0.9)});
    out.push_back({"admixture(0.6,0.3)",
                   NoiseSpec::admixture(0.6, 0.3, bloch_state({0.3, -0.2, 0.5}),
                                        bloch_state({-0.1, 0.4, -0.8}))});
    out.push_back({"pauli_flip(1,1,0.8,0.3)", NoiseSpec::pauli_flip(1, 1, 0.8, 0.3)});
    out.push_back({"pauli_flip(2,3,0.45,0.85)", NoiseSpec::pauli_flip(2, 3, 0.45, 0.85)});
    out.push_back({"amplitude_damping(0.35,0.6)", NoiseSpec::amplitude_damping(0.35, 0.6)});
    out.push_back({"correlated_pauli(0.5)", NoiseSpec::correlated_pauli(0.5, {0.5, 0.3, 0.2})});
    out.push_back({"correlated_pauli(0.0)",
                   NoiseSpec::correlated_pauli(0.0, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0})});
    out.push_back({"correlated_pauli(0.7,id)",
                   NoiseSpec::correlated_pauli(0.7, {0.4, 0.2, 0.2, 0.2}, true)});
    return out;
}

nlohmann::json noise_to_json(const NoiseSpec& noise) {
    nlohmann::json j;
    j["kind"] = noise_kind_name(noise.kind);
    switch (noise.kind) {
        case NoiseKind::Identity:
            break;
        case NoiseKind::White:
            j["p1"] = noise.p1;
            j["p2"] = noise.p2;
            break;
        case NoiseKind::Admixture: {
            j["p1"] = noise.p1;
            j["p2"] = noise.p2;
            j["X"] = nlohmann::json::array();
            j["Y"] = nlohmann::json::array();
            for (std::size_t r = 0; r < 2; ++r) {
                nlohmann::json xrow = nlohmann::json::array(), yrow = nlohmann::json::array();
                for (std::size_t c = 0; c < 2; ++c) {
                    xrow.push_back({noise.X->op()(r, c).real(), noise.X->op()(r, c).imag()});
                    yrow.push_back({noise.Y->op()(r, c).real(), noise.Y->op()(r, c).imag()});
                }
                j["X"].push_back(std::move(xrow));
                j["Y"].push_back(std::move(yrow));
            }
            break;
        }
        case NoiseKind::PauliFlip:
            j["i"] = noise.i;
            j["j"] = noise.j;
            j["p1"] = noise.p1;
            j["p2"] = noise.p2;
            break;
        case NoiseKind::AmplitudeDamping:
            j["eps1"] = noise.eps1;
            j["eps2"] = noise.eps2;
            break;
        case NoiseKind::CorrelatedPauli:
            j["m"] = noise.m;
            j["probs"] = noise.probs;
            j["include_identity_index"] = noise.include_identity_index;
            break;
        case NoiseKind::NonUniformProduct:
            j["q"] = noise.q;
            j["theta"] = {noise.theta.n1, noise.theta.n2, noise.theta.n3};
            j["table_a"] = noise.table_a;
            j["table_b"] = noise.table_b;
            break;
        case NoiseKind::EntanglingPure:
            j["p"] = noise.p;
            break;
    }
    return j;
}

NoiseSpec noise_from_json(const nlohmann::json& j) {
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "identity") return NoiseSpec::identity();
        if (kind == "white")
            return NoiseSpec::white(j.at("p1").get<double>(), j.at("p2").get<double>());
        if (kind == "admixture") {
            auto read_state = [&](const char* key) {
                ComplexMatrix m(2, 2);
                const auto& rows = j.at(key);
                for (std::size_t r = 0; r < 2; ++r)
                    for (std::size_t c = 0; c < 2; ++c)
                        m(r, c) = complexd{rows.at(r).at(c).at(0).get<double>(),
                                           rows.at(r).at(c).at(1).get<double>()};
                return DensityMatrix(std::move(m), DimFactorization{2});
            };
            return NoiseSpec::admixture(j.at("p1").get<double>(), j.at("p2").get<double>(),
                                        read_state("X"), read_state("Y"));
        }
        if (kind == "pauli_flip")
            return NoiseSpec::pauli_flip(j.at("i").get<std::size_t>(), j.at("j").get<std::size_t>(),
                                         j.at("p1").get<double>(), j.at("p2").get<double>());
        if (kind == "amplitude_damping")
            return NoiseSpec::amplitude_damping(j.at("eps1").get<double>(),
                                                j.at("eps2").get<double>());
        if (kind == "correlated_pauli")
            return NoiseSpec::correlated_pauli(j.at("m").get<double>(),
                                               j.at("probs").get<std::vector<double>>(),
                                               j.value("include_identity_index", false));
        if (kind == "nonuniform_product") {
            const auto th = j.at("theta").get<std::vector<double>>();
            if (th.size() != 3) throw ConfigError("theta must have three components");
            return NoiseSpec::nonuniform_tables(j.at("table_a").get<std::vector<double>>(),
                                                j.at("table_b").get<std::vector<double>>(),
                                                BlochVector{th[0], th[1], th[2]});
        }
        if (kind == "entangling_pure") return NoiseSpec::entangling_pure(j.at("p").get<double>());
        throw ConfigError("unknown noise kind: " + kind);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid noise JSON: ") + e.what());
    }
}

}  // namespace mdiew

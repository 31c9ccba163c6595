#include "mdiew/witness.hpp"

#include <cmath>
#include <string>

namespace mdiew {

WitnessOperator::WitnessOperator(ComplexMatrix o, DimFactorization d)
    : op(std::move(o)), dims(std::move(d)) {
    if (!op.is_square() || op.rows() != dims.total())
        throw DimensionError("witness operator dimension does not match its factorization");
    const double hdev = hermiticity_deviation(op);
    if (hdev > 1e-10)
        throw NumericContractError("witness operator not Hermitian (deviation " +
                                   std::to_string(hdev) + ")");
}

WitnessOperator werner_witness() {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    cvec singlet{0.0, inv_sqrt2, -inv_sqrt2, 0.0};
    ComplexMatrix w = 0.5 * ComplexMatrix::identity(4);
    w -= matvec_outer(singlet, singlet);
    return WitnessOperator(std::move(w), DimFactorization{2, 2});
}

WitnessDecomposition werner_decomposition() {
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    const DensityMatrix root = bloch_state({inv_sqrt3, inv_sqrt3, inv_sqrt3});
    std::vector<DensityMatrix> family;
    family.reserve(4);
    family.push_back(root);
    for (std::size_t k = 1; k < 4; ++k) {
        const ComplexMatrix sigma = pauli(k);
        family.emplace_back(sigma * root.op() * sigma, DimFactorization{2});
    }
    WitnessDecomposition d;
    d.beta.assign(4, std::vector<double>(4, -1.0 / 8.0));
    for (std::size_t s = 0; s < 4; ++s) d.beta[s][s] = 5.0 / 8.0;
    d.tau = family;
    d.omega = family;
    return d;
}

double expectation(const WitnessOperator& w, const DensityMatrix& rho) {
    if (w.op.rows() != rho.dim()) throw DimensionError("witness and state dimensions differ");
    const complexd t = trace_product(w.op, rho.op());
    if (std::abs(t.imag()) > 1e-8)
        throw NumericContractError("witness expectation has imaginary residue " +
                                   std::to_string(t.imag()));
    return t.real();
}

WitnessOperator reconstruct(const WitnessDecomposition& d) {
    if (d.beta.empty() || d.tau.empty() || d.omega.empty())
        throw std::invalid_argument("decomposition must have coefficients and both families");
    if (d.beta.size() != d.tau.size())
        throw std::invalid_argument("beta row count must match the tau family size");
    const std::size_t da = d.d_alice();
    const std::size_t db = d.d_bob();
    ComplexMatrix acc(da * db, da * db);
    for (std::size_t s = 0; s < d.tau.size(); ++s) {
        if (d.beta[s].size() != d.omega.size())
            throw std::invalid_argument("beta column count must match the omega family size");
        const ComplexMatrix tau_t = transpose(d.tau[s].op());
        for (std::size_t t = 0; t < d.omega.size(); ++t) {
            if (d.beta[s][t] == 0.0) continue;
            acc += d.beta[s][t] * kron(tau_t, transpose(d.omega[t].op()));
        }
    }
    return WitnessOperator(std::move(acc), DimFactorization{da, db});
}

double verify_decomposition(const WitnessDecomposition& d, const WitnessOperator& w) {
    const WitnessOperator rebuilt = reconstruct(d);
    if (rebuilt.op.rows() != w.op.rows())
        throw std::invalid_argument("decomposition dimension does not match the witness");
    return max_abs_diff(rebuilt.op, w.op);
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) throw ConfigError("matrix JSON must be a nonempty row array");
    const std::size_t rows = j.size();
    const std::size_t cols = j.at(0).size();
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const auto& row = j.at(i);
        if (!row.is_array() || row.size() != cols) throw ConfigError("ragged matrix JSON");
        for (std::size_t c = 0; c < cols; ++c) {
            const auto& cell = row.at(c);
            if (!cell.is_array() || cell.size() != 2)
                throw ConfigError("matrix entries must be [re, im] pairs");
            m(i, c) = complexd{cell.at(0).get<double>(), cell.at(1).get<double>()};
        }
    }
    return m;
}

nlohmann::json decomposition_to_json(const WitnessDecomposition& d) {
    nlohmann::json j;
    j["beta"] = d.beta;
    j["tau"] = nlohmann::json::array();
    for (const auto& s : d.tau) j["tau"].push_back(matrix_to_json(s.op()));
    j["omega"] = nlohmann::json::array();
    for (const auto& s : d.omega) j["omega"].push_back(matrix_to_json(s.op()));
    return j;
}

WitnessDecomposition decomposition_from_json(const nlohmann::json& j) {
    WitnessDecomposition d;
    try {
        d.beta = j.at("beta").get<std::vector<std::vector<double>>>();
        for (const auto& m : j.at("tau")) {
            ComplexMatrix op = matrix_from_json(m);
            DimFactorization dims{std::vector<std::size_t>{op.rows()}};
            d.tau.emplace_back(std::move(op), std::move(dims));
        }
        for (const auto& m : j.at("omega")) {
            ComplexMatrix op = matrix_from_json(m);
            DimFactorization dims{std::vector<std::size_t>{op.rows()}};
            d.omega.emplace_back(std::move(op), std::move(dims));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid decomposition JSON: ") + e.what());
    }
    if (d.beta.size() != d.tau.size()) throw ConfigError("beta rows must match the tau family size");
    for (const auto& row : d.beta)
        if (row.size() != d.omega.size()) throw ConfigError("beta columns must match the omega family size");
    return d;
}

}  // namespace mdiew

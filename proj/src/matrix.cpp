#include "mdiew/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

namespace mdiew {

namespace {

WarningHandler g_warning_handler;  // empty -> stderr default

void check_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("matrix shapes differ: " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                             std::to_string(b.cols()));
}

void check_square_total(const ComplexMatrix& m, const DimFactorization& dims) {
    if (!m.is_square()) throw DimensionError("operation requires a square matrix");
    if (m.rows() != dims.total())
        throw DimensionError("factorization total " + std::to_string(dims.total()) +
                             " does not match matrix dimension " + std::to_string(m.rows()));
}

std::vector<std::size_t> strides_of(const DimFactorization& dims) {
    std::vector<std::size_t> strides(dims.size());
    std::size_t acc = 1;
    for (std::size_t f = dims.size(); f-- > 0;) {
        strides[f] = acc;
        acc *= dims.factors[f];
    }
    return strides;
}

void unpack(std::size_t index, const DimFactorization& dims, const std::vector<std::size_t>& strides,
            std::vector<std::size_t>& digits) {
    for (std::size_t f = 0; f < dims.size(); ++f) {
        digits[f] = (index / strides[f]) % dims.factors[f];
    }
}

}  // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
    WarningHandler previous = std::move(g_warning_handler);
    g_warning_handler = std::move(handler);
    return previous;
}

void emit_warning(const std::string& message) {
    if (g_warning_handler) {
        g_warning_handler(message);
    } else {
        std::fprintf(stderr, "warning: %s\n", message.c_str());
    }
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    check_same_shape(*this, o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    check_same_shape(*this, o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(complexd scale) {
    for (auto& e : entries_) e *= scale;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const complexd aik = a(i, k);
            if (aik == complexd{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

ComplexMatrix operator*(complexd scale, ComplexMatrix m) { return m *= scale; }
ComplexMatrix operator*(ComplexMatrix m, complexd scale) { return m *= scale; }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t max_dim) {
    const std::size_t rows = a.rows() * b.rows();
    const std::size_t cols = a.cols() * b.cols();
    if (rows > max_dim || cols > max_dim)
        throw SizeError("kron result " + std::to_string(rows) + "x" + std::to_string(cols) +
                        " exceeds the dimension cap " + std::to_string(max_dim));
    ComplexMatrix out(rows, cols);
    for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
        for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
            const complexd av = a(i1, j1);
            if (av == complexd{0.0, 0.0}) continue;
            for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
                for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
                    out(i1 * b.rows() + i2, j1 * b.cols() + j2) = av * b(i2, j2);
        }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const DimFactorization& dims,
                            std::vector<std::size_t> keep) {
    check_square_total(m, dims);
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    if (keep.empty()) throw std::invalid_argument("keep set must be nonempty");
    for (std::size_t f : keep)
        if (f >= dims.size()) throw std::invalid_argument("keep index out of range");

    std::vector<std::size_t> kept_dims;
    for (std::size_t f : keep) kept_dims.push_back(dims.factors[f]);
    DimFactorization out_dims{std::vector<std::size_t>(kept_dims)};
    const auto strides = strides_of(dims);
    const auto out_strides = strides_of(out_dims);

    std::vector<bool> is_kept(dims.size(), false);
    for (std::size_t f : keep) is_kept[f] = true;

    const std::size_t n = dims.total();
    ComplexMatrix out(out_dims.total(), out_dims.total());
    std::vector<std::size_t> di(dims.size()), dj(dims.size());
    for (std::size_t i = 0; i < n; ++i) {
        unpack(i, dims, strides, di);
        for (std::size_t j = 0; j < n; ++j) {
            unpack(j, dims, strides, dj);
            bool diagonal_on_traced = true;
            for (std::size_t f = 0; f < dims.size(); ++f) {
                if (!is_kept[f] && di[f] != dj[f]) {
                    diagonal_on_traced = false;
                    break;
                }
            }
            if (!diagonal_on_traced) continue;
            std::size_t oi = 0, oj = 0;
            for (std::size_t k = 0; k < keep.size(); ++k) {
                oi += di[keep[k]] * out_strides[k];
                oj += dj[keep[k]] * out_strides[k];
            }
            out(oi, oj) += m(i, j);
        }
    }
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const DimFactorization& dims,
                                std::size_t subsystem) {
    check_square_total(m, dims);
    if (subsystem >= dims.size()) throw std::invalid_argument("subsystem index out of range");
    const auto strides = strides_of(dims);
    const std::size_t n = dims.total();
    ComplexMatrix out(n, n);
    std::vector<std::size_t> di(dims.size()), dj(dims.size());
    for (std::size_t i = 0; i < n; ++i) {
        unpack(i, dims, strides, di);
        for (std::size_t j = 0; j < n; ++j) {
            unpack(j, dims, strides, dj);
            const std::size_t s = strides[subsystem];
            const std::size_t ti = i - di[subsystem] * s + dj[subsystem] * s;
            const std::size_t tj = j - dj[subsystem] * s + di[subsystem] * s;
            out(ti, tj) = m(i, j);
        }
    }
    return out;
}

ComplexMatrix reorder_subsystems(const ComplexMatrix& m, const DimFactorization& dims,
                                 const std::vector<std::size_t>& order) {
    check_square_total(m, dims);
    if (order.size() != dims.size()) throw std::invalid_argument("order must list every factor once");
    std::vector<bool> seen(dims.size(), false);
    for (std::size_t f : order) {
        if (f >= dims.size() || seen[f]) throw std::invalid_argument("order is not a permutation");
        seen[f] = true;
    }
    std::vector<std::size_t> new_factors(dims.size());
    for (std::size_t k = 0; k < order.size(); ++k) new_factors[k] = dims.factors[order[k]];
    DimFactorization new_dims{std::vector<std::size_t>(new_factors)};
    const auto strides = strides_of(dims);
    const auto new_strides = strides_of(new_dims);

    const std::size_t n = dims.total();
    ComplexMatrix out(n, n);
    std::vector<std::size_t> di(dims.size()), dj(dims.size());
    for (std::size_t i = 0; i < n; ++i) {
        unpack(i, dims, strides, di);
        for (std::size_t j = 0; j < n; ++j) {
            unpack(j, dims, strides, dj);
            std::size_t ni = 0, nj = 0;
            for (std::size_t k = 0; k < order.size(); ++k) {
                ni += di[order[k]] * new_strides[k];
                nj += dj[order[k]] * new_strides[k];
            }
            out(ni, nj) = m(i, j);
        }
    }
    return out;
}

ComplexMatrix dagger(const ComplexMatrix& m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
    return out;
}

ComplexMatrix transpose(const ComplexMatrix& m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
    return out;
}

ComplexMatrix conjugate(const ComplexMatrix& m) {
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = std::conj(m(i, j));
    return out;
}

complexd trace(const ComplexMatrix& m) {
    if (!m.is_square()) throw DimensionError("trace requires a square matrix");
    complexd t{0.0, 0.0};
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

complexd trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols())
        throw DimensionError("trace_product shape mismatch");
    complexd t{0.0, 0.0};
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t += a(i, j) * b(j, i);
    return t;
}

double max_abs(const ComplexMatrix& m) {
    double mx = 0.0;
    for (const auto& e : m.entries()) mx = std::max(mx, std::abs(e));
    return mx;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same_shape(a, b);
    double mx = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) mx = std::max(mx, std::abs(a(i, j) - b(i, j)));
    return mx;
}

double hermiticity_deviation(const ComplexMatrix& m) {
    if (!m.is_square()) throw DimensionError("hermiticity check requires a square matrix");
    double mx = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            mx = std::max(mx, std::abs(m(i, j) - std::conj(m(j, i))));
    return mx;
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) acc += std::norm(a(i, j));
    return std::sqrt(acc);
}

}  // namespace

// Cyclic Jacobi for complex Hermitian matrices. Each (p,q) rotation first
// absorbs the phase of a_pq into a diagonal unitary, then applies the real
// Jacobi rotation that zeroes the now-real off-diagonal entry:
//   J(p,p) = e^{i phi} c,  J(p,q) = e^{i phi} s,  J(q,p) = -s,  J(q,q) = c,
// with phi = arg(a_pq), tau = (a_qq - a_pp) / (2 |a_pq|),
// t = sign(tau) / (|tau| + sqrt(1 + tau^2)), c = 1/sqrt(1+t^2), s = t c.
EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
    if (!m.is_square()) throw DimensionError("eigensolve requires a square matrix");
    const double herm_dev = hermiticity_deviation(m);
    if (herm_dev > 1e-10)
        throw NumericContractError("matrix is not Hermitian (max deviation " +
                                   std::to_string(herm_dev) + ")");

    const std::size_t n = m.rows();
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    ComplexMatrix v = ComplexMatrix::identity(n);

    constexpr double kOffTol = 1e-12;
    constexpr int kMaxSweeps = 100;
    bool converged = n == 1;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        if (off_diagonal_norm(a) < kOffTol) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const complexd apq = a(p, q);
                const double r = std::abs(apq);
                if (r == 0.0) continue;
                const complexd phase = apq / r;  // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                const double sign = tau >= 0.0 ? 1.0 : -1.0;
                const double t = sign / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const complexd jp = phase * c;  // J(p,p)
                const complexd jq = phase * s;  // J(p,q)
                // columns: A <- A * J, V <- V * J
                for (std::size_t k = 0; k < n; ++k) {
                    const complexd akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * jp - akq * s;
                    a(k, q) = akp * jq + akq * c;
                    const complexd vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * jp - vkq * s;
                    v(k, q) = vkp * jq + vkq * c;
                }
                // rows: A <- J^dagger * A
                const complexd cjp = std::conj(jp);
                const complexd cjq = std::conj(jq);
                for (std::size_t k = 0; k < n; ++k) {
                    const complexd apk = a(p, k), aqk = a(q, k);
                    a(p, k) = cjp * apk - s * aqk;
                    a(q, k) = cjq * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }
    if (!converged && off_diagonal_norm(a) > 1e-10 * std::max(1.0, max_abs(a)))
        throw ConsistencyError("eigensolver did not converge within the sweep cap");

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
    std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });

    EigenSystem out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = diag[idx[k]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, idx[k]);
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    return hermitian_eigensystem(m).values;
}

ComplexMatrix matvec_outer(const cvec& u, const cvec& v) {
    if (u.empty() || v.empty()) throw DimensionError("outer product of empty vectors");
    ComplexMatrix out(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out(i, j) = u[i] * std::conj(v[j]);
    return out;
}

cvec matvec(const ComplexMatrix& m, const cvec& v) {
    if (m.cols() != v.size()) throw DimensionError("matvec shape mismatch");
    cvec out(m.rows(), complexd{0.0, 0.0});
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
    return out;
}

cvec kron_vec(const cvec& a, const cvec& b) {
    cvec out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
    return out;
}

}  // namespace mdiew

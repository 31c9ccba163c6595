#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "mdiew/errors.hpp"

namespace mdiew {

using complexd = std::complex<double>;
using cvec = std::vector<complexd>;

// Products larger than this total dimension are refused. The largest space the
// library needs is the 16-dimensional game space; 64 leaves headroom for
// Choi matrices and d<=8 sampling.
inline constexpr std::size_t kDimensionCap = 64;

// Dense row-major complex matrix. Values are immutable by convention once an
// operation returns them; all free functions below are pure.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, complexd{0.0, 0.0}) {
        if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
    }

    ComplexMatrix(std::initializer_list<std::initializer_list<complexd>> rows) {
        rows_ = rows.size();
        if (rows_ == 0) throw DimensionError("matrix dimensions must be positive");
        cols_ = rows.begin()->size();
        if (cols_ == 0) throw DimensionError("matrix dimensions must be positive");
        entries_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) throw DimensionError("ragged initializer for matrix");
            entries_.insert(entries_.end(), row.begin(), row.end());
        }
    }

    static ComplexMatrix identity(std::size_t d) {
        ComplexMatrix m(d, d);
        for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    complexd& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const complexd& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    const std::vector<complexd>& entries() const { return entries_; }

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(complexd scale);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<complexd> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(complexd scale, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, complexd scale);

// Ordered subsystem dimensions, big-endian: the first factor is the slowest
// composite index. A composite index i unpacks as digits i_f with
// i = sum_f i_f * stride_f, stride_f = prod_{g>f} d_g.
struct DimFactorization {
    std::vector<std::size_t> factors;

    DimFactorization() = default;
    DimFactorization(std::initializer_list<std::size_t> f) : factors(f) { validate(); }
    explicit DimFactorization(std::vector<std::size_t> f) : factors(std::move(f)) { validate(); }

    std::size_t total() const {
        std::size_t t = 1;
        for (std::size_t d : factors) t *= d;
        return t;
    }

    std::size_t size() const { return factors.size(); }

    std::size_t operator[](std::size_t i) const { return factors.at(i); }

    bool operator==(const DimFactorization& o) const { return factors == o.factors; }

private:
    void validate() const {
        if (factors.empty()) throw DimensionError("factor list must be nonempty");
        for (std::size_t d : factors) {
            if (d == 0) throw DimensionError("subsystem dimension must be positive");
            if (factors.size() > 1 && d < 2)
                throw DimensionError("multi-factor lists require every dimension >= 2");
        }
    }
};

// Kronecker product; refuses results above max_dim in either direction.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t max_dim = kDimensionCap);

// Reduced operator on the kept subsystems (original relative order).
ComplexMatrix partial_trace(const ComplexMatrix& m, const DimFactorization& dims,
                            std::vector<std::size_t> keep);

// Transposes the indices of one subsystem only.
ComplexMatrix partial_transpose(const ComplexMatrix& m, const DimFactorization& dims,
                                std::size_t subsystem);

// Permutes tensor factors: order[k] is the old factor placed at new position k.
ComplexMatrix reorder_subsystems(const ComplexMatrix& m, const DimFactorization& dims,
                                 const std::vector<std::size_t>& order);

ComplexMatrix dagger(const ComplexMatrix& m);
ComplexMatrix transpose(const ComplexMatrix& m);
ComplexMatrix conjugate(const ComplexMatrix& m);

complexd trace(const ComplexMatrix& m);

// Tr(a*b) without forming the product.
complexd trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Max-entry deviation from m = dagger(m).
double hermiticity_deviation(const ComplexMatrix& m);

// All eigenvalues of a Hermitian matrix, ascending. Inputs must be Hermitian
// within 1e-10 (max entry); they are symmetrized before solving.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

struct EigenSystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column k is the eigenvector of values[k]
};

EigenSystem hermitian_eigensystem(const ComplexMatrix& m);

ComplexMatrix matvec_outer(const cvec& u, const cvec& v);  // |u><v|
cvec matvec(const ComplexMatrix& m, const cvec& v);
cvec kron_vec(const cvec& a, const cvec& b);

}  // namespace mdiew

#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "spt/rational.hpp"

namespace spt {

// Dense matrix of exact rationals, row-major. Indices are 0-based.
class RMatrix {
public:
    RMatrix() = default;
    RMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}
    RMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);
    // Row-by-row literal, convenient in tests: RMatrix{{1,2},{3,4}}.
    RMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static RMatrix identity(std::size_t n);
    static RMatrix zero(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Rational& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    const std::vector<Rational>& entries() const { return e_; }

    RMatrix transpose() const;
    RMatrix operator+(const RMatrix& o) const;
    RMatrix operator-(const RMatrix& o) const;
    RMatrix operator-() const;
    RMatrix operator*(const RMatrix& o) const;
    RMatrix operator*(const Rational& s) const;
    bool operator==(const RMatrix& o) const = default;

    bool is_zero() const;
    bool is_nonnegative() const;
    bool is_positive() const;  // strictly, entrywise

    RMatrix row(std::size_t i) const;
    RMatrix col(std::size_t j) const;
    RMatrix submatrix(const std::vector<std::size_t>& rows,
                      const std::vector<std::size_t>& cols) const;

    // Stack blocks that agree on the orthogonal dimension.
    static RMatrix hcat(const RMatrix& a, const RMatrix& b);
    static RMatrix vcat(const RMatrix& a, const RMatrix& b);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> e_;
};

std::size_t rank(const RMatrix& a);

// Exact inverse; nullopt when singular.
std::optional<RMatrix> inverse(const RMatrix& a);

Rational determinant(const RMatrix& a);

// Basis of the nullspace of a, one column per basis vector (n x k).
RMatrix nullspace(const RMatrix& a);

RMatrix kron(const RMatrix& a, const RMatrix& b);

// Column-stacking convention: vec(A)[j*m + i] = A(i, j). This is the one
// convention the whole toolkit depends on; vec(X A Y) = kron(Y^T, X) vec(A).
RMatrix vec(const RMatrix& a);
RMatrix unvec(const RMatrix& v, std::size_t m, std::size_t n);

// Serial reference multiply. operator* dispatches to an OpenMP kernel for
// large operands; this one never does and anchors the equivalence tests.
RMatrix mul_serial(const RMatrix& a, const RMatrix& b);
RMatrix mul_parallel(const RMatrix& a, const RMatrix& b);

}  // namespace spt

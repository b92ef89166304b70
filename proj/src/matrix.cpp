#include "spt/matrix.hpp"

#include <omp.h>

#include <sstream>
#include <stdexcept>

namespace spt {

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    if (sgn(Rational(r.get_den())) <= 0)
        throw std::invalid_argument("nonpositive denominator: " + s);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

RMatrix::RMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows_ * cols_)
        throw std::invalid_argument("entry count does not match shape");
}

RMatrix::RMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    e_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged initializer");
        for (long v : r) e_.emplace_back(v);
    }
}

RMatrix RMatrix::identity(std::size_t n) {
    RMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RMatrix RMatrix::zero(std::size_t rows, std::size_t cols) { return RMatrix(rows, cols); }

RMatrix RMatrix::transpose() const {
    RMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RMatrix RMatrix::operator+(const RMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("shape mismatch in +");
    RMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] + o.e_[k];
    return r;
}

RMatrix RMatrix::operator-(const RMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("shape mismatch in -");
    RMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] - o.e_[k];
    return r;
}

RMatrix RMatrix::operator-() const {
    RMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = -e_[k];
    return r;
}

RMatrix RMatrix::operator*(const Rational& s) const {
    RMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] * s;
    return r;
}

RMatrix mul_serial(const RMatrix& a, const RMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("shape mismatch in *");
    RMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Rational& aik = a(i, k);
            if (sgn(aik) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

RMatrix mul_parallel(const RMatrix& a, const RMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("shape mismatch in *");
    RMatrix r(a.rows(), b.cols());
    const long m = static_cast<long>(a.rows());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < m; ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Rational& aik = a(static_cast<std::size_t>(i), k);
            if (sgn(aik) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                r(static_cast<std::size_t>(i), j) += aik * b(k, j);
        }
    return r;
}

RMatrix RMatrix::operator*(const RMatrix& o) const {
    // GMP work per row dominates; only fan out when there is enough of it.
    if (rows_ * cols_ * o.cols_ >= 32768 && rows_ > 1)
        return mul_parallel(*this, o);
    return mul_serial(*this, o);
}

bool RMatrix::is_zero() const {
    for (const auto& x : e_)
        if (sgn(x) != 0) return false;
    return true;
}

bool RMatrix::is_nonnegative() const {
    for (const auto& x : e_)
        if (sgn(x) < 0) return false;
    return true;
}

bool RMatrix::is_positive() const {
    for (const auto& x : e_)
        if (sgn(x) <= 0) return false;
    return true;
}

RMatrix RMatrix::row(std::size_t i) const {
    RMatrix r(1, cols_);
    for (std::size_t j = 0; j < cols_; ++j) r(0, j) = (*this)(i, j);
    return r;
}

RMatrix RMatrix::col(std::size_t j) const {
    RMatrix c(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
}

RMatrix RMatrix::submatrix(const std::vector<std::size_t>& rows,
                           const std::vector<std::size_t>& cols) const {
    RMatrix s(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
    return s;
}

RMatrix RMatrix::hcat(const RMatrix& a, const RMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hcat row mismatch");
    RMatrix r(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
    }
    return r;
}

RMatrix RMatrix::vcat(const RMatrix& a, const RMatrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vcat col mismatch");
    RMatrix r(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(a.rows() + i, j) = b(i, j);
    return r;
}

namespace {

// Row-reduce in place, returning pivot columns. Plain rational elimination;
// mpq keeps everything canonical so there is no coefficient blowup concern
// at the dimensions this toolkit targets.
std::vector<std::size_t> row_echelon(RMatrix& a) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
        if (p == a.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(p, j));
        Rational inv = 1 / a(r, c);
        for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || sgn(a(i, c)) == 0) continue;
            Rational f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::size_t rank(const RMatrix& a) {
    RMatrix w = a;
    return row_echelon(w).size();
}

std::optional<RMatrix> inverse(const RMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = a.rows();
    RMatrix w = RMatrix::hcat(a, RMatrix::identity(n));
    auto pivots = row_echelon(w);
    if (pivots.size() != n || pivots.back() != n - 1) return std::nullopt;
    RMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = w(i, n + j);
    return inv;
}

Rational determinant(const RMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
    RMatrix w = a;
    const std::size_t n = a.rows();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(w(p, c)) == 0) ++p;
        if (p == n) return Rational(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(w(c, j), w(p, j));
            det = -det;
        }
        det *= w(c, c);
        Rational inv = 1 / w(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (sgn(w(i, c)) == 0) continue;
            Rational f = w(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) w(i, j) -= f * w(c, j);
        }
    }
    return det;
}

RMatrix nullspace(const RMatrix& a) {
    RMatrix w = a;
    auto pivots = row_echelon(w);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < a.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    RMatrix basis(a.cols(), free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        basis(free_cols[k], k) = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            basis(pivots[r], k) = -w(r, free_cols[k]);
    }
    return basis;
}

RMatrix kron(const RMatrix& a, const RMatrix& b) {
    RMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (sgn(a(i, j)) == 0) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    r(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
        }
    return r;
}

RMatrix vec(const RMatrix& a) {
    RMatrix v(a.rows() * a.cols(), 1);
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) v(j * a.rows() + i, 0) = a(i, j);
    return v;
}

RMatrix unvec(const RMatrix& v, std::size_t m, std::size_t n) {
    if (v.cols() != 1 || v.rows() != m * n)
        throw std::invalid_argument("unvec shape mismatch");
    RMatrix a(m, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) a(i, j) = v(j * m + i, 0);
    return a;
}

}  // namespace spt

#include "pqclone/cmatrix.hpp"

#include <cmath>
#include <utility>

namespace pqclone {

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, CVector entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw DimensionMismatchError("entry count does not match matrix shape");
    }
    if (!all_finite()) {
        throw Error("non-finite matrix entry");
    }
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw DimensionMismatchError("ragged rows in matrix literal");
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
    if (!all_finite()) {
        throw Error("non-finite matrix entry");
    }
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

CMatrix CMatrix::transpose() const {
    CMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

CMatrix CMatrix::conj() const {
    CMatrix out(rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = std::conj(entries_[k]);
    return out;
}

CMatrix CMatrix::operator+(const CMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
        throw DimensionMismatchError("matrix addition shape mismatch");
    }
    CMatrix out(rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k] + rhs.entries_[k];
    return out;
}

CMatrix CMatrix::operator-(const CMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
        throw DimensionMismatchError("matrix subtraction shape mismatch");
    }
    CMatrix out(rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k] - rhs.entries_[k];
    return out;
}

CMatrix CMatrix::operator*(const CMatrix& rhs) const {
    if (cols_ != rhs.rows_) {
        throw DimensionMismatchError("matrix product shape mismatch");
    }
    CMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Complex aik = (*this)(i, k);
            if (aik == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                out(i, j) += aik * rhs(k, j);
            }
        }
    }
    return out;
}

CMatrix CMatrix::operator*(Complex scalar) const {
    CMatrix out(rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k] * scalar;
    return out;
}

CVector CMatrix::apply(const CVector& v) const {
    if (v.size() != cols_) {
        throw DimensionMismatchError("matrix-vector shape mismatch");
    }
    CVector out(rows_, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < rows_; ++i) {
        Complex acc{0.0, 0.0};
        for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

CVector CMatrix::column(std::size_t j) const {
    CVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

void CMatrix::set_column(std::size_t j, const CVector& v) {
    if (v.size() != rows_) {
        throw DimensionMismatchError("column length mismatch");
    }
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, std::abs(e));
    return m;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& e : entries_) s += std::norm(e);
    return std::sqrt(s);
}

double CMatrix::hermitian_deviation() const {
    if (!is_square()) return std::numeric_limits<double>::infinity();
    double dev = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = i; j < cols_; ++j) {
            dev = std::max(dev, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        }
    }
    return dev;
}

bool CMatrix::is_hermitian(double tol) const {
    return is_square() && hermitian_deviation() <= tol;
}

bool CMatrix::all_finite() const {
    for (const auto& e : entries_) {
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
    }
    return true;
}

Complex inner(const CVector& a, const CVector& b) {
    if (a.size() != b.size()) {
        throw DimensionMismatchError("inner product length mismatch");
    }
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

double norm2(const CVector& v) {
    double s = 0.0;
    for (const auto& e : v) s += std::norm(e);
    return std::sqrt(s);
}

CVector kron(const CVector& a, const CVector& b) {
    CVector out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i * b.size() + j] = a[i] * b[j];
        }
    }
    return out;
}

CVector kron_power(const CVector& v, std::size_t n) {
    CVector out{Complex{1.0, 0.0}};
    for (std::size_t k = 0; k < n; ++k) out = kron(out, v);
    return out;
}

CVector basis_vector(std::size_t dim, std::size_t index) {
    CVector out(dim, Complex{0.0, 0.0});
    out.at(index) = 1.0;
    return out;
}

}  // namespace pqclone

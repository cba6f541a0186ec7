// cmatrix.hpp
// Dense complex matrices and vectors, row-major storage. Sized for the small
// problems this library works with (dimensions up to a few dozen).

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "pqclone/error.hpp"

namespace pqclone {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

class CMatrix {
public:
    CMatrix() = default;

    // Zero matrix of the given shape.
    CMatrix(std::size_t rows, std::size_t cols);

    // Row-major entries; throws DimensionMismatchError if the count is off
    // and Error if any entry is non-finite.
    CMatrix(std::size_t rows, std::size_t cols, CVector entries);

    // Nested-list literal, e.g. CMatrix{{1, 2}, {3, 4}}.
    CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static CMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const CVector& entries() const { return entries_; }

    CMatrix adjoint() const;
    CMatrix transpose() const;
    CMatrix conj() const;

    CMatrix operator+(const CMatrix& rhs) const;
    CMatrix operator-(const CMatrix& rhs) const;
    CMatrix operator*(const CMatrix& rhs) const;
    CMatrix operator*(Complex scalar) const;

    // Matrix-vector product.
    CVector apply(const CVector& v) const;

    CVector column(std::size_t j) const;
    void set_column(std::size_t j, const CVector& v);

    // max_ij |a_ij|
    double max_abs() const;
    double frobenius_norm() const;

    // ‖M − M†‖_max; zero for exactly Hermitian matrices.
    double hermitian_deviation() const;
    bool is_hermitian(double tol = 1e-10) const;

    bool all_finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    CVector entries_;
};

// Vector helpers shared across the library.

// ⟨a|b⟩, conjugate-linear in the first argument.
Complex inner(const CVector& a, const CVector& b);

double norm2(const CVector& v);

// a ⊗ b with the second factor fastest: out[i·|b| + j] = a_i b_j.
CVector kron(const CVector& a, const CVector& b);

// v ⊗ v ⊗ … (n factors).
CVector kron_power(const CVector& v, std::size_t n);

CVector basis_vector(std::size_t dim, std::size_t index);

}  // namespace pqclone

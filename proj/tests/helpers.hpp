// helpers.hpp
// Shared test utilities: deterministic random generators, independent oracle
// routines (Laplace determinants, normal-equations solve), and the canonical
// state sets the worked examples revolve around.

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "pqclone/cmatrix.hpp"
#include "pqclone/matrixkit.hpp"
#include "pqclone/stateset.hpp"

namespace testutil {

using pqclone::CMatrix;
using pqclone::Complex;
using pqclone::CVector;

inline Complex random_complex(std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    return Complex{dist(rng), dist(rng)};
}

inline CMatrix random_hermitian(std::size_t n, std::mt19937& rng) {
    CMatrix m(n, n);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            m(i, j) = random_complex(rng);
            m(j, i) = std::conj(m(i, j));
        }
        m(i, i) = Complex{dist(rng), 0.0};
    }
    return m;
}

// PSD by construction: A·A† with A of shape n×k.
inline CMatrix random_psd(std::size_t n, std::size_t k, std::mt19937& rng) {
    CMatrix a(n, k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) a(i, j) = random_complex(rng);
    return a * a.adjoint();
}

inline CVector random_unit_vector(std::size_t dim, std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CVector v(dim);
    double norm = 0.0;
    while (norm < 1e-6) {
        for (auto& e : v) e = Complex{gauss(rng), gauss(rng)};
        norm = pqclone::norm2(v);
    }
    for (auto& e : v) e /= norm;
    return v;
}

// Unit vector with nonnegative real amplitudes; pairwise overlaps of such
// states are nonnegative reals.
inline CVector random_nonneg_unit_vector(std::size_t dim, std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(0.05, 1.0);
    CVector v(dim);
    for (auto& e : v) e = Complex{dist(rng), 0.0};
    const double n = pqclone::norm2(v);
    for (auto& e : v) e /= n;
    return v;
}

// Laplace expansion determinant; independent of the eigensolver path.
inline Complex laplace_det(const CMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 0) return Complex{1.0, 0.0};
    if (n == 1) return m(0, 0);
    Complex det{0.0, 0.0};
    double sign = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        CMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor(r - 1, cc++) = m(r, c);
            }
        }
        det += sign * m(0, j) * laplace_det(minor);
        sign = -sign;
    }
    return det;
}

// All principal minors (every nonempty index subset); PSD ⟺ all ≥ 0.
inline std::vector<double> principal_minors(const CMatrix& m) {
    const std::size_t n = m.rows();
    std::vector<double> minors;
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) idx.push_back(i);
        }
        CMatrix sub(idx.size(), idx.size());
        for (std::size_t r = 0; r < idx.size(); ++r)
            for (std::size_t c = 0; c < idx.size(); ++c) sub(r, c) = m(idx[r], idx[c]);
        minors.push_back(laplace_det(sub).real());
    }
    return minors;
}

// Normal-equations oracle: solves (B†B)c = B†t by Gaussian elimination with
// partial pivoting. Independent of the library's eigendecomposition route.
inline CVector normal_equations_solve(const std::vector<CVector>& basis, const CVector& target) {
    const std::size_t k = basis.size();
    CMatrix a(k, k + 1);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) a(i, j) = pqclone::inner(basis[i], basis[j]);
        a(i, k) = pqclone::inner(basis[i], target);
    }
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < k; ++r) {
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        }
        for (std::size_t c = 0; c <= k; ++c) std::swap(a(col, c), a(pivot, c));
        for (std::size_t r = col + 1; r < k; ++r) {
            const Complex f = a(r, col) / a(col, col);
            for (std::size_t c = col; c <= k; ++c) a(r, c) -= f * a(col, c);
        }
    }
    CVector x(k, Complex{0.0, 0.0});
    for (std::size_t i = k; i-- > 0;) {
        Complex acc = a(i, k);
        for (std::size_t j = i + 1; j < k; ++j) acc -= a(i, j) * x[j];
        x[i] = acc / a(i, i);
    }
    return x;
}

// The worked four-state set: Ψ₁ = e₀, Ψ₂ = (e₀+e₁)/√2, Ψ₃ = (e₀+e₂)/√2,
// Ψ₄ = (Ψ₂+Ψ₃)/√3. Independent subset {0,1,2}, only Ψ₁ clonable, bound 1/3.
inline std::vector<CVector> four_state_amplitudes() {
    const double r2 = 1.0 / std::sqrt(2.0);
    const double r6 = 1.0 / std::sqrt(6.0);
    return {
        {Complex{1, 0}, Complex{0, 0}, Complex{0, 0}},
        {Complex{r2, 0}, Complex{r2, 0}, Complex{0, 0}},
        {Complex{r2, 0}, Complex{0, 0}, Complex{r2, 0}},
        {Complex{2 * r6, 0}, Complex{r6, 0}, Complex{r6, 0}},
    };
}

inline pqclone::StateSet four_state_set() {
    return pqclone::load_states(3, four_state_amplitudes());
}

// Two states in C² with real overlap s.
inline pqclone::StateSet two_state_set(double s) {
    return pqclone::load_states(
        2, {{Complex{1, 0}, Complex{0, 0}},
            {Complex{s, 0}, Complex{std::sqrt(1.0 - s * s), 0}}});
}

// e₀, e₁ and their balanced superposition: dependent, nothing clonable.
inline pqclone::StateSet blocked_three_state_set() {
    const double r2 = 1.0 / std::sqrt(2.0);
    return pqclone::load_states(2, {{Complex{1, 0}, Complex{0, 0}},
                                    {Complex{0, 0}, Complex{1, 0}},
                                    {Complex{r2, 0}, Complex{r2, 0}}});
}

// Random instance with |S_m| = 3 and |S_l| = 1: three independent states with
// a comfortable Gram margin, plus one state in span{Ψ₂, Ψ₃} that blocks both.
inline pqclone::StateSet random_single_clonable_triple(std::mt19937& rng) {
    std::uniform_int_distribution<std::size_t> dim_dist(3, 4);
    const std::size_t dim = dim_dist(rng);
    for (;;) {
        std::vector<CVector> amps;
        while (amps.size() < 3) {
            CVector cand = random_unit_vector(dim, rng);
            bool spaced = true;
            for (const CVector& prev : amps) {
                if (std::abs(pqclone::inner(prev, cand)) > 0.6) spaced = false;
            }
            if (spaced) amps.push_back(std::move(cand));
        }
        // Reject ill-conditioned triples so boundary detection stays sharp.
        CMatrix gram(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) gram(i, j) = pqclone::inner(amps[i], amps[j]);
        if (pqclone::hermitian_eig(gram).eigenvalues.front() < 0.15) continue;

        std::uniform_real_distribution<double> mag(0.35, 0.9);
        std::uniform_real_distribution<double> phase(0.0, 6.283);
        CVector combo(dim, Complex{0.0, 0.0});
        for (std::size_t j : {std::size_t{1}, std::size_t{2}}) {
            const Complex coeff = std::polar(mag(rng), phase(rng));
            for (std::size_t d = 0; d < dim; ++d) combo[d] += coeff * amps[j][d];
        }
        const double n = pqclone::norm2(combo);
        if (n < 0.2) continue;
        for (auto& c : combo) c /= n;
        amps.push_back(std::move(combo));
        return pqclone::load_states(dim, amps);
    }
}

}  // namespace testutil

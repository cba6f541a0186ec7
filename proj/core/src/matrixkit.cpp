#include "pqclone/matrixkit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pqclone {

namespace {

// Off-diagonal Frobenius mass sqrt(Σ_{i≠j} |a_ij|²).
double off_diagonal_mass(const CMatrix& a) {
    double s = 0.0;
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) s += std::norm(a(i, j));
        }
    }
    return std::sqrt(s);
}

void require_square_hermitian(const CMatrix& m) {
    if (!m.is_square()) {
        throw NotSquareError("matrix is not square");
    }
    const double dev = m.hermitian_deviation();
    if (dev > kHermitianTol) {
        throw NotHermitianError("Hermitian deviation " + std::to_string(dev) +
                                " exceeds tolerance");
    }
}

}  // namespace

EigenResult hermitian_eig(const CMatrix& m) {
    require_square_hermitian(m);
    const std::size_t n = m.rows();

    // Work on the exactly-Hermitian part; diagonal kept real throughout.
    CMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
        }
        a(i, i) = Complex{a(i, i).real(), 0.0};
    }
    CMatrix v = CMatrix::identity(n);

    constexpr double kOffTol = 1e-14;
    constexpr int kMaxSweeps = 80;
    double prev_off = std::numeric_limits<double>::infinity();
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        const double off = off_diagonal_mass(a);
        if (off < kOffTol) break;
        // Round-off floor reached: further sweeps cannot improve.
        if (sweep > 4 && off >= prev_off) break;
        prev_off = off;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex beta = a(p, q);
                const double r = std::abs(beta);
                if (r == 0.0) continue;

                // Unitary 2×2 rotation [[c, −s·e^{iφ}], [s·e^{−iφ}, c]] with
                // e^{iφ} = β/|β| zeroes the (p,q) entry; the angle comes from
                // the standard stable tangent formula.
                const Complex phase = beta / r;
                const double alpha = a(p, p).real();
                const double delta = a(q, q).real();
                // Small-magnitude root of t² − 2τt − 1 = 0.
                const double tau = (delta - alpha) / (2.0 * r);
                const double t = (tau >= 0.0) ? -1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                const double app = alpha * c * c + 2.0 * r * c * s + delta * s * s;
                const double aqq = alpha * s * s - 2.0 * r * c * s + delta * c * c;
                a(p, p) = Complex{app, 0.0};
                a(q, q) = Complex{aqq, 0.0};
                a(p, q) = Complex{0.0, 0.0};
                a(q, p) = Complex{0.0, 0.0};

                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    const Complex aip = a(i, p);
                    const Complex aiq = a(i, q);
                    a(i, p) = c * aip + s * std::conj(phase) * aiq;
                    a(i, q) = -s * phase * aip + c * aiq;
                    a(p, i) = std::conj(a(i, p));
                    a(q, i) = std::conj(a(i, q));
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex vip = v(i, p);
                    const Complex viq = v(i, q);
                    v(i, p) = c * vip + s * std::conj(phase) * viq;
                    v(i, q) = -s * phase * vip + c * viq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return a(x, x).real() < a(y, y).real();
    });

    EigenResult out;
    out.eigenvalues.resize(n);
    out.eigenvectors = CMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
    }
    return out;
}

PsdResult is_psd(const CMatrix& m, double tol) {
    const EigenResult eig = hermitian_eig(m);
    const double min_ev = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front();
    return PsdResult{min_ev >= -tol, min_ev};
}

CMatrix psd_sqrt(const CMatrix& m, double tol) {
    const EigenResult eig = hermitian_eig(m);
    const std::size_t n = m.rows();
    std::vector<double> roots(n);
    for (std::size_t k = 0; k < n; ++k) {
        double lambda = eig.eigenvalues[k];
        if (lambda < -tol) {
            throw NotPsdError("matrix is not positive semidefinite (min eigenvalue " +
                              std::to_string(lambda) + ")");
        }
        roots[k] = std::sqrt(std::max(lambda, 0.0));
    }
    // R = V diag(√λ) V†, then explicitly re-Hermitized.
    CMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            Complex acc{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k) {
                acc += eig.eigenvectors(i, k) * roots[k] * std::conj(eig.eigenvectors(j, k));
            }
            out(i, j) = acc;
            out(j, i) = std::conj(acc);
        }
        out(i, i) = Complex{out(i, i).real(), 0.0};
    }
    return out;
}

LeastSquaresResult least_squares_in_span(std::span<const CVector> basis, const CVector& target) {
    if (basis.empty()) {
        throw DimensionMismatchError("least squares needs a nonempty basis");
    }
    const std::size_t dim = target.size();
    for (const auto& b : basis) {
        if (b.size() != dim) {
            throw DimensionMismatchError("basis/target dimension mismatch");
        }
    }
    const std::size_t k = basis.size();

    CMatrix gram(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) gram(i, j) = inner(basis[i], basis[j]);
    }
    CVector rhs(k);
    for (std::size_t i = 0; i < k; ++i) rhs[i] = inner(basis[i], target);

    // Pseudo-solve (B†B) c = B†t through the Gram eigendecomposition with a
    // relative cutoff, so rank-deficient spans stay well-behaved.
    const EigenResult eig = hermitian_eig(gram);
    const double lambda_max = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
    const double cutoff = std::max(lambda_max, 1.0) * 1e-13;

    CVector coeff(k, Complex{0.0, 0.0});
    for (std::size_t e = 0; e < k; ++e) {
        const double lambda = eig.eigenvalues[e];
        if (lambda <= cutoff) continue;
        Complex proj{0.0, 0.0};
        for (std::size_t i = 0; i < k; ++i) proj += std::conj(eig.eigenvectors(i, e)) * rhs[i];
        proj /= lambda;
        for (std::size_t i = 0; i < k; ++i) coeff[i] += eig.eigenvectors(i, e) * proj;
    }

    CVector residual = target;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t d = 0; d < dim; ++d) residual[d] -= coeff[i] * basis[i][d];
    }
    return LeastSquaresResult{std::move(coeff), norm2(residual)};
}

}  // namespace pqclone

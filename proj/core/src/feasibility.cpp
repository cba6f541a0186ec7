#include "pqclone/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "pqclone/matrixkit.hpp"

namespace pqclone {

namespace {

// z^n for small integer n by repeated multiplication (exact for n = 0, 1).
Complex int_pow(Complex z, std::size_t n) {
    Complex out{1.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) out *= z;
    return out;
}

void validate_gamma(const EfficiencySpec& gamma, std::size_t m) {
    if (gamma.gamma.size() != m) {
        throw SizeMismatchError("efficiency vector has length " +
                                std::to_string(gamma.gamma.size()) + ", expected " +
                                std::to_string(m));
    }
    if (gamma.n_copies < 2) {
        throw SizeMismatchError("copy count must be at least 2");
    }
    for (double g : gamma.gamma) {
        if (!(g >= 0.0 && g <= 1.0)) {
            throw Error("efficiency " + std::to_string(g) + " outside [0, 1]");
        }
    }
}

}  // namespace

PGram::PGram(CMatrix overlaps) : overlaps_(std::move(overlaps)) {
    if (!overlaps_.is_square()) {
        throw NotSquareError("flag overlap matrix must be square");
    }
    if (overlaps_.hermitian_deviation() > kHermitianTol) {
        throw NotHermitianError("flag overlap matrix must be Hermitian");
    }
    for (std::size_t j = 0; j < overlaps_.rows(); ++j) {
        if (std::abs(overlaps_(j, j) - Complex{1.0, 0.0}) > 1e-9) {
            throw Error("flag overlap diagonal entry differs from 1");
        }
        overlaps_(j, j) = Complex{1.0, 0.0};
    }
    const PsdResult psd = is_psd(overlaps_, kPsdTol);
    if (!psd.psd) {
        throw NotPsdError("flag overlap matrix is not PSD (min eigenvalue " +
                          std::to_string(psd.min_eigenvalue) + ")");
    }
}

PGram PGram::identity(std::size_t m) { return PGram(CMatrix::identity(m)); }

PGram PGram::all_ones(std::size_t m) {
    CMatrix ones(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) ones(i, j) = 1.0;
    return PGram(ones);
}

PGram PGram::from_flags(const CMatrix& flags) {
    const std::size_t m = flags.cols();
    CMatrix overlaps(m, m);
    for (std::size_t j = 0; j < m; ++j) {
        const CVector fj = flags.column(j);
        const double nj = norm2(fj);
        if (std::abs(nj - 1.0) > 1e-9) {
            throw Error("flag column " + std::to_string(j) + " is not unit norm");
        }
        for (std::size_t k = 0; k < m; ++k) {
            overlaps(j, k) = inner(fj, flags.column(k));
        }
    }
    return PGram(std::move(overlaps));
}

EfficiencySpec EfficiencySpec::uniform(const Partition& part, double t, std::size_t n_copies) {
    EfficiencySpec spec;
    spec.n_copies = n_copies;
    spec.gamma.assign(part.m(), 0.0);
    for (std::size_t j = 0; j < part.l(); ++j) spec.gamma[j] = t;
    return spec;
}

CMatrix xz_matrix(const StateSet& set, const Partition& part, const PGram& pgram,
                  std::size_t n_copies) {
    const std::size_t m = part.m();
    if (pgram.size() != m) {
        throw SizeMismatchError("flag Gram size " + std::to_string(pgram.size()) +
                                " does not match independent subset size " + std::to_string(m));
    }
    if (n_copies < 2) {
        throw SizeMismatchError("copy count must be at least 2");
    }
    const CMatrix gram_m = set.gram_submatrix(part.sm_order);
    CMatrix xz(m, m);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < m; ++k) {
            xz(j, k) = int_pow(gram_m(j, k), n_copies) * pgram.overlaps()(j, k);
        }
        xz(j, j) = Complex{1.0, 0.0};
    }
    return xz;
}

CMatrix residual_matrix(const CMatrix& gram_m, const CMatrix& xz, const EfficiencySpec& gamma) {
    const std::size_t m = gram_m.rows();
    if (!gram_m.is_square() || !xz.is_square() || xz.rows() != m ||
        gamma.gamma.size() != m) {
        throw SizeMismatchError("residual inputs must all be m×m");
    }
    CMatrix out(m, m);
    for (std::size_t j = 0; j < m; ++j) {
        const double sj = std::sqrt(gamma.gamma[j]);
        for (std::size_t k = 0; k < m; ++k) {
            const double sk = std::sqrt(gamma.gamma[k]);
            out(j, k) = gram_m(j, k) - sj * sk * xz(j, k);
        }
    }
    // Re-Hermitize to kill round-off drift before eigenanalysis.
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = j + 1; k < m; ++k) {
            const Complex avg = 0.5 * (out(j, k) + std::conj(out(k, j)));
            out(j, k) = avg;
            out(k, j) = std::conj(avg);
        }
        out(j, j) = Complex{out(j, j).real(), 0.0};
    }
    return out;
}

FeasibilityReport is_feasible(const StateSet& set, const Partition& part,
                              const EfficiencySpec& gamma, const PGram& pgram, double tol) {
    const std::size_t m = part.m();
    validate_gamma(gamma, m);
    // Blocked indices sit after the clonable ones in canonical order; positive
    // efficiency there is exactly what makes a cloner unsound.
    for (std::size_t j = part.l(); j < m; ++j) {
        if (gamma.gamma[j] > tol) {
            throw ZeroPatternViolationError(
                "state " + std::to_string(part.sm_order[j]) +
                " is blocked (a dependent state draws on it) but has efficiency " +
                std::to_string(gamma.gamma[j]));
        }
    }
    const CMatrix gram_m = set.gram_submatrix(part.sm_order);
    const CMatrix xz = xz_matrix(set, part, pgram, gamma.n_copies);
    CMatrix residual = residual_matrix(gram_m, xz, gamma);
    const PsdResult psd = is_psd(residual, tol);
    return FeasibilityReport{std::move(residual), psd.min_eigenvalue, psd.psd, gamma, pgram};
}

UniformOptimum max_uniform_efficiency(const StateSet& set, const Partition& part,
                                      const PGram& pgram, std::size_t n_copies) {
    if (part.l() == 0) {
        throw EmptyClonableSubsetError("no clonable states: part PQC impossible");
    }
    const CMatrix gram_m = set.gram_submatrix(part.sm_order);
    const CMatrix xz = xz_matrix(set, part, pgram, n_copies);

    const auto feasible_at = [&](double t) {
        const EfficiencySpec g = EfficiencySpec::uniform(part, t, n_copies);
        return is_psd(residual_matrix(gram_m, xz, g), kPsdTol).psd;
    };

    // γ = 0 leaves the Gram matrix itself, which is always PSD. Bisection on
    // the ray γ = t·1_{S_l} is sound: scaling t down scales the (PSD)
    // correction term down in Loewner order.
    double lo = 0.0;
    double hi = 1.0;
    if (feasible_at(1.0)) {
        lo = 1.0;
    } else {
        while (hi - lo > kBisectionTol) {
            const double mid = 0.5 * (lo + hi);
            if (feasible_at(mid)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    UniformOptimum out;
    out.t_star = lo;
    out.report = is_feasible(set, part, EfficiencySpec::uniform(part, lo, n_copies), pgram);
    return out;
}

namespace {

CMatrix normalized_columns(CMatrix flags) {
    for (std::size_t j = 0; j < flags.cols(); ++j) {
        CVector col = flags.column(j);
        const double n = norm2(col);
        if (n < 1e-12) {
            col = basis_vector(flags.rows(), 0);
        } else {
            for (auto& e : col) e /= n;
        }
        flags.set_column(j, col);
    }
    return flags;
}

double evaluate_flags(const StateSet& set, const Partition& part, std::size_t n_copies,
                      const CMatrix& flags) {
    return max_uniform_efficiency(set, part, PGram::from_flags(flags), n_copies).t_star;
}

// Coordinate ascent over one flag component at a time with step halving.
std::pair<CMatrix, double> ascend(const StateSet& set, const Partition& part,
                                  std::size_t n_copies, CMatrix flags) {
    const std::size_t m = flags.rows();
    double best = evaluate_flags(set, part, n_copies, flags);
    const Complex directions[4] = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
    double step = 0.5;
    while (step >= 1e-5) {
        double pass_gain = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t c = 0; c < m; ++c) {
                for (const Complex& dir : directions) {
                    CMatrix candidate = flags;
                    candidate(c, j) += dir * step;
                    candidate = normalized_columns(std::move(candidate));
                    const double value = evaluate_flags(set, part, n_copies, candidate);
                    if (value > best + 1e-12) {
                        pass_gain += value - best;
                        best = value;
                        flags = std::move(candidate);
                    }
                }
            }
        }
        if (pass_gain < 1e-9) step *= 0.5;
    }
    return {std::move(flags), best};
}

}  // namespace

PGramOptimum optimize_pgram(const StateSet& set, const Partition& part, std::size_t n_copies,
                            PGramMode mode, unsigned seed) {
    if (part.l() == 0) {
        throw EmptyClonableSubsetError("no clonable states: part PQC impossible");
    }
    const std::size_t m = part.m();
    if (mode == PGramMode::identity) {
        PGram pg = PGram::identity(m);
        const double t = max_uniform_efficiency(set, part, pg, n_copies).t_star;
        return PGramOptimum{std::move(pg), t};
    }
    if (mode == PGramMode::all_ones) {
        PGram pg = PGram::all_ones(m);
        const double t = max_uniform_efficiency(set, part, pg, n_copies).t_star;
        return PGramOptimum{std::move(pg), t};
    }

    std::vector<CMatrix> starts;
    starts.push_back(CMatrix::identity(m));
    CMatrix coincident(m, m);
    for (std::size_t j = 0; j < m; ++j) coincident(0, j) = 1.0;
    starts.push_back(std::move(coincident));
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int r = 0; r < 2; ++r) {
        CMatrix random(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) random(i, j) = Complex{gauss(rng), gauss(rng)};
        starts.push_back(normalized_columns(std::move(random)));
    }

    CMatrix best_flags;
    double best = -1.0;
    for (CMatrix& start : starts) {
        auto [flags, value] = ascend(set, part, n_copies, std::move(start));
        if (value > best) {
            best = value;
            best_flags = std::move(flags);
        }
    }
    return PGramOptimum{PGram::from_flags(best_flags), best};
}

ClosedFormBound closed_form_bounds(const StateSet& set, const Partition& part) {
    const CMatrix& gram = set.gram();
    if (part.m() == 2 && part.l() == 2) {
        const double s = std::abs(gram(part.sm_order[0], part.sm_order[1]));
        return ClosedFormBound{ClosedFormBound::Kind::two_state, 1.0 / (1.0 + s)};
    }
    if (part.m() == 3 && part.l() == 1) {
        const std::size_t i1 = part.sm_order[0];
        const std::size_t i2 = part.sm_order[1];
        const std::size_t i3 = part.sm_order[2];
        const Complex x12 = gram(i1, i2);
        const Complex x13 = gram(i1, i3);
        const Complex x23 = gram(i2, i3);
        const double numerator =
            std::norm(x12) + std::norm(x13) - 2.0 * (x12 * x23 * std::conj(x13)).real();
        const double denominator = 1.0 - std::norm(x23);
        if (denominator <= 1e-12) {
            throw ShapeNotCoveredError("blocked pair is degenerate (|⟨Ψ₂|Ψ₃⟩| = 1)");
        }
        const double bound = std::clamp(1.0 - numerator / denominator, 0.0, 1.0);
        return ClosedFormBound{ClosedFormBound::Kind::single_clonable_triple, bound};
    }
    throw ShapeNotCoveredError("no closed-form bound for |S_m| = " + std::to_string(part.m()) +
                               ", |S_l| = " + std::to_string(part.l()));
}

WeightedOptimum max_weighted_efficiency(const StateSet& set, const Partition& part,
                                        const PGram& pgram, std::size_t n_copies,
                                        const std::vector<double>& weights) {
    const std::size_t l = part.l();
    if (l == 0) {
        throw EmptyClonableSubsetError("no clonable states: part PQC impossible");
    }
    if (weights.size() != l) {
        throw SizeMismatchError("weight vector must have one entry per clonable state");
    }
    const CMatrix gram_m = set.gram_submatrix(part.sm_order);
    const CMatrix xz = xz_matrix(set, part, pgram, n_copies);

    EfficiencySpec gamma = EfficiencySpec::uniform(part, 0.0, n_copies);
    const auto feasible_at = [&](const EfficiencySpec& g) {
        return is_psd(residual_matrix(gram_m, xz, g), kPsdTol).psd;
    };

    // Sweep clonable coordinates in descending weight, pushing each as far up
    // as bisection finds feasible while the others stay fixed.
    std::vector<std::size_t> order(l);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return weights[a] > weights[b]; });

    for (int sweep = 0; sweep < 60; ++sweep) {
        double gain = 0.0;
        for (std::size_t j : order) {
            double lo = gamma.gamma[j];
            double hi = 1.0;
            EfficiencySpec probe = gamma;
            probe.gamma[j] = 1.0;
            if (feasible_at(probe)) {
                lo = 1.0;
            } else {
                while (hi - lo > kBisectionTol) {
                    const double mid = 0.5 * (lo + hi);
                    probe.gamma[j] = mid;
                    if (feasible_at(probe)) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
            }
            gain += weights[j] * (lo - gamma.gamma[j]);
            gamma.gamma[j] = lo;
        }
        if (gain < 1e-9) break;
    }

    WeightedOptimum out;
    out.report = is_feasible(set, part, gamma, pgram);
    out.gamma = std::move(gamma);
    for (std::size_t j = 0; j < l; ++j) out.objective += weights[j] * out.gamma.gamma[j];
    return out;
}

}  // namespace pqclone

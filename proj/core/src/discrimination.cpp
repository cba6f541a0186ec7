#include "pqclone/discrimination.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "pqclone/matrixkit.hpp"

namespace pqclone {

namespace {

// X⁽¹⁾ − Γ through the shared residual builder with the overlap correction
// replaced by the identity: √Γ·I·√Γ = Γ.
CMatrix disc_residual(const CMatrix& gram_m, const std::vector<double>& gamma) {
    EfficiencySpec spec;
    spec.gamma = gamma;
    spec.n_copies = 2;  // unused by the identity correction
    return residual_matrix(gram_m, CMatrix::identity(gram_m.rows()), spec);
}

}  // namespace

double DiscriminationMap::gram_deviation() const {
    const std::size_t m = input_states.size();
    double dev = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const CVector oj = output_columns.column(j);
        for (std::size_t k = 0; k < m; ++k) {
            dev = std::max(dev, std::abs(inner(oj, output_columns.column(k)) - gram_m(j, k)));
        }
    }
    return dev;
}

DiscriminationOptimum disc_max_uniform(const StateSet& set, const Partition& part) {
    if (part.l() == 0) {
        throw EmptyClonableSubsetError("no clonable states: part discrimination impossible");
    }
    const CMatrix gram_m = set.gram_submatrix(part.sm_order);
    const std::size_t m = part.m();

    const auto feasible_at = [&](double t) {
        std::vector<double> gamma(m, 0.0);
        for (std::size_t j = 0; j < part.l(); ++j) gamma[j] = t;
        return is_psd(disc_residual(gram_m, gamma), kPsdTol).psd;
    };

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

    DiscriminationOptimum out;
    out.t_star = lo;
    std::vector<double> gamma(m, 0.0);
    for (std::size_t j = 0; j < part.l(); ++j) gamma[j] = lo;
    out.residual = disc_residual(gram_m, gamma);
    out.min_eigenvalue = is_psd(out.residual, kPsdTol).min_eigenvalue;
    return out;
}

DiscriminationMap build_discrimination_map(const StateSet& set, const Partition& part,
                                           const std::vector<double>& gamma) {
    const std::size_t m = part.m();
    if (gamma.size() != m) {
        throw SizeMismatchError("efficiency vector must have one entry per independent state");
    }
    for (std::size_t j = 0; j < m; ++j) {
        if (!(gamma[j] >= 0.0 && gamma[j] <= 1.0)) {
            throw InfeasibleGammaError("efficiency outside [0, 1]");
        }
        if (j >= part.l() && gamma[j] > kPsdTol) {
            throw InfeasibleGammaError("blocked state " + std::to_string(part.sm_order[j]) +
                                       " carries positive efficiency");
        }
    }
    const CMatrix gram_m = set.gram_submatrix(part.sm_order);
    const CMatrix residual = disc_residual(gram_m, gamma);
    const PsdResult psd = is_psd(residual, kPsdTol);
    if (!psd.psd) {
        throw InfeasibleGammaError("X⁽¹⁾ − Γ is not PSD (min eigenvalue " +
                                   std::to_string(psd.min_eigenvalue) + ")");
    }

    DiscriminationMap map;
    map.input_dim = set.dim();
    map.n_states = set.size();
    map.gram_m = gram_m;
    map.gamma = gamma;
    map.flag_index = std::vector<std::size_t>(part.sm_order.begin(), part.sm_order.end());
    for (std::size_t j : part.sm_order) map.input_states.push_back(set.state(j).amplitudes);
    map.failure_block = psd_sqrt(residual);

    const std::size_t d = map.input_dim;
    const std::size_t flags = map.flag_count();
    map.output_columns = CMatrix(d * flags, m);
    for (std::size_t j = 0; j < m; ++j) {
        CVector column(d * flags, Complex{0.0, 0.0});
        // Success branch: canonical post-success x state, the state's own flag.
        column[j * flags + map.flag_index[j]] = std::sqrt(gamma[j]);
        // Failure branch: factored failure x-vector with the shared last flag.
        for (std::size_t t = 0; t < m; ++t) {
            column[t * flags + (flags - 1)] += map.failure_block(t, j);
        }
        map.output_columns.set_column(j, column);
    }
    return map;
}

std::vector<double> simulate_discrimination(const DiscriminationMap& map, const QState& input) {
    if (input.dim != map.input_dim) {
        throw DimensionMismatchError("input state dimension mismatch");
    }
    const LeastSquaresResult expansion =
        least_squares_in_span(map.input_states, input.amplitudes);
    if (expansion.residual_norm > kIndependenceTol) {
        throw OutOfSpanError("input state lies outside span(S_m) (residual " +
                             std::to_string(expansion.residual_norm) + ")");
    }

    const std::size_t flags = map.flag_count();
    CVector out(map.output_dim(), Complex{0.0, 0.0});
    for (std::size_t j = 0; j < map.input_states.size(); ++j) {
        const Complex cj = expansion.coefficients[j];
        if (cj == Complex{0.0, 0.0}) continue;
        for (std::size_t d = 0; d < out.size(); ++d) {
            out[d] += cj * map.output_columns(d, j);
        }
    }

    std::vector<double> probabilities(flags, 0.0);
    for (std::size_t x = 0; x < map.input_dim; ++x) {
        for (std::size_t f = 0; f < flags; ++f) {
            probabilities[f] += std::norm(out[x * flags + f]);
        }
    }
    return probabilities;
}

LimitComparison pqc_limit_comparison(const StateSet& set, const Partition& part,
                                     const std::vector<std::size_t>& n_values,
                                     PGramMode mode, unsigned seed) {
    LimitComparison out;
    for (std::size_t n : n_values) {
        out.rows.push_back(LimitRow{n, optimize_pgram(set, part, n, mode, seed).t_star});
    }
    out.t_disc = disc_max_uniform(set, part).t_star;
    return out;
}

}  // namespace pqclone

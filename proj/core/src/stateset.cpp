#include "pqclone/stateset.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "pqclone/matrixkit.hpp"

namespace pqclone {

Complex overlap(const QState& a, const QState& b) {
    return inner(a.amplitudes, b.amplitudes);
}

bool equal_up_to_phase(const QState& a, const QState& b, double tol) {
    if (a.dim != b.dim) return false;
    return std::abs(std::abs(overlap(a, b)) - 1.0) <= tol;
}

StateSet::StateSet(std::size_t dim, std::vector<QState> states, CMatrix gram)
    : dim_(dim), states_(std::move(states)), gram_(std::move(gram)) {}

CMatrix StateSet::gram_submatrix(std::span<const std::size_t> indices) const {
    CMatrix out(indices.size(), indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        for (std::size_t j = 0; j < indices.size(); ++j) {
            out(i, j) = gram_(indices[i], indices[j]);
        }
    }
    return out;
}

StateSet load_states(std::size_t dim, const std::vector<CVector>& raw_amplitudes) {
    if (raw_amplitudes.empty()) {
        throw EmptySetError("state set is empty");
    }
    std::vector<QState> states;
    states.reserve(raw_amplitudes.size());
    for (std::size_t j = 0; j < raw_amplitudes.size(); ++j) {
        const CVector& amps = raw_amplitudes[j];
        if (amps.size() != dim) {
            throw DimensionMismatchError("state " + std::to_string(j) + " has length " +
                                         std::to_string(amps.size()) + ", expected " +
                                         std::to_string(dim));
        }
        for (const auto& a : amps) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
                throw Error("state " + std::to_string(j) + " has a non-finite amplitude");
            }
        }
        const double n = norm2(amps);
        if (n < 1e-6) {
            throw ZeroVectorError("state " + std::to_string(j) + " has norm " +
                                  std::to_string(n) + ", too small to normalize");
        }
        QState s{dim, amps};
        for (auto& a : s.amplitudes) a /= n;
        states.push_back(std::move(s));
    }

    const std::size_t n = states.size();
    CMatrix gram(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j; k < n; ++k) {
            const Complex g = overlap(states[j], states[k]);
            gram(j, k) = g;
            gram(k, j) = std::conj(g);
        }
        gram(j, j) = Complex{1.0, 0.0};
    }
    return StateSet(dim, std::move(states), std::move(gram));
}

IndependentSubset maximal_independent_subset(const StateSet& set, double tol) {
    IndependentSubset out;
    std::vector<CVector> basis;
    for (std::size_t j = 0; j < set.size(); ++j) {
        const CVector& amps = set.state(j).amplitudes;
        if (basis.empty()) {
            out.indices.push_back(j);
            basis.push_back(amps);
            continue;
        }
        const LeastSquaresResult ls = least_squares_in_span(basis, amps);
        if (ls.residual_norm > tol) {
            out.indices.push_back(j);
            basis.push_back(amps);
        } else {
            out.dependent.push_back(j);
        }
    }
    // Expansions recomputed against the final subset: the exact expansion over
    // a linearly independent set is unique, so this only pads later-joined
    // columns with zeros.
    for (std::size_t j : out.dependent) {
        out.expansions.push_back(least_squares_in_span(basis, set.state(j).amplitudes).coefficients);
    }
    return out;
}

Partition clonable_partition(const StateSet& set, const IndependentSubset& subset,
                             double usage_tol) {
    (void)set;
    const std::size_t m = subset.indices.size();

    std::vector<double> usage_input_order(m, 0.0);
    for (const CVector& coeffs : subset.expansions) {
        for (std::size_t i = 0; i < m; ++i) usage_input_order[i] += std::abs(coeffs[i]);
    }

    Partition part;
    part.independent = subset.indices;
    part.dependent = subset.dependent;
    std::vector<std::size_t> clonable_pos, blocked_pos;
    for (std::size_t i = 0; i < m; ++i) {
        if (usage_input_order[i] <= usage_tol) {
            part.clonable.push_back(subset.indices[i]);
            clonable_pos.push_back(i);
        } else {
            part.blocked.push_back(subset.indices[i]);
            blocked_pos.push_back(i);
        }
    }

    std::vector<std::size_t> positions = clonable_pos;
    positions.insert(positions.end(), blocked_pos.begin(), blocked_pos.end());
    for (std::size_t pos : positions) {
        part.sm_order.push_back(subset.indices[pos]);
        part.usage.push_back(usage_input_order[pos]);
    }
    for (const CVector& coeffs : subset.expansions) {
        CVector reordered(m);
        for (std::size_t i = 0; i < m; ++i) reordered[i] = coeffs[positions[i]];
        part.expansions.push_back(std::move(reordered));
    }
    return part;
}

}  // namespace pqclone

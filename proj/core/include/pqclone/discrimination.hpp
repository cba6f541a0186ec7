// discrimination.hpp
// Part unambiguous discrimination of linearly dependent states: feasibility
// via X⁽¹⁾ − Γ PSD, explicit map construction with n+1 orthonormal outcome
// flags, measurement simulation, and the comparison of 1→N cloning optima
// against the discrimination optimum.

#pragma once

#include <cstddef>
#include <vector>

#include "pqclone/cmatrix.hpp"
#include "pqclone/feasibility.hpp"
#include "pqclone/stateset.hpp"

namespace pqclone {

// Transformation on x ⊗ z with z holding n+1 orthonormal flags: flag g for
// "the input was state g" and flag n for "inconclusive". Success columns use
// canonical x basis states; failure columns factor X⁽¹⁾ − Γ.
struct DiscriminationMap {
    std::size_t input_dim = 0;
    std::size_t n_states = 0;

    std::vector<CVector> input_states;    // S_m amplitudes, canonical order
    std::vector<std::size_t> flag_index;  // global state index per S_m column
    CMatrix gram_m;

    std::vector<double> gamma;  // aligned with canonical order over S_m
    CMatrix failure_block;      // column j: failure x-vector of state j
    CMatrix output_columns;     // column j: image of |Ψ_j⟩|P⁰⟩, j over S_m

    std::size_t flag_count() const { return n_states + 1; }
    std::size_t output_dim() const { return input_dim * flag_count(); }

    double gram_deviation() const;
};

struct DiscriminationOptimum {
    double t_star = 0.0;
    CMatrix residual;  // X⁽¹⁾ − Γ at t_star
    double min_eigenvalue = 0.0;
};

// Largest uniform t on S_l with X⁽¹⁾ − Γ PSD (bisection to 1e-10). This is
// the N→∞ limit of the cloning condition: X_z^(N) → I turns the correction
// √Γ X_z √Γ into Γ itself.
DiscriminationOptimum disc_max_uniform(const StateSet& set, const Partition& part);

// γ over S_m in canonical order; blocked entries must be zero. Throws
// InfeasibleGammaError when the zero pattern fails or X⁽¹⁾ − Γ is not PSD.
DiscriminationMap build_discrimination_map(const StateSet& set, const Partition& part,
                                           const std::vector<double>& gamma);

// Outcome distribution over the n+1 flags (global state order, then the
// inconclusive flag last). Unambiguity: flag g fires only on input Ψ_g.
std::vector<double> simulate_discrimination(const DiscriminationMap& map, const QState& input);

struct LimitRow {
    std::size_t n_copies = 0;
    double t_star = 0.0;
};

struct LimitComparison {
    std::vector<LimitRow> rows;
    double t_disc = 0.0;
};

// t*(N) for each requested N (flag overlaps per `mode`) next to the
// discrimination optimum they converge to.
LimitComparison pqc_limit_comparison(const StateSet& set, const Partition& part,
                                     const std::vector<std::size_t>& n_values,
                                     PGramMode mode = PGramMode::search, unsigned seed = 0);

}  // namespace pqclone

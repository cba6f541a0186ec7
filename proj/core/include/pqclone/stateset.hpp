// stateset.hpp
// Input validation for sets of pure states, their Gram matrix, the maximal
// linearly independent subset, expansion coefficients of the dependent
// states, usage weights, and the clonable/blocked partition.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pqclone/cmatrix.hpp"

namespace pqclone {

// Residual-norm threshold below which a state counts as lying in a span.
inline constexpr double kIndependenceTol = 1e-8;

// Normalized pure state |Ψ⟩.
struct QState {
    std::size_t dim = 0;
    CVector amplitudes;
};

// Overlap ⟨a|b⟩.
Complex overlap(const QState& a, const QState& b);

// |⟨a|b⟩| = 1 within tol, i.e. the same ray.
bool equal_up_to_phase(const QState& a, const QState& b, double tol = 1e-9);

class StateSet {
public:
    StateSet(std::size_t dim, std::vector<QState> states, CMatrix gram);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return states_.size(); }
    const QState& state(std::size_t j) const { return states_.at(j); }
    const std::vector<QState>& states() const { return states_; }

    // Full Gram matrix ⟨Ψ_j|Ψ_k⟩ in input order.
    const CMatrix& gram() const { return gram_; }

    // Gram matrix restricted to the given indices, in the given order.
    CMatrix gram_submatrix(std::span<const std::size_t> indices) const;

private:
    std::size_t dim_;
    std::vector<QState> states_;
    CMatrix gram_;
};

// Validates and normalizes raw amplitude vectors. Norms within 1e-6 of 1 are
// silently renormalized; smaller norms raise ZeroVectorError. Input order is
// preserved. Throws EmptySetError / DimensionMismatchError.
StateSet load_states(std::size_t dim, const std::vector<CVector>& raw_amplitudes);

struct IndependentSubset {
    // Greedy first-come scan in input order.
    std::vector<std::size_t> indices;
    // Row per dependent state: expansion coefficients over `indices`.
    std::vector<std::size_t> dependent;
    std::vector<CVector> expansions;
};

// A state joins the subset iff its least-squares residual against the states
// already kept exceeds tol; rejected states store their (unique) expansion.
IndependentSubset maximal_independent_subset(const StateSet& set, double tol = kIndependenceTol);

// Index decomposition S = {S_l, S_m\S_l, S'_m}. The canonical order over the
// independent subset puts clonable indices first, then blocked ones, each in
// input order; `usage` and `expansions` columns follow that order.
struct Partition {
    std::vector<std::size_t> independent;  // S_m, input order
    std::vector<std::size_t> dependent;    // S'_m, input order
    std::vector<std::size_t> clonable;     // S_l, input order
    std::vector<std::size_t> blocked;      // S_m \ S_l, input order

    std::vector<std::size_t> sm_order;     // clonable ++ blocked
    std::vector<double> usage;             // A_j, aligned with sm_order
    std::vector<CVector> expansions;       // per dependent state, aligned with sm_order

    std::size_t m() const { return independent.size(); }
    std::size_t l() const { return clonable.size(); }
    bool part_pqc_possible() const { return !clonable.empty(); }
};

// Usage weights A_j = Σ_J |a_j^(J)|; a state is clonable iff its weight is
// zero, i.e. no dependent state draws on it.
Partition clonable_partition(const StateSet& set, const IndependentSubset& subset,
                             double usage_tol = kIndependenceTol);

}  // namespace pqclone

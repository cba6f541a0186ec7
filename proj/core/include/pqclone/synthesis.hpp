// synthesis.hpp
// Constructs the explicit 1→N cloning map: success branch √γ_j·(Ψ_j)^⊗N⊗P_j
// plus a failure block factored from the residual matrix. Verifies the map is
// an isometry, extends it to a full unitary, and simulates the projective
// flag measurement.

#pragma once

#include <cstddef>
#include <vector>

#include "pqclone/cmatrix.hpp"
#include "pqclone/feasibility.hpp"
#include "pqclone/stateset.hpp"

namespace pqclone {

// Explicit cloning transformation on (x ⊗ copies) ⊗ z. The z register has
// flag_rank levels spanning the success subspace H_p followed by failure_dim
// dedicated failure levels, so success flags and failure states are
// orthogonal by construction.
struct CloningMap {
    std::size_t input_dim = 0;
    std::size_t n_copies = 2;
    std::size_t flag_rank = 0;    // dim H_p = rank of the flag Gram matrix
    std::size_t failure_dim = 0;  // m failure levels, one per independent state

    std::vector<CVector> input_states;  // S_m amplitudes, canonical order
    CMatrix gram_m;                     // their Gram matrix

    // Column j is the image of |Ψ_j⟩|Σ…⟩|P⁰⟩ in the composite output space.
    CMatrix output_columns;
    // Hermitian PSD factor of the residual; column j holds the failure
    // amplitudes of state j over the shared failure levels.
    CMatrix c_matrix;
    // Column j: coordinates of flag |P^(j)⟩ in an orthonormal basis of H_p.
    CMatrix flag_coords;

    EfficiencySpec gamma;
    PGram pgram;

    std::size_t z_dim() const { return flag_rank + failure_dim; }
    std::size_t copies_dim() const;  // input_dim^n_copies
    std::size_t output_dim() const { return copies_dim() * z_dim(); }

    // max_jk |⟨O_j|O_k⟩ − ⟨Ψ_j|Ψ_k⟩|, the isometry defect on the input span.
    double gram_deviation() const;
};

struct SimOutcome {
    double success_probability = 0.0;
    // Conditioned on success; overlap² of the post-measurement state with
    // (input)^⊗N on the copy factors (z part free). Zero when success never
    // happens.
    double clone_fidelity = 0.0;
    double failure_probability = 0.0;
};

// Requires is_feasible(γ, PGram); throws InfeasibleGammaError /
// ZeroPatternViolationError otherwise.
CloningMap build_cloning_map(const StateSet& set, const Partition& part,
                             const EfficiencySpec& gamma, const PGram& pgram);

// Square unitary on the full composite space agreeing with the map on the
// embedded inputs, completed by Gram–Schmidt over the canonical basis in
// index order. Throws NotIsometryError when the Gram deviation exceeds 1e-8.
CMatrix extend_to_unitary(const CloningMap& map);

// Expands the input over S_m, pushes it through the map, and projects onto
// the success subspace. Throws OutOfSpanError when the input does not lie in
// span(S_m).
SimOutcome simulate_cloning(const CloningMap& map, const QState& input);

struct ProbeCase {
    std::size_t state_index = 0;
    double success_probability = 0.0;
    double clone_fidelity = 0.0;
    bool violation = false;
};

struct ProbeReport {
    EfficiencySpec used_gamma;
    std::vector<ProbeCase> cases;
    bool any_violation = false;
};

// Diagnostic: builds the map while ignoring the zero-pattern guard and
// simulates every dependent state. A dependent state that succeeds with
// imperfect fidelity is exactly the unsound-cloner signature. The forced γ
// is halved until the residual itself is PSD, so the map always exists.
ProbeReport soundness_probe(const StateSet& set, const Partition& part,
                            const EfficiencySpec& forced_gamma, const PGram& pgram);

}  // namespace pqclone

// feasibility.hpp
// Builds X_z^(N) and the residual X⁽¹⁾ − √Γ X_z^(N) √Γ, decides whether a set
// of cloning efficiencies is admissible (the residual must be PSD), maximizes
// the uniform efficiency by bisection, optimizes over flag-state overlaps,
// and evaluates the closed-form bounds available for two instance shapes.

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pqclone/cmatrix.hpp"
#include "pqclone/matrixkit.hpp"
#include "pqclone/stateset.hpp"

namespace pqclone {

// Absolute precision of efficiency bisection.
inline constexpr double kBisectionTol = 1e-10;

// Gram matrix of the success flag states ⟨P^(j)|P^(k)⟩: Hermitian, unit
// diagonal, PSD — anything realizable by actual unit vectors.
class PGram {
public:
    // Empty placeholder; reports default-construct before being filled.
    PGram() = default;

    explicit PGram(CMatrix overlaps);

    // Orthogonal flags.
    static PGram identity(std::size_t m);
    // All flags identical: every overlap 1.
    static PGram all_ones(std::size_t m);
    // From explicit flag vectors (columns, each unit norm): P = F†F.
    static PGram from_flags(const CMatrix& flags);

    std::size_t size() const { return overlaps_.rows(); }
    const CMatrix& overlaps() const { return overlaps_; }

private:
    CMatrix overlaps_;
};

enum class PGramMode { identity, all_ones, search };

// Efficiency vector γ over the independent subset (canonical partition order)
// plus the copy count N of the 1→N cloner.
struct EfficiencySpec {
    std::vector<double> gamma;
    std::size_t n_copies = 2;

    // Uniform t on the clonable indices, zero elsewhere.
    static EfficiencySpec uniform(const Partition& part, double t, std::size_t n_copies);
};

struct FeasibilityReport {
    CMatrix residual;
    double min_eigenvalue = 0.0;
    bool feasible = false;
    EfficiencySpec gamma;
    PGram pgram;
};

// X_z^(N) over S_m in partition order: entry (j,k) = ⟨Ψ_j|Ψ_k⟩^N ⟨P^(j)|P^(k)⟩.
CMatrix xz_matrix(const StateSet& set, const Partition& part, const PGram& pgram,
                  std::size_t n_copies);

// X⁽¹⁾ − √Γ·X_z·√Γ with √Γ the entrywise square root of diag(γ).
CMatrix residual_matrix(const CMatrix& gram_m, const CMatrix& xz, const EfficiencySpec& gamma);

// Admissibility: γ is allowed iff the zero pattern holds on the blocked
// indices and the residual is PSD. Throws ZeroPatternViolationError when a
// blocked index carries positive efficiency.
FeasibilityReport is_feasible(const StateSet& set, const Partition& part,
                              const EfficiencySpec& gamma, const PGram& pgram,
                              double tol = kPsdTol);

struct UniformOptimum {
    double t_star = 0.0;
    FeasibilityReport report;
};

// Largest uniform t on the clonable subset keeping the residual PSD, found by
// bisection on [0, 1] to absolute precision 1e-10. Requires S_l nonempty.
UniformOptimum max_uniform_efficiency(const StateSet& set, const Partition& part,
                                      const PGram& pgram, std::size_t n_copies);

struct PGramOptimum {
    PGram pgram;
    double t_star = 0.0;
};

// Picks flag overlaps: fixed identity / all-ones, or a coordinate-ascent
// search over unit flag vectors restarted from both fixed modes (plus two
// seeded random restarts). The result is PSD with unit diagonal by
// construction.
PGramOptimum optimize_pgram(const StateSet& set, const Partition& part, std::size_t n_copies,
                            PGramMode mode, unsigned seed = 0);

struct ClosedFormBound {
    enum class Kind { two_state, single_clonable_triple };
    Kind kind;
    // Upper bound on the uniform efficiency.
    double bound;
};

// Analytic bounds for the covered shapes: a fully clonable two-state set
// (bound 1/(1+|s|)), or |S_m| = 3 with a single clonable state (the 3×3
// Schur-complement bound). Throws ShapeNotCoveredError otherwise.
ClosedFormBound closed_form_bounds(const StateSet& set, const Partition& part);

struct WeightedOptimum {
    EfficiencySpec gamma;
    FeasibilityReport report;
    double objective = 0.0;
};

// Heuristic maximization of Σ w_j γ_j by coordinate-wise bisection sweeps
// from γ = 0; every accepted iterate is verified feasible. The feasible set
// need not be monotone coordinate-wise, so this is a best-effort ascent, not
// a certified optimum.
WeightedOptimum max_weighted_efficiency(const StateSet& set, const Partition& part,
                                        const PGram& pgram, std::size_t n_copies,
                                        const std::vector<double>& weights);

}  // namespace pqclone

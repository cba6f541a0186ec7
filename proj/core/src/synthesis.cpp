#include "pqclone/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "pqclone/matrixkit.hpp"

namespace pqclone {

namespace {

constexpr double kIsometryTol = 1e-8;
constexpr std::size_t kMaxUnitaryDim = 1024;

std::size_t checked_pow(std::size_t base, std::size_t exp) {
    std::size_t out = 1;
    for (std::size_t k = 0; k < exp; ++k) {
        if (out > (std::size_t{1} << 24) / base) {
            throw Error("composite output space is too large to materialize");
        }
        out *= base;
    }
    return out;
}

// Orthonormal flag coordinates from the flag Gram matrix: rows indexed by an
// eigenbasis of its range, columns by flags, so that ⟨w_j|w_k⟩ reproduces the
// flag overlaps.
CMatrix flag_coordinates(const PGram& pgram, std::size_t& rank) {
    const EigenResult eig = hermitian_eig(pgram.overlaps());
    const std::size_t m = pgram.size();
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < m; ++i) {
        if (eig.eigenvalues[i] > kPsdTol) kept.push_back(i);
    }
    rank = kept.size();
    CMatrix w(rank, m);
    for (std::size_t r = 0; r < rank; ++r) {
        const double root = std::sqrt(eig.eigenvalues[kept[r]]);
        for (std::size_t j = 0; j < m; ++j) {
            w(r, j) = root * std::conj(eig.eigenvectors(j, kept[r]));
        }
    }
    return w;
}

CloningMap assemble_map(const StateSet& set, const Partition& part,
                        const EfficiencySpec& gamma, const PGram& pgram,
                        const CMatrix& residual) {
    CloningMap map;
    map.input_dim = set.dim();
    map.n_copies = gamma.n_copies;
    map.failure_dim = part.m();
    map.gamma = gamma;
    map.pgram = pgram;
    map.gram_m = set.gram_submatrix(part.sm_order);
    for (std::size_t j : part.sm_order) map.input_states.push_back(set.state(j).amplitudes);

    map.c_matrix = psd_sqrt(residual);
    map.flag_coords = flag_coordinates(pgram, map.flag_rank);

    const std::size_t m = part.m();
    const std::size_t copies_dim = checked_pow(map.input_dim, map.n_copies);
    const std::size_t z_dim = map.flag_rank + m;
    map.output_columns = CMatrix(copies_dim * z_dim, m);

    for (std::size_t j = 0; j < m; ++j) {
        const double amp = std::sqrt(gamma.gamma[j]);
        CVector column(copies_dim * z_dim, Complex{0.0, 0.0});
        if (amp > 0.0) {
            const CVector copies = kron_power(map.input_states[j], map.n_copies);
            for (std::size_t x = 0; x < copies_dim; ++x) {
                if (copies[x] == Complex{0.0, 0.0}) continue;
                for (std::size_t z = 0; z < map.flag_rank; ++z) {
                    column[x * z_dim + z] = amp * copies[x] * map.flag_coords(z, j);
                }
            }
        }
        // Failure family: the fixed reference state e₀ on x⊗copies paired
        // with one dedicated z level per independent state.
        for (std::size_t t = 0; t < m; ++t) {
            column[0 * z_dim + map.flag_rank + t] += map.c_matrix(t, j);
        }
        map.output_columns.set_column(j, column);
    }
    return map;
}

}  // namespace

std::size_t CloningMap::copies_dim() const { return checked_pow(input_dim, n_copies); }

double CloningMap::gram_deviation() const {
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

CloningMap build_cloning_map(const StateSet& set, const Partition& part,
                             const EfficiencySpec& gamma, const PGram& pgram) {
    const FeasibilityReport report = is_feasible(set, part, gamma, pgram);
    if (!report.feasible) {
        throw InfeasibleGammaError("residual matrix is not PSD (min eigenvalue " +
                                   std::to_string(report.min_eigenvalue) + ")");
    }
    return assemble_map(set, part, gamma, pgram, report.residual);
}

CMatrix extend_to_unitary(const CloningMap& map) {
    const double dev = map.gram_deviation();
    if (dev > kIsometryTol) {
        throw NotIsometryError("cloning map Gram deviation " + std::to_string(dev) +
                               " exceeds tolerance");
    }
    const std::size_t dim = map.output_dim();
    if (dim > kMaxUnitaryDim) {
        throw Error("unitary extension supported up to dimension " +
                    std::to_string(kMaxUnitaryDim));
    }
    const std::size_t m = map.input_states.size();
    const std::size_t copies_dim = map.copies_dim();
    const std::size_t blank_dim = copies_dim / map.input_dim;

    // Embedded inputs |Ψ_j⟩ ⊗ |Σ…Σ⟩ ⊗ |P⁰⟩ share the Gram matrix of S_m.
    std::vector<CVector> inputs, outputs;
    for (std::size_t j = 0; j < m; ++j) {
        CVector embedded = kron(kron(map.input_states[j], basis_vector(blank_dim, 0)),
                                basis_vector(map.z_dim(), 0));
        inputs.push_back(std::move(embedded));
        outputs.push_back(map.output_columns.column(j));
    }

    // Gram–Schmidt on the inputs, replayed with identical coefficients on the
    // outputs: equal Gram matrices keep the images orthonormal too.
    std::vector<CVector> u, v;
    for (std::size_t j = 0; j < m; ++j) {
        CVector ui = inputs[j];
        CVector vi = outputs[j];
        for (std::size_t k = 0; k < u.size(); ++k) {
            const Complex proj = inner(u[k], inputs[j]);
            for (std::size_t d = 0; d < dim; ++d) {
                ui[d] -= proj * u[k][d];
                vi[d] -= proj * v[k][d];
            }
        }
        const double n = norm2(ui);
        if (n < kIsometryTol) {
            throw NotIsometryError("embedded inputs are numerically dependent");
        }
        for (std::size_t d = 0; d < dim; ++d) {
            ui[d] /= n;
            vi[d] /= n;
        }
        u.push_back(std::move(ui));
        v.push_back(std::move(vi));
    }

    // Complete both families over the canonical basis in index order.
    const auto complete = [&](std::vector<CVector>& family) {
        for (std::size_t e = 0; e < dim && family.size() < dim; ++e) {
            CVector cand = basis_vector(dim, e);
            for (const CVector& f : family) {
                const Complex proj = inner(f, cand);
                for (std::size_t d = 0; d < dim; ++d) cand[d] -= proj * f[d];
            }
            const double n = norm2(cand);
            if (n < 1e-8) continue;
            for (std::size_t d = 0; d < dim; ++d) cand[d] /= n;
            family.push_back(std::move(cand));
        }
        if (family.size() != dim) {
            throw NotIsometryError("orthonormal completion fell short of full dimension");
        }
    };
    complete(u);
    complete(v);

    // U = Σ_i v_i u_i†
    CMatrix unitary(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t row = 0; row < dim; ++row) {
            const Complex vi = v[i][row];
            if (vi == Complex{0.0, 0.0}) continue;
            for (std::size_t col = 0; col < dim; ++col) {
                unitary(row, col) += vi * std::conj(u[i][col]);
            }
        }
    }
    return unitary;
}

SimOutcome simulate_cloning(const CloningMap& map, const QState& input) {
    if (input.dim != map.input_dim) {
        throw DimensionMismatchError("input state dimension mismatch");
    }
    const LeastSquaresResult expansion =
        least_squares_in_span(map.input_states, input.amplitudes);
    if (expansion.residual_norm > kIndependenceTol) {
        throw OutOfSpanError("input state lies outside span(S_m) (residual " +
                             std::to_string(expansion.residual_norm) + ")");
    }

    const std::size_t m = map.input_states.size();
    const std::size_t z_dim = map.z_dim();
    const std::size_t copies_dim = map.copies_dim();
    CVector out(copies_dim * z_dim, Complex{0.0, 0.0});
    for (std::size_t j = 0; j < m; ++j) {
        const Complex cj = expansion.coefficients[j];
        if (cj == Complex{0.0, 0.0}) continue;
        for (std::size_t d = 0; d < out.size(); ++d) {
            out[d] += cj * map.output_columns(d, j);
        }
    }

    double p_success = 0.0;
    double p_failure = 0.0;
    for (std::size_t x = 0; x < copies_dim; ++x) {
        for (std::size_t z = 0; z < z_dim; ++z) {
            const double w = std::norm(out[x * z_dim + z]);
            if (z < map.flag_rank) {
                p_success += w;
            } else {
                p_failure += w;
            }
        }
    }

    SimOutcome outcome;
    outcome.success_probability = p_success;
    outcome.failure_probability = p_failure;
    if (p_success > 1e-15) {
        // χ_z = ⟨input^⊗N| ⊗ ⟨z| applied to the success branch; its squared
        // norm is the best overlap with a perfect-copies product state.
        const CVector target = kron_power(input.amplitudes, map.n_copies);
        double chi_norm2 = 0.0;
        for (std::size_t z = 0; z < map.flag_rank; ++z) {
            Complex chi{0.0, 0.0};
            for (std::size_t x = 0; x < copies_dim; ++x) {
                chi += std::conj(target[x]) * out[x * z_dim + z];
            }
            chi_norm2 += std::norm(chi);
        }
        outcome.clone_fidelity = chi_norm2 / p_success;
    }
    return outcome;
}

ProbeReport soundness_probe(const StateSet& set, const Partition& part,
                            const EfficiencySpec& forced_gamma, const PGram& pgram) {
    const CMatrix gram_m = set.gram_submatrix(part.sm_order);
    const CMatrix xz = xz_matrix(set, part, pgram, forced_gamma.n_copies);

    EfficiencySpec gamma = forced_gamma;
    CMatrix residual = residual_matrix(gram_m, xz, gamma);
    for (int halvings = 0; halvings < 200 && !is_psd(residual, kPsdTol).psd; ++halvings) {
        for (double& g : gamma.gamma) g *= 0.5;
        residual = residual_matrix(gram_m, xz, gamma);
    }

    const CloningMap map = assemble_map(set, part, gamma, pgram, residual);

    ProbeReport report;
    report.used_gamma = gamma;
    for (std::size_t j : part.dependent) {
        const SimOutcome sim = simulate_cloning(map, set.state(j));
        ProbeCase pc;
        pc.state_index = j;
        pc.success_probability = sim.success_probability;
        pc.clone_fidelity = sim.clone_fidelity;
        pc.violation =
            sim.success_probability > 1e-9 && sim.clone_fidelity < 1.0 - 1e-6;
        report.any_violation = report.any_violation || pc.violation;
        report.cases.push_back(pc);
    }
    return report;
}

}  // namespace pqclone

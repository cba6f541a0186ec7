#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "pqclone/discrimination.hpp"

using namespace pqclone;

namespace {

Partition partition_of(const StateSet& set) {
    return clonable_partition(set, maximal_independent_subset(set));
}

std::vector<double> uniform_gamma(const Partition& part, double t) {
    std::vector<double> gamma(part.m(), 0.0);
    for (std::size_t j = 0; j < part.l(); ++j) gamma[j] = t;
    return gamma;
}

}  // namespace

TEST_CASE("discrimination optimum for two states is 1 - s") {
    const double s = 1.0 / std::sqrt(2.0);
    const StateSet pair = testutil::two_state_set(s);
    const DiscriminationOptimum opt = disc_max_uniform(pair, partition_of(pair));
    CHECK(std::abs(opt.t_star - (1.0 - s)) <= 1e-8);
    CHECK(std::abs(opt.min_eigenvalue) <= 1e-8);
}

TEST_CASE("orthonormal states discriminate with certainty") {
    const StateSet ortho = load_states(2, {{Complex{1, 0}, Complex{0, 0}},
                                           {Complex{0, 0}, Complex{1, 0}}});
    CHECK(disc_max_uniform(ortho, partition_of(ortho)).t_star == doctest::Approx(1.0));
}

TEST_CASE("four-state discrimination matches the cloning bound") {
    const StateSet set = testutil::four_state_set();
    const DiscriminationOptimum opt = disc_max_uniform(set, partition_of(set));
    CHECK(std::abs(opt.t_star - 1.0 / 3.0) <= 1e-8);
}

TEST_CASE("discrimination needs a clonable subset") {
    const StateSet blocked = testutil::blocked_three_state_set();
    CHECK_THROWS_AS(disc_max_uniform(blocked, partition_of(blocked)),
                    EmptyClonableSubsetError);
}

TEST_CASE("X - Gamma equals the cloning residual with an identity correction") {
    const StateSet set = testutil::four_state_set();
    const Partition part = partition_of(set);
    const CMatrix gram_m = set.gram_submatrix(part.sm_order);
    const std::vector<double> gamma = uniform_gamma(part, 0.2);

    EfficiencySpec spec;
    spec.gamma = gamma;
    spec.n_copies = 2;
    const CMatrix via_residual = residual_matrix(gram_m, CMatrix::identity(3), spec);

    CMatrix direct = gram_m;
    for (std::size_t j = 0; j < 3; ++j) direct(j, j) -= gamma[j];
    CHECK((via_residual - direct).max_abs() <= 1e-14);
}

TEST_CASE("perfect discrimination map for orthonormal states") {
    const StateSet ortho = load_states(2, {{Complex{1, 0}, Complex{0, 0}},
                                           {Complex{0, 0}, Complex{1, 0}}});
    const Partition part = partition_of(ortho);
    const DiscriminationMap map = build_discrimination_map(ortho, part, {1.0, 1.0});
    CHECK(map.failure_block.max_abs() <= 1e-9);
    CHECK(map.gram_deviation() <= 1e-12);
    for (std::size_t j = 0; j < 2; ++j) {
        const auto probs = simulate_discrimination(map, ortho.state(j));
        CHECK(probs[j] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(probs[2] <= 1e-12);
    }
}

TEST_CASE("two-state boundary map has a rank-1 failure block") {
    const double s = 1.0 / std::sqrt(2.0);
    const StateSet pair = testutil::two_state_set(s);
    const Partition part = partition_of(pair);
    const DiscriminationMap map = build_discrimination_map(pair, part, {1.0 - s, 1.0 - s});
    CHECK(map.gram_deviation() <= 1e-9);

    // X − Γ has eigenvalues {0, 2s} at the bound.
    const EigenResult eig = hermitian_eig(map.failure_block);
    std::size_t rank = 0;
    for (double ev : eig.eigenvalues) {
        if (ev > 1e-4) ++rank;
    }
    CHECK(rank == 1);
}

TEST_CASE("four-state discrimination map preserves the Gram matrix") {
    const StateSet set = testutil::four_state_set();
    const Partition part = partition_of(set);
    const DiscriminationMap map =
        build_discrimination_map(set, part, uniform_gamma(part, 1.0 / 3.0));
    CHECK(map.gram_deviation() <= 1e-9);
}

TEST_CASE("infeasible discrimination efficiencies are rejected") {
    const StateSet pair = testutil::two_state_set(0.5);
    const Partition part = partition_of(pair);
    CHECK_THROWS_AS(build_discrimination_map(pair, part, {0.9, 0.9}), InfeasibleGammaError);

    const StateSet four = testutil::four_state_set();
    const Partition fpart = partition_of(four);
    std::vector<double> bad = uniform_gamma(fpart, 0.1);
    bad[1] = 0.3;  // blocked
    CHECK_THROWS_AS(build_discrimination_map(four, fpart, bad), InfeasibleGammaError);
}

TEST_CASE("unambiguity: a state only fires its own flag") {
    const StateSet set = testutil::four_state_set();
    const Partition part = partition_of(set);
    const DiscriminationMap map =
        build_discrimination_map(set, part, uniform_gamma(part, 1.0 / 3.0));

    // Ψ₁ (clonable, flag index 0): fires flag 0 with 1/3, failure with 2/3.
    const auto probs = simulate_discrimination(map, set.state(0));
    CHECK(std::abs(probs[0] - 1.0 / 3.0) <= 1e-10);
    CHECK(std::abs(probs[4] - 2.0 / 3.0) <= 1e-10);
    for (std::size_t f : {1, 2, 3}) CHECK(probs[f] <= 1e-12);

    // Blocked states never fire a conclusive flag.
    for (std::size_t blocked : {1, 2}) {
        const auto bp = simulate_discrimination(map, set.state(blocked));
        for (std::size_t f = 0; f < 4; ++f) CHECK(bp[f] <= 1e-12);
        CHECK(std::abs(bp[4] - 1.0) <= 1e-10);
    }

    // The dependent state fails outright.
    const auto dep = simulate_discrimination(map, set.state(3));
    CHECK(std::abs(dep[4] - 1.0) <= 1e-10);
}

TEST_CASE("flag probabilities sum to one for arbitrary in-span inputs") {
    std::mt19937 rng(71);
    for (int rep = 0; rep < 10; ++rep) {
        const StateSet set = testutil::random_single_clonable_triple(rng);
        const Partition part = partition_of(set);
        const double t = disc_max_uniform(set, part).t_star;
        const DiscriminationMap map =
            build_discrimination_map(set, part, uniform_gamma(part, 0.8 * t));

        for (std::size_t j = 0; j < set.size(); ++j) {
            const auto probs = simulate_discrimination(map, set.state(j));
            double total = 0.0;
            for (double p : probs) total += p;
            CHECK(std::abs(total - 1.0) <= 1e-10);
        }
        // Unambiguity across all pairs in S_m.
        for (std::size_t j = 0; j < part.m(); ++j) {
            const auto probs = simulate_discrimination(map, set.state(part.sm_order[j]));
            for (std::size_t k = 0; k < part.m(); ++k) {
                if (k == j) continue;
                CHECK(probs[map.flag_index[k]] <= 1e-12);
            }
        }
    }
}

TEST_CASE("discrimination rejects inputs outside the span") {
    const StateSet set = load_states(3, {{Complex{1, 0}, Complex{0, 0}, Complex{0, 0}},
                                         {Complex{0, 0}, Complex{1, 0}, Complex{0, 0}}});
    const Partition part = partition_of(set);
    const DiscriminationMap map = build_discrimination_map(set, part, {1.0, 1.0});
    CHECK_THROWS_AS(
        simulate_discrimination(map, QState{3, {Complex{0, 0}, Complex{0, 0}, Complex{1, 0}}}),
        OutOfSpanError);
}

TEST_CASE("t*(N) follows the closed form and converges to the discrimination value") {
    const double s = 1.0 / std::sqrt(2.0);
    const StateSet pair = testutil::two_state_set(s);
    const Partition part = partition_of(pair);
    const LimitComparison table =
        pqc_limit_comparison(pair, part, {2, 3, 5}, PGramMode::all_ones);

    REQUIRE(table.rows.size() == 3);
    for (const LimitRow& row : table.rows) {
        const double expected = (1.0 - s) / (1.0 - std::pow(s, double(row.n_copies)));
        CHECK(std::abs(row.t_star - expected) <= 1e-8);
    }
    CHECK(table.rows[0].t_star == doctest::Approx(0.585786).epsilon(1e-5));
    CHECK(table.rows[1].t_star == doctest::Approx(0.453082).epsilon(1e-5));
    CHECK(std::abs(table.t_disc - (1.0 - s)) <= 1e-8);

    double prev_gap = 1.0;
    for (const LimitRow& row : table.rows) {
        const double gap = row.t_star - table.t_disc;
        CHECK(gap >= -1e-9);
        CHECK(gap <= prev_gap + 1e-9);
        prev_gap = gap;
    }
}

TEST_CASE("four-state optima coincide for every copy count") {
    const StateSet set = testutil::four_state_set();
    const Partition part = partition_of(set);
    const LimitComparison table =
        pqc_limit_comparison(set, part, {2, 3, 5}, PGramMode::identity);
    for (const LimitRow& row : table.rows) {
        CHECK(std::abs(row.t_star - 1.0 / 3.0) <= 1e-8);
    }
    CHECK(std::abs(table.t_disc - 1.0 / 3.0) <= 1e-8);
}

TEST_CASE("orthonormal states hit unit efficiency at every N") {
    const StateSet ortho = load_states(2, {{Complex{1, 0}, Complex{0, 0}},
                                           {Complex{0, 0}, Complex{1, 0}}});
    const Partition part = partition_of(ortho);
    const LimitComparison table =
        pqc_limit_comparison(ortho, part, {2, 5, 10}, PGramMode::identity);
    for (const LimitRow& row : table.rows) CHECK(row.t_star == doctest::Approx(1.0));
    CHECK(table.t_disc == doctest::Approx(1.0));
}

TEST_CASE("cloning efficiency dominates discrimination on positive-overlap sets") {
    std::mt19937 rng(73);
    for (int rep = 0; rep < 8; ++rep) {
        const std::size_t dim = 2 + rep % 2;
        std::vector<CVector> amps;
        for (std::size_t j = 0; j < dim; ++j) {
            amps.push_back(testutil::random_nonneg_unit_vector(dim, rng));
        }
        const StateSet set = load_states(dim, amps);
        const Partition part = partition_of(set);
        if (part.l() == 0) continue;
        const LimitComparison table =
            pqc_limit_comparison(set, part, {2, 3, 5, 10}, PGramMode::all_ones);
        double prev_gap = std::numeric_limits<double>::infinity();
        for (const LimitRow& row : table.rows) {
            const double gap = row.t_star - table.t_disc;
            CHECK(gap >= -1e-9);
            CHECK(gap <= prev_gap + 1e-9);
            prev_gap = gap;
        }
    }
}

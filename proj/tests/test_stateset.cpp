#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "pqclone/matrixkit.hpp"
#include "pqclone/stateset.hpp"

using namespace pqclone;

namespace {

// Independent states followed by dependent combinations of a chosen subset;
// returns the set plus the expected independent count.
struct GeneratedSet {
    StateSet set;
    std::size_t expected_m;
};

GeneratedSet random_dependent_set(std::mt19937& rng) {
    std::uniform_int_distribution<std::size_t> dim_dist(2, 4);
    const std::size_t dim = dim_dist(rng);
    std::uniform_int_distribution<std::size_t> m_dist(2, dim);
    const std::size_t m = m_dist(rng);

    std::vector<CVector> amps;
    while (amps.size() < m) {
        CVector cand = testutil::random_unit_vector(dim, rng);
        bool fresh = true;
        for (const CVector& prev : amps) {
            if (std::abs(inner(prev, cand)) > 0.9) fresh = false;
        }
        if (fresh) amps.push_back(std::move(cand));
    }
    std::uniform_int_distribution<std::size_t> extra_dist(1, 2);
    std::uniform_real_distribution<double> mag(0.3, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 6.283);
    const std::size_t extras = extra_dist(rng);
    for (std::size_t e = 0; e < extras; ++e) {
        CVector combo(dim, Complex{0.0, 0.0});
        for (std::size_t j = 0; j < m; ++j) {
            const Complex coeff = std::polar(mag(rng), phase(rng));
            for (std::size_t d = 0; d < dim; ++d) combo[d] += coeff * amps[j][d];
        }
        const double n = norm2(combo);
        for (auto& c : combo) c /= n;
        amps.push_back(std::move(combo));
    }
    return GeneratedSet{load_states(dim, amps), m};
}

}  // namespace

TEST_CASE("load_states validates and computes the Gram matrix") {
    const StateSet basis = load_states(2, {{Complex{1, 0}, Complex{0, 0}},
                                           {Complex{0, 0}, Complex{1, 0}}});
    CHECK((basis.gram() - CMatrix::identity(2)).max_abs() <= 1e-15);

    const double r2 = 1.0 / std::sqrt(2.0);
    const StateSet pair = load_states(2, {{Complex{1, 0}, Complex{0, 0}},
                                          {Complex{r2, 0}, Complex{r2, 0}}});
    CHECK(pair.gram()(0, 1).real() == doctest::Approx(r2).epsilon(1e-12));
    CHECK(pair.gram()(1, 0).real() == doctest::Approx(r2).epsilon(1e-12));
    CHECK(pair.gram()(0, 0) == Complex{1.0, 0.0});

    CHECK_THROWS_AS(load_states(2, {{Complex{0, 0}, Complex{0, 0}}}), ZeroVectorError);
    CHECK_THROWS_AS(load_states(2, {{Complex{1, 0}}}), DimensionMismatchError);
    CHECK_THROWS_AS(load_states(2, {}), EmptySetError);
}

TEST_CASE("load_states renormalizes slightly-off inputs") {
    const StateSet set = load_states(2, {{Complex{1.0 + 5e-7, 0}, Complex{0, 0}}});
    CHECK(norm2(set.state(0).amplitudes) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("maximal independent subset: orthonormal prefix plus a superposition") {
    const StateSet set = testutil::blocked_three_state_set();
    const IndependentSubset sub = maximal_independent_subset(set);
    REQUIRE(sub.indices == std::vector<std::size_t>{0, 1});
    REQUIRE(sub.dependent == std::vector<std::size_t>{2});
    const double r2 = 1.0 / std::sqrt(2.0);
    CHECK(sub.expansions[0][0].real() == doctest::Approx(r2).epsilon(1e-10));
    CHECK(sub.expansions[0][1].real() == doctest::Approx(r2).epsilon(1e-10));
}

TEST_CASE("maximal independent subset: the four-state example") {
    const StateSet set = testutil::four_state_set();
    const IndependentSubset sub = maximal_independent_subset(set);
    REQUIRE(sub.indices == std::vector<std::size_t>{0, 1, 2});
    REQUIRE(sub.dependent == std::vector<std::size_t>{3});
    const double r3 = 1.0 / std::sqrt(3.0);
    CHECK(std::abs(sub.expansions[0][0]) <= 1e-10);
    CHECK(sub.expansions[0][1].real() == doctest::Approx(r3).epsilon(1e-10));
    CHECK(sub.expansions[0][2].real() == doctest::Approx(r3).epsilon(1e-10));
}

TEST_CASE("maximal independent subset: fully independent sets keep every index") {
    const StateSet set = testutil::two_state_set(1.0 / std::sqrt(2.0));
    const IndependentSubset sub = maximal_independent_subset(set);
    CHECK(sub.indices == std::vector<std::size_t>{0, 1});
    CHECK(sub.dependent.empty());
    CHECK(sub.expansions.empty());
}

TEST_CASE("clonable partition of the four-state example") {
    const StateSet set = testutil::four_state_set();
    const Partition part = clonable_partition(set, maximal_independent_subset(set));
    CHECK(part.clonable == std::vector<std::size_t>{0});
    CHECK(part.blocked == std::vector<std::size_t>{1, 2});
    CHECK(part.dependent == std::vector<std::size_t>{3});
    CHECK(part.sm_order == std::vector<std::size_t>{0, 1, 2});
    CHECK(part.part_pqc_possible());
    const double r3 = 1.0 / std::sqrt(3.0);
    CHECK(part.usage[0] <= 1e-10);
    CHECK(part.usage[1] == doctest::Approx(r3).epsilon(1e-10));
    CHECK(part.usage[2] == doctest::Approx(r3).epsilon(1e-10));
}

TEST_CASE("clonable partition flags the impossible three-state set") {
    const StateSet set = testutil::blocked_three_state_set();
    const Partition part = clonable_partition(set, maximal_independent_subset(set));
    CHECK(part.clonable.empty());
    CHECK_FALSE(part.part_pqc_possible());
    const double r2 = 1.0 / std::sqrt(2.0);
    for (double a : part.usage) CHECK(a == doctest::Approx(r2).epsilon(1e-10));
}

TEST_CASE("fully independent sets are fully clonable") {
    const StateSet set = load_states(2, {{Complex{1, 0}, Complex{0, 0}},
                                         {Complex{0, 0}, Complex{1, 0}}});
    const Partition part = clonable_partition(set, maximal_independent_subset(set));
    CHECK(part.clonable == std::vector<std::size_t>{0, 1});
    CHECK(part.blocked.empty());
    CHECK(part.dependent.empty());
    CHECK(part.l() == part.m());
}

TEST_CASE("dependent states reconstruct from their expansions") {
    std::mt19937 rng(23);
    for (int rep = 0; rep < 60; ++rep) {
        const GeneratedSet gen = random_dependent_set(rng);
        const IndependentSubset sub = maximal_independent_subset(gen.set);
        REQUIRE(sub.indices.size() == gen.expected_m);
        for (std::size_t k = 0; k < sub.dependent.size(); ++k) {
            CVector rebuilt(gen.set.dim(), Complex{0.0, 0.0});
            for (std::size_t i = 0; i < sub.indices.size(); ++i) {
                const CVector& bi = gen.set.state(sub.indices[i]).amplitudes;
                for (std::size_t d = 0; d < rebuilt.size(); ++d) {
                    rebuilt[d] += sub.expansions[k][i] * bi[d];
                }
            }
            const CVector& target = gen.set.state(sub.dependent[k]).amplitudes;
            double err = 0.0;
            for (std::size_t d = 0; d < rebuilt.size(); ++d) {
                err += std::norm(rebuilt[d] - target[d]);
            }
            CHECK(std::sqrt(err) <= 1e-8);
        }
    }
}

TEST_CASE("greedy subset size matches the spectral rank of the Gram matrix") {
    std::mt19937 rng(29);
    for (int rep = 0; rep < 60; ++rep) {
        const GeneratedSet gen = random_dependent_set(rng);
        const IndependentSubset sub = maximal_independent_subset(gen.set);
        const EigenResult eig = hermitian_eig(gen.set.gram());
        std::size_t rank = 0;
        for (double ev : eig.eigenvalues) {
            if (ev > 1e-8) ++rank;
        }
        CHECK(sub.indices.size() == rank);
    }
}

TEST_CASE("clonable states never appear in dependent expansions") {
    std::mt19937 rng(31);
    for (int rep = 0; rep < 60; ++rep) {
        const GeneratedSet gen = random_dependent_set(rng);
        const Partition part =
            clonable_partition(gen.set, maximal_independent_subset(gen.set));
        for (const CVector& coeffs : part.expansions) {
            for (std::size_t j = 0; j < part.l(); ++j) {
                CHECK(std::abs(coeffs[j]) <= 1e-8);
            }
        }
    }
}

TEST_CASE("a 4-set with two independents and one clonable forces duplicates") {
    // With S_m of size 2 and S_l of size 1, the remaining three states can
    // only be phase copies of the blocked one.
    std::mt19937 rng(37);
    for (int rep = 0; rep < 20; ++rep) {
        const CVector psi1 = testutil::random_unit_vector(3, rng);
        CVector psi2 = testutil::random_unit_vector(3, rng);
        if (std::abs(inner(psi1, psi2)) > 0.9) continue;
        std::uniform_real_distribution<double> phase(0.0, 6.283);
        CVector psi3 = psi2, psi4 = psi2;
        const Complex ph3 = std::polar(1.0, phase(rng));
        const Complex ph4 = std::polar(1.0, phase(rng));
        for (auto& a : psi3) a *= ph3;
        for (auto& a : psi4) a *= ph4;

        const StateSet set = load_states(3, {psi1, psi2, psi3, psi4});
        const Partition part = clonable_partition(set, maximal_independent_subset(set));
        REQUIRE(part.m() == 2);
        REQUIRE(part.clonable == std::vector<std::size_t>{0});

        for (std::size_t a : {1, 2, 3}) {
            for (std::size_t b : {1, 2, 3}) {
                CHECK(equal_up_to_phase(set.state(a), set.state(b)));
            }
        }
        CHECK_FALSE(equal_up_to_phase(set.state(0), set.state(1)));
    }
}

TEST_CASE("appending states never unblocks an index") {
    std::mt19937 rng(41);
    for (int rep = 0; rep < 40; ++rep) {
        const GeneratedSet gen = random_dependent_set(rng);
        const Partition before =
            clonable_partition(gen.set, maximal_independent_subset(gen.set));

        // Append one more dependent combination of everything independent.
        std::vector<CVector> amps;
        for (std::size_t j = 0; j < gen.set.size(); ++j) {
            amps.push_back(gen.set.state(j).amplitudes);
        }
        CVector combo(gen.set.dim(), Complex{0.0, 0.0});
        std::uniform_real_distribution<double> mag(0.3, 1.0);
        for (std::size_t i : before.independent) {
            const Complex c{mag(rng), mag(rng)};
            for (std::size_t d = 0; d < combo.size(); ++d) {
                combo[d] += c * gen.set.state(i).amplitudes[d];
            }
        }
        const double n = norm2(combo);
        for (auto& c : combo) c /= n;
        amps.push_back(combo);

        const StateSet bigger = load_states(gen.set.dim(), amps);
        const Partition after =
            clonable_partition(bigger, maximal_independent_subset(bigger));
        for (std::size_t idx : before.blocked) {
            const bool still_blocked =
                std::find(after.blocked.begin(), after.blocked.end(), idx) != after.blocked.end();
            CHECK(still_blocked);
        }
    }
}

TEST_CASE("equal_up_to_phase compares rays, not components") {
    const double r2 = 1.0 / std::sqrt(2.0);
    const QState plus{2, {Complex{r2, 0}, Complex{r2, 0}}};
    const QState rotated{2, {Complex{0, r2}, Complex{0, r2}}};
    const QState minus{2, {Complex{r2, 0}, Complex{-r2, 0}}};
    CHECK(equal_up_to_phase(plus, rotated));
    CHECK_FALSE(equal_up_to_phase(plus, minus));
}

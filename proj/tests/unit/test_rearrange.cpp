#include <doctest.h>

#include "dnls/random.hpp"
#include "dnls/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace dnls;

namespace {

// Direct evaluation with explicit zeros on both ends.
double energy_oracle(const Sequence1D& f, double p) {
    Sequence1D padded{0.0};
    padded.insert(padded.end(), f.begin(), f.end());
    padded.push_back(0.0);
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < padded.size(); ++i) s += std::pow(std::abs(padded[i + 1] - padded[i]), p);
    return s;
}

Sequence1D sorted_abs(const Sequence1D& f) {
    Sequence1D a(f.size());
    std::transform(f.begin(), f.end(), a.begin(), [](double x) { return std::abs(x); });
    std::sort(a.begin(), a.end());
    return a;
}

}  // namespace

TEST_CASE("rearrangement examples") {
    const CenteredSequence r = symmetric_decreasing_rearrangement({1.0, 3.0, 2.0});
    CHECK(r.values[r.center] == 3.0);
    CHECK(r.values == Sequence1D{1.0, 3.0, 2.0});

    const CenteredSequence s = symmetric_decreasing_rearrangement({-1.0, 2.0, -3.0});
    CHECK(s.values[s.center] == 3.0);
    CHECK(sorted_abs(s.values) == Sequence1D{1.0, 2.0, 3.0});
    CHECK(is_bell_shaped(s.values));

    // keeps the side each value sits on, so a one-sided bell is not the global minimiser
    CHECK(edge_energy({3.0, 2.0, 1.0}, 2.0) == doctest::Approx(12.0));
    CHECK(edge_energy(balanced_rearrangement({3.0, 2.0, 1.0}).values, 2.0) == doctest::Approx(10.0));

    const Sequence1D bell{0.5, 1.0, 4.0, 4.0, 2.0, 0.1};
    const CenteredSequence b = symmetric_decreasing_rearrangement(bell);
    CHECK(b.values == bell);
}

TEST_CASE("edge energy") {
    CHECK(edge_energy({1.0, 3.0, 2.0}, 2.0) == doctest::Approx(1.0 + 4.0 + 1.0 + 4.0));
    CHECK(edge_energy({}, 2.0) == 0.0);
    CHECK(edge_energy({2.0}, 3.0) == doctest::Approx(16.0));
    Rng rng(3);
    for (int k = 0; k < 100; ++k) {
        Sequence1D f(1 + rng.index(10));
        for (double& x : f) x = rng.uniform(-1.0, 1.0);
        for (double p : {1.5, 2.0, 3.0}) CHECK(edge_energy(f, p) == doctest::Approx(energy_oracle(f, p)).epsilon(1e-13));
    }
}

TEST_CASE("rearrangement preserves l^p norms and is bell-shaped") {
    Rng rng(11);
    for (int k = 0; k < 300; ++k) {
        Sequence1D f(1 + rng.index(12));
        for (double& x : f) x = rng.uniform(-1.0, 1.0);
        const CenteredSequence r = symmetric_decreasing_rearrangement(f);
        CHECK(sorted_abs(r.values) == sorted_abs(f));
        CHECK(is_bell_shaped(r.values));
        CHECK(is_signless(r.values));
        CHECK(r.values[r.center] == *std::max_element(r.values.begin(), r.values.end()));
        for (std::size_t i = r.center; i + 1 < r.values.size(); ++i) CHECK(r.values[i] >= r.values[i + 1]);
        for (std::size_t i = r.center; i > 0; --i) CHECK(r.values[i] >= r.values[i - 1]);
    }
}

TEST_CASE("Szego inequality on random sequences") {
    Rng rng(5);
    for (int k = 0; k < 1000; ++k) {
        Sequence1D f(1 + rng.index(12));
        for (double& x : f) x = rng.uniform(-1.0, 1.0);
        for (double p : {1.5, 2.0, 3.0}) {
            const SzegoReport r = check_szego(f, p);
            CHECK(r.passed);
            CHECK(r.energy >= r.rearranged_energy - 1e-12);
        }
    }
}

TEST_CASE("Szego examples") {
    const SzegoReport sign_change = check_szego({1.0, -2.0, 1.0}, 2.0);
    CHECK(sign_change.energy == doctest::Approx(1.0 + 9.0 + 9.0 + 1.0));
    CHECK(sign_change.rearranged_energy < sign_change.energy);
    CHECK_FALSE(sign_change.equality);
    CHECK(sign_change.passed);

    // (1,3,2) is already bell-shaped: both sides evaluate to 10
    const SzegoReport bell = check_szego({1.0, 3.0, 2.0}, 2.0);
    CHECK(bell.energy == doctest::Approx(10.0));
    CHECK(bell.rearranged_energy == doctest::Approx(10.0));
    CHECK(bell.equality);
    CHECK(bell.equality_expected);

    const SzegoReport hump = check_szego({0.2, 0.7, 1.0, 1.0, 0.3}, 1.5);
    CHECK(hump.equality);
    CHECK(hump.passed);
}

TEST_CASE("balanced arrangement attains the least energy over orderings") {
    Rng rng(17);
    for (int k = 0; k < 100; ++k) {
        Sequence1D f(1 + rng.index(6));
        for (double& x : f) x = rng.uniform(-1.0, 1.0);
        for (double p : {1.5, 2.0, 3.0}) {
            // oracle: every ordering of |f|, evaluated directly
            Sequence1D a = sorted_abs(f);
            double best = energy_oracle(a, p);
            while (std::next_permutation(a.begin(), a.end())) best = std::min(best, energy_oracle(a, p));
            CHECK(min_energy_over_permutations(f, p) == doctest::Approx(best).epsilon(1e-13));
            CHECK(edge_energy(balanced_rearrangement(f).values, p) == doctest::Approx(best).epsilon(1e-13));
            CHECK(edge_energy(symmetric_decreasing_rearrangement(f).values, p) <= edge_energy(f, p) + 1e-12);
        }
    }
}

TEST_CASE("permutation inequality for (3,2,1)") {
    const PermutationReport r = check_permutation_inequality({3.0, 2.0, 1.0}, 2.0);
    CHECK(r.permutations_checked == 24);
    CHECK(r.inequality_holds);
    CHECK(r.strictly_decreasing);
    CHECK(r.identity_energy == doctest::Approx(3.0));
    CHECK(r.min_energy == doctest::Approx(3.0));
    // the sum runs over interior edges only, so reversal ties with the identity
    const std::vector<std::vector<std::size_t>> expected{{0, 1, 2, 3}, {3, 2, 1, 0}};
    CHECK(r.minimizers == expected);
    CHECK(r.equality_only_trivial);
    CHECK(r.identity_unique_with_fixed_tail);
    CHECK(r.violating.empty());
}

TEST_CASE("permutation inequality edge cases") {
    const PermutationReport flat = check_permutation_inequality({1.0, 1.0}, 2.0);
    CHECK(flat.inequality_holds);
    CHECK_FALSE(flat.strictly_decreasing);
    CHECK(flat.minimizers.size() > 2);

    const PermutationReport single = check_permutation_inequality({2.5}, 2.0);
    CHECK(single.inequality_holds);
    CHECK(single.permutations_checked == 2);
    CHECK(single.min_energy == doctest::Approx(single.identity_energy));

    Rng rng(23);
    for (int k = 0; k < 40; ++k) {
        Sequence1D a(1 + rng.index(5));
        for (double& x : a) x = rng.uniform(0.0, 1.0);
        std::sort(a.rbegin(), a.rend());
        for (double p : {1.5, 2.0, 3.0}) {
            const PermutationReport r = check_permutation_inequality(a, p);
            CHECK(r.inequality_holds);
            CHECK(r.identity_unique_with_fixed_tail);
        }
    }
}

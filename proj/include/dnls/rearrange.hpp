#pragma once

#include <cstddef>
#include <vector>

namespace dnls {

/// Finite section of a one-dimensional sequence; implicit zeros on both sides.
using Sequence1D = std::vector<double>;

/// A sequence together with the position of its index-0 site.
struct CenteredSequence {
    Sequence1D values;
    std::size_t center = 0;
};

/// Rearrangement of |f| around its (leftmost) maximum: the maximum moves to index 0 and the
/// values on each side are sorted to be non-increasing away from it. Bell-shaped input is
/// returned unchanged up to translation.
CenteredSequence symmetric_decreasing_rearrangement(const Sequence1D& f);

/// Organ-pipe arrangement of |f|: sorted values placed at 0, +1, -1, +2, -2, ... (ties go right
/// first). Attains the least edge energy over all orderings.
CenteredSequence balanced_rearrangement(const Sequence1D& f);

/// sum_n |f_{n+1} - f_n|^p including the two jumps to the implicit zeros.
double edge_energy(const Sequence1D& f, double p);

/// |f_{j0}| >= |f_{j0 -+ 1}| >= ... on both sides of some j0.
bool is_bell_shaped(const Sequence1D& f, double slack = 0.0);

bool is_signless(const Sequence1D& f);

struct PermutationReport {
    bool inequality_holds = false;
    std::size_t permutations_checked = 0;
    double identity_energy = 0.0;
    double min_energy = 0.0;
    std::vector<std::vector<std::size_t>> minimizers;  // all permutations attaining the minimum
    bool strictly_decreasing = false;
    // strict input: minimizers are exactly {id, reversal}
    bool equality_only_trivial = false;
    // strict input: id is the only minimizer among permutations fixing the trailing zero
    bool identity_unique_with_fixed_tail = false;
    std::vector<std::size_t> violating;  // first permutation beating the identity, if any
};

/// Exhaustive check of sum_j |a_{mu(j+1)} - a_{mu(j)}|^p >= sum_j |a_{j+1} - a_j|^p over all
/// permutations mu of {0..N+1}, with a_{N+1} = 0 appended. Needs a non-increasing, nonnegative
/// input of length <= 8.
PermutationReport check_permutation_inequality(const Sequence1D& a, double p);

struct SzegoReport {
    double energy = 0.0;             // T(f)
    double rearranged_energy = 0.0;  // T of symmetric_decreasing_rearrangement(f)
    double balanced_energy = 0.0;    // T of balanced_rearrangement(f)
    bool inequality_holds = false;
    bool equality = false;           // T(f) == T(rearranged) within rounding
    bool equality_expected = false;  // signless and bell-shaped
    bool passed = false;
};

SzegoReport check_szego(const Sequence1D& f, double p);

/// min over all orderings of |f| of edge_energy (brute force, length <= 8).
double min_energy_over_permutations(const Sequence1D& f, double p);

}  // namespace dnls

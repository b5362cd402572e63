#include "dnls/rearrange.hpp"

#include "dnls/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace dnls {

namespace {

Sequence1D absolute(const Sequence1D& f) {
    Sequence1D a(f.size());
    std::transform(f.begin(), f.end(), a.begin(), [](double x) { return std::abs(x); });
    return a;
}

void require_p(double p) {
    if (!(p > 1.0) || std::isinf(p)) throw ConfigError("edge energy needs 1 < p < infinity");
}

}  // namespace

CenteredSequence symmetric_decreasing_rearrangement(const Sequence1D& f) {
    CenteredSequence out;
    if (f.empty()) return out;
    const Sequence1D a = absolute(f);
    const auto peak = static_cast<std::size_t>(std::max_element(a.begin(), a.end()) - a.begin());
    Sequence1D left(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(peak));
    Sequence1D right(a.begin() + static_cast<std::ptrdiff_t>(peak) + 1, a.end());
    std::sort(right.begin(), right.end(), std::greater<>());
    std::sort(left.begin(), left.end());  // ascending towards the peak
    out.values = left;
    out.values.push_back(a[peak]);
    out.values.insert(out.values.end(), right.begin(), right.end());
    out.center = left.size();
    return out;
}

CenteredSequence balanced_rearrangement(const Sequence1D& f) {
    CenteredSequence out;
    if (f.empty()) return out;
    Sequence1D a = absolute(f);
    std::stable_sort(a.begin(), a.end(), std::greater<>());
    Sequence1D left, right;
    for (std::size_t k = 1; k < a.size(); ++k) (k % 2 ? right : left).push_back(a[k]);
    out.values.assign(left.rbegin(), left.rend());
    out.values.push_back(a[0]);
    out.values.insert(out.values.end(), right.begin(), right.end());
    out.center = left.size();
    return out;
}

double edge_energy(const Sequence1D& f, double p) {
    require_p(p);
    double prev = 0.0, sum = 0.0;
    for (double x : f) {
        sum += std::pow(std::abs(x - prev), p);
        prev = x;
    }
    return sum + std::pow(std::abs(prev), p);
}

bool is_bell_shaped(const Sequence1D& f, double slack) {
    const Sequence1D a = absolute(f);
    const std::size_t n = a.size();
    for (std::size_t j0 = 0; j0 < n; ++j0) {
        bool ok = true;
        for (std::size_t k = j0; k + 1 < n && ok; ++k) ok = a[k + 1] <= a[k] + slack;
        for (std::size_t k = j0; k > 0 && ok; --k) ok = a[k - 1] <= a[k] + slack;
        if (ok) return true;
    }
    return n == 0;
}

bool is_signless(const Sequence1D& f) {
    const bool any_pos = std::any_of(f.begin(), f.end(), [](double x) { return x > 0.0; });
    const bool any_neg = std::any_of(f.begin(), f.end(), [](double x) { return x < 0.0; });
    return !(any_pos && any_neg);
}

PermutationReport check_permutation_inequality(const Sequence1D& a_in, double p) {
    require_p(p);
    if (a_in.empty() || a_in.size() > 8) throw ConfigError("permutation check supports 1..8 entries");
    for (std::size_t k = 0; k < a_in.size(); ++k) {
        if (a_in[k] < 0.0) throw ConfigError("permutation check needs nonnegative entries");
        if (k > 0 && a_in[k] > a_in[k - 1]) throw ConfigError("permutation check needs a non-increasing sequence");
    }
    Sequence1D a = a_in;
    a.push_back(0.0);
    const std::size_t m = a.size();

    auto path_energy = [&](const std::vector<std::size_t>& mu) {
        double s = 0.0;
        for (std::size_t j = 0; j + 1 < m; ++j) s += std::pow(std::abs(a[mu[j + 1]] - a[mu[j]]), p);
        return s;
    };

    PermutationReport rep;
    rep.strictly_decreasing = true;
    for (std::size_t k = 0; k + 1 < m; ++k) rep.strictly_decreasing = rep.strictly_decreasing && a[k] > a[k + 1];

    std::vector<std::size_t> mu(m);
    std::iota(mu.begin(), mu.end(), 0);
    rep.identity_energy = path_energy(mu);
    rep.min_energy = rep.identity_energy;
    const double tol = 1e-12 * std::max(1.0, rep.identity_energy);
    rep.inequality_holds = true;
    std::vector<std::vector<std::size_t>> minimal;
    double tail_min_other = std::numeric_limits<double>::infinity();
    do {
        ++rep.permutations_checked;
        const double e = path_energy(mu);
        if (e < rep.identity_energy - tol && rep.inequality_holds) {
            rep.inequality_holds = false;
            rep.violating = mu;
        }
        if (e < rep.min_energy - tol) {
            rep.min_energy = e;
            minimal.clear();
        }
        if (std::abs(e - rep.min_energy) <= tol) minimal.push_back(mu);
        const bool is_identity = std::is_sorted(mu.begin(), mu.end());
        if (mu.back() == m - 1 && !is_identity) tail_min_other = std::min(tail_min_other, e);
    } while (std::next_permutation(mu.begin(), mu.end()));
    rep.minimizers = std::move(minimal);

    if (rep.strictly_decreasing) {
        std::vector<std::size_t> id(m), rev(m);
        std::iota(id.begin(), id.end(), 0);
        std::iota(rev.rbegin(), rev.rend(), 0);
        auto sorted_min = rep.minimizers;
        std::sort(sorted_min.begin(), sorted_min.end());
        auto expected = std::vector<std::vector<std::size_t>>{id, rev};
        std::sort(expected.begin(), expected.end());
        expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
        rep.equality_only_trivial = sorted_min == expected;
        rep.identity_unique_with_fixed_tail = tail_min_other > rep.identity_energy + tol;
    }
    return rep;
}

SzegoReport check_szego(const Sequence1D& f, double p) {
    require_p(p);
    SzegoReport rep;
    rep.energy = edge_energy(f, p);
    rep.rearranged_energy = edge_energy(symmetric_decreasing_rearrangement(f).values, p);
    rep.balanced_energy = edge_energy(balanced_rearrangement(f).values, p);
    const double tol = 1e-12 * std::max(1.0, rep.energy);
    rep.inequality_holds = rep.energy >= rep.rearranged_energy - tol && rep.rearranged_energy >= rep.balanced_energy - tol;
    rep.equality = std::abs(rep.energy - rep.rearranged_energy) <= tol;
    rep.equality_expected = is_signless(f) && is_bell_shaped(f);
    rep.passed = rep.inequality_holds && rep.equality == rep.equality_expected;
    return rep;
}

double min_energy_over_permutations(const Sequence1D& f, double p) {
    require_p(p);
    if (f.size() > 8) throw ConfigError("brute force supports at most 8 entries");
    Sequence1D a = absolute(f);
    std::sort(a.begin(), a.end());
    double best = std::numeric_limits<double>::infinity();
    do {
        best = std::min(best, edge_energy(a, p));
    } while (std::next_permutation(a.begin(), a.end()));
    return best;
}

}  // namespace dnls

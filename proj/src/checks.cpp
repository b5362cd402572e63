#include "dnls/checks.hpp"

#include "dnls/continuation.hpp"
#include "dnls/errors.hpp"
#include "dnls/random.hpp"
#include "dnls/rearrange.hpp"
#include "dnls/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace dnls {

bool SuiteResult::passed() const {
    return !lines.empty() && std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.passed; });
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"szego", "permutation", "heat-kernel", "positivity", "perron-frobenius",
                                                "lemmas"};
    return names;
}

namespace {

template <class T>
std::string str(const T& x) {
    std::ostringstream s;
    s.precision(6);
    s << x;
    return s.str();
}

Sequence1D random_sequence(Rng& rng, std::size_t max_len, double lo, double hi) {
    Sequence1D f(1 + rng.index(max_len));
    for (auto& v : f) v = rng.uniform(lo, hi);
    return f;
}

SuiteResult szego_suite(std::uint64_t seed) {
    SuiteResult r{"szego", {}};
    Rng rng(seed);
    std::size_t fails = 0, norm_fails = 0;
    for (double p : {1.5, 2.0, 3.0}) {
        for (int k = 0; k < 1000; ++k) {
            const Sequence1D f = random_sequence(rng, 12, -1.0, 1.0);
            const SzegoReport rep = check_szego(f, p);
            if (!rep.passed) ++fails;
            const auto g = symmetric_decreasing_rearrangement(f).values;
            double a = 0, b = 0;
            for (double v : f) a += std::pow(std::abs(v), p);
            for (double v : g) b += std::pow(std::abs(v), p);
            if (std::abs(a - b) > 1e-12 * std::max(1.0, a)) ++norm_fails;
        }
    }
    r.lines.push_back({"rearrangement lowers edge energy (3000 random sequences)", fails == 0, str(fails) + " failures"});
    r.lines.push_back({"rearrangement preserves l^p norms", norm_fails == 0, str(norm_fails) + " failures"});
    std::size_t opt_fails = 0;
    for (double p : {1.5, 2.0, 3.0})
        for (int k = 0; k < 200; ++k) {
            const Sequence1D f = random_sequence(rng, 6, -1.0, 1.0);
            const double best = min_energy_over_permutations(f, p);
            const double bal = edge_energy(balanced_rearrangement(f).values, p);
            if (bal > best * (1 + 1e-12) + 1e-15) ++opt_fails;
        }
    r.lines.push_back({"balanced arrangement attains the permutation minimum (len <= 6)", opt_fails == 0,
                       str(opt_fails) + " failures"});
    const SzegoReport sign = check_szego({1.0, -2.0, 1.0}, 2.0);
    r.lines.push_back({"sign change forces strict inequality", sign.passed && sign.rearranged_energy < sign.energy,
                       str(sign.energy) + " > " + str(sign.rearranged_energy)});
    const SzegoReport bell = check_szego({1.0, 3.0, 2.0}, 2.0);
    r.lines.push_back({"bell-shaped input gives equality", bell.passed && bell.equality, str(bell.energy)});
    return r;
}

SuiteResult permutation_suite(std::uint64_t seed) {
    SuiteResult r{"permutation", {}};
    Rng rng(seed + 1);
    std::size_t fails = 0, cases = 0;
    for (double p : {1.5, 2.0, 3.0})
        for (int k = 0; k < 100; ++k) {
            Sequence1D a(1 + rng.index(5));
            for (auto& v : a) v = rng.uniform(0.01, 1.0);
            std::sort(a.begin(), a.end(), std::greater<>());
            if (std::adjacent_find(a.begin(), a.end()) != a.end()) continue;
            ++cases;
            const PermutationReport rep = check_permutation_inequality(a, p);
            if (!rep.inequality_holds || !rep.equality_only_trivial || !rep.identity_unique_with_fixed_tail) ++fails;
        }
    r.lines.push_back({"strictly decreasing inputs: inequality, equality only at id / reversal", fails == 0,
                       str(fails) + " failures in " + str(cases) + " cases"});
    const PermutationReport ex = check_permutation_inequality({3.0, 2.0, 1.0}, 2.0);
    r.lines.push_back({"a = (3,2,1): 24 permutations, identity unique with fixed tail",
                       ex.inequality_holds && ex.permutations_checked == 24 && ex.identity_unique_with_fixed_tail,
                       str(ex.minimizers.size()) + " minimizers"});
    const PermutationReport ties = check_permutation_inequality({1.0, 1.0}, 2.0);
    r.lines.push_back({"a = (1,1): non-identity minimizers exist", ties.inequality_holds && ties.minimizers.size() > 2,
                       str(ties.minimizers.size()) + " minimizers"});
    return r;
}

SuiteResult heat_kernel_suite(std::uint64_t seed) {
    SuiteResult r{"heat-kernel", {}};
    bool shape = true;
    for (int i = 1; i <= 10; ++i) {
        const double t = 0.1 * i;
        const HeatKernel k = heat_kernel(t, 30);
        for (int n = 0; n <= 30; ++n) {
            shape = shape && k(n) > 0.0 && k(n) == k(-n);
            if (n < 30) shape = shape && k(n) > k(n + 1);
        }
    }
    r.lines.push_back({"K_n(t) positive, even, bell-shaped (t = 0.1..1, n <= 30)", shape, ""});

    // trapezoid rule on the Fourier integral, exact for trigonometric polynomials of degree < M
    const int M = 64;
    double quad = 0.0;
    for (int m = 0; m < M; ++m) {
        const double xi = double(m) / M;
        quad += std::exp(-4.0 * std::pow(std::sin(std::numbers::pi * xi), 2)) * std::cos(2.0 * std::numbers::pi * xi);
    }
    quad /= M;
    const double k11 = heat_kernel(1.0, 5)(1);
    r.lines.push_back({"K_1(1) against Fourier quadrature", std::abs(k11 - quad) < 1e-10, str(std::abs(k11 - quad))});

    double law = 0.0, mass = 0.0;
    for (int d : {1, 2}) {
        const Grid g(d, d == 1 ? 20 : 8, Boundary::periodic);
        for (std::uint64_t s = 0; s < 5; ++s) {
            const Field f = random_nonnegative_field(g, seed + s);
            const Field a = apply_heat_semigroup(apply_heat_semigroup(f, 0.3), 0.5);
            const Field b = apply_heat_semigroup(f, 0.8);
            law = std::max(law, (a.values() - b.values()).cwiseAbs().maxCoeff());
            mass = std::max(mass, std::abs(b.values().sum() - f.values().sum()) / f.values().sum());
        }
    }
    r.lines.push_back({"semigroup law e^{sL} e^{tL} = e^{(s+t)L}", law < 1e-10, str(law)});
    r.lines.push_back({"mass conservation", mass < 1e-12, str(mass)});
    return r;
}

Field sech_potential(const Grid& g, double amplitude) {
    Field v(g);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = amplitude / std::cosh(double(g.multi_index(i)[0]));
    return v;
}

SuiteResult positivity_suite(std::uint64_t seed) {
    SuiteResult r{"positivity", {}};
    const Grid g(1, 20);
    const PositivityReport rep = check_positivity_improving(sech_potential(g, 3.0), 0.2, 20, seed);
    r.lines.push_back({"e^{t(Lap + V)} positivity improving on 20 random fields", rep.passed,
                       "min " + str(rep.min_value) + ", substeps " + str(rep.substeps)});
    const PositivityReport delta =
        check_positivity_improving(sech_potential(g, 3.0), 0.2, std::vector<Field>{Field::delta(g, {5, 0, 0})});
    r.lines.push_back({"delta at n = 5 spreads to every site", delta.passed, "min " + str(delta.min_value)});
    return r;
}

SuiteResult pf_suite(std::uint64_t seed) {
    SuiteResult r{"perron-frobenius", {}};
    const Grid g(1, 15);
    int applicable = 0, good = 0;
    for (std::uint64_t s = seed; applicable < 20 && s < seed + 1000; ++s) {
        Rng rng(s);
        Field v(g);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = rng.uniform(-3.0, 1.0);
        const PerronFrobeniusReport rep = ground_state_pf_check(schrodinger_matrix(v));
        if (!rep.applicable) continue;
        ++applicable;
        if (rep.passed) ++good;
    }
    r.lines.push_back({"random potentials: simple ground state, sign-definite eigenvector", applicable == 20 && good == 20,
                       str(good) + "/" + str(applicable)});
    const PerronFrobeniusReport site = ground_state_pf_check(schrodinger_matrix(Field::delta(g, {0, 0, 0}, -5.0)));
    r.lines.push_back({"single-site well -5 e_0", site.passed, "lambda0 " + str(site.lambda0)});
    const PerronFrobeniusReport none = ground_state_pf_check(schrodinger_matrix(Field(g)));
    r.lines.push_back({"zero potential is not applicable", !none.applicable, ""});
    return r;
}

SuiteResult lemmas_suite() {
    SuiteResult r{"lemmas", {}};
    const HCurveReport h = h_curve(Grid(1, 60), 1.0, parameter_grid(0.5, 4.0, 0.5));
    r.lines.push_back({"h(lambda) < 0", h.negative, ""});
    r.lines.push_back({"h concave", h.concave, "max second difference " + str(h.max_second_difference)});
    r.lines.push_back({"h(lambda)/lambda decreasing", h.ratio_decreasing, ""});
    r.lines.push_back({"h subadditive on sampled triples", h.sublinear, str(h.triples_checked) + " triples"});
    const ContinuationCurve c = continue_family(Grid(1, 60), 1.0, 0.5, 2.0, 0.05);
    bool bounds = c.gaps.empty(), concave = true;
    for (std::size_t i = 0; i < c.samples.size(); ++i) {
        bounds = bounds && c.samples[i].j > c.samples[i].omega && c.samples[i].j < c.samples[i].omega + 2.0;
        if (i > 0 && i + 1 < c.samples.size())
            concave = concave && c.samples[i + 1].j - 2 * c.samples[i].j + c.samples[i - 1].j <= 1e-8;
    }
    r.lines.push_back({"omega < j(omega) < omega + 2", bounds, ""});
    r.lines.push_back({"j concave", concave, ""});
    const Field tent = tent_trial_field(Grid(1, 200), 1.0, 200);
    const double H = functionals(tent, 0.5).H;
    r.lines.push_back({"tent trial field has H < 0 (sigma = 0.5)", H < 0.0, "H = " + str(H)});
    return r;
}

}  // namespace

std::vector<SuiteResult> run_checks(const std::string& suite, std::uint64_t seed) {
    if (suite == "all") {
        std::vector<SuiteResult> out;
        for (const auto& name : suite_names()) out.push_back(run_checks(name, seed).front());
        return out;
    }
    if (suite == "szego") return {szego_suite(seed)};
    if (suite == "permutation") return {permutation_suite(seed)};
    if (suite == "heat-kernel") return {heat_kernel_suite(seed)};
    if (suite == "positivity") return {positivity_suite(seed)};
    if (suite == "perron-frobenius") return {pf_suite(seed)};
    if (suite == "lemmas") return {lemmas_suite()};
    throw ConfigError("unknown check suite '" + suite + "'");
}

}  // namespace dnls

#include <doctest.h>

#include "dnls/continuation.hpp"
#include "dnls/errors.hpp"
#include "dnls/spectra.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>

using namespace dnls;

namespace {

// L+ / L- rebuilt from scratch for a d = 1 zero-padded profile.
Eigen::MatrixXd hand_operator(const Field& phi, double sigma, double omega, double coefficient) {
    const int n = static_cast<int>(phi.size());
    Eigen::MatrixXd m = (2.0 + omega) * Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = -1.0;
    m.diagonal() -= coefficient * phi.values().array().pow(2.0 * sigma).matrix();
    return m;
}

struct Sweep {
    ContinuationCurve curve;
    ScalarCurve j;
};

const Sweep& sweep(double sigma) {
    static std::map<double, Sweep> cache;
    auto it = cache.find(sigma);
    if (it == cache.end()) {
        Sweep s{continue_family(Grid(1, 60), sigma, 0.2, 3.0, 0.01), {}};
        s.j = curve_column(s.curve, "j");
        it = cache.emplace(sigma, std::move(s)).first;
    }
    return it->second;
}

const WaveProfile& wave_at(double sigma, double omega) {
    const Sweep& s = sweep(sigma);
    return s.curve.samples[s.curve.index_of(omega)].profile;
}

}  // namespace

TEST_CASE("trivial wave") {
    for (int d = 1; d <= 2; ++d) {
        const Grid g(d, d == 1 ? 10 : 4);
        const double omega = 0.7;
        const LinearizedPair pair = assemble_pair_unchecked(Field(g), 1.0, omega);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pair.Lplus);
        CHECK(es.eigenvalues().minCoeff() > omega);
        CHECK(es.eigenvalues().maxCoeff() < omega + 4.0 * d);
        const MorseIndices m = morse_indices(pair);
        CHECK(m.n_plus == 0);
        CHECK(m.n_minus == 0);
        CHECK(m.ker_plus == 0);
        CHECK(m.ker_minus == 0);
        for (const auto& lam : linearized_spectrum(pair)) {
            CHECK(std::abs(lam.real()) < 1e-10);
            CHECK(std::abs(lam.imag()) > omega - 1e-10);
            CHECK(std::abs(lam.imag()) < omega + 4.0 * d + 1e-10);
        }
    }
}

TEST_CASE("assembly identities for a converged wave") {
    const WaveProfile phi = to_profile(solve_homogeneous(Grid(1, 40), 1.0, 1.0));
    const LinearizedPair pair = assemble_pair(phi);
    CHECK((pair.Lminus * pair.phi).norm() < 1e-10);
    CHECK((pair.Lplus - pair.Lplus.transpose()).norm() == 0.0);
    CHECK((pair.Lplus - hand_operator(phi.field, 1.0, 1.0, 3.0)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((pair.Lminus - hand_operator(phi.field, 1.0, 1.0, 1.0)).cwiseAbs().maxCoeff() < 1e-14);
    const MorseIndices m = morse_indices(pair);
    CHECK(m.lplus_phi_phi < 0.0);
    CHECK(m.lplus_relative_error < 1e-9);
    CHECK(m.ground_state_pattern());
    CHECK(m.n_plus == 1);
    CHECK(m.n_minus == 0);
    CHECK(m.ker_plus == 0);
    CHECK(m.ker_minus == 1);
    CHECK(m.kernel_angle < 1e-6);
    CHECK(m.min_minus > -1e-9);

    Field rough = phi.field;
    rough[phi.grid().origin()] += 1e-6;
    CHECK_THROWS_AS(assemble_pair(WaveProfile{rough, 1.0, Family::profile, 1.0, std::nullopt, 1e-6, {}, 0, false}),
                    ConfigError);
}

TEST_CASE("offsite wave has two negative directions of L+") {
    const Grid g(1, 30);
    const WaveProfile w = newton_refine(make_seed(g, SeedKind::two_site, 1.4), 1.0, 1.0);
    const MorseIndices m = morse_indices(assemble_pair(w));
    CHECK(m.n_plus == 2);
    CHECK(m.n_minus == 0);
    CHECK(m.ker_minus == 1);
    CHECK_FALSE(m.ground_state_pattern());
}

TEST_CASE("sigma = 1 waves are spectrally stable") {
    for (double omega : {0.5, 1.0, 1.5}) {
        const LinearizedPair pair = assemble_pair(wave_at(1.0, omega));
        const Spectrum sp = linearized_spectrum(pair);
        CHECK(max_real_part_excluding_gauge(sp, pair.scale()) < 1e-6);
        CHECK(check_spectrum(sp, pair.scale()).symmetric);
    }
}

TEST_CASE("sigma = 2, omega = 0.5 has a real positive eigenvalue") {
    const LinearizedPair pair = assemble_pair(wave_at(2.0, 0.5));
    const Spectrum sp = linearized_spectrum(pair);
    const auto top = std::max_element(sp.begin(), sp.end(), [](auto a, auto b) { return a.real() < b.real(); });
    CHECK(top->real() > 1e-4);
    CHECK(std::abs(top->imag()) < 1e-8);
    CHECK(check_spectrum(sp, pair.scale()).symmetric);
}

TEST_CASE("squared eigenvalues match spec(-L- L+)") {
    for (auto [sigma, omega] : {std::pair{1.0, 1.0}, std::pair{2.0, 0.5}, std::pair{2.0, 1.5}}) {
        const LinearizedPair pair = assemble_pair(wave_at(sigma, omega));
        const Spectrum block = linearized_spectrum(pair);
        const Eigen::MatrixXd prod = -(hand_operator(wave_at(sigma, omega).field, sigma, omega, 1.0) *
                                       hand_operator(wave_at(sigma, omega).field, sigma, omega, 2.0 * sigma + 1.0));
        Eigen::EigenSolver<Eigen::MatrixXd> es(prod, false);
        REQUIRE(es.info() == Eigen::Success);
        std::vector<std::complex<double>> mu(es.eigenvalues().begin(), es.eigenvalues().end());
        // every mu appears twice as lambda^2 (lambda and -lambda)
        REQUIRE(block.size() == 2 * mu.size());
        std::vector<bool> used(block.size(), false);
        const double scale = pair.scale();
        double worst = 0.0;
        for (const auto& m : mu) {
            for (int pass = 0; pass < 2; ++pass) {
                std::size_t best = block.size();
                double dist = 1e300;
                for (std::size_t k = 0; k < block.size(); ++k) {
                    if (used[k]) continue;
                    const double e = std::abs(block[k] * block[k] - m);
                    if (e < dist) dist = e, best = k;
                }
                used[best] = true;
                worst = std::max(worst, dist / std::max(std::abs(m), 1.0));
            }
        }
        CHECK(worst < 1e-6);
        (void)scale;

        const Spectrum red = reduced_spectrum(pair);
        const SpectrumChecks c = check_spectrum(block, pair.scale(), red);
        CHECK(c.route_identity_checked);
        CHECK(c.route_identity);
    }
}

TEST_CASE("Vakhitov-Kolokolov quantity") {
    SUBCASE("matches a direct solve") {
        const WaveProfile& phi = wave_at(1.0, 1.0);
        const Eigen::MatrixXd Lp = hand_operator(phi.field, 1.0, 1.0, 3.0);
        const double oracle = phi.field.values().dot(Lp.lu().solve(phi.field.values()));
        const VKResult r = vk_inner(assemble_pair(phi));
        CHECK(r.value == doctest::Approx(oracle).epsilon(1e-8));
        CHECK(r.value < 0.0);
        CHECK_FALSE(r.deflated);
        CHECK_FALSE(r.ill_conditioned);
        CHECK(vk_inner_product(assemble_pair(phi), phi) == doctest::Approx(oracle).epsilon(1e-8));
    }
    SUBCASE("sigma = 2 changes sign") {
        CHECK(vk_inner(assemble_pair(wave_at(2.0, 0.5))).value > 0.0);
        CHECK(vk_inner(assemble_pair(wave_at(2.0, 1.5))).value < 0.0);
    }
    SUBCASE("sign opposite to the slope") {
        for (double sigma : {1.0, 2.0, 2.5})
            for (double omega : {0.5, 0.8, 1.5, 2.5}) {
                const double slope = slope_criterion(sweep(sigma).curve, omega);
                const double vk = vk_inner(assemble_pair(wave_at(sigma, omega))).value;
                CHECK(slope * vk < 0.0);
            }
    }
}

TEST_CASE("spectrum symmetry check detects a broken quadruple") {
    const Spectrum good{{-1.0, 0.0}, {1.0, 0.0}, {0.0, -2.0}, {0.0, 2.0}};
    CHECK(check_spectrum(good, 1.0).symmetric);
    const Spectrum bad{{-1.0, 0.0}, {1.5, 0.0}, {0.0, -2.0}, {0.0, 2.0}};
    CHECK_FALSE(check_spectrum(bad, 1.0).symmetric);
    double gauge = -1.0;
    const Spectrum with_gauge{{-1e-9, 0.0}, {1e-9, 0.0}, {-0.5, 0.0}, {0.5, 0.0}};
    CHECK(max_real_part_excluding_gauge(with_gauge, 1.0, &gauge) == doctest::Approx(0.5));
    CHECK(gauge == doctest::Approx(1e-9));
}

TEST_CASE("stability verdicts") {
    SUBCASE("sigma = 1, omega = 1.5 is stable and all criteria agree") {
        const StabilityReport r = stability_verdict(wave_at(1.0, 1.5), sweep(1.0).curve, sweep(1.0).j);
        CHECK(r.verdict == Verdict::stable);
        CHECK(r.compared);
        CHECK(r.signs_agree);
        CHECK(r.spectral_agrees);
        CHECK_FALSE(r.disagreement);
        CHECK(r.morse.ground_state_pattern());
        CHECK(r.checks.symmetric);
        CHECK(r.route == "block");
        CHECK(r.checks.route_identity);
        CHECK(r.eigenvalues.size() == 2 * wave_at(1.0, 1.5).field.size());
    }
    SUBCASE("sigma = 2.5 changes verdict between omega = 0.5 and 1.5") {
        const StabilityReport lo = stability_verdict(wave_at(2.5, 0.5), sweep(2.5).curve, sweep(2.5).j);
        const StabilityReport hi = stability_verdict(wave_at(2.5, 1.5), sweep(2.5).curve, sweep(2.5).j);
        CHECK(lo.verdict == Verdict::unstable);
        CHECK(hi.verdict == Verdict::stable);
        CHECK(lo.slope < 0.0);
        CHECK(lo.s_omega < 0.0);
        CHECK(lo.vk.value > 0.0);
        CHECK_FALSE(lo.disagreement);
        CHECK_FALSE(hi.disagreement);
    }
    SUBCASE("routes give the same verdict") {
        const StabilityReport b = stability_verdict(wave_at(2.0, 0.5), sweep(2.0).curve, sweep(2.0).j, SpectrumRoute::block);
        const StabilityReport r =
            stability_verdict(wave_at(2.0, 0.5), sweep(2.0).curve, sweep(2.0).j, SpectrumRoute::reduced);
        CHECK(b.verdict == r.verdict);
        CHECK(b.max_real_part == doctest::Approx(r.max_real_part).epsilon(1e-8));
        CHECK(r.route == "reduced");
    }
    SUBCASE("unknown route name") {
        CHECK_THROWS_AS(route_from_string("sparse"), ConfigError);
        CHECK(route_from_string("auto") == SpectrumRoute::automatic);
    }
}

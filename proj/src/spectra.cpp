#include "dnls/spectra.hpp"

#include "dnls/errors.hpp"
#include "dnls/hash.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace dnls {

double LinearizedPair::scale() const {
    const double a = Lplus.cwiseAbs().rowwise().sum().maxCoeff();
    const double b = Lminus.cwiseAbs().rowwise().sum().maxCoeff();
    return std::max(a, b);
}

bool MorseIndices::ground_state_pattern() const {
    return n_plus == 1 && n_minus == 0 && ker_plus == 0 && ker_minus == 1 && kernel_angle < 1e-6;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::stable: return "stable";
        case Verdict::unstable: return "unstable";
        case Verdict::marginal: return "marginal";
        case Verdict::degenerate: return "degenerate";
    }
    return "?";
}

SpectrumRoute route_from_string(const std::string& name) {
    if (name == "auto" || name == "automatic") return SpectrumRoute::automatic;
    if (name == "block") return SpectrumRoute::block;
    if (name == "reduced") return SpectrumRoute::reduced;
    throw ConfigError("unknown spectrum route '" + name + "' (expected auto, block or reduced)");
}

std::string to_string(SpectrumRoute r) {
    switch (r) {
        case SpectrumRoute::automatic: return "auto";
        case SpectrumRoute::block: return "block";
        case SpectrumRoute::reduced: return "reduced";
    }
    return "?";
}

LinearizedPair assemble_pair_unchecked(const Field& phi, double sigma, double omega) {
    LinearizedPair p;
    const Eigen::MatrixXd base = negative_laplacian_matrix(phi.grid());
    const Eigen::ArrayXd pw = abs_pow(phi.values(), 2.0 * sigma);
    p.Lplus = base;
    p.Lplus.diagonal().array() += omega - (2.0 * sigma + 1.0) * pw;
    p.Lminus = base;
    p.Lminus.diagonal().array() += omega - pw;
    p.phi = phi.values();
    p.omega = omega;
    p.sigma = sigma;
    p.source_hash = hex64(fnv1a(phi.values().data(), sizeof(double) * phi.size()));
    return p;
}

LinearizedPair assemble_pair(const WaveProfile& profile) {
    const WaveProfile phi = to_profile(profile);
    if (!(phi.residual < 1e-10))
        throw ConfigError("assemble_pair needs a converged profile (residual " + std::to_string(phi.residual) + ")");
    LinearizedPair p = assemble_pair_unchecked(phi.field, phi.sigma, phi.parameter);
    const double gauge = (p.Lminus * p.phi).norm();
    if (!(gauge < 1e-10)) throw ConfigError("L- phi does not vanish (" + std::to_string(gauge) + ")");
    return p;
}

namespace {

void sort_spectrum(Spectrum& s) {
    std::sort(s.begin(), s.end(), [](const std::complex<double>& a, const std::complex<double>& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

}  // namespace

Spectrum linearized_spectrum(const LinearizedPair& pair) {
    const Eigen::Index n = pair.Lplus.rows();
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    block.topRightCorner(n, n) = -pair.Lminus;
    block.bottomLeftCorner(n, n) = pair.Lplus;
    Eigen::EigenSolver<Eigen::MatrixXd> es(block, false);
    if (es.info() != Eigen::Success) throw SolverError(SolverFailure::eigensolver, "block eigensolver failed");
    Spectrum out(es.eigenvalues().begin(), es.eigenvalues().end());
    sort_spectrum(out);
    return out;
}

Spectrum reduced_spectrum(const LinearizedPair& pair) {
    const double scale = pair.scale();
    Eigen::LDLT<Eigen::MatrixXd> ldlt(pair.Lminus);
    std::vector<std::complex<double>> mu;  // eigenvalues of L- L+
    const Eigen::VectorXd D = ldlt.vectorD();
    if (ldlt.info() == Eigen::Success && D.minCoeff() >= -1e-9 * scale) {
        // L- = P^T L D L^T P  =>  R = P^T L sqrt(D)
        Eigen::MatrixXd Lmat = ldlt.matrixL();
        Lmat = Lmat * D.cwiseMax(0.0).cwiseSqrt().asDiagonal();
        Eigen::MatrixXd R = ldlt.transpositionsP().transpose() * Lmat;
        Eigen::MatrixXd S = R.transpose() * pair.Lplus * R;
        S = 0.5 * (S + S.transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw SolverError(SolverFailure::eigensolver, "reduced eigensolver failed");
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) mu.emplace_back(es.eigenvalues()[i], 0.0);
    } else {
        Eigen::EigenSolver<Eigen::MatrixXd> es(pair.Lminus * pair.Lplus, false);
        if (es.info() != Eigen::Success) throw SolverError(SolverFailure::eigensolver, "L- L+ eigensolver failed");
        mu.assign(es.eigenvalues().begin(), es.eigenvalues().end());
    }
    Spectrum out;
    out.reserve(2 * mu.size());
    for (const auto& m : mu) {
        const std::complex<double> lam = std::sqrt(-m);
        out.push_back(lam);
        out.push_back(-lam);
    }
    sort_spectrum(out);
    return out;
}

MorseIndices morse_indices(const LinearizedPair& pair) {
    MorseIndices m;
    const double scale = pair.scale();
    const double ker_tol = 1e-8 * scale;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ep(pair.Lplus, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> em(pair.Lminus, Eigen::EigenvaluesOnly);
    if (ep.info() != Eigen::Success || em.info() != Eigen::Success)
        throw SolverError(SolverFailure::eigensolver, "L+/L- eigensolver failed");
    auto count = [&](const Eigen::VectorXd& ev, int& neg, int& ker) {
        neg = static_cast<int>((ev.array() < -1e-9).count());
        ker = static_cast<int>((ev.array().abs() < ker_tol).count());
        // an eigenvalue in the kernel band is not also counted as negative
        neg -= static_cast<int>(((ev.array() < -1e-9) && (ev.array().abs() < ker_tol)).count());
    };
    count(ep.eigenvalues(), m.n_plus, m.ker_plus);
    count(em.eigenvalues(), m.n_minus, m.ker_minus);
    m.min_plus = ep.eigenvalues()[0];
    m.min_minus = em.eigenvalues()[0];

    const double phinorm = pair.phi.norm();
    if (phinorm > 0.0) {
        m.lplus_phi_phi = pair.phi.dot(pair.Lplus * pair.phi);
        m.lplus_expected = -2.0 * pair.sigma * abs_pow(pair.phi, 2.0 * pair.sigma + 2.0).sum();
        m.lplus_relative_error = std::abs(m.lplus_phi_phi - m.lplus_expected) / std::abs(m.lplus_expected);
        if (m.ker_minus >= 1) {
            // shifted inverse iteration toward the bottom of L-, started from the ones vector
            const double shift = 1e-6 * scale;
            Eigen::MatrixXd shifted = pair.Lminus;
            shifted.diagonal().array() += shift;
            Eigen::LDLT<Eigen::MatrixXd> f(shifted);
            Eigen::VectorXd v = Eigen::VectorXd::Ones(pair.phi.size());
            for (int k = 0; k < 8; ++k) {
                v = f.solve(v);
                v /= v.norm();
            }
            const Eigen::VectorXd e = pair.phi / phinorm;
            const double cosine = std::abs(v.dot(e));
            const double sine = (v - v.dot(e) * e).norm();
            m.kernel_angle = std::atan2(sine, cosine);
        } else {
            m.kernel_angle = std::numbers::pi / 2;
        }
    } else {
        m.kernel_angle = std::numbers::pi / 2;
    }
    return m;
}

VKResult vk_inner(const LinearizedPair& pair, int ker_plus) {
    VKResult r;
    if (ker_plus < 0) ker_plus = morse_indices(pair).ker_plus;
    if (ker_plus == 0) {
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(pair.Lplus);
        const double rc = lu.rcond();
        r.condition = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
        r.ill_conditioned = r.condition > 1e12;
        r.value = lu.solve(pair.phi).dot(pair.phi);
        return r;
    }
    // deflate the numerical kernel and solve in its orthogonal complement
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pair.Lplus);
    if (es.info() != Eigen::Success) throw SolverError(SolverFailure::eigensolver, "L+ eigensolver failed");
    const double tol = 1e-8 * pair.scale();
    double kept_min = std::numeric_limits<double>::infinity(), kept_max = 0.0;
    Eigen::VectorXd proj = Eigen::VectorXd::Zero(pair.phi.size());
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double mu = es.eigenvalues()[i];
        const Eigen::VectorXd e = es.eigenvectors().col(i);
        const double coef = e.dot(pair.phi);
        if (std::abs(mu) < tol) {
            proj += coef * e;
            continue;
        }
        r.value += coef * coef / mu;
        kept_min = std::min(kept_min, std::abs(mu));
        kept_max = std::max(kept_max, std::abs(mu));
    }
    r.deflated = true;
    r.kernel_projection = proj.norm() / pair.phi.norm();
    r.condition = kept_max / kept_min;
    r.ill_conditioned = r.condition > 1e12;
    return r;
}

double vk_inner_product(const LinearizedPair& pair, const WaveProfile& profile) {
    const WaveProfile phi = to_profile(profile);
    if ((phi.field.values() - pair.phi).norm() > 1e-12 * std::max(1.0, pair.phi.norm()))
        throw ConfigError("profile does not match the linearized pair");
    return vk_inner(pair).value;
}

SpectrumChecks check_spectrum(const Spectrum& spectrum, double scale, const Spectrum& other) {
    SpectrumChecks c;
    auto nearest = [&](const std::complex<double>& z) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& w : spectrum) best = std::min(best, std::abs(w - z));
        return best;
    };
    for (const auto& z : spectrum) {
        c.symmetry_error = std::max(c.symmetry_error, nearest(-z));
        c.symmetry_error = std::max(c.symmetry_error, nearest(std::conj(z)));
    }
    // the gauge pair is a 2x2 Jordan block, so it splits like sqrt(rounding); leave it out
    c.symmetric = c.symmetry_error <= 1e-8 * std::max(1.0, scale) ||
                  c.symmetry_error <= 2.0 * std::sqrt(std::numeric_limits<double>::epsilon() * scale);
    if (!other.empty()) {
        c.route_identity_checked = true;
        std::vector<std::complex<double>> a, b;
        for (const auto& z : spectrum) a.push_back(z * z);
        for (const auto& z : other) b.push_back(z * z);
        std::vector<bool> used(b.size(), false);
        for (const auto& z : a) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t arg = 0;
            for (std::size_t k = 0; k < b.size(); ++k) {
                if (used[k]) continue;
                const double dist = std::abs(b[k] - z);
                if (dist < best) {
                    best = dist;
                    arg = k;
                }
            }
            if (b.empty()) break;
            used[arg] = true;
            c.route_identity_error = std::max(c.route_identity_error, best / std::max(1.0, std::abs(z)));
        }
        c.route_identity = a.size() == b.size() && c.route_identity_error <= 1e-6;
    }
    return c;
}

double max_real_part_excluding_gauge(const Spectrum& spectrum, double scale, double* gauge_magnitude) {
    std::vector<std::size_t> order(spectrum.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return std::abs(spectrum[a]) < std::abs(spectrum[b]); });
    const double cluster = 1e-5 * std::max(1.0, scale);
    std::vector<bool> skip(spectrum.size(), false);
    double g = 0.0;
    for (std::size_t k = 0; k < std::min<std::size_t>(2, order.size()); ++k) {
        if (std::abs(spectrum[order[k]]) < cluster) {
            skip[order[k]] = true;
            g = std::max(g, std::abs(spectrum[order[k]]));
        }
    }
    if (gauge_magnitude) *gauge_magnitude = g;
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < spectrum.size(); ++i)
        if (!skip[i]) m = std::max(m, spectrum[i].real());
    return m;
}

StabilityReport stability_verdict(const WaveProfile& profile, const ContinuationCurve& curve, const ScalarCurve& jcurve,
                                  SpectrumRoute route) {
    StabilityReport rep;
    const WaveProfile phi = to_profile(profile);
    if (phi.sigma != curve.sigma || phi.grid().dimension() != curve.dimension)
        throw ConfigError("profile and curve come from different configurations");
    rep.omega = phi.parameter;
    rep.sigma = phi.sigma;
    rep.dimension = phi.grid().dimension();
    rep.half_width = phi.grid().half_width();
    rep.box_limited = phi.box_limited;

    const LinearizedPair pair = assemble_pair(phi);
    const double scale = pair.scale();
    const std::size_t n = phi.field.size();
    if (route == SpectrumRoute::automatic) route = 2 * n <= 1200 ? SpectrumRoute::block : SpectrumRoute::reduced;
    rep.route = to_string(route);
    if (route == SpectrumRoute::block) {
        rep.eigenvalues = linearized_spectrum(pair);
        rep.checks = check_spectrum(rep.eigenvalues, scale, reduced_spectrum(pair));
    } else {
        rep.eigenvalues = reduced_spectrum(pair);
        rep.checks = check_spectrum(rep.eigenvalues, scale);
    }
    rep.max_real_part = max_real_part_excluding_gauge(rep.eigenvalues, scale, &rep.gauge_magnitude);
    rep.morse = morse_indices(pair);

    const DerivativeEstimate slope = slope_estimate(curve, rep.omega);
    rep.slope = slope.value;
    rep.slope_marginal = slope.marginal;
    rep.slope_refined = slope.refined;
    const DerivativeEstimate s = s_estimate(jcurve, rep.omega, rep.sigma, curve.step);
    rep.s_omega = s.value;
    rep.s_marginal = s.marginal;

    const double floor = 10.0 * curve.step * curve.step;
    if (rep.morse.ker_plus > 0) {
        rep.verdict = Verdict::degenerate;
    } else {
        rep.vk = vk_inner(pair, 0);
        rep.vk_attempted = true;
        if (slope.marginal || (rep.max_real_part >= 1e-6 && rep.max_real_part <= 1e-4))
            rep.verdict = Verdict::marginal;
        else
            rep.verdict = rep.max_real_part < 1e-6 ? Verdict::stable : Verdict::unstable;
    }

    const bool vk_marginal = !rep.vk_attempted || std::abs(rep.vk.value) < 0.5 * floor;
    rep.compared = !slope.marginal && !s.marginal && !vk_marginal;
    if (rep.compared) {
        const bool slope_pos = rep.slope > 0.0;
        rep.signs_agree = (rep.s_omega > 0.0) == slope_pos && (rep.vk.value < 0.0) == slope_pos;
        rep.spectral_agrees = slope_pos ? rep.max_real_part < 1e-6 : rep.max_real_part > 1e-4;
    } else {
        rep.signs_agree = true;
        rep.spectral_agrees = true;
    }
    rep.disagreement = !(rep.signs_agree && rep.spectral_agrees);
    return rep;
}

}  // namespace dnls

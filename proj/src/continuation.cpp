#include "dnls/continuation.hpp"

#include "dnls/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace dnls {

std::vector<double> parameter_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo))
        throw ConfigError("empty parameter range (need lo < hi and step > 0)");
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    if (n < 1) throw ConfigError("parameter range holds fewer than two samples");
    std::vector<double> out;
    for (long k = 0; k <= n; ++k) out.push_back(lo + double(k) * step);
    return out;
}

std::size_t ContinuationCurve::index_of(double omega) const {
    for (std::size_t i = 0; i < samples.size(); ++i)
        if (std::abs(samples[i].omega - omega) <= 1e-6 * step) return i;
    throw ConfigError("omega = " + std::to_string(omega) + " is not a sample of the curve");
}

bool ContinuationCurve::box_limited() const {
    return std::any_of(samples.begin(), samples.end(), [](const ContinuationSample& s) { return s.profile.box_limited; });
}

namespace {

ContinuationSample make_sample(const WaveProfile& phi, bool fresh) {
    const FunctionalValues fv = functionals(phi.field, phi.sigma, phi.parameter);
    const double j = std::pow(fv.V, phi.sigma / (phi.sigma + 1.0));
    return ContinuationSample{phi.parameter, fv.P, fv.V, fv.H, j, fresh, phi};
}

void validate(const WaveProfile& phi, const SolverSettings& s) {
    const double omega = phi.parameter;
    const double j = std::pow(phi.functionals.V, phi.sigma / (phi.sigma + 1.0));
    if (!(j > omega) || !(j < j_upper_bound(omega, phi.grid().dimension())))
        throw SolverError(SolverFailure::bound_violation, "continued wave violates the j(omega) bounds");
    if (phi.field.values().minCoeff() < -1e-12)
        throw SolverError(SolverFailure::non_convergence, "continued wave lost nonnegativity");
    if (!(phi.residual < s.tolerance)) throw SolverError(SolverFailure::non_convergence, "residual above tolerance");
}

WaveProfile continue_from(const WaveProfile& prev, double sigma, double omega, const SolverSettings& s) {
    WaveProfile phi = newton_refine(prev.field, sigma, omega, s);
    phi.box_limited = prev.box_limited;
    while (s.enforce_box_rule && boundary_layer_mass(phi.field) > s.box_mass_ratio * phi.functionals.P) {
        const Grid bigger = phi.grid().resized(2 * phi.grid().half_width());
        if (bigger.site_count() > s.max_sites) {
            phi.box_limited = true;
            break;
        }
        const bool limited = phi.box_limited;
        phi = newton_refine(embed(phi.field, bigger), sigma, omega, s);
        phi.box_limited = limited;
    }
    validate(phi, s);
    return phi;
}

}  // namespace

ContinuationCurve continue_family(const Grid& grid, double sigma, double omega_lo, double omega_hi, double delta_omega,
                                  const SolverSettings& settings) {
    if (!(omega_lo > 0.0)) throw ConfigError("omega range must lie in (0, infinity)");
    const std::vector<double> omegas = parameter_grid(omega_lo, omega_hi, delta_omega);
    ContinuationCurve curve;
    curve.sigma = sigma;
    curve.dimension = grid.dimension();
    curve.step = delta_omega;
    std::vector<ContinuationSample> down;
    std::optional<WaveProfile> prev;
    Grid current = grid;
    for (auto it = omegas.rbegin(); it != omegas.rend(); ++it) {
        const double omega = *it;
        std::optional<WaveProfile> phi;
        bool fresh = false;
        if (prev) {
            try {
                phi = continue_from(*prev, sigma, omega, settings);
            } catch (const SolverError&) {
                phi.reset();
            }
        }
        if (!phi) {
            try {
                phi = to_profile(solve_homogeneous(current, sigma, omega, std::nullopt, settings));
                fresh = true;
            } catch (const SolverError&) {
                curve.gaps.push_back(omega);
                continue;
            }
        }
        current = phi->grid();
        down.push_back(make_sample(*phi, fresh));
        prev = phi;
    }
    curve.samples.assign(down.rbegin(), down.rend());
    std::sort(curve.gaps.begin(), curve.gaps.end());
    return curve;
}

ScalarCurve curve_column(const ContinuationCurve& curve, const std::string& name) {
    ScalarCurve out{name, {}, {}};
    for (const auto& s : curve.samples) {
        out.x.push_back(s.omega);
        if (name == "P") out.y.push_back(s.P);
        else if (name == "V") out.y.push_back(s.V);
        else if (name == "H") out.y.push_back(s.H);
        else if (name == "j") out.y.push_back(s.j);
        else throw ConfigError("unknown curve column '" + name + "'");
    }
    return out;
}

namespace {

bool uniform_stencil(const ScalarCurve& c, std::size_t i, std::size_t reach, double delta) {
    if (i < reach || i + reach >= c.x.size()) return false;
    for (std::size_t k = i - reach; k < i + reach; ++k)
        if (std::abs(c.x[k + 1] - c.x[k] - delta) > 1e-6 * delta) return false;
    return true;
}

}  // namespace

DerivativeEstimate first_derivative(const ScalarCurve& c, std::size_t i, double delta) {
    if (!uniform_stencil(c, i, 1, delta)) throw ConfigError("first derivative needs an interior sample with uniform neighbours");
    DerivativeEstimate d;
    d.value = (c.y[i + 1] - c.y[i - 1]) / (2.0 * delta);
    const double floor = 10.0 * delta * delta;
    if (std::abs(d.value) < floor && uniform_stencil(c, i, 2, delta)) {
        const double wide = (c.y[i + 2] - c.y[i - 2]) / (4.0 * delta);
        d.value = (4.0 * d.value - wide) / 3.0;
        d.refined = true;
    }
    d.marginal = std::abs(d.value) < floor;
    return d;
}

DerivativeEstimate second_derivative(const ScalarCurve& c, std::size_t i, double delta) {
    if (!uniform_stencil(c, i, 1, delta)) throw ConfigError("second derivative needs an interior sample with uniform neighbours");
    DerivativeEstimate d;
    d.value = (c.y[i + 1] - 2.0 * c.y[i] + c.y[i - 1]) / (delta * delta);
    const double floor = 10.0 * delta * delta;
    if (std::abs(d.value) < floor && uniform_stencil(c, i, 2, delta)) {
        const double wide = (c.y[i + 2] - 2.0 * c.y[i] + c.y[i - 2]) / (4.0 * delta * delta);
        d.value = (4.0 * d.value - wide) / 3.0;
        d.refined = true;
    }
    d.marginal = std::abs(d.value) < floor;
    return d;
}

DerivativeEstimate slope_estimate(const ContinuationCurve& curve, double omega) {
    return first_derivative(curve_column(curve, "P"), curve.index_of(omega), curve.step);
}

double slope_criterion(const ContinuationCurve& curve, double omega) { return slope_estimate(curve, omega).value; }

DerivativeEstimate s_estimate(const ScalarCurve& jcurve, double omega, double sigma, double delta) {
    std::size_t i = jcurve.x.size();
    for (std::size_t k = 0; k < jcurve.x.size(); ++k)
        if (std::abs(jcurve.x[k] - omega) <= 1e-6 * delta) i = k;
    if (i == jcurve.x.size()) throw ConfigError("omega is not a sample of the j curve");
    const double j = jcurve.y[i];
    if (!(j > 0.0)) throw ConfigError("s(omega) needs j > 0");
    auto evaluate = [&](std::size_t reach) {
        const double h = delta * double(reach);
        const double d1 = (jcurve.y[i + reach] - jcurve.y[i - reach]) / (2.0 * h);
        const double d2 = (jcurve.y[i + reach] - 2.0 * j + jcurve.y[i - reach]) / (h * h);
        return d2 + d1 * d1 / (sigma * j);
    };
    if (!uniform_stencil(jcurve, i, 1, delta)) throw ConfigError("s(omega) needs an interior sample");
    DerivativeEstimate s;
    s.value = evaluate(1);
    const double floor = 10.0 * delta * delta;
    if (std::abs(s.value) < floor && uniform_stencil(jcurve, i, 2, delta)) {
        s.value = (4.0 * s.value - evaluate(2)) / 3.0;
        s.refined = true;
    }
    s.marginal = std::abs(s.value) < floor;
    return s;
}

double s_function(const ScalarCurve& jcurve, double omega, double sigma, double delta) {
    return s_estimate(jcurve, omega, sigma, delta).value;
}

HCurveReport h_curve(const Grid& grid, double sigma, const std::vector<double>& lambdas, const SolverSettings& settings) {
    if (lambdas.size() < 3) throw ConfigError("h curve needs at least three lambdas");
    for (std::size_t k = 0; k + 1 < lambdas.size(); ++k)
        if (!(lambdas[k + 1] > lambdas[k])) throw ConfigError("lambdas must be strictly increasing");
    if (sigma >= 2.0 / grid.dimension())
        throw ConfigError("h(lambda) is only finite for sigma < 2/d");
    HCurveReport rep;
    std::vector<double> h(lambdas.size()), c(lambdas.size());
    std::optional<Field> seed;
    Grid current = grid;
    // largest mass first: the most localized wave, then warm starts toward the broad ones
    for (std::size_t k = lambdas.size(); k-- > 0;) {
        const WaveProfile w = solve_normalized(current, sigma, lambdas[k], seed, settings);
        h[k] = w.functionals.H;
        c[k] = *w.multiplier;
        current = w.grid();
        seed = w.field;
    }
    rep.h.x = rep.c.x = lambdas;
    rep.h.y = h;
    rep.c.y = c;
    rep.negative = std::all_of(h.begin(), h.end(), [](double v) { return v < 0.0; });
    rep.concave = true;
    rep.max_second_difference = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k + 1 < lambdas.size(); ++k) {
        const double a = lambdas[k - 1], b = lambdas[k], e = lambdas[k + 1];
        // divided second difference scaled to the uniform-step convention
        const double dd = 2.0 * ((h[k + 1] - h[k]) / (e - b) - (h[k] - h[k - 1]) / (b - a)) / (e - a);
        const double second = dd * 0.25 * (e - a) * (e - a);
        rep.max_second_difference = std::max(rep.max_second_difference, second);
        if (second > 1e-8) rep.concave = false;
    }
    rep.ratio_decreasing = true;
    for (std::size_t k = 0; k + 1 < lambdas.size(); ++k)
        if (!(h[k + 1] / lambdas[k + 1] < h[k] / lambdas[k])) rep.ratio_decreasing = false;
    rep.sublinear = true;
    for (std::size_t a = 0; a < lambdas.size(); ++a)
        for (std::size_t b = a; b < lambdas.size(); ++b)
            for (std::size_t t = 0; t < lambdas.size(); ++t)
                if (std::abs(lambdas[a] + lambdas[b] - lambdas[t]) <= 1e-9 * lambdas[t]) {
                    ++rep.triples_checked;
                    if (!(h[t] < h[a] + h[b])) rep.sublinear = false;
                }
    if (rep.triples_checked == 0) rep.sublinear = false;
    return rep;
}

ScalarCurve c_curve(const Grid& grid, double sigma, const std::vector<double>& lambdas, const SolverSettings& settings) {
    return h_curve(grid, sigma, lambdas, settings).c;
}

}  // namespace dnls

#include "dnls/minimize.hpp"

#include "dnls/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace dnls {

std::string to_string(Family f) {
    switch (f) {
        case Family::normalized: return "normalized";
        case Family::homogeneous: return "homogeneous";
        case Family::profile: return "profile";
    }
    return "?";
}

Family family_from_string(const std::string& name) {
    if (name == "normalized") return Family::normalized;
    if (name == "homogeneous") return Family::homogeneous;
    if (name == "profile") return Family::profile;
    throw ConfigError("unknown family '" + name + "' (expected normalized, homogeneous or profile)");
}

SeedKind seed_from_string(const std::string& name) {
    if (name == "delta") return SeedKind::delta;
    if (name == "gaussian") return SeedKind::gaussian;
    if (name == "two_site" || name == "two-site" || name == "offsite") return SeedKind::two_site;
    throw ConfigError("unknown seed '" + name + "' (expected delta, gaussian or two_site)");
}

double WaveProfile::frequency() const {
    if (family == Family::normalized) return multiplier.value_or(0.0);
    return parameter;
}

double j_upper_bound(double omega, int dimension) { return omega + 2.0 * dimension; }

Field make_seed(const Grid& grid, SeedKind kind, double height) {
    switch (kind) {
        case SeedKind::delta: return Field::delta(grid, {0, 0, 0}, height);
        case SeedKind::gaussian: {
            Field f(grid);
            for (std::size_t i = 0; i < f.size(); ++i) {
                const MultiIndex n = grid.multi_index(i);
                const double r2 = double(n[0]) * n[0] + double(n[1]) * n[1] + double(n[2]) * n[2];
                f[i] = height * std::exp(-0.5 * r2);
            }
            return f;
        }
        case SeedKind::two_site: {
            Field f = Field::delta(grid, {0, 0, 0}, height);
            f[grid.flat_index({1, 0, 0})] = height;
            return f;
        }
    }
    return Field(grid);
}

Field tent_trial_field(const Grid& grid, double lambda, int width) {
    if (width < 1 || lambda <= 0.0) throw ConfigError("tent field needs width >= 1 and lambda > 0");
    if (grid.half_width() < width - 1) throw ConfigError("grid too small for tent width");
    const int d = grid.dimension();
    const double nw = width;
    Field f(grid);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const MultiIndex n = grid.multi_index(i);
        const int l1 = std::abs(n[0]) + std::abs(n[1]) + std::abs(n[2]);
        if (l1 <= width - 1) f[i] = std::pow(nw, -0.5 * d) - l1 * std::pow(nw, -1.0 - 0.5 * d);
    }
    f.values() *= std::sqrt(lambda / f.values().squaredNorm());
    return f;
}

namespace {

Eigen::VectorXd neg_lap(const Grid& g, const Eigen::VectorXd& u) {
    return -apply_laplacian(Field(g, u)).values();
}

// |u|^{2 sigma} u
Eigen::VectorXd nonlinearity(const Eigen::VectorXd& u, double sigma) {
    return (abs_pow(u, 2.0 * sigma) * u.array()).matrix();
}

Eigen::VectorXd profile_map(const Grid& g, const Eigen::VectorXd& phi, double sigma, double omega) {
    return neg_lap(g, phi) + omega * phi - nonlinearity(phi, sigma);
}

Eigen::MatrixXd lplus_matrix(const Grid& g, const Eigen::VectorXd& phi, double sigma, double omega) {
    Eigen::MatrixXd m = negative_laplacian_matrix(g);
    m.diagonal().array() += omega - (2.0 * sigma + 1.0) * abs_pow(phi, 2.0 * sigma);
    return m;
}

struct Objective {
    double value;
    Eigen::VectorXd residual;  // half the constrained gradient
};

struct GradientRun {
    Eigen::VectorXd u;
    double residual = 0.0;
    int iterations = 0;
};

// Curvature-adaptive (two-point secant) projected gradient with monotone backtracking.
GradientRun projected_gradient(Eigen::VectorXd u, const std::function<Objective(const Eigen::VectorXd&)>& eval,
                               const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& retract, double alpha0,
                               double target, int iteration_budget, const SolverSettings& s) {
    u = retract(u.cwiseAbs());
    Objective cur = eval(u);
    double alpha = alpha0;
    Eigen::VectorXd u_prev, r_prev;
    GradientRun run;
    for (int it = 0; it < iteration_budget; ++it) {
        const double res = cur.residual.norm();
        if (!std::isfinite(res) || !std::isfinite(cur.value))
            throw SolverError(SolverFailure::divergence, "non-finite iterate in the gradient phase");
        if (res < target) {
            run.u = u;
            run.residual = res;
            run.iterations = it;
            return run;
        }
        if (it > 0) {
            const Eigen::VectorXd sv = u - u_prev;
            const Eigen::VectorXd yv = cur.residual - r_prev;
            const double sy = sv.dot(yv);
            if (sy > 0.0) alpha = std::clamp(sv.squaredNorm() / sy, 1e-3 * alpha0, 1e6 * alpha0);
        }
        bool accepted = false;
        for (int k = 0; k < 60; ++k) {
            const Eigen::VectorXd trial = retract(u - alpha * cur.residual);
            Objective next = eval(trial);
            if (std::isfinite(next.value) && next.value <= cur.value - 2e-4 * alpha * res * res) {
                u_prev = u;
                r_prev = cur.residual;
                u = trial;
                cur = std::move(next);
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            // line search exhausted: we sit at the rounding floor of the objective
            if (res < 1e3 * target) {
                run.u = u;
                run.residual = res;
                run.iterations = it;
                return run;
            }
            throw SolverError(SolverFailure::non_convergence, "gradient phase stalled at residual " + std::to_string(res));
        }
        if ((it + 1) % s.projection_interval == 0) {
            u = retract(u.cwiseAbs());
            cur = eval(u);
            u_prev.resize(0);
            r_prev.resize(0);
        }
        if (u_prev.size() == 0) {
            // the secant pair was invalidated by the projection; take one plain step next
            u_prev = u;
            r_prev = cur.residual;
        }
    }
    throw SolverError(SolverFailure::non_convergence,
                      "gradient phase hit " + std::to_string(iteration_budget) + " iterations");
}

// Tangent combination of the two lowest eigenvectors of L_+, orthogonal to the constraint normal w.
Eigen::VectorXd escape_direction(const Eigen::MatrixXd& lplus, const Eigen::VectorXd& w) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lplus);
    if (es.info() != Eigen::Success) throw SolverError(SolverFailure::eigensolver, "L+ eigensolver failed");
    const Eigen::VectorXd e1 = es.eigenvectors().col(0);
    const Eigen::VectorXd e2 = es.eigenvectors().col(1);
    const double a = e2.dot(w), b = -e1.dot(w);
    Eigen::VectorXd v = (std::abs(a) + std::abs(b) > 0.0) ? Eigen::VectorXd(a * e1 + b * e2) : e2;
    return v / v.cwiseAbs().maxCoeff();
}

int negative_count(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw SolverError(SolverFailure::eigensolver, "L+ eigensolver failed");
    return static_cast<int>((es.eigenvalues().array() < -1e-9).count());
}

bool needs_bigger_box(const Field& f, const SolverSettings& s) {
    if (!s.enforce_box_rule) return false;
    return boundary_layer_mass(f) > s.box_mass_ratio * f.values().squaredNorm();
}

// Next grid under the box rule, or nullopt when the site cap forbids it.
std::optional<Grid> doubled(const Grid& g, const SolverSettings& s) {
    Grid bigger = g.resized(2 * g.half_width());
    if (bigger.site_count() > s.max_sites) return std::nullopt;
    return bigger;
}

void check_sigma(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ConfigError("sigma must be positive");
}

}  // namespace

double profile_residual(const Field& phi, double sigma, double omega) {
    return profile_map(phi.grid(), phi.values(), sigma, omega).norm();
}

WaveProfile newton_refine(const Field& seed, double sigma, double omega, const SolverSettings& settings) {
    check_sigma(sigma);
    const Grid& g = seed.grid();
    Eigen::VectorXd phi = seed.values();
    const double seed_mass = phi.squaredNorm();
    if (seed_mass == 0.0)
        throw SolverError(SolverFailure::trivial_solution,
                          "zero seed is the trivial root of the profile equation, not a ground state");
    Eigen::VectorXd F = profile_map(g, phi, sigma, omega);
    double res = F.norm();
    const double res0 = res;
    const Eigen::MatrixXd base = negative_laplacian_matrix(g);
    int it = 0;
    while (res >= settings.tolerance) {
        if (it == settings.max_newton_iterations)
            throw SolverError(SolverFailure::non_convergence,
                              "Newton residual " + std::to_string(res) + " after " + std::to_string(it) + " steps");
        Eigen::MatrixXd jac = base;
        jac.diagonal().array() += omega - (2.0 * sigma + 1.0) * abs_pow(phi, 2.0 * sigma);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
        const double rc = lu.rcond();
        if (!(rc > 1e-14))
            throw SolverError(SolverFailure::singular_jacobian,
                              "L+ is numerically singular (rcond " + std::to_string(rc) + "); degenerate wave");
        phi -= lu.solve(F);
        F = profile_map(g, phi, sigma, omega);
        res = F.norm();
        ++it;
        if (!std::isfinite(res)) throw SolverError(SolverFailure::divergence, "Newton iterate is not finite");
        if (it == 1 && res >= res0 && res >= settings.tolerance)
            throw SolverError(SolverFailure::divergence, "first Newton step did not reduce the residual; seed outside the basin");
    }
    if (phi.squaredNorm() < 1e-8 * seed_mass)
        throw SolverError(SolverFailure::trivial_solution, "Newton converged to the zero wave");
    WaveProfile w{Field(g, phi), sigma, Family::profile, omega, std::nullopt, res, {}, it, false};
    w.functionals = functionals(w.field, sigma, omega);
    return w;
}

WaveProfile newton_refine(const WaveProfile& seed, double sigma, double omega, const SolverSettings& settings) {
    WaveProfile out = newton_refine(to_profile(seed).field, sigma, omega, settings);
    out.box_limited = seed.box_limited;
    return out;
}

WaveProfile to_profile(const WaveProfile& wave) {
    if (wave.family == Family::profile) return wave;
    WaveProfile p = wave;
    p.family = Family::profile;
    if (wave.family == Family::homogeneous) {
        const double scale = std::pow(*wave.multiplier, 1.0 / (2.0 * wave.sigma));
        p.field = Field(wave.grid(), scale * wave.field.values());
        p.parameter = wave.parameter;
    } else {
        p.parameter = *wave.multiplier;
    }
    p.multiplier.reset();
    p.residual = profile_residual(p.field, p.sigma, p.parameter);
    p.functionals = functionals(p.field, p.sigma, p.parameter);
    return p;
}

WaveProfile solve_homogeneous(const Grid& grid, double sigma, double omega, const std::optional<Field>& seed,
                              const SolverSettings& s) {
    check_sigma(sigma);
    if (!(omega > 0.0) || !std::isfinite(omega)) throw ConfigError("omega must be positive");
    Grid g = grid;
    Field start = seed ? embed(*seed, g) : make_seed(g, s.seed);
    if (start.values().cwiseAbs().maxCoeff() == 0.0)
        throw SolverError(SolverFailure::trivial_solution, "zero seed");
    const double q = 2.0 * sigma + 2.0;
    bool box_limited = false;
    int total_iterations = 0;
    for (int attempt = 0; attempt < 12; ++attempt) {
        auto eval = [&](const Eigen::VectorXd& u) {
            const Eigen::VectorXd au = neg_lap(g, u) + omega * u;
            const double c = abs_pow(u, q).sum();
            const double j = u.dot(au) / std::pow(c, 1.0 / (sigma + 1.0));
            return Objective{j, au - j * nonlinearity(u, sigma) / std::pow(c, sigma / (sigma + 1.0))};
        };
        auto retract = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
            return v / std::pow(abs_pow(v, q).sum(), 1.0 / q);
        };
        const double alpha0 = 1.0 / (omega + 4.0 * g.dimension());
        GradientRun run = projected_gradient(start.values(), eval, retract, alpha0, s.newton_switch,
                                             s.max_gradient_iterations, s);
        total_iterations += run.iterations;

        WaveProfile phi_wave = [&] {
            for (int tries = 0;; ++tries) {
                const double j = eval(run.u).value;
                Field phi(g, std::pow(j, 1.0 / (2.0 * sigma)) * run.u);
                try {
                    return newton_refine(phi, sigma, omega, s);
                } catch (const SolverError& e) {
                    if (tries == 1 || e.kind() == SolverFailure::trivial_solution) throw;
                    GradientRun tighter = projected_gradient(run.u, eval, retract, alpha0, 1e-3 * s.newton_switch,
                                                             s.max_gradient_iterations, s);
                    total_iterations += tighter.iterations;
                    run = tighter;
                }
            }
        }();
        const Eigen::VectorXd& phi = phi_wave.field.values();
        total_iterations += phi_wave.iterations;

        if (s.escape_saddles) {
            const Eigen::MatrixXd lp = lplus_matrix(g, phi, sigma, omega);
            if (negative_count(lp) >= 2) {
                const Eigen::VectorXd w = nonlinearity(phi, sigma);
                Eigen::VectorXd u = phi / phi.cwiseAbs().maxCoeff();
                start = Field(g, (u + 0.2 * escape_direction(lp, w)).cwiseAbs());
                continue;
            }
        }
        if (needs_bigger_box(phi_wave.field, s)) {
            if (auto bigger = doubled(g, s)) {
                start = embed(Field(g, phi), *bigger);
                g = *bigger;
                continue;
            }
            box_limited = true;
        }
        const double vphi = abs_pow(phi, q).sum();
        const double j = std::pow(vphi, sigma / (sigma + 1.0));
        Field u(g, phi / std::pow(vphi, 1.0 / q));
        WaveProfile w{u, sigma, Family::homogeneous, omega, j, 0.0, functionals(u, sigma, omega), total_iterations,
                      box_limited};
        w.residual = (neg_lap(g, u.values()) + omega * u.values() - j * nonlinearity(u.values(), sigma)).norm();
        if (!(j > omega) || !(j < j_upper_bound(omega, g.dimension()))) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "j(omega) = " << j << " outside (" << omega << ", " << j_upper_bound(omega, g.dimension()) << ")";
            throw SolverError(SolverFailure::bound_violation, msg.str());
        }
        if (u.values().minCoeff() < -1e-12)
            throw SolverError(SolverFailure::non_convergence, "converged field has negative entries");
        return w;
    }
    throw SolverError(SolverFailure::non_convergence, "saddle escape / box doubling did not settle");
}

namespace {

// Bordered Newton on (-Lap u + c u - |u|^{2 sigma} u, (|u|^2 - lambda) / 2) in the unknowns (u, c).
// The bordered matrix [[L+(c), u], [u^T, 0]] is symmetric. Broad waves carry an exponentially small
// pinning eigenvalue, in which case the step is the min-norm solution with that direction dropped.
WaveProfile bordered_newton(const Grid& g, Eigen::VectorXd u, double sigma, double lambda, const SolverSettings& s) {
    const Eigen::Index n = u.size();
    const Eigen::MatrixXd base = negative_laplacian_matrix(g);
    auto multiplier = [&](const Eigen::VectorXd& v) {
        return (abs_pow(v, 2.0 * sigma + 2.0).sum() - v.dot(base * v)) / v.squaredNorm();
    };
    double c = multiplier(u);
    auto residual = [&](const Eigen::VectorXd& v, double cc) {
        Eigen::VectorXd F(n + 1);
        F.head(n) = base * v + cc * v - nonlinearity(v, sigma);
        F[n] = 0.5 * (v.squaredNorm() - lambda);
        return F;
    };
    Eigen::VectorXd F = residual(u, c);
    const double res0 = F.head(n).norm();
    int it = 0;
    while (F.head(n).norm() >= s.tolerance || std::abs(F[n]) > 1e-12 * lambda) {
        if (it == s.max_newton_iterations)
            throw SolverError(SolverFailure::non_convergence, "bordered Newton did not converge");
        Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n + 1, n + 1);
        jac.topLeftCorner(n, n) = base;
        jac.topLeftCorner(n, n).diagonal().array() += c - (2.0 * sigma + 1.0) * abs_pow(u, 2.0 * sigma);
        jac.col(n).head(n) = u;
        jac.row(n).head(n) = u.transpose();
        Eigen::VectorXd step;
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
        if (lu.rcond() > 1e-14) {
            step = lu.solve(F);
        } else {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
            if (es.info() != Eigen::Success) throw SolverError(SolverFailure::eigensolver, "bordered eigensolver failed");
            const double cut = 1e-12 * es.eigenvalues().cwiseAbs().maxCoeff();
            Eigen::VectorXd coef = es.eigenvectors().transpose() * F;
            for (Eigen::Index k = 0; k < coef.size(); ++k) {
                const double mu = es.eigenvalues()[k];
                coef[k] = std::abs(mu) > cut ? coef[k] / mu : 0.0;
            }
            step = es.eigenvectors() * coef;
        }
        u -= step.head(n);
        c -= step[n];
        F = residual(u, c);
        ++it;
        if (!F.allFinite()) throw SolverError(SolverFailure::divergence, "bordered Newton iterate is not finite");
        if (it == 1 && F.head(n).norm() >= res0 && F.head(n).norm() >= s.tolerance)
            throw SolverError(SolverFailure::divergence, "first bordered Newton step did not reduce the residual");
    }
    // c from lambda c = V - kinetic against the Newton multiplier, and pointwise at the peak
    const double c_energy = multiplier(u);
    Eigen::Index peak;
    u.maxCoeff(&peak);
    const double c_point = (nonlinearity(u, sigma)[peak] - (base * u)[peak]) / u[peak];
    const double scale = std::max(1.0, std::abs(c));
    if (std::abs(c_energy - c) > 1e-8 * scale || std::abs(c_point - c) > 1e-6 * scale)
        throw SolverError(SolverFailure::non_convergence, "Lagrange multiplier cross-check failed");
    WaveProfile w{Field(g, u), sigma, Family::normalized, lambda, c, F.head(n).norm(), {}, it, false};
    w.functionals = functionals(w.field, sigma, c);
    return w;
}

}  // namespace

WaveProfile solve_normalized(const Grid& grid, double sigma, double lambda, const std::optional<Field>& seed,
                             const SolverSettings& s) {
    check_sigma(sigma);
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ConfigError("lambda must be positive");
    const bool supercritical = sigma >= 2.0 / grid.dimension();
    if (supercritical && !s.allow_supercritical)
        throw ConfigError("normalized problem is ill-posed for sigma >= 2/d (inf H = -infinity); "
                          "pass --override-supercritical to solve on the finite box anyway");
    Grid g = grid;
    Field start = seed ? embed(*seed, g) : make_seed(g, s.seed);
    if (start.values().cwiseAbs().maxCoeff() == 0.0)
        throw SolverError(SolverFailure::trivial_solution, "zero seed");
    bool box_limited = false;
    int total_iterations = 0;
    const double radius = std::sqrt(lambda);
    for (int attempt = 0; attempt < 12; ++attempt) {
        auto eval = [&](const Eigen::VectorXd& u) {
            const Eigen::VectorXd lu = neg_lap(g, u);
            const double kin = u.dot(lu);
            const double v = abs_pow(u, 2.0 * sigma + 2.0).sum();
            const double c = (v - kin) / u.squaredNorm();
            return Objective{kin - v / (sigma + 1.0), lu + c * u - nonlinearity(u, sigma)};
        };
        auto retract = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd { return radius * v / v.norm(); };
        const double alpha0 = 0.25 / g.dimension();
        GradientRun run = projected_gradient(start.values(), eval, retract, alpha0, s.newton_switch,
                                             s.max_gradient_iterations, s);
        total_iterations += run.iterations;

        WaveProfile wave = [&] {
            for (int tries = 0;; ++tries) {
                try {
                    return bordered_newton(g, run.u, sigma, lambda, s);
                } catch (const SolverError& e) {
                    if (tries == 1) throw;
                    run = projected_gradient(run.u, eval, retract, alpha0, 1e-3 * s.newton_switch,
                                             s.max_gradient_iterations, s);
                    total_iterations += run.iterations;
                }
            }
        }();
        const Eigen::VectorXd& u = wave.field.values();
        const double c = *wave.multiplier;
        total_iterations += wave.iterations;

        if (s.escape_saddles) {
            const Eigen::MatrixXd lp = lplus_matrix(g, u, sigma, c);
            if (negative_count(lp) >= 2) {
                start = Field(g, (u / u.cwiseAbs().maxCoeff() + 0.2 * escape_direction(lp, u)).cwiseAbs());
                continue;
            }
        }
        if (needs_bigger_box(wave.field, s)) {
            if (auto bigger = doubled(g, s)) {
                start = embed(wave.field, *bigger);
                g = *bigger;
                continue;
            }
            box_limited = true;
        }
        if (box_limited && supercritical)
            throw SolverError(SolverFailure::collapse,
                              "mass spreads to the box boundary (vanishing); lambda is below the excitation threshold");
        if (!(c > 0.0)) throw SolverError(SolverFailure::bound_violation, "Lagrange multiplier c(lambda) <= 0");
        if (u.minCoeff() < -1e-12)
            throw SolverError(SolverFailure::non_convergence, "converged field has negative entries");
        wave.box_limited = box_limited;
        wave.iterations = total_iterations;
        return wave;
    }
    throw SolverError(SolverFailure::non_convergence, "saddle escape / box doubling did not settle");
}

WitnessReport szego_witness_check(const WaveProfile& profile, double slack) {
    WitnessReport rep;
    const Field& f = profile.field;
    const Grid& g = f.grid();
    const int d = g.dimension();
    const int side = g.side();
    const double peak = f.values().cwiseAbs().maxCoeff();
    const double tol = slack * std::max(1.0, peak);
    // axis lines: every multi-index with n_axis = -N is a line start
    for (int axis = 0; axis < d; ++axis) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            const MultiIndex n = g.multi_index(i);
            if (n[static_cast<std::size_t>(axis)] != -g.half_width()) continue;
            std::vector<double> line(static_cast<std::size_t>(side));
            MultiIndex m = n;
            for (int k = 0; k < side; ++k) {
                m[static_cast<std::size_t>(axis)] = k - g.half_width();
                line[static_cast<std::size_t>(k)] = f.at(m);
            }
            const auto top = static_cast<int>(std::max_element(line.begin(), line.end()) - line.begin());
            bool ok = true;
            for (int k = top; k + 1 < side; ++k) ok = ok && line[k + 1] <= line[k] + tol;
            for (int k = top; k > 0; --k) ok = ok && line[k - 1] <= line[k] + tol;
            ++rep.lines_checked;
            if (!ok) ++rep.lines_failed;
        }
    }
    rep.bell_shaped = rep.lines_failed == 0;
    if (d == 1) {
        const Eigen::VectorXd& v = f.values();
        Eigen::Index top;
        const double mx = v.maxCoeff(&top);
        // plateau of maximal values around the leftmost maximum
        Eigen::Index a = top, b = top;
        while (b + 1 < v.size() && std::abs(v[b + 1] - mx) <= tol) ++b;
        rep.center_offset = 0.5 * double(a + b) - g.half_width();
        rep.onsite = (a == b);
        double err = 0.0;
        for (Eigen::Index k = 0; a - k >= 0 || b + k < v.size(); ++k) {
            const double left = a - k >= 0 ? v[a - k] : 0.0;
            const double right = b + k < v.size() ? v[b + k] : 0.0;
            err = std::max(err, std::abs(left - right));
        }
        rep.symmetry_error = err;
        rep.symmetric = err <= tol;
    } else {
        rep.symmetric = rep.bell_shaped;
    }
    return rep;
}

}  // namespace dnls

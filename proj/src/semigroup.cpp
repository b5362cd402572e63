#include "dnls/semigroup.hpp"

#include "dnls/errors.hpp"
#include "dnls/random.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace dnls {

namespace {

// e^{-2t} t^j sum_k t^{2k}/(k!(k+j)!), summed in the log domain so large t neither overflows
// nor underflows the leading factor.
double kernel_coefficient(double t, int j) {
    double log_term = -2.0 * t + j * std::log(t) - std::lgamma(static_cast<double>(j) + 1.0);
    const double log_t2 = 2.0 * std::log(t);
    double sum = 0.0;
    for (int k = 0;; ++k) {
        const double term = std::exp(log_term);
        sum += term;
        // terms grow until k ~ t, then decay geometrically
        if (k > t && term <= 1e-18 * sum) break;
        if (k > 100000) break;
        log_term += log_t2 - std::log(static_cast<double>(k) + 1.0) - std::log(static_cast<double>(k + j) + 1.0);
    }
    return sum;
}

}  // namespace

double HeatKernel::operator()(int n) const {
    n = std::abs(n);
    return n <= cutoff ? coefficients[static_cast<std::size_t>(n)] : 0.0;
}

double HeatKernel::total_mass() const {
    double s = coefficients[0];
    for (int j = 1; j <= cutoff; ++j) s += 2.0 * coefficients[static_cast<std::size_t>(j)];
    return s;
}

HeatKernel heat_kernel(double t, int cutoff) {
    if (!(t > 0.0)) throw ConfigError("heat kernel needs t > 0");
    if (cutoff < 1) throw ConfigError("heat kernel needs cutoff >= 1");
    HeatKernel k;
    k.t = t;
    k.cutoff = cutoff;
    k.coefficients.resize(static_cast<std::size_t>(cutoff) + 1);
    for (int j = 0; j <= cutoff; ++j) k.coefficients[static_cast<std::size_t>(j)] = kernel_coefficient(t, j);
    k.truncation_bound = std::max(0.0, 1.0 - k.total_mass());
    return k;
}

int heat_kernel_reach(double t, double rel_tol) {
    const double k0 = kernel_coefficient(t, 0);
    int j = 1;
    while (kernel_coefficient(t, j) >= rel_tol * k0) j = j < 16 ? j + 1 : j + j / 4;
    return j;
}

namespace {

// Convolution along one axis with a (possibly periodised) kernel table indexed by offset.
Eigen::VectorXd convolve_axis(const Grid& g, const Eigen::VectorXd& u, int axis, const std::vector<double>& table) {
    const int side = g.side();
    std::size_t st = 1;
    for (int a = g.dimension() - 1; a > axis; --a) st *= static_cast<std::size_t>(side);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(u.size());
    const bool periodic = g.boundary() == Boundary::periodic;
    std::vector<double> line(static_cast<std::size_t>(side));
    for (std::size_t base = 0; base < g.site_count(); ++base) {
        // visit each line once, from its first site
        if ((base / st) % static_cast<std::size_t>(side) != 0) continue;
        for (int m = 0; m < side; ++m) line[static_cast<std::size_t>(m)] = u[static_cast<Eigen::Index>(base + static_cast<std::size_t>(m) * st)];
        for (int n = 0; n < side; ++n) {
            double acc = 0.0;
            for (int m = 0; m < side; ++m) {
                int off = n - m;
                if (periodic) off = ((off % side) + side) % side;
                else off = std::abs(off);
                acc += table[static_cast<std::size_t>(off)] * line[static_cast<std::size_t>(m)];
            }
            out[static_cast<Eigen::Index>(base + static_cast<std::size_t>(n) * st)] = acc;
        }
    }
    return out;
}

std::vector<double> kernel_table(const Grid& g, double t) {
    const int side = g.side();
    if (g.boundary() == Boundary::zero_padding) {
        const HeatKernel k = heat_kernel(t, side - 1);
        return k.coefficients;
    }
    // periodised: table[r] = sum_m K_{r + m side}
    const int reach = std::max(heat_kernel_reach(t), side);
    const HeatKernel k = heat_kernel(t, reach);
    std::vector<double> table(static_cast<std::size_t>(side), 0.0);
    for (int j = -reach; j <= reach; ++j) table[static_cast<std::size_t>(((j % side) + side) % side)] += k(j);
    return table;
}

}  // namespace

Field apply_heat_semigroup(const Field& f, double t) {
    if (!(t > 0.0)) throw ConfigError("semigroup needs t > 0");
    const Grid& g = f.grid();
    const auto table = kernel_table(g, t);
    Eigen::VectorXd u = f.values();
    for (int axis = 0; axis < g.dimension(); ++axis) u = convolve_axis(g, u, axis, table);
    return Field(g, std::move(u));
}

namespace {

constexpr int kNodes = 16;       // Chebyshev-Lobatto nodes per substep (plus s = 0)
constexpr int kQuadrature = 16;  // Gauss-Legendre points per integral

struct GaussLegendre {
    std::vector<double> x, w;  // on [0, 1]
};

GaussLegendre gauss_legendre(int n) {
    // Golub-Welsch
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        T(k, k - 1) = T(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    GaussLegendre gl;
    for (int k = 0; k < n; ++k) {
        gl.x.push_back(0.5 * (es.eigenvalues()[k] + 1.0));
        const double v = es.eigenvectors()(0, k);
        gl.w.push_back(v * v);  // weights sum to 1 on [0,1]
    }
    return gl;
}

// Barycentric Lagrange weights of the interpolation nodes, evaluated at x.
std::vector<double> lagrange_row(const std::vector<double>& nodes, const std::vector<double>& bary, double x) {
    std::vector<double> row(nodes.size(), 0.0);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (x == nodes[k]) {
            row[k] = 1.0;
            return row;
        }
    }
    double denom = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        row[k] = bary[k] / (x - nodes[k]);
        denom += row[k];
    }
    for (auto& r : row) r /= denom;
    return row;
}

// One substep of length tau: u(tau) where u = e^{s Lap} g + int_0^s e^{(s-r) Lap} V u(r) dr.
Eigen::VectorXd duhamel_substep(const Grid& grid, const Eigen::VectorXd& g, const Eigen::VectorXd& V, double tau, double tol) {
    // Chebyshev-Lobatto nodes on [0, tau], s_0 = 0
    std::vector<double> s(kNodes + 1), bary(kNodes + 1);
    for (int k = 0; k <= kNodes; ++k) {
        s[static_cast<std::size_t>(k)] = 0.5 * tau * (1.0 - std::cos(std::numbers::pi * k / kNodes));
        bary[static_cast<std::size_t>(k)] = ((k % 2) ? -1.0 : 1.0) * ((k == 0 || k == kNodes) ? 0.5 : 1.0);
    }
    const GaussLegendre gl = gauss_legendre(kQuadrature);

    std::map<double, std::vector<double>> tables;
    auto propagate = [&](const Eigen::VectorXd& u, double dt) -> Eigen::VectorXd {
        if (dt <= 0.0) return u;
        auto it = tables.find(dt);
        if (it == tables.end()) it = tables.emplace(dt, kernel_table(grid, dt)).first;
        Eigen::VectorXd out = u;
        for (int axis = 0; axis < grid.dimension(); ++axis) out = convolve_axis(grid, out, axis, it->second);
        return out;
    };

    std::vector<Eigen::VectorXd> free(kNodes + 1), U(kNodes + 1);
    for (int k = 0; k <= kNodes; ++k) {
        free[static_cast<std::size_t>(k)] = propagate(g, s[static_cast<std::size_t>(k)]);
        U[static_cast<std::size_t>(k)] = free[static_cast<std::size_t>(k)];
    }
    if (V.cwiseAbs().maxCoeff() == 0.0) return U.back();

    // interpolation rows for every quadrature point of every node
    std::vector<std::vector<std::vector<double>>> rows(kNodes + 1);
    for (int i = 1; i <= kNodes; ++i)
        for (int q = 0; q < kQuadrature; ++q)
            rows[static_cast<std::size_t>(i)].push_back(lagrange_row(s, bary, s[static_cast<std::size_t>(i)] * gl.x[static_cast<std::size_t>(q)]));

    for (int iter = 0; iter < 500; ++iter) {
        std::vector<Eigen::VectorXd> next(kNodes + 1);
        next[0] = g;
        double change = 0.0;
        for (int i = 1; i <= kNodes; ++i) {
            const double si = s[static_cast<std::size_t>(i)];
            Eigen::VectorXd integral = Eigen::VectorXd::Zero(g.size());
            for (int q = 0; q < kQuadrature; ++q) {
                const double r = si * gl.x[static_cast<std::size_t>(q)];
                Eigen::VectorXd ur = Eigen::VectorXd::Zero(g.size());
                const auto& row = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(q)];
                for (int k = 0; k <= kNodes; ++k) ur += row[static_cast<std::size_t>(k)] * U[static_cast<std::size_t>(k)];
                integral += (si * gl.w[static_cast<std::size_t>(q)]) * propagate(V.cwiseProduct(ur), si - r);
            }
            next[static_cast<std::size_t>(i)] = free[static_cast<std::size_t>(i)] + integral;
            change = std::max(change, (next[static_cast<std::size_t>(i)] - U[static_cast<std::size_t>(i)]).norm());
        }
        U = std::move(next);
        if (change < tol) return U.back();
    }
    throw SolverError(SolverFailure::non_convergence, "Duhamel fixed-point iteration did not settle");
}

}  // namespace

Field evolve_with_potential(const Field& f, const Field& potential, double t, double fixed_point_tol) {
    if (!(t > 0.0)) throw ConfigError("evolution time must be positive");
    if (!(potential.grid() == f.grid())) throw ConfigError("potential and field live on different grids");
    const double vmax = potential.values().cwiseAbs().maxCoeff();
    // tau < 1/(2 ||V||), and at most 0.5 so the node interpolation stays accurate
    int steps = static_cast<int>(std::floor(2.0 * t * vmax)) + 1;
    steps = std::max(steps, static_cast<int>(std::ceil(t / 0.5)));
    const double tau = t / steps;
    Eigen::VectorXd u = f.values();
    for (int k = 0; k < steps; ++k) u = duhamel_substep(f.grid(), u, potential.values(), tau, fixed_point_tol);
    return Field(f.grid(), std::move(u));
}

Field random_nonnegative_field(const Grid& grid, std::uint64_t seed) {
    Rng rng(seed);
    Field f(grid);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = rng.uniform();
    f[rng.index(f.size())] = 0.0;
    return f;
}

PositivityReport check_positivity_improving(const Field& potential, double t, int trials, std::uint64_t seed) {
    if (trials < 1) throw ConfigError("positivity check needs at least one trial");
    std::vector<Field> initial;
    for (int k = 0; k < trials; ++k) initial.push_back(random_nonnegative_field(potential.grid(), seed + static_cast<std::uint64_t>(k)));
    return check_positivity_improving(potential, t, initial);
}

PositivityReport check_positivity_improving(const Field& potential, double t, const std::vector<Field>& initial) {
    PositivityReport rep;
    const double vmax = potential.values().cwiseAbs().maxCoeff();
    rep.substeps = std::max(static_cast<int>(std::floor(2.0 * t * vmax)) + 1, static_cast<int>(std::ceil(t / 0.5)));
    rep.min_value = std::numeric_limits<double>::infinity();
    rep.passed = true;
    for (std::size_t k = 0; k < initial.size(); ++k) {
        const Field& f = initial[k];
        if (f.values().minCoeff() < 0.0 || f.values().maxCoeff() <= 0.0)
            throw ConfigError("positivity check needs nonnegative nonzero initial data");
        const Field u = evolve_with_potential(f, potential, t);
        Eigen::Index at;
        const double m = u.values().minCoeff(&at);
        rep.trial_minima.push_back(m);
        rep.min_value = std::min(rep.min_value, m);
        if (!(m > 0.0) && rep.passed) {
            rep.passed = false;
            std::ostringstream os;
            os << "trial " << k << ": site " << at << " has value " << m;
            rep.diagnostic = os.str();
        }
    }
    return rep;
}

Eigen::MatrixXd schrodinger_matrix(const Field& potential) {
    Eigen::MatrixXd L = negative_laplacian_matrix(potential.grid());
    L.diagonal() += potential.values();
    return L;
}

PerronFrobeniusReport ground_state_pf_check(const Eigen::MatrixXd& L) {
    if (L.rows() != L.cols()) throw ConfigError("operator matrix must be square");
    if ((L - L.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, L.cwiseAbs().maxCoeff()))
        throw ConfigError("operator matrix must be symmetric");
    PerronFrobeniusReport rep;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
    if (es.info() != Eigen::Success) throw SolverError(SolverFailure::eigensolver, "symmetric eigensolver failed");
    rep.lambda0 = es.eigenvalues()[0];
    if (!(rep.lambda0 < 0.0)) {
        rep.diagnostic = "not applicable: lowest eigenvalue is not negative";
        return rep;
    }
    rep.applicable = true;
    rep.multiplicity = 0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
        if (std::abs(es.eigenvalues()[k] - rep.lambda0) < 1e-9) ++rep.multiplicity;
    rep.ground_state = es.eigenvectors().col(0);
    if (rep.ground_state.sum() < 0.0) rep.ground_state = -rep.ground_state;
    rep.min_entry = rep.ground_state.minCoeff();
    rep.max_entry = rep.ground_state.maxCoeff();
    rep.simple = rep.multiplicity == 1;
    rep.sign_definite = rep.min_entry >= -1e-9 * rep.max_entry;
    rep.passed = rep.simple && rep.sign_definite;
    if (!rep.simple) rep.diagnostic = "ground eigenvalue is degenerate";
    else if (!rep.sign_definite) rep.diagnostic = "ground state changes sign";
    return rep;
}

}  // namespace dnls

#include "dnls/lattice.hpp"

#include "dnls/errors.hpp"

#include <cmath>
#include <limits>

namespace dnls {

const char* to_string(SolverFailure kind) {
    switch (kind) {
    case SolverFailure::non_convergence: return "non-convergence";
    case SolverFailure::divergence: return "divergence";
    case SolverFailure::singular_jacobian: return "singular jacobian";
    case SolverFailure::trivial_solution: return "trivial solution";
    case SolverFailure::collapse: return "collapse";
    case SolverFailure::bound_violation: return "bound violation";
    case SolverFailure::ill_posed: return "ill-posed";
    case SolverFailure::eigensolver: return "eigensolver failure";
    }
    return "unknown";
}

std::string to_string(Boundary b) {
    return b == Boundary::periodic ? "periodic" : "zero-padding";
}

Boundary boundary_from_string(const std::string& name) {
    if (name == "zero-padding" || name == "zero" || name == "dirichlet") return Boundary::zero_padding;
    if (name == "periodic") return Boundary::periodic;
    throw ConfigError("unknown boundary '" + name + "'");
}

Grid::Grid(int dimension, int half_width, Boundary boundary)
    : dim_(dimension), half_width_(half_width), boundary_(boundary) {
    if (dimension < 1 || dimension > 3) throw ConfigError("dimension must be 1, 2 or 3");
    if (half_width < 1) throw ConfigError("half width N must be positive");
    sites_ = 1;
    for (int i = 0; i < dim_; ++i) sites_ *= static_cast<std::size_t>(side());
}

MultiIndex Grid::multi_index(std::size_t flat) const {
    MultiIndex n{0, 0, 0};
    const auto s = static_cast<std::size_t>(side());
    for (int axis = dim_ - 1; axis >= 0; --axis) {
        n[axis] = static_cast<int>(flat % s) - half_width_;
        flat /= s;
    }
    return n;
}

std::size_t Grid::flat_index(const MultiIndex& n) const {
    std::size_t flat = 0;
    for (int axis = 0; axis < dim_; ++axis)
        flat = flat * static_cast<std::size_t>(side()) + static_cast<std::size_t>(n[axis] + half_width_);
    return flat;
}

bool Grid::contains(const MultiIndex& n) const {
    for (int axis = 0; axis < dim_; ++axis)
        if (std::abs(n[axis]) > half_width_) return false;
    return true;
}

Field::Field(const Grid& grid) : grid_(grid), values_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.site_count()))) {}

Field::Field(const Grid& grid, Eigen::VectorXd values) : grid_(grid), values_(std::move(values)) {
    if (static_cast<std::size_t>(values_.size()) != grid_.site_count())
        throw ConfigError("field size does not match grid site count");
    if (!values_.allFinite()) throw ConfigError("field contains non-finite values");
}

Field Field::delta(const Grid& grid, const MultiIndex& at, double height) {
    Field f(grid);
    f[grid.flat_index(at)] = height;
    return f;
}

Field Field::constant(const Grid& grid, double value) {
    return Field(grid, Eigen::VectorXd::Constant(static_cast<Eigen::Index>(grid.site_count()), value));
}

namespace {

// Stride of one step along `axis` in the flat layout.
std::size_t stride(const Grid& g, int axis) {
    std::size_t s = 1;
    for (int a = g.dimension() - 1; a > axis; --a) s *= static_cast<std::size_t>(g.side());
    return s;
}

// Visits the neighbour of `flat` one step along +axis (dir = +1) or -axis (dir = -1).
// Returns false when the neighbour is outside a zero-padded box.
bool neighbour(const Grid& g, std::size_t flat, const MultiIndex& n, int axis, int dir, std::size_t& out) {
    const int N = g.half_width();
    const int c = n[axis] + dir;
    const std::size_t st = stride(g, axis);
    if (c > N || c < -N) {
        if (g.boundary() == Boundary::zero_padding) return false;
        const int wrapped = c > N ? -N : N;
        out = flat + static_cast<std::size_t>(wrapped - n[axis]) * st;  // unsigned wrap is intended
        return true;
    }
    out = dir > 0 ? flat + st : flat - st;
    return true;
}

}  // namespace

Field apply_laplacian(const Field& f) {
    const Grid& g = f.grid();
    Field out(g);
    const auto& u = f.values();
    const double diag = 2.0 * g.dimension();
    for (std::size_t i = 0; i < g.site_count(); ++i) {
        const MultiIndex n = g.multi_index(i);
        double acc = -diag * u[static_cast<Eigen::Index>(i)];
        for (int axis = 0; axis < g.dimension(); ++axis) {
            for (int dir : {-1, 1}) {
                std::size_t j;
                if (neighbour(g, i, n, axis, dir, j)) acc += u[static_cast<Eigen::Index>(j)];
            }
        }
        out[i] = acc;
    }
    return out;
}

double dirichlet_form(const Field& f) {
    const Grid& g = f.grid();
    const auto& u = f.values();
    double sum = 0.0;
    for (std::size_t i = 0; i < g.site_count(); ++i) {
        const MultiIndex n = g.multi_index(i);
        const double ui = u[static_cast<Eigen::Index>(i)];
        for (int axis = 0; axis < g.dimension(); ++axis) {
            std::size_t j;
            if (neighbour(g, i, n, axis, +1, j)) {
                const double d = u[static_cast<Eigen::Index>(j)] - ui;
                sum += d * d;
            } else {
                sum += ui * ui;
            }
            // the edge towards -axis is owned by the other endpoint unless it leaves the box
            if (!neighbour(g, i, n, axis, -1, j)) sum += ui * ui;
        }
    }
    return sum;
}

Eigen::ArrayXd abs_pow(const Eigen::VectorXd& u, double q) {
    return u.array().abs().pow(q);
}

FunctionalValues functionals(const Field& f, double sigma, double omega) {
    if (!(sigma > 0.0)) throw ConfigError("sigma must be positive");
    FunctionalValues fv;
    fv.P = f.values().squaredNorm();
    fv.V = abs_pow(f.values(), 2.0 * sigma + 2.0).sum();
    fv.kinetic = dirichlet_form(f);
    fv.H = fv.kinetic - fv.V / (sigma + 1.0);
    fv.J = fv.kinetic + omega * fv.P;
    return fv;
}

double norm_lp(const Field& f, double p) {
    if (!(p >= 1.0)) throw ConfigError("l^p norm needs p >= 1");
    if (std::isinf(p)) return f.values().cwiseAbs().maxCoeff();
    if (p == 2.0) return f.values().norm();
    const double m = f.values().cwiseAbs().maxCoeff();
    if (m == 0.0) return 0.0;
    // scale by the max entry to keep large p finite
    return m * std::pow((f.values().cwiseAbs() / m).array().pow(p).sum(), 1.0 / p);
}

double boundary_layer_mass(const Field& f, int width) {
    const Grid& g = f.grid();
    const int limit = g.half_width() - width;
    double mass = 0.0;
    for (std::size_t i = 0; i < g.site_count(); ++i) {
        const MultiIndex n = g.multi_index(i);
        int m = 0;
        for (int axis = 0; axis < g.dimension(); ++axis) m = std::max(m, std::abs(n[axis]));
        if (m >= limit) mass += f[i] * f[i];
    }
    return mass;
}

Field embed(const Field& f, const Grid& target) {
    if (target.dimension() != f.grid().dimension()) throw ConfigError("embed: dimension mismatch");
    Field out(target);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const MultiIndex n = f.grid().multi_index(i);
        if (target.contains(n)) out[target.flat_index(n)] = f[i];
    }
    return out;
}

Eigen::MatrixXd negative_laplacian_matrix(const Grid& g) {
    const auto n = static_cast<Eigen::Index>(g.site_count());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < g.site_count(); ++i) {
        const MultiIndex idx = g.multi_index(i);
        const auto ii = static_cast<Eigen::Index>(i);
        A(ii, ii) += 2.0 * g.dimension();
        for (int axis = 0; axis < g.dimension(); ++axis) {
            for (int dir : {-1, 1}) {
                std::size_t j;
                if (neighbour(g, i, idx, axis, dir, j)) A(ii, static_cast<Eigen::Index>(j)) -= 1.0;
            }
        }
    }
    return A;
}

}  // namespace dnls

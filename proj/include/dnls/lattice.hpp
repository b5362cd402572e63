#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dnls {

enum class Boundary { zero_padding, periodic };

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& name);

using MultiIndex = std::array<int, 3>;

/// Truncated box {n in Z^d : |n_i| <= N}. Sites are stored row-major, first axis slowest.
class Grid {
public:
    Grid(int dimension, int half_width, Boundary boundary = Boundary::zero_padding);

    int dimension() const noexcept { return dim_; }
    int half_width() const noexcept { return half_width_; }
    Boundary boundary() const noexcept { return boundary_; }
    int side() const noexcept { return 2 * half_width_ + 1; }
    std::size_t site_count() const noexcept { return sites_; }

    /// Components beyond dimension() are zero.
    MultiIndex multi_index(std::size_t flat) const;
    std::size_t flat_index(const MultiIndex& n) const;
    std::size_t origin() const { return flat_index({0, 0, 0}); }
    bool contains(const MultiIndex& n) const;

    /// Same geometry with the half-width replaced.
    Grid resized(int half_width) const { return Grid(dim_, half_width, boundary_); }

    bool operator==(const Grid&) const = default;

private:
    int dim_;
    int half_width_;
    Boundary boundary_;
    std::size_t sites_;
};

/// Real lattice function on a Grid.
class Field {
public:
    explicit Field(const Grid& grid);
    Field(const Grid& grid, Eigen::VectorXd values);

    static Field delta(const Grid& grid, const MultiIndex& at = {0, 0, 0}, double height = 1.0);
    static Field constant(const Grid& grid, double value);

    const Grid& grid() const noexcept { return grid_; }
    const Eigen::VectorXd& values() const noexcept { return values_; }
    Eigen::VectorXd& values() noexcept { return values_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }

    double operator[](std::size_t i) const { return values_[static_cast<Eigen::Index>(i)]; }
    double& operator[](std::size_t i) { return values_[static_cast<Eigen::Index>(i)]; }
    double at(const MultiIndex& n) const { return (*this)[grid_.flat_index(n)]; }

    bool all_finite() const { return values_.allFinite(); }

private:
    Grid grid_;
    Eigen::VectorXd values_;
};

struct FunctionalValues {
    double P = 0.0;        // sum u^2
    double V = 0.0;        // sum |u|^{2 sigma + 2}
    double kinetic = 0.0;  // <-Lap u, u>
    double H = 0.0;        // kinetic - V / (sigma + 1)
    double J = 0.0;        // kinetic + omega P
};

Field apply_laplacian(const Field& f);

/// Sum over undirected nearest-neighbour edges of (u_j - u_n)^2. Under zero padding the
/// edges leaving the box count against an exterior zero, so this is exactly <-Lap f, f>.
double dirichlet_form(const Field& f);

FunctionalValues functionals(const Field& f, double sigma, double omega = 0.0);

/// l^p norm; p = +infinity gives the max norm.
double norm_lp(const Field& f, double p);

/// Mass carried by the outer shell max_i |n_i| >= N - width.
double boundary_layer_mass(const Field& f, int width = 2);

/// Copies f into a grid of another size (zero fill / cropping), keeping the origin fixed.
Field embed(const Field& f, const Grid& target);

/// Dense matrix of -Lap on the grid.
Eigen::MatrixXd negative_laplacian_matrix(const Grid& grid);

/// |u|^{q} taken on the absolute value.
Eigen::ArrayXd abs_pow(const Eigen::VectorXd& u, double q);

}  // namespace dnls

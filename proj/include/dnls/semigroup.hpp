#pragma once

#include "dnls/lattice.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace dnls {

/// One-dimensional heat kernel K_n(t) of e^{t Lap}, n = 0..cutoff (K_{-n} = K_n).
struct HeatKernel {
    double t = 0.0;
    int cutoff = 0;
    std::vector<double> coefficients;
    double truncation_bound = 0.0;  // 1 - sum_{|n| <= cutoff} K_n, clamped at 0

    double operator()(int n) const;
    double total_mass() const;
};

/// K_j(t) = e^{-2t} t^j sum_k t^{2k} / (k! (k+j)!), each series cut once the next term drops
/// below 1e-18 of the partial sum.
HeatKernel heat_kernel(double t, int cutoff);

/// Smallest j with K_j(t) < rel_tol * K_0(t).
int heat_kernel_reach(double t, double rel_tol = 1e-22);

/// e^{t Lap} f. Zero padding observes the free-lattice semigroup of the zero-extended field on
/// the box; periodic grids use the periodised kernel (circular convolution).
Field apply_heat_semigroup(const Field& f, double t);

/// e^{t (Lap + V)} f by substeps shorter than 1/(2 ||V||_inf), each solved by Picard iteration of
/// the Duhamel formula until successive iterates differ by less than fixed_point_tol in l^2.
Field evolve_with_potential(const Field& f, const Field& potential, double t, double fixed_point_tol = 1e-12);

struct PositivityReport {
    bool passed = false;
    double min_value = 0.0;  // over all trials and sites
    int substeps = 0;
    std::vector<double> trial_minima;
    std::string diagnostic;
};

/// Random nonnegative nonzero fields: entries uniform on [0,1], one random site zeroed.
Field random_nonnegative_field(const Grid& grid, std::uint64_t seed);

PositivityReport check_positivity_improving(const Field& potential, double t, int trials, std::uint64_t seed = 1);

/// Same check for explicitly supplied initial fields.
PositivityReport check_positivity_improving(const Field& potential, double t, const std::vector<Field>& initial);

/// -Lap + diag(potential).
Eigen::MatrixXd schrodinger_matrix(const Field& potential);

struct PerronFrobeniusReport {
    bool applicable = false;  // lowest eigenvalue < 0
    double lambda0 = 0.0;
    int multiplicity = 0;     // eigenvalues within 1e-9 of lambda0
    Eigen::VectorXd ground_state;  // unit norm, positive sum
    double min_entry = 0.0;
    double max_entry = 0.0;
    bool simple = false;
    bool sign_definite = false;
    bool passed = false;
    std::string diagnostic;
};

PerronFrobeniusReport ground_state_pf_check(const Eigen::MatrixXd& L);

}  // namespace dnls

#pragma once

#include "dnls/lattice.hpp"

#include <optional>
#include <string>

namespace dnls {

enum class Family { normalized, homogeneous, profile };

std::string to_string(Family f);
Family family_from_string(const std::string& name);

enum class SeedKind { delta, gaussian, two_site };

SeedKind seed_from_string(const std::string& name);

/// A converged wave. For `normalized` the parameter is the mass lambda and the multiplier c(lambda);
/// for `homogeneous` the parameter is omega and the multiplier j(omega); `profile` solves
/// -Lap phi + omega phi - |phi|^{2 sigma} phi = 0 directly and has no multiplier.
struct WaveProfile {
    Field field;
    double sigma = 1.0;
    Family family = Family::profile;
    double parameter = 0.0;
    std::optional<double> multiplier;
    double residual = 0.0;
    FunctionalValues functionals;
    int iterations = 0;
    bool box_limited = false;  // the boundary-layer rule asked for a box larger than max_sites

    const Grid& grid() const { return field.grid(); }
    /// Frequency of the standing wave: omega, or c(lambda) for normalized waves.
    double frequency() const;
};

struct SolverSettings {
    double tolerance = 1e-12;          // l^2 residual of the Euler-Lagrange / profile equation
    double newton_switch = 1e-4;       // gradient phase hands over to Newton below this residual
    int max_gradient_iterations = 200000;
    int max_newton_iterations = 50;
    int projection_interval = 50;      // iterates replaced by |u| every this many steps
    bool allow_supercritical = false;  // normalized problem with sigma >= 2/d
    bool escape_saddles = true;
    bool enforce_box_rule = true;
    double box_mass_ratio = 1e-20;     // boundary-layer mass allowed relative to P
    std::size_t max_sites = 4000;      // dense desk-scale limit for box doubling
    SeedKind seed = SeedKind::delta;
};

Field make_seed(const Grid& grid, SeedKind kind, double height = 1.0);

/// Tent sequence c (N^{-d/2} - |k|_1 N^{-1-d/2}) on |k|_1 <= N - 1, scaled to mass lambda.
Field tent_trial_field(const Grid& grid, double lambda, int width);

/// || -Lap phi + omega phi - |phi|^{2 sigma} phi ||_2
double profile_residual(const Field& phi, double sigma, double omega);

/// Newton's method on the profile equation; the Jacobian is L_+ = -Lap + omega - (2 sigma + 1) phi^{2 sigma}.
WaveProfile newton_refine(const Field& seed, double sigma, double omega, const SolverSettings& settings = {});
WaveProfile newton_refine(const WaveProfile& seed, double sigma, double omega, const SolverSettings& settings = {});

/// Minimizer of H on the sphere ||u||^2 = lambda.
WaveProfile solve_normalized(const Grid& grid, double sigma, double lambda, const std::optional<Field>& seed = std::nullopt,
                             const SolverSettings& settings = {});

/// Minimizer of J = <-Lap u, u> + omega ||u||^2 on the sphere sum |u|^{2 sigma + 2} = 1.
WaveProfile solve_homogeneous(const Grid& grid, double sigma, double omega, const std::optional<Field>& seed = std::nullopt,
                              const SolverSettings& settings = {});

/// phi = j(omega)^{1/(2 sigma)} u for homogeneous minimizers; normalized waves are already
/// profiles at omega = c(lambda). Profiles pass through.
WaveProfile to_profile(const WaveProfile& wave);

/// Upper bound of the single-site test value J[e_0] = omega + 2d.
double j_upper_bound(double omega, int dimension);

struct WitnessReport {
    bool bell_shaped = false;   // every axis line non-increasing away from its maximum
    bool symmetric = false;     // d = 1 only: mirror symmetric about the detected center
    double center_offset = 0.0; // d = 1: center position (half-integer for an offsite pair)
    bool onsite = false;
    double symmetry_error = 0.0;
    std::size_t lines_checked = 0;
    std::size_t lines_failed = 0;
};

/// Checks the monotone / symmetric shape expected of ground states.
WitnessReport szego_witness_check(const WaveProfile& profile, double slack = 1e-10);

}  // namespace dnls

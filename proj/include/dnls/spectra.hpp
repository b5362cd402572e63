#pragma once

#include "dnls/continuation.hpp"
#include "dnls/minimize.hpp"

#include <complex>
#include <string>
#include <vector>

namespace dnls {

/// L+ = -Lap + omega - (2 sigma + 1) phi^{2 sigma},  L- = -Lap + omega - phi^{2 sigma}.
struct LinearizedPair {
    Eigen::MatrixXd Lplus;
    Eigen::MatrixXd Lminus;
    Eigen::VectorXd phi;
    double omega = 0.0;
    double sigma = 1.0;
    std::string source_hash;

    /// max of the infinity norms of L+ and L-; kernel thresholds are relative to it.
    double scale() const;
};

/// Accepts any converged wave (converted to the profile form first).
LinearizedPair assemble_pair(const WaveProfile& profile);
/// Skips the residual gate; used for the trivial wave and operator-level tests.
LinearizedPair assemble_pair_unchecked(const Field& phi, double sigma, double omega);

using Spectrum = std::vector<std::complex<double>>;

/// Eigenvalues of [[0, -L-], [L+, 0]], sorted by real part then imaginary part.
Spectrum linearized_spectrum(const LinearizedPair& pair);

/// The same spectrum through lambda^2 in spec(-L- L+): symmetric reduction L- = R R^T when L- is
/// positive semidefinite, otherwise a nonsymmetric eigensolve of L- L+.
Spectrum reduced_spectrum(const LinearizedPair& pair);

enum class SpectrumRoute { automatic, block, reduced };
SpectrumRoute route_from_string(const std::string& name);
std::string to_string(SpectrumRoute r);

struct MorseIndices {
    int n_plus = 0;
    int n_minus = 0;
    int ker_plus = 0;
    int ker_minus = 0;
    double kernel_angle = 0.0;   // angle between the L- kernel direction and phi
    double lplus_phi_phi = 0.0;  // <L+ phi, phi>
    double lplus_expected = 0.0; // -2 sigma sum phi^{2 sigma + 2}
    double lplus_relative_error = 0.0;
    double min_plus = 0.0;
    double min_minus = 0.0;

    /// (1, 0, 0, 1) with ker L- spanned by phi.
    bool ground_state_pattern() const;
};

MorseIndices morse_indices(const LinearizedPair& pair);

struct VKResult {
    double value = 0.0;
    double condition = 0.0;
    double kernel_projection = 0.0;  // |P_ker phi| / |phi|
    bool deflated = false;
    bool ill_conditioned = false;    // condition estimate above 1e12
};

VKResult vk_inner(const LinearizedPair& pair, int ker_plus = -1);
double vk_inner_product(const LinearizedPair& pair, const WaveProfile& profile);

enum class Verdict { stable, unstable, marginal, degenerate };
std::string to_string(Verdict v);

struct SpectrumChecks {
    double symmetry_error = 0.0;
    bool symmetric = false;
    bool route_identity_checked = false;
    double route_identity_error = 0.0;
    bool route_identity = false;
};

/// Quadruple symmetry lambda -> -lambda, conj(lambda) (1e-8 scale) and, when `other` is
/// non-empty, agreement of lambda^2 between the two routes (1e-6 relative).
SpectrumChecks check_spectrum(const Spectrum& spectrum, double scale, const Spectrum& other = {});

/// Largest real part after removing up to two eigenvalues of the gauge cluster at zero.
double max_real_part_excluding_gauge(const Spectrum& spectrum, double scale, double* gauge_magnitude = nullptr);

struct StabilityReport {
    double omega = 0.0;
    double sigma = 1.0;
    int dimension = 1;
    int half_width = 0;
    std::string route;
    Spectrum eigenvalues;
    double max_real_part = 0.0;
    double gauge_magnitude = 0.0;
    MorseIndices morse;
    bool vk_attempted = false;
    VKResult vk;
    double slope = 0.0;
    bool slope_marginal = false;
    bool slope_refined = false;
    double s_omega = 0.0;
    bool s_marginal = false;
    Verdict verdict = Verdict::marginal;
    SpectrumChecks checks;
    bool signs_agree = false;      // sign(s) = sign(slope) = -sign(vk), outside the noise floor
    bool spectral_agrees = false;  // max Re lambda > 1e-4 exactly on the negative-sign set
    bool compared = false;         // all three criteria cleared the noise floor
    bool disagreement = false;
    bool box_limited = false;
};

/// Three-way stability report for the curve sample at profile.parameter.
StabilityReport stability_verdict(const WaveProfile& profile, const ContinuationCurve& curve, const ScalarCurve& jcurve,
                                  SpectrumRoute route = SpectrumRoute::automatic);

}  // namespace dnls

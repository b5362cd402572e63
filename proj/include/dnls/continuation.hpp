#pragma once

#include "dnls/minimize.hpp"

#include <string>
#include <vector>

namespace dnls {

struct ContinuationSample {
    double omega = 0.0;
    double P = 0.0;  // ||phi_omega||^2
    double V = 0.0;
    double H = 0.0;
    double j = 0.0;
    bool fresh_solve = false;  // warm-start Newton failed or this is the first sample
    WaveProfile profile;       // family = profile
};

struct ContinuationCurve {
    double sigma = 1.0;
    int dimension = 1;
    double step = 0.01;
    std::vector<ContinuationSample> samples;  // strictly increasing omega
    std::vector<double> gaps;                 // omegas where both Newton and a fresh solve failed
    std::string provenance;                   // config hash of the run that produced it

    std::size_t index_of(double omega) const;  // throws ConfigError if omega is not a sample
    bool box_limited() const;
};

struct ScalarCurve {
    std::string name;  // h, c, j, s, dPdw, P
    std::vector<double> x;
    std::vector<double> y;
};

/// Sweeps omega over [omega_lo, omega_hi] in steps of delta_omega. The sweep starts with a fresh
/// homogeneous solve at omega_hi and marches downward using the previous wave as Newton seed.
ContinuationCurve continue_family(const Grid& grid, double sigma, double omega_lo, double omega_hi, double delta_omega,
                                  const SolverSettings& settings = {});

/// Column of the curve as a scalar curve: "P", "V", "H" or "j".
ScalarCurve curve_column(const ContinuationCurve& curve, const std::string& name);

struct DerivativeEstimate {
    double value = 0.0;
    bool refined = false;   // Richardson extrapolation from the h and 2h stencils
    bool marginal = false;  // |value| below the noise floor 10 delta^2
};

/// Central first / second differences at sample i, Richardson-refined when the value is within
/// 10 delta^2 of zero and the 2h stencil is available.
DerivativeEstimate first_derivative(const ScalarCurve& c, std::size_t i, double delta);
DerivativeEstimate second_derivative(const ScalarCurve& c, std::size_t i, double delta);

/// d/domega ||phi_omega||^2 at an interior sample.
DerivativeEstimate slope_estimate(const ContinuationCurve& curve, double omega);
double slope_criterion(const ContinuationCurve& curve, double omega);

/// s(omega) = j'' + j'^2 / (sigma j) from the j curve.
DerivativeEstimate s_estimate(const ScalarCurve& jcurve, double omega, double sigma, double delta);
double s_function(const ScalarCurve& jcurve, double omega, double sigma, double delta);

struct HCurveReport {
    ScalarCurve h{"h", {}, {}};
    ScalarCurve c{"c", {}, {}};
    bool negative = false;
    bool concave = false;
    bool ratio_decreasing = false;  // h(lambda) / lambda
    bool sublinear = false;         // h(a + b) < h(a) + h(b) on sampled triples
    double max_second_difference = 0.0;
    std::size_t triples_checked = 0;
    bool passed() const { return negative && concave && ratio_decreasing && sublinear; }
};

/// h(lambda) and c(lambda) from normalized solves over ascending lambdas.
HCurveReport h_curve(const Grid& grid, double sigma, const std::vector<double>& lambdas,
                     const SolverSettings& settings = {});
ScalarCurve c_curve(const Grid& grid, double sigma, const std::vector<double>& lambdas,
                    const SolverSettings& settings = {});

/// lo, lo + step, ..., hi (inclusive up to rounding); throws ConfigError on an empty range.
std::vector<double> parameter_grid(double lo, double hi, double step);

}  // namespace dnls

#include "dnls/checks.hpp"
#include "dnls/continuation.hpp"
#include "dnls/errors.hpp"
#include "dnls/rearrange.hpp"
#include "dnls/semigroup.hpp"
#include "dnls/spectra.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace dnls;

namespace {

// Fields cross the boundary as C-ordered arrays of shape (2N+1,)*d.
py::array_t<double> to_numpy(const Field& f) {
    const Grid& g = f.grid();
    std::vector<py::ssize_t> shape(static_cast<std::size_t>(g.dimension()), g.side());
    py::array_t<double> out(shape);
    std::copy(f.values().data(), f.values().data() + f.size(), out.mutable_data());
    return out;
}

Field from_numpy(const Grid& g, const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (static_cast<std::size_t>(a.size()) != g.site_count())
        throw ConfigError("array has " + std::to_string(a.size()) + " entries, grid has " +
                          std::to_string(g.site_count()));
    Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
    std::copy(a.data(), a.data() + a.size(), v.data());
    return Field(g, std::move(v));
}

std::optional<Field> optional_seed(const Grid& g, const std::optional<py::array_t<double>>& seed) {
    if (!seed) return std::nullopt;
    return from_numpy(g, *seed);
}

SolverSettings settings_from(double tolerance, std::size_t max_sites, bool allow_supercritical, const std::string& seed) {
    SolverSettings s;
    s.tolerance = tolerance;
    s.max_sites = max_sites;
    s.allow_supercritical = allow_supercritical;
    s.seed = seed_from_string(seed);
    return s;
}

std::vector<double> column(const ContinuationCurve& c, const char* name) { return curve_column(c, name).y; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Discrete NLS standing waves: solvers, linearized spectra and stability checks";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

    py::class_<Grid>(m, "Grid")
        .def(py::init([](int d, int N, const std::string& boundary) { return Grid(d, N, boundary_from_string(boundary)); }),
             py::arg("d"), py::arg("N"), py::arg("boundary") = "zero")
        .def_property_readonly("dimension", &Grid::dimension)
        .def_property_readonly("half_width", &Grid::half_width)
        .def_property_readonly("side", &Grid::side)
        .def_property_readonly("boundary", [](const Grid& g) { return to_string(g.boundary()); })
        .def("__repr__", [](const Grid& g) {
            return "Grid(d=" + std::to_string(g.dimension()) + ", N=" + std::to_string(g.half_width()) + ", " +
                   to_string(g.boundary()) + ")";
        });

    py::class_<WaveProfile>(m, "WaveProfile")
        .def_property_readonly("field", [](const WaveProfile& w) { return to_numpy(w.field); })
        .def_property_readonly("grid", [](const WaveProfile& w) { return w.grid(); })
        .def_readonly("sigma", &WaveProfile::sigma)
        .def_property_readonly("family", [](const WaveProfile& w) { return to_string(w.family); })
        .def_readonly("parameter", &WaveProfile::parameter)
        .def_readonly("multiplier", &WaveProfile::multiplier)
        .def_readonly("residual", &WaveProfile::residual)
        .def_readonly("iterations", &WaveProfile::iterations)
        .def_readonly("box_limited", &WaveProfile::box_limited)
        .def_property_readonly("frequency", &WaveProfile::frequency)
        .def_property_readonly("P", [](const WaveProfile& w) { return w.functionals.P; })
        .def_property_readonly("V", [](const WaveProfile& w) { return w.functionals.V; })
        .def_property_readonly("H", [](const WaveProfile& w) { return w.functionals.H; })
        .def_property_readonly("J", [](const WaveProfile& w) { return w.functionals.J; })
        .def_property_readonly("kinetic", [](const WaveProfile& w) { return w.functionals.kinetic; });

    m.def(
        "solve_homogeneous",
        [](const Grid& g, double sigma, double omega, std::optional<py::array_t<double>> seed, double tolerance,
           std::size_t max_sites, const std::string& seed_shape) {
            return solve_homogeneous(g, sigma, omega, optional_seed(g, seed),
                                     settings_from(tolerance, max_sites, false, seed_shape));
        },
        py::arg("grid"), py::arg("sigma"), py::arg("omega"), py::arg("seed") = py::none(), py::arg("tolerance") = 1e-12,
        py::arg("max_sites") = 4000, py::arg("seed_shape") = "delta");
    m.def(
        "solve_normalized",
        [](const Grid& g, double sigma, double lambda, std::optional<py::array_t<double>> seed, double tolerance,
           std::size_t max_sites, bool override_supercritical) {
            return solve_normalized(g, sigma, lambda, optional_seed(g, seed),
                                    settings_from(tolerance, max_sites, override_supercritical, "delta"));
        },
        py::arg("grid"), py::arg("sigma"), py::arg("lam"), py::arg("seed") = py::none(), py::arg("tolerance") = 1e-12,
        py::arg("max_sites") = 4000, py::arg("override_supercritical") = false);
    m.def(
        "newton_refine",
        [](const Grid& g, py::array_t<double> seed, double sigma, double omega) {
            return newton_refine(from_numpy(g, seed), sigma, omega);
        },
        py::arg("grid"), py::arg("seed"), py::arg("sigma"), py::arg("omega"));
    m.def("to_profile", &to_profile, py::arg("wave"));
    m.def(
        "profile_residual",
        [](const Grid& g, py::array_t<double> phi, double sigma, double omega) {
            return profile_residual(from_numpy(g, phi), sigma, omega);
        },
        py::arg("grid"), py::arg("phi"), py::arg("sigma"), py::arg("omega"));

    py::class_<ContinuationCurve>(m, "Curve")
        .def_readonly("sigma", &ContinuationCurve::sigma)
        .def_readonly("dimension", &ContinuationCurve::dimension)
        .def_readonly("step", &ContinuationCurve::step)
        .def_readonly("gaps", &ContinuationCurve::gaps)
        .def_property_readonly("box_limited", &ContinuationCurve::box_limited)
        .def_property_readonly("omega", [](const ContinuationCurve& c) {
            std::vector<double> x;
            for (const auto& s : c.samples) x.push_back(s.omega);
            return x;
        })
        .def_property_readonly("P", [](const ContinuationCurve& c) { return column(c, "P"); })
        .def_property_readonly("V", [](const ContinuationCurve& c) { return column(c, "V"); })
        .def_property_readonly("H", [](const ContinuationCurve& c) { return column(c, "H"); })
        .def_property_readonly("j", [](const ContinuationCurve& c) { return column(c, "j"); })
        .def("profile", [](const ContinuationCurve& c, double omega) { return c.samples[c.index_of(omega)].profile; })
        .def("slope", [](const ContinuationCurve& c, double omega) { return slope_criterion(c, omega); })
        .def("s", [](const ContinuationCurve& c, double omega) {
            return s_function(curve_column(c, "j"), omega, c.sigma, c.step);
        })
        .def("__len__", [](const ContinuationCurve& c) { return c.samples.size(); });

    m.def(
        "continue_family",
        [](const Grid& g, double sigma, double lo, double hi, double step) {
            py::gil_scoped_release release;
            return continue_family(g, sigma, lo, hi, step);
        },
        py::arg("grid"), py::arg("sigma"), py::arg("omega_lo"), py::arg("omega_hi"), py::arg("step") = 0.01);

    py::class_<MorseIndices>(m, "MorseIndices")
        .def_readonly("n_plus", &MorseIndices::n_plus)
        .def_readonly("n_minus", &MorseIndices::n_minus)
        .def_readonly("ker_plus", &MorseIndices::ker_plus)
        .def_readonly("ker_minus", &MorseIndices::ker_minus)
        .def_readonly("kernel_angle", &MorseIndices::kernel_angle)
        .def_readonly("lplus_relative_error", &MorseIndices::lplus_relative_error)
        .def_property_readonly("ground_state_pattern", &MorseIndices::ground_state_pattern);

    py::class_<StabilityReport>(m, "StabilityReport")
        .def_readonly("omega", &StabilityReport::omega)
        .def_readonly("sigma", &StabilityReport::sigma)
        .def_readonly("route", &StabilityReport::route)
        .def_readonly("eigenvalues", &StabilityReport::eigenvalues)
        .def_readonly("max_real_part", &StabilityReport::max_real_part)
        .def_readonly("morse", &StabilityReport::morse)
        .def_property_readonly("vk", [](const StabilityReport& r) { return r.vk.value; })
        .def_readonly("slope", &StabilityReport::slope)
        .def_readonly("s_omega", &StabilityReport::s_omega)
        .def_property_readonly("verdict", [](const StabilityReport& r) { return to_string(r.verdict); })
        .def_readonly("signs_agree", &StabilityReport::signs_agree)
        .def_readonly("spectral_agrees", &StabilityReport::spectral_agrees)
        .def_readonly("compared", &StabilityReport::compared)
        .def_readonly("disagreement", &StabilityReport::disagreement);

    m.def(
        "stability_verdict",
        [](const ContinuationCurve& c, double omega, const std::string& route) {
            return stability_verdict(c.samples[c.index_of(omega)].profile, c, curve_column(c, "j"),
                                     route_from_string(route));
        },
        py::arg("curve"), py::arg("omega"), py::arg("route") = "auto");
    m.def(
        "linearized_spectrum",
        [](const WaveProfile& w, const std::string& route) {
            const LinearizedPair pair = assemble_pair(w);
            return route_from_string(route) == SpectrumRoute::reduced ? reduced_spectrum(pair) : linearized_spectrum(pair);
        },
        py::arg("wave"), py::arg("route") = "block");
    m.def("morse_indices", [](const WaveProfile& w) { return morse_indices(assemble_pair(w)); }, py::arg("wave"));
    m.def("vk_inner", [](const WaveProfile& w) { return vk_inner(assemble_pair(w)).value; }, py::arg("wave"));

    m.def(
        "heat_kernel",
        [](double t, int cutoff) {
            const HeatKernel k = heat_kernel(t, cutoff);
            return k.coefficients;
        },
        py::arg("t"), py::arg("cutoff"));
    m.def(
        "apply_heat_semigroup",
        [](const Grid& g, py::array_t<double> f, double t) { return to_numpy(apply_heat_semigroup(from_numpy(g, f), t)); },
        py::arg("grid"), py::arg("f"), py::arg("t"));

    m.def(
        "symmetric_decreasing_rearrangement",
        [](const Sequence1D& f) {
            const CenteredSequence r = symmetric_decreasing_rearrangement(f);
            return py::make_tuple(r.values, r.center);
        },
        py::arg("f"));
    m.def(
        "balanced_rearrangement",
        [](const Sequence1D& f) {
            const CenteredSequence r = balanced_rearrangement(f);
            return py::make_tuple(r.values, r.center);
        },
        py::arg("f"));
    m.def("edge_energy", &edge_energy, py::arg("f"), py::arg("p"));

    m.def("suite_names", &suite_names);
    m.def(
        "run_checks",
        [](const std::string& suite, std::uint64_t seed) {
            py::dict out;
            for (const SuiteResult& r : run_checks(suite, seed)) {
                py::list lines;
                for (const CheckLine& l : r.lines) lines.append(py::make_tuple(l.name, l.passed, l.detail));
                out[py::str(r.suite)] = lines;
            }
            return out;
        },
        py::arg("suite") = "all", py::arg("seed") = 1);
}

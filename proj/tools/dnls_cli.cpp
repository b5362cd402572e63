// dnls: solve / sweep / spectrum / checks front end.
#include "dnls/checks.hpp"
#include "dnls/config.hpp"
#include "dnls/continuation.hpp"
#include "dnls/errors.hpp"
#include "dnls/io.hpp"
#include "dnls/spectra.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>

namespace fs = std::filesystem;
using namespace dnls;

namespace {

struct Overrides {
    std::string config;
    std::map<std::string, std::string> values;
    bool override_supercritical = false;
};

void add_run_options(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config, "flat key = value config file");
    for (const auto& [flag, key] : std::vector<std::pair<std::string, std::string>>{
             {"--d", "d"}, {"--N", "N"}, {"--boundary", "boundary"}, {"--sigma", "sigma"}, {"--family", "family"},
             {"--omega", "omega"}, {"--lambda", "lambda"}, {"--range", "range"}, {"--out", "out"},
             {"--seed", "seed"}, {"--seed-shape", "seed_shape"}, {"--tolerance", "tolerance"},
             {"--route", "route"}, {"--max-sites", "max_sites"}}) {
        cmd->add_option_function<std::string>(flag, [&o, key](const std::string& v) { o.values[key] = v; });
    }
    cmd->add_flag("--override-supercritical", o.override_supercritical, "allow sigma >= 2/d for normalized waves");
}

RunConfig build_config(const Overrides& o) {
    RunConfig cfg;
    if (!o.config.empty()) cfg = load_config_file(o.config);
    for (const auto& [k, v] : o.values) cfg.set(k, v);
    if (o.override_supercritical) cfg.override_supercritical = true;
    cfg.validate();
    return cfg;
}

fs::path prepare_out(const RunConfig& cfg) {
    fs::path out(cfg.out);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw ConfigError("cannot create output directory " + out.string());
    return out;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream f(p);
    if (!f) throw ConfigError("cannot write " + p.string());
    return f;
}

unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("DNLS_NUM_THREADS")) {
        const int v = std::atoi(env);
        if (v < 1) throw ConfigError("DNLS_NUM_THREADS must be a positive integer");
        n = std::min<unsigned>(n, static_cast<unsigned>(v));
    }
    return n;
}

int cmd_solve(const RunConfig& cfg) {
    const std::string hash = cfg.hash();
    const SolverSettings settings = cfg.solver_settings();
    WaveProfile wave = [&] {
        switch (cfg.family) {
            case Family::normalized:
                if (!cfg.lambda) throw ConfigError("normalized solve needs --lambda");
                return solve_normalized(cfg.grid(), cfg.sigma, *cfg.lambda, std::nullopt, settings);
            case Family::homogeneous:
                if (!cfg.omega) throw ConfigError("homogeneous solve needs --omega");
                return solve_homogeneous(cfg.grid(), cfg.sigma, *cfg.omega, std::nullopt, settings);
            case Family::profile:
                if (!cfg.omega) throw ConfigError("profile solve needs --omega");
                return newton_refine(make_seed(cfg.grid(), cfg.seed_shape, std::sqrt(*cfg.omega + 2.0 * cfg.d)),
                                     cfg.sigma, *cfg.omega, settings);
        }
        throw ConfigError("unknown family");
    }();
    const fs::path out = prepare_out(cfg);
    write_profile(out / "wave.csv", wave, hash);
    const WaveProfile phi = to_profile(wave);
    write_profile(out / "profile.csv", phi, hash);
    std::cout << "family " << to_string(wave.family) << "  parameter " << format_number(wave.parameter);
    if (wave.multiplier) std::cout << "  multiplier " << format_number(*wave.multiplier);
    std::cout << "\nresidual " << format_number(wave.residual) << "  profile residual " << format_number(phi.residual)
              << "\nN " << wave.grid().half_width() << (wave.box_limited ? " (box limited)" : "") << "\nwrote "
              << (out / "wave.csv").string() << ", " << (out / "profile.csv").string() << "\nconfig_hash " << hash
              << '\n';
    return 0;
}

int cmd_sweep(const RunConfig& cfg) {
    if (!cfg.range) throw ConfigError("sweep needs --range a:b:step");
    const std::string hash = cfg.hash();
    const SolverSettings settings = cfg.solver_settings();
    const fs::path out = prepare_out(cfg);

    if (cfg.family == Family::normalized) {
        const HCurveReport rep = h_curve(cfg.grid(), cfg.sigma, parameter_grid(cfg.range->lo, cfg.range->hi, cfg.range->step),
                                         settings);
        auto f = open_out(out / "hc.csv");
        write_scalar_csv(f, "lambda", {rep.h, rep.c}, hash);
        std::cout << "h < 0: " << rep.negative << "  concave: " << rep.concave << "  h/lambda decreasing: "
                  << rep.ratio_decreasing << "  subadditive: " << rep.sublinear << "\nwrote " << (out / "hc.csv").string()
                  << '\n';
        return 0;
    }

    const ContinuationCurve curve =
        continue_family(cfg.grid(), cfg.sigma, cfg.range->lo, cfg.range->hi, cfg.range->step, settings);
    const ScalarCurve jcurve = curve_column(curve, "j");
    std::vector<std::size_t> interior;
    for (std::size_t i = 1; i + 1 < curve.samples.size(); ++i) {
        const double dl = curve.samples[i].omega - curve.samples[i - 1].omega;
        const double dr = curve.samples[i + 1].omega - curve.samples[i].omega;
        if (std::abs(dl - curve.step) < 1e-6 * curve.step && std::abs(dr - curve.step) < 1e-6 * curve.step)
            interior.push_back(i);
    }

    // workers compute reports; only this thread touches the filesystem
    std::vector<std::optional<StabilityReport>> reports(interior.size());
    std::vector<std::string> errors(interior.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < interior.size();) {
            try {
                reports[k] = stability_verdict(curve.samples[interior[k]].profile, curve, jcurve, cfg.route);
            } catch (const std::exception& e) {
                errors[k] = e.what();
            }
        }
    };
    const unsigned nthreads = std::min<unsigned>(worker_count(), std::max<std::size_t>(1, interior.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    {
        auto f = open_out(out / "curve.csv");
        write_curve_csv(f, curve, hash);
    }
    auto table = open_out(out / "stability.csv");
    table << hash_line(hash)
          << "\nomega,dPdw,s,vk_inner,max_re_lambda,verdict,n_Lplus,n_Lminus,dim_ker_Lplus,dim_ker_Lminus,agree\n";
    nlohmann::json all = nlohmann::json::array();
    fs::create_directories(out / "spectra");
    std::size_t disagreements = 0;
    for (std::size_t k = 0; k < interior.size(); ++k) {
        if (!reports[k]) {
            std::cerr << "omega " << curve.samples[interior[k]].omega << ": report failed: " << errors[k] << '\n';
            continue;
        }
        const StabilityReport& r = *reports[k];
        disagreements += r.disagreement;
        table << format_number(r.omega) << ',' << format_number(r.slope) << ',' << format_number(r.s_omega) << ','
              << format_number(r.vk.value) << ',' << format_number(r.max_real_part) << ',' << to_string(r.verdict) << ','
              << r.morse.n_plus << ',' << r.morse.n_minus << ',' << r.morse.ker_plus << ',' << r.morse.ker_minus << ','
              << (r.disagreement ? "false" : "true") << '\n';
        all.push_back(report_json(r, hash));
        char name[64];
        std::snprintf(name, sizeof name, "omega_%.6f.csv", r.omega);
        auto s = open_out(out / "spectra" / name);
        write_spectrum_csv(s, r.eigenvalues, hash);
    }
    {
        auto f = open_out(out / "reports.json");
        f << all.dump(1) << '\n';
    }
    std::cout << "samples " << curve.samples.size() << "  gaps " << curve.gaps.size() << "  reports "
              << all.size() << "  disagreements " << disagreements << (curve.box_limited() ? "  (box limited)" : "")
              << "\nwrote " << (out / "curve.csv").string() << ", " << (out / "stability.csv").string() << ", "
              << (out / "reports.json").string() << "\nconfig_hash " << hash << '\n';
    for (double g : curve.gaps) std::cerr << "gap at omega " << format_number(g) << '\n';
    if (disagreements > 0) std::cerr << "DISAGREEMENT between stability criteria on " << disagreements << " samples\n";
    return 0;
}

int cmd_spectrum(const std::string& profile_path, const RunConfig& cfg) {
    std::string hash;
    const WaveProfile w = read_profile(profile_path, &hash);
    const LinearizedPair pair = assemble_pair(w);
    SpectrumRoute route = cfg.route;
    if (route == SpectrumRoute::automatic) route = 2 * w.field.size() <= 1200 ? SpectrumRoute::block : SpectrumRoute::reduced;
    const Spectrum s = route == SpectrumRoute::block ? linearized_spectrum(pair) : reduced_spectrum(pair);
    const MorseIndices m = morse_indices(pair);
    double gauge = 0.0;
    const double maxre = max_real_part_excluding_gauge(s, pair.scale(), &gauge);
    const fs::path out = prepare_out(cfg);
    {
        auto f = open_out(out / "spectrum.csv");
        write_spectrum_csv(f, s, hash);
    }
    auto f = open_out(out / "spectrum.txt");
    f << hash_line(hash) << "\nroute = " << to_string(route) << "\nmax_real_part = " << format_number(maxre)
      << "\ngauge_magnitude = " << format_number(gauge) << "\nn_Lplus = " << m.n_plus << "\nn_Lminus = " << m.n_minus
      << "\ndim_ker_Lplus = " << m.ker_plus << "\ndim_ker_Lminus = " << m.ker_minus
      << "\nkernel_angle = " << format_number(m.kernel_angle) << '\n';
    std::cout << "max Re lambda " << format_number(maxre) << "  n(L+) " << m.n_plus << "  n(L-) " << m.n_minus
              << "\nwrote " << (out / "spectrum.csv").string() << '\n';
    return 0;
}

int cmd_checks(const std::string& suite, const RunConfig& cfg) {
    bool ok = true;
    for (const SuiteResult& r : run_checks(suite, cfg.seed)) {
        for (const CheckLine& l : r.lines) {
            std::cout << (l.passed ? "PASS " : "FAIL ") << r.suite << ": " << l.name;
            if (!l.detail.empty()) std::cout << " (" << l.detail << ")";
            std::cout << '\n';
        }
        ok = ok && r.passed();
    }
    return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ground states of the discrete NLS on truncated lattices"};
    app.require_subcommand(1);
    Overrides solve_o, sweep_o, spec_o, check_o;
    std::string profile_path, suite;
    auto* solve = app.add_subcommand("solve", "solve one wave, write profile CSV + metadata");
    add_run_options(solve, solve_o);
    auto* sweep = app.add_subcommand("sweep", "continuation sweep with stability reports");
    add_run_options(sweep, sweep_o);
    auto* spectrum = app.add_subcommand("spectrum", "linearized spectrum of a saved profile");
    spectrum->add_option("profile", profile_path, "profile CSV written by solve")->required();
    add_run_options(spectrum, spec_o);
    auto* checks = app.add_subcommand("checks", "property suites: szego, permutation, heat-kernel, positivity, "
                                                "perron-frobenius, lemmas, all");
    checks->add_option("suite", suite, "suite name")->required();
    add_run_options(checks, check_o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    try {
        if (*solve) return cmd_solve(build_config(solve_o));
        if (*sweep) return cmd_sweep(build_config(sweep_o));
        if (*spectrum) return cmd_spectrum(profile_path, build_config(spec_o));
        if (*checks) return cmd_checks(suite, build_config(check_o));
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const SolverError& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

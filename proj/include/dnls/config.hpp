#pragma once

#include "dnls/lattice.hpp"
#include "dnls/minimize.hpp"
#include "dnls/spectra.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace dnls {

struct Range {
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;
};

/// "a:b:step"
Range parse_range(const std::string& text);

struct RunConfig {
    int d = 1;
    int N = 60;
    Boundary boundary = Boundary::zero_padding;
    double sigma = 1.0;
    Family family = Family::homogeneous;
    std::optional<double> omega;
    std::optional<double> lambda;
    std::optional<Range> range;
    double tolerance = 1e-12;
    double newton_switch = 1e-4;
    int max_iterations = 200000;
    SeedKind seed_shape = SeedKind::delta;
    std::uint64_t seed = 1;
    std::string out = ".";
    bool override_supercritical = false;
    SpectrumRoute route = SpectrumRoute::automatic;
    std::size_t max_sites = 4000;
    int trials = 20;

    /// Assigns one key from a config file or override; throws ConfigError on unknown keys or bad values.
    void set(const std::string& key, const std::string& value);
    void validate() const;

    /// Stable text form of every setting that influences numerical output (the output directory is excluded).
    std::string canonical() const;
    std::string hash() const;

    Grid grid() const { return Grid(d, N, boundary); }
    SolverSettings solver_settings() const;
};

/// Flat "key = value" file, '#' comments. Keys already set in `base` are overwritten.
RunConfig load_config_file(const std::filesystem::path& path, RunConfig base = {});

}  // namespace dnls

#include "dnls/config.hpp"

#include "dnls/errors.hpp"
#include "dnls/hash.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dnls {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        throw ConfigError("'" + key + "' expects a number, got '" + v + "'");
    }
    if (used != v.size() || !std::isfinite(x)) throw ConfigError("'" + key + "' expects a number, got '" + v + "'");
    return x;
}

long long to_integer(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    long long x = 0;
    try {
        x = std::stoll(v, &used);
    } catch (const std::exception&) {
        throw ConfigError("'" + key + "' expects an integer, got '" + v + "'");
    }
    if (used != v.size()) throw ConfigError("'" + key + "' expects an integer, got '" + v + "'");
    return x;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("'" + key + "' expects a boolean, got '" + v + "'");
}

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string seed_name(SeedKind k) {
    switch (k) {
        case SeedKind::delta: return "delta";
        case SeedKind::gaussian: return "gaussian";
        case SeedKind::two_site: return "two_site";
    }
    return "?";
}

}  // namespace

Range parse_range(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(trim(item));
    if (parts.size() != 3) throw ConfigError("range must look like a:b:step, got '" + text + "'");
    Range r{to_double("range", parts[0]), to_double("range", parts[1]), to_double("range", parts[2])};
    if (!(r.step > 0.0) || !(r.hi > r.lo)) throw ConfigError("empty range '" + text + "'");
    return r;
}

void RunConfig::set(const std::string& raw_key, const std::string& raw_value) {
    const std::string key = trim(raw_key);
    const std::string v = trim(raw_value);
    if (key == "d") d = static_cast<int>(to_integer(key, v));
    else if (key == "N") N = static_cast<int>(to_integer(key, v));
    else if (key == "boundary") {
        try {
            boundary = boundary_from_string(v);
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
    } else if (key == "sigma") sigma = to_double(key, v);
    else if (key == "family") family = family_from_string(v);
    else if (key == "omega") omega = to_double(key, v);
    else if (key == "lambda") lambda = to_double(key, v);
    else if (key == "range") range = parse_range(v);
    else if (key == "tolerance") tolerance = to_double(key, v);
    else if (key == "newton_switch") newton_switch = to_double(key, v);
    else if (key == "max_iterations") max_iterations = static_cast<int>(to_integer(key, v));
    else if (key == "seed_shape") seed_shape = seed_from_string(v);
    else if (key == "seed") {
        const long long s = to_integer(key, v);
        if (s < 0) throw ConfigError("seed must be nonnegative");
        seed = static_cast<std::uint64_t>(s);
    } else if (key == "out") out = v;
    else if (key == "override_supercritical") override_supercritical = to_bool(key, v);
    else if (key == "route") route = route_from_string(v);
    else if (key == "max_sites") max_sites = static_cast<std::size_t>(to_integer(key, v));
    else if (key == "trials") trials = static_cast<int>(to_integer(key, v));
    else throw ConfigError("unknown config key '" + key + "'");
}

void RunConfig::validate() const {
    if (d < 1 || d > 3) throw ConfigError("d must be 1, 2 or 3");
    if (N < 1) throw ConfigError("N must be >= 1");
    if (!(sigma > 0.0)) throw ConfigError("sigma must be positive");
    if (omega && !(*omega > 0.0)) throw ConfigError("omega must be positive");
    if (lambda && !(*lambda > 0.0)) throw ConfigError("lambda must be positive");
    if (range && !(range->lo > 0.0)) throw ConfigError("range must lie in (0, infinity)");
    if (!(tolerance > 0.0) || !(newton_switch > 0.0)) throw ConfigError("tolerances must be positive");
    if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
    if (max_sites < 1) throw ConfigError("max_sites must be >= 1");
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (grid().site_count() > 4 * max_sites) throw ConfigError("grid exceeds the dense size limit");
}

std::string RunConfig::canonical() const {
    std::ostringstream s;
    s << "d=" << d << ";N=" << N << ";boundary=" << to_string(boundary) << ";sigma=" << num(sigma)
      << ";family=" << to_string(family) << ";omega=" << (omega ? num(*omega) : "none")
      << ";lambda=" << (lambda ? num(*lambda) : "none") << ";range="
      << (range ? num(range->lo) + ":" + num(range->hi) + ":" + num(range->step) : "none")
      << ";tolerance=" << num(tolerance) << ";newton_switch=" << num(newton_switch)
      << ";max_iterations=" << max_iterations << ";seed_shape=" << seed_name(seed_shape) << ";seed=" << seed
      << ";override_supercritical=" << override_supercritical << ";route=" << to_string(route)
      << ";max_sites=" << max_sites << ";trials=" << trials;
    return s.str();
}

std::string RunConfig::hash() const { return hex64(fnv1a(canonical())); }

SolverSettings RunConfig::solver_settings() const {
    SolverSettings s;
    s.tolerance = tolerance;
    s.newton_switch = newton_switch;
    s.max_gradient_iterations = max_iterations;
    s.allow_supercritical = override_supercritical;
    s.max_sites = max_sites;
    s.seed = seed_shape;
    return s;
}

RunConfig load_config_file(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
        base.set(line.substr(0, eq), line.substr(eq + 1));
    }
    return base;
}

}  // namespace dnls

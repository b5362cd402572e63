#include "dnls/io.hpp"

#include "dnls/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace dnls {

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string hash_line(const std::string& config_hash) { return "# config_hash=" + config_hash; }

std::string read_config_hash(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path.string());
    std::string line;
    std::getline(in, line);
    const std::string key = "# config_hash=";
    if (line.rfind(key, 0) != 0) return "";
    return line.substr(key.size());
}

std::string require_single_hash(const std::vector<std::filesystem::path>& paths) {
    std::string seen;
    for (const auto& p : paths) {
        const std::string h = read_config_hash(p);
        if (h.empty()) throw ConfigError(p.string() + " carries no config hash");
        if (seen.empty()) seen = h;
        else if (h != seen) throw ConfigError("refusing to mix outputs of different configs (" + seen + " vs " + h + ")");
    }
    return seen;
}

void write_field_csv(std::ostream& out, const Field& f, const std::string& config_hash) {
    const Grid& g = f.grid();
    out << hash_line(config_hash) << '\n';
    for (int a = 0; a < g.dimension(); ++a) out << "index_" << a + 1 << ',';
    out << "value\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
        const MultiIndex n = g.multi_index(i);
        for (int a = 0; a < g.dimension(); ++a) out << n[static_cast<std::size_t>(a)] << ',';
        out << format_number(f[i]) << '\n';
    }
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

double parse_double(const std::string& s) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("malformed number '" + s + "'");
    }
    if (used != s.size() && s.find_first_not_of(" \r", used) != std::string::npos)
        throw ConfigError("malformed number '" + s + "'");
    return x;
}

}  // namespace

Field read_field_csv(std::istream& in, Boundary boundary, std::string* config_hash) {
    std::string line;
    std::vector<std::vector<double>> rows;
    int dim = -1;
    bool header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string key = "# config_hash=";
            if (config_hash && line.rfind(key, 0) == 0) *config_hash = line.substr(key.size());
            continue;
        }
        const auto cells = split(line);
        if (!header) {
            if (cells.size() < 2 || cells.back() != "value") throw ConfigError("field CSV header must end in 'value'");
            dim = static_cast<int>(cells.size()) - 1;
            header = true;
            continue;
        }
        if (static_cast<int>(cells.size()) != dim + 1) throw ConfigError("field CSV row has the wrong column count");
        std::vector<double> row;
        for (const auto& c : cells) row.push_back(parse_double(c));
        rows.push_back(std::move(row));
    }
    if (!header || rows.empty()) throw ConfigError("empty field CSV");
    int half = 0;
    for (const auto& r : rows)
        for (int a = 0; a < dim; ++a) half = std::max(half, static_cast<int>(std::abs(r[static_cast<std::size_t>(a)])));
    const Grid g(dim, half, boundary);
    if (rows.size() != g.site_count()) throw ConfigError("field CSV does not cover the full box");
    Field f(g);
    for (const auto& r : rows) {
        MultiIndex n{0, 0, 0};
        for (int a = 0; a < dim; ++a) n[static_cast<std::size_t>(a)] = static_cast<int>(r[static_cast<std::size_t>(a)]);
        f[g.flat_index(n)] = r.back();
    }
    if (!f.all_finite()) throw ConfigError("field CSV holds non-finite values");
    return f;
}

namespace {

std::filesystem::path meta_path(const std::filesystem::path& csv) {
    std::filesystem::path m = csv;
    m.replace_extension(".meta");
    return m;
}

}  // namespace

void write_profile(const std::filesystem::path& csv_path, const WaveProfile& w, const std::string& config_hash) {
    {
        std::ofstream out(csv_path);
        if (!out) throw ConfigError("cannot write " + csv_path.string());
        write_field_csv(out, w.field, config_hash);
    }
    std::ofstream meta(meta_path(csv_path));
    if (!meta) throw ConfigError("cannot write " + meta_path(csv_path).string());
    const Grid& g = w.grid();
    meta << hash_line(config_hash) << '\n'
         << "family = " << to_string(w.family) << '\n'
         << "sigma = " << format_number(w.sigma) << '\n'
         << "parameter = " << format_number(w.parameter) << '\n'
         << "multiplier = " << (w.multiplier ? format_number(*w.multiplier) : "none") << '\n'
         << "residual = " << format_number(w.residual) << '\n'
         << "dimension = " << g.dimension() << '\n'
         << "half_width = " << g.half_width() << '\n'
         << "boundary = " << to_string(g.boundary()) << '\n'
         << "box_limited = " << (w.box_limited ? "true" : "false") << '\n'
         << "P = " << format_number(w.functionals.P) << '\n'
         << "V = " << format_number(w.functionals.V) << '\n'
         << "kinetic = " << format_number(w.functionals.kinetic) << '\n'
         << "H = " << format_number(w.functionals.H) << '\n'
         << "J = " << format_number(w.functionals.J) << '\n';
    if (w.family == Family::homogeneous) {
        meta << "j_upper_bound = " << format_number(j_upper_bound(w.parameter, g.dimension())) << '\n';
        // the single-site value omega + 2d replaces the stated omega + 2 when d > 1
        if (g.dimension() > 1) meta << "j_bound_note = omega + 2d used for d > 1\n";
    }
}

WaveProfile read_profile(const std::filesystem::path& csv_path, std::string* config_hash) {
    std::map<std::string, std::string> kv;
    {
        std::ifstream meta(meta_path(csv_path));
        if (!meta) throw ConfigError("missing sidecar " + meta_path(csv_path).string());
        std::string line;
        while (std::getline(meta, line)) {
            if (line.empty() || line[0] == '#') continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw ConfigError("malformed sidecar line '" + line + "'");
            auto trim = [](std::string s) {
                s.erase(0, s.find_first_not_of(' '));
                s.erase(s.find_last_not_of(" \r") + 1);
                return s;
            };
            kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
        }
    }
    auto need = [&](const std::string& k) {
        auto it = kv.find(k);
        if (it == kv.end()) throw ConfigError("sidecar lacks '" + k + "'");
        return it->second;
    };
    std::ifstream in(csv_path);
    if (!in) throw ConfigError("cannot read " + csv_path.string());
    Field f = read_field_csv(in, boundary_from_string(need("boundary")), config_hash);
    if (f.grid().half_width() != std::stoi(need("half_width")) || f.grid().dimension() != std::stoi(need("dimension")))
        throw ConfigError("field CSV and sidecar disagree on the grid");
    const double sigma = parse_double(need("sigma"));
    const Family fam = family_from_string(need("family"));
    const double parameter = parse_double(need("parameter"));
    std::optional<double> mult;
    if (need("multiplier") != "none") mult = parse_double(need("multiplier"));
    WaveProfile w{f, sigma, fam, parameter, mult, parse_double(need("residual")), {}, 0, need("box_limited") == "true"};
    const double omega = fam == Family::normalized ? mult.value_or(0.0) : parameter;
    w.functionals = functionals(w.field, sigma, omega);
    return w;
}

void write_curve_csv(std::ostream& out, const ContinuationCurve& c, const std::string& config_hash) {
    out << hash_line(config_hash) << "\nomega,P,V,H,j\n";
    for (const auto& s : c.samples)
        out << format_number(s.omega) << ',' << format_number(s.P) << ',' << format_number(s.V) << ','
            << format_number(s.H) << ',' << format_number(s.j) << '\n';
}

void write_scalar_csv(std::ostream& out, const std::string& xname, const std::vector<ScalarCurve>& columns,
                      const std::string& config_hash) {
    if (columns.empty()) throw ConfigError("no columns to write");
    out << hash_line(config_hash) << '\n' << xname;
    for (const auto& c : columns) {
        if (c.x != columns.front().x) throw ConfigError("scalar columns do not share abscissae");
        out << ',' << c.name;
    }
    out << '\n';
    for (std::size_t i = 0; i < columns.front().x.size(); ++i) {
        out << format_number(columns.front().x[i]);
        for (const auto& c : columns) out << ',' << format_number(c.y[i]);
        out << '\n';
    }
}

void write_spectrum_csv(std::ostream& out, const Spectrum& s, const std::string& config_hash) {
    out << hash_line(config_hash) << "\nre_lambda,im_lambda\n";
    for (const auto& z : s) out << format_number(z.real()) << ',' << format_number(z.imag()) << '\n';
}

void write_kernel_csv(std::ostream& out, const HeatKernel& k, const std::string& config_hash) {
    out << hash_line(config_hash) << "\nn,K_n(t)\n";
    for (int n = -k.cutoff; n <= k.cutoff; ++n) out << n << ',' << format_number(k(n)) << '\n';
}

nlohmann::json report_json(const StabilityReport& r, const std::string& config_hash) {
    nlohmann::json j;
    j["config_hash"] = config_hash;
    j["omega"] = r.omega;
    j["sigma"] = r.sigma;
    j["dimension"] = r.dimension;
    j["half_width"] = r.half_width;
    j["route"] = r.route;
    j["verdict"] = to_string(r.verdict);
    j["max_real_part"] = r.max_real_part;
    j["gauge_magnitude"] = r.gauge_magnitude;
    j["n_Lplus"] = r.morse.n_plus;
    j["n_Lminus"] = r.morse.n_minus;
    j["dim_ker_Lplus"] = r.morse.ker_plus;
    j["dim_ker_Lminus"] = r.morse.ker_minus;
    j["kernel_angle"] = r.morse.kernel_angle;
    j["lplus_phi_phi_relative_error"] = r.morse.lplus_relative_error;
    j["vk_attempted"] = r.vk_attempted;
    j["vk_inner"] = r.vk.value;
    j["vk_condition"] = r.vk.condition;
    j["vk_ill_conditioned"] = r.vk.ill_conditioned;
    j["slope"] = r.slope;
    j["slope_marginal"] = r.slope_marginal;
    j["slope_refined"] = r.slope_refined;
    j["s_omega"] = r.s_omega;
    j["s_marginal"] = r.s_marginal;
    j["spectrum_symmetric"] = r.checks.symmetric;
    j["symmetry_error"] = r.checks.symmetry_error;
    j["route_identity_checked"] = r.checks.route_identity_checked;
    j["route_identity"] = r.checks.route_identity;
    j["route_identity_error"] = r.checks.route_identity_error;
    j["criteria_compared"] = r.compared;
    j["signs_agree"] = r.signs_agree;
    j["spectral_agrees"] = r.spectral_agrees;
    j["DISAGREEMENT"] = r.disagreement;
    j["box_limited"] = r.box_limited;
    return j;
}

std::string report_text(const StabilityReport& r, const std::string& config_hash) {
    const nlohmann::json j = report_json(r, config_hash);
    std::ostringstream out;
    out << hash_line(config_hash) << '\n';
    for (auto it = j.begin(); it != j.end(); ++it) {
        out << it.key() << " = ";
        if (it->is_number_float()) out << format_number(it->get<double>());
        else if (it->is_string()) out << it->get<std::string>();
        else out << it->dump();
        out << '\n';
    }
    return out.str();
}

}  // namespace dnls

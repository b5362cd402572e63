#include <doctest.h>

#include "dnls/config.hpp"
#include "dnls/continuation.hpp"
#include "dnls/errors.hpp"
#include "dnls/hash.hpp"
#include "dnls/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dnls;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("dnls_io_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("FNV-1a reference values") {
    CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a("foobar") == 0x85944171f73967e8ULL);
    CHECK(hex64(0xabcULL) == "0000000000000abc");
}

TEST_CASE("ranges") {
    const Range r = parse_range("0.2:3:0.01");
    CHECK(r.lo == 0.2);
    CHECK(r.hi == 3.0);
    CHECK(r.step == 0.01);
    CHECK_THROWS_AS(parse_range("1:2"), ConfigError);
    CHECK_THROWS_AS(parse_range("a:b:c"), ConfigError);
    CHECK(parameter_grid(0.5, 1.0, 0.25).size() == 3);
}

TEST_CASE("config keys and validation") {
    RunConfig c;
    c.set("sigma", "2");
    c.set("omega", "0.5");
    c.set("boundary", "periodic");
    c.set("family", "normalized");
    c.set("lambda", "1.5");
    CHECK(c.sigma == 2.0);
    CHECK(c.boundary == Boundary::periodic);
    CHECK(c.family == Family::normalized);
    CHECK(*c.lambda == 1.5);
    CHECK_THROWS_AS(c.set("colour", "red"), ConfigError);
    CHECK_THROWS_AS(c.set("N", "many"), ConfigError);
    CHECK_THROWS_AS(c.set("boundary", "reflecting"), ConfigError);

    RunConfig bad;
    bad.sigma = -1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    RunConfig ok;
    CHECK_NOTHROW(ok.validate());
    CHECK(ok.solver_settings().tolerance == 1e-12);
}

TEST_CASE("config hash") {
    RunConfig a, b;
    CHECK(a.hash() == b.hash());
    CHECK(a.hash().size() == 16);
    b.out = "/somewhere/else";
    CHECK(a.hash() == b.hash());
    b.sigma = 1.5;
    CHECK(a.hash() != b.hash());
    CHECK(a.hash() == hex64(fnv1a(a.canonical())));
}

TEST_CASE("config files") {
    const fs::path dir = scratch_dir("config");
    write_text(dir / "run.cfg", "# sweep\nsigma = 2\nrange = 0.2:3:0.01\n\nN=40\n");
    RunConfig base;
    base.d = 1;
    const RunConfig c = load_config_file(dir / "run.cfg", base);
    CHECK(c.sigma == 2.0);
    CHECK(c.N == 40);
    REQUIRE(c.range);
    CHECK(c.range->step == 0.01);

    write_text(dir / "broken.cfg", "sigma 2\n");
    CHECK_THROWS_WITH_AS(load_config_file(dir / "broken.cfg"), doctest::Contains("broken.cfg:1"), ConfigError);
    CHECK_THROWS_AS(load_config_file(dir / "missing.cfg"), ConfigError);
}

TEST_CASE("field CSV round trip") {
    for (int d = 1; d <= 3; ++d) {
        const Grid g(d, 2);
        Field f(g);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = 0.1 * double(i) - 1.0 / 3.0;
        std::stringstream ss;
        write_field_csv(ss, f, "00000000deadbeef");
        std::string hash;
        const Field back = read_field_csv(ss, Boundary::zero_padding, &hash);
        CHECK(hash == "00000000deadbeef");
        CHECK(back.grid() == g);
        CHECK(back.values() == f.values());
    }
}

TEST_CASE("profile round trip with sidecar") {
    const fs::path dir = scratch_dir("profile");
    const WaveProfile w = solve_homogeneous(Grid(1, 20), 1.0, 1.0);
    write_profile(dir / "wave.csv", w, "0123456789abcdef");
    CHECK(fs::exists(dir / "wave.meta"));
    std::string hash;
    const WaveProfile back = read_profile(dir / "wave.csv", &hash);
    CHECK(hash == "0123456789abcdef");
    CHECK(back.family == Family::homogeneous);
    CHECK(back.sigma == w.sigma);
    CHECK(back.parameter == w.parameter);
    CHECK(*back.multiplier == *w.multiplier);
    CHECK(back.residual == w.residual);
    CHECK(back.field.values() == w.field.values());
    CHECK(back.functionals.H == w.functionals.H);
}

TEST_CASE("mixed hashes are refused") {
    const fs::path dir = scratch_dir("hash");
    write_text(dir / "a.csv", hash_line("1111111111111111") + "\nx\n");
    write_text(dir / "b.csv", hash_line("1111111111111111") + "\nx\n");
    write_text(dir / "c.csv", hash_line("2222222222222222") + "\nx\n");
    write_text(dir / "d.csv", "x\n");
    CHECK(read_config_hash(dir / "a.csv") == "1111111111111111");
    CHECK(read_config_hash(dir / "d.csv").empty());
    CHECK(require_single_hash({dir / "a.csv", dir / "b.csv"}) == "1111111111111111");
    CHECK_THROWS_AS(require_single_hash({dir / "a.csv", dir / "c.csv"}), ConfigError);
    CHECK_THROWS_AS(require_single_hash({dir / "a.csv", dir / "d.csv"}), ConfigError);
}

TEST_CASE("curve, spectrum and kernel CSVs carry the hash") {
    std::stringstream curve;
    const ContinuationCurve c = continue_family(Grid(1, 30), 1.0, 1.0, 1.1, 0.05);
    write_curve_csv(curve, c, "feedfacefeedface");
    std::string line;
    std::getline(curve, line);
    CHECK(line == hash_line("feedfacefeedface"));
    std::getline(curve, line);
    CHECK(line == "omega,P,V,H,j");
    int rows = 0;
    while (std::getline(curve, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 3);

    std::stringstream sp;
    write_spectrum_csv(sp, {{1.0, -2.0}}, "feedfacefeedface");
    std::getline(sp, line);
    std::getline(sp, line);
    CHECK(line == "re_lambda,im_lambda");
    std::getline(sp, line);
    CHECK(line == "1,-2");

    std::stringstream k;
    write_kernel_csv(k, heat_kernel(0.5, 3), "feedfacefeedface");
    std::getline(k, line);
    CHECK(line == hash_line("feedfacefeedface"));

    CHECK(format_number(0.1) == "0.10000000000000001");
}

#include <doctest.h>

#include "dnls/lattice.hpp"
#include "dnls/minimize.hpp"
#include "dnls/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

using namespace dnls;

namespace {

Field random_field(const Grid& g, Rng& rng) {
    Field f(g);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = rng.uniform(-1.0, 1.0);
    return f;
}

// Sum over undirected edges from explicit multi-index neighbours; zero padding adds the
// exterior zero for edges that leave the box.
double edge_sum_oracle(const Field& f) {
    const Grid& g = f.grid();
    const int N = g.half_width();
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const MultiIndex n = g.multi_index(i);
        for (int a = 0; a < g.dimension(); ++a) {
            MultiIndex m = n;
            m[a] += 1;
            double other = 0.0;
            if (m[a] > N) {
                if (g.boundary() == Boundary::periodic) {
                    m[a] = -N;
                    other = f.at(m);
                }
            } else {
                other = f.at(m);
            }
            s += (other - f[i]) * (other - f[i]);
            if (g.boundary() == Boundary::zero_padding && n[a] == -N) s += f[i] * f[i];
        }
    }
    return s;
}

}  // namespace

TEST_CASE("grid geometry") {
    const Grid g(2, 3);
    CHECK(g.site_count() == 49);
    for (std::size_t i = 0; i < g.site_count(); ++i) CHECK(g.flat_index(g.multi_index(i)) == i);
    CHECK(g.multi_index(g.origin()) == MultiIndex{0, 0, 0});
    CHECK_THROWS(Grid(4, 2));
    CHECK_THROWS(Grid(1, 0));
}

TEST_CASE("field rejects non-finite values and wrong sizes") {
    const Grid g(1, 2);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(5);
    v[2] = std::nan("");
    CHECK_THROWS(Field(g, v));
    CHECK_THROWS(Field(g, Eigen::VectorXd::Zero(4)));
}

TEST_CASE("laplacian of a constant vanishes on periodic grids") {
    for (int d = 1; d <= 3; ++d) {
        const Field f = Field::constant(Grid(d, 3, Boundary::periodic), 2.5);
        CHECK(apply_laplacian(f).values().cwiseAbs().maxCoeff() == doctest::Approx(0.0));
    }
}

TEST_CASE("laplacian of e_0 in d = 1") {
    const Grid g(1, 3);
    const Field out = apply_laplacian(Field::delta(g));
    const std::vector<double> expect{0, 0, 1, -2, 1, 0, 0};
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(out[i] == expect[i]);
}

TEST_CASE("dirichlet form equals the explicit edge sum") {
    Rng rng(11);
    for (int d = 1; d <= 3; ++d)
        for (Boundary b : {Boundary::zero_padding, Boundary::periodic}) {
            const Grid g(d, d == 1 ? 8 : 3, b);
            for (int k = 0; k < 200; ++k) {
                const Field f = random_field(g, rng);
                const double oracle = edge_sum_oracle(f);
                CHECK(dirichlet_form(f) == doctest::Approx(oracle).epsilon(1e-12));
                CHECK(-apply_laplacian(f).values().dot(f.values()) == doctest::Approx(oracle).epsilon(1e-12));
            }
        }
}

TEST_CASE("dirichlet form values") {
    CHECK(dirichlet_form(Field::delta(Grid(1, 4))) == 2.0);
    CHECK(dirichlet_form(Field::constant(Grid(2, 3, Boundary::periodic), 1.0)) == doctest::Approx(0.0));
    Rng rng(3);
    for (int k = 0; k < 50; ++k) {
        Field f = random_field(Grid(1, 10), rng);
        f.values().normalize();
        CHECK(dirichlet_form(f) <= 4.0);
    }
}

TEST_CASE("laplacian is self-adjoint and bounded by 4d") {
    Rng rng(5);
    for (int d = 1; d <= 3; ++d)
        for (Boundary b : {Boundary::zero_padding, Boundary::periodic}) {
            const Grid g(d, 3, b);
            for (int k = 0; k < 20; ++k) {
                const Field f = random_field(g, rng), h = random_field(g, rng);
                const double a = apply_laplacian(f).values().dot(h.values());
                const double c = f.values().dot(apply_laplacian(h).values());
                CHECK(a == doctest::Approx(c).epsilon(1e-12));
                const double q = dirichlet_form(f);
                CHECK(q >= 0.0);
                CHECK(q <= 4.0 * d * f.values().squaredNorm());
            }
        }
}

TEST_CASE("Fourier symbol of the periodic laplacian") {
    const int N = 6, n = 2 * N + 1;
    const Eigen::MatrixXd m = negative_laplacian_matrix(Grid(1, N, Boundary::periodic));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    std::vector<double> expect;
    for (int k = 0; k < n; ++k) expect.push_back(4.0 * std::pow(std::sin(std::numbers::pi * k / n), 2));
    std::sort(expect.begin(), expect.end());
    for (int k = 0; k < n; ++k) CHECK(es.eigenvalues()[k] == doctest::Approx(expect[k]).epsilon(1e-12));
}

TEST_CASE("functionals of e_0") {
    const FunctionalValues v = functionals(Field::delta(Grid(1, 5)), 1.0, 0.5);
    CHECK(v.P == 1.0);
    CHECK(v.V == 1.0);
    CHECK(v.kinetic == 2.0);
    CHECK(v.H == 1.5);
    CHECK(v.J == 2.5);
    const FunctionalValues z = functionals(Field(Grid(2, 2)), 1.3, 0.7);
    CHECK(z.P == 0.0);
    CHECK(z.V == 0.0);
    CHECK(z.kinetic == 0.0);
    CHECK(z.H == 0.0);
    CHECK(z.J == 0.0);
}

TEST_CASE("tent trial field has negative energy") {
    const Field tent = tent_trial_field(Grid(1, 200), 1.0, 200);
    CHECK(tent.values().squaredNorm() == doctest::Approx(1.0));
    CHECK(functionals(tent, 0.5).H < 0.0);
}

TEST_CASE("l^p norms") {
    const Grid g(1, 1);
    for (double p : std::initializer_list<double>{1.0, 2.0, 3.5, std::numeric_limits<double>::infinity()}) CHECK(norm_lp(Field::delta(g), p) == doctest::Approx(1.0));
    Field f(g);
    f[0] = 1.0;
    f[1] = 1.0;
    CHECK(norm_lp(f, 2.0) == doctest::Approx(std::sqrt(2.0)));
    Rng rng(9);
    for (double sigma : {0.5, 1.0, 2.0})
        for (int k = 0; k < 50; ++k) {
            const Field r = random_field(Grid(1, 8), rng);
            const double q = 2 * sigma + 2;
            const double lhs = norm_lp(r, q);
            const double rhs = std::pow(norm_lp(r, INFINITY), 2 * sigma / q) * std::pow(norm_lp(r, 2.0), 2.0 / q);
            CHECK(lhs <= rhs * (1 + 1e-12));
        }
    CHECK_THROWS(norm_lp(f, 0.5));
}

TEST_CASE("embed and boundary layer") {
    const Grid small(1, 3), big(1, 6);
    Field f(small);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = double(i) + 1.0;
    const Field e = embed(f, big);
    CHECK(e.at({-3, 0, 0}) == 1.0);
    CHECK(e.at({3, 0, 0}) == 7.0);
    CHECK(e.at({4, 0, 0}) == 0.0);
    CHECK(embed(e, small).values() == f.values());
    // shell |n| >= 1 on N = 3
    CHECK(boundary_layer_mass(f) == doctest::Approx(1 + 4 + 9 + 25 + 36 + 49));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mixedp/mesh.hpp"
#include "oracles.hpp"

using namespace mixedp;

namespace {
OperatorParams params_1d(double p = 2.0, double s = 0.5, double theta = 0.5) {
    OperatorParams par;
    par.N = 1;
    par.p = p;
    par.s = s;
    par.theta = theta;
    return par;
}

OperatorParams params_2d(double p = 2.0, double s = 0.5, double theta = 0.5) {
    OperatorParams par = params_1d(p, s, theta);
    par.N = 2;
    return par;
}
}  // namespace

TEST_CASE("interval mesh: midpoint nodes and cell volume") {
    Mesh m = build_mesh(ShapeSpec::make_interval(0.0, 1.0, 4), params_1d());
    REQUIRE(m.size() == 4);
    CHECK(m.cell_volume == doctest::Approx(0.25).epsilon(1e-14));
    const double expect[4] = {0.125, 0.375, 0.625, 0.875};
    for (int i = 0; i < 4; ++i) CHECK(m.nodes[i][0] == doctest::Approx(expect[i]).epsilon(1e-14));
    CHECK(m.volume == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m.volume == m.size() * m.cell_volume);  // exact by construction
}

TEST_CASE("disk volume converges to pi at first order") {
    double err64, err32;
    {
        Mesh m = build_mesh(ShapeSpec::make_disk(0.0, 0.0, 1.0, 64), params_2d());
        err64 = std::abs(m.volume - M_PI) / M_PI;
        CHECK(err64 < 0.05);
    }
    {
        Mesh m = build_mesh(ShapeSpec::make_disk(0.0, 0.0, 1.0, 32), params_2d());
        err32 = std::abs(m.volume - M_PI) / M_PI;
    }
    CHECK(err64 < err32);           // refinement improves
    CHECK(err64 < 0.75 * err32);    // roughly first order in h
}

TEST_CASE("disjoint two_disks interior splits into two components") {
    ShapeSpec spec = ShapeSpec::make_two_disks({-2.0, 0.0}, {2.0, 0.0}, 1.0, 16);
    Mesh m = build_mesh(spec, params_2d());
    std::vector<std::uint8_t> all(m.size(), 1);
    CHECK(m.components(all) == 2);
}

TEST_CASE("kernel weights: symmetric, positive off-diagonal, zero diagonal") {
    Mesh m = build_mesh(ShapeSpec::make_interval(0.0, 1.0, 16), params_1d(2.5, 0.3, 0.4));
    for (int i = 0; i < m.size(); ++i) {
        CHECK(m.kernel(i, i) == 0.0);
        for (int j = 0; j < m.size(); ++j) {
            CHECK(m.kernel(i, j) == m.kernel(j, i));  // exact symmetry
            if (i != j) CHECK(m.kernel(i, j) > 0.0);
        }
    }
    for (double w : m.tail_weights) CHECK(w > 0.0);
}

TEST_CASE("no node may coincide with the origin") {
    // centered interval with odd resolution puts a midpoint at 0
    CHECK_THROWS_AS(build_mesh(ShapeSpec::make_interval(-1.0, 1.0, 5), params_1d()),
                    std::invalid_argument);
    CHECK_NOTHROW(build_mesh(ShapeSpec::make_interval(-1.0, 1.0, 4), params_1d()));
}

TEST_CASE("resolution below 4 and empty interiors are rejected") {
    CHECK_THROWS_AS(build_mesh(ShapeSpec::make_interval(0.0, 1.0, 3), params_1d()),
                    std::invalid_argument);
}

TEST_CASE("1-D tail weight: closed form and reflection symmetry") {
    ShapeSpec spec = ShapeSpec::make_interval(0.0, 1.0, 16);
    double p = 2.0, s = 0.375;  // sigma = 0.75
    double sigma = p * s;
    double w = tail_weight_at({0.5, 0.0}, spec, s, p, 1);
    CHECK(w == doctest::Approx(std::pow(2.0, 1.0 + sigma) / sigma).epsilon(1e-14));

    double wl = tail_weight_at({0.2, 0.0}, spec, s, p, 1);
    double wr = tail_weight_at({0.8, 0.0}, spec, s, p, 1);
    CHECK(wl == doctest::Approx(wr).epsilon(1e-13));
}

TEST_CASE("1-D tail weight matches independent quadrature to 1e-8") {
    ShapeSpec spec = ShapeSpec::make_interval(0.0, 1.0, 16);
    double p = 2.0, s = 0.375, sigma = p * s;
    for (double x : {0.11, 0.5, 0.77}) {
        double w = tail_weight_at({x, 0.0}, spec, s, p, 1);
        // adaptive quadrature over (1, T) and (-T, 0) plus analytic tails
        double T = 1e6;
        auto f_right = [&](double y) { return std::pow(y - x, -1.0 - sigma); };
        auto f_left = [&](double y) { return std::pow(x - y, -1.0 - sigma); };
        double oracle = oracles::adaptive_simpson(f_right, 1.0, T, 1e-13) +
                        oracles::adaptive_simpson(f_left, -T, 0.0, 1e-13) +
                        (std::pow(T - x, -sigma) + std::pow(T + x, -sigma)) / sigma;
        CHECK(w == doctest::Approx(oracle).epsilon(1e-8));
    }
}

TEST_CASE("2-D tail weight at disk center: exact radial value") {
    ShapeSpec spec = ShapeSpec::make_disk(0.0, 0.0, 1.0, 16);
    double p = 2.0, s = 0.5, sigma = p * s;  // exponent N + ps = 3
    double w = tail_weight_at({0.0, 0.0}, spec, s, p, 2);
    CHECK(w == doctest::Approx(2.0 * M_PI / sigma).epsilon(1e-10));

    // off-center value against a brute polar quadrature oracle
    std::array<double, 2> x{0.3, -0.2};
    double wx = tail_weight_at(x, spec, s, p, 2);
    auto radial = [&](double th) {
        // exit radius of the ray from x in direction th through the unit disk
        double dx = std::cos(th), dy = std::sin(th);
        double b = x[0] * dx + x[1] * dy;
        double q = x[0] * x[0] + x[1] * x[1] - 1.0;
        double rho = -b + std::sqrt(b * b - q);
        return std::pow(rho, -sigma) / sigma;
    };
    double oracle = oracles::adaptive_simpson(radial, 0.0, 2.0 * M_PI, 1e-12);
    CHECK(wx == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("tail weight rejects exterior and boundary points") {
    ShapeSpec spec = ShapeSpec::make_interval(0.0, 1.0, 16);
    CHECK_THROWS_AS(tail_weight_at({1.5, 0.0}, spec, 0.5, 2.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(tail_weight_at({0.0, 0.0}, spec, 0.5, 2.0, 1), std::invalid_argument);
}

TEST_CASE("hardy weight: exact 1-D antiderivative cases") {
    double h = 0.125;
    // cell (0, h), p*theta = 0.5: average = 2 h^{-1/2}
    double w = hardy_weight_at({0.5 * h, 0.0}, h, 1.0, 0.5, 1, 1);
    CHECK(w == doctest::Approx(2.0 / std::sqrt(h)).epsilon(1e-13));

    // p*theta = 0: weight is identically one
    CHECK(hardy_weight_at({0.3, 0.0}, h, 2.0, 0.0, 1, 1) == 1.0);

    // far cell: midpoint value up to O(h^2)
    double q = 1.0;  // p=2, theta=0.5
    double far = hardy_weight_at({0.7, 0.0}, h, 2.0, 0.5, 1, 1);
    CHECK(far == doctest::Approx(std::pow(0.7, -q)).epsilon(2e-3));
}

TEST_CASE("hardy weight: divergent configurations") {
    double h = 0.1;
    // origin strictly inside the cell and p*theta >= N: reject
    CHECK_THROWS_AS(hardy_weight_at({0.0, 0.0}, h, 2.0, 0.75, 1, 1), std::invalid_argument);
    // origin on the cell closure: midpoint fallback stays finite
    double w = hardy_weight_at({0.05, 0.0}, h, 2.0, 0.75, 1, 1);
    CHECK(w == doctest::Approx(std::pow(0.05, -1.5)).epsilon(1e-12));
}

TEST_CASE("hardy weight: 2-D cell average against brute quadrature") {
    double h = 0.25;
    double p = 2.0, theta = 0.6;  // q = 1.2 < N = 2
    for (auto xc : {std::array<double, 2>{0.375, 0.125}, std::array<double, 2>{1.125, -0.625}}) {
        double w = hardy_weight_at(xc, h, p, theta, 2, 2);
        auto fy = [&](double yy) {
            auto fx = [&](double xx) { return std::pow(xx * xx + yy * yy, -0.6); };
            return oracles::adaptive_simpson(fx, xc[0] - h / 2, xc[0] + h / 2, 1e-9);
        };
        double oracle = oracles::adaptive_simpson(fy, xc[1] - h / 2, xc[1] + h / 2, 1e-9) / (h * h);
        CHECK(w == doctest::Approx(oracle).epsilon(1e-6));
    }
}

TEST_CASE("hardy weight: origin-corner cell against the polar closed form") {
    // cell [0, h]^2 with q < 2: by symmetry the integral is
    // 2 int_0^{pi/4} (h / cos t)^{2 - q} / (2 - q) dt
    double h = 0.25, q = 1.2;
    double w = hardy_weight_at({0.5 * h, 0.5 * h}, h, 2.0, 0.6, 2, 2);
    auto f = [&](double t) { return std::pow(h / std::cos(t), 2.0 - q) / (2.0 - q); };
    double oracle = 2.0 * oracles::adaptive_simpson(f, 0.0, 0.25 * M_PI, 1e-12) / (h * h);
    CHECK(w == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("submesh: removed cells feed the tail weights") {
    OperatorParams par = params_1d();
    Mesh m = build_mesh(ShapeSpec::make_interval(0.0, 1.0, 12), par);
    std::vector<std::uint8_t> keep(m.size(), 0);
    for (int i = 0; i < 6; ++i) keep[i] = 1;
    Mesh sub = build_submesh(m, keep);
    REQUIRE(sub.size() == 6);
    // the submesh of (0, 1/2) must agree with a directly built mesh of it
    Mesh direct = build_mesh(ShapeSpec::make_interval(0.0, 0.5, 6), par);
    for (int i = 0; i < 6; ++i) {
        CHECK(sub.nodes[i][0] == doctest::Approx(direct.nodes[i][0]).epsilon(1e-14));
        // kernel mass of the removed cells replaces the exact exterior
        // integral; consistent only at O(h), hence the loose tolerance
        CHECK(sub.tail_weights[i] == doctest::Approx(direct.tail_weights[i]).epsilon(0.2));
    }
    CHECK(sub.volume == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("two_disks overlap flag") {
    CHECK(ShapeSpec::make_two_disks({0.0, 0.0}, {1.0, 0.0}, 1.0, 8).overlapping_balls());
    CHECK_FALSE(ShapeSpec::make_two_disks({-2.0, 0.0}, {2.0, 0.0}, 1.0, 8).overlapping_balls());
}

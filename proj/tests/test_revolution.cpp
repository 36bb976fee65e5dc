#include <doctest.h>

#include <cmath>

#include "lpbm/revolution.hpp"

using namespace lpbm;

namespace {

GridFunction on_grid(const Grid& g, double a, double b, double v = 1.0) {
    return GridFunction::sample(g, [=](const Point& x) { return x[0] >= a && x[0] <= b ? v : 0.0; });
}

}  // namespace

TEST_CASE("unit ball volumes") {
    CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
    CHECK(unit_ball_volume(2) == doctest::Approx(M_PI));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 / 3.0 * M_PI));
    CHECK(unit_ball_volume(4) == doctest::Approx(M_PI * M_PI / 2.0));
}

TEST_CASE("revolution volumes") {
    const Grid g = Grid::uniform(Box::cube(1, -0.5, 1.5), 128);
    const RevolutionBody cyl{on_grid(g, 0, 1), 2};
    CHECK(revolution_volume(cyl) == doctest::Approx(M_PI).epsilon(1e-12));
    CHECK(revolution_volume_direct(cyl) == doctest::Approx(M_PI).epsilon(0.02));
    const RevolutionBody strip{on_grid(g, 0, 1), 1};
    CHECK(revolution_volume(strip) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(revolution_volume_direct(strip) == doctest::Approx(2.0).epsilon(0.02));
    const RevolutionBody zero{GridFunction::sample(g, [](const Point&) { return 0.0; }), 2};
    CHECK(revolution_volume(zero) == 0.0);
    // A cone-like body: w(x) = (1 - |x|)^2, fibre radius 1 - |x|.
    const Grid g2 = Grid::uniform(Box::cube(1, -1.5, 1.5), 128);
    const RevolutionBody cone{
        GridFunction::sample(g2, [](const Point& x) { return std::pow(std::max(0.0, 1 - std::abs(x[0])), 2); }), 2};
    CHECK(revolution_volume_direct(cone) == doctest::Approx(revolution_volume(cone)).epsilon(0.02));
    CHECK(revolution_volume(cone) == doctest::Approx(M_PI * 2.0 / 3.0).epsilon(0.01));
}

TEST_CASE("revolution region mask") {
    const Grid g = Grid::uniform(Box::cube(1, -0.5, 1.5), 64);
    const GridMask m = revolution_region({on_grid(g, 0, 1), 1}, 64);
    CHECK(m.grid.dim() == 2);
    CHECK(m.count() * m.grid.cell_volume() == doctest::Approx(2.0).epsilon(0.03));
}

TEST_CASE("multiple volumes") {
    const Grid g = Grid::uniform(Box::cube(1, -0.5, 1.5), 64);
    const MultipleFunction two{on_grid(g, 0, 1), 2};
    CHECK(multiple_volume(two, 1) == doctest::Approx(2.0));
    CHECK(multiple_volume_direct(two, 1) == doctest::Approx(2.0).epsilon(0.02));
    const Grid g3 = Grid::uniform(Box::cube(1, -0.5, 2.5), 96);
    const MultipleFunction one{on_grid(g3, 0, 2), 1};
    CHECK(multiple_volume(one, 2) == doctest::Approx(2 * M_PI));
    const RevolutionBody same{on_grid(g3, 0, 2), 2};
    CHECK(multiple_volume(one, 2) == doctest::Approx(revolution_volume(same)));
    const MultipleFunction zero{GridFunction::sample(g, [](const Point&) { return 0.0; }), 2};
    CHECK(multiple_volume(zero, 1) == 0.0);
    const MultipleFunction tri{
        GridFunction::sample(g, [](const Point& x) { return std::max(0.0, 1 - std::abs(x[0] - 0.5) * 2); }), 2};
    CHECK(multiple_volume_direct(tri, 2) == doctest::Approx(multiple_volume(tri, 2)).epsilon(0.02));
    CHECK_THROWS(multiple_volume_direct(MultipleFunction{two.base, 3}, 2));
}

TEST_CASE("inclusion lemma") {
    const Grid g = Grid::uniform(Box::cube(1, -1.5, 1.5), 96);
    const auto ind = on_grid(g, 0, 1);
    ConvolutionParams cp;
    cp.p = 2;
    cp.t = 0.5;
    cp.s = ExtendedReal::finite(1);
    cp.lambda_grid = 33;
    auto r = check_inclusion_lemma(ind, ind, cp);
    CHECK(r.points > 0);
    CHECK(r.violations == 0);
    cp.t = 0.0;
    r = check_inclusion_lemma(ind, ind, cp);
    CHECK(r.violations == 0);
    const auto tri = GridFunction::sample(g, [](const Point& x) { return std::max(0.0, 1 - std::abs(x[0])); });
    const auto box = on_grid(g, -0.5, 0.75);
    cp.p = 1;
    cp.t = 0.3;
    cp.s = ExtendedReal::finite(2);
    r = check_inclusion_lemma(tri, box, cp);
    CHECK(r.violations == 0);
    // Rational s = ell / m with two copies.
    cp.p = 2;
    cp.s = ExtendedReal::finite(0.5);
    r = check_inclusion_lemma(tri, box, cp, 2, 4);
    CHECK(r.violations == 0);
    cp.s = ExtendedReal::finite(0.3);
    CHECK_THROWS(check_inclusion_lemma(tri, box, cp, 1));
}

TEST_CASE("ball bodies") {
    auto e = [](const Point& x) { return std::exp(-std::abs(x[0])); };
    auto K = ball_body(e, 1, 1.0, 60.0, 1.0, 2);
    REQUIRE(K.size() == 2);
    CHECK(K.rho[0] == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(K.rho[1] == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(K.volume() == doctest::Approx(2.0).epsilon(1e-5));
    auto box = [](const Point& x) { return std::abs(x[0]) <= 1 ? 1.0 : 0.0; };
    K = ball_body(box, 1, 1.0, 3.0, 1.0, 2);
    CHECK(K.rho[0] == doctest::Approx(1.0).epsilon(1e-3));
    // Volume identity in two dimensions: |K_2(f)| = int f / max f.
    auto gauss = [](const Point& x) { return 5.0 * std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1])); };
    K = ball_body(gauss, 2, 5.0, 12.0, 2.0, 360);
    CHECK(K.volume() == doctest::Approx(2 * M_PI).epsilon(1e-4));
}

TEST_CASE("ball body of a sampled function is scale invariant") {
    const Grid g = Grid::uniform(Box::cube(1, -8, 8), 257);
    const auto f = GridFunction::sample(g, [](const Point& x) { return std::exp(-std::abs(x[0])); });
    const auto a = ball_body(f, 1.0, 2), b = ball_body(f.times(4.0), 1.0, 2);
    CHECK(a.rho == b.rho);
    const auto c = ball_body(f.times(3.0), 1.0, 2);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(c.rho[k] == doctest::Approx(a.rho[k]).epsilon(1e-14));
    CHECK(a.volume() == doctest::Approx(integrate(Density::lebesgue(), f)).epsilon(0.01));
    const auto shifted = GridFunction::sample(g, [](const Point& x) { return std::exp(-std::abs(x[0] - 1)); });
    CHECK_THROWS(ball_body(shifted, 1.0, 2));
}

TEST_CASE("level bodies") {
    const Grid g = Grid::uniform(Box::cube(1, -6, 6), 385);
    const auto e = GridFunction::sample(g, [](const Point& x) { return std::exp(-std::abs(x[0])); });
    auto L = level_body(e);
    CHECK(L.km_ratio >= 1.0);
    CHECK(L.km_ratio == doctest::Approx(1.0).epsilon(2 * g.max_step()));
    CHECK(L.contains_K);
    const auto gauss = GridFunction::sample(g, [](const Point& x) { return std::exp(-0.5 * x[0] * x[0]); });
    L = level_body(gauss);
    const double rho = std::sqrt(M_PI / 2);
    CHECK(L.km_ratio == doctest::Approx(std::sqrt(2.0) / rho).epsilon(2 * g.max_step()));
    CHECK(L.contains_K);
    const auto ind = GridFunction::sample(g, [](const Point& x) { return std::abs(x[0]) <= 1 ? 1.0 : 0.0; });
    L = level_body(ind);
    CHECK(L.km_ratio == doctest::Approx(1.0).epsilon(2 * g.max_step()));
    const Grid g2 = Grid::uniform(Box::cube(2, -5, 5), 81);
    const auto g2f = GridFunction::sample(g2, [](const Point& x) { return std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1])); });
    L = level_body(g2f, 180);
    CHECK(L.km_ratio > 1.0);
    CHECK(L.km_ratio < 10.0);
    CHECK(L.contains_K);
}

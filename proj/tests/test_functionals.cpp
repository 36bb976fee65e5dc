#include <doctest.h>

#include <cmath>

#include "lpbm/functionals.hpp"

using namespace lpbm;

namespace {

GridFunction interval_indicator(const Grid& g, double a, double b) {
    return GridFunction::sample(g, [=](const Point& x) { return x[0] >= a && x[0] <= b ? 1.0 : 0.0; });
}

}  // namespace

TEST_CASE("F specifications") {
    const auto F = FSpec::power(0.5);
    CHECK(F(4.0) == doctest::Approx(2.0));
    CHECK(F.derivative(4.0) == doctest::Approx(0.25));
    CHECK(F.inverse(F(3.0)) == doctest::Approx(3.0));
    const auto L = FSpec::log();
    CHECK(L(std::exp(2.0)) == doctest::Approx(2.0));
    CHECK(L.derivative(2.0) == doctest::Approx(0.5));
    CHECK(L.inverse(1.0) == doctest::Approx(std::exp(1.0)));
    CHECK_THROWS(FSpec::power(0.0));
}

TEST_CASE("epsilon schedule and quotient table") {
    const auto e = EpsSchedule{}.values();
    REQUIRE(e.size() == 7);
    CHECK(e[0] == 0.1);
    CHECK(e[6] == doctest::Approx(0.1 / 64));
    const auto t = make_quotient_table({0.4, 0.2, 0.1, 0.05}, {5, 4, 3.5, 3.25});
    CHECK(t.richardson == doctest::Approx(3.0));
    CHECK(t.trailing_min == doctest::Approx(3.25));
    CHECK_FALSE(t.divergent);
    const auto d = make_quotient_table({0.1, 0.05}, {100, 400});
    CHECK(d.divergent);
    CHECK(std::isinf(d.value()));
}

TEST_CASE("surface area of an interval indicator") {
    const Grid g = Grid::uniform(Box::cube(1, -1, 2), 96);
    const auto f = interval_indicator(g, 0, 1);
    const auto leb = Density::lebesgue();
    for (double p : {1.0, 2.0})
        for (double s : {1.0, 2.0}) {
            const auto S = surface_area(leb, f, f, p, ExtendedReal::finite(s));
            const double exact = (1 + s) / p;
            CHECK(S.value() == doctest::Approx(exact).epsilon(0.05));
            CHECK(S.richardson == doctest::Approx(S.trailing_min).epsilon(0.02));
        }
}

TEST_CASE("surface area of a disc indicator") {
    const Grid g = Grid::uniform(Box::cube(2, -1.25, 1.25), 40);
    const auto f = GridFunction::indicator(rasterize(Shape::ball(2, {0, 0, 0}, 1.0), g));
    const double area = integrate(Density::lebesgue(), f);
    const auto S = surface_area(Density::lebesgue(), f, f, 2.0, ExtendedReal::finite(1), EpsSchedule{}, 17);
    CHECK(S.value() == doctest::Approx(1.5 * area).epsilon(0.05));
}

TEST_CASE("surface area against a point mass is zero") {
    const Grid g = Grid::uniform(Box::cube(1, -2, 2), 65);
    const auto f = GridFunction::sample(g, [](const Point& x) { return std::exp(-x[0] * x[0]); });
    const auto delta = GridFunction::sample(g, [](const Point& x) { return std::abs(x[0]) < 0.02 ? 1.0 : 0.0; });
    const auto S = surface_area(Density::lebesgue(), f, delta, 1.0, ExtendedReal::pos_inf());
    CHECK(std::abs(S.value()) <= 4 * g.max_step());
}

TEST_CASE("mixed volume examples") {
    const auto A = SupportBody::interval(-1, 1);
    const auto leb = Density::lebesgue();
    auto V = mixed_volume_VpF(leb, FSpec::power(2.0), A, A, 2.0);
    CHECK(V.value() == doctest::Approx(2.0).epsilon(0.01));
    V = mixed_volume_VpF(leb, FSpec::power(1.0), A, A, 1.0);
    CHECK(V.value() == doctest::Approx(2.0).epsilon(1e-9));
    V = mixed_volume_VpF(leb, FSpec::power(1.0), A, SupportBody::interval(-1e-6, 1e-6), 1.0);
    CHECK(std::abs(V.value()) < 1e-5);
    const auto D = SupportBody::from_shape(Shape::ball(2, {0, 0, 0}, 1.0), 360);
    V = mixed_volume_VpF(leb, FSpec::power(1.0), D, D, 2.0);
    CHECK(V.value() == doctest::Approx(M_PI).epsilon(0.01));
}

TEST_CASE("residual examples") {
    const auto A = SupportBody::interval(-1, 1);
    const auto leb = Density::lebesgue();
    auto M = residual_MpF(leb, FSpec::power(2.0), A, 2.0);
    CHECK(M.measure == doctest::Approx(2.0));
    CHECK(std::abs(M.residual) < 0.01);
    M = residual_MpF(leb, FSpec::power(1.0), A, 1.0);
    CHECK(std::abs(M.residual) < 1e-9);
    const auto D = SupportBody::from_shape(Shape::ball(2, {0, 0, 0}, 1.0), 360);
    M = residual_MpF(leb, FSpec::power(1.0), D, 2.0);
    CHECK(std::abs(M.residual) < 0.05 * M.measure);
}

TEST_CASE("F concavity") {
    const auto leb = Density::lebesgue();
    const auto A = SupportBody::interval(-1, 1), B = SupportBody::interval(-0.5, 2);
    const std::vector<double> ts{0.0, 0.25, 0.5, 0.75, 1.0};
    CHECK(check_F_concavity(leb, FSpec::power(2.0), A, B, 2.0, ts) >= -1e-9);
    CHECK(check_F_concavity(leb, FSpec::power(2.0), A, A, 2.0, ts) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(std::abs(check_F_concavity(leb, FSpec::power(2.0), A, B, 2.0, {0.0, 1.0})) < 1e-12);
    const Grid g = Grid::uniform(Box::cube(1, -2, 2), 64);
    const auto f = interval_indicator(g, -0.5, 1.0), h = interval_indicator(g, 0.0, 0.5);
    ConvolutionParams cp;
    cp.p = 2;
    cp.s = ExtendedReal::finite(1);
    cp.lambda_grid = 33;
    CHECK(std::abs(check_F_concavity(leb, FSpec::power(2.0 / 2.0), f, h, cp, {0.0, 1.0})) < 1e-12);
    CHECK(check_F_concavity(leb, FSpec::power(2.0 / 2.0), f, h, cp, {0.25, 0.5}) >= -4 * g.max_step());
}

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "lpbm/densities.hpp"
#include "lpbm/supconv.hpp"

using namespace lpbm;

namespace {

GridFunction indicator1d(double a, double b, const Grid& g, double v = 1.0) {
    return GridFunction::sample(g, [=](const Point& x) { return x[0] >= a && x[0] <= b ? v : 0.0; });
}

double extent_lo(const GridFunction& f) { return f.support_bbox().lo[0]; }
double extent_hi(const GridFunction& f) { return f.support_bbox().hi[0]; }

// Independent single-lambda reference for p = 1, 0 < s < inf: for every output
// centre the largest combination over cell pairs whose weighted sum of closed
// cells contains it.
std::vector<double> brute_force(const GridFunction& f, const GridFunction& g, const Grid& out, double t, double s) {
    const double wA = 1 - t, wB = t;
    std::vector<double> h(out.size(), 0.0);
    const Grid& F = f.grid();
    const Grid& G = g.grid();
    for (int k = 0; k < out.cells(0); ++k) {
        const double z = out.center(0, k);
        double best = 0.0;
        for (int i = 0; i < F.cells(0); ++i) {
            if (!(f[i] > 0)) continue;
            for (int j = 0; j < G.cells(0); ++j) {
                if (!(g[j] > 0)) continue;
                const double lo = wA * F.cell_lo(0, i) + wB * G.cell_lo(0, j);
                const double hi = wA * F.cell_hi(0, i) + wB * G.cell_hi(0, j);
                if (!(lo <= z && z <= hi)) continue;
                best = std::max(best, std::pow(wA * std::pow(f[i], 1 / s) + wB * std::pow(g[j], 1 / s), s));
            }
        }
        h[k] = best;
    }
    return h;
}

}  // namespace

TEST_CASE("scale_ps examples") {
    const Grid g = Grid::uniform(Box::cube(1, -1, 2), 96);
    const auto f = indicator1d(0, 1, g);
    const auto same = scale_ps(f, 1.0, 2.0, ExtendedReal::finite(1));
    CHECK(max_abs_difference(same, f) == 0.0);
    const auto f4 = scale_ps(f, 4.0, 2.0, ExtendedReal::finite(2));
    CHECK(f4.max_value() == doctest::Approx(4.0));
    CHECK(extent_lo(f4) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(extent_hi(f4) == doctest::Approx(2.0).epsilon(1e-12));
    const auto fq = scale_ps(f, 0.25, 1.0, ExtendedReal::pos_inf());
    CHECK(fq.max_value() == 1.0);
    CHECK(extent_hi(fq) == doctest::Approx(0.25));
    CHECK_THROWS(scale_ps(f, 0.0, 1.0, ExtendedReal::finite(1)));
}

TEST_CASE("oplus of equal indicators") {
    const Grid g = Grid::uniform(Box::cube(1, -1, 2), 96);
    const auto f = indicator1d(0, 1, g);
    ConvolutionParams cp;
    cp.p = 1;
    cp.s = ExtendedReal::finite(1);
    const auto h = lp_supremal_convolution(f, f, cp);
    CHECK(h.max_value() == doctest::Approx(1.0));
    CHECK(extent_lo(h) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(extent_hi(h) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(integrate(Density::lebesgue(), h) == doctest::Approx(1.0).epsilon(g.max_step()));
}

TEST_CASE("adding a small dilate of a convex indicator") {
    const Grid g = Grid::uniform(Box::cube(1, -2, 2), 128);
    const auto f = indicator1d(-1, 1, g);
    ConvolutionParams cp;
    cp.p = 2;
    cp.s = ExtendedReal::finite(1);
    const auto h = oplus_ps(f, f, cp, 1.0, 0.2);
    CHECK(h.max_value() == doctest::Approx(std::sqrt(1.2)).epsilon(1e-12));
    CHECK(std::abs(extent_hi(h) - std::sqrt(1.2)) <= 2 * g.max_step());
    CHECK(std::abs(extent_lo(h) + std::sqrt(1.2)) <= 2 * g.max_step());
    // Same as scaling by 1.2 directly.
    const auto d = scale_ps(f, 1.2, 2.0, ExtendedReal::finite(1));
    CHECK(std::abs(integrate(Density::lebesgue(), h) - integrate(Density::lebesgue(), d)) <= 4 * g.max_step());
}

TEST_CASE("indicator identity against the sampled combination") {
    const Grid g = Grid::uniform(Box::cube(1, -2, 3), 100);
    const auto A = Shape::interval(-0.5, 1.0), B = Shape::interval(0.25, 2.0);
    for (double p : {1.0, 2.0, 4.0})
        for (double t : {0.2, 0.5, 0.8})
            for (auto s : {ExtendedReal::zero(), ExtendedReal::finite(1), ExtendedReal::pos_inf()}) {
                ConvolutionParams cp;
                cp.p = p;
                cp.t = t;
                cp.s = s;
                const auto h = lp_supremal_convolution(GridFunction::indicator(rasterize(A, g)),
                                                       GridFunction::indicator(rasterize(B, g)), cp);
                const auto L = lyz_combine(SampledSet::from_shape(A, g), SampledSet::from_shape(B, g), p, 1 - t, t,
                                           lambda_nodes(cp, 1 - t, t));
                CHECK(hausdorff_distance(SampledSet::from_mask(h.support()), L) <= 3 * g.max_step());
            }
}

TEST_CASE("pruned and naive kernels agree") {
    const Grid g1 = Grid::uniform(Box::cube(1, -2, 2), 64);
    const auto f = GridFunction::sample(g1, [](const Point& x) { return std::max(0.0, 1 - std::abs(x[0] - 0.3)); });
    const auto gg = GridFunction::sample(g1, [](const Point& x) { return std::exp(-2 * x[0] * x[0]) * 1.5; });
    for (double p : {1.0, 1.5, 3.0})
        for (auto s : {ExtendedReal::zero(), ExtendedReal::finite(0.5), ExtendedReal::finite(2),
                       ExtendedReal::pos_inf()}) {
            ConvolutionParams cp;
            cp.p = p;
            cp.t = 0.35;
            cp.s = s;
            cp.lambda_grid = 33;
            const auto a = lp_supremal_convolution(f, gg, cp, KernelKind::Pruned);
            const auto b = lp_supremal_convolution(f, gg, cp, KernelKind::Naive);
            CHECK(max_abs_difference(a, b) <= 1e-12);
        }
    const Grid g2 = Grid::uniform(Box::cube(2, -1.5, 1.5), 20);
    const auto f2 = GridFunction::sample(g2, [](const Point& x) { return std::max(0.0, 1 - std::hypot(x[0], x[1])); });
    const auto g2f = GridFunction::sample(
        g2, [](const Point& x) { return std::abs(x[0]) <= 0.5 && x[1] >= -0.25 && x[1] <= 1.0 ? 2.0 : 0.0; });
    ConvolutionParams cp;
    cp.p = 2;
    cp.t = 0.6;
    cp.lambda_grid = 9;
    const auto a = lp_supremal_convolution(f2, g2f, cp, KernelKind::Pruned);
    const auto b = lp_supremal_convolution(f2, g2f, cp, KernelKind::Naive);
    CHECK(max_abs_difference(a, b) <= 1e-12);
}

TEST_CASE("p = 1 agrees with a single-lambda brute force") {
    const Grid g = Grid::uniform(Box::cube(1, -2, 2), 64);
    const auto f = GridFunction::sample(g, [](const Point& x) { return std::max(0.0, 1 - std::abs(x[0])); });
    const auto gg = GridFunction::sample(g, [](const Point& x) { return 2 * std::exp(-x[0] * x[0] / 0.5); });
    for (double s : {0.5, 1.0, 2.0})
        for (double t : {0.1, 0.5, 0.9}) {
            ConvolutionParams cp;
            cp.p = 1;
            cp.t = t;
            cp.s = ExtendedReal::finite(s);
            const auto h = lp_supremal_convolution(f, gg, cp);
            const auto ref = brute_force(f, gg, h.grid(), t, s);
            const GridFunction r(h.grid(), ref);
            CHECK(integrate(Density::lebesgue(), h) ==
                  doctest::Approx(integrate(Density::lebesgue(), r)).epsilon(1e-9));
        }
}

TEST_CASE("larger p dominates p = 1") {
    const Grid g = Grid::uniform(Box::cube(1, -2, 2), 64);
    const auto f = indicator1d(-0.5, 1.0, g);
    const auto gg = GridFunction::sample(g, [](const Point& x) { return std::max(0.0, 1 - std::abs(x[0])); });
    ConvolutionParams c1;
    c1.p = 1;
    c1.t = 0.4;
    const auto h1 = lp_supremal_convolution(f, gg, c1);
    for (double p : {1.5, 2.0, 4.0}) {
        ConvolutionParams cp = c1;
        cp.p = p;
        const auto hp = lp_supremal_convolution(f, gg, cp);
        for (std::size_t i = 0; i < h1.grid().size(); ++i) {
            if (!(h1[i] > 0)) continue;
            CHECK(hp.max_near(h1.grid().center(i), 1) >= h1[i] - 1e-12);
        }
    }
}

TEST_CASE("monotone in the inputs") {
    const Grid g = Grid::uniform(Box::cube(1, -2, 2), 64);
    const auto f = GridFunction::sample(g, [](const Point& x) { return std::max(0.0, 1 - std::abs(x[0])); });
    const auto big = GridFunction::sample(g, [](const Point& x) { return 1.3 * std::max(0.0, 1 - std::abs(x[0])); });
    const auto gg = GridFunction::sample(g, [](const Point& x) { return std::exp(-x[0] * x[0]); });
    ConvolutionParams cp;
    cp.p = 2;
    cp.t = 0.3;
    cp.s = ExtendedReal::finite(2);
    const auto a = lp_supremal_convolution(f, gg, cp), b = lp_supremal_convolution(big, gg, cp);
    REQUIRE(a.grid().same_as(b.grid()));
    for (std::size_t i = 0; i < a.grid().size(); ++i) CHECK(b[i] >= a[i]);
}

TEST_CASE("lambda nodes") {
    ConvolutionParams cp;
    cp.p = 2;
    cp.lambda_grid = 5;
    const auto n = lambda_nodes(cp, 0.7, 0.3);
    CHECK(n.front() == doctest::Approx(0.3));
    CHECK(n.size() == 6);
    cp.p = 1;
    CHECK(lambda_nodes(cp, 0.7, 0.3).size() == 1);
    cp.p = 2;
    cp.lambdas = {0.1, 0.2};
    CHECK(lambda_nodes(cp, 0.7, 0.3) == std::vector<double>{0.1, 0.2});
}

TEST_CASE("one vanishing weight dilates the surviving function") {
    const Grid g = Grid::uniform(Box::cube(1, -2, 2), 64);
    const auto f = GridFunction::sample(g, [](const Point& x) { return std::max(0.0, 1 - std::abs(x[0])); });
    const auto gg = indicator1d(-0.25, 0.25, g, 0.1);
    ConvolutionParams cp;
    cp.s = ExtendedReal::pos_inf();
    cp.p = 1;
    cp.t = 0.0;
    const auto h = lp_supremal_convolution(f, gg, cp);
    CHECK(h.max_value() == f.max_value());
    CHECK(integrate(Density::lebesgue(), h) == doctest::Approx(integrate(Density::lebesgue(), f)).epsilon(1e-12));
    // With p > 1 the lambda union also contains the shrunken copies (1-l)^{(p-1)/p} supp f.
    cp.p = 2;
    const auto h2 = lp_supremal_convolution(f, gg, cp);
    CHECK(h2.support_bbox().hi[0] == doctest::Approx(f.support_bbox().hi[0]));
    CHECK(integrate(Density::lebesgue(), h2) >= integrate(Density::lebesgue(), f));
}

TEST_CASE("concavity preservation") {
    const Grid g = Grid::uniform(Box::cube(1, -2, 2), 64);
    const auto tri = GridFunction::sample(g, [](const Point& x) { return std::max(0.0, 1 - std::abs(x[0])); });
    ConvolutionParams cp;
    cp.p = 2;
    cp.t = 0.5;
    cp.s = ExtendedReal::finite(1);
    CHECK(check_concavity_preservation(tri, tri, cp) >= -3 * g.max_step());
    const auto ind = indicator1d(0, 1, g);
    cp.s = ExtendedReal::zero();
    CHECK(check_concavity_preservation(ind, ind, cp) >= 0.0);
    const auto ga = GridFunction::sample(g, [](const Point& x) { return std::exp(-x[0] * x[0]); });
    const auto gb = GridFunction::sample(g, [](const Point& x) { return std::exp(-2 * (x[0] - 0.3) * (x[0] - 0.3)); });
    cp.p = 1;
    cp.t = 0.3;
    cp.s = ExtendedReal::pos_inf();
    CHECK(check_concavity_preservation(ga, gb, cp) >= -4 * g.max_step());
}

TEST_CASE("resample keeps the support") {
    const Grid g = Grid::uniform(Box::cube(1, -2, 2), 64);
    const auto f = indicator1d(-0.5, 0.5, g);
    const auto r = resample(f, Grid::uniform(Box::cube(1, -2, 2), 50));
    CHECK(r.support_bbox().lo[0] <= -0.5);
    CHECK(r.support_bbox().hi[0] >= 0.5);
}

TEST_CASE("invalid parameters") {
    const Grid g = Grid::uniform(Box::cube(1, -2, 2), 32);
    const auto f = indicator1d(0, 1, g);
    const GridFunction z = GridFunction::sample(g, [](const Point&) { return 0.0; });
    ConvolutionParams cp;
    CHECK_THROWS(lp_supremal_convolution(f, z, cp));
    cp.p = 0.5;
    CHECK_THROWS(lp_supremal_convolution(f, f, cp));
    cp.p = 1;
    cp.t = 1.5;
    CHECK_THROWS(lp_supremal_convolution(f, f, cp));
}

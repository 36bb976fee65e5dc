// Acceptance suite: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lpbm/functionals.hpp"
#include "lpbm/harness.hpp"
#include "lpbm/revolution.hpp"
#include "lpbm/supconv.hpp"

using namespace lpbm;

namespace {

// Pinned tolerances.
constexpr double kHausdorffSteps = 3.0;
constexpr double kOracleRel = 1e-9;
constexpr double kSurfaceRel = 0.05;
constexpr double kSurrogateRel = 0.02;
constexpr double kClosedFormRel = 0.05;
constexpr double kFubiniRel = 0.02;
constexpr double kBallBodyRel = 0.01;
constexpr double kSymmetricC = 1e-6;
constexpr double kConstantBound = 10.0;
constexpr double kKernelAbs = 1e-12;
constexpr double kLambdaInvariance = 1e-9;
constexpr double kIndicatorRuntime = 120.0;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::vector<double> t_grid() { return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}; }

// Per-cell brute force of the single-weight BBL combination.
std::vector<double> brute_force_1d(const GridFunction& f, const GridFunction& g, const Grid& out, double t, double s) {
    const double wA = 1 - t, wB = t;
    const Grid& F = f.grid();
    const Grid& G = g.grid();
    std::vector<double> h(out.size(), 0.0);
    for (int k = 0; k < out.cells(0); ++k) {
        const double z = out.center(0, k);
        double best = 0.0;
        for (int i = 0; i < F.cells(0); ++i) {
            if (!(f[i] > 0)) continue;
            for (int j = 0; j < G.cells(0); ++j) {
                if (!(g[j] > 0)) continue;
                const double lo = wA * F.cell_lo(0, i) + wB * G.cell_lo(0, j);
                const double hi = wA * F.cell_hi(0, i) + wB * G.cell_hi(0, j);
                if (lo <= z && z <= hi)
                    best = std::max(best, std::pow(wA * std::pow(f[i], 1 / s) + wB * std::pow(g[j], 1 / s), s));
            }
        }
        h[k] = best;
    }
    return h;
}

struct SuiteRun {
    std::map<TheoremId, std::vector<std::pair<std::string, CheckReport>>> by_id;
    double seconds = 0;
};

SuiteRun run_suite() {
    SuiteRun r;
    const auto t0 = std::chrono::steady_clock::now();
    for (SuiteEntry& e : builtin_suite()) {
        e.base.verify_kernels = true;
        for (auto& rep : sweep(e.id, e.fixture, e.ps, e.ts, e.ss, e.base))
            r.by_id[e.id].push_back({e.fixture.name, rep});
    }
    r.seconds = seconds_since(t0);
    return r;
}

// Applicable reports pass; inapplicable ones are counted separately.
void require_suite(Outcome& o, const SuiteRun& run, TheoremId id, const std::string& only = "") {
    int n = 0, bad = 0, inap = 0;
    auto it = run.by_id.find(id);
    if (it == run.by_id.end()) {
        o.require(false, to_string(id) + " missing from suite");
        return;
    }
    for (const auto& [name, rep] : it->second) {
        if (!only.empty() && name != only) continue;
        if (!rep.applicable) {
            ++inap;
            continue;
        }
        ++n;
        if (!rep.pass) {
            ++bad;
            o.require(false, to_string(id) + " " + name + " p=" + std::to_string(rep.p) + " t=" + std::to_string(rep.t));
        }
    }
    o.require(n > 0, to_string(id) + " has no applicable rows");
    o.detail << " " << to_string(id) << ":" << n - bad << "/" << n;
    if (inap) o.detail << "(+" << inap << " inapplicable)";
}

const CheckReport* find_row(const SuiteRun& run, TheoremId id, const std::string& fixture) {
    for (const auto& [name, rep] : run.by_id.at(id))
        if (name == fixture) return &rep;
    return nullptr;
}

double suite_kernel_max(const SuiteRun& run, std::initializer_list<TheoremId> ids, int& checked) {
    double worst = 0;
    for (TheoremId id : ids) {
        auto it = run.by_id.find(id);
        if (it == run.by_id.end()) continue;
        for (const auto& [name, rep] : it->second)
            if (rep.kernel_difference) {
                ++checked;
                worst = std::max(worst, *rep.kernel_difference);
            }
    }
    return worst;
}

Shape random_shape(std::mt19937& rng, int dim) {
    std::uniform_real_distribution<double> lo(-1.0, 0.5), len(0.3, 1.0);
    if (dim == 1) {
        const double a = lo(rng);
        return Shape::interval(a, a + len(rng));
    }
    Box b;
    b.dim = 2;
    for (int d = 0; d < 2; ++d) {
        b.lo[d] = lo(rng);
        b.hi[d] = b.lo[d] + len(rng);
    }
    return Shape::box_shape(b);
}

// 1. Indicator identity, plus the kernel differences it produces for criterion 10.
Outcome criterion1(double& kernel_worst) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(20240607);
    const std::vector<double> ps{1.0, 1.5, 2.0, 4.0};
    double worst = 0;
    int cases = 0;
    for (int pair = 0; pair < 20; ++pair) {
        const int dim = pair < 10 ? 1 : 2;
        const Grid g = dim == 1 ? Grid::uniform(Box::cube(1, -1.5, 2.0), 96) : Grid::uniform(Box::cube(2, -1.5, 2.0), 28);
        const Shape A = random_shape(rng, dim), B = random_shape(rng, dim);
        const auto fA = GridFunction::indicator(rasterize(A, g)), fB = GridFunction::indicator(rasterize(B, g));
        const auto sA = SampledSet::from_shape(A, g), sB = SampledSet::from_shape(B, g);
        for (double p : ps)
            for (double t : t_grid()) {
                ConvolutionParams cp;
                cp.p = p;
                cp.t = t;
                cp.s = ExtendedReal::finite(1);
                cp.lambda_grid = dim == 1 ? 129 : 17;
                const auto h = lp_supremal_convolution(fA, fB, cp);
                if (pair % 5 == 0 && t == 0.5) {
                    const auto n = lp_supremal_convolution(fA, fB, cp, KernelKind::Naive);
                    kernel_worst = std::max(kernel_worst, max_abs_difference(h, n));
                }
                const auto L = lyz_combine(sA, sB, p, 1 - t, t, lambda_nodes(cp, 1 - t, t), g.max_step() / 8);
                const double d = hausdorff_distance(SampledSet::from_mask(h.support()), L) / g.max_step();
                worst = std::max(worst, d);
                ++cases;
            }
    }
    const double secs = seconds_since(t0);
    o.require(worst <= kHausdorffSteps, "Hausdorff distance above 3 steps");
    o.require(secs <= kIndicatorRuntime, "runtime above 2 min");
    o.detail << " cases=" << cases << " worst=" << worst << " steps, " << secs << " s";
    return o;
}

// 2. L_p-BBL suite and the brute-force oracle at p = 1.
Outcome criterion2(const SuiteRun& run) {
    Outcome o;
    require_suite(o, run, TheoremId::BBL);
    require_suite(o, run, TheoremId::LP_BBL);
    double worst = 0;
    for (const SuiteEntry& e : builtin_suite()) {
        if (e.id != TheoremId::LP_BBL || e.fixture.dim != 1) continue;
        const Grid g = e.fixture.grid();
        const auto f = e.fixture.f->build(g), gg = e.fixture.g->build(g);
        for (double s : {1.0, 2.0})
            for (double t : {0.1, 0.5, 0.9}) {
                ConvolutionParams cp;
                cp.p = 1;
                cp.t = t;
                cp.s = ExtendedReal::finite(s);
                const auto h = lp_supremal_convolution(f, gg, cp);
                const GridFunction ref(h.grid(), brute_force_1d(f, gg, h.grid(), t, s));
                worst = std::max(worst, rel(integrate(Density::lebesgue(), h), integrate(Density::lebesgue(), ref)));
            }
    }
    o.require(worst <= kOracleRel, "brute-force oracle disagreement");
    o.detail << " oracle_rel=" << worst;
    return o;
}

// 3. (1/s)-concave measures, with equality for A = B.
Outcome criterion3(const SuiteRun& run) {
    Outcome o;
    require_suite(o, run, TheoremId::LP_BMI_SCONCAVE);
    for (const auto& [name, rep] : run.by_id.at(TheoremId::LP_BMI_SCONCAVE))
        if (name == "triangular_density_equal_1d")
            o.require(std::abs(rep.margin) <= rep.tolerance, "A = B margin outside tolerance");
    o.require(find_row(run, TheoremId::LP_BMI_SCONCAVE, "cone_density_2d") != nullptr, "cone density fixture");
    return o;
}

// 4. Product-measure inequalities and the unconditional hypothesis.
Outcome criterion4(const SuiteRun& run) {
    Outcome o;
    for (TheoremId id : {TheoremId::LP_PLI_PRODUCT, TheoremId::LP_PLI_SETS, TheoremId::LP_BMI_PRODUCT}) require_suite(o, run, id);
    for (TheoremId id : {TheoremId::LP_PLI_PRODUCT, TheoremId::LP_BMI_PRODUCT}) {
        const CheckReport* r = find_row(run, id, "shifted_boxes_2d");
        o.require(r && !r->applicable && !r->hypothesis_violations.empty(), "non-unconditional fixture not rejected");
    }
    o.detail << " shifted_boxes_2d rejected";
    return o;
}

// 5. At p = 1 the right side does not depend on the lambda grid.
Outcome criterion5(const SuiteRun& run) {
    Outcome o;
    require_suite(o, run, TheoremId::PL_RECOVERY);
    Fixture fx;
    for (const SuiteEntry& e : builtin_suite())
        if (e.id == TheoremId::PL_RECOVERY) fx = e.fixture;
    double worst = 0;
    for (double t : t_grid()) {
        CheckParams cp;
        cp.p = 1;
        cp.t = t;
        cp.s = ExtendedReal::pos_inf();
        cp.lambda_grid = 9;
        const double base = check_inequality(TheoremId::PL_RECOVERY, fx, cp).rhs;
        for (int lg : {33, 129, 257}) {
            cp.lambda_grid = lg;
            worst = std::max(worst, rel(check_inequality(TheoremId::PL_RECOVERY, fx, cp).rhs, base));
        }
    }
    o.require(worst <= kLambdaInvariance, "right side varies with the lambda grid");
    o.detail << " lambda_rel=" << worst;
    return o;
}

// 6. Surface area of an indicator.
Outcome criterion6() {
    Outcome o;
    const Grid g1 = Grid::uniform(Box::cube(1, -1, 2), 96);
    const Grid g2 = Grid::uniform(Box::cube(2, -1.25, 1.25), 40);
    const auto interval = GridFunction::indicator(rasterize(Shape::interval(0, 1), g1));
    const auto disk = GridFunction::indicator(rasterize(Shape::ball(2, {0, 0, 0}, 1.0), g2));
    double worst = 0, worst_sur = 0;
    for (const auto* f : {&interval, &disk}) {
        const int n = f->grid().dim();
        const double vol = integrate(Density::lebesgue(), *f);
        for (double p : {1.0, 2.0})
            for (double s : {1.0, 2.0}) {
                const auto S = surface_area(Density::lebesgue(), *f, *f, p, ExtendedReal::finite(s), EpsSchedule{},
                                            n == 1 ? 129 : 17);
                worst = std::max(worst, rel(S.value(), (n + s) / p * vol));
                worst_sur = std::max(worst_sur, rel(S.richardson, S.trailing_min));
            }
    }
    o.require(worst <= kSurfaceRel, "closed form");
    o.require(worst_sur <= kSurrogateRel, "Richardson vs trailing minimum");
    o.detail << " closed_form_rel=" << worst << " surrogate_rel=" << worst_sur;
    return o;
}

// 7. Minkowski-first and ISMI, with the closed forms of V and M.
Outcome criterion7(const SuiteRun& run) {
    Outcome o;
    require_suite(o, run, TheoremId::MFI);
    require_suite(o, run, TheoremId::ISMI);
    for (const auto& [name, rep] : run.by_id.at(TheoremId::ISMI))
        if (name == "equal_intervals_ismi_1d")
            o.require(std::abs(rep.margin) <= rep.tolerance, "A = B margin outside tolerance");
    const auto leb = Density::lebesgue();
    const std::vector<SupportBody> bodies{SupportBody::interval(-1, 1.5),
                                          SupportBody::from_shape(Shape::ball(2, {0, 0, 0}, 1.0), 360)};
    double worst_v = 0, worst_m = 0;
    for (const auto& K : bodies) {
        const int n = K.dim();
        const double vol = K.lebesgue_volume();
        for (double p : {1.0, 2.0}) {
            const auto F = FSpec::power(p / n);
            worst_v = std::max(worst_v, rel(mixed_volume_VpF(leb, F, K, K, p).value(), vol));
            worst_m = std::max(worst_m, std::abs(residual_MpF(leb, F, K, p).residual) / vol);
        }
    }
    o.require(worst_v <= kClosedFormRel, "V_pF closed form");
    o.require(worst_m <= kClosedFormRel, "M_pF closed form");
    o.detail << " V_rel=" << worst_v << " M_rel=" << worst_m;
    return o;
}

// 8. Fubini identities and the ball-body volume.
Outcome criterion8() {
    Outcome o;
    double worst_rev = 0, worst_mul = 0, worst_ball = 0;
    const Grid g = Grid::uniform(Box::cube(1, -1.5, 1.5), 128);
    const std::vector<GridFunction> ws{
        GridFunction::sample(g, [](const Point& x) { return x[0] >= 0 && x[0] <= 1 ? 1.0 : 0.0; }),
        GridFunction::sample(g, [](const Point& x) { return std::pow(std::max(0.0, 1 - std::abs(x[0])), 2); }),
        GridFunction::sample(g, [](const Point& x) { return std::exp(-2 * x[0] * x[0]); }),
    };
    for (const auto& w : ws)
        for (int s : {1, 2}) {
            const RevolutionBody b{w, s};
            worst_rev = std::max(worst_rev, rel(revolution_volume_direct(b), revolution_volume(b)));
        }
    const Grid gm = Grid::uniform(Box::cube(1, -1.5, 1.5), 64);
    const GridFunction tri = GridFunction::sample(gm, [](const Point& x) { return std::max(0.0, 1 - std::abs(x[0])); });
    for (int m : {1, 2})
        for (int ell = 1; m + ell <= 4; ++ell) {
            const MultipleFunction mf{tri, m};
            worst_mul = std::max(worst_mul, rel(multiple_volume_direct(mf, ell), multiple_volume(mf, ell)));
        }
    struct LC {
        int dim;
        std::function<double(const Point&)> f;
        double integral, reach;
    };
    const std::vector<LC> family{
        {1, [](const Point& x) { return std::exp(-std::abs(x[0])); }, 2.0, 60},
        {1, [](const Point& x) { return x[0] >= 0 ? std::exp(-x[0]) : std::exp(2 * x[0]); }, 1.5, 60},
        {1, [](const Point& x) { return std::exp(-0.5 * x[0] * x[0]); }, std::sqrt(2 * M_PI), 12},
        {2, [](const Point& x) { return std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1])); }, 2 * M_PI, 12},
        {2, [](const Point& x) { return std::exp(-std::abs(x[0]) - std::abs(x[1])); }, 4.0, 60},
    };
    for (const auto& lc : family) {
        const auto K = ball_body(lc.f, lc.dim, 1.0, lc.reach, lc.dim, lc.dim == 1 ? 2 : 720);
        worst_ball = std::max(worst_ball, rel(K.volume(), lc.integral));
    }
    o.require(worst_rev <= kFubiniRel, "revolution volume");
    o.require(worst_mul <= kFubiniRel, "multiple volume");
    o.require(worst_ball <= kBallBodyRel, "ball-body volume");
    o.detail << " revolution_rel=" << worst_rev << " multiple_rel=" << worst_mul << " ball_rel=" << worst_ball;
    return o;
}

// 9. Gardner-Zvavitch suite.
Outcome criterion9(const SuiteRun& run) {
    Outcome o;
    require_suite(o, run, TheoremId::GZ_PRODUCT_MIN);
    require_suite(o, run, TheoremId::GZ_LP_PRODUCT);
    require_suite(o, run, TheoremId::GZ_RADIAL_DECAY);
    const CheckReport* rad = find_row(run, TheoremId::GZ_PRODUCT_MIN, "radial_gz_2d");
    o.require(rad && !rad->applicable, "non-product fixture not rejected");

    const auto fam = builtin_gz_family();
    const std::vector<double> ps{1.0, 2.0, 4.0}, ts{0.1, 0.5, 0.9};
    std::vector<Fixture> sym;
    std::copy_if(fam.begin(), fam.end(), std::back_inserter(sym), [](const Fixture& f) { return f.name == "gauss1_sym"; });
    const auto es = estimate_gz_constant(sym, ps, ts);
    const auto ef = estimate_gz_constant(fam, ps, ts);
    o.require(std::abs(es.C - 1.0) <= kSymmetricC, "symmetric C_est");
    o.require(std::isfinite(ef.C) && ef.C < kConstantBound, "family C_est");

    double km = 0;
    const Grid g1 = Grid::uniform(Box::cube(1, -8, 8), 385);
    const Grid g2 = Grid::uniform(Box::cube(2, -6, 6), 81);
    const std::vector<GridFunction> lcs{
        GridFunction::sample(g1, [](const Point& x) { return std::exp(-std::abs(x[0])); }),
        GridFunction::sample(g1, [](const Point& x) { return std::exp(-0.5 * x[0] * x[0]); }),
        GridFunction::sample(g1, [](const Point& x) { return x[0] >= 0 ? std::exp(-x[0]) : std::exp(2 * x[0]); }),
        GridFunction::sample(g2, [](const Point& x) { return std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1])); }),
    };
    for (const auto& f : lcs) km = std::max(km, level_body(f, 180).km_ratio);
    o.require(std::isfinite(km) && km < kConstantBound, "Klartag-Milman ratio");
    o.detail << " C_sym=" << es.C << " C_est=" << ef.C << " (" << ef.witness << ") km_ratio=" << km;
    return o;
}

// 10. Pruned and naive kernels.
Outcome criterion10(const SuiteRun& run, double indicator_worst) {
    Outcome o;
    int checked = 0;
    const double worst = std::max(
        indicator_worst,
        suite_kernel_max(run,
                         {TheoremId::BBL, TheoremId::LP_BBL, TheoremId::LP_BMI_SCONCAVE, TheoremId::LP_PLI_PRODUCT,
                          TheoremId::LP_PLI_SETS, TheoremId::LP_BMI_PRODUCT},
                         checked));
    o.require(checked > 0, "no kernel comparisons recorded");
    o.require(worst <= kKernelAbs, "kernel mismatch");
    o.detail << " comparisons=" << checked << " worst=" << worst << " suite_runtime=" << run.seconds << " s";
    return o;
}

}  // namespace

int main() {
    std::printf("running built-in suite with kernel verification...\n");
    std::fflush(stdout);
    const SuiteRun run = run_suite();
    double indicator_kernel = 0;
    std::vector<std::pair<int, Outcome>> results;
    auto record = [&](int k, Outcome o) {
        std::printf("criterion %2d: %s%s\n", k, o.pass ? "PASS" : "FAIL", o.detail.str().c_str());
        std::fflush(stdout);
        results.emplace_back(k, std::move(o));
    };
    record(1, criterion1(indicator_kernel));
    record(2, criterion2(run));
    record(3, criterion3(run));
    record(4, criterion4(run));
    record(5, criterion5(run));
    record(6, criterion6());
    record(7, criterion7(run));
    record(8, criterion8());
    record(9, criterion9(run));
    record(10, criterion10(run, indicator_kernel));
    const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.second.pass; });
    std::printf("%d/10 criteria pass\n", static_cast<int>(10 - failed));
    return failed ? 1 : 0;
}

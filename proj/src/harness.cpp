#include "lpbm/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "lpbm/means.hpp"
#include "lpbm/parallel.hpp"
#include "lpbm/supconv.hpp"

namespace lpbm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::pair<TheoremId, const char*>>& names() {
    static const std::vector<std::pair<TheoremId, const char*>> n = {
        {TheoremId::BBL, "BBL"},
        {TheoremId::LP_BBL, "LP_BBL"},
        {TheoremId::LP_BMI_SETS, "LP_BMI_SETS"},
        {TheoremId::LP_BMI_SCONCAVE, "LP_BMI_SCONCAVE"},
        {TheoremId::LP_PLI_PRODUCT, "LP_PLI_PRODUCT"},
        {TheoremId::LP_PLI_SETS, "LP_PLI_SETS"},
        {TheoremId::LP_BMI_PRODUCT, "LP_BMI_PRODUCT"},
        {TheoremId::LEMMA_1D, "LEMMA_1D"},
        {TheoremId::PL_RECOVERY, "PL_RECOVERY"},
        {TheoremId::MFI, "MFI"},
        {TheoremId::ISMI, "ISMI"},
        {TheoremId::GZ_PRODUCT_MIN, "GZ_PRODUCT_MIN"},
        {TheoremId::GZ_LP_PRODUCT, "GZ_LP_PRODUCT"},
        {TheoremId::GZ_LOGCONCAVE_C, "GZ_LOGCONCAVE_C"},
        {TheoremId::GZ_RADIAL_DECAY, "GZ_RADIAL_DECAY"},
    };
    return n;
}

// ------------------------------------------------------------ hypotheses

void require(CheckReport& r, bool ok, const std::string& what) {
    if (ok) return;
    r.applicable = false;
    r.hypothesis_violations.push_back(what);
}

// Cells whose closed extent contains 0, per axis.
std::array<std::vector<int>, 3> zero_cells(const Grid& g) {
    std::array<std::vector<int>, 3> z;
    for (int d = 0; d < g.dim(); ++d)
        for (int k = 0; k < g.cells(d); ++k)
            if (g.cell_lo(d, k) <= 0.0 && g.cell_hi(d, k) >= 0.0) z[d].push_back(k);
    return z;
}

bool max_at_origin(const GridFunction& f) {
    return !f.empty_support() && f.value_at_origin() >= f.max_value() * (1.0 - 1e-12);
}

// f(eps x) >= f(x) for every zeroing pattern eps.
bool function_weakly_unconditional(const GridFunction& f) {
    const Grid& g = f.grid();
    const int n = g.dim();
    const auto zc = zero_cells(g);
    for (int d = 0; d < n; ++d)
        if (zc[d].empty()) return false;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double v = f[i];
        if (!(v > 0)) continue;
        const Index3 c = g.unravel(i);
        for (unsigned eps = 0; eps + 1 < (1u << n); ++eps) {
            double best = 0.0;
            std::array<std::vector<int>, 3> cand;
            for (int d = 0; d < 3; ++d) {
                if (d >= n) cand[d] = {0};
                else if (eps & (1u << d)) cand[d] = {c[d]};
                else cand[d] = zc[d];
            }
            for (int z : cand[2])
                for (int y : cand[1])
                    for (int x : cand[0]) best = std::max(best, f[g.index({x, y, z})]);
            if (best < v * (1.0 - 1e-12)) return false;
        }
    }
    return true;
}

// Nonincreasing along each axis away from the origin.
bool function_positively_decreasing(const GridFunction& f) {
    const Grid& g = f.grid();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double v = f[i];
        if (!(v > 0)) continue;
        const Index3 c = g.unravel(i);
        for (int d = 0; d < g.dim(); ++d) {
            if (g.cell_lo(d, c[d]) <= 0.0 && g.cell_hi(d, c[d]) >= 0.0) continue;
            Index3 in = c;
            in[d] += g.center(d, c[d]) > 0 ? -1 : 1;
            if (in[d] < 0 || in[d] >= g.cells(d)) continue;
            if (f[g.index(in)] < v * (1.0 - 1e-12)) return false;
        }
    }
    return true;
}

// Every super-level set is a product of axis sets containing the origin.
bool level_sets_are_products(const GridFunction& f) {
    const Grid& g = f.grid();
    const int n = g.dim();
    std::set<double> levels;
    for (double v : f.values())
        if (v > 0) levels.insert(v);
    std::vector<double> lv(levels.begin(), levels.end());
    if (lv.size() > 96) {
        std::vector<double> pick;
        for (std::size_t k = 0; k < 96; ++k) pick.push_back(lv[k * (lv.size() - 1) / 95]);
        lv = pick;
    }
    const auto zc = zero_cells(g);
    for (double r : lv) {
        std::array<std::vector<char>, 3> proj;
        for (int d = 0; d < 3; ++d) proj[d].assign(d < n ? g.cells(d) : 1, 0);
        std::size_t count = 0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (!(f[i] >= r)) continue;
            ++count;
            const Index3 c = g.unravel(i);
            for (int d = 0; d < 3; ++d) proj[d][d < n ? c[d] : 0] = 1;
        }
        std::size_t prod = 1;
        for (int d = 0; d < n; ++d) {
            const std::size_t m = static_cast<std::size_t>(std::count(proj[d].begin(), proj[d].end(), 1));
            prod *= m;
            bool has_zero = false;
            for (int k : zc[d]) has_zero = has_zero || proj[d][k];
            if (!has_zero) return false;
        }
        if (prod != count) return false;
    }
    return true;
}

// Each factor is nonincreasing away from 0 on the grid lines.
bool density_product_max_at_origin(const Density& mu, const Grid& g, std::string* why) {
    const auto factors = mu.product_factors(g.dim());
    if (!factors) {
        if (why) *why = "density is not a product of one-dimensional factors";
        return false;
    }
    for (int d = 0; d < g.dim(); ++d) {
        const Profile& phi = (*factors)[d];
        const double top = phi(0.0);
        for (int k = 0; k < g.cells(d); ++k) {
            const double x = g.center(d, k);
            if (phi(x) > top * (1.0 + 1e-12)) {
                if (why) *why = "density factor does not attain its maximum at the origin";
                return false;
            }
            const double inner = x > 0 ? x - g.step(d) : x + g.step(d);
            if (std::abs(inner) < std::abs(x) && phi(inner) < phi(x) * (1.0 - 1e-12)) {
                if (why) *why = "density factor is not quasi-concave with maximum at the origin";
                return false;
            }
        }
    }
    return true;
}

bool density_max_at_origin_1d(const Density& mu, const Grid& g) {
    const double top = mu(Point{0.0, 0.0, 0.0});
    for (int k = 0; k < g.cells(0); ++k) {
        const double x = g.center(0, k);
        const double v = mu(Point{x, 0.0, 0.0});
        if (v > top * (1.0 + 1e-12)) return false;
        const double inner = x > 0 ? x - g.step(0) : x + g.step(0);
        if (std::abs(inner) < std::abs(x) && mu(Point{inner, 0.0, 0.0}) < v * (1.0 - 1e-12)) return false;
    }
    return true;
}

bool radial_decay(const Density& mu, const SupportBody& K, int n) {
    const double m = measure_of_body(mu, K);
    for (double c : {0.25, 0.5, 0.75})
        if (measure_of_body(mu, K.scaled(c)) < std::pow(c, n) * m * (1.0 - 1e-9)) return false;
    return true;
}

// ------------------------------------------------------------ evaluation helpers

struct Eval {
    const Fixture& fx;
    const CheckParams& cp;
    CheckReport& rep;
    Grid grid;

    Eval(const Fixture& f, const CheckParams& c, CheckReport& r) : fx(f), cp(c), rep(r), grid(f.grid()) {}

    double h() const { return grid.max_step(); }

    GridFunction fn(const std::optional<FunctionSpec>& spec, const char* which) const {
        if (!spec) throw std::invalid_argument(std::string("fixture '") + fx.name + "' has no function " + which);
        return spec->build(grid);
    }
    GridFunction f() const { return fn(fx.f, "f"); }
    GridFunction g() const { return fn(fx.g, "g"); }

    const Shape& shape(const std::optional<Shape>& s, const char* which) const {
        if (!s) throw std::invalid_argument(std::string("fixture '") + fx.name + "' has no set " + which);
        if (s->dim != fx.dim) throw std::invalid_argument(std::string("set ") + which + ": dimension mismatch");
        return *s;
    }
    GridMask mask(const std::optional<Shape>& s, const char* which) const { return rasterize(shape(s, which), grid); }
    SupportBody body(const std::optional<Shape>& s, const char* which) const {
        return SupportBody::from_shape(shape(s, which), fx.directions);
    }

    ConvolutionParams conv(double p, const ExtendedReal& s) const {
        ConvolutionParams c;
        c.p = p;
        c.t = cp.t;
        c.s = s;
        c.lambda_grid = cp.lambda_grid;
        return c;
    }

    GridFunction convolve(const GridFunction& a, const GridFunction& b, const ConvolutionParams& c) {
        GridFunction out = lp_supremal_convolution(a, b, c, KernelKind::Pruned);
        if (cp.verify_kernels) {
            const GridFunction naive = lp_supremal_convolution(a, b, c, KernelKind::Naive);
            rep.kernel_difference = std::max(rep.kernel_difference.value_or(0.0), max_abs_difference(out, naive));
        }
        return out;
    }

    // (1-t) ._p A +_p t ._p B on a grid: sampled points in dimension 1, the
    // indicator convolution otherwise.
    GridMask combination(const GridMask& A, const GridMask& B, double p) {
        ConvolutionParams c = conv(p, ExtendedReal::zero());
        if (fx.dim == 1) {
            const SampledSet SA = SampledSet::from_mask(A), SB = SampledSet::from_mask(B);
            const std::vector<double> lams = lambda_nodes(c, 1.0 - cp.t, cp.t);
            const SampledSet C = lyz_combine(SA, SB, p, 1.0 - cp.t, cp.t, lams, h() / 8.0);
            double lo = HUGE_VAL, hi = -HUGE_VAL;
            for (std::size_t i = 0; i < C.size(); ++i) {
                lo = std::min(lo, C.point(i)[0]);
                hi = std::max(hi, C.point(i)[0]);
            }
            const double step = grid.step(0), g0 = grid.box().lo[0];
            const double klo = std::floor((lo - g0) / step) - 1.0, khi = std::floor((hi - g0) / step) + 2.0;
            Box b;
            b.dim = 1;
            b.lo[0] = g0 + klo * step;
            b.hi[0] = g0 + khi * step;
            return C.to_mask(Grid(b, {static_cast<int>(khi - klo), 1, 1}));
        }
        return convolve(GridFunction::indicator(A), GridFunction::indicator(B), c).support();
    }

    double tolerance(double lhs, double rhs) const {
        return 4.0 * h() * std::max(std::abs(lhs), std::abs(rhs)) * cp.tolerance_scale;
    }
};

void finish(CheckReport& r) {
    r.margin = r.lhs - r.rhs;
    bool ok = r.applicable && std::isfinite(r.margin) && r.margin >= -r.tolerance;
    if (r.kernel_difference && !(*r.kernel_difference <= 1e-12)) {
        ok = false;
        r.notes += (r.notes.empty() ? "" : "; ") + std::string("kernel mismatch");
    }
    r.pass = ok;
}

ExtendedReal density_s(const Density& mu) {
    if (mu.is_lebesgue()) return ExtendedReal::zero();
    if (mu.declared_class() == ConcavityClass::SConcave) return ExtendedReal::from_double(mu.declared_s());
    return ExtendedReal::pos_inf();
}

// Bracket of the product Prekopa-Leindler bound for one lambda.
double pli_term(double t, double lam, double n, double p, double If, double Ig) {
    const double a = lam == t ? 1.0 : (1.0 - t) / (1.0 - lam);
    const double b = lam == t ? 1.0 : t / lam;
    return std::pow(std::pow(a, 1.0 - lam) * std::pow(b, lam), n / p) * std::pow(If, 1.0 - lam) * std::pow(Ig, lam);
}

// ------------------------------------------------------------ the checks

void check_bbl(Eval& e, bool lp) {
    CheckReport& r = e.rep;
    require(r, e.fx.mu.is_lebesgue(), "inequality is stated for Lebesgue measure");
    const double p = lp ? e.cp.p : 1.0;
    r.p = p;
    const GridFunction f = e.f(), g = e.g();
    const GridFunction h = e.convolve(f, g, e.conv(p, e.cp.s));
    const Density leb = Density::lebesgue();
    const double If = integrate(leb, f), Ig = integrate(leb, g), Ih = integrate(leb, h);
    const double n = e.fx.dim;
    // gamma = alpha / (1 + n alpha) with alpha = 1/s, i.e. p / (n + s) in general.
    ExtendedReal gamma;
    switch (e.cp.s.kind()) {
        case ExtendedReal::Kind::Zero: gamma = ExtendedReal::finite(p / n); break;
        case ExtendedReal::Kind::PosInf: gamma = ExtendedReal::zero(); break;
        default: gamma = ExtendedReal::finite(p / (n + e.cp.s.value())); break;
    }
    r.lhs = Ih;
    r.rhs = generalized_mean({gamma, e.cp.t}, If, Ig);
    r.tolerance = e.tolerance(r.lhs, r.rhs);
}

void check_sets_mean(Eval& e, bool sconcave) {
    CheckReport& r = e.rep;
    const Density& mu = e.fx.mu;
    const ExtendedReal sphi = density_s(mu);
    if (!sconcave) {
        require(r, mu.is_lebesgue(), "inequality is stated for Lebesgue measure");
    } else {
        require(r, sphi.kind() != ExtendedReal::Kind::PosInf, "density is not declared (1/s)-concave");
        if (!mu.is_lebesgue()) {
            const ConcavityReport cr = classify_concavity(mu, Quadrature(e.fx.box, std::max(16, e.fx.resolution)));
            require(r, cr.holds(1e-9), "density fails the (1/s)-concavity midpoint test");
        }
    }
    r.s = sphi;
    const GridMask A = e.mask(e.fx.A, "A"), B = e.mask(e.fx.B, "B");
    const double mA = measure_of_mask(mu, A), mB = measure_of_mask(mu, B);
    const GridMask C = e.combination(A, B, e.cp.p);
    const double n = e.fx.dim;
    const double s = sphi.kind() == ExtendedReal::Kind::Finite ? sphi.value() : 0.0;
    r.lhs = measure_of_mask(mu, C);
    r.rhs = generalized_mean({ExtendedReal::finite(e.cp.p / (n + s)), e.cp.t}, mA, mB);
    r.tolerance = e.tolerance(r.lhs, r.rhs);
    if (sconcave && !mu.is_lebesgue()) r.notes = "density extended by 0 outside its support";
}

void product_density_hypotheses(Eval& e) {
    std::string why;
    if (!density_product_max_at_origin(e.fx.mu, e.grid, &why)) require(e.rep, false, why);
}

void check_pli_product(Eval& e, bool recovery) {
    CheckReport& r = e.rep;
    const double p = recovery ? 1.0 : e.cp.p;
    r.p = p;
    r.s = ExtendedReal::pos_inf();
    if (recovery) {
        require(r, e.fx.mu.is_lebesgue(), "Prekopa-Leindler recovery is stated for Lebesgue measure");
        if (e.cp.p != 1.0) r.notes = "p forced to 1";
    } else {
        product_density_hypotheses(e);
    }
    GridFunction f = e.f(), g = e.g();
    if (!recovery) {
        require(r, function_weakly_unconditional(f), "f is not weakly unconditional");
        require(r, function_weakly_unconditional(g), "g is not weakly unconditional");
        require(r, function_positively_decreasing(f), "f is not positively decreasing");
        require(r, function_positively_decreasing(g), "g is not positively decreasing");
    }
    if (f.empty_support() || g.empty_support()) throw std::invalid_argument("PLI: empty support");
    f = f.times(1.0 / f.max_value());
    g = g.times(1.0 / g.max_value());
    ConvolutionParams c = e.conv(p, ExtendedReal::pos_inf());
    const GridFunction h = e.convolve(f, g, c);
    const Density& mu = e.fx.mu;
    const double n = e.fx.dim, t = e.cp.t;
    r.lhs = integrate(mu, h);
    double best = -HUGE_VAL, arg = t;
    for (double lam : lambda_nodes(c, 1.0 - t, t)) {
        if ((lam <= 0.0 || lam >= 1.0) && lam != t) continue;
        const double ef = lam == t ? 1.0 : std::pow((1.0 - t) / (1.0 - lam), 1.0 / p);
        const double eg = lam == t ? 1.0 : std::pow(t / lam, 1.0 / p);
        const double v = pli_term(t, lam, n, p, integrate_pow(mu, f, ef), integrate_pow(mu, g, eg));
        if (v > best) {
            best = v;
            arg = lam;
        }
    }
    r.rhs = best;
    r.lambda = arg;
    r.tolerance = e.tolerance(r.lhs, r.rhs);
    if (!r.notes.empty()) r.notes += "; ";
    r.notes += "f, g normalised to max 1";
}

void check_product_sets(Eval& e, bool power_form) {
    CheckReport& r = e.rep;
    product_density_hypotheses(e);
    require(r, e.cp.p > 1.0, "stated for p > 1");
    const GridMask A = e.mask(e.fx.A, "A"), B = e.mask(e.fx.B, "B");
    require(r, is_weakly_unconditional(SampledSet::from_mask(A), 0.0), "A is not weakly unconditional");
    require(r, is_weakly_unconditional(SampledSet::from_mask(B), 0.0), "B is not weakly unconditional");
    const Density& mu = e.fx.mu;
    const double mA = measure_of_mask(mu, A), mB = measure_of_mask(mu, B);
    const double mC = measure_of_mask(mu, e.combination(A, B, e.cp.p));
    const double n = e.fx.dim, p = e.cp.p, t = e.cp.t;
    r.s = ExtendedReal::pos_inf();
    if (power_form) {
        r.lhs = std::pow(mC, p / n);
        r.rhs = (1.0 - t) * std::pow(mA, p / n) + t * std::pow(mB, p / n);
    } else {
        r.lhs = mC;
        double best = -HUGE_VAL, arg = t;
        for (double lam : lambda_nodes(e.conv(p, ExtendedReal::zero()), 1.0 - t, t)) {
            if ((lam <= 0.0 || lam >= 1.0) && lam != t) continue;
            const double v = pli_term(t, lam, n, p, mA, mB);
            if (v > best) {
                best = v;
                arg = lam;
            }
        }
        r.rhs = best;
        r.lambda = arg;
    }
    r.tolerance = e.tolerance(r.lhs, r.rhs);
}

void check_lemma_1d(Eval& e) {
    CheckReport& r = e.rep;
    require(r, e.fx.dim == 1, "lemma is one-dimensional");
    require(r, density_max_at_origin_1d(e.fx.mu, e.grid), "density is not quasi-concave with maximum at the origin");
    const Shape& SA = e.shape(e.fx.A, "A");
    const Shape& SB = e.shape(e.fx.B, "B");
    require(r, SA.contains({0.0, 0.0, 0.0}) && SB.contains({0.0, 0.0, 0.0}), "A and B must contain the origin");
    const GridMask A = rasterize(SA, e.grid), B = rasterize(SB, e.grid);
    const Density& mu = e.fx.mu;
    const double mA = measure_of_mask(mu, A), mB = measure_of_mask(mu, B);
    r.lhs = measure_of_mask(mu, e.combination(A, B, e.cp.p));
    double best = -HUGE_VAL, arg = e.cp.t;
    for (double lam : lambda_nodes(e.conv(e.cp.p, ExtendedReal::zero()), 1.0 - e.cp.t, e.cp.t)) {
        const auto [wA, wB] = lp_weights(e.cp.p, 1.0 - e.cp.t, e.cp.t, lam);
        const double v = wA * mA + wB * mB;
        if (v > best) {
            best = v;
            arg = lam;
        }
    }
    r.rhs = best;
    r.lambda = arg;
    r.s = ExtendedReal::zero();
    r.tolerance = e.tolerance(r.lhs, r.rhs);
}

void check_mfi(Eval& e) {
    CheckReport& r = e.rep;
    const Density& mu = e.fx.mu;
    const double n = e.fx.dim, p = e.cp.p;
    FSpec F;
    if (e.cp.s.is_pos_inf()) {
        require(r, mu.is_log_concave(), "s = +inf needs a log-concave measure");
        F = FSpec::log();
    } else {
        require(r, mu.is_lebesgue(), "finite s is covered for Lebesgue measure");
        const double s = e.cp.s.is_zero() ? 0.0 : e.cp.s.value();
        F = FSpec::power(p / (n + s));
    }
    const GridFunction f = e.f(), g = e.g();
    const EpsSchedule sched;
    const QuotientTable Sfg = surface_area(mu, f, g, p, e.cp.s, sched, e.cp.lambda_grid);
    const QuotientTable Sff = surface_area(mu, f, f, p, e.cp.s, sched, e.cp.lambda_grid);
    const double If = integrate(mu, f), Ig = integrate(mu, g);
    r.lhs = Sfg.value();
    r.rhs = Sff.value() + (F(Ig) - F(If)) / F.derivative(If);
    r.tolerance = e.tolerance(r.lhs, r.rhs);
    char buf[160];
    std::snprintf(buf, sizeof buf, "F=%s; richardson S(f,g)=%.6g S(f,f)=%.6g", F.name().c_str(), Sfg.richardson,
                  Sff.richardson);
    r.notes = buf;
}

void check_ismi(Eval& e) {
    CheckReport& r = e.rep;
    const Density& mu = e.fx.mu;
    const double n = e.fx.dim, p = e.cp.p;
    const SupportBody A = e.body(e.fx.A, "A"), B = e.body(e.fx.B, "B");
    require(r, A.origin_interior() && B.origin_interior(), "bodies must contain the origin in their interiors");
    FSpec F = FSpec::power(p / n);
    r.s = ExtendedReal::zero();
    if (mu.is_lebesgue()) {
    } else if (mu.declared_class() == ConcavityClass::SConcave) {
        F = FSpec::power(p / (n + mu.declared_s()));
        r.s = ExtendedReal::from_double(mu.declared_s());
    } else {
        product_density_hypotheses(e);
        require(r, p > 1.0, "product measures need p > 1");
        require(r, is_weakly_unconditional(SampledSet::from_mask(e.mask(e.fx.A, "A")), 0.0) &&
                       is_weakly_unconditional(SampledSet::from_mask(e.mask(e.fx.B, "B")), 0.0),
                "bodies must be weakly unconditional");
        r.s = ExtendedReal::pos_inf();
    }
    if (!r.applicable) {
        r.lhs = r.rhs = kNaN;
        return;
    }
    const QuotientTable V = mixed_volume_VpF(mu, F, A, B, p);
    const ResidualReport M = residual_MpF(mu, F, A, p);
    const double d1 = F.derivative(1.0);
    const double mA = M.measure, mB = measure_of_body(mu, B);
    r.lhs = V.value() + d1 * M.residual;
    r.rhs = d1 * (F(mB) - F(mA)) / F.derivative(mA) + mA;
    r.tolerance = e.tolerance(r.lhs, r.rhs);
    char buf[160];
    std::snprintf(buf, sizeof buf, "F=%s; V=%.9g; M=%.9g", F.name().c_str(), V.value(), M.residual);
    r.notes = buf;
}

void check_gz_functional(Eval& e, bool min_rule) {
    CheckReport& r = e.rep;
    product_density_hypotheses(e);
    const GridFunction f = e.f(), g = e.g();
    require(r, max_at_origin(f) && max_at_origin(g), "f and g must attain their maxima at the origin");
    require(r, std::abs(f.max_value() - g.max_value()) <= 1e-12 * std::max(f.max_value(), g.max_value()),
            "||f||_inf != ||g||_inf");
    require(r, level_sets_are_products(f) && level_sets_are_products(g),
            "super-level sets are not products of sets containing the origin");
    ConvolutionParams c = e.conv(min_rule ? 1.0 : e.cp.p, ExtendedReal::finite(1.0));
    if (min_rule) c.rule = CombineRule::Min;
    r.p = c.p;
    r.s = min_rule ? ExtendedReal::pos_inf() : ExtendedReal::finite(1.0);
    const GridFunction h = e.convolve(f, g, c);
    require(r, max_at_origin(h), "h does not attain its maximum at the origin");
    const Density& mu = e.fx.mu;
    const double n = e.fx.dim, t = e.cp.t;
    r.lhs = integrate(mu, h);
    r.rhs = std::pow((1.0 - t) * std::pow(integrate(mu, f), 1.0 / n) + t * std::pow(integrate(mu, g), 1.0 / n), n);
    r.tolerance = e.tolerance(r.lhs, r.rhs);
    if (min_rule) r.notes = "h from the min rule";
}

void check_gz_bodies(Eval& e, bool radial) {
    CheckReport& r = e.rep;
    const Density& mu = e.fx.mu;
    const SupportBody K = e.body(e.fx.A, "A"), L = e.body(e.fx.B, "B");
    require(r, K.origin_interior() && L.origin_interior(), "bodies must contain the origin in their interiors");
    const double n = e.fx.dim, p = e.cp.p, t = e.cp.t;
    if (radial) {
        require(r, radial_decay(mu, K, e.fx.dim) && radial_decay(mu, L, e.fx.dim), "measure lacks radial decay");
    } else {
        require(r, mu.is_log_concave(), "measure is not log-concave");
        r.s = ExtendedReal::pos_inf();
    }
    if (!r.applicable) {
        r.lhs = r.rhs = kNaN;
        return;
    }
    const double mK = measure_of_body(mu, K), mL = measure_of_body(mu, L);
    const double mC = measure_of_body(mu, firey_combine(K, L, p, 1.0 - t, t));
    const double bracket = (1.0 - t) * std::pow(mK, p / n) + t * std::pow(mL, p / n);
    r.lhs = std::pow(mC, p / n);
    if (radial) {
        r.rhs = 0.5 * bracket;
        r.tolerance = e.tolerance(r.lhs, r.rhs);
        return;
    }
    r.rhs = bracket;
    if (!(mC > 0)) throw std::invalid_argument("GZ constant: zero-measure combination");
    const double C = std::pow(bracket / r.lhs, 1.0 / p);
    r.instance_constant = C;
    r.tolerance = 0.0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "C_instance=%.12g", C);
    r.notes = buf;
}

}  // namespace

const std::vector<TheoremId>& all_theorems() {
    static const std::vector<TheoremId> ids = [] {
        std::vector<TheoremId> v;
        for (const auto& [id, name] : names()) v.push_back(id);
        return v;
    }();
    return ids;
}

std::string to_string(TheoremId id) {
    for (const auto& [k, name] : names())
        if (k == id) return name;
    return "?";
}

std::optional<TheoremId> parse_theorem(std::string_view name) {
    for (const auto& [k, n] : names())
        if (name == n) return k;
    return std::nullopt;
}

FunctionSpec FunctionSpec::indicator(const Shape& s, double height) {
    FunctionSpec f;
    f.kind = Kind::Indicator;
    f.shape = s;
    f.height = height;
    return f;
}

FunctionSpec FunctionSpec::radial(const Profile& p, double height) {
    FunctionSpec f;
    f.kind = Kind::Radial;
    f.profile = p;
    f.height = height;
    return f;
}

FunctionSpec FunctionSpec::product(std::vector<Profile> factors, double height) {
    FunctionSpec f;
    f.kind = Kind::Product;
    f.factors = std::move(factors);
    f.height = height;
    return f;
}

double FunctionSpec::operator()(const Point& x, int dim) const {
    switch (kind) {
        case Kind::Indicator: return shape.contains(x) ? height : 0.0;
        case Kind::Radial: {
            double r2 = 0.0;
            for (int d = 0; d < dim; ++d) r2 += (x[d] - center[d]) * (x[d] - center[d]);
            return height * profile(std::sqrt(r2));
        }
        case Kind::Product: {
            if (static_cast<int>(factors.size()) != dim)
                throw std::invalid_argument("product function: factor count differs from the dimension");
            double v = height;
            for (int d = 0; d < dim; ++d) v *= factors[d](x[d] - center[d]);
            return v;
        }
    }
    return 0.0;
}

GridFunction FunctionSpec::build(const Grid& grid) const {
    if (!(height > 0)) throw std::invalid_argument("function height must be positive");
    if (kind == Kind::Indicator && shape.dim != grid.dim())
        throw std::invalid_argument("indicator function: dimension mismatch");
    const int dim = grid.dim();
    return GridFunction::sample(grid, [this, dim](const Point& x) { return (*this)(x, dim); });
}

CheckReport check_inequality(TheoremId id, const Fixture& fixture, const CheckParams& params) {
    if (fixture.dim < 1 || fixture.dim > 3 || fixture.box.dim != fixture.dim)
        throw std::invalid_argument("fixture '" + fixture.name + "': dimension mismatch between fixture and box");
    if (fixture.mu.dim() != 0 && fixture.mu.dim() != fixture.dim)
        throw std::invalid_argument("fixture '" + fixture.name + "': density dimension mismatch");
    if (!(params.p >= 1.0) || !(params.t >= 0.0 && params.t <= 1.0))
        throw std::invalid_argument("check parameters: need p >= 1 and t in [0,1]");
    CheckReport r;
    r.id = id;
    r.fixture = fixture.name;
    r.p = params.p;
    r.t = params.t;
    r.s = params.s;
    Eval e(fixture, params, r);
    switch (id) {
        case TheoremId::BBL: check_bbl(e, false); break;
        case TheoremId::LP_BBL: check_bbl(e, true); break;
        case TheoremId::LP_BMI_SETS: check_sets_mean(e, false); break;
        case TheoremId::LP_BMI_SCONCAVE: check_sets_mean(e, true); break;
        case TheoremId::LP_PLI_PRODUCT: check_pli_product(e, false); break;
        case TheoremId::PL_RECOVERY: check_pli_product(e, true); break;
        case TheoremId::LP_PLI_SETS: check_product_sets(e, false); break;
        case TheoremId::LP_BMI_PRODUCT: check_product_sets(e, true); break;
        case TheoremId::LEMMA_1D: check_lemma_1d(e); break;
        case TheoremId::MFI: check_mfi(e); break;
        case TheoremId::ISMI: check_ismi(e); break;
        case TheoremId::GZ_PRODUCT_MIN: check_gz_functional(e, true); break;
        case TheoremId::GZ_LP_PRODUCT: check_gz_functional(e, false); break;
        case TheoremId::GZ_LOGCONCAVE_C: check_gz_bodies(e, false); break;
        case TheoremId::GZ_RADIAL_DECAY: check_gz_bodies(e, true); break;
    }
    finish(r);
    if (id == TheoremId::GZ_LOGCONCAVE_C && r.applicable) {
        // Reported constant, not an inequality: pass means a finite C below 10.
        r.pass = r.instance_constant && std::isfinite(*r.instance_constant) && *r.instance_constant < 10.0;
    }
    if (!r.applicable) {
        std::string why;
        for (const auto& v : r.hypothesis_violations) why += (why.empty() ? "" : "; ") + v;
        r.notes = "inapplicable: " + why + (r.notes.empty() ? "" : "; " + r.notes);
    }
    return r;
}

std::vector<CheckReport> sweep(TheoremId id, const Fixture& fixture, const std::vector<double>& ps,
                               const std::vector<double>& ts, const std::vector<ExtendedReal>& ss,
                               const CheckParams& base) {
    struct Point3 {
        double p, t;
        ExtendedReal s;
    };
    std::vector<Point3> pts;
    for (double p : ps)
        for (double t : ts)
            for (const auto& s : ss) pts.push_back({p, t, s});
    std::vector<CheckReport> out(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        CheckParams cp = base;
        cp.p = pts[i].p;
        cp.t = pts[i].t;
        cp.s = pts[i].s;
        out[i] = check_inequality(id, fixture, cp);
    });
    return out;
}

GzEstimate estimate_gz_constant(const std::vector<Fixture>& family, const std::vector<double>& ps,
                                const std::vector<double>& ts) {
    GzEstimate est;
    est.C = 1.0;
    double worst = -HUGE_VAL;
    for (const Fixture& fx : family) {
        if (!fx.mu.is_log_concave()) {
            est.skipped.push_back(fx.name + ": measure is not log-concave");
            continue;
        }
        const ConcavityReport cr = classify_concavity(fx.mu, Quadrature(fx.box, std::max(16, fx.resolution)));
        if (!cr.holds(1e-9)) {
            est.skipped.push_back(fx.name + ": log-concavity test failed");
            continue;
        }
        for (double p : ps)
            for (double t : ts) {
                CheckParams cp;
                cp.p = p;
                cp.t = t;
                CheckReport r;
                try {
                    r = check_inequality(TheoremId::GZ_LOGCONCAVE_C, fx, cp);
                } catch (const std::invalid_argument& ex) {
                    est.skipped.push_back(fx.name + ": " + ex.what());
                    continue;
                }
                if (!r.applicable || !r.instance_constant) {
                    est.skipped.push_back(fx.name + ": " + r.notes);
                    continue;
                }
                ++est.instances;
                if (*r.instance_constant > worst) {
                    worst = *r.instance_constant;
                    est.witness = fx.name;
                    est.p = p;
                    est.t = t;
                }
            }
    }
    est.C = std::max(1.0, worst);
    return est;
}

// ------------------------------------------------------------ built-in suite

namespace {

Fixture fixture1d(const std::string& name, double lo, double hi, int res) {
    Fixture fx;
    fx.name = name;
    fx.dim = 1;
    fx.box = Box::cube(1, lo, hi);
    fx.resolution = res;
    return fx;
}

Fixture fixture2d(const std::string& name, double lo, double hi, int res) {
    Fixture fx;
    fx.name = name;
    fx.dim = 2;
    fx.box = Box::cube(2, lo, hi);
    fx.resolution = res;
    return fx;
}

Shape rect(double x0, double x1, double y0, double y1) {
    Box b;
    b.dim = 2;
    b.lo = {x0, y0, 0.0};
    b.hi = {x1, y1, 0.0};
    return Shape::box_shape(b);
}

std::vector<double> t_grid() { return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}; }

}  // namespace

std::vector<Fixture> builtin_gz_family() {
    std::vector<Fixture> fam;
    {
        Fixture fx = fixture1d("gauss1_sym", -4, 4, 128);
        fx.mu = Density::gaussian(1);
        fx.A = Shape::interval(-1, 1);
        fx.B = Shape::interval(-1, 1);
        fam.push_back(fx);
    }
    {
        Fixture fx = fixture1d("gauss1_nested", -4, 4, 128);
        fx.mu = Density::gaussian(1);
        fx.A = Shape::interval(-1, 1);
        fx.B = Shape::interval(-2, 2);
        fam.push_back(fx);
    }
    {
        Fixture fx = fixture1d("gauss1_shifted", -4, 4, 128);
        fx.mu = Density::gaussian(1);
        fx.A = Shape::interval(-0.2, 2.5);
        fx.B = Shape::interval(-1.5, 0.1);
        fam.push_back(fx);
    }
    {
        Fixture fx = fixture1d("logexp1", -6, 6, 128);
        fx.mu = Density::log_concave_exp(1, {0.0, 1.0, 2.0}, {0.0, 0.5, 2.0});
        fx.A = Shape::interval(-0.1, 3.0);
        fx.B = Shape::interval(-2.0, 0.3);
        fam.push_back(fx);
    }
    {
        Fixture fx = fixture2d("gauss2_disc_box", -4, 4, 64);
        fx.mu = Density::gaussian(2);
        fx.A = Shape::ball(2, {0.0, 0.0, 0.0}, 1.0);
        fx.B = rect(-0.3, 2.0, -0.5, 0.4);
        fam.push_back(fx);
    }
    {
        Fixture fx = fixture2d("gauss2_triangle", -4, 4, 64);
        fx.mu = Density::gaussian(2);
        fx.A = Shape::polygon({{-0.2, -0.2}, {2.5, -0.2}, {-0.2, 2.5}});
        fx.B = Shape::ball(2, {0.0, 0.0, 0.0}, 0.3);
        fam.push_back(fx);
    }
    return fam;
}

std::vector<SuiteEntry> builtin_suite() {
    std::vector<SuiteEntry> s;
    const std::vector<double> pgrid{1.0, 1.5, 2.0, 4.0};
    const std::vector<ExtendedReal> sgrid{ExtendedReal::zero(), ExtendedReal::finite(1.0), ExtendedReal::finite(2.0),
                                          ExtendedReal::pos_inf()};
    const std::vector<ExtendedReal> s1{ExtendedReal::finite(1.0)};
    const std::vector<ExtendedReal> sinf{ExtendedReal::pos_inf()};

    // Functions for the L_p-BBL family.
    std::vector<Fixture> fns;
    {
        Fixture fx = fixture1d("indicators_1d", -2, 2, 128);
        fx.f = FunctionSpec::indicator(Shape::interval(-0.5, 1.0));
        fx.g = FunctionSpec::indicator(Shape::interval(-1.0, 0.25), 2.0);
        fns.push_back(fx);
    }
    {
        Fixture fx = fixture1d("triangular_1d", -2, 2, 128);
        fx.f = FunctionSpec::radial(Profile::triangular(1.0));
        fx.g = FunctionSpec::radial(Profile::triangular(0.6), 1.5);
        fns.push_back(fx);
    }
    {
        Fixture fx = fixture1d("gaussian_1d", -3, 3, 128);
        fx.f = FunctionSpec::radial(Profile::gaussian(0.5));
        fx.g = FunctionSpec::radial(Profile::gaussian(0.8), 0.7);
        fns.push_back(fx);
    }
    for (const Fixture& fx : fns) {
        s.push_back({TheoremId::BBL, fx, {1.0}, t_grid(), sgrid, {}});
        s.push_back({TheoremId::LP_BBL, fx, pgrid, t_grid(), sgrid, {}});
    }
    {
        Fixture fx = fixture2d("cones_2d", -1.5, 1.5, 32);
        fx.f = FunctionSpec::radial(Profile::triangular(1.0));
        fx.g = FunctionSpec::indicator(rect(-0.5, 0.5, -0.25, 0.75));
        CheckParams cp;
        cp.lambda_grid = 33;
        s.push_back({TheoremId::LP_BBL, fx, {1.0, 2.0}, {0.3, 0.7}, {ExtendedReal::finite(1.0)}, cp});
    }

    // Sets under Lebesgue measure.
    {
        Fixture fx = fixture1d("intervals_1d", -2, 3, 128);
        fx.A = Shape::interval(0.0, 1.0);
        fx.B = Shape::interval(-0.5, 1.5);
        s.push_back({TheoremId::LP_BMI_SETS, fx, pgrid, t_grid(), s1, {}});
        Fixture eq = fx;
        eq.name = "equal_intervals_1d";
        eq.B = eq.A;
        s.push_back({TheoremId::LP_BMI_SETS, eq, {2.0}, {0.5}, s1, {}});
    }
    {
        Fixture fx = fixture2d("rectangles_2d", -1.5, 1.5, 48);
        fx.A = rect(0.0, 1.0, 0.0, 0.5);
        fx.B = rect(-0.5, 0.5, -0.25, 0.75);
        CheckParams cp;
        cp.lambda_grid = 33;
        s.push_back({TheoremId::LP_BMI_SETS, fx, {1.0, 2.0}, {0.3, 0.5}, s1, cp});
    }

    // (1/s)-concave densities.
    {
        Fixture fx = fixture1d("triangular_density_1d", -2, 2, 128);
        fx.mu = Density::s_concave_power(1, 1.0, Profile::triangular(1.0));
        fx.A = Shape::interval(0.0, 0.5);
        fx.B = Shape::interval(0.0, 0.8);
        s.push_back({TheoremId::LP_BMI_SCONCAVE, fx, pgrid, t_grid(), s1, {}});
        Fixture eq = fx;
        eq.name = "triangular_density_equal_1d";
        eq.B = eq.A;
        s.push_back({TheoremId::LP_BMI_SCONCAVE, eq, {1.0, 2.0}, {0.5}, s1, {}});
    }
    {
        Fixture fx = fixture2d("cone_density_2d", -1.5, 1.5, 48);
        fx.mu = Density::s_concave_power(2, 1.0, Profile::triangular(1.5));
        fx.A = rect(-0.25, 0.5, -0.25, 0.5);
        fx.B = Shape::ball(2, {0.2, 0.0, 0.0}, 0.5);
        CheckParams cp;
        cp.lambda_grid = 33;
        s.push_back({TheoremId::LP_BMI_SCONCAVE, fx, {1.0, 2.0}, {0.3, 0.5, 0.7}, s1, cp});
    }

    // Product measures.
    {
        Fixture fx = fixture2d("gauss_product_2d", -2, 2, 32);
        fx.mu = Density::gaussian(2);
        fx.f = FunctionSpec::radial(Profile::gaussian(0.6));
        fx.g = FunctionSpec::product({Profile::triangular(1.2), Profile::gaussian(0.5)}, 0.8);
        fx.A = rect(-0.5, 1.0, 0.0, 0.8);
        fx.B = rect(-1.0, 0.3, -0.2, 0.6);
        CheckParams cp;
        cp.lambda_grid = 33;
        s.push_back({TheoremId::LP_PLI_PRODUCT, fx, {1.0, 2.0}, {0.3, 0.5}, sinf, cp});
        s.push_back({TheoremId::LP_PLI_SETS, fx, {1.5, 2.0, 4.0}, {0.3, 0.5, 0.7}, sinf, cp});
        s.push_back({TheoremId::LP_BMI_PRODUCT, fx, {1.5, 2.0, 4.0}, {0.3, 0.5, 0.7}, sinf, cp});
    }
    {
        Fixture fx = fixture2d("triangular_product_2d", -1.5, 1.5, 32);
        fx.mu = Density::quasi_concave_product({Profile::triangular(1.5), Profile::triangular(1.5)});
        fx.f = FunctionSpec::product({Profile::triangular(1.0), Profile::triangular(0.8)});
        fx.g = FunctionSpec::radial(Profile::gaussian(0.5));
        fx.A = rect(-0.5, 0.75, 0.0, 0.5);
        fx.B = rect(0.0, 1.0, -0.75, 0.25);
        CheckParams cp;
        cp.lambda_grid = 33;
        s.push_back({TheoremId::LP_PLI_PRODUCT, fx, {2.0}, {0.3, 0.5}, sinf, cp});
        s.push_back({TheoremId::LP_BMI_PRODUCT, fx, {2.0, 4.0}, {0.3, 0.7}, sinf, cp});
    }
    {
        Fixture fx = fixture1d("gauss_product_1d", -3, 3, 192);
        fx.mu = Density::gaussian(1);
        fx.f = FunctionSpec::radial(Profile::gaussian(0.7));
        fx.g = FunctionSpec::radial(Profile::triangular(1.0), 0.5);
        fx.A = Shape::interval(-0.5, 1.0);
        fx.B = Shape::interval(-1.0, 0.2);
        s.push_back({TheoremId::LP_PLI_PRODUCT, fx, {1.0, 1.5, 2.0, 4.0}, t_grid(), sinf, {}});
        s.push_back({TheoremId::LP_PLI_SETS, fx, {1.5, 2.0, 4.0}, t_grid(), sinf, {}});
        s.push_back({TheoremId::LP_BMI_PRODUCT, fx, {1.5, 2.0, 4.0}, t_grid(), sinf, {}});
        s.push_back({TheoremId::LEMMA_1D, fx, {1.0, 2.0, 4.0}, t_grid(), s1, {}});
    }
    {
        // Deliberately not weakly unconditional.
        Fixture fx = fixture2d("shifted_boxes_2d", -1.5, 1.5, 24);
        fx.mu = Density::gaussian(2);
        fx.f = FunctionSpec::indicator(rect(0.25, 1.0, 0.25, 1.0));
        fx.g = FunctionSpec::indicator(rect(0.5, 1.25, 0.0, 0.5));
        fx.A = rect(0.25, 1.0, 0.25, 1.0);
        fx.B = rect(0.5, 1.25, 0.0, 0.5);
        CheckParams cp;
        cp.lambda_grid = 33;
        s.push_back({TheoremId::LP_PLI_PRODUCT, fx, {2.0}, {0.5}, sinf, cp});
        s.push_back({TheoremId::LP_BMI_PRODUCT, fx, {2.0}, {0.5}, sinf, cp});
    }
    {
        Fixture fx = fixture1d("gaussians_lebesgue_1d", -3, 3, 192);
        fx.f = FunctionSpec::radial(Profile::gaussian(0.5));
        fx.g = FunctionSpec::radial(Profile::gaussian(0.9), 0.6);
        s.push_back({TheoremId::PL_RECOVERY, fx, {1.0}, t_grid(), sinf, {}});
    }

    // Surface-area functionals.
    {
        Fixture fx = fixture1d("triangles_mfi_1d", -2, 2, 128);
        fx.f = FunctionSpec::radial(Profile::triangular(1.0));
        fx.g = FunctionSpec::radial(Profile::triangular(0.6), 1.4);
        CheckParams cp;
        cp.lambda_grid = 65;
        s.push_back({TheoremId::MFI, fx, {1.0, 2.0}, {0.5}, {ExtendedReal::finite(1.0), ExtendedReal::finite(2.0)},
                     cp});
        Fixture gx = fixture1d("gaussians_mfi_1d", -3, 3, 128);
        gx.mu = Density::gaussian(1);
        gx.f = FunctionSpec::radial(Profile::gaussian(0.6));
        gx.g = FunctionSpec::radial(Profile::gaussian(0.4), 1.3);
        s.push_back({TheoremId::MFI, gx, {1.0, 2.0}, {0.5}, sinf, cp});
    }
    {
        Fixture fx = fixture1d("intervals_ismi_1d", -3, 3, 128);
        fx.A = Shape::interval(-1.0, 1.0);
        fx.B = Shape::interval(-0.5, 1.5);
        s.push_back({TheoremId::ISMI, fx, {1.0, 2.0, 4.0}, {0.5}, s1, {}});
        Fixture eq = fx;
        eq.name = "equal_intervals_ismi_1d";
        eq.B = eq.A;
        s.push_back({TheoremId::ISMI, eq, {1.0, 2.0}, {0.5}, s1, {}});
        Fixture tri = fx;
        tri.name = "triangular_density_ismi_1d";
        tri.mu = Density::s_concave_power(1, 1.0, Profile::triangular(2.0));
        s.push_back({TheoremId::ISMI, tri, {1.0, 2.0}, {0.5}, s1, {}});
    }
    {
        Fixture fx = fixture2d("bodies_ismi_2d", -3, 3, 64);
        fx.A = Shape::ball(2, {0.0, 0.0, 0.0}, 1.0);
        fx.B = Shape::polygon({{-0.5, -0.5}, {1.5, -0.5}, {-0.5, 1.0}});
        s.push_back({TheoremId::ISMI, fx, {1.0, 2.0}, {0.5}, s1, {}});
        Fixture gx = fx;
        gx.name = "gauss_boxes_ismi_2d";
        gx.mu = Density::gaussian(2);
        gx.A = rect(-0.5, 1.0, -0.5, 0.8);
        gx.B = rect(-1.0, 0.5, -0.25, 1.0);
        s.push_back({TheoremId::ISMI, gx, {2.0}, {0.5}, sinf, {}});
    }

    // Gardner-Zvavitch family.
    {
        Fixture fx = fixture2d("products_gz_2d", -1.5, 1.5, 33);
        fx.mu = Density::gaussian(2);
        fx.f = FunctionSpec::product({Profile::triangular(1.0), Profile::box(0.6)});
        fx.g = FunctionSpec::product({Profile::box(0.4), Profile::triangular(1.2)});
        CheckParams cp;
        cp.lambda_grid = 33;
        s.push_back({TheoremId::GZ_PRODUCT_MIN, fx, {1.0}, {0.3, 0.5, 0.7}, sinf, cp});
        s.push_back({TheoremId::GZ_LP_PRODUCT, fx, {1.0, 2.0}, {0.3, 0.7}, s1, cp});
        Fixture rad = fx;
        rad.name = "radial_gz_2d";
        rad.f = FunctionSpec::radial(Profile::triangular(1.0));
        s.push_back({TheoremId::GZ_PRODUCT_MIN, rad, {1.0}, {0.5}, sinf, cp});
    }
    {
        Fixture fx = fixture1d("products_gz_1d", -2, 2, 129);
        fx.mu = Density::quasi_concave_product({Profile::cauchy(1.0)});
        fx.f = FunctionSpec::radial(Profile::triangular(1.0));
        fx.g = FunctionSpec::radial(Profile::gaussian(0.4));
        s.push_back({TheoremId::GZ_PRODUCT_MIN, fx, {1.0}, t_grid(), sinf, {}});
        s.push_back({TheoremId::GZ_LP_PRODUCT, fx, {1.0, 2.0, 4.0}, t_grid(), s1, {}});
    }
    for (const Fixture& fx : builtin_gz_family())
        s.push_back({TheoremId::GZ_LOGCONCAVE_C, fx, {1.0, 2.0, 4.0}, {0.1, 0.5, 0.9}, sinf, {}});
    {
        Fixture fx = fixture1d("gauss_radial_decay_1d", -4, 4, 128);
        fx.mu = Density::gaussian(1);
        fx.A = Shape::interval(-1.0, 1.0);
        fx.B = Shape::interval(-0.5, 1.5);
        s.push_back({TheoremId::GZ_RADIAL_DECAY, fx, {1.0, 2.0, 4.0}, t_grid(), s1, {}});
        Fixture cx = fixture2d("cone_radial_decay_2d", -2, 2, 64);
        cx.mu = Density::s_concave_power(2, 1.0, Profile::triangular(2.0));
        cx.A = Shape::ball(2, {0.0, 0.0, 0.0}, 1.0);
        cx.B = Shape::polygon({{-0.3, -0.3}, {1.5, -0.3}, {-0.3, 1.2}});
        s.push_back({TheoremId::GZ_RADIAL_DECAY, cx, {1.0, 2.0}, {0.3, 0.7}, s1, {}});
    }
    return s;
}

std::vector<CheckReport> run_selftest(double tolerance_scale, bool verify_kernels) {
    std::vector<CheckReport> out;
    for (SuiteEntry& e : builtin_suite()) {
        e.base.tolerance_scale = tolerance_scale;
        e.base.verify_kernels = verify_kernels;
        auto rs = sweep(e.id, e.fixture, e.ps, e.ts, e.ss, e.base);
        out.insert(out.end(), rs.begin(), rs.end());
    }
    return out;
}

}  // namespace lpbm

#include "lpbm/revolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lpbm/parallel.hpp"

namespace lpbm {

namespace {

struct Cell {
    Point x;
    double w;
};

std::vector<Cell> support_cells(const GridFunction& f, int stride_target = 0) {
    std::vector<Cell> out;
    const Grid& g = f.grid();
    if (stride_target <= 0) {
        for (std::size_t i = 0; i < g.size(); ++i)
            if (f[i] > 0) out.push_back({g.center(i), f[i]});
        return out;
    }
    auto [lo, hi] = f.support_index_bbox();
    Index3 stride{1, 1, 1};
    for (int d = 0; d < g.dim(); ++d)
        stride[d] = std::max(1, (hi[d] - lo[d] + 1 + stride_target - 1) / stride_target);
    auto axis_nodes = [&](int d) {
        std::vector<int> v;
        if (d >= g.dim()) return std::vector<int>{0};
        for (int k = lo[d]; k <= hi[d]; k += stride[d]) v.push_back(k);
        if (v.back() != hi[d]) v.push_back(hi[d]);
        return v;
    };
    const auto n0 = axis_nodes(0), n1 = axis_nodes(1), n2 = axis_nodes(2);
    for (int c : n2)
        for (int b : n1)
            for (int a : n0) {
                const std::size_t i = g.index({a, b, c});
                if (f[i] > 0) out.push_back({g.center(i), f[i]});
            }
    return out;
}

// Sorted norms of the fibre lattice centres on [-R, R]^ell.
std::vector<double> fiber_norms(int ell, double R, int cells, double& cell_volume) {
    const double h = 2.0 * R / cells;
    cell_volume = std::pow(h, ell);
    std::size_t total = 1;
    for (int k = 0; k < ell; ++k) total *= static_cast<std::size_t>(cells);
    std::vector<double> norms(total);
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t r = i;
        double s = 0.0;
        for (int k = 0; k < ell; ++k) {
            const double c = -R + (static_cast<double>(r % cells) + 0.5) * h;
            r /= cells;
            s += c * c;
        }
        norms[i] = std::sqrt(s);
    }
    std::sort(norms.begin(), norms.end());
    return norms;
}

double count_volume(const GridFunction& w, int copies, int ell, int fiber_cells) {
    if (copies < 1 || ell < 1) throw std::invalid_argument("revolution: copies and fibre dimension must be >= 1");
    if (w.dim() * copies + ell > 4) throw std::invalid_argument("revolution: dimension budget exceeded (nm + l > 4)");
    const std::vector<Cell> cells = support_cells(w);
    if (cells.empty()) return 0.0;
    double wmax = 0.0;
    for (const Cell& c : cells) wmax = std::max(wmax, c.w);
    const double R = std::pow(wmax, static_cast<double>(copies) / ell);
    double vf = 0.0;
    const std::vector<double> norms = fiber_norms(ell, R, fiber_cells, vf);
    std::vector<double> vals(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) vals[i] = cells[i].w;
    // Sum over tuples of base cells; the fibre radius depends on the product only.
    std::vector<double> products{1.0};
    for (int m = 0; m < copies; ++m) {
        std::vector<double> next;
        next.reserve(products.size() * vals.size());
        for (double p : products)
            for (double v : vals) next.push_back(p * v);
        products.swap(next);
    }
    std::vector<double> counts(products.size());
    for (std::size_t i = 0; i < products.size(); ++i) {
        const double r = std::pow(products[i], 1.0 / ell);
        counts[i] = static_cast<double>(std::upper_bound(norms.begin(), norms.end(), r) - norms.begin());
    }
    return pairwise_sum(counts) * std::pow(w.grid().cell_volume(), copies) * vf;
}

Point to_point(const double* x, int n) {
    Point p{0.0, 0.0, 0.0};
    for (int d = 0; d < n; ++d) p[d] = x[d];
    return p;
}

// Coarse samples of B_s(w): base tuples times fibre points with |y| <= r.
SampledSet sample_body(const GridFunction& w, int copies, int ell, int samples) {
    const int n = w.dim();
    const std::vector<Cell> cells = support_cells(w, samples);
    std::vector<std::vector<double>> unit;
    {
        const double nodes[5] = {-1.0, -0.5, 0.0, 0.5, 1.0};
        std::size_t total = 1;
        for (int k = 0; k < ell; ++k) total *= 5;
        for (std::size_t i = 0; i < total; ++i) {
            std::vector<double> y(ell);
            std::size_t r = i;
            double s = 0.0;
            for (int k = 0; k < ell; ++k) {
                y[k] = nodes[r % 5];
                r /= 5;
                s += y[k] * y[k];
            }
            if (s <= 1.0 + 1e-12) unit.push_back(y);
        }
        if (ell >= 2) {
            const double c = std::numbers::sqrt2 / 2.0;
            for (double a : {-c, c})
                for (double b : {-c, c}) {
                    std::vector<double> y(ell, 0.0);
                    y[0] = a;
                    y[1] = b;
                    unit.push_back(y);
                }
        }
    }
    const int dim = n * copies + ell;
    std::vector<double> coords;
    std::vector<std::size_t> idx(copies, 0);
    while (true) {
        double prod = 1.0;
        for (int m = 0; m < copies; ++m) prod *= cells[idx[m]].w;
        const double r = std::pow(prod, 1.0 / ell);
        for (const auto& y : unit) {
            for (int m = 0; m < copies; ++m)
                for (int d = 0; d < n; ++d) coords.push_back(cells[idx[m]].x[d]);
            for (int k = 0; k < ell; ++k) coords.push_back(r * y[k]);
        }
        int m = 0;
        while (m < copies && ++idx[m] == cells.size()) idx[m++] = 0;
        if (m == copies) break;
    }
    return SampledSet::from_points(dim, std::move(coords));
}

}  // namespace

double unit_ball_volume(int k) {
    if (k < 0) throw std::invalid_argument("unit_ball_volume: negative dimension");
    return std::pow(std::numbers::pi, 0.5 * k) / std::tgamma(0.5 * k + 1.0);
}

double revolution_volume(const RevolutionBody& body) {
    if (body.fiber_dim < 1) throw std::invalid_argument("revolution: fibre dimension must be >= 1");
    return unit_ball_volume(body.fiber_dim) * integrate(Density::lebesgue(), body.profile);
}

double revolution_volume(const RevolutionBody& body, const Quadrature& q) {
    if (body.fiber_dim < 1) throw std::invalid_argument("revolution: fibre dimension must be >= 1");
    return unit_ball_volume(body.fiber_dim) * integrate(Density::lebesgue(), body.profile, q);
}

double revolution_volume_direct(const RevolutionBody& body, int fiber_cells) {
    return count_volume(body.profile, 1, body.fiber_dim, fiber_cells);
}

GridMask revolution_region(const RevolutionBody& body, int fiber_cells) {
    const GridFunction& w = body.profile;
    const int n = w.dim(), s = body.fiber_dim;
    if (s < 1) throw std::invalid_argument("revolution: fibre dimension must be >= 1");
    if (n + s > 3) throw std::invalid_argument("revolution_region: n + s must be <= 3");
    const double R = w.empty_support() ? 1.0 : std::pow(w.max_value(), 1.0 / s);
    Box b;
    b.dim = n + s;
    Index3 cells{1, 1, 1};
    for (int d = 0; d < n; ++d) {
        b.lo[d] = w.grid().box().lo[d];
        b.hi[d] = w.grid().box().hi[d];
        cells[d] = w.grid().cells(d);
    }
    for (int d = n; d < n + s; ++d) {
        b.lo[d] = -R;
        b.hi[d] = R;
        cells[d] = fiber_cells;
    }
    Grid g(b, cells);
    GridMask mask(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Index3 c = g.unravel(i);
        Index3 base{0, 0, 0};
        for (int d = 0; d < n; ++d) base[d] = c[d];
        const double v = w[w.grid().index(base)];
        if (!(v > 0)) continue;
        double y2 = 0.0;
        for (int d = n; d < n + s; ++d) y2 += g.center(d, c[d]) * g.center(d, c[d]);
        mask.inside[i] = std::sqrt(y2) <= std::pow(v, 1.0 / s);
    }
    return mask;
}

double multiple_volume(const MultipleFunction& mf, int ell) {
    if (mf.copies < 1 || ell < 1) throw std::invalid_argument("multiple_volume: copies and ell must be >= 1");
    return unit_ball_volume(ell) * std::pow(integrate(Density::lebesgue(), mf.base), mf.copies);
}

double multiple_volume_direct(const MultipleFunction& mf, int ell, int fiber_cells) {
    return count_volume(mf.base, mf.copies, ell, fiber_cells);
}

InclusionReport check_inclusion_lemma(const GridFunction& f, const GridFunction& g, const ConvolutionParams& params,
                                      int copies, int samples_per_axis) {
    params.validate();
    if (params.combine_rule() != CombineRule::Power)
        throw std::invalid_argument("inclusion lemma: s must be a positive finite rational");
    const double s = params.s.value();
    const double ell_d = s * copies;
    const int ell = static_cast<int>(std::lround(ell_d));
    if (ell < 1 || std::abs(ell_d - ell) > 1e-9)
        throw std::invalid_argument("inclusion lemma: s * copies must be a positive integer");
    const int n = f.dim();
    if (n * copies + ell > 4) throw std::invalid_argument("inclusion lemma: dimension budget exceeded (nm + l > 4)");

    const GridFunction h = lp_supremal_convolution(f, g, params);
    const SampledSet A = sample_body(f, copies, ell, samples_per_axis);
    const SampledSet B = sample_body(g, copies, ell, samples_per_axis);
    const int lg = params.p == 1.0 ? 2 : params.lambda_grid;
    const SampledSet C = lyz_combine(A, B, params.p, 1.0 - params.t, params.t, lg);

    const double tol = h.grid().max_step();
    InclusionReport rep;
    rep.points = C.size();
    rep.worst_excess = -HUGE_VAL;
    for (std::size_t i = 0; i < C.size(); ++i) {
        const double* z = C.point(i);
        double prod = 1.0;
        for (int m = 0; m < copies; ++m) prod *= h.max_near(to_point(z + m * n, n), 1);
        double y2 = 0.0;
        for (int k = 0; k < ell; ++k) y2 += z[n * copies + k] * z[n * copies + k];
        const double excess = prod > 0 ? std::sqrt(y2) - std::pow(prod, 1.0 / ell) : HUGE_VAL;
        rep.worst_excess = std::max(rep.worst_excess, excess);
        if (excess > tol) ++rep.violations;
    }
    return rep;
}

RadialBody ball_body(const std::function<double(const Point&)>& f, int dim, double fmax, double reach, double q,
                     int directions) {
    if (!(q > 0)) throw std::invalid_argument("ball_body: q must be positive");
    if (!(fmax > 0)) throw std::invalid_argument("ball_body: zero function");
    RadialBody K = RadialBody::with_directions(dim, directions);
    constexpr int kNodes = 4096;
    parallel_for(K.size(), [&](std::size_t k) {
        const Point u = K.direction(k);
        auto at = [&](double r) {
            Point x{0.0, 0.0, 0.0};
            for (int d = 0; d < dim; ++d) x[d] = r * u[d];
            return f(x);
        };
        int last = -1;
        for (int i = 0; i < kNodes; ++i)
            if (at((i + 0.5) * reach / kNodes) >= 1e-12 * fmax) last = i;
        const double R = (last + 1) * reach / kNodes;
        if (R <= 0) {
            K.rho[k] = 0.0;
            return;
        }
        std::vector<double> terms(kNodes);
        const double dr = R / kNodes;
        for (int i = 0; i < kNodes; ++i) {
            const double r = (i + 0.5) * dr;
            terms[i] = at(r) * std::pow(r, q - 1.0) * dr;
        }
        K.rho[k] = std::pow(q / fmax * pairwise_sum(terms), 1.0 / q);
    });
    return K;
}

RadialBody ball_body(const GridFunction& f, double q, int directions) {
    const double fmax = f.max_value();
    if (!(fmax > 0)) throw std::invalid_argument("ball_body: zero integral");
    if (f.value_at_origin() < fmax * (1.0 - 1e-12))
        throw std::invalid_argument("ball_body: f must attain its maximum at the origin");
    const Box& b = f.grid().box();
    double reach2 = 0.0;
    for (int d = 0; d < f.dim(); ++d) {
        const double e = std::max(std::abs(b.lo[d]), std::abs(b.hi[d]));
        reach2 += e * e;
    }
    return ball_body([&f](const Point& x) { return f.value_at(x); }, f.dim(), fmax, std::sqrt(reach2), q, directions);
}

LevelBody level_body(const GridFunction& f, int directions) {
    const int n = f.dim();
    const Grid& g = f.grid();
    const double thr = std::exp(-static_cast<double>(n)) * f.max_value();
    GridMask mask(g);
    for (std::size_t i = 0; i < g.size(); ++i) mask.inside[i] = f[i] > 0 && f[i] >= thr;
    if (mask.empty()) throw std::invalid_argument("level_body: threshold level is empty");
    LevelBody out{mask, SampledSet::from_mask(mask), ball_body(f, n, directions), 1.0, true};
    double ratio = 1.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!mask.inside[i]) continue;
        const Point c = g.center(i);
        double r2 = 0.0;
        for (int d = 0; d < n; ++d) r2 += c[d] * c[d];
        if (r2 == 0.0) continue;
        const double rho = out.K.radius_toward(c);
        ratio = rho > 0 ? std::max(ratio, std::sqrt(r2) / rho) : HUGE_VAL;
    }
    out.km_ratio = ratio;
    double diag2 = 0.0;
    for (int d = 0; d < n; ++d) diag2 += g.step(d) * g.step(d);
    const double diag = std::sqrt(diag2);
    for (std::size_t k = 0; k < out.K.size(); ++k) {
        const double r = out.K.rho[k] - diag;
        if (r <= 0) continue;
        const Point u = out.K.direction(k);
        Point x{0.0, 0.0, 0.0};
        for (int d = 0; d < n; ++d) x[d] = r * u[d];
        if (f.value_at(x) < thr) out.contains_K = false;
    }
    return out;
}

}  // namespace lpbm

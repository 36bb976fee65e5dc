#include "lpbm/supconv.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "lpbm/means.hpp"
#include "lpbm/parallel.hpp"

namespace lpbm {

namespace {

constexpr double kNone = -std::numeric_limits<double>::infinity();

// Sparse table answering box-maximum queries over a sub-box of a grid.
class RangeMax {
public:
    RangeMax(const Grid& g, const std::vector<double>& v, const Index3& lo, const Index3& hi) : dim_(g.dim()), off_(lo) {
        total_ = 1;
        for (int d = 0; d < 3; ++d) {
            n_[d] = d < dim_ ? hi[d] - lo[d] + 1 : 1;
            levels_[d] = std::bit_width(static_cast<unsigned>(n_[d]));
            total_ *= static_cast<std::size_t>(n_[d]);
        }
        const std::size_t blocks = static_cast<std::size_t>(levels_[0]) * levels_[1] * levels_[2];
        if (blocks * total_ > (std::size_t{1} << 26))
            throw std::invalid_argument("supremal convolution: input support too large for the pruned kernel");
        data_.assign(blocks * total_, kNone);
        for (int z = 0; z < n_[2]; ++z)
            for (int y = 0; y < n_[1]; ++y)
                for (int x = 0; x < n_[0]; ++x)
                    data_[idx(x, y, z)] = v[g.index({x + off_[0], y + off_[1], z + off_[2]})];
        for (int axis = 0; axis < 3; ++axis) {
            for (int l2 = 0; l2 < levels_[2]; ++l2)
                for (int l1 = 0; l1 < levels_[1]; ++l1)
                    for (int l0 = 0; l0 < levels_[0]; ++l0) {
                        const int l[3] = {l0, l1, l2};
                        if (l[axis] == 0) continue;
                        // Levels on later axes are built from complete earlier ones.
                        bool ready = true;
                        for (int a = axis + 1; a < 3; ++a) ready = ready && l[a] == 0;
                        if (!ready) continue;
                        int src[3] = {l0, l1, l2};
                        src[axis] -= 1;
                        const std::size_t ob = block(l0, l1, l2), sb = block(src[0], src[1], src[2]);
                        const int half = 1 << (l[axis] - 1);
                        for (int z = 0; z < n_[2]; ++z)
                            for (int y = 0; y < n_[1]; ++y)
                                for (int x = 0; x < n_[0]; ++x) {
                                    int c[3] = {x, y, z};
                                    if (c[axis] + 2 * half > n_[axis]) continue;
                                    int e[3] = {x, y, z};
                                    e[axis] += half;
                                    data_[ob + idx(x, y, z)] =
                                        std::max(data_[sb + idx(x, y, z)], data_[sb + idx(e[0], e[1], e[2])]);
                                }
                    }
        }
    }

    double query(const Index3& a, const Index3& b) const {
        int k[3] = {0, 0, 0}, p0[3] = {0, 0, 0}, p1[3] = {0, 0, 0};
        for (int d = 0; d < dim_; ++d) {
            const int s = a[d] - off_[d], e = b[d] - off_[d];
            const int len = e - s + 1;
            k[d] = std::bit_width(static_cast<unsigned>(len)) - 1;
            p0[d] = s;
            p1[d] = e - (1 << k[d]) + 1;
        }
        const std::size_t bl = block(k[0], k[1], k[2]);
        double m = kNone;
        const int c1 = dim_ > 1 ? 2 : 1, c2 = dim_ > 2 ? 2 : 1;
        for (int u = 0; u < 2; ++u)
            for (int w = 0; w < c1; ++w)
                for (int r = 0; r < c2; ++r)
                    m = std::max(m, data_[bl + idx(u ? p1[0] : p0[0], w ? p1[1] : p0[1], r ? p1[2] : p0[2])]);
        return m;
    }

private:
    std::size_t idx(int x, int y, int z) const {
        return (static_cast<std::size_t>(z) * n_[1] + y) * n_[0] + x;
    }
    std::size_t block(int l0, int l1, int l2) const {
        return ((static_cast<std::size_t>(l2) * levels_[1] + l1) * levels_[0] + l0) * total_;
    }

    int dim_;
    Index3 off_;
    int n_[3] = {1, 1, 1};
    int levels_[3] = {1, 1, 1};
    std::size_t total_ = 1;
    std::vector<double> data_;
};

struct Combiner {
    CombineRule rule;
    double s;

    double transform(double v) const {
        if (!(v > 0)) return kNone;
        switch (rule) {
            case CombineRule::Power: return std::pow(v, 1.0 / s);
            case CombineRule::Geometric: return std::log(v);
            default: return v;
        }
    }

    double operator()(double a, double b, double wA, double wB) const {
        switch (rule) {
            case CombineRule::Power: return std::pow(wA * a + wB * b, s);
            case CombineRule::Geometric: return std::exp(wA * a + wB * b);
            case CombineRule::Max: return std::max(wA > 0 ? a : 0.0, wB > 0 ? b : 0.0);
            case CombineRule::Min:
                if (wA > 0 && wB > 0) return std::min(a, b);
                return wA > 0 ? a : b;
        }
        return 0.0;
    }
};

// Extent of wA * C_i + wB * C_j along one axis; both kernels use only this.
inline void pair_bounds(const Grid& fg, const Grid& gg, int d, int i, int j, double wA, double wB, double& lo,
                        double& hi) {
    lo = wA * fg.cell_lo(d, i) + wB * gg.cell_lo(d, j);
    hi = wA * fg.cell_hi(d, i) + wB * gg.cell_hi(d, j);
}

struct Side {
    const Grid* grid;
    std::vector<double> tv;
    Index3 lo{0, 0, 0}, hi{0, 0, 0};
    double max_all = kNone;
    std::vector<std::size_t> cells;
};

Side prepare(const GridFunction& f, const Combiner& c) {
    Side s;
    s.grid = &f.grid();
    s.tv.resize(f.values().size());
    for (std::size_t i = 0; i < s.tv.size(); ++i) {
        s.tv[i] = c.transform(f[i]);
        if (s.tv[i] != kNone) {
            s.cells.push_back(i);
            s.max_all = std::max(s.max_all, s.tv[i]);
        }
    }
    auto [lo, hi] = f.support_index_bbox();
    s.lo = lo;
    s.hi = hi;
    return s;
}

struct Node {
    double wA, wB;
};

Grid fitted_grid(const GridFunction& f, const GridFunction& g, const std::vector<Node>& nodes, const Index3& cells) {
    const Box fb = f.support_bbox(), gb = g.support_bbox();
    Box out;
    out.dim = f.dim();
    Index3 n{1, 1, 1};
    for (int d = 0; d < out.dim; ++d) {
        double lo = HUGE_VAL, hi = -HUGE_VAL;
        for (const Node& nd : nodes) {
            lo = std::min(lo, nd.wA * fb.lo[d] + nd.wB * gb.lo[d]);
            hi = std::max(hi, nd.wA * fb.hi[d] + nd.wB * gb.hi[d]);
        }
        const double h = std::min(f.grid().step(d), g.grid().step(d));
        if (!(hi > lo)) {
            lo -= 0.5 * h;
            hi += 0.5 * h;
        }
        out.lo[d] = lo;
        out.hi[d] = hi;
        n[d] = cells[d] > 0 ? cells[d] : std::max(1, static_cast<int>(std::lround((hi - lo) / h)));
    }
    return Grid(out, n);
}

class Kernel {
public:
    Kernel(const GridFunction& f, const GridFunction& g, const std::vector<Node>& nodes, const Combiner& c,
           const Grid& out)
        : F_(prepare(f, c)), G_(prepare(g, c)), nodes_(nodes), comb_(c), out_(out), dim_(f.dim()) {}

    std::vector<double> naive() const {
        const std::size_t T = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), nodes_.size());
        std::vector<std::vector<double>> buffers(T, std::vector<double>(out_.size(), 0.0));
        parallel_for(T, [&](std::size_t w) {
            std::vector<double>& buf = buffers[w];
            std::array<std::vector<int>, 3> ks;
            for (std::size_t n = w; n < nodes_.size(); n += T) {
                const double wA = nodes_[n].wA, wB = nodes_[n].wB;
                for (std::size_t fi : F_.cells) {
                    const Index3 i = F_.grid->unravel(fi);
                    for (std::size_t gj : G_.cells) {
                        const Index3 j = G_.grid->unravel(gj);
                        bool any = true;
                        for (int d = 0; d < 3; ++d) {
                            ks[d].clear();
                            if (d >= dim_) {
                                ks[d].push_back(0);
                                continue;
                            }
                            double lo, hi;
                            pair_bounds(*F_.grid, *G_.grid, d, i[d], j[d], wA, wB, lo, hi);
                            const double olo = out_.box().lo[d], oh = out_.step(d);
                            const int kmin = std::max(0, static_cast<int>(std::ceil((lo - olo) / oh - 0.5)) - 1);
                            const int kmax =
                                std::min(out_.cells(d) - 1, static_cast<int>(std::floor((hi - olo) / oh - 0.5)) + 1);
                            for (int k = kmin; k <= kmax; ++k) {
                                const double z = out_.center(d, k);
                                if (lo <= z && z <= hi) ks[d].push_back(k);
                            }
                            if (ks[d].empty()) {
                                any = false;
                                break;
                            }
                        }
                        if (!any) continue;
                        const double v = comb_(F_.tv[fi], G_.tv[gj], wA, wB);
                        for (int c : ks[2])
                            for (int b : ks[1])
                                for (int a : ks[0]) {
                                    double& o = buf[out_.index({a, b, c})];
                                    o = std::max(o, v);
                                }
                    }
                }
            }
        });
        std::vector<double> out(out_.size(), 0.0);
        for (const auto& b : buffers)
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(out[i], b[i]);
        return out;
    }

    std::vector<double> pruned() const {
        const RangeMax rf(*F_.grid, F_.tv, F_.lo, F_.hi);
        const RangeMax rg(*G_.grid, G_.tv, G_.lo, G_.hi);
        std::vector<double> out(out_.size(), 0.0);
        const std::size_t block = 32;
        const std::size_t nblocks = (out_.size() + block - 1) / block;
        parallel_for(nblocks, [&](std::size_t b) {
            std::vector<std::pair<Index3, Index3>> fstack, jstack;
            for (std::size_t o = b * block; o < std::min(out_.size(), (b + 1) * block); ++o)
                out[o] = gather(out_.center(o), rf, rg, fstack, jstack);
        });
        return out;
    }

private:
    bool jrange(const Index3& a, const Index3& b, const Point& z, double wA, double wB, Index3& ja, Index3& jb) const {
        ja = {0, 0, 0};
        jb = {0, 0, 0};
        for (int d = 0; d < dim_; ++d) {
            const double flo = F_.grid->cell_lo(d, a[d]), fhi = F_.grid->cell_hi(d, b[d]);
            if (wB > 0) {
                const double ylo = (z[d] - wA * fhi) / wB, yhi = (z[d] - wA * flo) / wB;
                const double g0 = G_.grid->box().lo[d], gh = G_.grid->step(d);
                double klo = std::floor((ylo - g0) / gh) - 1.0, khi = std::floor((yhi - g0) / gh) + 1.0;
                klo = std::max(klo, static_cast<double>(G_.lo[d]));
                khi = std::min(khi, static_cast<double>(G_.hi[d]));
                if (klo > khi) return false;
                ja[d] = static_cast<int>(klo);
                jb[d] = static_cast<int>(khi);
            } else {
                const double tol = 1e-9 * (std::abs(z[d]) + std::abs(wA * flo) + std::abs(wA * fhi)) + 1e-300;
                if (z[d] < wA * flo - tol || z[d] > wA * fhi + tol) return false;
                ja[d] = G_.lo[d];
                jb[d] = G_.hi[d];
            }
        }
        return true;
    }

    int longest(const Index3& a, const Index3& b) const {
        int ax = -1, len = 0;
        for (int d = 0; d < dim_; ++d)
            if (b[d] - a[d] > len) {
                len = b[d] - a[d];
                ax = d;
            }
        return ax;
    }

    double gather(const Point& z, const RangeMax& rf, const RangeMax& rg, std::vector<std::pair<Index3, Index3>>& fstack,
                  std::vector<std::pair<Index3, Index3>>& jstack) const {
        double best = 0.0;
        bool found = false;
        for (const Node& nd : nodes_) {
            const double wA = nd.wA, wB = nd.wB;
            if (found && comb_(F_.max_all, G_.max_all, wA, wB) <= best) continue;
            fstack.clear();
            fstack.push_back({F_.lo, F_.hi});
            while (!fstack.empty()) {
                const auto [a, b] = fstack.back();
                fstack.pop_back();
                Index3 ja, jb;
                if (!jrange(a, b, z, wA, wB, ja, jb)) continue;
                const double mf = rf.query(a, b);
                if (mf == kNone) continue;
                const double mg = rg.query(ja, jb);
                if (mg == kNone) continue;
                if (found && comb_(mf, mg, wA, wB) <= best) continue;
                const int ax = longest(a, b);
                if (ax >= 0) {
                    const int mid = (a[ax] + b[ax]) / 2;
                    Index3 b1 = b, a2 = a;
                    b1[ax] = mid;
                    a2[ax] = mid + 1;
                    fstack.push_back({a2, b});
                    fstack.push_back({a, b1});
                    continue;
                }
                const double fa = F_.tv[F_.grid->index(a)];
                jstack.clear();
                jstack.push_back({ja, jb});
                while (!jstack.empty()) {
                    const auto [c, e] = jstack.back();
                    jstack.pop_back();
                    const double mg2 = rg.query(c, e);
                    if (mg2 == kNone) continue;
                    if (found && comb_(fa, mg2, wA, wB) <= best) continue;
                    const int jax = longest(c, e);
                    if (jax >= 0) {
                        const int mid = (c[jax] + e[jax]) / 2;
                        Index3 e1 = e, c2 = c;
                        e1[jax] = mid;
                        c2[jax] = mid + 1;
                        jstack.push_back({c2, e});
                        jstack.push_back({c, e1});
                        continue;
                    }
                    bool inside = true;
                    for (int d = 0; d < dim_ && inside; ++d) {
                        double lo, hi;
                        pair_bounds(*F_.grid, *G_.grid, d, a[d], c[d], wA, wB, lo, hi);
                        inside = lo <= z[d] && z[d] <= hi;
                    }
                    if (!inside) continue;
                    const double v = comb_(fa, G_.tv[G_.grid->index(c)], wA, wB);
                    if (!found || v > best) best = v;
                    found = true;
                }
            }
        }
        return found ? best : 0.0;
    }

    Side F_, G_;
    std::vector<Node> nodes_;
    Combiner comb_;
    Grid out_;
    int dim_;
};

}  // namespace

CombineRule rule_for(const ExtendedReal& s) {
    switch (s.kind()) {
        case ExtendedReal::Kind::Zero: return CombineRule::Max;
        case ExtendedReal::Kind::PosInf: return CombineRule::Geometric;
        case ExtendedReal::Kind::NegInf: throw std::invalid_argument("supremal convolution: s must be in [0, +inf]");
        case ExtendedReal::Kind::Finite:
            if (s.value() < 0) throw std::invalid_argument("supremal convolution: s must be in [0, +inf]");
            return CombineRule::Power;
    }
    return CombineRule::Power;
}

const char* to_string(CombineRule r) {
    switch (r) {
        case CombineRule::Power: return "power";
        case CombineRule::Max: return "max";
        case CombineRule::Geometric: return "geometric";
        case CombineRule::Min: return "min";
    }
    return "?";
}

void ConvolutionParams::validate() const {
    if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("convolution: p must be finite and >= 1");
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("convolution: t must lie in [0,1]");
    (void)combine_rule();
    if (lambdas.empty() && lambda_grid < 2) throw std::invalid_argument("convolution: lambda grid needs >= 2 points");
    for (double l : lambdas)
        if (!(l >= 0.0 && l <= 1.0)) throw std::invalid_argument("convolution: lambda nodes must lie in [0,1]");
}

std::vector<double> lambda_nodes(const ConvolutionParams& params, double alpha, double beta) {
    if (!params.lambdas.empty()) return params.lambdas;
    const double lh = alpha + beta > 0 ? beta / (alpha + beta) : 0.5;
    if (params.p == 1.0) return {lh};
    std::vector<double> l = uniform_lambdas(params.lambda_grid);
    bool present = false;
    for (double v : l) present = present || std::abs(v - lh) <= 1e-15;
    // The Hoelder node goes first: it usually attains the supremum.
    std::vector<double> out{lh};
    for (double v : l)
        if (std::abs(v - lh) > 1e-15) out.push_back(v);
    (void)present;
    return out;
}

GridFunction scale_ps(const GridFunction& f, double alpha, double p, const ExtendedReal& s) {
    if (!(alpha > 0) || !std::isfinite(alpha)) throw std::invalid_argument("scale_ps: alpha must be positive");
    if (!(p >= 1)) throw std::invalid_argument("scale_ps: p must be >= 1");
    const double c = std::pow(alpha, 1.0 / p);
    Box b = f.grid().box();
    for (int d = 0; d < b.dim; ++d) {
        b.lo[d] *= c;
        b.hi[d] *= c;
    }
    Grid g(b, f.grid().cells());
    std::vector<double> v = f.values();
    switch (rule_for(s)) {
        case CombineRule::Power: {
            const double pre = std::pow(alpha, s.value() / p);
            for (double& x : v) x *= pre;
            break;
        }
        case CombineRule::Geometric:
            for (double& x : v)
                if (x > 0) x = std::pow(x, c);
            break;
        default: break;
    }
    return GridFunction(g, std::move(v));
}

GridFunction oplus_ps(const GridFunction& f, const GridFunction& g, const ConvolutionParams& params, double alpha,
                      double beta, KernelKind kernel) {
    params.validate();
    if (f.dim() != g.dim()) throw std::invalid_argument("oplus_ps: dimension mismatch");
    if (f.empty_support() || g.empty_support()) throw std::invalid_argument("oplus_ps: empty support");
    if (!(alpha >= 0) || !(beta >= 0) || !(alpha + beta > 0))
        throw std::invalid_argument("oplus_ps: coefficients must be nonnegative and not both zero");
    const CombineRule rule = params.combine_rule();
    const Combiner comb{rule, rule == CombineRule::Power ? params.s.value() : 0.0};
    std::vector<Node> nodes;
    for (double l : lambda_nodes(params, alpha, beta)) {
        const auto [wA, wB] = lp_weights(params.p, alpha, beta, l);
        if (wA == 0.0 && wB == 0.0) continue;
        nodes.push_back({wA, wB});
    }
    const Grid out = fitted_grid(f, g, nodes, params.output_cells);
    Kernel k(f, g, nodes, comb, out);
    return GridFunction(out, kernel == KernelKind::Naive ? k.naive() : k.pruned());
}

GridFunction lp_supremal_convolution(const GridFunction& f, const GridFunction& g, const ConvolutionParams& params,
                                     KernelKind kernel) {
    return oplus_ps(f, g, params, 1.0 - params.t, params.t, kernel);
}

GridMask lp_combination(const GridMask& A, const GridMask& B, double p, double alpha, double beta, int lambda_grid,
                        KernelKind kernel) {
    ConvolutionParams cp;
    cp.p = p;
    cp.s = ExtendedReal::zero();
    cp.lambda_grid = lambda_grid;
    return oplus_ps(GridFunction::indicator(A), GridFunction::indicator(B), cp, alpha, beta, kernel).support();
}

GridFunction resample(const GridFunction& f, const Grid& target) {
    if (target.dim() != f.dim()) throw std::invalid_argument("resample: dimension mismatch");
    std::vector<double> v(target.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.value_at(target.center(i));
    std::vector<double> out = v;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] > 0) continue;
        const Index3 c = target.unravel(i);
        double m = 0.0;
        for (int dz = (f.dim() > 2 ? -1 : 0); dz <= (f.dim() > 2 ? 1 : 0); ++dz)
            for (int dy = (f.dim() > 1 ? -1 : 0); dy <= (f.dim() > 1 ? 1 : 0); ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    const Index3 n{c[0] + dx, c[1] + dy, c[2] + dz};
                    bool ok = true;
                    for (int d = 0; d < f.dim(); ++d) ok = ok && n[d] >= 0 && n[d] < target.cells(d);
                    if (ok) m = std::max(m, v[target.index(n)]);
                }
        out[i] = m;
    }
    return GridFunction(target, std::move(out));
}

double check_concavity_preservation(const GridFunction& f, const GridFunction& g, const ConvolutionParams& params) {
    const GridFunction h = lp_supremal_convolution(f, g, params);
    const CombineRule rule = params.combine_rule();
    const Grid& grid = h.grid();
    const double s = rule == CombineRule::Power ? params.s.value() : 0.0;
    auto violation = [&](std::size_t x, std::size_t y, std::size_t m) {
        const double hx = h[x], hy = h[y], hm = h[m];
        switch (rule) {
            case CombineRule::Power:
                return std::pow(hm, 1.0 / s) - 0.5 * (std::pow(hx, 1.0 / s) + std::pow(hy, 1.0 / s));
            case CombineRule::Geometric:
                if (!(hm > 0)) return -std::numeric_limits<double>::max();
                return std::log(hm) - 0.5 * (std::log(hx) + std::log(hy));
            case CombineRule::Max: return hm - std::max(hx, hy);
            case CombineRule::Min: return hm - std::min(hx, hy);
        }
        return 0.0;
    };
    std::vector<std::size_t> supp;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (h[i] > 0) supp.push_back(i);
    double worst = 0.0;
    auto visit = [&](std::size_t x, std::size_t y) {
        const Index3 a = grid.unravel(x), b = grid.unravel(y);
        Index3 m{0, 0, 0};
        for (int d = 0; d < grid.dim(); ++d) {
            if ((a[d] + b[d]) % 2 != 0) return;
            m[d] = (a[d] + b[d]) / 2;
        }
        worst = std::min(worst, violation(x, y, grid.index(m)));
    };
    if (grid.dim() == 1 || supp.size() <= 600) {
        for (std::size_t i = 0; i < supp.size(); ++i)
            for (std::size_t j = i + 1; j < supp.size(); ++j) visit(supp[i], supp[j]);
    } else {
        std::mt19937_64 rng(0x5eedULL);
        std::uniform_int_distribution<std::size_t> pick(0, supp.size() - 1);
        for (int k = 0; k < 200000; ++k) visit(supp[pick(rng)], supp[pick(rng)]);
    }
    return worst;
}

double max_abs_difference(const GridFunction& a, const GridFunction& b) {
    if (!a.grid().same_as(b.grid())) return std::numeric_limits<double>::infinity();
    double m = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace lpbm

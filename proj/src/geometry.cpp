#include "lpbm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

#include <boost/math/quadrature/gauss.hpp>

#include "lpbm/means.hpp"
#include "lpbm/parallel.hpp"

namespace lpbm {

namespace {

double cross(const Vec2& a, const Vec2& b, const Vec2& c) {
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

double signed_area(const std::vector<Vec2>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[(i + 1) % v.size()];
        s += a[0] * b[1] - a[1] * b[0];
    }
    return 0.5 * s;
}

// Sutherland-Hodgman step: keep the part of poly with <n, x> <= b.
std::vector<Vec2> clip(const std::vector<Vec2>& poly, const Vec2& n, double b) {
    std::vector<Vec2> out;
    if (poly.empty()) return out;
    out.reserve(poly.size() + 1);
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2& cur = poly[i];
        const Vec2& nxt = poly[(i + 1) % poly.size()];
        const double dc = n[0] * cur[0] + n[1] * cur[1] - b;
        const double dn = n[0] * nxt[0] + n[1] * nxt[1] - b;
        if (dc <= 0) out.push_back(cur);
        if ((dc < 0 && dn > 0) || (dc > 0 && dn < 0)) {
            const double s = dc / (dc - dn);
            out.push_back({cur[0] + s * (nxt[0] - cur[0]), cur[1] + s * (nxt[1] - cur[1])});
        }
    }
    return out;
}

std::vector<Vec2> halfplane_polygon(const std::vector<Vec2>& normals, const std::vector<double>& offsets,
                                    double bound) {
    std::vector<Vec2> poly{{-bound, -bound}, {bound, -bound}, {bound, bound}, {-bound, bound}};
    for (std::size_t k = 0; k < normals.size(); ++k) poly = clip(poly, normals[k], offsets[k]);
    return poly;
}

}  // namespace

// ---------------------------------------------------------------- Shape

Shape Shape::interval(double a, double b) {
    if (!(b >= a)) throw std::invalid_argument("interval: upper end below lower end");
    Shape s;
    s.kind = Kind::Interval;
    s.dim = 1;
    s.box.dim = 1;
    s.box.lo[0] = a;
    s.box.hi[0] = b;
    return s;
}

Shape Shape::box_shape(const Box& b) {
    for (int d = 0; d < b.dim; ++d)
        if (!(b.hi[d] >= b.lo[d])) throw std::invalid_argument("box: upper corner below lower corner");
    Shape s;
    s.kind = b.dim == 1 ? Kind::Interval : Kind::Box;
    s.dim = b.dim;
    s.box = b;
    return s;
}

Shape Shape::ball(int dim, const Point& center, double radius) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("ball: dimension must be 1..3");
    if (!(radius >= 0)) throw std::invalid_argument("ball: negative radius");
    Shape s;
    s.kind = Kind::Ball;
    s.dim = dim;
    s.center = center;
    s.radius = radius;
    return s;
}

Shape Shape::polygon(std::vector<Vec2> vertices) {
    if (vertices.size() < 3) throw std::invalid_argument("polygon: need at least 3 vertices");
    if (signed_area(vertices) < 0) std::reverse(vertices.begin(), vertices.end());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const std::size_t n = vertices.size();
        if (cross(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]) < -1e-12)
            throw std::invalid_argument("polygon: vertices do not form a convex polygon");
    }
    Shape s;
    s.kind = Kind::Polygon;
    s.dim = 2;
    s.vertices = std::move(vertices);
    return s;
}

Shape Shape::halfspaces(int dim, std::vector<Point> normals, std::vector<double> offsets) {
    if (normals.size() != offsets.size() || normals.empty())
        throw std::invalid_argument("halfspaces: need matching, nonempty normal/offset lists");
    Shape s;
    s.kind = Kind::HalfSpaces;
    s.dim = dim;
    if (dim == 1) {
        double lo = -std::numeric_limits<double>::infinity(), hi = -lo;
        for (std::size_t k = 0; k < normals.size(); ++k) {
            const double n = normals[k][0];
            if (n > 0) hi = std::min(hi, offsets[k] / n);
            else if (n < 0) lo = std::max(lo, offsets[k] / n);
            else if (offsets[k] < 0) throw std::invalid_argument("halfspaces: empty intersection");
        }
        if (!std::isfinite(lo) || !std::isfinite(hi)) throw std::invalid_argument("halfspaces: unbounded set");
        if (hi < lo) throw std::invalid_argument("halfspaces: empty intersection");
        s.box.dim = 1;
        s.box.lo[0] = lo;
        s.box.hi[0] = hi;
    } else if (dim == 2) {
        std::vector<Vec2> n2;
        for (const auto& n : normals) n2.push_back({n[0], n[1]});
        const double big = 1e6;
        auto poly = halfplane_polygon(n2, offsets, big);
        if (poly.size() < 3) throw std::invalid_argument("halfspaces: empty or degenerate intersection");
        for (const auto& v : poly)
            if (std::abs(v[0]) >= big * 0.999 || std::abs(v[1]) >= big * 0.999)
                throw std::invalid_argument("halfspaces: unbounded set");
        s.vertices = poly;
    } else {
        throw std::invalid_argument("halfspaces: only dimensions 1 and 2 are supported");
    }
    s.normals = std::move(normals);
    s.offsets = std::move(offsets);
    return s;
}

bool Shape::contains(const Point& x) const {
    switch (kind) {
        case Kind::Interval:
        case Kind::Box:
            for (int d = 0; d < dim; ++d)
                if (x[d] < box.lo[d] || x[d] > box.hi[d]) return false;
            return true;
        case Kind::Ball: {
            double r2 = 0.0;
            for (int d = 0; d < dim; ++d) r2 += (x[d] - center[d]) * (x[d] - center[d]);
            return r2 <= radius * radius;
        }
        case Kind::HalfSpaces:
            if (dim == 1) return x[0] >= box.lo[0] && x[0] <= box.hi[0];
            for (std::size_t k = 0; k < normals.size(); ++k) {
                double v = 0.0;
                for (int d = 0; d < dim; ++d) v += normals[k][d] * x[d];
                if (v > offsets[k]) return false;
            }
            return true;
        case Kind::Polygon: {
            const Vec2 p{x[0], x[1]};
            for (std::size_t i = 0; i < vertices.size(); ++i)
                if (cross(vertices[i], vertices[(i + 1) % vertices.size()], p) < -1e-14) return false;
            return true;
        }
    }
    return false;
}

double Shape::support(const Point& u) const {
    switch (kind) {
        case Kind::Interval:
        case Kind::Box: {
            double h = 0.0;
            for (int d = 0; d < dim; ++d) h += std::max(box.lo[d] * u[d], box.hi[d] * u[d]);
            return h;
        }
        case Kind::Ball: {
            double h = 0.0, n2 = 0.0;
            for (int d = 0; d < dim; ++d) {
                h += center[d] * u[d];
                n2 += u[d] * u[d];
            }
            return h + radius * std::sqrt(n2);
        }
        case Kind::HalfSpaces:
            if (dim == 1) return std::max(box.lo[0] * u[0], box.hi[0] * u[0]);
            [[fallthrough]];
        case Kind::Polygon: {
            double h = -std::numeric_limits<double>::infinity();
            for (const auto& v : vertices) h = std::max(h, v[0] * u[0] + v[1] * u[1]);
            return h;
        }
    }
    return 0.0;
}

Box Shape::bounding_box() const {
    Box b;
    b.dim = dim;
    switch (kind) {
        case Kind::Interval:
        case Kind::Box: return box;
        case Kind::Ball:
            for (int d = 0; d < dim; ++d) {
                b.lo[d] = center[d] - radius;
                b.hi[d] = center[d] + radius;
            }
            return b;
        case Kind::HalfSpaces:
            if (dim == 1) return box;
            [[fallthrough]];
        case Kind::Polygon:
            b.lo = {HUGE_VAL, HUGE_VAL, 0.0};
            b.hi = {-HUGE_VAL, -HUGE_VAL, 0.0};
            for (const auto& v : vertices)
                for (int d = 0; d < 2; ++d) {
                    b.lo[d] = std::min(b.lo[d], v[d]);
                    b.hi[d] = std::max(b.hi[d], v[d]);
                }
            return b;
    }
    return b;
}

// ---------------------------------------------------------------- masks and sets

GridMask::GridMask(const Grid& g, std::vector<std::uint8_t> m) : grid(g), inside(std::move(m)) {
    if (inside.size() != grid.size()) throw std::invalid_argument("GridMask: size mismatch");
}

std::size_t GridMask::count() const {
    return static_cast<std::size_t>(std::count_if(inside.begin(), inside.end(), [](std::uint8_t v) { return v != 0; }));
}

GridMask rasterize(const Shape& shape, const Grid& grid) {
    if (shape.dim != grid.dim()) throw std::invalid_argument("rasterize: dimension mismatch");
    GridMask m(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) m.inside[i] = shape.contains(grid.center(i)) ? 1 : 0;
    return m;
}

SampledSet SampledSet::from_points(int dim, std::vector<double> coords) {
    if (dim < 1) throw std::invalid_argument("SampledSet: dimension must be positive");
    if (coords.size() % dim != 0) throw std::invalid_argument("SampledSet: coordinate count not a multiple of dim");
    for (double c : coords)
        if (!std::isfinite(c)) throw std::invalid_argument("SampledSet: non-finite coordinate");
    SampledSet s;
    s.dim_ = dim;
    s.coords_ = std::move(coords);
    return s;
}

SampledSet SampledSet::from_mask(const GridMask& mask) {
    SampledSet s;
    s.dim_ = mask.grid.dim();
    for (std::size_t i = 0; i < mask.grid.size(); ++i) {
        if (!mask.inside[i]) continue;
        const Point c = mask.grid.center(i);
        for (int d = 0; d < s.dim_; ++d) s.coords_.push_back(c[d]);
    }
    s.mask_ = mask;
    return s;
}

SampledSet SampledSet::from_shape(const Shape& shape, const Grid& grid) {
    return from_mask(rasterize(shape, grid));
}

const GridMask& SampledSet::mask() const {
    if (!mask_) throw std::logic_error("SampledSet: no grid form available");
    return *mask_;
}

GridMask SampledSet::to_mask(const Grid& grid) const {
    if (grid.dim() != dim_) throw std::invalid_argument("SampledSet::to_mask: dimension mismatch");
    GridMask m(grid);
    for (std::size_t i = 0; i < size(); ++i) {
        Point x{0.0, 0.0, 0.0};
        for (int d = 0; d < dim_; ++d) x[d] = point(i)[d];
        Index3 ijk;
        if (!grid.locate(x, ijk)) throw std::invalid_argument("SampledSet::to_mask: point outside grid box");
        m.inside[grid.index(ijk)] = 1;
    }
    return m;
}

// ---------------------------------------------------------------- SupportBody

SupportBody SupportBody::from_values(int dim, std::vector<double> h) {
    if (dim == 1 && h.size() != 2) throw std::invalid_argument("SupportBody: dim 1 needs exactly 2 values");
    if (dim == 2 && h.size() < 3) throw std::invalid_argument("SupportBody: dim 2 needs at least 3 directions");
    if (dim != 1 && dim != 2) throw std::invalid_argument("SupportBody: dimension must be 1 or 2");
    for (double v : h)
        if (!std::isfinite(v)) throw std::invalid_argument("SupportBody: non-finite support value");
    SupportBody b;
    b.dim_ = dim;
    b.h_ = std::move(h);
    return b;
}

SupportBody SupportBody::interval(double a, double b) { return from_values(1, {b, -a}); }

SupportBody SupportBody::from_shape(const Shape& shape, int directions) {
    if (shape.dim == 1) return from_values(1, {shape.support({1.0, 0, 0}), shape.support({-1.0, 0, 0})});
    if (shape.dim != 2) throw std::invalid_argument("SupportBody: shapes must be 1- or 2-dimensional");
    if (directions < 3) throw std::invalid_argument("SupportBody: need at least 3 directions");
    SupportBody tmp;
    tmp.dim_ = 2;
    tmp.h_.assign(directions, 0.0);
    std::vector<double> h(directions);
    for (int k = 0; k < directions; ++k) h[k] = shape.support(tmp.direction(k));
    return from_values(2, std::move(h));
}

Point SupportBody::direction(std::size_t k) const {
    if (dim_ == 1) return {k == 0 ? 1.0 : -1.0, 0.0, 0.0};
    const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(h_.size());
    return {std::cos(a), std::sin(a), 0.0};
}

bool SupportBody::same_directions(const SupportBody& other) const {
    return dim_ == other.dim_ && h_.size() == other.h_.size();
}

bool SupportBody::origin_interior() const {
    return std::all_of(h_.begin(), h_.end(), [](double v) { return v > 0; });
}

std::vector<Vec2> SupportBody::polygon() const {
    if (dim_ != 2) throw std::logic_error("SupportBody::polygon: dim 2 only");
    double big = 1.0;
    for (double v : h_) big = std::max(big, std::abs(v));
    std::vector<Vec2> normals(h_.size());
    for (std::size_t k = 0; k < h_.size(); ++k) {
        const Point u = direction(k);
        normals[k] = {u[0], u[1]};
    }
    auto poly = halfplane_polygon(normals, h_, 4.0 * big);
    if (poly.size() < 3) throw std::invalid_argument("SupportBody: support values describe an empty body");
    return poly;
}

SupportBody SupportBody::repaired() const {
    if (dim_ == 1) {
        if (h_[0] + h_[1] < 0) throw std::invalid_argument("SupportBody: empty interval");
        return *this;
    }
    const auto poly = polygon();
    std::vector<double> h(h_.size());
    for (std::size_t k = 0; k < h_.size(); ++k) {
        const Point u = direction(k);
        double m = -HUGE_VAL;
        for (const auto& v : poly) m = std::max(m, v[0] * u[0] + v[1] * u[1]);
        h[k] = std::min(m, h_[k]);
    }
    return from_values(2, std::move(h));
}

double SupportBody::lebesgue_volume() const {
    if (dim_ == 1) return std::max(0.0, h_[0] + h_[1]);
    return std::abs(signed_area(polygon()));
}

bool SupportBody::contains(const Point& x, double tol) const {
    if (dim_ == 1) return x[0] <= h_[0] + tol && -x[0] <= h_[1] + tol;
    for (std::size_t k = 0; k < h_.size(); ++k) {
        const Point u = direction(k);
        if (u[0] * x[0] + u[1] * x[1] > h_[k] + tol) return false;
    }
    return true;
}

Box SupportBody::bounding_box() const {
    Box b;
    b.dim = dim_;
    if (dim_ == 1) {
        b.lo[0] = -h_[1];
        b.hi[0] = h_[0];
        return b;
    }
    b.lo = {HUGE_VAL, HUGE_VAL, 0.0};
    b.hi = {-HUGE_VAL, -HUGE_VAL, 0.0};
    for (const auto& v : polygon())
        for (int d = 0; d < 2; ++d) {
            b.lo[d] = std::min(b.lo[d], v[d]);
            b.hi[d] = std::max(b.hi[d], v[d]);
        }
    return b;
}

SupportBody SupportBody::scaled(double c) const {
    if (!(c >= 0)) throw std::invalid_argument("SupportBody::scaled: negative factor");
    SupportBody b = *this;
    for (double& v : b.h_) v *= c;
    return b;
}

GridMask SupportBody::rasterize(const Grid& grid) const {
    if (grid.dim() != dim_) throw std::invalid_argument("SupportBody::rasterize: dimension mismatch");
    GridMask m(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) m.inside[i] = contains(grid.center(i)) ? 1 : 0;
    return m;
}

SampledSet SupportBody::sample(const Grid& grid) const { return SampledSet::from_mask(rasterize(grid)); }

SupportBody firey_combine(const SupportBody& K, const SupportBody& L, double p, double alpha, double beta) {
    if (!K.same_directions(L)) throw std::invalid_argument("firey_combine: mismatched direction sets");
    if (!(p >= 1)) throw std::invalid_argument("firey_combine: p must be >= 1");
    if (!(alpha > 0) || !(beta > 0)) throw std::invalid_argument("firey_combine: coefficients must be positive");
    if (!K.origin_interior() || !L.origin_interior())
        throw std::invalid_argument("firey_combine: origin not interior (nonpositive support value)");
    std::vector<double> h(K.directions());
    for (std::size_t k = 0; k < h.size(); ++k)
        h[k] = std::pow(alpha * std::pow(K.h()[k], p) + beta * std::pow(L.h()[k], p), 1.0 / p);
    return SupportBody::from_values(K.dim(), std::move(h));
}

double support_distance(const SupportBody& K, const SupportBody& L) {
    if (!K.same_directions(L)) throw std::invalid_argument("support_distance: mismatched direction sets");
    double d = 0.0;
    for (std::size_t k = 0; k < K.directions(); ++k) d = std::max(d, std::abs(K.h()[k] - L.h()[k]));
    return d;
}

// ---------------------------------------------------------------- RadialBody

RadialBody RadialBody::with_directions(int dim, int directions) {
    RadialBody r;
    r.dim = dim;
    if (dim == 1) {
        r.dirs = {1.0, -1.0};
        r.weights = {1.0, 1.0};
    } else if (dim == 2) {
        if (directions < 3) throw std::invalid_argument("RadialBody: need at least 3 directions");
        for (int k = 0; k < directions; ++k) {
            const double a = 2.0 * std::numbers::pi * k / directions;
            r.dirs.push_back(std::cos(a));
            r.dirs.push_back(std::sin(a));
            r.weights.push_back(2.0 * std::numbers::pi / directions);
        }
    } else if (dim == 3) {
        using GL = boost::math::quadrature::gauss<double, 20>;
        std::vector<double> z, wz;
        const auto& ab = GL::abscissa();
        const auto& wt = GL::weights();
        for (std::size_t i = 0; i < ab.size(); ++i) {
            z.push_back(ab[i]);
            wz.push_back(wt[i]);
            if (ab[i] != 0.0) {
                z.push_back(-ab[i]);
                wz.push_back(wt[i]);
            }
        }
        const int nphi = std::max(8, directions / 10);
        for (std::size_t i = 0; i < z.size(); ++i) {
            const double s = std::sqrt(std::max(0.0, 1.0 - z[i] * z[i]));
            for (int j = 0; j < nphi; ++j) {
                const double a = 2.0 * std::numbers::pi * (j + 0.5) / nphi;
                r.dirs.insert(r.dirs.end(), {s * std::cos(a), s * std::sin(a), z[i]});
                r.weights.push_back(wz[i] * 2.0 * std::numbers::pi / nphi);
            }
        }
    } else {
        throw std::invalid_argument("RadialBody: dimension must be 1..3");
    }
    r.rho.assign(r.weights.size(), 0.0);
    return r;
}

Point RadialBody::direction(std::size_t k) const {
    Point u{0.0, 0.0, 0.0};
    for (int d = 0; d < dim; ++d) u[d] = dirs[k * dim + d];
    return u;
}

double RadialBody::volume() const {
    std::vector<double> terms(rho.size());
    for (std::size_t k = 0; k < rho.size(); ++k) terms[k] = weights[k] * std::pow(rho[k], dim) / dim;
    return pairwise_sum(terms);
}

double RadialBody::radius_toward(const Point& x) const {
    if (dim == 1) return x[0] >= 0 ? rho[0] : rho[1];
    if (dim == 2) {
        const std::size_t D = rho.size();
        double a = std::atan2(x[1], x[0]);
        if (a < 0) a += 2.0 * std::numbers::pi;
        const double pos = a / (2.0 * std::numbers::pi) * D;
        const std::size_t k0 = static_cast<std::size_t>(std::floor(pos)) % D;
        const std::size_t k1 = (k0 + 1) % D;
        const double w = pos - std::floor(pos);
        return (1.0 - w) * rho[k0] + w * rho[k1];
    }
    double best = -2.0;
    std::size_t arg = 0;
    const double n = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    for (std::size_t k = 0; k < rho.size(); ++k) {
        const double c = (dirs[3 * k] * x[0] + dirs[3 * k + 1] * x[1] + dirs[3 * k + 2] * x[2]) / n;
        if (c > best) {
            best = c;
            arg = k;
        }
    }
    return rho[arg];
}

bool RadialBody::contains(const Point& x, double tol) const {
    double n2 = 0.0;
    for (int d = 0; d < dim; ++d) n2 += x[d] * x[d];
    if (n2 == 0.0) return true;
    return std::sqrt(n2) <= radius_toward(x) + tol;
}

// ---------------------------------------------------------------- combinations

std::vector<double> uniform_lambdas(int count) {
    if (count < 2) throw std::invalid_argument("lambda grid needs at least 2 points");
    std::vector<double> l(count);
    for (int k = 0; k < count; ++k) l[k] = static_cast<double>(k) / (count - 1);
    l.back() = 1.0;
    return l;
}

namespace {

struct QuantKey {
    std::array<long long, 8> k{};
    bool operator==(const QuantKey& o) const { return k == o.k; }
};

struct QuantHash {
    std::size_t operator()(const QuantKey& q) const {
        std::uint64_t h = 1469598103934665603ull;
        for (long long v : q.k) {
            h ^= static_cast<std::uint64_t>(v);
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace

SampledSet lyz_combine(const SampledSet& A, const SampledSet& B, double p, double alpha, double beta,
                       int lambda_grid, double quantum) {
    if (lambda_grid < 2) throw std::invalid_argument("lyz_combine: lambda grid needs at least 2 points");
    // At p = 1 every lambda yields the same coefficients.
    return lyz_combine(A, B, p, alpha, beta, p == 1.0 ? std::vector<double>{0.0} : uniform_lambdas(lambda_grid),
                       quantum);
}

SampledSet lyz_combine(const SampledSet& A, const SampledSet& B, double p, double alpha, double beta,
                       const std::vector<double>& lambdas, double quantum) {
    if (A.empty() || B.empty()) throw std::invalid_argument("lyz_combine: empty input set");
    if (A.dim() != B.dim()) throw std::invalid_argument("lyz_combine: dimension mismatch");
    if (lambdas.empty()) throw std::invalid_argument("lyz_combine: no lambda nodes");
    const int n = A.dim();
    if (quantum > 0 && n > 8) throw std::invalid_argument("lyz_combine: merging supports at most 8 dimensions");
    std::vector<double> out;
    std::unordered_set<QuantKey, QuantHash> seen;
    for (double lam : lambdas) {
        const auto [wA, wB] = lp_weights(p, alpha, beta, lam);
        for (std::size_t i = 0; i < A.size(); ++i) {
            const double* x = A.point(i);
            for (std::size_t j = 0; j < B.size(); ++j) {
                const double* y = B.point(j);
                double z[8];
                QuantKey key;
                for (int d = 0; d < n && d < 8; ++d) {
                    z[d] = wA * x[d] + wB * y[d];
                    if (quantum > 0) key.k[d] = std::llround(z[d] / quantum);
                }
                if (quantum > 0) {
                    if (!seen.insert(key).second) continue;
                    out.insert(out.end(), z, z + n);
                } else {
                    for (int d = 0; d < n; ++d) out.push_back(wA * x[d] + wB * y[d]);
                }
            }
        }
    }
    return SampledSet::from_points(n, std::move(out));
}

bool is_weakly_unconditional(const SampledSet& A, double tol) {
    const int n = A.dim();
    if (A.empty()) return true;
    if (A.has_grid()) {
        const GridMask& m = A.mask();
        const Grid& g = m.grid;
        // Cells whose closed extent contains 0, per axis.
        std::array<std::vector<int>, 3> zero_cells;
        for (int d = 0; d < n; ++d)
            for (int k = 0; k < g.cells(d); ++k)
                if (g.cell_lo(d, k) <= tol && g.cell_hi(d, k) >= -tol) zero_cells[d].push_back(k);
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (!m.inside[i]) continue;
            const Index3 ijk = g.unravel(i);
            for (unsigned eps = 0; eps + 1 < (1u << n); ++eps) {
                // Enumerate candidate cells for the zeroed point.
                std::array<std::vector<int>, 3> cand;
                bool possible = true;
                for (int d = 0; d < n; ++d) {
                    if (eps & (1u << d)) cand[d] = {ijk[d]};
                    else cand[d] = zero_cells[d];
                    if (cand[d].empty()) possible = false;
                }
                if (!possible) return false;
                bool found = false;
                Index3 c{0, 0, 0};
                const std::size_t n1 = n > 1 ? cand[1].size() : 1, n2 = n > 2 ? cand[2].size() : 1;
                for (std::size_t a = 0; a < cand[0].size() && !found; ++a)
                    for (std::size_t b = 0; b < n1 && !found; ++b)
                        for (std::size_t e = 0; e < n2 && !found; ++e) {
                            c[0] = cand[0][a];
                            if (n > 1) c[1] = cand[1][b];
                            if (n > 2) c[2] = cand[2][e];
                            found = m.inside[g.index(c)] != 0;
                        }
                if (!found) return false;
            }
        }
        return true;
    }
    if (n > 16) throw std::invalid_argument("is_weakly_unconditional: dimension too large");
    std::vector<double> z(n);
    for (std::size_t i = 0; i < A.size(); ++i) {
        const double* x = A.point(i);
        for (unsigned long eps = 0; eps + 1 < (1ul << n); ++eps) {
            for (int d = 0; d < n; ++d) z[d] = (eps & (1ul << d)) ? x[d] : 0.0;
            bool found = false;
            for (std::size_t j = 0; j < A.size() && !found; ++j) {
                const double* y = A.point(j);
                double d2 = 0.0;
                for (int d = 0; d < n; ++d) d2 += (y[d] - z[d]) * (y[d] - z[d]);
                found = std::sqrt(d2) <= tol;
            }
            if (!found) return false;
        }
    }
    return true;
}

SampledSet cartesian_power(const SampledSet& A, int m) {
    if (m < 1) throw std::invalid_argument("cartesian_power: m must be positive");
    const int n = A.dim();
    const std::size_t N = A.size();
    std::size_t total = 1;
    for (int r = 0; r < m; ++r) {
        if (N != 0 && total > (std::size_t{1} << 26) / N) throw std::invalid_argument("cartesian_power: too many points");
        total *= N;
    }
    std::vector<double> coords;
    coords.reserve(total * n * m);
    std::vector<std::size_t> idx(m, 0);
    for (std::size_t c = 0; c < total && N > 0; ++c) {
        std::size_t rem = c;
        for (int r = m - 1; r >= 0; --r) {
            idx[r] = rem % N;
            rem /= N;
        }
        for (int r = 0; r < m; ++r) coords.insert(coords.end(), A.point(idx[r]), A.point(idx[r]) + n);
    }
    if (A.has_grid() && n * m <= 3) {
        const Grid& g = A.mask().grid;
        Box box;
        box.dim = n * m;
        Index3 cells{1, 1, 1};
        for (int r = 0; r < m; ++r)
            for (int d = 0; d < n; ++d) {
                box.lo[r * n + d] = g.box().lo[d];
                box.hi[r * n + d] = g.box().hi[d];
                cells[r * n + d] = g.cells(d);
            }
        Grid pg(box, cells);
        GridMask pm(pg);
        for (std::size_t i = 0; i < pg.size(); ++i) {
            const Index3 ijk = pg.unravel(i);
            bool in = true;
            for (int r = 0; r < m && in; ++r) {
                Index3 sub{0, 0, 0};
                for (int d = 0; d < n; ++d) sub[d] = ijk[r * n + d];
                in = A.mask().inside[g.index(sub)] != 0;
            }
            pm.inside[i] = in ? 1 : 0;
        }
        return SampledSet::from_mask(pm);
    }
    return SampledSet::from_points(n * m, std::move(coords));
}

double directed_hausdorff(const SampledSet& A, const SampledSet& B) {
    if (A.empty() || B.empty()) throw std::invalid_argument("hausdorff_distance: empty set");
    if (A.dim() != B.dim()) throw std::invalid_argument("hausdorff_distance: dimension mismatch");
    const int n = A.dim();
    std::vector<std::size_t> order(B.size());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return B.point(a)[0] < B.point(b)[0]; });
    std::vector<double> keys(order.size());
    for (std::size_t j = 0; j < order.size(); ++j) keys[j] = B.point(order[j])[0];
    std::vector<double> nearest(A.size());
    parallel_for(A.size(), [&](std::size_t i) {
        const double* a = A.point(i);
        double best2 = HUGE_VAL;
        const std::size_t start = static_cast<std::size_t>(std::lower_bound(keys.begin(), keys.end(), a[0]) - keys.begin());
        auto visit = [&](std::size_t j) {
            const double* b = B.point(order[j]);
            double d2 = 0.0;
            for (int d = 0; d < n; ++d) d2 += (a[d] - b[d]) * (a[d] - b[d]);
            best2 = std::min(best2, d2);
        };
        for (std::size_t j = start; j < keys.size(); ++j) {
            const double dx = keys[j] - a[0];
            if (dx * dx > best2) break;
            visit(j);
        }
        for (std::size_t j = start; j-- > 0;) {
            const double dx = a[0] - keys[j];
            if (dx * dx > best2) break;
            visit(j);
        }
        nearest[i] = best2;
    });
    return std::sqrt(*std::max_element(nearest.begin(), nearest.end()));
}

double hausdorff_distance(const SampledSet& A, const SampledSet& B) {
    return std::max(directed_hausdorff(A, B), directed_hausdorff(B, A));
}

bool are_dilates(const SampledSet& A, double volA, const SampledSet& B, double volB, double tol) {
    if (!(volA > 0) || !(volB > 0)) return false;
    const int n = A.dim();
    auto normalise = [n](const SampledSet& S, double vol) {
        std::vector<double> c = S.coords();
        const double s = std::pow(vol, -1.0 / n);
        for (double& v : c) v *= s;
        return SampledSet::from_points(n, std::move(c));
    };
    return hausdorff_distance(normalise(A, volA), normalise(B, volB)) <= tol;
}

}  // namespace lpbm

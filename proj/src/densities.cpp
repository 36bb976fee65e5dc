#include "lpbm/densities.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

namespace lpbm {

namespace {

double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x, bool extrapolate) {
    if (x < xs.front() || x > xs.back()) {
        if (!extrapolate) return 0.0;
        const std::size_t a = x < xs.front() ? 0 : xs.size() - 2;
        const double s = (ys[a + 1] - ys[a]) / (xs[a + 1] - xs[a]);
        return ys[a] + s * (x - xs[a]);
    }
    const std::size_t k = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
    if (k == 0) return ys.front();
    if (k >= xs.size()) return ys.back();
    const double w = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
    return (1.0 - w) * ys[k - 1] + w * ys[k];
}

void check_table(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("table: need >= 2 matching rows");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) throw std::invalid_argument("table: x column must be strictly increasing");
}

double norm(const Point& x, int dim) {
    double s = 0.0;
    for (int d = 0; d < dim; ++d) s += x[d] * x[d];
    return std::sqrt(s);
}

}  // namespace

Profile Profile::table(std::vector<double> xs, std::vector<double> ys) {
    check_table(xs, ys);
    for (double y : ys)
        if (!(y >= 0)) throw std::invalid_argument("profile table: values must be >= 0");
    Profile p;
    p.kind = Kind::Table;
    p.xs = std::move(xs);
    p.ys = std::move(ys);
    return p;
}

Profile Profile::table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open table file '" + path + "'");
    std::vector<double> xs, ys;
    std::string line;
    while (std::getline(in, line)) {
        if (auto c = line.find('#'); c != std::string::npos) line.erase(c);
        std::istringstream ls(line);
        double x, y;
        if (!(ls >> x)) continue;
        if (!(ls >> y)) throw std::invalid_argument("table file '" + path + "': malformed row");
        xs.push_back(x);
        ys.push_back(y);
    }
    return table(std::move(xs), std::move(ys));
}

double Profile::operator()(double x) const {
    const double a = std::abs(x) / scale;
    switch (kind) {
        case Kind::Constant: return 1.0;
        case Kind::Gaussian: return std::exp(-0.5 * a * a);
        case Kind::Triangular: return std::max(1.0 - a, 0.0);
        case Kind::Cauchy: return 1.0 / (1.0 + a * a);
        case Kind::Exponential: return std::exp(-a);
        case Kind::Box: return a <= 1.0 ? 1.0 : 0.0;
        case Kind::Table: return interp(xs, ys, x, false);
    }
    return 0.0;
}

std::string Profile::name() const {
    switch (kind) {
        case Kind::Constant: return "constant";
        case Kind::Gaussian: return "gaussian";
        case Kind::Triangular: return "triangular";
        case Kind::Cauchy: return "cauchy";
        case Kind::Exponential: return "exponential";
        case Kind::Box: return "box";
        case Kind::Table: return "table";
    }
    return "?";
}

std::string to_string(ConcavityClass c) {
    switch (c) {
        case ConcavityClass::SConcave: return "s-concave";
        case ConcavityClass::LogConcave: return "log-concave";
        case ConcavityClass::QuasiConcaveProduct: return "quasi-concave-product";
    }
    return "?";
}

Density Density::lebesgue() { return Density{}; }

Density Density::gaussian(int dim) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("gaussian density: dimension must be 1..3");
    Density d;
    d.kind_ = Kind::Gaussian;
    d.dim_ = dim;
    d.class_ = ConcavityClass::LogConcave;
    d.s_ = std::numeric_limits<double>::infinity();
    d.name_ = "gaussian";
    return d;
}

Density Density::s_concave_power(int dim, double s, const Profile& base) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("s-concave density: dimension must be 1..3");
    if (!(s >= 0) || !std::isfinite(s)) throw std::invalid_argument("s-concave density: s must be finite and >= 0");
    Density d;
    d.kind_ = Kind::SConcavePower;
    d.dim_ = dim;
    d.class_ = ConcavityClass::SConcave;
    d.s_ = s;
    d.base_ = base;
    d.name_ = "s-concave(" + base.name() + ")";
    return d;
}

Density Density::log_concave_exp(int dim, std::vector<double> xs, std::vector<double> potential) {
    check_table(xs, potential);
    Density d;
    d.kind_ = Kind::LogConcaveExp;
    d.dim_ = dim;
    d.class_ = ConcavityClass::LogConcave;
    d.s_ = std::numeric_limits<double>::infinity();
    d.xs_ = std::move(xs);
    d.v_ = std::move(potential);
    d.name_ = "log-concave-exp";
    return d;
}

Density Density::quasi_concave_product(std::vector<Profile> factors) {
    if (factors.empty() || factors.size() > 3) throw std::invalid_argument("product density: need 1..3 factors");
    Density d;
    d.kind_ = Kind::QuasiConcaveProduct;
    d.dim_ = static_cast<int>(factors.size());
    d.class_ = ConcavityClass::QuasiConcaveProduct;
    d.s_ = -std::numeric_limits<double>::infinity();
    d.factors_ = std::move(factors);
    d.name_ = "product(";
    for (std::size_t i = 0; i < d.factors_.size(); ++i) d.name_ += (i ? "," : "") + d.factors_[i].name();
    d.name_ += ")";
    return d;
}

double Density::operator()(const Point& x) const {
    switch (kind_) {
        case Kind::Lebesgue: return 1.0;
        case Kind::Gaussian: {
            const double r = norm(x, dim_);
            return std::exp(-0.5 * r * r) / std::pow(2.0 * std::numbers::pi, 0.5 * dim_);
        }
        case Kind::SConcavePower: {
            const double b = base_(norm(x, dim_));
            if (!(b > 0)) return 0.0;
            return s_ == 0.0 ? 1.0 : std::pow(b, s_);
        }
        case Kind::LogConcaveExp: {
            const double r = dim_ == 1 ? x[0] : norm(x, dim_);
            return std::exp(-interp(xs_, v_, r, true));
        }
        case Kind::QuasiConcaveProduct: {
            double v = 1.0;
            for (int d = 0; d < dim_; ++d) v *= factors_[d](x[d]);
            return v;
        }
    }
    return 0.0;
}

bool Density::is_s_concave(double s) const {
    return class_ == ConcavityClass::SConcave && s_ <= s;
}

bool Density::is_log_concave() const {
    switch (kind_) {
        case Kind::Lebesgue:
        case Kind::Gaussian:
        case Kind::SConcavePower:
        case Kind::LogConcaveExp: return true;
        case Kind::QuasiConcaveProduct:
            return std::all_of(factors_.begin(), factors_.end(), [](const Profile& p) {
                return p.kind != Profile::Kind::Cauchy && p.kind != Profile::Kind::Table;
            });
    }
    return false;
}

std::optional<std::vector<Profile>> Density::product_factors(int dim) const {
    switch (kind_) {
        case Kind::Lebesgue: return std::vector<Profile>(dim, Profile::constant());
        case Kind::Gaussian:
            if (dim_ != dim) return std::nullopt;
            return std::vector<Profile>(dim, Profile::gaussian(1.0));
        case Kind::QuasiConcaveProduct:
            if (dim_ != dim) return std::nullopt;
            return factors_;
        case Kind::SConcavePower:
        case Kind::LogConcaveExp:
            if (dim == 1 && dim_ == 1) {
                // A 1-d density with maximum at 0 is its own factor when symmetric unimodal.
                // Same level sets as phi = base^s; at s = 0 phi is the indicator of supp(base).
                if (kind_ == Kind::SConcavePower) {
                    if (s_ > 0.0) return std::vector<Profile>{base_};
                    const bool bounded = base_.kind == Profile::Kind::Triangular || base_.kind == Profile::Kind::Box;
                    return std::vector<Profile>{bounded ? Profile::box(base_.scale) : Profile::constant()};
                }
            }
            return std::nullopt;
    }
    return std::nullopt;
}

Quadrature::Quadrature(const Box& b, int res) : box(b), resolution(res) {
    if (res < 16) throw std::invalid_argument("Quadrature: resolution must be >= 16");
    for (int d = 0; d < b.dim; ++d)
        if (!(b.hi[d] > b.lo[d]) || !std::isfinite(b.lo[d]) || !std::isfinite(b.hi[d]))
            throw std::invalid_argument("Quadrature: box must be finite and nondegenerate");
}

namespace {

void check_dims(const Density& mu, int dim) {
    if (mu.dim() != 0 && mu.dim() != dim) throw std::invalid_argument("density dimension does not match the set");
}

}  // namespace

double measure_of_mask(const Density& mu, const GridMask& A) {
    check_dims(mu, A.grid.dim());
    std::vector<double> terms;
    terms.reserve(A.inside.size());
    for (std::size_t i = 0; i < A.inside.size(); ++i)
        if (A.inside[i]) terms.push_back(mu(A.grid.center(i)));
    return pairwise_sum(terms) * A.grid.cell_volume();
}

double measure_of_set(const Density& mu, const SampledSet& A, const Quadrature& q) {
    if (A.empty() && !A.has_grid()) return 0.0;
    if (A.has_grid()) {
        const GridMask& m = A.mask();
        if (m.grid.dim() != q.box.dim) throw std::invalid_argument("measure_of_set: dimension mismatch");
        if (m.count() == 0) return 0.0;
        // Only the occupied part must lie in the integration box.
        Box occ;
        occ.dim = m.grid.dim();
        GridFunction ind = GridFunction::indicator(m);
        occ = ind.support_bbox();
        if (!q.box.contains(occ, 1e-9 * (1.0 + occ.extent(0)))) throw std::invalid_argument("measure_of_set: set exceeds box");
        return measure_of_mask(mu, m);
    }
    if (A.dim() != q.box.dim) throw std::invalid_argument("measure_of_set: dimension mismatch");
    GridMask m(q.grid());
    try {
        m = A.to_mask(q.grid());
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("measure_of_set: set exceeds box");
    }
    return measure_of_mask(mu, m);
}

double integrate_pow(const Density& mu, const GridFunction& f, double power) {
    check_dims(mu, f.dim());
    const Grid& g = f.grid();
    std::vector<double> terms;
    terms.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double v = f[i];
        if (!(v > 0)) continue;
        terms.push_back((power == 1.0 ? v : std::pow(v, power)) * mu(g.center(i)));
    }
    return pairwise_sum(terms) * g.cell_volume();
}

double integrate(const Density& mu, const GridFunction& f, const Quadrature& q) {
    if (f.dim() != q.box.dim) throw std::invalid_argument("integrate: domain mismatch");
    if (!q.box.contains(f.grid().box(), 1e-9)) {
        if (!f.empty_support() && !q.box.contains(f.support_bbox(), 1e-9))
            throw std::invalid_argument("integrate: domain mismatch (function extends beyond the box)");
    }
    return integrate_pow(mu, f, 1.0);
}

double measure_of_body(const Density& mu, const SupportBody& K) {
    check_dims(mu, K.dim());
    using GL = boost::math::quadrature::gauss<double, 10>;
    std::vector<double> nodes, wts;
    for (std::size_t i = 0; i < GL::abscissa().size(); ++i) {
        nodes.push_back(GL::abscissa()[i]);
        wts.push_back(GL::weights()[i]);
        nodes.push_back(-GL::abscissa()[i]);
        wts.push_back(GL::weights()[i]);
    }
    if (K.dim() == 1) {
        const double a = -K.h()[1], b = K.h()[0];
        if (b <= a) return 0.0;
        if (mu.is_lebesgue()) return b - a;
        std::vector<std::pair<double, double>> pieces;
        if (a < 0 && b > 0) pieces = {{a, 0.0}, {0.0, b}};
        else pieces = {{a, b}};
        std::vector<double> terms;
        const int panels = 32;
        for (auto [lo, hi] : pieces) {
            const double w = (hi - lo) / panels;
            for (int k = 0; k < panels; ++k) {
                const double c = lo + (k + 0.5) * w;
                for (std::size_t i = 0; i < nodes.size(); ++i)
                    terms.push_back(0.5 * w * wts[i] * mu({c + 0.5 * w * nodes[i], 0.0, 0.0}));
            }
        }
        return pairwise_sum(terms);
    }
    const auto poly = K.polygon();
    if (mu.is_lebesgue()) return K.lebesgue_volume();
    Vec2 c{0.0, 0.0};
    if (!K.contains({0.0, 0.0, 0.0}, -1e-12)) {
        for (const auto& v : poly) {
            c[0] += v[0] / poly.size();
            c[1] += v[1] / poly.size();
        }
    }
    std::vector<double> terms;
    terms.reserve(poly.size() * nodes.size() * nodes.size());
    for (std::size_t k = 0; k < poly.size(); ++k) {
        const Vec2& p = poly[k];
        const Vec2& q = poly[(k + 1) % poly.size()];
        const double e1x = p[0] - c[0], e1y = p[1] - c[1];
        const double e2x = q[0] - p[0], e2y = q[1] - p[1];
        const double jac = std::abs(e1x * e2y - e1y * e2x);
        if (jac == 0.0) continue;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const double u = 0.5 * (nodes[i] + 1.0);
            for (std::size_t j = 0; j < nodes.size(); ++j) {
                const double w = 0.5 * (nodes[j] + 1.0);
                const Point x{c[0] + u * e1x + u * w * e2x, c[1] + u * e1y + u * w * e2y, 0.0};
                terms.push_back(0.25 * wts[i] * wts[j] * u * jac * mu(x));
            }
        }
    }
    return pairwise_sum(terms);
}

namespace {

double midpoint_violation(const Density& mu, const Point& x, const Point& y) {
    Point m{0.5 * (x[0] + y[0]), 0.5 * (x[1] + y[1]), 0.5 * (x[2] + y[2])};
    const double fx = mu(x), fy = mu(y);
    if (!(fx > 0) || !(fy > 0)) return 0.0;
    const double fm = mu(m);
    switch (mu.declared_class()) {
        case ConcavityClass::SConcave: {
            const double s = mu.declared_s();
            if (s == 0.0) return fm - std::max(fx, fy);
            return std::pow(fm, 1.0 / s) - 0.5 * (std::pow(fx, 1.0 / s) + std::pow(fy, 1.0 / s));
        }
        case ConcavityClass::LogConcave:
            if (!(fm > 0)) return -std::numeric_limits<double>::max();
            return std::log(fm) - 0.5 * (std::log(fx) + std::log(fy));
        case ConcavityClass::QuasiConcaveProduct: return fm - std::min(fx, fy);
    }
    return 0.0;
}

}  // namespace

ConcavityReport classify_concavity(const Density& mu, const Quadrature& q) {
    ConcavityReport rep;
    rep.declared = mu.declared_class();
    rep.s = mu.declared_s();
    const Grid g = q.grid();
    double worst = 0.0;
    std::size_t pairs = 0;
    if (mu.declared_class() == ConcavityClass::QuasiConcaveProduct) {
        const auto factors = mu.product_factors(q.box.dim);
        if (!factors) throw std::invalid_argument("classify_concavity: product density dimension mismatch");
        for (int d = 0; d < q.box.dim; ++d) {
            const Profile& f = (*factors)[d];
            const double f0 = f(0.0);
            for (int i = 0; i < g.cells(d); ++i) {
                const double xi = g.center(d, i);
                worst = std::min(worst, f0 - f(xi));
                for (int j = i + 1; j < g.cells(d); ++j) {
                    const double xj = g.center(d, j);
                    worst = std::min(worst, f(0.5 * (xi + xj)) - std::min(f(xi), f(xj)));
                    ++pairs;
                }
            }
        }
    } else if (g.dim() == 1) {
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = i + 1; j < g.size(); ++j) {
                worst = std::min(worst, midpoint_violation(mu, g.center(i), g.center(j)));
                ++pairs;
            }
    } else {
        std::mt19937_64 rng(0x5eedULL);
        std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
        for (int k = 0; k < 20000; ++k) {
            worst = std::min(worst, midpoint_violation(mu, g.center(pick(rng)), g.center(pick(rng))));
            ++pairs;
        }
    }
    rep.worst_violation = worst;
    rep.pairs = pairs;
    return rep;
}

}  // namespace lpbm

#include "lpbm/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lpbm {

GridFunction::GridFunction(const Grid& grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw std::invalid_argument("GridFunction: value count does not match grid");
    for (double v : values_)
        if (!(v >= 0) || !std::isfinite(v)) throw std::invalid_argument("GridFunction: values must be finite and >= 0");
}

GridFunction GridFunction::sample(const Grid& grid, const std::function<double(const Point&)>& f) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) v[i] = f(grid.center(i));
    return GridFunction(grid, std::move(v));
}

GridFunction GridFunction::indicator(const GridMask& mask) {
    std::vector<double> v(mask.inside.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = mask.inside[i] ? 1.0 : 0.0;
    return GridFunction(mask.grid, std::move(v));
}

bool GridFunction::empty_support() const {
    return std::none_of(values_.begin(), values_.end(), [](double v) { return v > 0; });
}

GridMask GridFunction::support() const {
    GridMask m(grid_);
    for (std::size_t i = 0; i < values_.size(); ++i) m.inside[i] = values_[i] > 0 ? 1 : 0;
    return m;
}

double GridFunction::max_value() const {
    return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

std::pair<Index3, Index3> GridFunction::support_index_bbox() const {
    Index3 lo{0, 0, 0}, hi{0, 0, 0};
    for (int d = 0; d < dim(); ++d) {
        lo[d] = grid_.cells(d);
        hi[d] = -1;
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!(values_[i] > 0)) continue;
        const Index3 ijk = grid_.unravel(i);
        for (int d = 0; d < dim(); ++d) {
            lo[d] = std::min(lo[d], ijk[d]);
            hi[d] = std::max(hi[d], ijk[d]);
        }
    }
    if (hi[0] < 0) throw std::invalid_argument("GridFunction: empty support");
    return {lo, hi};
}

Box GridFunction::support_bbox() const {
    const auto [lo, hi] = support_index_bbox();
    Box b;
    b.dim = dim();
    for (int d = 0; d < dim(); ++d) {
        b.lo[d] = grid_.cell_lo(d, lo[d]);
        b.hi[d] = grid_.cell_hi(d, hi[d]);
    }
    return b;
}

double GridFunction::value_at(const Point& x) const {
    Index3 ijk;
    if (!grid_.locate(x, ijk)) return 0.0;
    return values_[grid_.index(ijk)];
}

double GridFunction::value_at_origin() const {
    std::array<std::vector<int>, 3> cand;
    for (int d = 0; d < dim(); ++d) {
        for (int k = 0; k < grid_.cells(d); ++k)
            if (grid_.cell_lo(d, k) <= 0.0 && grid_.cell_hi(d, k) >= 0.0) cand[d].push_back(k);
        if (cand[d].empty()) return 0.0;
    }
    for (int d = dim(); d < 3; ++d) cand[d] = {0};
    double m = 0.0;
    for (int a : cand[0])
        for (int b : cand[1])
            for (int c : cand[2]) m = std::max(m, values_[grid_.index({a, b, c})]);
    return m;
}

double GridFunction::max_near(const Point& x, int cells) const {
    Index3 c{0, 0, 0};
    for (int d = 0; d < dim(); ++d) c[d] = grid_.locate(d, x[d]);
    Index3 lo{0, 0, 0}, hi{0, 0, 0};
    for (int d = 0; d < dim(); ++d) {
        lo[d] = std::max(0, c[d] - cells);
        hi[d] = std::min(grid_.cells(d) - 1, c[d] + cells);
        if (lo[d] > hi[d]) return 0.0;
    }
    double m = 0.0;
    for (int k = lo[2]; k <= hi[2]; ++k)
        for (int j = lo[1]; j <= hi[1]; ++j)
            for (int i = lo[0]; i <= hi[0]; ++i) m = std::max(m, values_[grid_.index({i, j, k})]);
    return m;
}

GridFunction GridFunction::times(double c) const {
    if (!(c >= 0)) throw std::invalid_argument("GridFunction::times: negative factor");
    std::vector<double> v(values_);
    for (double& x : v) x *= c;
    return GridFunction(grid_, std::move(v));
}

GridFunction GridFunction::pow(double e) const {
    std::vector<double> v(values_);
    for (double& x : v) x = x > 0 ? std::pow(x, e) : 0.0;
    return GridFunction(grid_, std::move(v));
}

}  // namespace lpbm

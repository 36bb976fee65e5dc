#include "lpbm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace lpbm {

Box Box::cube(int dim, double lo, double hi) {
    Box b;
    b.dim = dim;
    for (int d = 0; d < dim; ++d) {
        b.lo[d] = lo;
        b.hi[d] = hi;
    }
    return b;
}

bool Box::contains(const Box& other, double tol) const {
    if (other.dim != dim) return false;
    for (int d = 0; d < dim; ++d)
        if (other.lo[d] < lo[d] - tol || other.hi[d] > hi[d] + tol) return false;
    return true;
}

std::string Box::to_string() const {
    std::string s;
    char buf[64];
    for (int d = 0; d < dim; ++d) {
        std::snprintf(buf, sizeof buf, "%s[%.6g,%.6g]", d ? "x" : "", lo[d], hi[d]);
        s += buf;
    }
    return s;
}

Grid::Grid(const Box& box, const Index3& cells) : box_(box), cells_{1, 1, 1} {
    if (box.dim < 1 || box.dim > 3) throw std::invalid_argument("Grid: dimension must be 1..3");
    size_ = 1;
    for (int d = 0; d < box.dim; ++d) {
        if (cells[d] < 1) throw std::invalid_argument("Grid: cell count must be positive");
        if (!(box.hi[d] > box.lo[d]) || !std::isfinite(box.lo[d]) || !std::isfinite(box.hi[d]))
            throw std::invalid_argument("Grid: degenerate or infinite box " + box.to_string());
        cells_[d] = cells[d];
        step_[d] = (box.hi[d] - box.lo[d]) / cells[d];
        size_ *= static_cast<std::size_t>(cells[d]);
    }
    for (int d = box.dim; d < 3; ++d) {
        box_.lo[d] = 0.0;
        box_.hi[d] = 1.0;
        step_[d] = 1.0;
    }
}

Grid Grid::uniform(const Box& box, int resolution) {
    return Grid(box, Index3{resolution, resolution, resolution});
}

double Grid::max_step() const {
    double m = 0.0;
    for (int d = 0; d < dim(); ++d) m = std::max(m, step_[d]);
    return m;
}

double Grid::min_step() const {
    double m = step_[0];
    for (int d = 1; d < dim(); ++d) m = std::min(m, step_[d]);
    return m;
}

double Grid::cell_volume() const {
    double v = 1.0;
    for (int d = 0; d < dim(); ++d) v *= step_[d];
    return v;
}

Point Grid::center(const Index3& ijk) const {
    Point p{0.0, 0.0, 0.0};
    for (int d = 0; d < dim(); ++d) p[d] = center(d, ijk[d]);
    return p;
}

Index3 Grid::unravel(std::size_t flat) const {
    Index3 ijk{0, 0, 0};
    ijk[0] = static_cast<int>(flat % cells_[0]);
    flat /= cells_[0];
    ijk[1] = static_cast<int>(flat % cells_[1]);
    ijk[2] = static_cast<int>(flat / cells_[1]);
    return ijk;
}

int Grid::locate(int axis, double x) const {
    return static_cast<int>(std::floor((x - box_.lo[axis]) / step_[axis]));
}

bool Grid::locate(const Point& x, Index3& out) const {
    out = {0, 0, 0};
    for (int d = 0; d < dim(); ++d) {
        int k = locate(d, x[d]);
        // Points on the upper boundary belong to the last cell.
        if (k == cells_[d] && x[d] <= box_.hi[d]) k = cells_[d] - 1;
        if (k < 0 || k >= cells_[d]) return false;
        out[d] = k;
    }
    return true;
}

bool Grid::same_as(const Grid& other) const {
    if (dim() != other.dim()) return false;
    for (int d = 0; d < dim(); ++d)
        if (cells_[d] != other.cells_[d] || box_.lo[d] != other.box_.lo[d] || box_.hi[d] != other.box_.hi[d])
            return false;
    return true;
}

double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

}  // namespace lpbm

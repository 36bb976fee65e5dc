#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace lpbm {

using Point = std::array<double, 3>;
using Index3 = std::array<int, 3>;

struct Box {
    int dim = 1;
    Point lo{0.0, 0.0, 0.0};
    Point hi{0.0, 0.0, 0.0};

    static Box cube(int dim, double lo, double hi);
    double extent(int axis) const { return hi[axis] - lo[axis]; }
    bool contains(const Box& other, double tol = 0.0) const;
    std::string to_string() const;
};

// Axis-aligned box split into cells; all cell geometry goes through the
// accessors below so that every kernel evaluates identical expressions.
class Grid {
public:
    Grid() = default;
    Grid(const Box& box, const Index3& cells);
    static Grid uniform(const Box& box, int resolution);

    int dim() const { return box_.dim; }
    const Box& box() const { return box_; }
    int cells(int axis) const { return cells_[axis]; }
    const Index3& cells() const { return cells_; }
    double step(int axis) const { return step_[axis]; }
    double max_step() const;
    double min_step() const;
    std::size_t size() const { return size_; }
    double cell_volume() const;

    double cell_lo(int axis, int k) const { return box_.lo[axis] + k * step_[axis]; }
    double cell_hi(int axis, int k) const { return box_.lo[axis] + (k + 1) * step_[axis]; }
    double center(int axis, int k) const { return box_.lo[axis] + (k + 0.5) * step_[axis]; }
    Point center(const Index3& ijk) const;
    Point center(std::size_t flat) const { return center(unravel(flat)); }

    std::size_t index(const Index3& ijk) const {
        return (static_cast<std::size_t>(ijk[2]) * cells_[1] + ijk[1]) * cells_[0] + ijk[0];
    }
    Index3 unravel(std::size_t flat) const;
    // Cell whose half-open extent contains x (may be outside [0, cells)).
    int locate(int axis, double x) const;
    bool locate(const Point& x, Index3& out) const;

    bool same_as(const Grid& other) const;

private:
    Box box_;
    Index3 cells_{1, 1, 1};
    Point step_{1.0, 1.0, 1.0};
    std::size_t size_ = 1;
};

// Deterministic pairwise reduction.
double pairwise_sum(const double* v, std::size_t n);
inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

}  // namespace lpbm

#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "lpbm/geometry.hpp"
#include "lpbm/grid.hpp"

namespace lpbm {

// Nonnegative function, constant on each cell of a grid.  The support is the
// set of cells with a positive value.
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(const Grid& grid, std::vector<double> values);
    static GridFunction sample(const Grid& grid, const std::function<double(const Point&)>& f);
    static GridFunction indicator(const GridMask& mask);

    const Grid& grid() const { return grid_; }
    int dim() const { return grid_.dim(); }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    bool in_support(std::size_t i) const { return values_[i] > 0; }
    bool empty_support() const;
    GridMask support() const;
    double max_value() const;

    // Inclusive index range of the support cells.
    std::pair<Index3, Index3> support_index_bbox() const;
    // Box spanned by the support cells.
    Box support_bbox() const;

    // Value of the cell containing x; 0 outside the grid.
    double value_at(const Point& x) const;
    // Largest value over the cells whose closed extent contains the origin.
    double value_at_origin() const;
    // Largest value over cells within `cells` cells of the one containing x.
    double max_near(const Point& x, int cells) const;

    GridFunction times(double c) const;
    GridFunction pow(double e) const;

private:
    Grid grid_;
    std::vector<double> values_;
};

}  // namespace lpbm

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "lpbm/grid.hpp"

namespace lpbm {

using Vec2 = std::array<double, 2>;

// Convex primitives read from configs.
struct Shape {
    enum class Kind { Interval, Box, Ball, Polygon, HalfSpaces };
    Kind kind = Kind::Interval;
    int dim = 1;
    Box box;                         // Interval / Box
    Point center{0.0, 0.0, 0.0};     // Ball
    double radius = 0.0;
    std::vector<Vec2> vertices;      // Polygon, also the resolved HalfSpaces polygon
    std::vector<Point> normals;      // HalfSpaces: <n, x> <= offset
    std::vector<double> offsets;

    static Shape interval(double a, double b);
    static Shape box_shape(const Box& b);
    static Shape ball(int dim, const Point& center, double radius);
    static Shape polygon(std::vector<Vec2> vertices);
    static Shape halfspaces(int dim, std::vector<Point> normals, std::vector<double> offsets);

    bool contains(const Point& x) const;
    double support(const Point& u) const;
    Box bounding_box() const;
};

struct GridMask {
    Grid grid;
    std::vector<std::uint8_t> inside;

    explicit GridMask(const Grid& g) : grid(g), inside(g.size(), 0) {}
    GridMask(const Grid& g, std::vector<std::uint8_t> m);
    std::size_t count() const;
    bool empty() const { return count() == 0; }
};

GridMask rasterize(const Shape& shape, const Grid& grid);

class SampledSet {
public:
    SampledSet() = default;
    static SampledSet from_points(int dim, std::vector<double> coords);
    static SampledSet from_mask(const GridMask& mask);
    static SampledSet from_shape(const Shape& shape, const Grid& grid);

    int dim() const { return dim_; }
    std::size_t size() const { return dim_ ? coords_.size() / dim_ : 0; }
    bool empty() const { return size() == 0; }
    const std::vector<double>& coords() const { return coords_; }
    const double* point(std::size_t i) const { return coords_.data() + i * dim_; }

    bool has_grid() const { return mask_.has_value(); }
    const GridMask& mask() const;
    // Cells containing at least one sample point.
    GridMask to_mask(const Grid& grid) const;

private:
    int dim_ = 0;
    std::vector<double> coords_;
    std::optional<GridMask> mask_;
};

// Convex body given by support values; dim 1 uses directions {+1, -1},
// dim 2 uses D equally spaced angles 2*pi*k/D.
class SupportBody {
public:
    SupportBody() = default;
    static SupportBody from_values(int dim, std::vector<double> h);
    static SupportBody from_shape(const Shape& shape, int directions = 360);
    static SupportBody interval(double a, double b);

    int dim() const { return dim_; }
    std::size_t directions() const { return h_.size(); }
    const std::vector<double>& h() const { return h_; }
    Point direction(std::size_t k) const;
    bool same_directions(const SupportBody& other) const;
    bool origin_interior() const;

    // Counter-clockwise vertices of the intersection of the half-planes.
    std::vector<Vec2> polygon() const;
    // Support values re-read from the polygon, i.e. the tightest consistent body.
    SupportBody repaired() const;
    double lebesgue_volume() const;
    bool contains(const Point& x, double tol = 0.0) const;
    Box bounding_box() const;
    SupportBody scaled(double c) const;
    GridMask rasterize(const Grid& grid) const;
    SampledSet sample(const Grid& grid) const;

private:
    int dim_ = 0;
    std::vector<double> h_;
};

SupportBody firey_combine(const SupportBody& K, const SupportBody& L, double p, double alpha, double beta);
// Hausdorff distance of two convex bodies: sup |h_K - h_L| over the directions.
double support_distance(const SupportBody& K, const SupportBody& L);

// Star body about the origin sampled on a direction set with quadrature weights.
struct RadialBody {
    int dim = 1;
    std::vector<double> dirs;     // flat, dim per direction
    std::vector<double> weights;  // surface quadrature weights on the sphere
    std::vector<double> rho;

    static RadialBody with_directions(int dim, int directions);
    std::size_t size() const { return rho.size(); }
    Point direction(std::size_t k) const;
    double volume() const;
    // Radial value in the direction of x (interpolated in 2D, nearest in 3D).
    double radius_toward(const Point& x) const;
    bool contains(const Point& x, double tol = 0.0) const;
};

// Uniform nodes k/(count-1); count >= 2.
std::vector<double> uniform_lambdas(int count);

// {a x + b y}: all sampled x in A, y in B, lambda on the uniform grid.  Points
// landing in the same cell of a lattice of the given quantum are merged
// (quantum = 0 keeps every point).
SampledSet lyz_combine(const SampledSet& A, const SampledSet& B, double p, double alpha, double beta,
                       int lambda_grid, double quantum = 0.0);
// Same with explicit lambda nodes.
SampledSet lyz_combine(const SampledSet& A, const SampledSet& B, double p, double alpha, double beta,
                       const std::vector<double>& lambdas, double quantum = 0.0);

bool is_weakly_unconditional(const SampledSet& A, double tol);
SampledSet cartesian_power(const SampledSet& A, int m);
double hausdorff_distance(const SampledSet& A, const SampledSet& B);
double directed_hausdorff(const SampledSet& A, const SampledSet& B);

// Volume-normalise both sets (given their volumes) and compare.
bool are_dilates(const SampledSet& A, double volA, const SampledSet& B, double volB, double tol);

}  // namespace lpbm

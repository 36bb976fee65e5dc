#pragma once

#include <functional>

#include "lpbm/densities.hpp"
#include "lpbm/geometry.hpp"
#include "lpbm/grid_function.hpp"
#include "lpbm/supconv.hpp"

namespace lpbm {

// Volume of the Euclidean unit ball in R^k.
double unit_ball_volume(int k);

// {(x, y) : x in supp w, |y| <= w(x)^{1/fiber_dim}}.
struct RevolutionBody {
    GridFunction profile;
    int fiber_dim = 1;
};

// Product of `copies` independent copies of `base`, with an ell-dimensional
// fibre of radius (prod w(x_i))^{1/ell}.
struct MultipleFunction {
    GridFunction base;
    int copies = 1;
};

double revolution_volume(const RevolutionBody& body);
double revolution_volume(const RevolutionBody& body, const Quadrature& q);
// Cell count of the region itself; base cells of the profile times a fibre
// lattice with `fiber_cells` cells per axis.
double revolution_volume_direct(const RevolutionBody& body, int fiber_cells = 128);
// Mask of the region in R^{n+s}, n + s <= 3.
GridMask revolution_region(const RevolutionBody& body, int fiber_cells = 64);

double multiple_volume(const MultipleFunction& mf, int ell);
// Direct count; n*m + ell <= 4.
double multiple_volume_direct(const MultipleFunction& mf, int ell, int fiber_cells = 64);

struct InclusionReport {
    std::size_t points = 0;
    std::size_t violations = 0;
    double worst_excess = 0.0;  // largest |y| - allowed radius over the samples
};

// Samples (1-t) ._p B_s(f) +_p t ._p B_s(g) and checks membership in B_s(h) with
// h the supremal convolution; s = ell / copies must be a positive rational with
// n * copies + ell <= 4 (copies = 1 is the A_s body).
InclusionReport check_inclusion_lemma(const GridFunction& f, const GridFunction& g, const ConvolutionParams& params,
                                      int copies = 1, int samples_per_axis = 6);

// Radial function of K_q(f): (q / max f * int_0^inf f(ru) r^{q-1} dr)^{1/q}.
RadialBody ball_body(const GridFunction& f, double q, int directions = 360);
RadialBody ball_body(const std::function<double(const Point&)>& f, int dim, double fmax, double reach, double q,
                     int directions = 360);

struct LevelBody {
    GridMask mask;
    SampledSet set;
    RadialBody K;
    double km_ratio = 1.0;     // smallest c with L_n(f) in c K_n(f), at least 1
    bool contains_K = false;   // K_n(f) in L_n(f) within one cell
};

// Super-level set {f >= e^{-n} max f} together with K_n(f).
LevelBody level_body(const GridFunction& f, int directions = 360);

}  // namespace lpbm

#pragma once

#include <optional>
#include <vector>

#include "lpbm/extended_real.hpp"
#include "lpbm/geometry.hpp"
#include "lpbm/grid_function.hpp"

namespace lpbm {

// How a pair of values is combined for given weights.
//   Power:     [wA f^{1/s} + wB g^{1/s}]^s      (0 < s < inf)
//   Max:       max over the positive-weight terms (s = 0)
//   Geometric: f^{wA} g^{wB}                      (s = +inf, log-concave)
//   Min:       min over the positive-weight terms
enum class CombineRule { Power, Max, Geometric, Min };

CombineRule rule_for(const ExtendedReal& s);
const char* to_string(CombineRule r);

struct ConvolutionParams {
    double p = 1.0;
    double t = 0.5;
    ExtendedReal s = ExtendedReal::finite(1.0);
    int lambda_grid = 129;
    std::vector<double> lambdas;      // explicit nodes, overrides lambda_grid
    std::optional<CombineRule> rule;  // defaults to rule_for(s)
    Index3 output_cells{0, 0, 0};     // 0: fitted to the finest input step

    CombineRule combine_rule() const { return rule ? *rule : rule_for(s); }
    void validate() const;
};

enum class KernelKind { Pruned, Naive };

// Nodes used for the outer supremum: uniform grid plus beta/(alpha+beta);
// a single node when p = 1 (weights do not depend on lambda).
std::vector<double> lambda_nodes(const ConvolutionParams& params, double alpha, double beta);

// (alpha x f)(x) = alpha^{s/p} f(x / alpha^{1/p}) on the dilated grid.  At s = 0
// values are kept; at s = +inf values are raised to alpha^{1/p}.
GridFunction scale_ps(const GridFunction& f, double alpha, double p, const ExtendedReal& s);

// alpha x f (+) beta x g.
GridFunction oplus_ps(const GridFunction& f, const GridFunction& g, const ConvolutionParams& params, double alpha,
                      double beta, KernelKind kernel = KernelKind::Pruned);

// (1-t) x f (+) t x g.
GridFunction lp_supremal_convolution(const GridFunction& f, const GridFunction& g, const ConvolutionParams& params,
                                     KernelKind kernel = KernelKind::Pruned);

// Grid form of alpha ._p A +_p beta ._p B.
GridMask lp_combination(const GridMask& A, const GridMask& B, double p, double alpha, double beta,
                        int lambda_grid = 129, KernelKind kernel = KernelKind::Pruned);

// Nearest-cell resampling with the support dilated by one cell.
GridFunction resample(const GridFunction& f, const Grid& target);

// Most negative midpoint violation of the concavity matching the combine rule,
// over pairs of output cells whose midpoint is a cell centre.
double check_concavity_preservation(const GridFunction& f, const GridFunction& g, const ConvolutionParams& params);

// Largest absolute difference of two functions on the same grid.
double max_abs_difference(const GridFunction& a, const GridFunction& b);

}  // namespace lpbm

#pragma once

#include <span>
#include <utility>

#include "lpbm/extended_real.hpp"

namespace lpbm {

struct MeanParams {
    ExtendedReal alpha;
    double t = 0.5;
};

// M_alpha^t(a, b); zero whenever ab = 0.
double generalized_mean(const MeanParams& params, double a, double b);

struct LpWeights {
    double p = 1.0;
    double t = 0.0;
    double lambda = 0.0;
    double wA = 1.0;
    double wB = 0.0;
};

LpWeights lp_weight_pair(double p, double t, double lambda);

// Coefficients alpha^{1/p}(1-l)^{(p-1)/p} and beta^{1/p} l^{(p-1)/p}.
std::pair<double, double> lp_weights(double p, double alpha, double beta, double lambda);

bool product_holder_bound(std::span<const double> a, std::span<const double> b);

}  // namespace lpbm

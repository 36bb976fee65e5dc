#include "lpbm/means.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lpbm {

double generalized_mean(const MeanParams& params, double a, double b) {
    if (a < 0 || b < 0) throw std::invalid_argument("generalized_mean: negative argument");
    if (params.t < 0 || params.t > 1) throw std::invalid_argument("generalized_mean: t outside [0,1]");
    if (a * b == 0.0) return 0.0;
    const double t = params.t;
    switch (params.alpha.kind()) {
        case ExtendedReal::Kind::PosInf: return std::max(a, b);
        case ExtendedReal::Kind::NegInf: return std::min(a, b);
        case ExtendedReal::Kind::Zero: return std::pow(a, 1.0 - t) * std::pow(b, t);
        case ExtendedReal::Kind::Finite: break;
    }
    const double al = params.alpha.value();
    if (t == 0.0) return a;
    if (t == 1.0) return b;
    // Factor out the larger argument to keep a^alpha in range.
    const double m = std::max(a, b);
    const double ra = a / m, rb = b / m;
    return m * std::pow((1.0 - t) * std::pow(ra, al) + t * std::pow(rb, al), 1.0 / al);
}

std::pair<double, double> lp_weights(double p, double alpha, double beta, double lambda) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_weights: p must be >= 1");
    if (alpha < 0 || beta < 0) throw std::invalid_argument("lp_weights: negative coefficient");
    if (lambda < 0 || lambda > 1) throw std::invalid_argument("lp_weights: lambda outside [0,1]");
    const double q = (p - 1.0) / p;
    const double wA = std::pow(alpha, 1.0 / p) * std::pow(1.0 - lambda, q);
    const double wB = std::pow(beta, 1.0 / p) * std::pow(lambda, q);
    return {wA, wB};
}

LpWeights lp_weight_pair(double p, double t, double lambda) {
    if (t < 0 || t > 1) throw std::invalid_argument("lp_weight_pair: t outside [0,1]");
    auto [wA, wB] = lp_weights(p, 1.0 - t, t, lambda);
    return LpWeights{p, t, lambda, wA, wB};
}

bool product_holder_bound(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("product_holder_bound: length mismatch");
    if (a.empty()) throw std::invalid_argument("product_holder_bound: empty sequences");
    const double m = static_cast<double>(a.size());
    double pa = 1.0, pb = 1.0, rhs = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double x = std::abs(a[i]), y = std::abs(b[i]);
        pa *= x;
        pb *= y;
        rhs *= std::pow(std::pow(x, m) + std::pow(y, m), 1.0 / m);
    }
    const double lhs = pa + pb;
    return lhs <= rhs * (1.0 + 1e-12) + 1e-300;
}

}  // namespace lpbm

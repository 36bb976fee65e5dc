#pragma once

#include <string>
#include <vector>

#include "lpbm/densities.hpp"
#include "lpbm/extended_real.hpp"
#include "lpbm/geometry.hpp"
#include "lpbm/grid_function.hpp"
#include "lpbm/supconv.hpp"

namespace lpbm {

// F(t) = t^kappa or F(t) = log t.
struct FSpec {
    enum class Kind { Power, Log };
    Kind kind = Kind::Power;
    double kappa = 1.0;

    static FSpec power(double kappa);
    static FSpec log() { return {Kind::Log, 0.0}; }

    double operator()(double x) const;
    double derivative(double x) const;
    double inverse(double y) const;
    std::string name() const;
};

// eps_k = eps0 * 2^-k, k = 0..K.
struct EpsSchedule {
    double eps0 = 0.1;
    int K = 6;

    std::vector<double> values() const;
};

struct QuotientTable {
    std::vector<double> eps;
    std::vector<double> quotients;
    double richardson = 0.0;     // 2 Q_K - Q_{K-1}
    double trailing_min = 0.0;   // min of the last three quotients
    bool divergent = false;      // last quotient above 1/eps
    // Reported value: trailing_min, +inf when divergent.
    double value() const;
};

QuotientTable make_quotient_table(std::vector<double> eps, std::vector<double> quotients);

// [int f (+) (eps x g) dmu - int f dmu] / eps over the schedule.
QuotientTable surface_area(const Density& mu, const GridFunction& f, const GridFunction& g, double p,
                           const ExtendedReal& s, const EpsSchedule& sched = {}, int lambda_grid = 129);

// F'(1) * [mu(A +_p eps ._p B) - mu(A)] / eps.
QuotientTable mixed_volume_VpF(const Density& mu, const FSpec& F, const SupportBody& A, const SupportBody& B,
                               double p, const EpsSchedule& sched = {});

// mu(A) / F'(1) - left derivative of mu(eps ._p A) at eps = 1.  The table holds
// the backward quotients; value() of the result is in `residual`.
struct ResidualReport {
    QuotientTable derivative;
    double measure = 0.0;
    double residual = 0.0;
};
ResidualReport residual_MpF(const Density& mu, const FSpec& F, const SupportBody& A, double p,
                            const EpsSchedule& sched = {});

// min over t of F(int h_t dmu) - [(1-t) F(int f dmu) + t F(int g dmu)].
double check_F_concavity(const Density& mu, const FSpec& F, const GridFunction& f, const GridFunction& g,
                         const ConvolutionParams& params, const std::vector<double>& t_grid);

// Same for bodies under the Firey combination, together with midpoint
// concavity of eps -> F(mu(eps ._p A)) and eps -> F(mu(A +_p eps ._p B)).
double check_F_concavity(const Density& mu, const FSpec& F, const SupportBody& A, const SupportBody& B, double p,
                         const std::vector<double>& t_grid);

}  // namespace lpbm

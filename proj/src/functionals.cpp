#include "lpbm/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lpbm/parallel.hpp"

namespace lpbm {

FSpec FSpec::power(double kappa) {
    if (!(kappa > 0)) throw std::invalid_argument("FSpec: exponent must be positive");
    return {Kind::Power, kappa};
}

double FSpec::operator()(double x) const {
    return kind == Kind::Log ? std::log(x) : std::pow(x, kappa);
}

double FSpec::derivative(double x) const {
    return kind == Kind::Log ? 1.0 / x : kappa * std::pow(x, kappa - 1.0);
}

double FSpec::inverse(double y) const {
    return kind == Kind::Log ? std::exp(y) : std::pow(y, 1.0 / kappa);
}

std::string FSpec::name() const {
    if (kind == Kind::Log) return "log";
    char buf[64];
    std::snprintf(buf, sizeof buf, "t^%.12g", kappa);
    return buf;
}

std::vector<double> EpsSchedule::values() const {
    if (!(eps0 > 0) || K < 0) throw std::invalid_argument("EpsSchedule: need eps0 > 0 and K >= 0");
    std::vector<double> v;
    for (int k = 0; k <= K; ++k) v.push_back(std::ldexp(eps0, -k));
    return v;
}

double QuotientTable::value() const {
    return divergent ? std::numeric_limits<double>::infinity() : trailing_min;
}

QuotientTable make_quotient_table(std::vector<double> eps, std::vector<double> quotients) {
    if (eps.empty() || eps.size() != quotients.size()) throw std::invalid_argument("quotient table: bad sizes");
    QuotientTable t;
    t.eps = std::move(eps);
    t.quotients = std::move(quotients);
    const std::size_t n = t.quotients.size();
    t.richardson = n >= 2 ? 2.0 * t.quotients[n - 1] - t.quotients[n - 2] : t.quotients[n - 1];
    t.trailing_min = HUGE_VAL;
    for (std::size_t i = n >= 3 ? n - 3 : 0; i < n; ++i) t.trailing_min = std::min(t.trailing_min, t.quotients[i]);
    t.divergent = !std::isfinite(t.quotients[n - 1]) || t.quotients[n - 1] > 1.0 / t.eps[n - 1];
    return t;
}

QuotientTable surface_area(const Density& mu, const GridFunction& f, const GridFunction& g, double p,
                           const ExtendedReal& s, const EpsSchedule& sched, int lambda_grid) {
    const std::vector<double> eps = sched.values();
    const double base = integrate(mu, f);
    ConvolutionParams cp;
    cp.p = p;
    cp.s = s;
    cp.lambda_grid = lambda_grid;
    auto [lo, hi] = f.support_index_bbox();
    for (int d = 0; d < f.dim(); ++d) cp.output_cells[d] = hi[d] - lo[d] + 1;
    std::vector<double> q(eps.size());
    for (std::size_t k = 0; k < eps.size(); ++k) {
        const GridFunction h = oplus_ps(f, g, cp, 1.0, eps[k]);
        q[k] = (integrate(mu, h) - base) / eps[k];
    }
    return make_quotient_table(eps, std::move(q));
}

QuotientTable mixed_volume_VpF(const Density& mu, const FSpec& F, const SupportBody& A, const SupportBody& B,
                               double p, const EpsSchedule& sched) {
    const std::vector<double> eps = sched.values();
    const double base = measure_of_body(mu, A);
    const double d1 = F.derivative(1.0);
    std::vector<double> q(eps.size());
    for (std::size_t k = 0; k < eps.size(); ++k)
        q[k] = d1 * (measure_of_body(mu, firey_combine(A, B, p, 1.0, eps[k])) - base) / eps[k];
    return make_quotient_table(eps, std::move(q));
}

ResidualReport residual_MpF(const Density& mu, const FSpec& F, const SupportBody& A, double p,
                            const EpsSchedule& sched) {
    const std::vector<double> eps = sched.values();
    ResidualReport r;
    r.measure = measure_of_body(mu, A);
    std::vector<double> q(eps.size());
    for (std::size_t k = 0; k < eps.size(); ++k)
        q[k] = (r.measure - measure_of_body(mu, A.scaled(std::pow(1.0 - eps[k], 1.0 / p)))) / eps[k];
    r.derivative = make_quotient_table(eps, std::move(q));
    r.residual = r.measure / F.derivative(1.0) - r.derivative.value();
    return r;
}

double check_F_concavity(const Density& mu, const FSpec& F, const GridFunction& f, const GridFunction& g,
                         const ConvolutionParams& params, const std::vector<double>& t_grid) {
    const double If = integrate(mu, f), Ig = integrate(mu, g);
    std::vector<double> margins(t_grid.size(), 0.0);
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double t = t_grid[i];
        if (t <= 0.0 || t >= 1.0) continue;
        ConvolutionParams cp = params;
        cp.t = t;
        const double Ih = integrate(mu, lp_supremal_convolution(f, g, cp));
        margins[i] = F(Ih) - ((1.0 - t) * F(If) + t * F(Ig));
    }
    double worst = 0.0;
    for (double m : margins) worst = std::min(worst, m);
    return worst;
}

double check_F_concavity(const Density& mu, const FSpec& F, const SupportBody& A, const SupportBody& B, double p,
                         const std::vector<double>& t_grid) {
    const double mA = measure_of_body(mu, A), mB = measure_of_body(mu, B);
    double worst = 0.0;
    for (double t : t_grid) {
        if (t <= 0.0 || t >= 1.0) continue;
        const double m = measure_of_body(mu, firey_combine(A, B, p, 1.0 - t, t));
        worst = std::min(worst, F(m) - ((1.0 - t) * F(mA) + t * F(mB)));
    }
    // eps on (0, 2]; the pairs (eps_i, eps_{i+2}) have midpoint eps_{i+1}.
    std::vector<double> scale, sum;
    for (int i = 1; i <= 8; ++i) {
        const double e = 0.25 * i;
        scale.push_back(F(measure_of_body(mu, A.scaled(std::pow(e, 1.0 / p)))));
        sum.push_back(F(measure_of_body(mu, firey_combine(A, B, p, 1.0, e))));
    }
    for (std::size_t i = 0; i + 2 < scale.size(); ++i) {
        worst = std::min(worst, scale[i + 1] - 0.5 * (scale[i] + scale[i + 2]));
        worst = std::min(worst, sum[i + 1] - 0.5 * (sum[i] + sum[i + 2]));
    }
    return worst;
}

}  // namespace lpbm

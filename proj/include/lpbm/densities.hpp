#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lpbm/geometry.hpp"
#include "lpbm/grid.hpp"
#include "lpbm/grid_function.hpp"

namespace lpbm {

// One-dimensional profile psi(x); `scale` is sigma / half-width / decay length.
struct Profile {
    enum class Kind { Constant, Gaussian, Triangular, Cauchy, Exponential, Box, Table };
    Kind kind = Kind::Constant;
    double scale = 1.0;
    std::vector<double> xs, ys;  // Table: linear interpolation, 0 outside

    static Profile constant() { return {}; }
    static Profile gaussian(double sigma) { return {Kind::Gaussian, sigma, {}, {}}; }
    static Profile triangular(double half_width) { return {Kind::Triangular, half_width, {}, {}}; }
    static Profile cauchy(double width) { return {Kind::Cauchy, width, {}, {}}; }
    static Profile exponential(double length) { return {Kind::Exponential, length, {}, {}}; }
    static Profile box(double half_width) { return {Kind::Box, half_width, {}, {}}; }
    static Profile table(std::vector<double> xs, std::vector<double> ys);
    // Two-column "x value" text file; '#' starts a comment.
    static Profile table_file(const std::string& path);

    double operator()(double x) const;
    std::string name() const;
};

enum class ConcavityClass { SConcave, LogConcave, QuasiConcaveProduct };

std::string to_string(ConcavityClass c);

class Density {
public:
    enum class Kind { Lebesgue, Gaussian, SConcavePower, LogConcaveExp, QuasiConcaveProduct };

    static Density lebesgue();
    // Normalised standard normal density in dimension dim.
    static Density gaussian(int dim);
    // phi(x) = base(|x|)^s; declared (1/s)-concave.
    static Density s_concave_power(int dim, double s, const Profile& base);
    // phi(x) = exp(-V(|x|)) with V tabulated and extended linearly.
    static Density log_concave_exp(int dim, std::vector<double> xs, std::vector<double> potential);
    static Density quasi_concave_product(std::vector<Profile> factors);

    Kind kind() const { return kind_; }
    // 0 for Lebesgue (any dimension).
    int dim() const { return dim_; }
    ConcavityClass declared_class() const { return class_; }
    double declared_s() const { return s_; }
    const std::string& name() const { return name_; }

    double operator()(const Point& x) const;

    bool is_lebesgue() const { return kind_ == Kind::Lebesgue; }
    // (1/s)-concave for the given s (an (1/s0)-concave density is (1/s)-concave for s >= s0).
    bool is_s_concave(double s) const;
    bool is_log_concave() const;
    // Factors of a product density, each quasi-concave with maximum at 0.
    std::optional<std::vector<Profile>> product_factors(int dim) const;

private:
    Kind kind_ = Kind::Lebesgue;
    int dim_ = 0;
    ConcavityClass class_ = ConcavityClass::SConcave;
    double s_ = 0.0;
    Profile base_;
    std::vector<Profile> factors_;
    std::vector<double> xs_, v_;
    std::string name_ = "lebesgue";
};

struct Quadrature {
    Box box;
    int resolution = 64;

    Quadrature() = default;
    Quadrature(const Box& b, int res);
    Grid grid() const { return Grid::uniform(box, resolution); }
};

double measure_of_set(const Density& mu, const SampledSet& A, const Quadrature& q);
double measure_of_mask(const Density& mu, const GridMask& A);
double integrate(const Density& mu, const GridFunction& f, const Quadrature& q);
// Integral of f^power against mu on f's own grid.
double integrate_pow(const Density& mu, const GridFunction& f, double power);
inline double integrate(const Density& mu, const GridFunction& f) { return integrate_pow(mu, f, 1.0); }
// Body-fitted quadrature (smooth in the support values).
double measure_of_body(const Density& mu, const SupportBody& K);

struct ConcavityReport {
    ConcavityClass declared = ConcavityClass::SConcave;
    double s = 0.0;
    double worst_violation = 0.0;
    std::size_t pairs = 0;
    bool holds(double tol) const { return worst_violation >= -tol; }
};

ConcavityReport classify_concavity(const Density& mu, const Quadrature& q);

}  // namespace lpbm

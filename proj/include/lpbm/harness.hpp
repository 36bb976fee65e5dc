#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpbm/densities.hpp"
#include "lpbm/extended_real.hpp"
#include "lpbm/functionals.hpp"
#include "lpbm/geometry.hpp"
#include "lpbm/grid_function.hpp"

namespace lpbm {

enum class TheoremId {
    BBL,
    LP_BBL,
    LP_BMI_SETS,
    LP_BMI_SCONCAVE,
    LP_PLI_PRODUCT,
    LP_PLI_SETS,
    LP_BMI_PRODUCT,
    LEMMA_1D,
    PL_RECOVERY,
    MFI,
    ISMI,
    GZ_PRODUCT_MIN,
    GZ_LP_PRODUCT,
    GZ_LOGCONCAVE_C,
    GZ_RADIAL_DECAY,
};

const std::vector<TheoremId>& all_theorems();
std::string to_string(TheoremId id);
std::optional<TheoremId> parse_theorem(std::string_view name);

// A function on the fixture grid: indicator of a shape, a radial profile
// height * psi(|x - center|), or a product of one-dimensional profiles.
struct FunctionSpec {
    enum class Kind { Indicator, Radial, Product };
    Kind kind = Kind::Indicator;
    Shape shape;
    Profile profile;
    std::vector<Profile> factors;
    Point center{0.0, 0.0, 0.0};
    double height = 1.0;

    static FunctionSpec indicator(const Shape& s, double height = 1.0);
    static FunctionSpec radial(const Profile& p, double height = 1.0);
    static FunctionSpec product(std::vector<Profile> factors, double height = 1.0);

    double operator()(const Point& x, int dim) const;
    GridFunction build(const Grid& grid) const;
};

struct Fixture {
    std::string name = "fixture";
    int dim = 1;
    Density mu = Density::lebesgue();
    Box box = Box::cube(1, -2.0, 2.0);
    int resolution = 128;
    int directions = 360;
    std::optional<Shape> A, B;
    std::optional<FunctionSpec> f, g;

    Grid grid() const { return Grid::uniform(box, resolution); }
};

struct CheckParams {
    double p = 1.0;
    double t = 0.5;
    ExtendedReal s = ExtendedReal::finite(1.0);
    int lambda_grid = 129;
    double tolerance_scale = 1.0;
    // Also run the naive kernel and record the largest difference.
    bool verify_kernels = false;
};

struct CheckReport {
    TheoremId id = TheoremId::BBL;
    std::string fixture;
    double p = 1.0;
    double t = 0.5;
    std::optional<double> lambda;
    ExtendedReal s = ExtendedReal::finite(1.0);
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    double tolerance = 0.0;
    bool applicable = true;
    bool pass = false;
    std::vector<std::string> hypothesis_violations;
    std::optional<double> kernel_difference;
    std::optional<double> instance_constant;  // GZ_LOGCONCAVE_C
    std::string notes;
};

CheckReport check_inequality(TheoremId id, const Fixture& fixture, const CheckParams& params);

// One report per (p, t, s) point, p outermost, s innermost.
std::vector<CheckReport> sweep(TheoremId id, const Fixture& fixture, const std::vector<double>& ps,
                               const std::vector<double>& ts, const std::vector<ExtendedReal>& ss,
                               const CheckParams& base = {});

struct GzEstimate {
    double C = 1.0;
    std::string witness;
    double p = 1.0;
    double t = 0.5;
    std::size_t instances = 0;
    std::vector<std::string> skipped;
};

// max over instances of ([(1-t) mu(K)^{p/n} + t mu(L)^{p/n}] / mu(comb)^{p/n})^{1/p}.
GzEstimate estimate_gz_constant(const std::vector<Fixture>& family, const std::vector<double>& ps,
                                const std::vector<double>& ts);

// Built-in fixture families.
struct SuiteEntry {
    TheoremId id;
    Fixture fixture;
    std::vector<double> ps, ts;
    std::vector<ExtendedReal> ss;
    CheckParams base;
};
std::vector<SuiteEntry> builtin_suite();
std::vector<Fixture> builtin_gz_family();
std::vector<CheckReport> run_selftest(double tolerance_scale = 1.0, bool verify_kernels = true);

}  // namespace lpbm

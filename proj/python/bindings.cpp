#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <string>

#include "lpbm/config.hpp"
#include "lpbm/functionals.hpp"
#include "lpbm/harness.hpp"
#include "lpbm/means.hpp"
#include "lpbm/report.hpp"
#include "lpbm/supconv.hpp"

namespace py = pybind11;
using namespace lpbm;

namespace {

// Accepts a float (inf allowed) or a string such as "inf", "-inf", "0".
ExtendedReal to_ext(const py::object& v) {
    if (py::isinstance<py::str>(v)) return ExtendedReal::parse(v.cast<std::string>());
    return ExtendedReal::from_double(v.cast<double>());
}

RunConfig config_from_text(const std::string& text, const std::string& base_dir) {
    return parse_config(IniDocument::parse(text), base_dir);
}

Grid line(double lo, double hi, std::size_t n) { return Grid::uniform(Box::cube(1, lo, hi), static_cast<int>(n)); }

}  // namespace

PYBIND11_MODULE(_lpbm, m) {
    m.doc() = "Grid-based checks of L_p Brunn-Minkowski type inequalities";
    m.attr("__version__") = kVersion;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def(
        "generalized_mean",
        [](double a, double b, const py::object& alpha, double t) { return generalized_mean({to_ext(alpha), t}, a, b); },
        py::arg("a"), py::arg("b"), py::arg("alpha"), py::arg("t"));
    m.def("lp_weights", &lp_weights, py::arg("p"), py::arg("alpha"), py::arg("beta"), py::arg("lam"));
    m.def(
        "lambda_nodes",
        [](double p, double t, int lambda_grid) {
            ConvolutionParams cp;
            cp.p = p;
            cp.t = t;
            cp.lambda_grid = lambda_grid;
            return lambda_nodes(cp, 1 - t, t);
        },
        py::arg("p"), py::arg("t"), py::arg("lambda_grid") = 129);

    m.def(
        "sup_convolution_1d",
        [](const std::vector<double>& f, const std::vector<double>& g, double lo, double hi, double p, double t,
           const py::object& s, int lambda_grid, bool naive) {
            if (f.size() != g.size()) throw std::invalid_argument("f and g need the same length");
            const Grid grid = line(lo, hi, f.size());
            ConvolutionParams cp;
            cp.p = p;
            cp.t = t;
            cp.s = to_ext(s);
            cp.lambda_grid = lambda_grid;
            const GridFunction h = lp_supremal_convolution(GridFunction(grid, f), GridFunction(grid, g), cp,
                                                           naive ? KernelKind::Naive : KernelKind::Pruned);
            std::vector<double> x(h.grid().size());
            for (std::size_t i = 0; i < x.size(); ++i) x[i] = h.grid().center(0, static_cast<int>(i));
            return py::make_tuple(x, h.values());
        },
        py::arg("f"), py::arg("g"), py::arg("lo"), py::arg("hi"), py::arg("p"), py::arg("t"), py::arg("s"),
        py::arg("lambda_grid") = 129, py::arg("naive") = false,
        "Combine two functions sampled on a uniform grid over [lo, hi]; returns (centers, values).");

    m.def(
        "surface_area_1d",
        [](const std::vector<double>& f, const std::vector<double>& g, double lo, double hi, double p,
           const py::object& s) {
            const Grid grid = line(lo, hi, f.size());
            const auto q = surface_area(Density::lebesgue(), GridFunction(grid, f), GridFunction(grid, g), p, to_ext(s));
            py::dict d;
            d["value"] = q.value();
            d["richardson"] = q.richardson;
            d["trailing_min"] = q.trailing_min;
            d["eps"] = q.eps;
            d["quotients"] = q.quotients;
            return d;
        },
        py::arg("f"), py::arg("g"), py::arg("lo"), py::arg("hi"), py::arg("p"), py::arg("s"));

    py::class_<CheckReport>(m, "CheckReport")
        .def_property_readonly("theorem_id", [](const CheckReport& r) { return to_string(r.id); })
        .def_readonly("fixture", &CheckReport::fixture)
        .def_readonly("p", &CheckReport::p)
        .def_readonly("t", &CheckReport::t)
        .def_readonly("lam", &CheckReport::lambda)
        .def_property_readonly("s", [](const CheckReport& r) { return r.s.to_string(); })
        .def_readonly("lhs", &CheckReport::lhs)
        .def_readonly("rhs", &CheckReport::rhs)
        .def_readonly("margin", &CheckReport::margin)
        .def_readonly("tolerance", &CheckReport::tolerance)
        .def_readonly("applicable", &CheckReport::applicable)
        .def_readonly("passed", &CheckReport::pass)
        .def_readonly("hypothesis_violations", &CheckReport::hypothesis_violations)
        .def_readonly("kernel_difference", &CheckReport::kernel_difference)
        .def_readonly("instance_constant", &CheckReport::instance_constant)
        .def_readonly("notes", &CheckReport::notes)
        .def("__repr__", [](const CheckReport& r) {
            return "<CheckReport " + to_string(r.id) + " p=" + format_number(r.p) + " t=" + format_number(r.t) +
                   " margin=" + format_number(r.margin) + (r.applicable ? (r.pass ? " pass>" : " FAIL>") : " inapplicable>");
        });

    m.def("theorem_ids", [] {
        std::vector<std::string> out;
        for (TheoremId id : all_theorems()) out.push_back(to_string(id));
        return out;
    });

    m.def(
        "check",
        [](const std::string& text, const std::string& base_dir) {
            const RunConfig rc = config_from_text(text, base_dir);
            std::vector<CheckReport> rows;
            py::gil_scoped_release release;
            for (TheoremId id : rc.problems) {
                const bool have = uses_functions(id) ? (rc.fixture.f && rc.fixture.g) : (rc.fixture.A && rc.fixture.B);
                if (rc.all && !have) continue;
                rows.push_back(check_inequality(id, rc.fixture, rc.params));
            }
            return rows;
        },
        py::arg("config_text"), py::arg("base_dir") = ".", "Run one check per problem named in an INI config.");

    m.def(
        "sweep",
        [](const std::string& text, const std::string& base_dir) {
            const RunConfig rc = config_from_text(text, base_dir);
            std::vector<CheckReport> rows;
            py::gil_scoped_release release;
            for (TheoremId id : rc.problems) {
                const bool have = uses_functions(id) ? (rc.fixture.f && rc.fixture.g) : (rc.fixture.A && rc.fixture.B);
                if (rc.all && !have) continue;
                auto part = lpbm::sweep(id, rc.fixture, rc.ps, rc.ts, rc.ss, rc.params);
                rows.insert(rows.end(), part.begin(), part.end());
            }
            return rows;
        },
        py::arg("config_text"), py::arg("base_dir") = ".");

    m.def(
        "estimate_gz_constant",
        [](const std::vector<double>& ps, const std::vector<double>& ts) {
            py::gil_scoped_release release;
            const GzEstimate e = estimate_gz_constant(builtin_gz_family(), ps, ts);
            py::gil_scoped_acquire acquire;
            py::dict d;
            d["C"] = e.C;
            d["witness"] = e.witness;
            d["p"] = e.p;
            d["t"] = e.t;
            d["instances"] = e.instances;
            d["skipped"] = e.skipped;
            return d;
        },
        py::arg("ps") = std::vector<double>{1.0, 2.0, 4.0}, py::arg("ts") = std::vector<double>{0.1, 0.5, 0.9},
        "Empirical constant over the built-in log-concave family.");

    m.def("to_csv", &to_csv, py::arg("rows"));
}

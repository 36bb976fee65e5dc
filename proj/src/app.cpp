#include "lpbm/app.hpp"

#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "lpbm/config.hpp"
#include "lpbm/report.hpp"

namespace lpbm {

namespace {

struct Overrides {
    std::optional<int> resolution;
    std::optional<int> lambda;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<double> tolerance_scale;
};

void apply(const Overrides& o, RunConfig& rc) {
    if (o.resolution) rc.fixture.resolution = *o.resolution;
    if (o.lambda) rc.params.lambda_grid = *o.lambda;
    if (o.tolerance_scale) rc.params.tolerance_scale = *o.tolerance_scale;
    if (o.out) rc.out_path = *o.out;
    if (o.format) rc.format = *o.format;
}

std::string flags_text(const Overrides& o) {
    std::ostringstream s;
    if (o.resolution) s << " resolution=" << *o.resolution;
    if (o.lambda) s << " lambda=" << *o.lambda;
    if (o.tolerance_scale) s << " tolerance_scale=" << format_number(*o.tolerance_scale);
    return s.str();
}

bool has_inputs(TheoremId id, const Fixture& fx) {
    return uses_functions(id) ? (fx.f && fx.g) : (fx.A && fx.B);
}

int finish(const std::vector<CheckReport>& rows, const std::optional<std::string>& path, const std::string& format,
           const ReportMeta& meta, std::ostream& out, std::ostream& err) {
    std::size_t failed = 0, inapplicable = 0;
    for (const auto& r : rows) {
        if (!r.applicable) ++inapplicable;
        else if (!r.pass) ++failed;
    }
    if (path) {
        write_report(rows, format, *path, meta);
    } else {
        out << (format == "csv" ? to_csv(rows) : to_structured(rows, meta));
    }
    err << rows.size() << " checks: " << rows.size() - failed - inapplicable << " passed, " << failed << " failed, "
        << inapplicable << " inapplicable\n";
    for (const auto& r : rows)
        if (r.applicable && !r.pass)
            err << "FAIL " << to_string(r.id) << " [" << r.fixture << "] p=" << format_number(r.p)
                << " t=" << format_number(r.t) << " s=" << r.s.to_string() << " margin=" << format_number(r.margin)
                << " tolerance=" << format_number(r.tolerance) << '\n';
    if (failed) return 1;
    if (!rows.empty() && inapplicable == rows.size())
        err << "warning: only inapplicable checks ran; no inequality was tested\n";
    if (rows.empty()) err << "warning: no checks ran\n";
    return 0;
}

enum class Mode { Check, Sweep, Gz };

int run_config_mode(Mode mode, const std::string& path, const Overrides& o, std::ostream& out, std::ostream& err) {
    RunConfig rc = load_config(path);
    apply(o, rc);
    if (rc.fixture.resolution < 16) throw ConfigError("resolution must be >= 16");
    if (rc.params.lambda_grid < 2) throw ConfigError("lambda count must be >= 2");
    if (rc.format != "csv" && rc.format != "structured") throw ConfigError("format must be csv or structured");

    ReportMeta meta;
    meta.config_digest = fnv1a_hex(IniDocument::load(path).text + flags_text(o));
    meta.started = utc_timestamp();
    std::vector<CheckReport> rows;

    if (mode == Mode::Gz) {
        std::vector<Fixture> family;
        if (rc.builtin_gz_family) {
            family = builtin_gz_family();
            if (o.resolution)
                for (auto& f : family) f.resolution = *o.resolution;
        } else {
            if (!rc.fixture.A || !rc.fixture.B) throw ConfigError("gz-constant needs [A] and [B] or family = builtin");
            family.push_back(rc.fixture);
        }
        const GzEstimate est = estimate_gz_constant(family, rc.ps, rc.ts);
        for (const auto& s : est.skipped) err << "skipped: " << s << '\n';
        for (const Fixture& fx : family) {
            if (!fx.mu.is_log_concave()) continue;
            CheckParams base = rc.params;
            auto part = sweep(TheoremId::GZ_LOGCONCAVE_C, fx, rc.ps, rc.ts, {ExtendedReal::pos_inf()}, base);
            rows.insert(rows.end(), part.begin(), part.end());
        }
        err << "C_est = " << format_number(est.C) << " over " << est.instances << " instances";
        if (!est.witness.empty())
            err << " (witness " << est.witness << ", p=" << format_number(est.p) << ", t=" << format_number(est.t)
                << ")";
        err << '\n';
    } else {
        for (TheoremId id : rc.problems) {
            if (rc.all && !has_inputs(id, rc.fixture)) {
                err << "skipping " << to_string(id) << ": config lacks its inputs\n";
                continue;
            }
            if (mode == Mode::Check) {
                rows.push_back(check_inequality(id, rc.fixture, rc.params));
            } else {
                auto part = sweep(id, rc.fixture, rc.ps, rc.ts, rc.ss, rc.params);
                rows.insert(rows.end(), part.begin(), part.end());
            }
        }
    }
    meta.finished = utc_timestamp();
    return finish(rows, rc.out_path, rc.format, meta, out, err);
}

int run_selftest_mode(const Overrides& o, std::ostream& out, std::ostream& err) {
    ReportMeta meta;
    meta.config_digest = fnv1a_hex("selftest" + flags_text(o));
    meta.started = utc_timestamp();
    std::vector<CheckReport> rows;
    for (SuiteEntry& e : builtin_suite()) {
        e.base.tolerance_scale = o.tolerance_scale.value_or(1.0);
        e.base.verify_kernels = true;
        if (o.resolution) e.fixture.resolution = *o.resolution;
        if (o.lambda) e.base.lambda_grid = *o.lambda;
        auto part = sweep(e.id, e.fixture, e.ps, e.ts, e.ss, e.base);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    meta.finished = utc_timestamp();
    return finish(rows, o.out, o.format.value_or("csv"), meta, out, err);
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical checks of L_p Brunn-Minkowski type inequalities", "lpbm"};
    app.require_subcommand(1);
    Overrides o;
    int resolution = 0, lambda = 0;
    std::string outp, format;
    double tol = 0.0;
    auto* r = app.add_option("--resolution", resolution, "grid cells per axis (>= 16)")->check(CLI::Range(16, 1 << 20));
    auto* l = app.add_option("--lambda", lambda, "number of lambda nodes")->check(CLI::Range(2, 1 << 20));
    auto* op = app.add_option("--out", outp, "report path (default: stdout)");
    auto* fp = app.add_option("--format", format, "csv or structured")->check(CLI::IsMember({"csv", "structured"}));
    auto* tp = app.add_option("--tolerance-scale", tol, "multiplier on every tolerance")->check(CLI::PositiveNumber);
    app.fallthrough();

    std::string config;
    auto* check = app.add_subcommand("check", "one check per problem at the [params] point");
    check->add_option("config", config, "configuration file")->required();
    auto* sw = app.add_subcommand("sweep", "sweep the [sweep] grid over p, t, s");
    sw->add_option("config", config, "configuration file")->required();
    auto* gz = app.add_subcommand("gz-constant", "estimate the constant C over a log-concave family");
    gz->add_option("config", config, "configuration file")->required();
    auto* self = app.add_subcommand("selftest", "run the built-in fixture suite");
    for (auto* sub : {check, sw, gz, self}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    if (r->count()) o.resolution = resolution;
    if (l->count()) o.lambda = lambda;
    if (op->count()) o.out = outp;
    if (fp->count()) o.format = format;
    if (tp->count()) o.tolerance_scale = tol;

    try {
        if (*self) return run_selftest_mode(o, out, err);
        const Mode mode = *check ? Mode::Check : *sw ? Mode::Sweep : Mode::Gz;
        return run_config_mode(mode, config, o, out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace lpbm

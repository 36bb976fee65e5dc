#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lpbm/app.hpp"
#include "lpbm/config.hpp"
#include "lpbm/report.hpp"

using namespace lpbm;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"(
[run]
problem = LP_BMI_SETS

[grid]
box = -2 3
resolution = 64

[A]
shape = interval 0 1

[B]
shape = interval -0.5 1.5

[params]
p = 2
t = 0.5
)";

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("lpbm_cli_" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path / name) << text;
        return (path / name).string();
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Run {
    int status;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "lpbm");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

CheckReport sample_row() {
    CheckReport r;
    r.id = TheoremId::LP_BBL;
    r.fixture = "demo";
    r.p = 1.5;
    r.t = 0.1;
    r.lambda = 0.3;
    r.s = ExtendedReal::pos_inf();
    r.lhs = 1.0 / 3.0;
    r.rhs = 0.1 + 0.2;
    r.margin = r.lhs - r.rhs;
    r.tolerance = 1e-3;
    r.pass = true;
    r.kernel_difference = 0.0;
    r.notes = "a, \"quoted\" note";
    return r;
}

}  // namespace

TEST_CASE("ini parsing") {
    const auto doc = IniDocument::parse("# c\n[run]\nproblem = BBL  # trailing\n; full line\n[grid]\nbox=-1 1\n");
    CHECK(doc.get("run", "problem") == std::optional<std::string>("BBL"));
    CHECK(doc.get("grid", "box") == std::optional<std::string>("-1 1"));
    CHECK_FALSE(doc.get("grid", "resolution").has_value());
    CHECK_THROWS_AS(IniDocument::parse("[run]\nproblem = BBL\nproblem = MFI\n"), ConfigError);
    CHECK_THROWS_AS(IniDocument::parse("key = value\n"), ConfigError);
    CHECK_THROWS_AS(IniDocument::parse("[run\n"), ConfigError);
}

TEST_CASE("config validation") {
    CHECK_NOTHROW(parse_config(IniDocument::parse(kMinimal)));
    const auto rc = parse_config(IniDocument::parse(kMinimal));
    REQUIRE(rc.problems.size() == 1);
    CHECK(rc.problems[0] == TheoremId::LP_BMI_SETS);
    CHECK(rc.fixture.resolution == 64);
    CHECK(rc.params.p == 2.0);

    auto bad = [](const std::string& from, const std::string& to) {
        std::string text = kMinimal;
        text.replace(text.find(from), from.size(), to);
        return IniDocument::parse(text);
    };
    try {
        parse_config(bad("LP_BMI_SETS", "LP_FOO"));
        FAIL("expected an error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("LP_FOO") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config(bad("resolution = 64", "resolution = 8")), ConfigError);
    CHECK_THROWS_AS(parse_config(bad("interval 0 1", "interval 1 0")), ConfigError);
    CHECK_THROWS_AS(parse_config(bad("interval 0 1", "hexagon 1")), ConfigError);
    CHECK_THROWS_AS(parse_config(bad("t = 0.5", "t = 0.5\nq = 1")), ConfigError);
    CHECK_THROWS_AS(parse_config(bad("[params]", "[extra]\nx = 1\n[params]")), ConfigError);
    CHECK_THROWS_AS(parse_config(bad("[B]\nshape = interval -0.5 1.5", "")), ConfigError);
    CHECK_THROWS_AS(parse_profile("table /does/not/exist.txt"), ConfigError);
}

TEST_CASE("value grammar") {
    CHECK(parse_numbers("0.1:0.2:0.9").size() == 5);
    CHECK(parse_numbers("1 2, 3").size() == 3);
    const auto s = parse_extended_list("0 1 inf");
    REQUIRE(s.size() == 3);
    CHECK(s[0].is_zero());
    CHECK(s[2].is_pos_inf());
    const auto ball = parse_shape("ball 1 0.5 0", 2);
    CHECK(ball.contains(Point{0.5, 0.9, 0.0}));
    CHECK_FALSE(ball.contains(Point{0.5, 1.1, 0.0}));
    CHECK(parse_profile("gaussian 2")(0.0) == doctest::Approx(1.0));
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
}

TEST_CASE("csv format") {
    CHECK(to_csv({}) == std::string(kCsvHeader) + "\n");
    const std::string csv = to_csv({sample_row()});
    CHECK(count_lines(csv) == 2);
    CHECK(csv.rfind(kCsvHeader, 0) == 0);
    CHECK(csv.find("LP_BBL,1.5,0.1,0.3,inf,0.333333333333,0.3,") != std::string::npos);
    CHECK(csv.find(",true,\"a, \"\"quoted\"\" note\"") != std::string::npos);
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("structured round trip") {
    CheckReport r = sample_row();
    CheckReport q = r;
    q.lambda.reset();
    q.s = ExtendedReal::finite(0.7);
    q.applicable = false;
    q.pass = false;
    q.hypothesis_violations = {"not weakly unconditional"};
    q.instance_constant = 1.25;
    ReportMeta meta;
    meta.config_digest = "abc";
    meta.started = "2020-01-01T00:00:00Z";
    meta.finished = "2020-01-01T00:00:01Z";
    const auto back = parse_structured(to_structured({r, q}, meta));
    REQUIRE(back.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        const CheckReport& a = i ? q : r;
        const CheckReport& b = back[i];
        CHECK(a.id == b.id);
        CHECK(a.p == b.p);
        CHECK(a.t == b.t);
        CHECK(a.lambda == b.lambda);
        CHECK(a.s.to_string() == b.s.to_string());
        CHECK(a.lhs == b.lhs);
        CHECK(a.rhs == b.rhs);
        CHECK(a.margin == b.margin);
        CHECK(a.tolerance == b.tolerance);
        CHECK(a.pass == b.pass);
        CHECK(a.applicable == b.applicable);
        CHECK(a.hypothesis_violations == b.hypothesis_violations);
        CHECK(a.instance_constant == b.instance_constant);
        CHECK(a.notes == b.notes);
    }
}

TEST_CASE("unwritable report path") {
    CHECK_THROWS(write_report({sample_row()}, "csv", "/nonexistent-dir/x/out.csv", {}));
}

TEST_CASE("exit statuses") {
    TempDir dir;
    const std::string cfg = dir.write("min.ini", kMinimal);

    auto r = run({"check", cfg});
    CHECK(r.status == 0);
    CHECK(count_lines(r.out) == 2);

    std::string unknown = kMinimal;
    unknown.replace(unknown.find("LP_BMI_SETS"), 11, "LP_FOO");
    r = run({"check", dir.write("unknown.ini", unknown)});
    CHECK(r.status == 2);
    CHECK(r.err.find("LP_FOO") != std::string::npos);

    CHECK(run({"check", (dir.path / "missing.ini").string()}).status == 2);
    CHECK(run({"frobnicate"}).status == 2);
    CHECK(run({"check", cfg, "--format", "xml"}).status == 2);

    const std::string sw = dir.write("sweep.ini", std::string(kMinimal) + "\n[sweep]\np = 1 1.5 2 4\nt = 0.1:0.1:0.9\n");
    r = run({"sweep", sw});
    CHECK(r.status == 0);
    CHECK(count_lines(r.out) == 1 + 36);

    r = run({"sweep", sw, "--resolution", "128", "--tolerance-scale", "0.001"});
    CHECK(r.status == 1);
    CHECK(r.err.find("FAIL") != std::string::npos);

    const std::string inap = dir.write("inap.ini", R"(
[run]
problem = BBL
[density]
kind = gaussian
[f]
profile = gaussian 0.5
[g]
profile = gaussian 0.8
)");
    r = run({"check", inap});
    CHECK(r.status == 0);
    CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("reports are byte stable") {
    TempDir dir;
    const std::string cfg = dir.write("min.ini", kMinimal);
    const std::string a = (dir.path / "a.csv").string(), b = (dir.path / "b.csv").string();
    REQUIRE(run({"sweep", cfg, "--out", a}).status == 0);
    REQUIRE(run({"sweep", cfg, "--out", b}).status == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).rfind(kCsvHeader, 0) == 0);

    const std::string ja = (dir.path / "a.json").string(), jb = (dir.path / "b.json").string();
    REQUIRE(run({"sweep", cfg, "--format", "structured", "--out", ja}).status == 0);
    REQUIRE(run({"sweep", cfg, "--format", "structured", "--out", jb}).status == 0);
    auto strip = [](std::string s) {
        for (const char* key : {"\"started\"", "\"finished\""}) {
            const auto at = s.find(key);
            REQUIRE(at != std::string::npos);
            const auto end = s.find('\n', at);
            s.erase(at, end - at);
        }
        return s;
    };
    CHECK(strip(slurp(ja)) == strip(slurp(jb)));
    CHECK(parse_structured(slurp(ja)).size() == 1);
}

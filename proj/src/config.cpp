#include "lpbm/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace lpbm {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::vector<std::string> words(const std::string& text) {
    std::string t = text;
    for (char& c : t)
        if (c == ',') c = ' ';
    std::istringstream in(t);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

double number(const std::string& w) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(w, &used);
    } catch (const std::exception&) {
        throw ConfigError("not a number: '" + w + "'");
    }
    if (used != w.size()) throw ConfigError("not a number: '" + w + "'");
    return v;
}

int integer(const std::string& w) {
    const double v = number(w);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError("not an integer: '" + w + "'");
    return static_cast<int>(v);
}

bool boolean(const std::string& w) {
    const std::string l = lower(trim(w));
    if (l == "true" || l == "yes" || l == "1" || l == "on") return true;
    if (l == "false" || l == "no" || l == "0" || l == "off") return false;
    throw ConfigError("not a boolean: '" + w + "'");
}

std::vector<std::string> split_semicolons(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ';'))
        if (!trim(cur).empty()) out.push_back(trim(cur));
    return out;
}

void check_keys(const std::string& section, const std::map<std::string, std::string>& kv,
                const std::set<std::string>& allowed) {
    for (const auto& [k, v] : kv)
        if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "' in [" + section + "]");
}

std::string resolve(const std::string& path, const std::string& base_dir) {
    std::filesystem::path p(path);
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    return p.string();
}

FunctionSpec parse_function(const std::map<std::string, std::string>& kv, int dim, const std::string& base_dir) {
    check_keys("f/g", kv, {"kind", "shape", "profile", "factors", "height", "center"});
    const auto get = [&](const char* k) -> std::optional<std::string> {
        auto it = kv.find(k);
        if (it == kv.end()) return std::nullopt;
        return it->second;
    };
    const double height = get("height") ? number(trim(*get("height"))) : 1.0;
    const std::string kind = lower(get("kind").value_or(get("shape") ? "indicator" : "radial"));
    FunctionSpec f;
    if (kind == "indicator") {
        if (!get("shape")) throw ConfigError("indicator function needs 'shape'");
        f = FunctionSpec::indicator(parse_shape(*get("shape"), dim), height);
    } else if (kind == "radial") {
        if (!get("profile")) throw ConfigError("radial function needs 'profile'");
        f = FunctionSpec::radial(parse_profile(*get("profile"), base_dir), height);
    } else if (kind == "product") {
        if (!get("factors")) throw ConfigError("product function needs 'factors'");
        std::vector<Profile> fs;
        for (const auto& part : split_semicolons(*get("factors"))) fs.push_back(parse_profile(part, base_dir));
        if (static_cast<int>(fs.size()) != dim) throw ConfigError("product function needs one factor per axis");
        f = FunctionSpec::product(std::move(fs), height);
    } else {
        throw ConfigError("unknown function kind '" + kind + "'");
    }
    if (get("center")) {
        const auto c = parse_numbers(*get("center"));
        if (static_cast<int>(c.size()) != dim) throw ConfigError("center needs one coordinate per axis");
        for (int d = 0; d < dim; ++d) f.center[d] = c[d];
    }
    return f;
}

}  // namespace

IniDocument IniDocument::parse(const std::string& text) {
    IniDocument doc;
    doc.text = text;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto c = line.find('#'); c != std::string::npos) line.erase(c);
        line = trim(line);
        // ';' also separates profile factors, so it only starts a comment at the line start.
        if (!line.empty() && line.front() == ';') line.clear();
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": unterminated section");
            section = lower(trim(line.substr(1, line.size() - 2)));
            if (section.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty section name");
            doc.sections[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        if (section.empty()) throw ConfigError("line " + std::to_string(lineno) + ": key outside a section");
        const std::string key = lower(trim(line.substr(0, eq)));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        auto& sec = doc.sections[section];
        if (sec.count(key)) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        sec[key] = trim(line.substr(eq + 1));
    }
    return doc;
}

IniDocument IniDocument::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::optional<std::string> IniDocument::get(const std::string& section, const std::string& key) const {
    auto s = sections.find(section);
    if (s == sections.end()) return std::nullopt;
    auto k = s->second.find(key);
    if (k == s->second.end()) return std::nullopt;
    return k->second;
}

std::vector<double> parse_numbers(const std::string& text) {
    std::vector<double> out;
    for (const auto& w : words(text)) {
        // lo:step:hi
        if (w.find(':') != std::string::npos) {
            std::vector<std::string> parts;
            std::istringstream in(w);
            for (std::string p; std::getline(in, p, ':');) parts.push_back(p);
            if (parts.size() != 3) throw ConfigError("range must be lo:step:hi, got '" + w + "'");
            const double lo = number(parts[0]), step = number(parts[1]), hi = number(parts[2]);
            if (!(step > 0) || hi < lo) throw ConfigError("bad range '" + w + "'");
            const long n = std::lround((hi - lo) / step);
            if (n > 100000) throw ConfigError("range too long '" + w + "'");
            for (long k = 0; k <= n; ++k) out.push_back(k == n ? hi : lo + k * step);
        } else {
            out.push_back(number(w));
        }
    }
    return out;
}

std::vector<ExtendedReal> parse_extended_list(const std::string& text) {
    std::vector<ExtendedReal> out;
    for (const auto& w : words(text)) {
        try {
            out.push_back(ExtendedReal::parse(w));
        } catch (const std::exception& e) {
            throw ConfigError(std::string("bad value for s: ") + e.what());
        }
    }
    return out;
}

Shape parse_shape(const std::string& text, int dim) {
    const auto w = words(text);
    if (w.empty()) throw ConfigError("empty shape");
    const std::string kind = lower(w[0]);
    std::vector<double> a;
    for (std::size_t i = 1; i < w.size(); ++i) a.push_back(number(w[i]));
    try {
        if (kind == "interval") {
            if (dim != 1 || a.size() != 2) throw ConfigError("interval needs dim 1 and two endpoints");
            return Shape::interval(a[0], a[1]);
        }
        if (kind == "box") {
            if (static_cast<int>(a.size()) != 2 * dim) throw ConfigError("box needs lo hi per axis");
            Box b;
            b.dim = dim;
            for (int d = 0; d < dim; ++d) {
                b.lo[d] = a[2 * d];
                b.hi[d] = a[2 * d + 1];
            }
            return Shape::box_shape(b);
        }
        if (kind == "ball") {
            if (a.size() != 1 && static_cast<int>(a.size()) != 1 + dim)
                throw ConfigError("ball needs a radius and optionally a centre");
            Point c{0.0, 0.0, 0.0};
            for (int d = 0; d + 1 < static_cast<int>(a.size()); ++d) c[d] = a[1 + d];
            return Shape::ball(dim, c, a[0]);
        }
        if (kind == "polygon") {
            if (dim != 2 || a.size() < 6 || a.size() % 2) throw ConfigError("polygon needs dim 2 and >= 3 vertices");
            std::vector<Vec2> v;
            for (std::size_t i = 0; i < a.size(); i += 2) v.push_back({a[i], a[i + 1]});
            return Shape::polygon(std::move(v));
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("shape '") + text + "': " + e.what());
    }
    throw ConfigError("unknown shape '" + w[0] + "'");
}

Profile parse_profile(const std::string& text, const std::string& base_dir) {
    const auto w = words(text);
    if (w.empty()) throw ConfigError("empty profile");
    const std::string kind = lower(w[0]);
    if (kind == "constant") {
        if (w.size() != 1) throw ConfigError("constant profile takes no parameter");
        return Profile::constant();
    }
    if (kind == "table") {
        if (w.size() != 2) throw ConfigError("table profile needs a file path");
        const std::string path = resolve(w[1], base_dir);
        if (!std::filesystem::exists(path)) throw ConfigError("table file '" + path + "' does not exist");
        try {
            return Profile::table_file(path);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    if (w.size() != 2) throw ConfigError("profile '" + text + "' needs one scale parameter");
    const double a = number(w[1]);
    if (!(a > 0)) throw ConfigError("profile scale must be positive");
    if (kind == "gaussian") return Profile::gaussian(a);
    if (kind == "triangular") return Profile::triangular(a);
    if (kind == "exponential") return Profile::exponential(a);
    if (kind == "cauchy") return Profile::cauchy(a);
    if (kind == "box") return Profile::box(a);
    throw ConfigError("unknown profile '" + w[0] + "'");
}

Density parse_density(const std::map<std::string, std::string>& kv, int dim, const std::string& base_dir) {
    check_keys("density", kv, {"kind", "s", "profile", "factors", "xs", "potential"});
    const auto get = [&](const char* k) -> std::optional<std::string> {
        auto it = kv.find(k);
        if (it == kv.end()) return std::nullopt;
        return it->second;
    };
    const std::string kind = lower(get("kind").value_or("lebesgue"));
    try {
        if (kind == "lebesgue") return Density::lebesgue();
        if (kind == "gaussian") return Density::gaussian(dim);
        if (kind == "s_concave" || kind == "s-concave") {
            if (!get("s") || !get("profile")) throw ConfigError("s_concave density needs 's' and 'profile'");
            return Density::s_concave_power(dim, number(trim(*get("s"))), parse_profile(*get("profile"), base_dir));
        }
        if (kind == "log_concave_exp" || kind == "log-concave") {
            if (!get("xs") || !get("potential")) throw ConfigError("log_concave_exp density needs 'xs' and 'potential'");
            return Density::log_concave_exp(dim, parse_numbers(*get("xs")), parse_numbers(*get("potential")));
        }
        if (kind == "product") {
            if (!get("factors")) throw ConfigError("product density needs 'factors'");
            std::vector<Profile> fs;
            for (const auto& part : split_semicolons(*get("factors"))) fs.push_back(parse_profile(part, base_dir));
            if (static_cast<int>(fs.size()) != dim) throw ConfigError("product density needs one factor per axis");
            return Density::quasi_concave_product(std::move(fs));
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("density: ") + e.what());
    }
    throw ConfigError("unknown density kind '" + kind + "'");
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

bool uses_functions(TheoremId id) {
    switch (id) {
        case TheoremId::BBL:
        case TheoremId::LP_BBL:
        case TheoremId::LP_PLI_PRODUCT:
        case TheoremId::PL_RECOVERY:
        case TheoremId::MFI:
        case TheoremId::GZ_PRODUCT_MIN:
        case TheoremId::GZ_LP_PRODUCT: return true;
        default: return false;
    }
}

RunConfig parse_config(const IniDocument& doc, const std::string& base_dir) {
    static const std::set<std::string> known{"run", "grid", "density", "a", "b", "f", "g", "params", "sweep", "output"};
    for (const auto& [name, kv] : doc.sections)
        if (!known.count(name)) throw ConfigError("unknown section [" + name + "]");

    RunConfig rc;
    rc.digest = fnv1a_hex(doc.text);
    const auto sec = [&](const char* name) {
        static const std::map<std::string, std::string> empty;
        auto it = doc.sections.find(name);
        return it == doc.sections.end() ? empty : it->second;
    };

    const auto run = sec("run");
    check_keys("run", run, {"problem", "name", "family"});
    if (!run.count("problem")) throw ConfigError("[run] needs 'problem'");
    const std::string problem = run.at("problem");
    if (lower(problem) == "all") {
        rc.all = true;
        rc.problems = all_theorems();
    } else {
        for (const auto& w : words(problem)) {
            auto id = parse_theorem(w);
            if (!id) throw ConfigError("unknown theorem id '" + w + "'");
            rc.problems.push_back(*id);
        }
        if (rc.problems.empty()) throw ConfigError("[run] problem is empty");
    }
    if (run.count("family")) {
        const std::string fam = lower(run.at("family"));
        if (fam == "builtin") rc.builtin_gz_family = true;
        else if (fam != "config") throw ConfigError("family must be 'builtin' or 'config'");
    }

    Fixture& fx = rc.fixture;
    fx.name = run.count("name") ? run.at("name") : "config";

    const auto grid = sec("grid");
    check_keys("grid", grid, {"dim", "box", "resolution", "lambda", "directions"});
    const std::vector<double> box = grid.count("box") ? parse_numbers(grid.at("box")) : std::vector<double>{-2.0, 2.0};
    fx.dim = grid.count("dim") ? integer(grid.at("dim")) : (box.size() > 2 ? static_cast<int>(box.size() / 2) : 1);
    if (fx.dim < 1 || fx.dim > 3) throw ConfigError("grid dim must be 1, 2 or 3");
    if (box.size() == 2) {
        fx.box = Box::cube(fx.dim, box[0], box[1]);
    } else if (static_cast<int>(box.size()) == 2 * fx.dim) {
        fx.box.dim = fx.dim;
        for (int d = 0; d < fx.dim; ++d) {
            fx.box.lo[d] = box[2 * d];
            fx.box.hi[d] = box[2 * d + 1];
        }
    } else {
        throw ConfigError("grid box needs 'lo hi' or one pair per axis");
    }
    for (int d = 0; d < fx.dim; ++d)
        if (!(fx.box.hi[d] > fx.box.lo[d])) throw ConfigError("grid box is empty");
    if (grid.count("resolution")) fx.resolution = integer(grid.at("resolution"));
    if (fx.resolution < 16) throw ConfigError("resolution must be >= 16");
    if (grid.count("lambda")) rc.params.lambda_grid = integer(grid.at("lambda"));
    if (rc.params.lambda_grid < 2) throw ConfigError("lambda count must be >= 2");
    if (grid.count("directions")) fx.directions = integer(grid.at("directions"));
    if (fx.directions < 8) throw ConfigError("directions must be >= 8");

    if (doc.has("density")) fx.mu = parse_density(sec("density"), fx.dim, base_dir);
    for (const char* name : {"a", "b"}) {
        if (!doc.has(name)) continue;
        const auto kv = sec(name);
        check_keys(name, kv, {"shape"});
        if (!kv.count("shape")) throw ConfigError(std::string("[") + name + "] needs 'shape'");
        (name[0] == 'a' ? fx.A : fx.B) = parse_shape(kv.at("shape"), fx.dim);
    }
    for (const char* name : {"f", "g"}) {
        if (!doc.has(name)) continue;
        (name[0] == 'f' ? fx.f : fx.g) = parse_function(sec(name), fx.dim, base_dir);
    }

    const auto params = sec("params");
    check_keys("params", params, {"p", "t", "s", "tolerance_scale", "verify_kernels"});
    CheckParams& cp = rc.params;
    if (params.count("p")) cp.p = number(params.at("p"));
    if (params.count("t")) cp.t = number(params.at("t"));
    if (params.count("s")) {
        auto s = parse_extended_list(params.at("s"));
        if (s.size() != 1) throw ConfigError("[params] s takes one value");
        cp.s = s[0];
    }
    if (params.count("tolerance_scale")) cp.tolerance_scale = number(params.at("tolerance_scale"));
    if (params.count("verify_kernels")) cp.verify_kernels = boolean(params.at("verify_kernels"));
    if (!(cp.p >= 1.0)) throw ConfigError("p must be >= 1");
    if (!(cp.t >= 0.0 && cp.t <= 1.0)) throw ConfigError("t must lie in [0,1]");
    if (!(cp.tolerance_scale > 0)) throw ConfigError("tolerance_scale must be positive");

    const auto sw = sec("sweep");
    check_keys("sweep", sw, {"p", "t", "s"});
    rc.ps = sw.count("p") ? parse_numbers(sw.at("p")) : std::vector<double>{cp.p};
    rc.ts = sw.count("t") ? parse_numbers(sw.at("t")) : std::vector<double>{cp.t};
    rc.ss = sw.count("s") ? parse_extended_list(sw.at("s")) : std::vector<ExtendedReal>{cp.s};
    if (rc.ps.empty() || rc.ts.empty() || rc.ss.empty()) throw ConfigError("sweep grids must be nonempty");
    for (double p : rc.ps)
        if (!(p >= 1.0)) throw ConfigError("sweep p values must be >= 1");
    for (double t : rc.ts)
        if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("sweep t values must lie in [0,1]");

    const auto out = sec("output");
    check_keys("output", out, {"path", "format"});
    if (out.count("path")) rc.out_path = resolve(out.at("path"), base_dir);
    if (out.count("format")) rc.format = lower(out.at("format"));
    if (rc.format != "csv" && rc.format != "structured") throw ConfigError("format must be csv or structured");

    // Every named problem must have its inputs, unless running "all".
    if (!rc.all) {
        for (TheoremId id : rc.problems) {
            const bool fn = uses_functions(id);
            if (fn && (!fx.f || !fx.g)) throw ConfigError(to_string(id) + " needs [f] and [g]");
            if (!fn && (!fx.A || !fx.B) && !(id == TheoremId::GZ_LOGCONCAVE_C && rc.builtin_gz_family))
                throw ConfigError(to_string(id) + " needs [A] and [B]");
        }
    }
    return rc;
}

RunConfig load_config(const std::string& path) {
    const IniDocument doc = IniDocument::load(path);
    const auto parent = std::filesystem::path(path).parent_path();
    return parse_config(doc, parent.empty() ? "." : parent.string());
}

}  // namespace lpbm

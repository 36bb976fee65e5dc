#include "lpbm/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace lpbm {

namespace {

using nlohmann::json;

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// Non-finite doubles become strings so the round trip is exact.
json num(double v) {
    if (std::isfinite(v)) return v;
    return format_number(v);
}

double unnum(const json& j) {
    if (j.is_number()) return j.get<double>();
    const std::string s = j.get<std::string>();
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
    if (s == "nan") return std::nan("");
    throw std::invalid_argument("structured report: bad number '" + s + "'");
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string to_csv(const std::vector<CheckReport>& rows) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const CheckReport& r : rows) {
        out += to_string(r.id) + ',' + format_number(r.p) + ',' + format_number(r.t) + ',' +
               (r.lambda ? format_number(*r.lambda) : std::string()) + ',' + r.s.to_string() + ',' +
               format_number(r.lhs) + ',' + format_number(r.rhs) + ',' + format_number(r.margin) + ',' +
               format_number(r.tolerance) + ',' + (r.pass ? "true" : "false") + ',' + csv_field(r.notes) + '\n';
    }
    return out;
}

std::string to_structured(const std::vector<CheckReport>& rows, const ReportMeta& meta) {
    json j;
    j["meta"] = {{"version", meta.version},
                 {"config_digest", meta.config_digest},
                 {"timestamps", {{"started", meta.started}, {"finished", meta.finished}}}};
    json arr = json::array();
    for (const CheckReport& r : rows) {
        json row = {{"theorem_id", to_string(r.id)},
                    {"fixture", r.fixture},
                    {"p", num(r.p)},
                    {"t", num(r.t)},
                    {"lambda", r.lambda ? num(*r.lambda) : json(nullptr)},
                    {"s", r.s.to_string()},
                    {"lhs", num(r.lhs)},
                    {"rhs", num(r.rhs)},
                    {"margin", num(r.margin)},
                    {"tolerance", num(r.tolerance)},
                    {"pass", r.pass},
                    {"applicable", r.applicable},
                    {"hypothesis_violations", r.hypothesis_violations},
                    {"kernel_difference", r.kernel_difference ? num(*r.kernel_difference) : json(nullptr)},
                    {"instance_constant", r.instance_constant ? num(*r.instance_constant) : json(nullptr)},
                    {"notes", r.notes}};
        arr.push_back(std::move(row));
    }
    j["rows"] = std::move(arr);
    return j.dump(2) + "\n";
}

std::vector<CheckReport> parse_structured(const std::string& text) {
    const json j = json::parse(text);
    std::vector<CheckReport> out;
    for (const json& row : j.at("rows")) {
        CheckReport r;
        auto id = parse_theorem(row.at("theorem_id").get<std::string>());
        if (!id) throw std::invalid_argument("structured report: unknown theorem id");
        r.id = *id;
        r.fixture = row.at("fixture").get<std::string>();
        r.p = unnum(row.at("p"));
        r.t = unnum(row.at("t"));
        if (!row.at("lambda").is_null()) r.lambda = unnum(row.at("lambda"));
        r.s = ExtendedReal::parse(row.at("s").get<std::string>());
        r.lhs = unnum(row.at("lhs"));
        r.rhs = unnum(row.at("rhs"));
        r.margin = unnum(row.at("margin"));
        r.tolerance = unnum(row.at("tolerance"));
        r.pass = row.at("pass").get<bool>();
        r.applicable = row.at("applicable").get<bool>();
        r.hypothesis_violations = row.at("hypothesis_violations").get<std::vector<std::string>>();
        if (!row.at("kernel_difference").is_null()) r.kernel_difference = unnum(row.at("kernel_difference"));
        if (!row.at("instance_constant").is_null()) r.instance_constant = unnum(row.at("instance_constant"));
        r.notes = row.at("notes").get<std::string>();
        out.push_back(std::move(r));
    }
    return out;
}

void write_report(const std::vector<CheckReport>& rows, const std::string& format, const std::string& path,
                  const ReportMeta& meta) {
    std::string body;
    if (format == "csv") body = to_csv(rows);
    else if (format == "structured") body = to_structured(rows, meta);
    else throw std::invalid_argument("unknown report format '" + format + "'");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write report '" + path + "'");
    out << body;
    if (!out) throw std::runtime_error("cannot write report '" + path + "'");
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace lpbm

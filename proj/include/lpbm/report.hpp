#pragma once

#include <string>
#include <vector>

#include "lpbm/harness.hpp"

namespace lpbm {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr const char* kCsvHeader = "theorem_id,p,t,lambda,s,lhs,rhs,margin,tolerance,pass,notes";

struct ReportMeta {
    std::string version = kVersion;
    std::string config_digest;
    std::string started;   // ISO-8601 UTC
    std::string finished;
};

// 12 significant digits, "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double v);

std::string to_csv(const std::vector<CheckReport>& rows);
std::string to_structured(const std::vector<CheckReport>& rows, const ReportMeta& meta);
std::vector<CheckReport> parse_structured(const std::string& text);

// Throws std::runtime_error when the path cannot be written.
void write_report(const std::vector<CheckReport>& rows, const std::string& format, const std::string& path,
                  const ReportMeta& meta);

std::string utc_timestamp();

}  // namespace lpbm

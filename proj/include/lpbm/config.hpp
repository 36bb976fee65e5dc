#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpbm/harness.hpp"

namespace lpbm {

// Any malformed configuration; the CLI maps it to exit status 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// [section] headers followed by key = value lines; '#' and ';' start comments.
struct IniDocument {
    std::map<std::string, std::map<std::string, std::string>> sections;
    std::string text;  // raw input, used for the digest

    static IniDocument parse(const std::string& text);
    static IniDocument load(const std::string& path);

    bool has(const std::string& section) const { return sections.count(section) > 0; }
    std::optional<std::string> get(const std::string& section, const std::string& key) const;
};

struct RunConfig {
    std::vector<TheoremId> problems;  // one id, or every id for "all"
    bool all = false;
    Fixture fixture;
    CheckParams params;
    std::vector<double> ps, ts;
    std::vector<ExtendedReal> ss;
    bool builtin_gz_family = false;
    std::optional<std::string> out_path;
    std::string format = "csv";
    std::string digest;  // FNV-1a of the config text, hex
};

RunConfig parse_config(const IniDocument& doc, const std::string& base_dir = ".");
RunConfig load_config(const std::string& path);

// Parsers for the value grammar, exposed for tests.
Shape parse_shape(const std::string& text, int dim);
Profile parse_profile(const std::string& text, const std::string& base_dir = ".");
Density parse_density(const std::map<std::string, std::string>& section, int dim, const std::string& base_dir = ".");
std::vector<double> parse_numbers(const std::string& text);
std::vector<ExtendedReal> parse_extended_list(const std::string& text);

std::string fnv1a_hex(const std::string& bytes);

// Whether the check reads f, g (functions) or A, B (sets).
bool uses_functions(TheoremId id);

}  // namespace lpbm

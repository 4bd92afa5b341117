#pragma once

#include <optional>
#include <string>
#include <string_view>

#if __has_include("json.hpp")
#include "json.hpp"
#else
#include <nlohmann/json.hpp>
#endif

namespace lshsel::cli {

using Json = nlohmann::ordered_json;

enum class OutputFormat { kJson, kCsv, kHuman };

OutputFormat parse_format(std::string_view text);
std::string_view to_string(OutputFormat format);

/// Column order shared by every CSV report.
inline constexpr std::string_view kCsvHeader = "m,ell,d,method,value,decimal,stderr,analytic,z";

/// A report row with the stable fields; callers may add extra keys.
Json make_row(int m, int ell, int d, std::string method, Json value, double decimal,
              std::optional<double> std_error, std::optional<std::string> analytic,
              std::optional<double> z);

/// Renders a {"config", "rows", ...} document. JSON is the canonical form;
/// CSV and human output are derived from it.
std::string render(const Json& report, OutputFormat format);

}  // namespace lshsel::cli

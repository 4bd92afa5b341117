#include "lshsel/report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace lshsel::cli {

namespace {

std::string scalar(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string csv_method(const Json& row) {
  std::string method = row.at("method").get<std::string>();
  if (row.contains("id")) return row.at("id").get<std::string>() + ":" + method;
  return method;
}

std::string render_csv(const Json& report) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const Json& row : report.at("rows")) {
    os << scalar(row.at("m")) << ',' << scalar(row.at("ell")) << ',' << scalar(row.at("d")) << ','
       << csv_method(row) << ',' << scalar(row.at("value")) << ',' << scalar(row.at("decimal")) << ','
       << scalar(row.at("stderr")) << ',' << scalar(row.at("analytic")) << ',' << scalar(row.at("z"))
       << '\n';
  }
  return os.str();
}

std::string render_human(const Json& report) {
  std::ostringstream os;
  os << "config:\n";
  for (const auto& [key, value] : report.at("config").items()) os << "  " << key << " = " << scalar(value) << '\n';

  std::vector<std::string> columns;
  for (const Json& row : report.at("rows")) {
    for (const auto& [key, value] : row.items()) {
      if (std::find(columns.begin(), columns.end(), key) == columns.end()) columns.push_back(key);
    }
  }
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) width[c] = columns[c].size();
  for (const Json& row : report.at("rows")) {
    std::vector<std::string> line;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      std::string text = row.contains(columns[c]) ? scalar(row.at(columns[c])) : "";
      if (text.empty()) text = "-";
      width[c] = std::max(width[c], text.size());
      line.push_back(std::move(text));
    }
    cells.push_back(std::move(line));
  }
  auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      os << (c ? "  " : "") << line[c] << std::string(width[c] - line[c].size(), ' ');
    }
    os << '\n';
  };
  if (!columns.empty()) {
    os << '\n';
    emit(columns);
    for (const auto& line : cells) emit(line);
  }
  for (const auto& [key, value] : report.items()) {
    if (key == "config" || key == "rows") continue;
    os << '\n' << key << ":\n";
    if (value.is_object()) {
      for (const auto& [k, v] : value.items()) os << "  " << k << " = " << scalar(v) << '\n';
    } else {
      os << "  " << scalar(value) << '\n';
    }
  }
  return os.str();
}

}  // namespace

OutputFormat parse_format(std::string_view text) {
  if (text == "json") return OutputFormat::kJson;
  if (text == "csv") return OutputFormat::kCsv;
  if (text == "human") return OutputFormat::kHuman;
  throw std::invalid_argument("unknown format '" + std::string(text) + "' (json|csv|human)");
}

std::string_view to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::kJson: return "json";
    case OutputFormat::kCsv: return "csv";
    case OutputFormat::kHuman: return "human";
  }
  return "json";
}

Json make_row(int m, int ell, int d, std::string method, Json value, double decimal,
              std::optional<double> std_error, std::optional<std::string> analytic,
              std::optional<double> z) {
  Json row;
  row["m"] = m;
  row["ell"] = ell;
  row["d"] = d;
  row["method"] = std::move(method);
  row["value"] = std::move(value);
  row["decimal"] = decimal;
  row["stderr"] = std_error ? Json(*std_error) : Json(nullptr);
  row["analytic"] = analytic ? Json(*analytic) : Json(nullptr);
  row["z"] = z ? Json(*z) : Json(nullptr);
  return row;
}

std::string render(const Json& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::kJson: return report.dump(2) + "\n";
    case OutputFormat::kCsv: return render_csv(report);
    case OutputFormat::kHuman: return render_human(report);
  }
  return report.dump(2) + "\n";
}

}  // namespace lshsel::cli

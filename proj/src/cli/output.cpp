#include "output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "qdyn/cli.hpp"

namespace qdyn::cli {
namespace {

// A cell is numeric when it parses completely as a finite double.
bool numeric_cell(const std::string& cell, double& value) {
  if (cell.empty()) return false;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  return ec == std::errc{} && ptr == cell.data() + cell.size() && std::isfinite(value);
}

}  // namespace

std::string format_number(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::string sidecar_path(const std::string& out) { return out + ".meta.json"; }

nlohmann::json error_record(std::string_view kind, std::string_view message) {
  return {{"error", kind}, {"message", message}};
}

std::string csv_escape(std::string_view cell) {
  if (cell.find_first_of(",\"\n") == std::string_view::npos) return std::string(cell);
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string Table::to_csv() const {
  std::string out;
  auto emit = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(cells[i]);
    }
    out += '\n';
  };
  emit(columns);
  for (const auto& row : rows) emit(row);
  return out;
}

std::string Table::to_json_text() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const std::string& cell : row) {
      double v = 0.0;
      if (numeric_cell(cell, v)) {
        r.push_back(v);
      } else {
        r.push_back(cell);
      }
    }
    rows_json.push_back(std::move(r));
  }
  return nlohmann::json{{"columns", columns}, {"rows", rows_json}}.dump(2) + "\n";
}

std::string Table::render(std::string_view format) const {
  return format == "json" ? to_json_text() : to_csv();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("cannot open output file '" + path + "'");
  f << text;
  if (!f) throw UsageError("failed writing output file '" + path + "'");
}

}  // namespace qdyn::cli

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace qdyn::cli {

// Row-oriented table rendered either as CSV or as a JSON object
// {"columns": [...], "rows": [[...], ...]}. Cells are pre-formatted strings;
// numeric cells are emitted as JSON numbers when the table is dumped as JSON.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
  std::string to_json_text() const;
  std::string render(std::string_view format) const;
};

std::string csv_escape(std::string_view cell);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace qdyn::cli

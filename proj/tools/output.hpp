#pragma once

// CSV / JSON emission shared by the CLI subcommands.
//
// CSV: header row, ',' separator, '\n' line endings, '.' decimal point, and
// numbers in shortest round-trip form (at most 17 significant digits), so
// parsing a cell and re-formatting it reproduces the same bytes.
// JSON: {"command": ..., "params": {...}, "records": [...]}.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace stirling::cli {

enum class Format { csv, json };

std::string format_number(double v);
std::string format_optional(const std::optional<double>& v);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
};

/// Splits one CSV line (no quoting; the emitter never needs it).
std::vector<std::string> split_csv_line(const std::string& line);

void write_json(std::ostream& out, const std::string& command, const nlohmann::ordered_json& params,
                const nlohmann::ordered_json& records);

}  // namespace stirling::cli

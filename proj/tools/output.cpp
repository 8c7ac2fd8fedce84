#include "output.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace stirling::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string format_optional(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string::size_type start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

void write_json(std::ostream& out, const std::string& command, const nlohmann::ordered_json& params,
                const nlohmann::ordered_json& records) {
  nlohmann::ordered_json doc;
  doc["command"] = command;
  doc["params"] = params;
  doc["records"] = records;
  out << doc.dump(2) << '\n';
}

}  // namespace stirling::cli

#include "ghill/data_io.hpp"

#include <charconv>
#include <fstream>
#include <string_view>

#include "ghill/errors.hpp"

namespace ghill {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

double parse_number(std::string_view cell, std::size_t line_no) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  const auto* end = cell.data() + cell.size();
  const auto res = std::from_chars(cell.data(), end, v);
  if (cell.empty() || res.ec != std::errc{} || res.ptr != end) {
    throw DataError("line " + std::to_string(line_no) + ": not a number: '" + std::string(cell) + "'",
                    line_no);
  }
  return v;
}

}  // namespace

std::vector<double> read_values(std::istream& in, const std::optional<std::string>& column) {
  std::vector<double> out;
  std::optional<std::size_t> col_index;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    if (!column) {
      out.push_back(parse_number(body, line_no));
      continue;
    }
    const auto cells = split_csv(line);
    if (!col_index) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i] == *column) col_index = i;
      }
      if (!col_index) {
        throw DataError("line " + std::to_string(line_no) + ": header has no column '" + *column + "'",
                        line_no);
      }
      continue;
    }
    if (*col_index >= cells.size()) {
      throw DataError("line " + std::to_string(line_no) + ": missing column '" + *column + "'", line_no);
    }
    out.push_back(parse_number(cells[*col_index], line_no));
  }
  if (column && !col_index) throw DataError("input has no header row", 0);
  return out;
}

std::vector<double> load_values(const std::string& path, const std::optional<std::string>& column) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'", 0);
  return read_values(in, column);
}

}  // namespace ghill

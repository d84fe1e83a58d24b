#include "mapt/data_io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

namespace mapt {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<double> parse_data(std::istream& in) {
  std::vector<double> values;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    char* end = nullptr;
    const double v = std::strtod(line.c_str(), &end);
    if (end == line.c_str() || *end != '\0' || !std::isfinite(v)) {
      throw ParseError(line_no, "line " + std::to_string(line_no) +
                                    ": not a finite decimal number: '" + line + "'");
    }
    values.push_back(v);
  }
  return values;
}

std::vector<double> read_data_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open data file '" + path + "'");
  return parse_data(in);
}

}  // namespace mapt

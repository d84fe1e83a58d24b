#ifndef MAPT_DATA_IO_HPP
#define MAPT_DATA_IO_HPP

#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mapt {

/// Malformed line in a data file. line() is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// One decimal number per line. Blank lines and lines starting with '#'
// (after leading whitespace) are skipped.
std::vector<double> parse_data(std::istream& in);
std::vector<double> read_data_file(const std::string& path);

}  // namespace mapt

#endif  // MAPT_DATA_IO_HPP

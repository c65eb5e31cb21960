#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

#include "rbsc/model.hpp"

namespace rbsc {

class ParseError : public UsageError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : UsageError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Text format:
//   rbsc 1
//   dim <d>
//   [budget <k>]
//   point r|b <c1> ... <cd>
//   hyperplane <axis> <offset> | quadrant <x> <y> | skyline h <x_max> <y_lo> <y_hi>
//   | skyline v <x_lo> <x_hi> <y_max> | set <id> ...
// '#' starts a comment line. Comments are kept on the instance and written
// back directly after the header line.
Instance parse_instance(std::istream& in);
Instance parse_instance_text(std::string_view text);
Instance read_instance_file(const std::string& path);  // "-" reads stdin

std::string serialize_instance(const Instance& inst);

// Splits a line into whitespace-separated tokens.
std::vector<std::string_view> split_tokens(std::string_view line);

}  // namespace rbsc

#include "rbsc/coord.hpp"

#include <cctype>
#include <stdexcept>

namespace rbsc {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Coord::Coord(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Coord Coord::parse(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!all_digits(num) || (slash != std::string_view::npos && !all_digits(den))) {
    throw std::invalid_argument("malformed coordinate '" + std::string(text) + "'");
  }
  mpq_class q;
  if (q.set_str(std::string(text), 10) != 0) {
    throw std::invalid_argument("malformed coordinate '" + std::string(text) + "'");
  }
  if (q.get_den() == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  return Coord(std::move(q));
}

std::string Coord::str() const { return value_.get_str(10); }

bool Coord::is_integer() const { return value_.get_den() == 1; }

}  // namespace rbsc

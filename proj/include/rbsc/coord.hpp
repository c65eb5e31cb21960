#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace rbsc {

// Exact rational coordinate. Always kept in lowest terms with a positive
// denominator, so equal values have a unique textual form.
class Coord {
 public:
  Coord() = default;
  Coord(long value) : value_(value) {}  // NOLINT: integers are the common case
  explicit Coord(mpq_class value);

  // Accepts "<int>" or "<int>/<positive int>". Throws std::invalid_argument.
  static Coord parse(std::string_view text);

  std::string str() const;
  bool is_integer() const;
  const mpq_class& value() const { return value_; }

  friend bool operator==(const Coord& a, const Coord& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Coord& a, const Coord& b) {
    const int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend Coord operator+(const Coord& a, const Coord& b) { return Coord(mpq_class(a.value_ + b.value_)); }
  friend Coord operator-(const Coord& a, const Coord& b) { return Coord(mpq_class(a.value_ - b.value_)); }
  friend Coord operator*(const Coord& a, const Coord& b) { return Coord(mpq_class(a.value_ * b.value_)); }

 private:
  mpq_class value_;
};

}  // namespace rbsc

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "rbsc/coord.hpp"

namespace rbsc {

// Malformed input or an operation called outside its preconditions.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration or oracle cap was exceeded.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Color : std::uint8_t { Red, Blue };

struct Point {
  std::vector<Coord> coords;
  Color color = Color::Blue;
  std::size_t id = 0;  // position in Instance::points

  bool red() const { return color == Color::Red; }
  bool blue() const { return color == Color::Blue; }
};

// {p : x_axis(p) = offset}, axis is 1-based.
struct Hyperplane {
  int axis = 1;
  Coord offset;
};

// [corner_x, +inf) x [corner_y, +inf)
struct Quadrant {
  Coord corner_x;
  Coord corner_y;
};

// (-inf, x_max] x [y_lo, y_hi]
struct SkylineH {
  Coord x_max;
  Coord y_lo;
  Coord y_hi;
};

// [x_lo, x_hi] x (-inf, y_max]
struct SkylineV {
  Coord x_lo;
  Coord x_hi;
  Coord y_max;
};

struct AbstractSet {
  std::vector<std::size_t> member_ids;  // sorted, unique
};

using CoverObject = std::variant<Hyperplane, Quadrant, SkylineH, SkylineV, AbstractSet>;

enum class Family { Empty, Hyperplane, Quadrant, Skyline, Abstract, Mixed };

Family family_of(const CoverObject& obj);
const char* family_name(Family f);

struct Instance {
  int dimension = 2;
  std::vector<Point> points;
  std::vector<CoverObject> objects;
  std::optional<std::int64_t> budget;
  std::vector<std::string> comments;  // provenance, without the leading '#'

  std::size_t red_count() const;
  std::size_t blue_count() const;
  std::size_t object_count() const { return objects.size(); }
  Family family() const;

  void add_point(Color color, std::vector<Coord> coords);
};

// Exact membership test. Throws UsageError when the point or object does not
// fit dimension d.
bool covers(const CoverObject& obj, const Point& p, int d);

struct IncidenceIndex {
  std::vector<std::vector<std::size_t>> objects_of_point;
  std::vector<std::vector<std::size_t>> blues_of_object;
  std::vector<std::vector<std::size_t>> reds_of_object;

  std::vector<std::size_t> members_of_object(std::size_t o) const;
};

IncidenceIndex build_incidence(const Instance& inst);

struct Violation {
  std::string entity;  // e.g. "object 3", "point 7", "instance"
  std::string message;
};

std::vector<Violation> validate(const Instance& inst);

struct Deduped {
  Instance instance;
  std::vector<std::size_t> mapping;  // old object index -> new object index
};

// Collapses objects whose covered point sets coincide onto the lowest index.
Deduped dedupe_objects(const Instance& inst);

enum class Verdict { Yes, No };

struct Solution {
  Verdict verdict = Verdict::No;
  std::vector<std::size_t> chosen;        // object indices, ascending
  std::vector<std::size_t> covered_reds;  // red point ids, ascending
  std::size_t red_count = 0;
  // Minimum red coverage when the solver computes it (enumeration, DP, oracle).
  // Unset for decision-only solvers and for infeasible instances.
  std::optional<std::int64_t> optimum;
};

Solution no_solution();

// Builds a Yes solution from a chosen family, filling covered reds from the
// instance. Does not check feasibility.
Solution solution_from_family(const Instance& inst, std::vector<std::size_t> chosen);

struct CoverageCheck {
  bool ok = false;
  std::optional<std::size_t> uncovered_blue;
  std::size_t red_count = 0;
  bool over_budget = false;
};

// Independent recount of a claimed family against the instance.
CoverageCheck check_family(const Instance& inst, const std::vector<std::size_t>& chosen);

}  // namespace rbsc

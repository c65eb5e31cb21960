#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rbsc/model.hpp"

namespace rbsc {

struct Graph {
  int n_vertices = 0;                     // vertices are 1..n
  std::vector<std::pair<int, int>> edges;  // first < second
};

std::vector<std::string> validate_graph(const Graph& g);

// `graph <n>` followed by `edge <i> <j>` lines; '#' comments.
Graph parse_graph(std::istream& in);
Graph parse_graph_text(std::string_view text);
std::string serialize_graph(const Graph& g);

struct VcReduction {
  Instance instance;
  std::vector<int> vertex_of_point;  // red id -> vertex, 0 for blues
};

// Red (i, i) per vertex, the horizontal and vertical line through it, and a
// blue at (j, i) for each edge {i, j} with i < j.
VcReduction vc_to_lines(const Graph& g, std::int64_t k);

// Unit square [x, x+1] x [y-1, y] given by its top-left corner.
struct Square {
  Coord x;
  Coord y;
};

struct StabbingInstance {
  std::vector<Square> squares;
  std::vector<Coord> v_lines;  // x = c
  std::vector<Coord> h_lines;  // y = c
  std::int64_t budget = 0;
};

bool stabs_vertical(const Coord& c, const Square& s);
bool stabs_horizontal(const Coord& c, const Square& s);

// `stab <k>` then `square <x> <y>`, `vline <x>`, `hline <y>` lines.
StabbingInstance parse_stabbing(std::istream& in);
StabbingInstance parse_stabbing_text(std::string_view text);
std::string serialize_stabbing(const StabbingInstance& s);

struct LineRef {
  bool vertical = true;
  std::size_t index = 0;  // into v_lines or h_lines of the input
};

struct SkylineReduction {
  Instance instance;
  std::vector<LineRef> line_of_object;
  int scale = 4;
};

// One blue per square corner, one skyline per line with its own red.
// Rejects coincident square corners and repeated line coordinates.
SkylineReduction stabbing_to_skylines(const StabbingInstance& s);

struct RandomParams {
  int d = 2;
  int n_red = 6;
  int n_blue = 6;
  int coord_range = 6;  // coordinates drawn from 0..coord_range-1
  Family family = Family::Hyperplane;
  int object_count = 6;
  std::optional<std::int64_t> budget;
  // Quadrant and skyline instances use distinct x and distinct y values
  // unless this is set.
  bool allow_ties = false;
};

Instance random_instance(std::uint64_t seed, const RandomParams& params);

// Parameters of the seeded hyperplane suite: d in {2, 3}, n <= 16, h <= 10,
// budget <= 5.
RandomParams hyperplane_suite_params(std::uint64_t seed);

Graph random_graph(std::uint64_t seed, int max_vertices);
StabbingInstance random_stabbing(std::uint64_t seed, int max_squares, int max_lines);

}  // namespace rbsc

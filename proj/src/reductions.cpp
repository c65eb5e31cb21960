#include "rbsc/reductions.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <istream>
#include <random>
#include <set>
#include <sstream>

#include "rbsc/instance_io.hpp"

namespace rbsc {

namespace {

long long parse_ll(std::string_view tok, std::size_t line) {
  long long v = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw ParseError(line, "expected integer, got '" + std::string(tok) + "'");
  return v;
}

Coord parse_coord(std::string_view tok, std::size_t line) {
  try {
    return Coord::parse(tok);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, e.what());
  }
}

// Calls `fn(tokens, line_no)` for every non-blank, non-comment line.
void for_each_record(std::istream& in, const std::function<void(const std::vector<std::string_view>&, std::size_t)>& fn) {
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto t = split_tokens(raw);
    if (t.empty() || t[0].front() == '#') continue;
    fn(t, line_no);
  }
}

void arity(const std::vector<std::string_view>& t, std::size_t n, std::size_t line) {
  if (t.size() != n) throw ParseError(line, "'" + std::string(t[0]) + "' expects " + std::to_string(n - 1) + " arguments");
}

}  // namespace

std::vector<std::string> validate_graph(const Graph& g) {
  std::vector<std::string> out;
  if (g.n_vertices < 0) out.push_back("negative vertex count");
  std::set<std::pair<int, int>> seen;
  for (const auto& [i, j] : g.edges) {
    const std::string name = "edge " + std::to_string(i) + " " + std::to_string(j);
    if (i == j) out.push_back(name + " is a self-loop");
    if (i > j) out.push_back(name + " is not ordered");
    if (std::min(i, j) < 1 || std::max(i, j) > g.n_vertices) out.push_back(name + " uses a vertex outside 1.." + std::to_string(g.n_vertices));
    if (!seen.insert({i, j}).second) out.push_back(name + " is repeated");
  }
  return out;
}

Graph parse_graph(std::istream& in) {
  Graph g;
  bool header = false;
  for_each_record(in, [&](const std::vector<std::string_view>& t, std::size_t line) {
    if (!header) {
      if (t[0] != "graph") throw ParseError(line, "expected 'graph <n>'");
      arity(t, 2, line);
      g.n_vertices = static_cast<int>(parse_ll(t[1], line));
      header = true;
      return;
    }
    if (t[0] != "edge") throw ParseError(line, "unknown record '" + std::string(t[0]) + "'");
    arity(t, 3, line);
    int i = static_cast<int>(parse_ll(t[1], line));
    int j = static_cast<int>(parse_ll(t[2], line));
    if (i > j) std::swap(i, j);
    g.edges.emplace_back(i, j);
    const auto problems = validate_graph(g);
    if (!problems.empty()) throw ParseError(line, problems.front());
  });
  if (!header) throw ParseError(1, "expected 'graph <n>'");
  return g;
}

Graph parse_graph_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_graph(in);
}

std::string serialize_graph(const Graph& g) {
  std::string out = "graph " + std::to_string(g.n_vertices) + "\n";
  for (const auto& [i, j] : g.edges) out += "edge " + std::to_string(i) + " " + std::to_string(j) + "\n";
  return out;
}

VcReduction vc_to_lines(const Graph& g, std::int64_t k) {
  const auto problems = validate_graph(g);
  if (!problems.empty()) throw UsageError("invalid graph: " + problems.front());
  VcReduction r;
  Instance& inst = r.instance;
  inst.dimension = 2;
  inst.budget = k;
  inst.comments.push_back("vertex cover reduction, " + std::to_string(g.n_vertices) + " vertices, " +
                          std::to_string(g.edges.size()) + " edges");
  for (int i = 1; i <= g.n_vertices; ++i) {
    inst.add_point(Color::Red, {Coord(i), Coord(i)});
    r.vertex_of_point.push_back(i);
  }
  for (const auto& [i, j] : g.edges) {
    if (i >= j) throw UsageError("edge endpoints must satisfy i < j");
    inst.add_point(Color::Blue, {Coord(j), Coord(i)});
    r.vertex_of_point.push_back(0);
  }
  for (int i = 1; i <= g.n_vertices; ++i) {
    inst.objects.emplace_back(Hyperplane{2, Coord(i)});
    inst.objects.emplace_back(Hyperplane{1, Coord(i)});
  }
  return r;
}

bool stabs_vertical(const Coord& c, const Square& s) { return s.x <= c && c <= s.x + Coord(1); }
bool stabs_horizontal(const Coord& c, const Square& s) { return s.y - Coord(1) <= c && c <= s.y; }

StabbingInstance parse_stabbing(std::istream& in) {
  StabbingInstance s;
  bool header = false;
  for_each_record(in, [&](const std::vector<std::string_view>& t, std::size_t line) {
    if (!header) {
      if (t[0] != "stab") throw ParseError(line, "expected 'stab <k>'");
      arity(t, 2, line);
      s.budget = parse_ll(t[1], line);
      if (s.budget < 0) throw ParseError(line, "negative budget");
      header = true;
    } else if (t[0] == "square") {
      arity(t, 3, line);
      s.squares.push_back({parse_coord(t[1], line), parse_coord(t[2], line)});
    } else if (t[0] == "vline") {
      arity(t, 2, line);
      s.v_lines.push_back(parse_coord(t[1], line));
    } else if (t[0] == "hline") {
      arity(t, 2, line);
      s.h_lines.push_back(parse_coord(t[1], line));
    } else {
      throw ParseError(line, "unknown record '" + std::string(t[0]) + "'");
    }
  });
  if (!header) throw ParseError(1, "expected 'stab <k>'");
  return s;
}

StabbingInstance parse_stabbing_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_stabbing(in);
}

std::string serialize_stabbing(const StabbingInstance& s) {
  std::string out = "stab " + std::to_string(s.budget) + "\n";
  for (const auto& q : s.squares) out += "square " + q.x.str() + " " + q.y.str() + "\n";
  for (const auto& c : s.v_lines) out += "vline " + c.str() + "\n";
  for (const auto& c : s.h_lines) out += "hline " + c.str() + "\n";
  return out;
}

SkylineReduction stabbing_to_skylines(const StabbingInstance& s) {
  for (std::size_t i = 0; i < s.squares.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (s.squares[i].x == s.squares[j].x && s.squares[i].y == s.squares[j].y) {
        throw UsageError("squares " + std::to_string(j) + " and " + std::to_string(i) + " share their top-left corner");
      }
    }
  }
  auto order = [](const std::vector<Coord>& lines, bool ascending, const char* kind) {
    std::vector<std::size_t> idx(lines.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return ascending ? lines[a] < lines[b] : lines[b] < lines[a];
    });
    for (std::size_t i = 1; i < idx.size(); ++i) {
      if (lines[idx[i]] == lines[idx[i - 1]]) throw UsageError(std::string("repeated ") + kind + " " + lines[idx[i]].str());
    }
    return idx;
  };
  const auto v_order = order(s.v_lines, true, "vline");
  const auto h_order = order(s.h_lines, false, "hline");

  SkylineReduction r;
  Instance& inst = r.instance;
  inst.dimension = 2;
  inst.budget = s.budget;
  inst.comments.push_back("square stabbing reduction, " + std::to_string(s.squares.size()) + " squares, " +
                          std::to_string(s.v_lines.size()) + " vlines, " + std::to_string(s.h_lines.size()) + " hlines");
  inst.comments.push_back("scale " + std::to_string(r.scale));
  const Coord scale(static_cast<long>(r.scale));
  const Coord one(1);

  std::optional<Coord> max_x, max_y;
  auto raise = [](std::optional<Coord>& m, const Coord& v) {
    if (!m || *m < v) m = v;
  };
  for (const auto& q : s.squares) {
    raise(max_x, q.x);
    raise(max_y, q.y);
  }
  for (const auto& c : s.v_lines) raise(max_x, c);
  for (const auto& c : s.h_lines) raise(max_y, c + one);

  for (const auto& q : s.squares) inst.add_point(Color::Blue, {q.x * scale, q.y * scale});

  Coord top = max_y.value_or(Coord(0));
  for (auto i : v_order) {
    const Coord& c = s.v_lines[i];
    top = top + one;
    inst.objects.emplace_back(SkylineV{(c - one) * scale, c * scale, top * scale});
    inst.add_point(Color::Red, {(c - one) * scale, top * scale});
    r.line_of_object.push_back({true, i});
  }
  Coord right = max_x.value_or(Coord(0));
  for (auto i : h_order) {
    const Coord& c = s.h_lines[i];
    right = right + one;
    inst.objects.emplace_back(SkylineH{right * scale, c * scale, (c + one) * scale});
    inst.add_point(Color::Red, {right * scale, (c + one) * scale});
    r.line_of_object.push_back({false, i});
  }
  return r;
}

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  long below(long n) { return std::uniform_int_distribution<long>(0, n - 1)(gen_); }
  bool coin() { return below(2) == 1; }
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<std::size_t>(below(static_cast<long>(i)))]);
  }

 private:
  std::mt19937_64 gen_;
};

std::string object_key(const CoverObject& o) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Hyperplane>) return "h" + std::to_string(v.axis) + ":" + v.offset.str();
        if constexpr (std::is_same_v<T, Quadrant>) return "q" + v.corner_x.str() + ":" + v.corner_y.str();
        if constexpr (std::is_same_v<T, SkylineH>) return "sh" + v.x_max.str() + ":" + v.y_lo.str() + ":" + v.y_hi.str();
        if constexpr (std::is_same_v<T, SkylineV>) return "sv" + v.x_lo.str() + ":" + v.x_hi.str() + ":" + v.y_max.str();
        if constexpr (std::is_same_v<T, AbstractSet>) {
          std::string s = "a";
          for (auto id : v.member_ids) s += std::to_string(id) + ",";
          return s;
        }
      },
      o);
}

}  // namespace

Instance random_instance(std::uint64_t seed, const RandomParams& params) {
  const RandomParams& p = params;
  if (p.d < 1 || p.n_red < 0 || p.n_blue < 0 || p.coord_range < 1 || p.object_count < 0) {
    throw UsageError("random instance parameters out of range");
  }
  if (p.budget && *p.budget < 0) throw UsageError("negative budget");
  const bool planar = p.family == Family::Quadrant || p.family == Family::Skyline;
  if (planar && p.d != 2) throw UsageError(std::string(family_name(p.family)) + " instances need d = 2");
  if (p.family == Family::Mixed || p.family == Family::Empty) throw UsageError("cannot generate this family");
  const int n = p.n_red + p.n_blue;
  const bool distinct = planar && !p.allow_ties;
  if (distinct && n > p.coord_range) {
    throw UsageError("distinct coordinates need coord_range >= n_red + n_blue");
  }
  const long range = p.coord_range;
  const long double capacity = [&]() -> long double {
    switch (p.family) {
      case Family::Hyperplane: return static_cast<long double>(p.d) * range;
      case Family::Quadrant: return static_cast<long double>(range) * range;
      case Family::Skyline: return 2.0L * range * range * range;
      default: return std::ldexp(1.0L, std::min(n, 60));
    }
  }();
  if (p.object_count > capacity) throw UsageError("object_count exceeds the number of distinct objects");

  Rng rng(seed);
  Instance inst;
  inst.dimension = p.d;
  inst.budget = p.budget;
  inst.comments.push_back("random " + std::string(family_name(p.family)) + " seed " + std::to_string(seed));

  std::vector<std::vector<Coord>> coords(static_cast<std::size_t>(n));
  if (distinct) {
    std::vector<long> xs(static_cast<std::size_t>(range)), ys(static_cast<std::size_t>(range));
    for (long i = 0; i < range; ++i) xs[static_cast<std::size_t>(i)] = ys[static_cast<std::size_t>(i)] = i;
    rng.shuffle(xs);
    rng.shuffle(ys);
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = {Coord(xs[i]), Coord(ys[i])};
  } else {
    for (auto& c : coords) {
      for (int a = 0; a < p.d; ++a) c.push_back(Coord(rng.below(range)));
    }
  }
  std::vector<Color> colors(static_cast<std::size_t>(n), Color::Blue);
  for (int i = 0; i < p.n_red; ++i) colors[static_cast<std::size_t>(i)] = Color::Red;
  rng.shuffle(colors);
  for (std::size_t i = 0; i < coords.size(); ++i) inst.add_point(colors[i], coords[i]);

  auto anchor = [&]() -> const std::vector<Coord>* {
    if (n == 0 || !rng.coin()) return nullptr;
    return &coords[static_cast<std::size_t>(rng.below(n))];
  };
  auto sample = [&]() -> CoverObject {
    switch (p.family) {
      case Family::Hyperplane: {
        const int axis = static_cast<int>(rng.below(p.d)) + 1;
        const auto* a = anchor();
        return Hyperplane{axis, a ? (*a)[static_cast<std::size_t>(axis - 1)] : Coord(rng.below(range))};
      }
      case Family::Quadrant: {
        const auto* a = anchor();
        if (a) return Quadrant{(*a)[0], (*a)[1]};
        return Quadrant{Coord(rng.below(range)), Coord(rng.below(range))};
      }
      case Family::Skyline: {
        long lo = rng.below(range), hi = rng.below(range);
        if (hi < lo) std::swap(lo, hi);
        const Coord reach(rng.below(range));
        if (rng.coin()) return SkylineH{reach, Coord(lo), Coord(hi)};
        return SkylineV{Coord(lo), Coord(hi), reach};
      }
      default: {
        AbstractSet s;
        for (int i = 0; i < n; ++i) {
          if (rng.coin()) s.member_ids.push_back(static_cast<std::size_t>(i));
        }
        return s;
      }
    }
  };
  std::set<std::string> seen;
  while (static_cast<int>(inst.objects.size()) < p.object_count) {
    CoverObject o = sample();
    if (seen.insert(object_key(o)).second) inst.objects.push_back(std::move(o));
  }
  return inst;
}

RandomParams hyperplane_suite_params(std::uint64_t seed) {
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  RandomParams p;
  p.d = 2 + static_cast<int>(seed % 2);
  p.n_red = static_cast<int>(rng.below(8)) + 1;
  p.n_blue = static_cast<int>(rng.below(8)) + 1;
  p.coord_range = static_cast<int>(rng.below(3)) + 3;
  p.object_count = std::min(static_cast<int>(rng.below(8)) + 3, p.d * p.coord_range);
  p.budget = rng.below(6);
  return p;
}

Graph random_graph(std::uint64_t seed, int max_vertices) {
  if (max_vertices < 0) throw UsageError("negative vertex count");
  Rng rng(seed);
  Graph g;
  g.n_vertices = static_cast<int>(rng.below(max_vertices + 1));
  for (int i = 1; i <= g.n_vertices; ++i) {
    for (int j = i + 1; j <= g.n_vertices; ++j) {
      if (rng.coin()) g.edges.emplace_back(i, j);
    }
  }
  return g;
}

StabbingInstance random_stabbing(std::uint64_t seed, int max_squares, int max_lines) {
  if (max_squares < 0 || max_lines < 0) throw UsageError("negative size");
  Rng rng(seed);
  constexpr long kRange = 6;
  StabbingInstance s;
  const long squares = rng.below(max_squares + 1);
  std::set<std::pair<long, long>> corners;
  while (static_cast<long>(s.squares.size()) < squares) {
    const long x = rng.below(kRange), y = rng.below(kRange) + 1;
    if (corners.insert({x, y}).second) s.squares.push_back({Coord(x), Coord(y)});
  }
  const long lines = rng.below(max_lines + 1);
  std::set<long> vs, hs;
  for (long i = 0; i < lines; ++i) {
    const long c = rng.below(kRange + 1);
    if (rng.coin()) {
      if (vs.insert(c).second) s.v_lines.push_back(Coord(c));
    } else if (hs.insert(c).second) {
      s.h_lines.push_back(Coord(c));
    }
  }
  std::sort(s.v_lines.begin(), s.v_lines.end());
  std::sort(s.h_lines.begin(), s.h_lines.end(), [](const Coord& a, const Coord& b) { return b < a; });
  s.budget = rng.below(static_cast<long>(s.v_lines.size() + s.h_lines.size()) + 1);
  return s;
}

}  // namespace rbsc

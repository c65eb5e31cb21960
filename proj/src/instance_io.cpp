#include "rbsc/instance_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

namespace rbsc {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

namespace {

template <typename Int>
Int parse_int(std::string_view tok, std::size_t line, const char* what) {
  Int v{};
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(line, std::string("expected integer ") + what + ", got '" + std::string(tok) + "'");
  }
  return v;
}

Coord parse_coord(std::string_view tok, std::size_t line) {
  try {
    return Coord::parse(tok);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, e.what());
  }
}

void expect_arity(const std::vector<std::string_view>& t, std::size_t n, std::size_t line) {
  if (t.size() != n) {
    throw ParseError(line, "'" + std::string(t[0]) + "' expects " + std::to_string(n - 1) + " arguments, got " +
                               std::to_string(t.size() - 1));
  }
}

}  // namespace

Instance parse_instance(std::istream& in) {
  Instance inst;
  std::string raw;
  std::size_t line_no = 0;
  enum class Stage { Header, Dim, Budget, Points, Objects } stage = Stage::Header;

  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string_view line = raw;
    if (stage == Stage::Header) {
      const auto t = split_tokens(line);
      if (t.size() != 2 || t[0] != "rbsc" || t[1] != "1") throw ParseError(line_no, "expected header 'rbsc 1'");
      stage = Stage::Dim;
      continue;
    }
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos) continue;
    if (line[first] == '#') {
      std::string_view body = line.substr(first + 1);
      if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      inst.comments.emplace_back(body);
      continue;
    }
    const auto t = split_tokens(line);
    const std::string_view key = t[0];

    if (stage == Stage::Dim) {
      if (key != "dim") throw ParseError(line_no, "expected 'dim <d>'");
      expect_arity(t, 2, line_no);
      inst.dimension = parse_int<int>(t[1], line_no, "dimension");
      if (inst.dimension < 1) throw ParseError(line_no, "dimension must be at least 1");
      stage = Stage::Budget;
      continue;
    }
    if (key == "budget") {
      if (stage != Stage::Budget) throw ParseError(line_no, "'budget' must directly follow 'dim'");
      expect_arity(t, 2, line_no);
      inst.budget = parse_int<std::int64_t>(t[1], line_no, "budget");
      if (*inst.budget < 0) throw ParseError(line_no, "budget must be nonnegative");
      stage = Stage::Points;
      continue;
    }
    if (key == "point") {
      if (stage == Stage::Objects) throw ParseError(line_no, "points must precede objects");
      stage = Stage::Points;
      expect_arity(t, 2 + static_cast<std::size_t>(inst.dimension), line_no);
      Color color;
      if (t[1] == "r") {
        color = Color::Red;
      } else if (t[1] == "b") {
        color = Color::Blue;
      } else {
        throw ParseError(line_no, "point color must be 'r' or 'b'");
      }
      std::vector<Coord> coords;
      for (std::size_t i = 2; i < t.size(); ++i) coords.push_back(parse_coord(t[i], line_no));
      inst.add_point(color, std::move(coords));
      continue;
    }

    stage = Stage::Objects;
    auto require_plane = [&] {
      if (inst.dimension != 2) throw ParseError(line_no, "'" + std::string(key) + "' requires dim 2");
    };
    if (key == "hyperplane") {
      expect_arity(t, 3, line_no);
      const int axis = parse_int<int>(t[1], line_no, "axis");
      if (axis < 1 || axis > inst.dimension) throw ParseError(line_no, "axis out of range 1.." + std::to_string(inst.dimension));
      inst.objects.emplace_back(Hyperplane{axis, parse_coord(t[2], line_no)});
    } else if (key == "quadrant") {
      require_plane();
      expect_arity(t, 3, line_no);
      inst.objects.emplace_back(Quadrant{parse_coord(t[1], line_no), parse_coord(t[2], line_no)});
    } else if (key == "skyline") {
      require_plane();
      expect_arity(t, 5, line_no);
      Coord a = parse_coord(t[2], line_no), b = parse_coord(t[3], line_no), c = parse_coord(t[4], line_no);
      if (t[1] == "h") {
        if (b > c) throw ParseError(line_no, "skyline h needs y_lo <= y_hi");
        inst.objects.emplace_back(SkylineH{a, b, c});
      } else if (t[1] == "v") {
        if (a > b) throw ParseError(line_no, "skyline v needs x_lo <= x_hi");
        inst.objects.emplace_back(SkylineV{a, b, c});
      } else {
        throw ParseError(line_no, "skyline orientation must be 'h' or 'v'");
      }
    } else if (key == "set") {
      AbstractSet s;
      for (std::size_t i = 1; i < t.size(); ++i) {
        const auto id = parse_int<std::size_t>(t[i], line_no, "point id");
        if (id >= inst.points.size()) throw ParseError(line_no, "point id " + std::to_string(id) + " out of range");
        s.member_ids.push_back(id);
      }
      std::sort(s.member_ids.begin(), s.member_ids.end());
      if (std::adjacent_find(s.member_ids.begin(), s.member_ids.end()) != s.member_ids.end()) {
        throw ParseError(line_no, "duplicate point id in set");
      }
      inst.objects.emplace_back(std::move(s));
    } else {
      throw ParseError(line_no, "unknown directive '" + std::string(key) + "'");
    }
    if (inst.family() == Family::Mixed) throw ParseError(line_no, "objects of different families in one instance");
  }
  if (stage == Stage::Header) throw ParseError(line_no + 1, "expected header 'rbsc 1'");
  if (stage == Stage::Dim) throw ParseError(line_no + 1, "missing 'dim' line");
  return inst;
}

Instance parse_instance_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_instance(in);
}

Instance read_instance_file(const std::string& path) {
  if (path == "-") return parse_instance(std::cin);
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return parse_instance(in);
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  out << "rbsc 1\n";
  for (const auto& c : inst.comments) out << "# " << c << '\n';
  out << "dim " << inst.dimension << '\n';
  if (inst.budget) out << "budget " << *inst.budget << '\n';
  for (const auto& p : inst.points) {
    out << "point " << (p.red() ? 'r' : 'b');
    for (const auto& c : p.coords) out << ' ' << c.str();
    out << '\n';
  }
  struct Writer {
    std::ostream& out;
    void operator()(const Hyperplane& h) const { out << "hyperplane " << h.axis << ' ' << h.offset.str(); }
    void operator()(const Quadrant& q) const { out << "quadrant " << q.corner_x.str() << ' ' << q.corner_y.str(); }
    void operator()(const SkylineH& s) const {
      out << "skyline h " << s.x_max.str() << ' ' << s.y_lo.str() << ' ' << s.y_hi.str();
    }
    void operator()(const SkylineV& s) const {
      out << "skyline v " << s.x_lo.str() << ' ' << s.x_hi.str() << ' ' << s.y_max.str();
    }
    void operator()(const AbstractSet& a) const {
      out << "set";
      for (auto id : a.member_ids) out << ' ' << id;
    }
  };
  for (const auto& obj : inst.objects) {
    std::visit(Writer{out}, obj);
    out << '\n';
  }
  return out.str();
}

}  // namespace rbsc

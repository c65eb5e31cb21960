#include "rbsc/model.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace rbsc {

Family family_of(const CoverObject& obj) {
  struct Visitor {
    Family operator()(const Hyperplane&) const { return Family::Hyperplane; }
    Family operator()(const Quadrant&) const { return Family::Quadrant; }
    Family operator()(const SkylineH&) const { return Family::Skyline; }
    Family operator()(const SkylineV&) const { return Family::Skyline; }
    Family operator()(const AbstractSet&) const { return Family::Abstract; }
  };
  return std::visit(Visitor{}, obj);
}

const char* family_name(Family f) {
  switch (f) {
    case Family::Empty: return "empty";
    case Family::Hyperplane: return "hyperplane";
    case Family::Quadrant: return "quadrant";
    case Family::Skyline: return "skyline";
    case Family::Abstract: return "set";
    case Family::Mixed: return "mixed";
  }
  return "?";
}

std::size_t Instance::red_count() const {
  return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const Point& p) { return p.red(); }));
}

std::size_t Instance::blue_count() const { return points.size() - red_count(); }

Family Instance::family() const {
  Family f = Family::Empty;
  for (const auto& obj : objects) {
    const Family g = family_of(obj);
    if (f == Family::Empty) {
      f = g;
    } else if (f != g) {
      return Family::Mixed;
    }
  }
  return f;
}

void Instance::add_point(Color color, std::vector<Coord> coords) {
  points.push_back(Point{std::move(coords), color, points.size()});
}

bool covers(const CoverObject& obj, const Point& p, int d) {
  if (static_cast<int>(p.coords.size()) != d) {
    throw UsageError("point " + std::to_string(p.id) + " has " + std::to_string(p.coords.size()) +
                     " coordinates, expected " + std::to_string(d));
  }
  auto need_plane = [&](const char* what) {
    if (d != 2) throw UsageError(std::string(what) + " requires dimension 2");
  };
  struct Visitor {
    const Point& p;
    int d;
    decltype(need_plane)& plane;
    bool operator()(const Hyperplane& h) const {
      if (h.axis < 1 || h.axis > d) throw UsageError("hyperplane axis " + std::to_string(h.axis) + " out of range");
      return p.coords[static_cast<std::size_t>(h.axis - 1)] == h.offset;
    }
    bool operator()(const Quadrant& q) const {
      plane("quadrant");
      return p.coords[0] >= q.corner_x && p.coords[1] >= q.corner_y;
    }
    bool operator()(const SkylineH& s) const {
      plane("skyline");
      return p.coords[0] <= s.x_max && s.y_lo <= p.coords[1] && p.coords[1] <= s.y_hi;
    }
    bool operator()(const SkylineV& s) const {
      plane("skyline");
      return s.x_lo <= p.coords[0] && p.coords[0] <= s.x_hi && p.coords[1] <= s.y_max;
    }
    bool operator()(const AbstractSet& a) const {
      return std::binary_search(a.member_ids.begin(), a.member_ids.end(), p.id);
    }
  };
  return std::visit(Visitor{p, d, need_plane}, obj);
}

std::vector<std::size_t> IncidenceIndex::members_of_object(std::size_t o) const {
  std::vector<std::size_t> out;
  out.reserve(blues_of_object[o].size() + reds_of_object[o].size());
  std::merge(blues_of_object[o].begin(), blues_of_object[o].end(), reds_of_object[o].begin(), reds_of_object[o].end(),
             std::back_inserter(out));
  return out;
}

IncidenceIndex build_incidence(const Instance& inst) {
  IncidenceIndex idx;
  idx.objects_of_point.resize(inst.points.size());
  idx.blues_of_object.resize(inst.objects.size());
  idx.reds_of_object.resize(inst.objects.size());
  for (std::size_t o = 0; o < inst.objects.size(); ++o) {
    for (const auto& p : inst.points) {
      if (!covers(inst.objects[o], p, inst.dimension)) continue;
      idx.objects_of_point[p.id].push_back(o);
      (p.red() ? idx.reds_of_object : idx.blues_of_object)[o].push_back(p.id);
    }
  }
  return idx;
}

std::vector<Violation> validate(const Instance& inst) {
  std::vector<Violation> out;
  const int d = inst.dimension;
  if (d < 1) out.push_back({"instance", "dimension must be at least 1"});
  if (inst.budget && *inst.budget < 0) out.push_back({"instance", "budget must be nonnegative"});
  for (std::size_t i = 0; i < inst.points.size(); ++i) {
    const auto& p = inst.points[i];
    const std::string name = "point " + std::to_string(i);
    if (p.id != i) out.push_back({name, "id " + std::to_string(p.id) + " does not match its position"});
    if (static_cast<int>(p.coords.size()) != d) {
      out.push_back({name, "has " + std::to_string(p.coords.size()) + " coordinates, expected " + std::to_string(d)});
    }
  }
  if (inst.family() == Family::Mixed) out.push_back({"instance", "mixed family: objects of more than one kind"});

  const std::size_t n = inst.points.size();
  for (std::size_t o = 0; o < inst.objects.size(); ++o) {
    const std::string name = "object " + std::to_string(o);
    const auto& obj = inst.objects[o];
    if (const auto* h = std::get_if<Hyperplane>(&obj)) {
      if (h->axis < 1 || h->axis > d) out.push_back({name, "axis " + std::to_string(h->axis) + " outside 1.." + std::to_string(d)});
    } else if (const auto* a = std::get_if<AbstractSet>(&obj)) {
      for (std::size_t k = 0; k < a->member_ids.size(); ++k) {
        const std::size_t id = a->member_ids[k];
        if (id >= n) out.push_back({name, "references missing point id " + std::to_string(id)});
        if (k > 0 && a->member_ids[k - 1] >= id) out.push_back({name, "member ids not sorted and unique at id " + std::to_string(id)});
      }
    } else {
      if (d != 2) out.push_back({name, "planar object in dimension " + std::to_string(d)});
      if (const auto* s = std::get_if<SkylineH>(&obj); s && s->y_lo > s->y_hi) out.push_back({name, "y_lo exceeds y_hi"});
      if (const auto* s = std::get_if<SkylineV>(&obj); s && s->x_lo > s->x_hi) out.push_back({name, "x_lo exceeds x_hi"});
    }
  }
  return out;
}

Deduped dedupe_objects(const Instance& inst) {
  const IncidenceIndex idx = build_incidence(inst);
  Deduped out;
  out.instance = inst;
  out.instance.objects.clear();
  out.mapping.resize(inst.objects.size());
  std::map<std::vector<std::size_t>, std::size_t> seen;
  for (std::size_t o = 0; o < inst.objects.size(); ++o) {
    auto [it, inserted] = seen.emplace(idx.members_of_object(o), out.instance.objects.size());
    if (inserted) out.instance.objects.push_back(inst.objects[o]);
    out.mapping[o] = it->second;
  }
  return out;
}

Solution no_solution() { return Solution{}; }

Solution solution_from_family(const Instance& inst, std::vector<std::size_t> chosen) {
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  Solution s;
  s.verdict = Verdict::Yes;
  for (const auto& p : inst.points) {
    if (!p.red()) continue;
    for (std::size_t o : chosen) {
      if (covers(inst.objects[o], p, inst.dimension)) {
        s.covered_reds.push_back(p.id);
        break;
      }
    }
  }
  s.red_count = s.covered_reds.size();
  s.chosen = std::move(chosen);
  return s;
}

CoverageCheck check_family(const Instance& inst, const std::vector<std::size_t>& chosen) {
  CoverageCheck c;
  for (std::size_t o : chosen) {
    if (o >= inst.objects.size()) throw UsageError("object index " + std::to_string(o) + " out of range");
  }
  for (const auto& p : inst.points) {
    bool hit = false;
    for (std::size_t o : chosen) {
      if (covers(inst.objects[o], p, inst.dimension)) {
        hit = true;
        break;
      }
    }
    if (p.red() && hit) ++c.red_count;
    if (p.blue() && !hit && !c.uncovered_blue) c.uncovered_blue = p.id;
  }
  c.over_budget = inst.budget && static_cast<std::int64_t>(c.red_count) > *inst.budget;
  c.ok = !c.uncovered_blue && !c.over_budget;
  return c;
}

}  // namespace rbsc

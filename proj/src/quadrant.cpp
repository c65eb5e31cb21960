#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include <boost/dynamic_bitset.hpp>

#include "rbsc/quadrant.hpp"

namespace rbsc {

namespace {

// Minimal points under (fx, fy) ordering, returned with fx increasing.
std::vector<Point2> minimal_staircase(std::vector<Point2> pts, bool flip_x, bool flip_y) {
  const Coord zero(0L);
  for (auto& p : pts) {
    if (flip_x) p.x = zero - p.x;
    if (flip_y) p.y = zero - p.y;
  }
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  });
  std::vector<Point2> out;
  for (const auto& p : pts) {
    if (out.empty() || p.y < out.back().y) out.push_back(p);
  }
  for (auto& p : out) {
    if (flip_x) p.x = zero - p.x;
    if (flip_y) p.y = zero - p.y;
  }
  return out;
}

void trace_staircase(const std::vector<Point2>& stair, bool corner_next_x, std::vector<Point2>& out) {
  for (std::size_t i = 0; i < stair.size(); ++i) {
    out.push_back(stair[i]);
    if (i + 1 < stair.size()) {
      const auto& a = stair[i];
      const auto& b = stair[i + 1];
      out.push_back(corner_next_x ? Point2{b.x, a.y} : Point2{a.x, b.y});
    }
  }
}

std::vector<Point2> simplify_ring(std::vector<Point2> ring) {
  std::vector<Point2> dedup;
  for (auto& p : ring) {
    if (dedup.empty() || !(dedup.back() == p)) dedup.push_back(std::move(p));
  }
  while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
  bool changed = true;
  while (changed && dedup.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < dedup.size(); ++i) {
      const auto& prev = dedup[(i + dedup.size() - 1) % dedup.size()];
      const auto& next = dedup[(i + 1) % dedup.size()];
      const auto& cur = dedup[i];
      const bool vertical = prev.x == cur.x && cur.x == next.x;
      const bool horizontal = prev.y == cur.y && cur.y == next.y;
      if (vertical || horizontal || prev == next) {
        dedup.erase(dedup.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return dedup;
}

bool weakly_dominates(const Point& a, const Point& b) {
  return a.coords[0] <= b.coords[0] && a.coords[1] <= b.coords[1];
}

void require_quadrants(const Instance& inst) {
  const Family f = inst.family();
  if (f != Family::Quadrant && f != Family::Empty) {
    throw UsageError(std::string("quadrant solver needs a quadrant instance, got ") + family_name(f));
  }
  if (inst.dimension != 2) throw UsageError("quadrant solver needs dim 2");
}

}  // namespace

OrthogonalHull orthogonal_convex_hull(const std::vector<Point2>& points) {
  if (points.empty()) throw UsageError("orthogonal hull needs at least one point");
  OrthogonalHull h;
  h.sw = minimal_staircase(points, false, false);
  h.se = minimal_staircase(points, true, false);
  std::reverse(h.se.begin(), h.se.end());
  h.ne = minimal_staircase(points, true, true);
  h.nw = minimal_staircase(points, false, true);
  std::reverse(h.nw.begin(), h.nw.end());

  std::vector<Point2> ring;
  trace_staircase(h.sw, true, ring);
  trace_staircase(h.se, false, ring);
  trace_staircase(h.ne, true, ring);
  trace_staircase(h.nw, false, ring);
  h.vertices = simplify_ring(std::move(ring));
  return h;
}

bool OrthogonalHull::contains(const Point2& q) const {
  // The staircases hold every extreme point, so checking them suffices.
  auto any = [&](const std::vector<Point2>& stair, auto pred) { return std::any_of(stair.begin(), stair.end(), pred); };
  return any(sw, [&](const Point2& p) { return p.x <= q.x && p.y <= q.y; }) &&
         any(se, [&](const Point2& p) { return p.x >= q.x && p.y <= q.y; }) &&
         any(ne, [&](const Point2& p) { return p.x >= q.x && p.y >= q.y; }) &&
         any(nw, [&](const Point2& p) { return p.x <= q.x && p.y >= q.y; });
}

Chain left_bottom_chain(const Instance& inst) {
  std::vector<const Point*> blues;
  for (const auto& p : inst.points) {
    if (p.blue()) blues.push_back(&p);
  }
  std::sort(blues.begin(), blues.end(), [](const Point* a, const Point* b) {
    if (a->coords[0] != b->coords[0]) return a->coords[0] < b->coords[0];
    if (a->coords[1] != b->coords[1]) return a->coords[1] < b->coords[1];
    return a->id < b->id;
  });
  Chain chain;
  std::vector<const Point*> on_chain;
  for (const Point* p : blues) {
    if (on_chain.empty() || p->coords[1] < on_chain.back()->coords[1]) {
      on_chain.push_back(p);
      chain.blues.push_back(p->id);
    }
  }
  for (const auto& p : inst.points) {
    if (std::find(chain.blues.begin(), chain.blues.end(), p.id) != chain.blues.end()) continue;
    if (std::any_of(on_chain.begin(), on_chain.end(), [&](const Point* c) { return weakly_dominates(*c, p); })) {
      chain.region_right.push_back(p.id);
    }
  }
  return chain;
}

std::string render_chain(const Chain& chain) {
  std::string out = "chain";
  for (auto id : chain.blues) out += " " + std::to_string(id);
  return out;
}

ReducedQuadrants reduce_quadrant_instance(const Instance& inst) {
  require_quadrants(inst);
  ReducedQuadrants r;
  r.instance.dimension = 2;
  r.instance.budget = inst.budget;
  if (inst.blue_count() == 0) return r;

  r.chain = left_bottom_chain(inst);
  std::vector<bool> keep(inst.points.size(), true);
  for (auto id : r.chain.region_right) {
    keep[id] = false;
    if (inst.points[id].red()) r.forced_reds.push_back(id);
  }
  for (const auto& p : inst.points) {
    if (!keep[p.id]) continue;
    r.point_origin.push_back(p.id);
    r.instance.add_point(p.color, p.coords);
  }
  for (std::size_t o = 0; o < inst.objects.size(); ++o) {
    const bool useful = std::any_of(r.instance.points.begin(), r.instance.points.end(),
                                    [&](const Point& p) { return covers(inst.objects[o], p, 2); });
    if (!useful) continue;
    r.object_origin.push_back(o);
    r.instance.objects.push_back(inst.objects[o]);
  }
  return r;
}

OrderMaps order_maps(const Instance& inst) {
  const std::size_t n = inst.points.size();
  std::vector<std::size_t> order(n);
  OrderMaps m;
  m.pi.resize(n);
  m.sigma.resize(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& pa = inst.points[a].coords[0];
    const auto& pb = inst.points[b].coords[0];
    return pa != pb ? pa < pb : a < b;
  });
  for (std::size_t r = 0; r < n; ++r) m.pi[order[r]] = r + 1;
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& pa = inst.points[a].coords[1];
    const auto& pb = inst.points[b].coords[1];
    return pa != pb ? pa > pb : a < b;
  });
  for (std::size_t r = 0; r < n; ++r) m.sigma[order[r]] = r + 1;
  return m;
}

namespace {

constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max() / 4;

struct DpQuadrant {
  std::size_t index;  // in the reduced instance
  std::size_t left;
  std::size_t bottom;
  std::vector<std::size_t> blues;       // reduced point ids
  std::vector<std::size_t> red_sigmas;  // sorted
};

class QuadrantDp {
 public:
  QuadrantDp(const Instance& reduced, std::vector<DpQuadrant> quads) : quads_(std::move(quads)) {
    const OrderMaps maps = order_maps(reduced);
    for (const auto& p : reduced.points) {
      if (p.blue()) blues_by_sigma_.emplace_back(maps.sigma[p.id], p.id);
    }
    std::sort(blues_by_sigma_.begin(), blues_by_sigma_.end());
  }

  std::int64_t value(std::size_t i, std::size_t j) {
    const auto key = std::make_pair(i, j);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second.value;
    auto next = std::upper_bound(blues_by_sigma_.begin(), blues_by_sigma_.end(), std::make_pair(i, SIZE_MAX));
    Entry e;
    if (next == blues_by_sigma_.end()) {
      e.value = 0;
    } else {
      const std::size_t target = next->second;
      for (std::size_t q = 0; q < quads_.size(); ++q) {
        const auto& quad = quads_[q];
        if (quad.left <= j) continue;
        if (!std::binary_search(quad.blues.begin(), quad.blues.end(), target)) continue;
        const std::int64_t rest = value(quad.bottom, quad.left);
        if (rest >= kInfinity) continue;
        const auto reds_below = quad.red_sigmas.end() - std::upper_bound(quad.red_sigmas.begin(), quad.red_sigmas.end(), i);
        const std::int64_t total = rest + reds_below;
        if (total < e.value) {
          e.value = total;
          e.choice = q;
        }
      }
    }
    memo_[key] = e;
    return e.value;
  }

  std::vector<std::size_t> witness() {
    std::vector<std::size_t> out;
    std::pair<std::size_t, std::size_t> key{0, 0};
    value(0, 0);
    while (true) {
      const Entry& e = memo_.at(key);
      if (!e.choice) break;
      const auto& quad = quads_[*e.choice];
      out.push_back(quad.index);
      key = {quad.bottom, quad.left};
    }
    return out;
  }

  std::size_t states() const { return memo_.size(); }

 private:
  struct Entry {
    std::int64_t value = kInfinity;
    std::optional<std::size_t> choice;
  };

  std::vector<DpQuadrant> quads_;
  std::vector<std::pair<std::size_t, std::size_t>> blues_by_sigma_;
  std::map<std::pair<std::size_t, std::size_t>, Entry> memo_;
};

// Q is redundant when another object covers at least its blues and at most
// its reds; equal objects keep the lowest index.
std::vector<bool> dominance_prune(const Instance& reduced, const IncidenceIndex& idx) {
  const std::size_t h = reduced.objects.size();
  const std::size_t n = reduced.points.size();
  std::vector<boost::dynamic_bitset<>> blues(h, boost::dynamic_bitset<>(n)), reds(h, boost::dynamic_bitset<>(n));
  for (std::size_t o = 0; o < h; ++o) {
    for (auto id : idx.blues_of_object[o]) blues[o][id] = true;
    for (auto id : idx.reds_of_object[o]) reds[o][id] = true;
  }
  std::vector<bool> keep(h, true);
  for (std::size_t q = 0; q < h; ++q) {
    if (blues[q].none()) {
      keep[q] = false;
      continue;
    }
    for (std::size_t p = 0; p < h && keep[q]; ++p) {
      if (p == q || !blues[q].is_subset_of(blues[p]) || !reds[p].is_subset_of(reds[q])) continue;
      const bool equal = blues[q] == blues[p] && reds[q] == reds[p];
      if (!equal || p < q) keep[q] = false;
    }
  }
  return keep;
}

}  // namespace

Solution solve_quadrants(const Instance& inst, QuadrantStats* stats) {
  require_quadrants(inst);
  ReducedQuadrants red = reduce_quadrant_instance(inst);
  if (inst.blue_count() == 0) {
    Solution s = solution_from_family(inst, {});
    s.optimum = 0;
    return s;
  }
  const Instance& reduced = red.instance;
  const IncidenceIndex idx = build_incidence(reduced);
  const std::vector<bool> keep = dominance_prune(reduced, idx);
  const OrderMaps maps = order_maps(reduced);

  std::vector<DpQuadrant> quads;
  for (std::size_t o = 0; o < reduced.objects.size(); ++o) {
    if (!keep[o]) continue;
    DpQuadrant q{o, SIZE_MAX, 0, idx.blues_of_object[o], {}};
    for (auto id : idx.members_of_object(o)) {
      q.left = std::min(q.left, maps.pi[id]);
      q.bottom = std::max(q.bottom, maps.sigma[id]);
    }
    for (auto id : idx.reds_of_object[o]) q.red_sigmas.push_back(maps.sigma[id]);
    std::sort(q.red_sigmas.begin(), q.red_sigmas.end());
    quads.push_back(std::move(q));
  }
  if (stats) stats->pruned_objects = reduced.objects.size() - quads.size();

  QuadrantDp dp(reduced, std::move(quads));
  const std::int64_t best = dp.value(0, 0);
  if (stats) stats->dp_states = dp.states();
  if (best >= kInfinity) return no_solution();

  std::vector<std::size_t> chosen;
  for (auto q : dp.witness()) chosen.push_back(red.object_origin[q]);
  std::sort(chosen.begin(), chosen.end());
  Solution s = solution_from_family(inst, std::move(chosen));
  s.optimum = best + static_cast<std::int64_t>(red.forced_reds.size());
  if (inst.budget && *s.optimum > *inst.budget) {
    Solution no = no_solution();
    no.optimum = s.optimum;
    return no;
  }
  return s;
}

}  // namespace rbsc

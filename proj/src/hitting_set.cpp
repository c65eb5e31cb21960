#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "rbsc/fpt.hpp"

namespace rbsc {

std::vector<std::string> validate_hitting_set(const HittingSetInstance& hs, int max_set_size) {
  std::vector<std::string> out;
  const std::set<std::size_t> universe(hs.universe.begin(), hs.universe.end());
  for (std::size_t i = 0; i < hs.sets.size(); ++i) {
    const auto& s = hs.sets[i];
    const std::string name = "set " + std::to_string(i);
    if (s.empty()) out.push_back(name + " is empty");
    if (static_cast<int>(s.size()) > max_set_size) out.push_back(name + " exceeds size " + std::to_string(max_set_size));
    for (auto e : s) {
      if (!universe.count(e)) out.push_back(name + " uses element " + std::to_string(e) + " outside the universe");
    }
  }
  if (hs.budget < 0) out.push_back("negative budget");
  return out;
}

namespace {

struct HsSearch {
  const std::vector<std::vector<std::size_t>>& sets;
  std::vector<std::size_t> picked;
  SearchStats stats;

  bool hit(const std::vector<std::size_t>& s) const {
    return std::any_of(s.begin(), s.end(),
                       [&](std::size_t e) { return std::find(picked.begin(), picked.end(), e) != picked.end(); });
  }

  bool run(std::int64_t budget, int depth) {
    ++stats.nodes_expanded;
    stats.max_depth = std::max(stats.max_depth, depth);
    const std::vector<std::size_t>* target = nullptr;
    for (const auto& s : sets) {
      if (hit(s)) continue;
      if (!target || s.size() < target->size()) target = &s;
    }
    if (!target) return true;
    if (budget == 0 || target->empty()) return false;
    stats.branch_widths.push_back(static_cast<int>(target->size()));
    for (auto e : *target) {
      picked.push_back(e);
      if (run(budget - 1, depth + 1)) return true;
      picked.pop_back();
    }
    return false;
  }
};

}  // namespace

HittingSetResult solve_hitting_set(const HittingSetInstance& hs) {
  std::vector<std::vector<std::size_t>> sets = hs.sets;
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  HsSearch search{sets, {}, {}};
  HittingSetResult r;
  if (hs.budget >= 0 && search.run(hs.budget, 0)) {
    std::sort(search.picked.begin(), search.picked.end());
    r.hitting_set = search.picked;
  }
  r.stats = std::move(search.stats);
  return r;
}

std::vector<std::size_t> HittingSetReduction::lift(const std::vector<std::size_t>& hitting_set) const {
  std::vector<std::size_t> out;
  for (auto red : hitting_set) {
    out.insert(out.end(), objects_of_red[red].begin(), objects_of_red[red].end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

HittingSetReduction to_hitting_set(const Instance& inst) {
  const IncidenceIndex idx = build_incidence(inst);
  HittingSetReduction r;
  r.hs.budget = inst.budget.value_or(0);
  r.objects_of_red.resize(inst.points.size());
  for (const auto& p : inst.points) {
    if (p.red()) r.hs.universe.push_back(p.id);
  }
  for (std::size_t o = 0; o < inst.objects.size(); ++o) {
    if (idx.reds_of_object[o].size() != 1) {
      throw UsageError("object " + std::to_string(o) + " holds " + std::to_string(idx.reds_of_object[o].size()) +
                       " red points; hitting set reduction needs exactly one");
    }
    r.objects_of_red[idx.reds_of_object[o].front()].push_back(o);
  }
  for (const auto& p : inst.points) {
    if (!p.blue()) continue;
    std::vector<std::size_t> set;
    for (auto o : idx.objects_of_point[p.id]) set.push_back(idx.reds_of_object[o].front());
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    r.hs.sets.push_back(std::move(set));
  }
  return r;
}

BranchConstant branch_constant(int d) {
  if (d < 2) throw UsageError("branch constant needs d >= 2");
  BranchConstant c;
  c.d = d;
  c.linear = d - 1;
  c.discriminant = c.linear * c.linear + 4;
  c.value = (static_cast<double>(c.linear) + std::sqrt(static_cast<double>(c.discriminant))) / 2.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", c.value);
  c.decimal = buf;
  return c;
}

}  // namespace rbsc

#include <algorithm>
#include <bit>
#include <cstdint>

#include <boost/dynamic_bitset.hpp>

#include "rbsc/fpt.hpp"
#include "rbsc/kernel.hpp"

namespace rbsc {

namespace {

using Bits = boost::dynamic_bitset<>;

void require_hyperplanes(const Instance& inst, const char* solver) {
  const Family f = inst.family();
  if (f != Family::Hyperplane && f != Family::Empty) {
    throw UsageError(std::string(solver) + " needs a hyperplane instance, got " + family_name(f));
  }
  if (!inst.budget) throw UsageError(std::string(solver) + " needs a budget");
}

// Mutable search state over a fixed instance: live points, live objects,
// remaining budget and the objects taken so far.
struct SearchState {
  Bits points;
  Bits objects;
  std::int64_t budget = 0;
  std::vector<std::size_t> chosen;
};

class CoverSearch {
 public:
  explicit CoverSearch(const Instance& inst) : inst_(inst), idx_(build_incidence(inst)) {}

  SearchState initial() const {
    SearchState st;
    st.points.resize(inst_.points.size());
    st.points.set();
    st.objects.resize(inst_.objects.size());
    st.objects.set();
    st.budget = inst_.budget.value_or(0);
    return st;
  }

  std::size_t live_reds(const SearchState& st, std::size_t o) const { return count_live(st, idx_.reds_of_object[o]); }
  std::size_t live_blues(const SearchState& st, std::size_t o) const { return count_live(st, idx_.blues_of_object[o]); }

  std::vector<std::size_t> live_objects_of(const SearchState& st, std::size_t point) const {
    std::vector<std::size_t> out;
    for (auto o : idx_.objects_of_point[point]) {
      if (st.objects[o]) out.push_back(o);
    }
    return out;
  }

  void take(SearchState& st, std::size_t o) const {
    st.chosen.push_back(o);
    st.budget -= static_cast<std::int64_t>(live_reds(st, o));
    for (auto id : idx_.blues_of_object[o]) st.points[id] = false;
    for (auto id : idx_.reds_of_object[o]) st.points[id] = false;
    st.objects[o] = false;
  }

  // Safe simplifications: drop objects without blues or with more reds than the
  // budget, take red-free objects, take unique coverers. False if infeasible.
  bool simplify(SearchState& st) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t o = 0; o < inst_.objects.size(); ++o) {
        if (!st.objects[o]) continue;
        if (live_blues(st, o) == 0) {
          st.objects[o] = false;
          changed = true;
          continue;
        }
        const auto reds = live_reds(st, o);
        if (reds == 0) {
          take(st, o);
          changed = true;
        } else if (static_cast<std::int64_t>(reds) > st.budget) {
          st.objects[o] = false;
          changed = true;
        }
      }
      for (const auto& p : inst_.points) {
        if (!p.blue() || !st.points[p.id]) continue;
        const auto objs = live_objects_of(st, p.id);
        if (objs.empty()) return false;
        if (objs.size() == 1) {
          take(st, objs.front());
          if (st.budget < 0) return false;
          changed = true;
        }
      }
    }
    return true;
  }

  const Instance& instance() const { return inst_; }
  const IncidenceIndex& incidence() const { return idx_; }

 private:
  std::size_t count_live(const SearchState& st, const std::vector<std::size_t>& ids) const {
    std::size_t n = 0;
    for (auto id : ids) n += st.points[id] ? 1 : 0;
    return n;
  }

  const Instance& inst_;
  IncidenceIndex idx_;
};

class BranchKr {
 public:
  explicit BranchKr(const Instance& inst) : search_(inst) {}

  std::optional<std::vector<std::size_t>> run() {
    if (run(search_.initial(), 0)) return witness_;
    return std::nullopt;
  }

  SearchStats stats;

 private:
  bool run(SearchState st, int depth) {
    ++stats.nodes_expanded;
    stats.max_depth = std::max(stats.max_depth, depth);
    if (!search_.simplify(st)) return false;
    const Instance& inst = search_.instance();

    std::optional<std::size_t> pick;
    std::size_t pick_degree = SIZE_MAX;
    bool any_blue = false;
    for (const auto& p : inst.points) {
      if (!p.blue() || !st.points[p.id]) continue;
      any_blue = true;
      const auto objs = search_.live_objects_of(st, p.id);
      const bool heavy = std::any_of(objs.begin(), objs.end(), [&](std::size_t o) { return search_.live_reds(st, o) >= 2; });
      if (heavy && objs.size() < pick_degree) {
        pick = p.id;
        pick_degree = objs.size();
      }
    }
    if (!any_blue) {
      witness_ = st.chosen;
      return true;
    }
    if (st.budget <= 0) return false;
    if (!pick) return hitting_set_fallback(st, depth);

    const auto objs = search_.live_objects_of(st, *pick);
    stats.branch_widths.push_back(static_cast<int>(objs.size()));
    for (auto o : objs) {
      SearchState child = st;
      search_.take(child, o);
      if (child.budget < 0) continue;
      if (run(std::move(child), depth + 1)) return true;
    }
    return false;
  }

  // Every live object now holds exactly one live red.
  bool hitting_set_fallback(const SearchState& st, int depth) {
    stats.fallback_used = true;
    const Instance& inst = search_.instance();
    const auto& idx = search_.incidence();
    auto live_red = [&](std::size_t o) {
      for (auto id : idx.reds_of_object[o]) {
        if (st.points[id]) return id;
      }
      return SIZE_MAX;
    };
    HittingSetInstance hs;
    hs.budget = st.budget;
    for (const auto& p : inst.points) {
      if (p.red() && st.points[p.id]) hs.universe.push_back(p.id);
    }
    for (const auto& p : inst.points) {
      if (!p.blue() || !st.points[p.id]) continue;
      std::vector<std::size_t> set;
      for (auto o : search_.live_objects_of(st, p.id)) set.push_back(live_red(o));
      hs.sets.push_back(std::move(set));
    }
    auto r = solve_hitting_set(hs);
    stats.nodes_expanded += r.stats.nodes_expanded;
    stats.max_depth = std::max(stats.max_depth, depth + r.stats.max_depth);
    stats.branch_widths.insert(stats.branch_widths.end(), r.stats.branch_widths.begin(), r.stats.branch_widths.end());
    if (!r.hitting_set) return false;
    witness_ = st.chosen;
    for (std::size_t o = 0; o < inst.objects.size(); ++o) {
      if (st.objects[o] && std::binary_search(r.hitting_set->begin(), r.hitting_set->end(), live_red(o))) {
        witness_.push_back(o);
      }
    }
    return true;
  }

  CoverSearch search_;
  std::vector<std::size_t> witness_;
};

class BranchB {
 public:
  explicit BranchB(const Instance& inst) : search_(inst) {}

  std::optional<std::vector<std::size_t>> run() {
    if (run(search_.initial(), 0)) return witness_;
    return std::nullopt;
  }

  SearchStats stats;

 private:
  bool run(SearchState st, int depth) {
    ++stats.nodes_expanded;
    stats.max_depth = std::max(stats.max_depth, depth);
    const Instance& inst = search_.instance();
    std::optional<std::size_t> pick;
    std::vector<std::size_t> pick_objs;
    for (const auto& p : inst.points) {
      if (!p.blue() || !st.points[p.id]) continue;
      auto objs = search_.live_objects_of(st, p.id);
      if (!pick || objs.size() < pick_objs.size()) {
        pick = p.id;
        pick_objs = std::move(objs);
      }
    }
    if (!pick) {
      witness_ = st.chosen;
      return true;
    }
    if (pick_objs.empty()) return false;

    // A red-free coverer costs nothing and dominates the other branches.
    for (auto o : pick_objs) {
      if (search_.live_reds(st, o) == 0) {
        stats.branch_widths.push_back(1);
        search_.take(st, o);
        return run(std::move(st), depth + 1);
      }
    }
    stats.branch_widths.push_back(static_cast<int>(pick_objs.size()));
    for (auto o : pick_objs) {
      if (static_cast<std::int64_t>(search_.live_reds(st, o)) > st.budget) continue;
      SearchState child = st;
      search_.take(child, o);
      if (run(std::move(child), depth + 1)) return true;
    }
    return false;
  }

  CoverSearch search_;
  std::vector<std::size_t> witness_;
};

Solution finish(const Instance& inst, const std::optional<std::vector<std::size_t>>& family) {
  if (!family) return no_solution();
  return solution_from_family(inst, *family);
}

}  // namespace

SolveResult solve_branch_kr(const Instance& inst, bool kernelize_first) {
  require_hyperplanes(inst, "branch-kr");
  if (kernelize_first) {
    const Kernel k = kernelize(inst, KernelParam::Kr);
    SolveResult r;
    if (k.infeasible) {
      r.stats.nodes_expanded = 1;
      r.solution = no_solution();
      return r;
    }
    r = solve_branch_kr(k.instance, false);
    r.solution = lift_solution(inst, k, r.solution);
    return r;
  }
  BranchKr search(inst);
  const auto family = search.run();
  return {finish(inst, family), std::move(search.stats)};
}

SolveResult solve_branch_b(const Instance& inst) {
  require_hyperplanes(inst, "branch-b");
  BranchB search(inst);
  const auto family = search.run();
  return {finish(inst, family), std::move(search.stats)};
}

namespace {

struct Candidate {
  std::size_t reds = SIZE_MAX;
  std::vector<std::size_t> objects;

  bool better_than(const Candidate& other) const {
    if (reds != other.reds) return reds < other.reds;
    if (objects.size() != other.objects.size()) return objects.size() < other.objects.size();
    return std::lexicographical_compare(objects.begin(), objects.end(), other.objects.begin(), other.objects.end());
  }
};

class SubfamilyEnumerator {
 public:
  explicit SubfamilyEnumerator(const Instance& inst) : h_(inst.objects.size()) {
    const IncidenceIndex idx = build_incidence(inst);
    const std::size_t n = inst.points.size();
    all_blues_.resize(n);
    for (const auto& p : inst.points) all_blues_[p.id] = p.blue();
    blue_masks_.assign(h_, Bits(n));
    red_masks_.assign(h_, Bits(n));
    for (std::size_t o = 0; o < h_; ++o) {
      for (auto id : idx.blues_of_object[o]) blue_masks_[o][id] = true;
      for (auto id : idx.reds_of_object[o]) red_masks_[o][id] = true;
    }
    suffix_blues_.assign(h_ + 1, Bits(n));
    for (std::size_t o = h_; o-- > 0;) suffix_blues_[o] = suffix_blues_[o + 1] | blue_masks_[o];
    covered_.assign(h_ + 1, Bits(n));
    reds_.assign(h_ + 1, Bits(n));
  }

  Candidate run() {
    visit(0);
    return best_;
  }

 private:
  void visit(std::size_t i) {
    if (!all_blues_.is_subset_of(covered_[i] | suffix_blues_[i])) return;
    const std::size_t reds = reds_[i].count();
    if (reds > best_.reds) return;
    if (i == h_) {
      Candidate c{reds, chosen_};
      if (c.better_than(best_)) best_ = std::move(c);
      return;
    }
    covered_[i + 1] = covered_[i] | blue_masks_[i];
    reds_[i + 1] = reds_[i] | red_masks_[i];
    chosen_.push_back(i);
    visit(i + 1);
    chosen_.pop_back();
    covered_[i + 1] = covered_[i];
    reds_[i + 1] = reds_[i];
    visit(i + 1);
  }

  std::size_t h_;
  Bits all_blues_;
  std::vector<Bits> blue_masks_, red_masks_, suffix_blues_, covered_, reds_;
  std::vector<std::size_t> chosen_;
  Candidate best_;
};

Solution optimum_to_solution(const Instance& inst, const Candidate& best) {
  if (best.reds == SIZE_MAX) return no_solution();
  Solution s = solution_from_family(inst, best.objects);
  s.optimum = static_cast<std::int64_t>(best.reds);
  if (inst.budget && *s.optimum > *inst.budget) {
    Solution no = no_solution();
    no.optimum = s.optimum;
    return no;
  }
  return s;
}

}  // namespace

Solution solve_enum_objects(const Instance& inst, const EnumOptions& opt) {
  if (static_cast<long long>(inst.objects.size()) > opt.max_objects) {
    throw CapacityError("enum-h: " + std::to_string(inst.objects.size()) + " objects exceed the cap of " +
                        std::to_string(opt.max_objects));
  }
  SubfamilyEnumerator e(inst);
  return optimum_to_solution(inst, e.run());
}

Solution solve_enum_reds(const Instance& inst, const EnumOptions& opt) {
  if (!inst.budget) throw UsageError("enum-r needs a budget");
  std::vector<std::size_t> reds;
  std::vector<std::size_t> red_index(inst.points.size(), SIZE_MAX);
  for (const auto& p : inst.points) {
    if (!p.red()) continue;
    red_index[p.id] = reds.size();
    reds.push_back(p.id);
  }
  if (static_cast<long long>(reds.size()) > opt.max_reds) {
    throw CapacityError("enum-r: " + std::to_string(reds.size()) + " red points exceed the cap of " +
                        std::to_string(opt.max_reds));
  }
  const IncidenceIndex idx = build_incidence(inst);
  const std::size_t n = inst.points.size();
  const std::size_t h = inst.objects.size();
  std::vector<std::uint32_t> red_mask(h, 0);
  std::vector<Bits> blue_mask(h, Bits(n));
  Bits all_blues(n);
  for (const auto& p : inst.points) all_blues[p.id] = p.blue();
  for (std::size_t o = 0; o < h; ++o) {
    for (auto id : idx.reds_of_object[o]) red_mask[o] |= std::uint32_t{1} << red_index[id];
    for (auto id : idx.blues_of_object[o]) blue_mask[o][id] = true;
  }

  auto covers_all = [&](const std::vector<std::size_t>& family, std::size_t skip) {
    Bits covered(n);
    for (auto o : family) {
      if (o != skip) covered |= blue_mask[o];
    }
    return all_blues.is_subset_of(covered);
  };

  const auto r = static_cast<unsigned>(reds.size());
  const auto max_size = static_cast<unsigned>(std::min<std::int64_t>(*inst.budget, r));
  for (unsigned size = 0; size <= max_size; ++size) {
    const std::uint64_t limit = std::uint64_t{1} << r;
    // Gosper's hack walks all masks with `size` bits in increasing order.
    std::uint64_t mask = size == 0 ? 0 : (std::uint64_t{1} << size) - 1;
    while (mask < limit || (size == 0 && mask == 0)) {
      std::vector<std::size_t> family;
      for (std::size_t o = 0; o < h; ++o) {
        if ((red_mask[o] & ~mask) == 0) family.push_back(o);
      }
      if (covers_all(family, SIZE_MAX)) {
        // Prune to a minimal cover, dropping objects in index order.
        for (std::size_t i = 0; i < family.size();) {
          if (covers_all(family, family[i])) {
            family.erase(family.begin() + static_cast<std::ptrdiff_t>(i));
          } else {
            ++i;
          }
        }
        Solution s = solution_from_family(inst, std::move(family));
        s.optimum = static_cast<std::int64_t>(s.red_count);
        return s;
      }
      if (size == 0) break;
      const std::uint64_t low = mask & (~mask + 1);
      const std::uint64_t ripple = mask + low;
      mask = (((ripple ^ mask) >> 2) / low) | ripple;
    }
  }
  return no_solution();
}

}  // namespace rbsc

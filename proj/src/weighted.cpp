#include <algorithm>
#include <map>

#include "rbsc/kernel.hpp"

namespace rbsc {

WeightedInstance reduce_to_weighted(const Instance& inst, KernelTrace* trace) {
  const IncidenceIndex idx = build_incidence(inst);

  // Reds with the same containing objects are covered together or not at all.
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> by_signature;
  std::vector<bool> keep(inst.points.size(), true);
  TraceStep step;
  step.rule = Rule::WeightedMerge;
  for (const auto& p : inst.points) {
    if (!p.red()) continue;
    const auto& sig = idx.objects_of_point[p.id];
    if (sig.empty()) {
      keep[p.id] = false;
      step.removed_points.push_back(p.id);
      continue;
    }
    auto& group = by_signature[sig];
    if (!group.empty()) {
      keep[p.id] = false;
      step.removed_points.push_back(p.id);
    }
    group.push_back(p.id);
  }

  WeightedInstance w;
  w.base.dimension = inst.dimension;
  w.base.budget = inst.budget;
  w.base.comments = inst.comments;
  std::vector<std::size_t> new_id(inst.points.size(), SIZE_MAX);
  for (const auto& p : inst.points) {
    if (!keep[p.id]) continue;
    new_id[p.id] = w.base.points.size();
    w.base.add_point(p.color, p.coords);
    if (p.red()) {
      const auto& group = by_signature.at(idx.objects_of_point[p.id]);
      w.weights.emplace_back(static_cast<unsigned long>(group.size()));
      w.members.push_back(group);
    } else {
      w.weights.emplace_back(0);
      w.members.push_back({p.id});
    }
  }
  for (const auto& obj : inst.objects) {
    CoverObject copy = obj;
    if (auto* a = std::get_if<AbstractSet>(&copy)) {
      std::vector<std::size_t> ids;
      for (auto id : a->member_ids) {
        if (new_id[id] != SIZE_MAX) ids.push_back(new_id[id]);
      }
      a->member_ids = std::move(ids);
    }
    w.base.objects.push_back(std::move(copy));
  }
  if (trace && !step.removed_points.empty()) trace->steps.push_back(std::move(step));
  return w;
}

}  // namespace rbsc

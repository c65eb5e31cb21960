#include "rbsc/kernel.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace rbsc {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Dedupe: return "DEDUPE";
    case Rule::R1: return "R1";
    case Rule::R2: return "R2";
    case Rule::R3: return "R3";
    case Rule::R4: return "R4";
    case Rule::R5: return "R5";
    case Rule::R6: return "R6";
    case Rule::WeightedMerge: return "WMERGE";
  }
  return "?";
}

namespace {

std::string join_ids(const std::vector<std::size_t>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ids[i]);
  }
  return out.empty() ? "-" : out;
}

}  // namespace

std::string TraceStep::render() const {
  std::ostringstream out;
  out << "step " << rule_name(rule);
  if (delta) out << " delta=" << *delta;
  out << " forced=" << join_ids(forced_objects) << " removed_pts=" << join_ids(removed_points)
      << " removed_objs=" << join_ids(removed_objects) << " kr-=" << budget_decrement;
  return out.str();
}

std::string KernelTrace::render() const {
  std::string out;
  for (const auto& s : steps) out += s.render() + '\n';
  return out;
}

ReductionState::ReductionState(const Instance& original)
    : original_(&original),
      incidence_(build_incidence(original)),
      points_alive_(original.points.size()),
      objects_alive_(original.objects.size()),
      budget_(original.budget) {
  points_alive_.set();
  objects_alive_.set();
}

std::size_t ReductionState::alive_blues() const {
  std::size_t n = 0;
  for (const auto& p : original_->points) n += (p.blue() && points_alive_[p.id]) ? 1 : 0;
  return n;
}

std::size_t ReductionState::alive_reds() const {
  std::size_t n = 0;
  for (const auto& p : original_->points) n += (p.red() && points_alive_[p.id]) ? 1 : 0;
  return n;
}

std::vector<std::size_t> ReductionState::alive_blues_of(std::size_t o) const {
  std::vector<std::size_t> out;
  for (auto id : incidence_.blues_of_object[o]) {
    if (points_alive_[id]) out.push_back(id);
  }
  return out;
}

std::vector<std::size_t> ReductionState::alive_reds_of(std::size_t o) const {
  std::vector<std::size_t> out;
  for (auto id : incidence_.reds_of_object[o]) {
    if (points_alive_[id]) out.push_back(id);
  }
  return out;
}

std::vector<std::size_t> ReductionState::alive_objects_of(std::size_t point) const {
  std::vector<std::size_t> out;
  for (auto o : incidence_.objects_of_point[point]) {
    if (objects_alive_[o]) out.push_back(o);
  }
  return out;
}

void ReductionState::apply(const TraceStep& step) {
  for (auto id : step.removed_points) points_alive_[id] = false;
  for (auto o : step.removed_objects) objects_alive_[o] = false;
  forced_.insert(forced_.end(), step.forced_objects.begin(), step.forced_objects.end());
  if (budget_) {
    *budget_ -= step.budget_decrement;
    if (*budget_ < 0) mark_infeasible("budget exhausted by forced objects");
  }
}

void ReductionState::mark_infeasible(std::string reason) {
  if (infeasible_) return;
  infeasible_ = true;
  infeasible_reason_ = std::move(reason);
}

bool ReductionState::check_coverable() {
  if (infeasible_) return false;
  for (const auto& p : original_->points) {
    if (!p.blue() || !points_alive_[p.id]) continue;
    if (alive_objects_of(p.id).empty()) {
      mark_infeasible("blue point " + std::to_string(p.id) + " lies in no remaining object");
      return false;
    }
  }
  return true;
}

ReductionState::Materialized ReductionState::materialize() const {
  Materialized m;
  m.instance.dimension = original_->dimension;
  m.instance.budget = budget_;
  std::vector<std::size_t> new_id(original_->points.size(), SIZE_MAX);
  for (const auto& p : original_->points) {
    if (!points_alive_[p.id]) continue;
    new_id[p.id] = m.instance.points.size();
    m.point_origin.push_back(p.id);
    m.instance.add_point(p.color, p.coords);
  }
  for (std::size_t o = 0; o < original_->objects.size(); ++o) {
    if (!objects_alive_[o]) continue;
    m.object_origin.push_back(o);
    CoverObject obj = original_->objects[o];
    if (auto* a = std::get_if<AbstractSet>(&obj)) {
      std::vector<std::size_t> ids;
      for (auto id : a->member_ids) {
        if (new_id[id] != SIZE_MAX) ids.push_back(new_id[id]);
      }
      a->member_ids = std::move(ids);
    }
    m.instance.objects.push_back(std::move(obj));
  }
  return m;
}

bool apply_dedupe(ReductionState& st, KernelTrace& trace) {
  std::map<std::vector<std::size_t>, std::size_t> seen;
  TraceStep step;
  step.rule = Rule::Dedupe;
  for (std::size_t o = 0; o < st.original().objects.size(); ++o) {
    if (!st.object_alive(o)) continue;
    std::vector<std::size_t> content = st.alive_blues_of(o);
    auto reds = st.alive_reds_of(o);
    content.insert(content.end(), reds.begin(), reds.end());
    std::sort(content.begin(), content.end());
    if (!seen.emplace(std::move(content), o).second) step.removed_objects.push_back(o);
  }
  if (step.removed_objects.empty()) return false;
  st.apply(step);
  trace.steps.push_back(std::move(step));
  return true;
}

bool apply_rule1(ReductionState& st, KernelTrace& trace) {
  bool changed = false;
  while (st.check_coverable()) {
    std::optional<std::size_t> forced;
    for (const auto& p : st.original().points) {
      if (!p.blue() || !st.point_alive(p.id)) continue;
      const auto objs = st.alive_objects_of(p.id);
      if (objs.size() == 1) {
        forced = objs.front();
        break;
      }
    }
    if (!forced) break;
    TraceStep step;
    step.rule = Rule::R1;
    step.forced_objects = {*forced};
    step.removed_objects = {*forced};
    const auto blues = st.alive_blues_of(*forced);
    const auto reds = st.alive_reds_of(*forced);
    std::merge(blues.begin(), blues.end(), reds.begin(), reds.end(), std::back_inserter(step.removed_points));
    step.budget_decrement = static_cast<std::int64_t>(reds.size());
    st.apply(step);
    trace.steps.push_back(std::move(step));
    changed = true;
    if (st.infeasible()) break;
  }
  return changed;
}

bool apply_rule2(ReductionState& st, KernelTrace& trace) {
  if (st.infeasible()) return false;
  TraceStep step;
  step.rule = Rule::R2;
  for (std::size_t o = 0; o < st.original().objects.size(); ++o) {
    if (st.object_alive(o) && st.alive_blues_of(o).empty()) step.removed_objects.push_back(o);
  }
  st.apply(step);
  // Reds outside every remaining object can never be covered.
  TraceStep sweep;
  sweep.rule = Rule::R2;
  for (const auto& p : st.original().points) {
    if (p.red() && st.point_alive(p.id) && st.alive_objects_of(p.id).empty()) sweep.removed_points.push_back(p.id);
  }
  st.apply(sweep);
  step.removed_points = std::move(sweep.removed_points);
  if (step.removed_objects.empty() && step.removed_points.empty()) return false;
  trace.steps.push_back(std::move(step));
  return true;
}

bool apply_rule3(ReductionState& st, KernelTrace& trace) {
  bool changed = false;
  for (std::size_t o = 0; o < st.original().objects.size() && !st.infeasible(); ++o) {
    if (!st.object_alive(o) || !st.alive_reds_of(o).empty()) continue;
    auto blues = st.alive_blues_of(o);
    if (blues.empty()) continue;
    TraceStep step;
    step.rule = Rule::R3;
    step.forced_objects = {o};
    step.removed_objects = {o};
    step.removed_points = std::move(blues);
    st.apply(step);
    trace.steps.push_back(std::move(step));
    changed = true;
  }
  return changed;
}

bool apply_rule4(ReductionState& st, KernelTrace& trace) {
  if (st.infeasible() || !st.budget()) return false;
  const auto k = static_cast<std::size_t>(*st.budget());
  TraceStep step;
  step.rule = Rule::R4;
  for (std::size_t o = 0; o < st.original().objects.size(); ++o) {
    if (st.object_alive(o) && st.alive_reds_of(o).size() > k) step.removed_objects.push_back(o);
  }
  if (step.removed_objects.empty()) return false;
  st.apply(step);
  trace.steps.push_back(std::move(step));
  st.check_coverable();
  return true;
}

mpz_class rule5_keep_count(int delta, std::int64_t budget) {
  // A solution avoiding every hyperplane through a whole class uses at most
  // k hyperplanes per free axis, each meeting at most keep(delta-1) members.
  mpz_class keep = 1;
  for (int i = 1; i <= delta; ++i) keep = mpz_class(budget) * i * keep + 1;
  return keep;
}

mpz_class rule6_threshold(int delta, std::size_t objects) {
  mpz_class sum = 0, power = 1;
  for (int i = 0; i <= delta; ++i) {
    sum += power;
    power *= static_cast<unsigned long>(objects);
  }
  return sum;
}

mpz_class rule6_keep_count(int delta, std::size_t objects) {
  if (delta == 0) return 1;
  return rule6_threshold(delta, objects) + 1;
}

namespace {

// Calls fn(subset) for every subset of {0..d-1} of the given size, ascending
// lexicographic order.
template <typename Fn>
void for_each_axis_subset(int d, int size, Fn&& fn) {
  std::vector<int> subset(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) subset[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(subset);
    int i = size - 1;
    while (i >= 0 && subset[static_cast<std::size_t>(i)] == d - size + i) --i;
    if (i < 0) return;
    ++subset[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < size; ++j) subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
  }
}

bool compress_classes(ReductionState& st, KernelTrace& trace, Rule rule, int delta, const mpz_class& keep) {
  const int d = st.original().dimension;
  if (delta < 0 || delta >= d) throw UsageError("compression delta must lie in 0..d-1");
  bool changed = false;
  for_each_axis_subset(d, d - delta, [&](const std::vector<int>& axes) {
    std::map<std::vector<Coord>, std::vector<std::size_t>> classes;
    for (const auto& p : st.original().points) {
      if (!p.blue() || !st.point_alive(p.id)) continue;
      std::vector<Coord> key;
      key.reserve(axes.size());
      for (int a : axes) key.push_back(p.coords[static_cast<std::size_t>(a)]);
      classes[std::move(key)].push_back(p.id);
    }
    TraceStep step;
    step.rule = rule;
    step.delta = delta;
    for (const auto& [key, ids] : classes) {
      if (mpz_class(static_cast<unsigned long>(ids.size())) <= keep) continue;
      const auto kept = keep.get_ui();
      step.removed_points.insert(step.removed_points.end(), ids.begin() + static_cast<std::ptrdiff_t>(kept), ids.end());
    }
    if (step.removed_points.empty()) return;
    std::sort(step.removed_points.begin(), step.removed_points.end());
    st.apply(step);
    trace.steps.push_back(std::move(step));
    changed = true;
  });
  return changed;
}

}  // namespace

bool apply_rule5(ReductionState& st, KernelTrace& trace, int delta) {
  if (st.infeasible()) return false;
  if (!st.budget()) throw UsageError("rule 5 needs a budget");
  return compress_classes(st, trace, Rule::R5, delta, rule5_keep_count(delta, *st.budget()));
}

bool apply_rule6(ReductionState& st, KernelTrace& trace, int delta) {
  if (st.infeasible()) return false;
  return compress_classes(st, trace, Rule::R6, delta, rule6_keep_count(delta, st.alive_objects()));
}

const char* param_name(KernelParam p) {
  switch (p) {
    case KernelParam::Kr: return "kr";
    case KernelParam::H: return "h";
    case KernelParam::R: return "r";
  }
  return "?";
}

KernelParam parse_param(const std::string& s) {
  if (s == "kr") return KernelParam::Kr;
  if (s == "h") return KernelParam::H;
  if (s == "r") return KernelParam::R;
  throw UsageError("unknown kernel parameter '" + s + "' (expected kr, h or r)");
}

std::string BoundLine::render() const {
  return "bound " + name + ' ' + actual.get_str() + ' ' + limit.get_str() + ' ' + (ok() ? "ok" : "FAIL");
}

bool BoundReport::ok() const {
  return std::all_of(lines.begin(), lines.end(), [](const BoundLine& l) { return l.ok(); });
}

std::string BoundReport::render() const {
  std::string out;
  for (const auto& l : lines) out += l.render() + '\n';
  return out;
}

BoundReport kernel_bounds(const Instance& kernel, KernelParam param) {
  const unsigned long d = static_cast<unsigned long>(kernel.dimension);
  const mpz_class blues = static_cast<unsigned long>(kernel.blue_count());
  const mpz_class reds = static_cast<unsigned long>(kernel.red_count());
  const mpz_class objects = static_cast<unsigned long>(kernel.object_count());
  mpz_class d_fact = 1;
  for (unsigned long i = 2; i <= d; ++i) d_fact *= i;
  auto power = [](const mpz_class& base, unsigned long e) {
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
  };

  BoundReport r;
  switch (param) {
    case KernelParam::Kr: {
      if (!kernel.budget) throw UsageError("kr bounds need a budget");
      const mpz_class k = static_cast<long>(*kernel.budget);
      r.lines.push_back({"blue", blues, d_fact * power(k, d)});
      r.lines.push_back({"hyperplanes", objects, d * d_fact * power(k, d)});
      r.lines.push_back({"red", reds, d * d_fact * power(k, d + 1)});
      break;
    }
    case KernelParam::H:
      r.lines.push_back({"blue", blues, power(objects, d)});
      break;
    case KernelParam::R:
      if (d == 2) {
        r.lines.push_back({"lines", objects, 2 * reds});
        r.lines.push_back({"blue", blues, power(2 * reds, 2)});
      } else {
        r.lines.push_back({"hyperplanes", objects, d * reds});
        r.lines.push_back({"blue", blues, power(d * reds, d)});
      }
      break;
  }
  return r;
}

Kernel kernelize(const Instance& inst, KernelParam param) {
  const Family fam = inst.family();
  if (fam != Family::Hyperplane && fam != Family::Empty) {
    throw UsageError(std::string("kernelization needs a hyperplane instance, got ") + family_name(fam));
  }
  if (param == KernelParam::Kr && !inst.budget) throw UsageError("kr kernelization needs a budget");

  ReductionState st(inst);
  KernelTrace trace;
  apply_dedupe(st, trace);
  const int d = inst.dimension;
  while (!st.infeasible()) {
    bool basic = true;
    while (basic && !st.infeasible()) {
      basic = false;
      basic |= apply_rule1(st, trace);
      basic |= apply_rule2(st, trace);
      basic |= apply_rule3(st, trace);
      if (param != KernelParam::R) basic |= apply_rule4(st, trace);
    }
    if (st.infeasible()) break;
    bool compressed = false;
    for (int delta = 0; delta < d && !compressed; ++delta) {
      if (param == KernelParam::R && delta > 0) break;
      if (param == KernelParam::H) {
        compressed = apply_rule6(st, trace, delta);
      } else if (param == KernelParam::Kr) {
        compressed = apply_rule5(st, trace, delta);
      } else {
        compressed = apply_rule6(st, trace, 0);
      }
    }
    if (!compressed) break;
  }
  st.check_coverable();

  Kernel k;
  auto m = st.materialize();
  k.instance = std::move(m.instance);
  k.point_origin = std::move(m.point_origin);
  k.object_origin = std::move(m.object_origin);
  k.forced_objects = st.forced_objects();
  k.trace = std::move(trace);
  k.infeasible = st.infeasible();
  k.infeasible_reason = st.infeasible_reason();
  if (!k.infeasible) k.bounds = kernel_bounds(k.instance, param);
  return k;
}

ReductionState replay(const Instance& original, const KernelTrace& trace) {
  ReductionState st(original);
  for (const auto& step : trace.steps) st.apply(step);
  st.check_coverable();
  return st;
}

Solution lift_solution(const Instance& original, const Kernel& kernel, const Solution& kernel_solution) {
  if (kernel_solution.verdict == Verdict::No) return no_solution();
  std::vector<std::size_t> chosen = kernel.forced_objects;
  for (auto o : kernel_solution.chosen) chosen.push_back(kernel.object_origin.at(o));
  return solution_from_family(original, std::move(chosen));
}

}  // namespace rbsc

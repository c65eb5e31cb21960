#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <gmpxx.h>

#include "rbsc/model.hpp"

namespace rbsc {

enum class Rule {
  Dedupe,  // content-equal objects collapse before any rule runs
  R1,      // unique coverer is forced
  R2,      // object without blue points is deleted
  R3,      // object without red points is taken for free
  R4,      // object with more than k_r reds is deleted
  R5,      // blue class compression, budget parameter
  R6,      // blue class compression, object-count parameter
  WeightedMerge,
};

const char* rule_name(Rule r);

struct TraceStep {
  Rule rule = Rule::R1;
  std::optional<int> delta;
  std::vector<std::size_t> forced_objects;   // original object indices
  std::vector<std::size_t> removed_points;   // original point ids
  std::vector<std::size_t> removed_objects;  // original object indices
  std::int64_t budget_decrement = 0;

  std::string render() const;
};

struct KernelTrace {
  std::vector<TraceStep> steps;

  std::string render() const;
  bool operator==(const KernelTrace& other) const { return render() == other.render(); }
};

// Live view of an instance under reduction. Points and objects are never
// renumbered while rules run; `materialize` produces a compact instance.
class ReductionState {
 public:
  explicit ReductionState(const Instance& original);
  ReductionState(Instance&&) = delete;

  const Instance& original() const { return *original_; }
  const IncidenceIndex& incidence() const { return incidence_; }

  bool point_alive(std::size_t id) const { return points_alive_[id]; }
  bool object_alive(std::size_t o) const { return objects_alive_[o]; }
  std::optional<std::int64_t> budget() const { return budget_; }
  bool infeasible() const { return infeasible_; }
  const std::string& infeasible_reason() const { return infeasible_reason_; }
  const std::vector<std::size_t>& forced_objects() const { return forced_; }

  std::size_t alive_blues() const;
  std::size_t alive_reds() const;
  std::size_t alive_objects() const { return objects_alive_.count(); }

  std::vector<std::size_t> alive_blues_of(std::size_t o) const;
  std::vector<std::size_t> alive_reds_of(std::size_t o) const;
  std::vector<std::size_t> alive_objects_of(std::size_t point) const;

  // Applies one recorded step; used by rules and by trace replay.
  void apply(const TraceStep& step);
  void mark_infeasible(std::string reason);

  // Flags infeasibility when some live blue has no live object.
  bool check_coverable();

  struct Materialized {
    Instance instance;
    std::vector<std::size_t> point_origin;   // kernel point index -> original id
    std::vector<std::size_t> object_origin;  // kernel object index -> original index
  };
  Materialized materialize() const;

 private:
  const Instance* original_;
  IncidenceIndex incidence_;
  boost::dynamic_bitset<> points_alive_;
  boost::dynamic_bitset<> objects_alive_;
  std::optional<std::int64_t> budget_;
  std::vector<std::size_t> forced_;
  bool infeasible_ = false;
  std::string infeasible_reason_;
};

// Each rule returns true when it changed the state. All rules run to their own
// fixpoint and stop early once the state is infeasible.
bool apply_dedupe(ReductionState& st, KernelTrace& trace);
bool apply_rule1(ReductionState& st, KernelTrace& trace);
bool apply_rule2(ReductionState& st, KernelTrace& trace);
bool apply_rule3(ReductionState& st, KernelTrace& trace);
bool apply_rule4(ReductionState& st, KernelTrace& trace);
bool apply_rule5(ReductionState& st, KernelTrace& trace, int delta);
bool apply_rule6(ReductionState& st, KernelTrace& trace, int delta);

// Blue-class keep counts for the compression rules. Delta 0 collapses
// coincident blues to one representative in both ladders.
mpz_class rule5_keep_count(int delta, std::int64_t budget);
mpz_class rule6_keep_count(int delta, std::size_t objects);

// A_delta = sum_{i=0}^{delta} h^i.
mpz_class rule6_threshold(int delta, std::size_t objects);

enum class KernelParam { Kr, H, R };

const char* param_name(KernelParam p);
KernelParam parse_param(const std::string& s);

struct BoundLine {
  std::string name;
  mpz_class actual;
  mpz_class limit;
  bool ok() const { return actual <= limit; }
  std::string render() const;
};

struct BoundReport {
  std::vector<BoundLine> lines;
  bool ok() const;
  std::string render() const;
};

BoundReport kernel_bounds(const Instance& kernel, KernelParam param);

struct Kernel {
  Instance instance;
  std::vector<std::size_t> point_origin;
  std::vector<std::size_t> object_origin;
  std::vector<std::size_t> forced_objects;  // original indices taken by R1/R3
  KernelTrace trace;
  BoundReport bounds;  // empty when infeasible
  bool infeasible = false;
  std::string infeasible_reason;
};

// Rules 1-4 (Rule 4 only with a budget; R mode skips it) to a joint fixpoint,
// then the compression ladder delta = 0..d-1, restarting from Rule 1 whenever a
// compression step changes the instance.
Kernel kernelize(const Instance& inst, KernelParam param);

// Re-applies a trace to the original instance.
ReductionState replay(const Instance& original, const KernelTrace& trace);

// Maps a solution of the kernel back to the original instance.
Solution lift_solution(const Instance& original, const Kernel& kernel, const Solution& kernel_solution);

struct WeightedInstance {
  Instance base;
  std::vector<mpz_class> weights;                 // per base point; 0 for blues
  std::vector<std::vector<std::size_t>> members;  // base point -> original point ids
};

// Collapses reds with identical sets of containing objects into one weighted
// representative. Reds in no object are dropped.
WeightedInstance reduce_to_weighted(const Instance& inst, KernelTrace* trace = nullptr);

}  // namespace rbsc

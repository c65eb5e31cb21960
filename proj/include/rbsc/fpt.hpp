#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rbsc/model.hpp"

namespace rbsc {

struct SearchStats {
  std::uint64_t nodes_expanded = 0;
  int max_depth = 0;
  bool fallback_used = false;
  // Children generated at each branching node; lets tests measure the
  // effective branching factor.
  std::vector<int> branch_widths;
};

struct HittingSetInstance {
  std::vector<std::size_t> universe;
  std::vector<std::vector<std::size_t>> sets;
  std::int64_t budget = 0;
};

// Empty list when valid; each entry names the offending set.
std::vector<std::string> validate_hitting_set(const HittingSetInstance& hs, int max_set_size);

struct HittingSetResult {
  std::optional<std::vector<std::size_t>> hitting_set;  // sorted
  SearchStats stats;
};

// Bounded search: take the smallest unhit set and branch on its elements.
HittingSetResult solve_hitting_set(const HittingSetInstance& hs);

struct HittingSetReduction {
  HittingSetInstance hs;
  // red id -> objects whose single red is that red
  std::vector<std::vector<std::size_t>> objects_of_red;

  // All objects whose red was selected.
  std::vector<std::size_t> lift(const std::vector<std::size_t>& hitting_set) const;
};

// Requires every object to contain exactly one red point.
HittingSetReduction to_hitting_set(const Instance& inst);

struct SolveResult {
  Solution solution;
  SearchStats stats;
};

// Decision solver parameterized by the red budget: branches on a blue point
// seen by a hyperplane with at least two reds, and hands the rest to the
// hitting set search once every hyperplane carries exactly one red.
SolveResult solve_branch_kr(const Instance& inst, bool kernelize_first = false);

// Decision solver parameterized by the number of blue points.
SolveResult solve_branch_b(const Instance& inst);

struct EnumOptions {
  int max_objects = 24;
  int max_reds = 24;
};

// Exhaustive over subfamilies; returns the optimum (fewest reds, then fewest
// objects, then lexicographically smallest index list).
Solution solve_enum_objects(const Instance& inst, const EnumOptions& opt = {});

// Exhaustive over red subsets of size <= budget, ascending size.
Solution solve_enum_reds(const Instance& inst, const EnumOptions& opt = {});

struct BranchConstant {
  int d = 2;
  long long linear = 1;        // d - 1
  long long discriminant = 5;  // (d - 1)^2 + 4
  double value = 0;            // (linear + sqrt(discriminant)) / 2
  std::string decimal;         // value with 4 decimals

  // value is a root of x^2 - (d-1)x - 1 exactly when discriminant == linear^2 + 4.
  bool certificate_holds() const { return discriminant == linear * linear + 4; }
  double residual() const { return value * value - static_cast<double>(linear) * value - 1.0; }
};

BranchConstant branch_constant(int d);

}  // namespace rbsc

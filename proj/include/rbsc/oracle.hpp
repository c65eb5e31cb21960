#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "rbsc/kernel.hpp"
#include "rbsc/model.hpp"
#include "rbsc/reductions.hpp"

namespace rbsc::oracle {

struct OracleBudget {
  std::uint64_t max_subsets = std::uint64_t{1} << 24;
  double timeout_s = 30.0;
};

struct Result {
  std::optional<std::int64_t> optimum;  // unset when no subfamily covers B
  std::vector<std::size_t> witness;
};

// Scans every subfamily. Ties: fewest reds, fewest objects, smallest index list.
Result brute_force_min_reds(const Instance& inst, const OracleBudget& budget = {});

struct WeightedResult {
  std::optional<mpz_class> optimum;
  std::vector<std::size_t> witness;
};

WeightedResult brute_force_weighted(const WeightedInstance& winst, const OracleBudget& budget = {});

// n_vertices <= 20.
int brute_force_vertex_cover(const Graph& g);

// At most 20 lines in total. Unset when the lines cannot stab every square.
std::optional<int> brute_force_square_stabbing(const StabbingInstance& s);

}  // namespace rbsc::oracle

#include "rbsc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>

#include <boost/dynamic_bitset.hpp>

namespace rbsc::oracle {

namespace {

using Bits = boost::dynamic_bitset<>;

// Membership rows straight from covers(); nothing shared with the solvers.
struct Matrix {
  std::vector<Bits> blue_rows;
  std::vector<Bits> red_rows;
  Bits blues;
};

Matrix build_matrix(const Instance& inst) {
  const std::size_t n = inst.points.size();
  Matrix m;
  m.blues.resize(n);
  for (const auto& p : inst.points) m.blues[p.id] = p.blue();
  for (const auto& obj : inst.objects) {
    Bits b(n), r(n);
    for (const auto& p : inst.points) {
      if (!covers(obj, p, inst.dimension)) continue;
      (p.blue() ? b : r)[p.id] = true;
    }
    m.blue_rows.push_back(std::move(b));
    m.red_rows.push_back(std::move(r));
  }
  return m;
}

std::vector<std::size_t> mask_to_list(std::uint64_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; mask; ++i, mask >>= 1) {
    if (mask & 1) out.push_back(i);
  }
  return out;
}

class Clock {
 public:
  explicit Clock(double limit) : limit_(limit), start_(std::chrono::steady_clock::now()) {}
  void check(std::uint64_t step) const {
    if ((step & 0xFFF) != 0) return;
    const std::chrono::duration<double> spent = std::chrono::steady_clock::now() - start_;
    if (spent.count() > limit_) throw CapacityError("oracle timed out");
  }

 private:
  double limit_;
  std::chrono::steady_clock::time_point start_;
};

std::uint64_t subset_count(std::size_t h, const OracleBudget& budget) {
  if (h >= 63 || (std::uint64_t{1} << h) > budget.max_subsets) {
    throw CapacityError("oracle: 2^" + std::to_string(h) + " subfamilies exceed the cap of " +
                        std::to_string(budget.max_subsets));
  }
  return std::uint64_t{1} << h;
}

// Enumerates feasible masks, keeping the one with the smallest
// (cost, popcount, index list).
template <typename Cost, typename CostFn>
std::optional<std::pair<Cost, std::uint64_t>> scan(const Matrix& m, std::uint64_t total, const Clock& clock,
                                                   CostFn cost_of) {
  const std::size_t n = m.blues.size();
  std::optional<std::pair<Cost, std::uint64_t>> best;
  Bits covered(n), reds(n);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    clock.check(mask);
    covered.reset();
    reds.reset();
    for (std::size_t o = 0; o < m.blue_rows.size(); ++o) {
      if ((mask >> o) & 1) {
        covered |= m.blue_rows[o];
        reds |= m.red_rows[o];
      }
    }
    if (!m.blues.is_subset_of(covered)) continue;
    Cost c = cost_of(reds);
    if (best) {
      if (best->first < c) continue;
      if (c == best->first) {
        const int a = std::popcount(mask), b = std::popcount(best->second);
        if (a > b) continue;
        if (a == b && !(mask_to_list(mask) < mask_to_list(best->second))) continue;
      }
    }
    best = std::make_pair(std::move(c), mask);
  }
  return best;
}

}  // namespace

Result brute_force_min_reds(const Instance& inst, const OracleBudget& budget) {
  const std::uint64_t total = subset_count(inst.objects.size(), budget);
  const Matrix m = build_matrix(inst);
  const Clock clock(budget.timeout_s);
  const auto best = scan<std::int64_t>(m, total, clock, [](const Bits& reds) {
    return static_cast<std::int64_t>(reds.count());
  });
  Result r;
  if (best) {
    r.optimum = best->first;
    r.witness = mask_to_list(best->second);
  }
  return r;
}

WeightedResult brute_force_weighted(const WeightedInstance& winst, const OracleBudget& budget) {
  const Instance& inst = winst.base;
  if (winst.weights.size() != inst.points.size()) throw UsageError("weights do not match the points");
  const std::uint64_t total = subset_count(inst.objects.size(), budget);
  const Matrix m = build_matrix(inst);
  const Clock clock(budget.timeout_s);
  const auto best = scan<mpz_class>(m, total, clock, [&](const Bits& reds) {
    mpz_class w = 0;
    for (auto i = reds.find_first(); i != Bits::npos; i = reds.find_next(i)) w += winst.weights[i];
    return w;
  });
  WeightedResult r;
  if (best) {
    r.optimum = best->first;
    r.witness = mask_to_list(best->second);
  }
  return r;
}

int brute_force_vertex_cover(const Graph& g) {
  if (g.n_vertices > 20) throw CapacityError("vertex cover oracle handles at most 20 vertices");
  int best = g.n_vertices;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << g.n_vertices); ++mask) {
    const int size = std::popcount(mask);
    if (size >= best) continue;
    const bool ok = std::all_of(g.edges.begin(), g.edges.end(), [&](const std::pair<int, int>& e) {
      return ((mask >> (e.first - 1)) & 1) || ((mask >> (e.second - 1)) & 1);
    });
    if (ok) best = size;
  }
  return best;
}

std::optional<int> brute_force_square_stabbing(const StabbingInstance& s) {
  const std::size_t lines = s.v_lines.size() + s.h_lines.size();
  if (lines > 20) throw CapacityError("stabbing oracle handles at most 20 lines");
  std::vector<std::uint32_t> stabbed_by(s.squares.size(), 0);
  for (std::size_t q = 0; q < s.squares.size(); ++q) {
    const Square& sq = s.squares[q];
    for (std::size_t i = 0; i < s.v_lines.size(); ++i) {
      if (sq.x <= s.v_lines[i] && s.v_lines[i] <= sq.x + Coord(1)) stabbed_by[q] |= std::uint32_t{1} << i;
    }
    for (std::size_t i = 0; i < s.h_lines.size(); ++i) {
      if (sq.y - Coord(1) <= s.h_lines[i] && s.h_lines[i] <= sq.y) {
        stabbed_by[q] |= std::uint32_t{1} << (s.v_lines.size() + i);
      }
    }
  }
  std::optional<int> best;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << lines); ++mask) {
    const int size = std::popcount(mask);
    if (best && size >= *best) continue;
    if (std::all_of(stabbed_by.begin(), stabbed_by.end(), [&](std::uint32_t m) { return (m & mask) != 0; })) best = size;
  }
  return best;
}

}  // namespace rbsc::oracle

#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <set>

#include "helpers.hpp"
#include "rbsc/fpt.hpp"
#include "rbsc/reductions.hpp"

using namespace rbsc;
using testing::oracle_yes;
using testing::parse;

namespace {

Instance triangle(std::int64_t k) {
  Graph g;
  g.n_vertices = 3;
  g.edges = {{1, 2}, {1, 3}, {2, 3}};
  return vc_to_lines(g, k).instance;
}

// Lines in the plane, each holding exactly one red. Some reds sit on the
// crossing of a vertical and a horizontal line and serve both.
Instance one_red_per_line(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto below = [&](int n) { return static_cast<int>(gen() % static_cast<std::uint64_t>(n)); };
  const int v = 1 + below(4), h = 1 + below(4);
  Instance inst;
  inst.dimension = 2;
  inst.budget = below(5);
  std::set<std::pair<int, int>> blues;
  const int nb = 1 + below(v * h);
  for (int i = 0; i < nb; ++i) blues.insert({below(v), below(h)});
  std::vector<bool> v_has(static_cast<std::size_t>(v)), h_has(static_cast<std::size_t>(h));
  for (int i = 0; i < v; ++i) {
    if (below(3) == 0) {
      const int j = below(h);
      if (!h_has[static_cast<std::size_t>(j)] && !blues.count({i, j})) {
        inst.add_point(Color::Red, {Coord(i), Coord(j)});
        v_has[static_cast<std::size_t>(i)] = h_has[static_cast<std::size_t>(j)] = true;
      }
    }
  }
  for (int i = 0; i < v; ++i) {
    if (!v_has[static_cast<std::size_t>(i)]) inst.add_point(Color::Red, {Coord(i), Coord(100 + i)});
  }
  for (int j = 0; j < h; ++j) {
    if (!h_has[static_cast<std::size_t>(j)]) inst.add_point(Color::Red, {Coord(100 + j), Coord(j)});
  }
  for (const auto& [x, y] : blues) inst.add_point(Color::Blue, {Coord(x), Coord(y)});
  for (int i = 0; i < v; ++i) inst.objects.emplace_back(Hyperplane{1, Coord(i)});
  for (int j = 0; j < h; ++j) inst.objects.emplace_back(Hyperplane{2, Coord(j)});
  return inst;
}

std::size_t exhaustive_min_hitting_set(const HittingSetInstance& hs) {
  const std::size_t u = hs.universe.size();
  std::size_t best = u + 1;
  for (std::uint32_t mask = 0; mask < (1u << u); ++mask) {
    const bool ok = std::all_of(hs.sets.begin(), hs.sets.end(), [&](const std::vector<std::size_t>& s) {
      return std::any_of(s.begin(), s.end(), [&](std::size_t e) {
        const auto pos = std::find(hs.universe.begin(), hs.universe.end(), e) - hs.universe.begin();
        return (mask >> pos) & 1;
      });
    });
    if (ok) best = std::min<std::size_t>(best, static_cast<std::size_t>(std::popcount(mask)));
  }
  return best;
}

}  // namespace

TEST_CASE("branch-kr base cases and the triangle") {
  const auto empty = solve_branch_kr(parse("dim 2\nbudget 0\npoint r 1 1\nhyperplane 1 1\n"));
  CHECK(empty.solution.verdict == Verdict::Yes);
  CHECK(empty.solution.red_count == 0);
  CHECK(empty.solution.chosen.empty());
  CHECK(empty.stats.nodes_expanded >= 1);

  const auto two = solve_branch_kr(triangle(2));
  CHECK(two.solution.verdict == Verdict::Yes);
  CHECK(check_family(triangle(2), two.solution.chosen).ok);
  CHECK(solve_branch_kr(triangle(1)).solution.verdict == Verdict::No);
  CHECK(solve_branch_kr(triangle(1), true).solution.verdict == Verdict::No);

  CHECK_THROWS_AS(solve_branch_kr(parse("dim 2\npoint b 1 1\nhyperplane 1 1\n")), UsageError);
  CHECK_THROWS_AS(solve_branch_kr(parse("dim 2\nbudget 1\npoint b 1 1\nquadrant 0 0\n")), UsageError);
}

TEST_CASE("branch-b base cases") {
  const auto one = solve_branch_b(parse("dim 2\nbudget 1\npoint b 1 0\npoint r 1 1\nhyperplane 1 1\n"));
  CHECK(one.solution.verdict == Verdict::Yes);
  CHECK(one.solution.red_count == 1);

  const auto none = solve_branch_b(parse("dim 2\nbudget 0\npoint r 1 1\nhyperplane 1 1\n"));
  CHECK(none.solution.verdict == Verdict::Yes);
  CHECK(none.solution.chosen.empty());

  const auto stranded = solve_branch_b(parse("dim 2\nbudget 3\npoint b 1 0\nhyperplane 1 2\n"));
  CHECK(stranded.solution.verdict == Verdict::No);
  CHECK(stranded.solution.chosen.empty());
}

TEST_CASE("branching solvers agree with the oracle and respect their depth bounds") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const RandomParams p = hyperplane_suite_params(2 * seed);
    const Instance inst = random_instance(2 * seed, p);
    const bool truth = oracle_yes(inst);
    const auto kr = solve_branch_kr(inst);
    const auto kk = solve_branch_kr(inst, true);
    const auto b = solve_branch_b(inst);
    CHECK((kr.solution.verdict == Verdict::Yes) == truth);
    CHECK((kk.solution.verdict == Verdict::Yes) == truth);
    CHECK((b.solution.verdict == Verdict::Yes) == truth);
    for (const auto* s : {&kr.solution, &kk.solution, &b.solution}) {
      if (s->verdict == Verdict::Yes) CHECK(check_family(inst, s->chosen).ok);
    }
    CHECK(kr.stats.max_depth <= *inst.budget);
    CHECK(b.stats.max_depth <= static_cast<int>(inst.blue_count()));
  }
}

TEST_CASE("branching factor stays within d in the plane") {
  double log_sum = 0;
  std::size_t count = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto r = solve_branch_kr(random_instance(2 * seed, hyperplane_suite_params(2 * seed)));
    for (int w : r.stats.branch_widths) {
      CHECK(w <= 2);
      log_sum += std::log(static_cast<double>(w));
      ++count;
    }
  }
  REQUIRE(count > 0);
  CHECK(std::exp(log_sum / static_cast<double>(count)) <= 2.0);
}

TEST_CASE("branch-kr falls back to hitting set once every line holds one red") {
  bool fallback_seen = false;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = one_red_per_line(seed);
    const auto r = solve_branch_kr(inst);
    fallback_seen |= r.stats.fallback_used;
    CHECK((r.solution.verdict == Verdict::Yes) == oracle_yes(inst));
  }
  CHECK(fallback_seen);
}

TEST_CASE("hitting set search") {
  HittingSetInstance hs{{0, 1, 2}, {{0, 1}, {1, 2}}, 1};
  CHECK(validate_hitting_set(hs, 2).empty());
  auto r = solve_hitting_set(hs);
  REQUIRE(r.hitting_set);
  CHECK(*r.hitting_set == std::vector<std::size_t>{1});

  HittingSetInstance disjoint{{0, 1}, {{0}, {1}}, 1};
  CHECK_FALSE(solve_hitting_set(disjoint).hitting_set);

  HittingSetInstance bad{{0, 1}, {{}, {0, 1, 5}}, -1};
  CHECK(validate_hitting_set(bad, 2).size() == 4);

  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 150; ++trial) {
    HittingSetInstance h;
    const std::size_t u = 1 + gen() % 12;
    for (std::size_t i = 0; i < u; ++i) h.universe.push_back(i);
    const std::size_t d = 1 + gen() % 3;
    const std::size_t m = gen() % 8;
    for (std::size_t s = 0; s < m; ++s) {
      std::set<std::size_t> set;
      const std::size_t size = 1 + gen() % d;
      while (set.size() < size && set.size() < u) set.insert(gen() % u);
      h.sets.emplace_back(set.begin(), set.end());
    }
    REQUIRE(validate_hitting_set(h, static_cast<int>(d)).empty());
    const std::size_t best = exhaustive_min_hitting_set(h);
    h.budget = static_cast<std::int64_t>(best);
    const auto found = solve_hitting_set(h);
    REQUIRE(found.hitting_set);
    CHECK(found.hitting_set->size() <= best);
    if (best > 0) {
      h.budget = static_cast<std::int64_t>(best) - 1;
      CHECK_FALSE(solve_hitting_set(h).hitting_set);
    }
  }
}

TEST_CASE("reduction to hitting set") {
  const Instance inst = parse("dim 2\nbudget 1\npoint b 1 1\npoint r 1 5\npoint r 5 1\npoint b 1 1\n"
                              "hyperplane 1 1\nhyperplane 2 1\n");
  const HittingSetReduction r = to_hitting_set(inst);
  CHECK(r.hs.universe == std::vector<std::size_t>{1, 2});
  REQUIRE(r.hs.sets.size() == 2);
  CHECK(r.hs.sets[0] == std::vector<std::size_t>{1, 2});
  CHECK(r.hs.sets[1] == r.hs.sets[0]);
  CHECK(r.lift({2}) == std::vector<std::size_t>{1});

  try {
    to_hitting_set(parse("dim 2\npoint b 1 1\npoint r 1 5\npoint r 1 6\nhyperplane 1 1\n"));
    FAIL("expected a usage error");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("object 0") != std::string::npos);
  }

  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const Instance lines = one_red_per_line(seed);
    const HittingSetReduction red = to_hitting_set(lines);
    const auto opt = oracle::brute_force_min_reds(lines);
    REQUIRE(opt.optimum);
    CHECK(exhaustive_min_hitting_set(red.hs) == static_cast<std::size_t>(*opt.optimum));
    const auto found = solve_hitting_set(red.hs);
    CHECK(found.hitting_set.has_value() == (*opt.optimum <= *lines.budget));
    if (found.hitting_set) {
      const auto c = check_family(lines, red.lift(*found.hitting_set));
      CHECK(c.ok);
    }
  }
}

TEST_CASE("subfamily enumeration") {
  const auto empty = solve_enum_objects(parse("dim 2\npoint r 1 1\n"));
  CHECK(empty.verdict == Verdict::Yes);
  CHECK(empty.optimum == std::optional<std::int64_t>(0));

  const auto stuck = solve_enum_objects(parse("dim 2\npoint b 1 1\n"));
  CHECK(stuck.verdict == Verdict::No);
  CHECK_FALSE(stuck.optimum);

  const Instance big = parse("dim 1\npoint b 0\nhyperplane 1 0\nhyperplane 1 1\nhyperplane 1 2\nhyperplane 1 3\n");
  CHECK_THROWS_AS(solve_enum_objects(big, {3, 3}), CapacityError);
  CHECK_NOTHROW(solve_enum_objects(big, {4, 4}));

  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RandomParams p = hyperplane_suite_params(seed);
    p.budget.reset();
    if (seed % 2 == 0) {
      p.family = Family::Abstract;
      p.object_count = std::min(p.object_count, 1 << (p.n_red + p.n_blue));
    }
    const Instance inst = random_instance(seed, p);
    const Solution s = solve_enum_objects(inst);
    const auto o = oracle::brute_force_min_reds(inst);
    CHECK(s.optimum == o.optimum);
    if (o.optimum) CHECK(s.chosen == o.witness);
  }
}

TEST_CASE("red subset enumeration") {
  const Instance no_reds = parse("dim 2\nbudget 0\npoint b 1 1\npoint b 2 2\nhyperplane 1 1\nhyperplane 2 2\n");
  CHECK(solve_enum_reds(no_reds).verdict == Verdict::Yes);
  const Instance half = parse("dim 2\nbudget 0\npoint b 1 1\npoint b 2 2\nhyperplane 1 1\n");
  CHECK(solve_enum_reds(half).verdict == Verdict::No);

  const Solution k3 = solve_enum_reds(triangle(3));
  CHECK(k3.verdict == Verdict::Yes);
  CHECK(k3.optimum == std::optional<std::int64_t>(2));
  CHECK(solve_enum_reds(triangle(1)).verdict == Verdict::No);

  CHECK_THROWS_AS(solve_enum_reds(parse("dim 2\npoint b 1 1\n")), UsageError);
  CHECK_THROWS_AS(solve_enum_reds(triangle(2), {24, 2}), CapacityError);

  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Instance inst = random_instance(seed, hyperplane_suite_params(seed));
    const Solution a = solve_enum_reds(inst);
    CHECK(a.verdict == solve_enum_objects(inst).verdict);
    if (a.verdict == Verdict::Yes) {
      CHECK(check_family(inst, a.chosen).ok);
      // Minimal: no chosen object can be dropped.
      for (std::size_t i = 0; i < a.chosen.size(); ++i) {
        auto fewer = a.chosen;
        fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
        CHECK(check_family(inst, fewer).uncovered_blue.has_value());
      }
    }
  }
}

TEST_CASE("branch constants") {
  const BranchConstant c2 = branch_constant(2);
  CHECK(c2.decimal == "1.6180");
  CHECK(c2.linear == 1);
  CHECK(c2.discriminant == 5);
  CHECK(branch_constant(3).decimal == "2.4142");
  for (int d = 2; d <= 6; ++d) {
    const BranchConstant c = branch_constant(d);
    CHECK(c.certificate_holds());
    CHECK(std::abs(c.residual()) < 1e-12);
  }
  CHECK_THROWS_AS(branch_constant(1), UsageError);
}

// One PASS/FAIL line per acceptance criterion; exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "rbsc/cli.hpp"
#include "rbsc/fpt.hpp"
#include "rbsc/instance_io.hpp"
#include "rbsc/kernel.hpp"
#include "rbsc/oracle.hpp"
#include "rbsc/quadrant.hpp"
#include "rbsc/reductions.hpp"
#include "rbsc/render.hpp"

using namespace rbsc;

namespace {

struct Report {
  bool ok = true;
  std::vector<std::string> notes;

  void fail(const std::string& why) {
    if (notes.size() < 8) notes.push_back(why);
    ok = false;
  }
  void note(const std::string& s) { notes.push_back(s); }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

bool oracle_yes(const Instance& inst) {
  const auto r = oracle::brute_force_min_reds(inst);
  return r.optimum && (!inst.budget || *r.optimum <= *inst.budget);
}

std::string verdict_str(Verdict v) { return v == Verdict::Yes ? "yes" : "no"; }

Instance suite_instance(std::uint64_t seed) { return random_instance(seed, hyperplane_suite_params(seed)); }

Report criterion1() {
  Report rep;
  const auto start = Clock::now();
  int yes = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Instance inst = suite_instance(seed);
    if (inst.points.size() > 16 || inst.objects.size() > 10 || *inst.budget > 5) {
      rep.fail("seed " + std::to_string(seed) + " outside the suite limits");
    }
    const bool truth = oracle_yes(inst);
    yes += truth;
    const std::vector<std::pair<std::string, Solution>> runs = {
        {"branch-kr", solve_branch_kr(inst).solution},
        {"branch-b", solve_branch_b(inst).solution},
        {"enum-h", solve_enum_objects(inst)},
        {"enum-r", solve_enum_reds(inst)},
    };
    for (const auto& [name, sol] : runs) {
      if ((sol.verdict == Verdict::Yes) != truth) {
        rep.fail("seed " + std::to_string(seed) + ": " + name + " says " + verdict_str(sol.verdict));
      }
      if (sol.verdict == Verdict::Yes && !check_family(inst, sol.chosen).ok) {
        rep.fail("seed " + std::to_string(seed) + ": " + name + " witness invalid");
      }
    }
  }
  const double secs = seconds_since(start);
  if (secs > 60) rep.fail("took " + std::to_string(secs) + " s");
  rep.note("200 instances, " + std::to_string(yes) + " yes, " + std::to_string(secs).substr(0, 5) + " s");
  return rep;
}

Report criterion2() {
  Report rep;
  int kr_checked = 0, h_checked = 0, r_checked = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Instance inst = suite_instance(seed);
    const bool truth = oracle_yes(inst);
    const std::string tag = "seed " + std::to_string(seed);
    for (auto param : {KernelParam::Kr, KernelParam::H, KernelParam::R}) {
      const Kernel k = kernelize(inst, param);
      const bool kernel_yes = !k.infeasible && oracle_yes(k.instance);
      if (kernel_yes != truth) rep.fail(tag + ": " + param_name(param) + " kernel changes the verdict");
      if (kernel_yes) {
        const Solution lifted = lift_solution(inst, k, solve_enum_objects(k.instance));
        if (!check_family(inst, lifted.chosen).ok) rep.fail(tag + ": lifted " + param_name(param) + " solution invalid");
      }
      // The bounds describe kernels of Yes instances; a No instance may exceed them.
      if (!truth || k.infeasible) continue;
      if (param == KernelParam::R && inst.dimension != 2) continue;
      (param == KernelParam::Kr ? kr_checked : param == KernelParam::H ? h_checked : r_checked)++;
      for (const auto& line : k.bounds.lines) {
        if (!line.ok()) rep.fail(tag + ": " + param_name(param) + " " + line.render());
      }
    }
  }
  rep.note("bounds checked on " + std::to_string(kr_checked) + " kr, " + std::to_string(h_checked) + " h, " +
           std::to_string(r_checked) + " r kernels");
  return rep;
}

Report criterion3() {
  Report rep;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomParams p = hyperplane_suite_params(seed + 500);
    p.budget.reset();
    const Instance inst = random_instance(seed + 500, p);
    const WeightedInstance w = reduce_to_weighted(inst);
    const auto plain = oracle::brute_force_min_reds(inst);
    const auto weighted = oracle::brute_force_weighted(w);
    const std::string tag = "seed " + std::to_string(seed + 500);
    const bool same = plain.optimum.has_value() == weighted.optimum.has_value() &&
                      (!plain.optimum || mpz_class(static_cast<long>(*plain.optimum)) == *weighted.optimum);
    if (!same) rep.fail(tag + ": weighted optimum differs");
    mpz_class limit = 0;
    for (int i = 1; i <= inst.dimension; ++i) {
      mpz_class c;
      mpz_bin_uiui(c.get_mpz_t(), inst.objects.size(), static_cast<unsigned long>(i));
      limit += c;
    }
    if (mpz_class(static_cast<unsigned long>(w.base.red_count())) > limit) rep.fail(tag + ": too many reds after merging");
  }
  rep.note("100 instances");
  return rep;
}

// Greedily drops points and objects while the DP and the oracle still disagree.
Instance shrink_quadrant_case(Instance inst) {
  auto disagrees = [](const Instance& i) {
    return solve_quadrants(i).optimum != oracle::brute_force_min_reds(i).optimum;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t o = 0; o < inst.objects.size(); ++o) {
      Instance t = inst;
      t.objects.erase(t.objects.begin() + static_cast<std::ptrdiff_t>(o));
      if (disagrees(t)) {
        inst = std::move(t);
        changed = true;
        break;
      }
    }
    for (std::size_t i = 0; !changed && i < inst.points.size(); ++i) {
      Instance t;
      t.dimension = 2;
      t.budget = inst.budget;
      t.objects = inst.objects;
      for (const auto& p : inst.points) {
        if (p.id != i) t.add_point(p.color, p.coords);
      }
      if (disagrees(t)) {
        inst = std::move(t);
        changed = true;
      }
    }
  }
  return inst;
}

RandomParams quadrant_params(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto below = [&](int n) { return static_cast<int>(gen() % static_cast<std::uint64_t>(n)); };
  RandomParams p;
  p.family = Family::Quadrant;
  p.coord_range = 10;
  p.allow_ties = seed % 3 == 0;
  const int max_n = p.allow_ties ? 14 : 10;
  p.n_blue = 1 + below(8);
  p.n_red = below(max_n - p.n_blue + 1);
  p.object_count = 1 + below(10);
  return p;
}

bool has_ties(const Instance& inst) {
  for (const auto& a : inst.points) {
    for (const auto& b : inst.points) {
      if (a.id < b.id && (a.coords[0] == b.coords[0] || a.coords[1] == b.coords[1])) return true;
    }
  }
  return false;
}

Report criterion4() {
  Report rep;
  const auto start = Clock::now();
  int tied = 0, mismatches = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const Instance inst = random_instance(seed, quadrant_params(seed));
    tied += has_ties(inst);
    const Solution dp = solve_quadrants(inst);
    const auto truth = oracle::brute_force_min_reds(inst);
    bool bad = dp.optimum != truth.optimum;
    if (!bad && dp.verdict == Verdict::Yes) {
      const auto c = check_family(inst, dp.chosen);
      bad = !c.ok || static_cast<std::int64_t>(c.red_count) != *dp.optimum;
    }
    if (!bad) continue;
    ++mismatches;
    const Instance small = shrink_quadrant_case(inst);
    const std::string path = "quadrant_repro_" + std::to_string(seed) + ".txt";
    std::ofstream(path) << serialize_instance(small);
    rep.fail("seed " + std::to_string(seed) + ": dp " + (dp.optimum ? std::to_string(*dp.optimum) : "infeasible") +
             " oracle " + (truth.optimum ? std::to_string(*truth.optimum) : "infeasible") + ", reproducer " + path);
  }
  const double secs = seconds_since(start);
  if (tied < 50) rep.fail("only " + std::to_string(tied) + " instances with repeated coordinates");
  if (secs > 120) rep.fail("took " + std::to_string(secs) + " s");
  rep.note("500 instances, " + std::to_string(tied) + " with repeated x or y, " + std::to_string(mismatches) +
           " mismatches, " + std::to_string(secs).substr(0, 5) + " s");
  return rep;
}

Report criterion5() {
  Report rep;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Graph g = random_graph(seed, 8);
    const int vc = oracle::brute_force_vertex_cover(g);
    const auto r = oracle::brute_force_min_reds(vc_to_lines(g, 0).instance);
    if (!r.optimum || *r.optimum != vc) rep.fail("seed " + std::to_string(seed) + ": cover " + std::to_string(vc));
  }
  rep.note("100 graphs");
  return rep;
}

Report criterion6() {
  Report rep;
  int checks = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const StabbingInstance s = random_stabbing(seed, 4, 4);
    const SkylineReduction red = stabbing_to_skylines(s);
    const std::string tag = "seed " + std::to_string(seed);
    const IncidenceIndex idx = build_incidence(red.instance);
    for (const auto& p : red.instance.points) {
      if (p.red() && idx.objects_of_point[p.id].size() != 1) rep.fail(tag + ": red " + std::to_string(p.id) + " not unique");
    }
    const auto lines = oracle::brute_force_square_stabbing(s);
    const auto sky = oracle::brute_force_min_reds(red.instance);
    const std::size_t total = s.v_lines.size() + s.h_lines.size();
    for (std::size_t k = 0; k <= total; ++k) {
      const bool a = lines && static_cast<std::size_t>(*lines) <= k;
      const bool b = sky.optimum && static_cast<std::size_t>(*sky.optimum) <= k;
      ++checks;
      if (a != b) rep.fail(tag + ": k=" + std::to_string(k) + " differs");
    }
  }
  rep.note("100 instances, " + std::to_string(checks) + " budgets");
  return rep;
}

Report criterion7() {
  Report rep;
  for (int d = 2; d <= 6; ++d) {
    const BranchConstant c = branch_constant(d);
    if (!c.certificate_holds() || std::abs(c.residual()) > 1e-12) rep.fail("d=" + std::to_string(d) + " residual");
  }
  if (branch_constant(2).decimal != "1.6180") rep.fail("c_2 renders as " + branch_constant(2).decimal);
  if (branch_constant(3).decimal != "2.4142") rep.fail("c_3 renders as " + branch_constant(3).decimal);
  rep.note("c_2 " + branch_constant(2).decimal + ", c_3 " + branch_constant(3).decimal);
  return rep;
}

std::string run_everything(std::uint64_t seed) {
  std::ostringstream out;
  const Instance inst = suite_instance(seed);
  out << serialize_instance(inst);
  const auto kr = solve_branch_kr(inst);
  out << render_solution(kr.solution, Format::Text, kr.stats.nodes_expanded);
  const auto kk = solve_branch_kr(inst, true);
  out << render_solution(kk.solution, Format::Text, kk.stats.nodes_expanded);
  const auto b = solve_branch_b(inst);
  out << render_solution(b.solution, Format::Text, b.stats.nodes_expanded);
  out << render_solution(solve_enum_objects(inst), Format::JsonLines);
  out << render_solution(solve_enum_reds(inst), Format::JsonLines);
  for (auto param : {KernelParam::Kr, KernelParam::H, KernelParam::R}) {
    const Kernel k = kernelize(inst, param);
    out << k.trace.render() << serialize_instance(k.instance) << k.bounds.render();
  }
  const WeightedInstance w = reduce_to_weighted(inst);
  out << serialize_instance(w.base);
  for (const auto& x : w.weights) out << x.get_str() << ' ';

  RandomParams qp = quadrant_params(seed);
  const Instance q = random_instance(seed, qp);
  out << serialize_instance(q) << render_solution(solve_quadrants(q), Format::Text);
  const auto orc = oracle::brute_force_min_reds(q);
  for (auto o : orc.witness) out << o << ' ';

  const Graph g = random_graph(seed, 8);
  out << serialize_graph(g) << serialize_instance(vc_to_lines(g, 2).instance);
  const StabbingInstance s = random_stabbing(seed, 4, 4);
  out << serialize_stabbing(s) << serialize_instance(stabbing_to_skylines(s).instance);

  std::istringstream in;
  std::ostringstream cli_out, cli_err;
  run_cli({"gen", "random", "--seed", std::to_string(seed)}, in, cli_out, cli_err);
  out << cli_out.str();
  return out.str();
}

Report criterion8() {
  Report rep;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    if (run_everything(seed) != run_everything(seed)) rep.fail("seed " + std::to_string(seed) + " differs between runs");
  }
  rep.note("40 seeds, every solver, kernelizer and generator");
  return rep;
}

Instance scaled(Instance inst, const Coord& factor) {
  for (auto& p : inst.points) {
    for (auto& c : p.coords) c = c * factor;
  }
  for (auto& o : inst.objects) {
    std::visit(
        [&](auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, Hyperplane>) v.offset = v.offset * factor;
          if constexpr (std::is_same_v<T, Quadrant>) {
            v.corner_x = v.corner_x * factor;
            v.corner_y = v.corner_y * factor;
          }
          if constexpr (std::is_same_v<T, SkylineH>) {
            v.x_max = v.x_max * factor;
            v.y_lo = v.y_lo * factor;
            v.y_hi = v.y_hi * factor;
          }
          if constexpr (std::is_same_v<T, SkylineV>) {
            v.x_lo = v.x_lo * factor;
            v.x_hi = v.x_hi * factor;
            v.y_max = v.y_max * factor;
          }
        },
        o);
  }
  return inst;
}

Report criterion9() {
  Report rep;
  const Family families[] = {Family::Hyperplane, Family::Quadrant, Family::Skyline, Family::Abstract};
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    RandomParams p;
    p.family = families[seed % 4];
    p.d = p.family == Family::Hyperplane || p.family == Family::Abstract ? 1 + static_cast<int>(seed / 4 % 4) : 2;
    p.coord_range = 9;
    p.n_red = static_cast<int>(seed % 5);
    p.n_blue = static_cast<int>(seed / 5 % 5);
    p.object_count = static_cast<int>(seed / 25 % 7);
    if (p.family == Family::Abstract) p.object_count = std::min(p.object_count, 1 << (p.n_red + p.n_blue));
    p.allow_ties = true;
    if (seed % 7 == 0) p.budget = static_cast<std::int64_t>(seed % 11);
    Instance inst = random_instance(seed, p);
    if (seed % 5 == 0) inst = scaled(std::move(inst), Coord(mpq_class(7, 3)));
    const std::string first = serialize_instance(inst);
    const std::string second = serialize_instance(parse_instance_text(first));
    if (first != second) rep.fail("seed " + std::to_string(seed) + " does not round-trip");
  }
  rep.note("1000 instances");
  return rep;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Report()>>> criteria = {
      {"oracle agreement on hyperplane instances", criterion1},
      {"kernel safety and size bounds", criterion2},
      {"weighted compression", criterion3},
      {"quadrant dynamic program against the oracle", criterion4},
      {"vertex cover reduction", criterion5},
      {"square stabbing reduction", criterion6},
      {"branching constants", criterion7},
      {"determinism", criterion8},
      {"format round-trip", criterion9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Report rep;
    try {
      rep = criteria[i].second();
    } catch (const std::exception& e) {
      rep.fail(std::string("exception: ") + e.what());
    }
    failed += !rep.ok;
    std::cout << "criterion " << i + 1 << " " << (rep.ok ? "PASS" : "FAIL") << " " << criteria[i].first;
    for (const auto& n : rep.notes) std::cout << "\n    " << n;
    std::cout << std::endl;
  }
  return failed;
}

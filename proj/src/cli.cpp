#include "rbsc/cli.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rbsc/fpt.hpp"
#include "rbsc/instance_io.hpp"
#include "rbsc/kernel.hpp"
#include "rbsc/oracle.hpp"
#include "rbsc/quadrant.hpp"
#include "rbsc/reductions.hpp"
#include "rbsc/render.hpp"

namespace rbsc {

namespace {

struct Common {
  std::string format = "text";
  std::optional<std::int64_t> budget;
  std::uint64_t cap_subsets = std::uint64_t{1} << 24;
  double timeout_s = 30.0;

  oracle::OracleBudget oracle_budget() const { return {cap_subsets, timeout_s}; }
  EnumOptions enum_options() const {
    const int bits = cap_subsets == 0 ? 0 : static_cast<int>(std::bit_width(cap_subsets)) - 1;
    return {bits, bits};
  }
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "text or json-lines")->check(CLI::IsMember({"text", "json", "json-lines"}));
  app->add_option("--budget", c.budget, "override the instance budget")->check(CLI::NonNegativeNumber);
  app->add_option("--cap-subsets", c.cap_subsets, "enumeration cap in subsets");
  app->add_option("--timeout-s", c.timeout_s, "oracle wall-clock limit")->check(CLI::PositiveNumber);
}

Instance load(const std::string& path, std::istream& in, const Common& c) {
  Instance inst = path == "-" ? parse_instance(in) : read_instance_file(path);
  if (c.budget) inst.budget = c.budget;
  const auto problems = validate(inst);
  if (!problems.empty()) throw UsageError(problems.front().entity + ": " + problems.front().message);
  return inst;
}

std::string read_text(const std::string& path, std::istream& in) {
  if (path == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

struct Outcome {
  Solution solution;
  std::optional<std::uint64_t> nodes;
};

std::string resolve_algo(const std::string& algo, const Instance& inst) {
  if (algo != "auto") return algo;
  if (inst.family() == Family::Quadrant) return "quadrant-dp";
  if (inst.family() == Family::Hyperplane && inst.budget) return "branch-kr";
  return "enum-h";
}

Outcome run_algo(const std::string& algo, const Instance& inst, const Common& c, bool kernelize_first) {
  if (algo == "branch-kr") {
    auto r = solve_branch_kr(inst, kernelize_first);
    return {std::move(r.solution), r.stats.nodes_expanded};
  }
  if (algo == "branch-b") {
    auto r = solve_branch_b(inst);
    return {std::move(r.solution), r.stats.nodes_expanded};
  }
  if (algo == "enum-h") return {solve_enum_objects(inst, c.enum_options()), std::nullopt};
  if (algo == "enum-r") return {solve_enum_reds(inst, c.enum_options()), std::nullopt};
  if (algo == "quadrant-dp") return {solve_quadrants(inst), std::nullopt};
  if (algo == "oracle") {
    const auto r = oracle::brute_force_min_reds(inst, c.oracle_budget());
    if (!r.optimum) return {no_solution(), std::nullopt};
    Solution s = solution_from_family(inst, r.witness);
    s.optimum = r.optimum;
    if (inst.budget && *r.optimum > *inst.budget) {
      s = no_solution();
      s.optimum = r.optimum;
    }
    return {std::move(s), std::nullopt};
  }
  throw UsageError("unknown algorithm '" + algo + "'");
}

int exit_for(const Solution& s) { return s.verdict == Verdict::Yes ? kExitYes : kExitNo; }

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::size_t> parse_family_file(const std::string& text) {
  std::vector<std::size_t> ids;
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> loose;
  while (std::getline(in, line)) {
    const auto t = split_tokens(line);
    if (t.empty() || t[0].front() == '#') continue;
    if (t[0] == "objects") {
      for (std::size_t i = 1; i < t.size(); ++i) loose.emplace_back(t[i]);
      break;
    }
    if (std::isdigit(static_cast<unsigned char>(t[0].front()))) {
      for (auto tok : t) loose.emplace_back(tok);
    }
  }
  for (const auto& tok : loose) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != tok.size() || tok.empty() || tok.front() == '-') throw UsageError("bad object index '" + tok + "'");
    ids.push_back(static_cast<std::size_t>(v));
  }
  return ids;
}

Family parse_family(const std::string& s) {
  if (s == "hyperplane") return Family::Hyperplane;
  if (s == "quadrant") return Family::Quadrant;
  if (s == "skyline") return Family::Skyline;
  if (s == "abstract") return Family::Abstract;
  throw UsageError("unknown family '" + s + "'");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact red-blue set cover toolkit", "rbsc"};
  app.require_subcommand(1);

  Common common;
  std::string input = "-";

  auto* solve = app.add_subcommand("solve", "solve an instance");
  std::string algo = "auto";
  bool kernelize_first = false;
  bool show_chain = false;
  solve->add_option("input", input, "instance file or -");
  solve->add_option("--algo", algo, "branch-kr, branch-b, enum-h, enum-r, quadrant-dp, oracle or auto");
  solve->add_flag("--kernelize", kernelize_first, "kernelize before branch-kr");
  solve->add_flag("--chain", show_chain, "print the left-bottom chain of a quadrant instance");
  add_common(solve, common);

  auto* kern = app.add_subcommand("kernelize", "apply the reduction rules");
  std::string param = "kr";
  std::string kernel_out, trace_out;
  kern->add_option("input", input, "instance file or -");
  kern->add_option("--param", param, "kr, h or r");
  kern->add_option("--out", kernel_out, "write the kernel instance here");
  kern->add_option("--trace-out", trace_out, "write the trace here as well");
  add_common(kern, common);

  auto* gen = app.add_subcommand("gen", "generate instances");
  gen->require_subcommand(1);
  std::string gen_out;
  std::uint64_t seed = 0;
  std::string graph_path, stab_path;
  std::int64_t gen_k = 0;
  auto* gen_vc = gen->add_subcommand("vc", "lines instance from a vertex cover instance");
  gen_vc->add_option("--graph", graph_path, "graph file or -")->required();
  gen_vc->add_option("--k", gen_k, "budget")->required()->check(CLI::NonNegativeNumber);
  auto* gen_stab = gen->add_subcommand("stab", "skyline instance from a square stabbing instance");
  gen_stab->add_option("--input", stab_path, "stabbing file or -")->required();
  auto* gen_random = gen->add_subcommand("random", "seeded random instance");
  RandomParams rp;
  std::string family = "hyperplane";
  std::optional<std::int64_t> gen_budget;
  gen_random->add_option("--d", rp.d);
  gen_random->add_option("--n-red", rp.n_red);
  gen_random->add_option("--n-blue", rp.n_blue);
  gen_random->add_option("--range", rp.coord_range);
  gen_random->add_option("--objects", rp.object_count);
  gen_random->add_option("--family", family);
  gen_random->add_option("--budget", gen_budget);
  gen_random->add_flag("--ties", rp.allow_ties);
  int max_vertices = 8, max_squares = 4, max_lines = 4;
  auto* gen_graph = gen->add_subcommand("graph", "seeded random graph");
  gen_graph->add_option("--max-vertices", max_vertices);
  auto* gen_stabbing = gen->add_subcommand("stabbing", "seeded random square stabbing instance");
  gen_stabbing->add_option("--max-squares", max_squares);
  gen_stabbing->add_option("--max-lines", max_lines);
  for (auto* sub : {gen_random, gen_graph, gen_stabbing}) sub->add_option("--seed", seed);
  for (auto* sub : {gen_vc, gen_stab, gen_random, gen_graph, gen_stabbing}) sub->add_option("--out", gen_out, "output path");
  gen->fallthrough();

  auto* verify = app.add_subcommand("verify", "check a claimed cover");
  std::string solution_path;
  verify->add_option("input", input, "instance file or -")->required();
  verify->add_option("solution", solution_path, "file with an 'objects' line or plain indices")->required();
  add_common(verify, common);

  auto* bench = app.add_subcommand("bench", "seeded agreement benchmark, CSV on stdout");
  int bench_seeds = 20;
  std::string bench_algos = "branch-kr,branch-b,enum-h,enum-r";
  bool bench_oracle = false;
  bench->add_option("--seed", seed, "first seed");
  bench->add_option("--seeds", bench_seeds, "number of seeds")->check(CLI::NonNegativeNumber);
  bench->add_option("--algos", bench_algos, "comma-separated algorithms");
  bench->add_flag("--oracle", bench_oracle, "add the brute-force oracle column");
  add_common(bench, common);

  auto* orc = app.add_subcommand("oracle", "brute-force optimum");
  orc->add_option("input", input, "instance file or -");
  orc->add_option("--graph", graph_path, "minimum vertex cover of a graph file instead");
  orc->add_option("--stab", stab_path, "minimum stabbing lines of a stabbing file instead");
  add_common(orc, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitYes : kExitUsage;
  }

  try {
    const Format fmt = parse_format(common.format);

    if (*solve) {
      const Instance inst = load(input, in, common);
      const std::string chosen = resolve_algo(algo, inst);
      const Outcome o = run_algo(chosen, inst, common, kernelize_first);
      if (show_chain) {
        if (inst.family() != Family::Quadrant && inst.family() != Family::Empty) {
          throw UsageError("--chain needs a quadrant instance");
        }
        out << render_chain(left_bottom_chain(inst)) << "\n";
      }
      out << render_solution(o.solution, fmt, o.nodes);
      return exit_for(o.solution);
    }

    if (*kern) {
      const Instance inst = load(input, in, common);
      const Kernel k = kernelize(inst, parse_param(param));
      const std::string trace = render_trace(k.trace, fmt);
      if (!trace_out.empty()) write_text(trace_out, trace, out);
      out << trace;
      if (k.infeasible) {
        out << render_solution(no_solution(), fmt);
        err << "infeasible: " << k.infeasible_reason << "\n";
        return kExitNo;
      }
      if (!kernel_out.empty()) write_text(kernel_out, serialize_instance(k.instance), out);
      out << render_bounds(k.bounds, fmt);
      return k.bounds.ok() ? kExitYes : kExitBound;
    }

    if (*gen) {
      std::string text;
      if (*gen_vc) {
        const Graph g = parse_graph_text(read_text(graph_path, in));
        text = serialize_instance(vc_to_lines(g, gen_k).instance);
      } else if (*gen_stab) {
        const StabbingInstance s = parse_stabbing_text(read_text(stab_path, in));
        text = serialize_instance(stabbing_to_skylines(s).instance);
      } else if (*gen_random) {
        rp.family = parse_family(family);
        rp.budget = gen_budget;
        text = serialize_instance(random_instance(seed, rp));
      } else if (*gen_graph) {
        text = serialize_graph(random_graph(seed, max_vertices));
      } else {
        text = serialize_stabbing(random_stabbing(seed, max_squares, max_lines));
      }
      write_text(gen_out, text, out);
      return kExitYes;
    }

    if (*verify) {
      const Instance inst = load(input, in, common);
      const auto family_ids = parse_family_file(read_text(solution_path, in));
      const CoverageCheck c = check_family(inst, family_ids);
      if (c.uncovered_blue) {
        out << "uncovered blue " << *c.uncovered_blue << "\n";
        return kExitNo;
      }
      if (c.over_budget) {
        out << "over budget reds " << c.red_count << " budget " << *inst.budget << "\n";
        return kExitNo;
      }
      out << "ok reds " << c.red_count << "\n";
      return kExitYes;
    }

    if (*bench) {
      auto algos = split_list(bench_algos);
      if (bench_oracle) algos.push_back("oracle");
      out << "seed,algo,verdict,reds,nodes,micros\n";
      int disagreements = 0;
      for (int i = 0; i < bench_seeds; ++i) {
        const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        Instance inst = random_instance(s, hyperplane_suite_params(s));
        if (common.budget) inst.budget = common.budget;
        std::optional<Verdict> first;
        for (const auto& a : algos) {
          const auto start = std::chrono::steady_clock::now();
          const Outcome o = run_algo(a, inst, common, false);
          const auto micros =
              std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
          const bool yes = o.solution.verdict == Verdict::Yes;
          out << s << "," << a << "," << (yes ? "yes" : "no") << "," << o.solution.red_count << ","
              << (o.nodes ? std::to_string(*o.nodes) : "") << "," << micros << "\n";
          if (yes && !check_family(inst, o.solution.chosen).ok) {
            err << "seed " << s << ": " << a << " returned an invalid witness\n";
            ++disagreements;
          }
          if (!first) {
            first = o.solution.verdict;
          } else if (*first != o.solution.verdict) {
            err << "seed " << s << ": " << a << " disagrees\n";
            ++disagreements;
          }
        }
      }
      return disagreements == 0 ? kExitYes : kExitNo;
    }

    if (*orc) {
      if (!graph_path.empty()) {
        out << "optimum " << oracle::brute_force_vertex_cover(parse_graph_text(read_text(graph_path, in))) << "\n";
        return kExitYes;
      }
      if (!stab_path.empty()) {
        const auto best = oracle::brute_force_square_stabbing(parse_stabbing_text(read_text(stab_path, in)));
        out << "optimum " << (best ? std::to_string(*best) : "infeasible") << "\n";
        return best ? kExitYes : kExitNo;
      }
      const Instance inst = load(input, in, common);
      const auto r = oracle::brute_force_min_reds(inst, common.oracle_budget());
      if (!r.optimum) {
        out << "optimum infeasible\n";
        return kExitNo;
      }
      Solution s = solution_from_family(inst, r.witness);
      s.optimum = r.optimum;
      if (fmt == Format::Text) {
        out << "optimum " << *r.optimum << "\n" << render_solution(s, fmt);
      } else {
        out << render_solution(s, fmt);
      }
      return inst.budget && *r.optimum > *inst.budget ? kExitNo : kExitYes;
    }
  } catch (const CapacityError& e) {
    err << "capacity: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace rbsc

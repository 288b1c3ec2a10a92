// selfnest: command-line pipelines over unordered rooted trees in bracket
// notation — isomorphism-class compression, self-nested approximations,
// checks, random generation, brute-force oracles, and the benchmark harness.

#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "selfnest/approx.hpp"
#include "selfnest/bench.hpp"
#include "selfnest/dag.hpp"
#include "selfnest/oracle.hpp"
#include "selfnest/random_tree.hpp"

namespace {

using namespace selfnest;

struct InputLine {
  std::string label;  // file name, empty for stdin
  std::size_t number = 0;
  std::string text;
};

std::string location(const InputLine& in) {
  std::string at = "line " + std::to_string(in.number);
  return in.label.empty() ? at : in.label + ": " + at;
}

bool blank(const std::string& s) {
  for (char c : s)
    if (c != ' ' && c != '\t' && c != '\r') return false;
  return true;
}

std::vector<InputLine> read_inputs(const std::vector<std::string>& files) {
  std::vector<InputLine> lines;
  auto drain = [&](std::istream& in, const std::string& label) {
    std::string line;
    for (std::size_t no = 1; std::getline(in, line); ++no)
      if (!blank(line)) lines.push_back({label, no, line});
  };
  if (files.empty()) {
    drain(std::cin, "");
  } else {
    for (const std::string& f : files) {
      if (f == "-") {
        drain(std::cin, "");
        continue;
      }
      std::ifstream in(f, std::ios::binary);
      if (!in) throw std::runtime_error("cannot open " + f);
      drain(in, f);
    }
  }
  return lines;
}

struct LineOutput {
  std::string out, err;
};

// Applies the handler to every input tree, optionally across threads, and
// replays stdout/stderr text in input order.
int run_per_line(const std::vector<std::string>& files, unsigned jobs,
                 const std::function<LineOutput(const Tree&)>& handle) {
  std::vector<InputLine> inputs = read_inputs(files);
  std::vector<LineOutput> results(inputs.size());
  std::vector<std::exception_ptr> errors(inputs.size());

  auto work = [&](std::size_t k) {
    try {
      Tree t = parse_tree(inputs[k].text);
      results[k] = handle(t);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };

  if (jobs <= 1 || inputs.size() <= 1) {
    for (std::size_t k = 0; k < inputs.size(); ++k) work(k);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t k = next.fetch_add(1); k < inputs.size(); k = next.fetch_add(1)) work(k);
    };
    std::vector<std::thread> pool;
    unsigned n = std::min<unsigned>(jobs, static_cast<unsigned>(inputs.size()));
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  for (std::size_t k = 0; k < inputs.size(); ++k) {
    if (!errors[k]) continue;
    try {
      std::rethrow_exception(errors[k]);
    } catch (const internal_assertion_error& e) {
      std::cerr << location(inputs[k]) << ": internal assertion: " << e.what() << '\n';
      return 2;
    } catch (const std::exception& e) {
      std::cerr << location(inputs[k]) << ": " << e.what() << '\n';
      return 1;
    }
  }
  for (const LineOutput& r : results) {
    std::cout << r.out;
    std::cerr << r.err;
  }
  return 0;
}

std::string render_dag(const DagReduction& d) {
  std::vector<std::uint64_t> m = class_node_counts(d);
  std::ostringstream out;
  out << "classes=" << d.class_count() << " root=" << d.root_class() << '\n';
  for (std::size_t i = 0; i < d.class_count(); ++i) {
    const DagClass& c = d.at(i);
    out << "class " << i << ": h=" << c.height << " n=" << m[i] << " edges=[";
    for (std::size_t e = 0; e < c.edges.size(); ++e)
      out << (e ? " " : "") << c.edges[e].first << 'x' << c.edges[e].second;
    out << "]\n";
  }
  return out.str();
}

std::string stats_line(std::uint64_t n_in, std::uint64_t n_out, std::uint64_t dist, const Rational& delta,
                       std::size_t optima = 0) {
  std::ostringstream err;
  err << "n_in=" << n_in << " n_out=" << n_out << " dist=" << dist << " delta=" << delta.to_string();
  if (optima > 1) err << " optima=" << optima;
  err << '\n';
  return err.str();
}

constexpr std::size_t kOracleNodeLimit = 12;

void require_oracle_sized(const Tree& t) {
  if (t.size() > kOracleNodeLimit)
    throw std::invalid_argument("oracle accepts at most " + std::to_string(kOracleNodeLimit) + " nodes, got " +
                                std::to_string(t.size()));
}

LineOutput approx_line(const Tree& t, bool embedded, bool oracle) {
  std::uint64_t n_in = t.size();
  if (!oracle) {
    ApproxResult r = embedded ? nest_embedded(t) : nest(t);
    return {serialize_canonical(r.tree) + "\n", stats_line(n_in, r.tree.size(), r.distance, r.delta)};
  }
  require_oracle_sized(t);
  if (!embedded) {
    Tree best = brute_nest(t, sn_node_count(nest_scalar(compute_profile(t)).profile));
    std::uint64_t n_out = best.size();
    return {serialize_canonical(best) + "\n",
            stats_line(n_in, n_out, n_out - n_in, delta_nest_from_counts(n_in, n_out))};
  }
  std::vector<Tree> all = brute_nest_embedded_all(t);
  std::uint64_t n_out = all.front().size();
  return {serialize_canonical(all.front()) + "\n",
          stats_line(n_in, n_out, n_in - n_out, delta_nest_embedded_from_counts(n_in, n_out), all.size())};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"self-nested approximation toolkit for unordered rooted trees"};
  app.require_subcommand(1);

  std::vector<std::string> files;
  unsigned jobs = 1;
  bool embedded = false, oracle = false, dot = false;

  auto add_files = [&](CLI::App* cmd) {
    cmd->add_option("files", files, "input files with one bracket tree per line (default: stdin)");
  };

  CLI::App* profile_cmd = app.add_subcommand("profile", "print the height profile of each tree");
  add_files(profile_cmd);

  CLI::App* dag_cmd = app.add_subcommand("dag", "compress each tree to its isomorphism-class graph");
  dag_cmd->add_flag("--dot", dot, "emit Graphviz DOT instead of the plain listing");
  add_files(dag_cmd);

  CLI::App* nest_cmd = app.add_subcommand("nest", "smallest self-nested tree the input embeds into");
  nest_cmd->add_flag("--embedded", embedded, "shrink inside the input instead of growing around it");
  nest_cmd->add_flag("--oracle", oracle, "exhaustive search instead of the fast transform (small trees)");
  nest_cmd->add_option("--jobs", jobs, "process input lines in parallel");
  add_files(nest_cmd);

  CLI::App* nest_embedded_cmd = app.add_subcommand("nest-embedded", "largest self-nested tree inside the input");
  nest_embedded_cmd->add_flag("--oracle", oracle, "exhaustive search instead of the fast transform (small trees)");
  nest_embedded_cmd->add_option("--jobs", jobs, "process input lines in parallel");
  add_files(nest_embedded_cmd);

  CLI::App* check_cmd = app.add_subcommand("check-selfnested", "print true/false per input tree");
  check_cmd->add_option("--jobs", jobs, "process input lines in parallel");
  add_files(check_cmd);

  std::size_t gen_nodes = 1;
  std::uint64_t gen_seed = 0;
  std::size_t gen_count = 1;
  CLI::App* random_cmd = app.add_subcommand("random", "generate seeded random trees");
  random_cmd->add_option("--nodes", gen_nodes, "nodes per tree")->required();
  random_cmd->add_option("--seed", gen_seed, "master seed; tree k uses a seed derived from (seed, k)");
  random_cmd->add_option("--count", gen_count, "how many trees");

  std::vector<int> sizes = default_bench_sizes();
  int trials = kDefaultBenchTrials;
  std::uint64_t bench_seed = kDefaultBenchSeed;
  std::string csv_path, svg_path;
  unsigned bench_jobs = 0;
  CLI::App* bench_cmd = app.add_subcommand("bench", "random-tree benchmark of both approximations");
  bench_cmd->add_option("--sizes", sizes, "tree sizes to sample");
  bench_cmd->add_option("--trials", trials, "trials per size");
  bench_cmd->add_option("--seed", bench_seed, "master seed");
  bench_cmd->add_option("--csv", csv_path, "write records here instead of stdout");
  bench_cmd->add_option("--svg", svg_path, "also write the three-panel plot here");
  bench_cmd->add_option("--jobs", bench_jobs, "worker threads (0 = hardware)");

  std::string oracle_kind;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "exhaustive-search reference answers");
  oracle_cmd->add_option("kind", oracle_kind, "nest or nest-embedded")
      ->required()
      ->check(CLI::IsMember({"nest", "nest-embedded"}));
  oracle_cmd->add_option("--jobs", jobs, "process input lines in parallel");
  add_files(oracle_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (profile_cmd->parsed())
      return run_per_line(files, 1, [](const Tree& t) {
        return LineOutput{render_profile(compute_profile(t)), ""};
      });

    if (dag_cmd->parsed())
      return run_per_line(files, 1, [&](const Tree& t) {
        DagReduction d = reduce(t);
        return LineOutput{dot ? to_dot(d) : render_dag(d), ""};
      });

    if (nest_cmd->parsed())
      return run_per_line(files, jobs, [&](const Tree& t) { return approx_line(t, embedded, oracle); });

    if (nest_embedded_cmd->parsed())
      return run_per_line(files, jobs, [&](const Tree& t) { return approx_line(t, true, oracle); });

    if (check_cmd->parsed())
      return run_per_line(files, jobs, [](const Tree& t) {
        return LineOutput{is_linear(reduce(t)) ? "true\n" : "false\n", ""};
      });

    if (random_cmd->parsed()) {
      for (std::size_t k = 0; k < gen_count; ++k)
        std::cout << serialize_canonical(random_tree({gen_nodes, derive_seed(gen_seed, k)})) << '\n';
      return 0;
    }

    if (bench_cmd->parsed()) {
      std::vector<BenchRecord> records = run_benchmark(sizes, trials, bench_seed, bench_jobs);
      std::vector<BenchRecord> bad = find_violations(records);
      if (csv_path.empty())
        std::cout << bench_csv(records);
      else
        write_bench_csv(records, csv_path);
      if (!svg_path.empty()) write_bench_svg(records, svg_path);
      if (!bad.empty()) {
        std::string vpath = (csv_path.empty() ? std::string("bench") : csv_path) + ".violations.txt";
        write_violations(bad, vpath);
        std::cerr << "violations file: " << vpath << '\n';
      }
      std::cerr << "records=" << records.size() << " violations=" << bad.size() << '\n';
      return 0;
    }

    if (oracle_cmd->parsed())
      return run_per_line(files, jobs,
                          [&](const Tree& t) { return approx_line(t, oracle_kind == "nest-embedded", true); });
  } catch (const internal_assertion_error& e) {
    std::cerr << "internal assertion: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 0;
}

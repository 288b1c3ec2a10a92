#pragma once
// Benchmark harness: seeded random-tree corpus, approximation sizes and
// transform runtimes across tree sizes, with CSV and standalone-SVG output.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "selfnest/approx.hpp"
#include "selfnest/random_tree.hpp"

namespace selfnest {

struct BenchRecord {
  int size = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t n_tau = 0;
  std::uint64_t n_nest = 0;
  std::uint64_t n_nest_embedded = 0;
  std::uint64_t d_nest = 0;           // n_nest - n_tau
  std::uint64_t d_nest_embedded = 0;  // n_tau - n_nest_embedded
  Rational delta_nest;
  Rational delta_nest_embedded;
  std::uint64_t t_nest_ns = 0;
  std::uint64_t t_nest_embedded_ns = 0;
  // Instrumentation beyond the CSV columns: operation counters and the
  // shape data their bounds are stated against.
  std::uint64_t op_profile = 0;
  std::uint64_t op_nest = 0;
  std::uint64_t op_nest_embedded = 0;
  int height = 0;
  int outdeg = 0;
};

inline std::vector<int> default_bench_sizes() { return {10, 20, 30, 40, 50, 75, 100, 150, 200, 250}; }

constexpr int kDefaultBenchTrials = 300;
constexpr std::uint64_t kDefaultBenchSeed = 42;

// Fixed operation-count bounds, checked over every benchmark corpus:
// profile construction does at most c1 * nodes * max(outdegree, 1) counted
// steps (it is exactly 2n - 1), the growing transform at most
// c2 * height^2 * max(outdegree, 1), and the shrinking transform at most
// c3 * height^2 (cells plus at most one carry per cell above the base row).
constexpr std::uint64_t kOpBoundC1 = 2;
constexpr std::uint64_t kOpBoundC2 = 2;
constexpr std::uint64_t kOpBoundC3 = 1;

inline bool op_bounds_hold(const BenchRecord& r) {
  std::uint64_t d = r.outdeg > 0 ? static_cast<std::uint64_t>(r.outdeg) : 1;
  std::uint64_t h2 = static_cast<std::uint64_t>(r.height) * static_cast<std::uint64_t>(r.height);
  return r.op_profile <= kOpBoundC1 * r.n_tau * d && r.op_nest <= kOpBoundC2 * h2 * d &&
         r.op_nest_embedded <= kOpBoundC3 * h2;
}

// Runs trials_per_size random trees at every requested size.  Each trial's
// seed depends only on (master_seed, flat trial index), so the corpus and
// every non-timing column are reproducible regardless of scheduling.  The
// timed region covers one profile-to-profile transform plus the node-count
// evaluation; profile construction is measured separately into op_profile.
inline std::vector<BenchRecord> run_benchmark(const std::vector<int>& sizes, int trials_per_size,
                                              std::uint64_t master_seed, unsigned jobs = 0) {
  if (sizes.empty()) throw std::invalid_argument("sizes must be non-empty");
  if (trials_per_size < 1) throw std::invalid_argument("trials_per_size must be >= 1");
  for (int s : sizes)
    if (s < 1) throw std::invalid_argument("tree size must be >= 1");

  const std::size_t total = sizes.size() * static_cast<std::size_t>(trials_per_size);
  std::vector<BenchRecord> records(total);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t k = next.fetch_add(1); k < total; k = next.fetch_add(1)) {
      const std::size_t size_index = k / static_cast<std::size_t>(trials_per_size);
      BenchRecord& r = records[k];
      r.size = sizes[size_index];
      r.trial = static_cast<int>(k % static_cast<std::size_t>(trials_per_size));
      r.seed = derive_seed(master_seed, static_cast<std::uint64_t>(k));

      Tree t = random_tree({static_cast<std::size_t>(r.size), r.seed});
      HeightProfile p = compute_profile(t);
      r.n_tau = t.size();
      r.height = t.height();
      r.outdeg = outdegree(t);
      r.op_profile = p.ops();

      using clock = std::chrono::steady_clock;
      auto t0 = clock::now();
      ScalarizedResult up = nest_scalar(p);
      std::uint64_t n_up = sn_node_count(up.profile);
      auto t1 = clock::now();
      ScalarizedResult down = nest_embedded_scalar(p);
      std::uint64_t n_down = sn_node_count(down.profile);
      auto t2 = clock::now();

      r.n_nest = n_up;
      r.n_nest_embedded = n_down;
      r.d_nest = n_up - r.n_tau;
      r.d_nest_embedded = r.n_tau - n_down;
      r.delta_nest = delta_nest_from_counts(r.n_tau, n_up);
      r.delta_nest_embedded = delta_nest_embedded_from_counts(r.n_tau, n_down);
      r.t_nest_ns = static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
      r.t_nest_embedded_ns =
          static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(t2 - t1).count());
      r.op_nest = up.op_count;
      r.op_nest_embedded = down.op_count;
    }
  };

  unsigned n_threads = jobs != 0 ? jobs : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, total));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  std::sort(records.begin(), records.end(),
            [](const BenchRecord& a, const BenchRecord& b) { return std::tie(a.size, a.trial) < std::tie(b.size, b.trial); });
  return records;
}

inline const char* bench_csv_header() {
  return "size,trial,seed,n_tau,n_nest,n_nest_embedded,d_nest,d_nest_embedded,"
         "delta_nest,delta_nest_embedded,t_nest_ns,t_nest_embedded_ns";
}

inline std::string bench_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << bench_csv_header() << '\n';
  for (const BenchRecord& r : records) {
    out << r.size << ',' << r.trial << ',' << r.seed << ',' << r.n_tau << ',' << r.n_nest << ','
        << r.n_nest_embedded << ',' << r.d_nest << ',' << r.d_nest_embedded << ',' << r.delta_nest.to_string()
        << ',' << r.delta_nest_embedded.to_string() << ',' << r.t_nest_ns << ',' << r.t_nest_embedded_ns << '\n';
  }
  return out.str();
}

inline void write_bench_csv(const std::vector<BenchRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << bench_csv(records);
}

// Trials where the insertion approximation came out strictly closer than the
// deletion approximation.  Empirically this never happens; any hit is worth a
// close look, so the report regenerates the offending tree verbatim.
inline std::vector<BenchRecord> find_violations(const std::vector<BenchRecord>& records) {
  std::vector<BenchRecord> out;
  for (const BenchRecord& r : records)
    if (r.d_nest < r.d_nest_embedded) out.push_back(r);
  return out;
}

inline std::string violations_report(const std::vector<BenchRecord>& violations) {
  std::ostringstream out;
  for (const BenchRecord& r : violations) {
    Tree t = random_tree({static_cast<std::size_t>(r.size), r.seed});
    out << "size=" << r.size << " trial=" << r.trial << " seed=" << r.seed << " d_nest=" << r.d_nest
        << " d_nest_embedded=" << r.d_nest_embedded << " tree=" << serialize_canonical(t) << '\n';
  }
  return out.str();
}

inline void write_violations(const std::vector<BenchRecord>& violations, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << violations_report(violations);
}

namespace bench_detail {

// Nearest-rank order statistic on a sorted sample: smallest element whose
// rank covers fraction num/den of the sample.  Integer-exact.
inline double quantile_sorted(const std::vector<double>& sorted, int num, int den) {
  std::size_t n = sorted.size();
  std::size_t rank = (n * static_cast<std::size_t>(num) + static_cast<std::size_t>(den) - 1) /
                     static_cast<std::size_t>(den);
  if (rank == 0) rank = 1;
  return sorted[rank - 1];
}

struct SeriesStats {
  std::vector<double> x, q1, med, q3, mean;
};

template <typename Get>
SeriesStats aggregate(const std::vector<BenchRecord>& records, const std::vector<int>& sizes, Get get) {
  SeriesStats s;
  for (int size : sizes) {
    std::vector<double> vals;
    for (const BenchRecord& r : records)
      if (r.size == size) vals.push_back(get(r));
    if (vals.empty()) continue;
    std::sort(vals.begin(), vals.end());
    double sum = 0;
    for (double v : vals) sum += v;
    s.x.push_back(static_cast<double>(size));
    s.q1.push_back(quantile_sorted(vals, 1, 4));
    s.med.push_back(quantile_sorted(vals, 1, 2));
    s.q3.push_back(quantile_sorted(vals, 3, 4));
    s.mean.push_back(sum / static_cast<double>(vals.size()));
  }
  return s;
}

struct Panel {
  std::string title, y_label;
  struct Curve {
    std::string label, color;
    SeriesStats stats;
  };
  std::vector<Curve> curves;
};

inline std::string fmt(double v) {
  std::ostringstream o;
  o.precision(6);
  o << v;
  return o.str();
}

inline std::string render_panels(const std::vector<Panel>& panels) {
  const double pw = 360, ph = 300, ml = 58, mr = 14, mt = 34, mb = 40;
  const double width = pw * static_cast<double>(panels.size()), height = ph;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

  for (std::size_t pi = 0; pi < panels.size(); ++pi) {
    const Panel& panel = panels[pi];
    const double ox = static_cast<double>(pi) * pw;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const Panel::Curve& c : panel.curves)
      for (std::size_t i = 0; i < c.stats.x.size(); ++i) {
        xmin = std::min(xmin, c.stats.x[i]);
        xmax = std::max(xmax, c.stats.x[i]);
        ymin = std::min({ymin, c.stats.q1[i], c.stats.mean[i]});
        ymax = std::max({ymax, c.stats.q3[i], c.stats.mean[i]});
      }
    ymin = std::min(ymin, 0.0);
    if (xmax <= xmin) xmax = xmin + 1;
    if (ymax <= ymin) ymax = ymin + 1;
    ymax += (ymax - ymin) * 0.08;
    auto X = [&](double v) { return ox + ml + (v - xmin) / (xmax - xmin) * (pw - ml - mr); };
    auto Y = [&](double v) { return mt + (1.0 - (v - ymin) / (ymax - ymin)) * (ph - mt - mb); };

    svg << "<text x=\"" << ox + pw / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\">" << panel.title
        << "</text>\n";
    svg << "<line x1=\"" << X(xmin) << "\" y1=\"" << Y(ymin) << "\" x2=\"" << X(xmax) << "\" y2=\"" << Y(ymin)
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << X(xmin) << "\" y1=\"" << Y(ymin) << "\" x2=\"" << X(xmin) << "\" y2=\"" << Y(ymax)
        << "\" stroke=\"black\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
      double v = ymin + (ymax - ymin) * tick / 4.0;
      svg << "<line x1=\"" << X(xmin) - 3 << "\" y1=\"" << Y(v) << "\" x2=\"" << X(xmin) << "\" y2=\"" << Y(v)
          << "\" stroke=\"black\"/><text x=\"" << X(xmin) - 6 << "\" y=\"" << Y(v) + 4
          << "\" text-anchor=\"end\">" << fmt(v) << "</text>\n";
    }
    if (!panel.curves.empty())
      for (double xv : panel.curves.front().stats.x)
        svg << "<line x1=\"" << X(xv) << "\" y1=\"" << Y(ymin) << "\" x2=\"" << X(xv) << "\" y2=\"" << Y(ymin) + 3
            << "\" stroke=\"black\"/><text x=\"" << X(xv) << "\" y=\"" << Y(ymin) + 15
            << "\" text-anchor=\"middle\">" << fmt(xv) << "</text>\n";
    svg << "<text x=\"" << ox + pw / 2 << "\" y=\"" << ph - 6 << "\" text-anchor=\"middle\">tree size</text>\n";
    svg << "<text x=\"" << ox + 14 << "\" y=\"" << mt + (ph - mt - mb) / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 " << ox + 14 << ' ' << mt + (ph - mt - mb) / 2
        << ")\">" << panel.y_label << "</text>\n";

    double ly = mt + 8;
    for (const Panel::Curve& c : panel.curves) {
      if (c.stats.x.empty()) continue;
      // Interquartile band.
      svg << "<polygon fill=\"" << c.color << "\" fill-opacity=\"0.15\" stroke=\"none\" points=\"";
      for (std::size_t i = 0; i < c.stats.x.size(); ++i) svg << X(c.stats.x[i]) << ',' << Y(c.stats.q3[i]) << ' ';
      for (std::size_t i = c.stats.x.size(); i-- > 0;) svg << X(c.stats.x[i]) << ',' << Y(c.stats.q1[i]) << ' ';
      svg << "\"/>\n";
      // Median solid, mean dashed.
      svg << "<polyline fill=\"none\" stroke=\"" << c.color << "\" stroke-width=\"1.8\" points=\"";
      for (std::size_t i = 0; i < c.stats.x.size(); ++i) svg << X(c.stats.x[i]) << ',' << Y(c.stats.med[i]) << ' ';
      svg << "\"/>\n";
      svg << "<polyline fill=\"none\" stroke=\"" << c.color << "\" stroke-width=\"1\" stroke-dasharray=\"4 3\" points=\"";
      for (std::size_t i = 0; i < c.stats.x.size(); ++i) svg << X(c.stats.x[i]) << ',' << Y(c.stats.mean[i]) << ' ';
      svg << "\"/>\n";
      svg << "<line x1=\"" << ox + ml + 8 << "\" y1=\"" << ly << "\" x2=\"" << ox + ml + 30 << "\" y2=\"" << ly
          << "\" stroke=\"" << c.color << "\" stroke-width=\"1.8\"/><text x=\"" << ox + ml + 34 << "\" y=\""
          << ly + 4 << "\">" << c.label << "</text>\n";
      ly += 14;
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace bench_detail

// Three panels: node counts, relative self-nestedness, transform runtimes.
// Median lines with interquartile bands, dashed mean overlay; aggregation is
// done on the raw integral/rational values before any pixel mapping.
inline std::string bench_svg(const std::vector<BenchRecord>& records) {
  std::vector<int> sizes;
  for (const BenchRecord& r : records)
    if (sizes.empty() || sizes.back() != r.size) sizes.push_back(r.size);
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

  using bench_detail::aggregate;
  bench_detail::Panel counts{"approximation size", "nodes", {}};
  counts.curves.push_back({"input", "#444444", aggregate(records, sizes, [](const BenchRecord& r) { return double(r.n_tau); })});
  counts.curves.push_back({"insertion (grow)", "#c0392b", aggregate(records, sizes, [](const BenchRecord& r) { return double(r.n_nest); })});
  counts.curves.push_back({"deletion (shrink)", "#2471a3", aggregate(records, sizes, [](const BenchRecord& r) { return double(r.n_nest_embedded); })});

  bench_detail::Panel deltas{"self-nestedness metrics", "metric value", {}};
  deltas.curves.push_back({"grown metric", "#c0392b", aggregate(records, sizes, [](const BenchRecord& r) {
                             return double(static_cast<long long>(r.delta_nest.num())) /
                                    double(static_cast<long long>(r.delta_nest.den()));
                           })});
  deltas.curves.push_back({"shrunk metric", "#2471a3", aggregate(records, sizes, [](const BenchRecord& r) {
                             return double(static_cast<long long>(r.delta_nest_embedded.num())) /
                                    double(static_cast<long long>(r.delta_nest_embedded.den()));
                           })});

  bench_detail::Panel times{"transform runtime", "nanoseconds", {}};
  times.curves.push_back({"insertion (grow)", "#c0392b", aggregate(records, sizes, [](const BenchRecord& r) { return double(r.t_nest_ns); })});
  times.curves.push_back({"deletion (shrink)", "#2471a3", aggregate(records, sizes, [](const BenchRecord& r) { return double(r.t_nest_embedded_ns); })});

  return bench_detail::render_panels({counts, deltas, times});
}

inline void write_bench_svg(const std::vector<BenchRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << bench_svg(records);
}

}  // namespace selfnest

#ifndef CDO_HARNESS_HPP
#define CDO_HARNESS_HPP

#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <random>
#include <set>
#include <thread>
#include <tuple>

#include "cdo/domains.hpp"
#include "cdo/rules.hpp"

namespace cdo {

// ---------------------------------------------------------------------------
// Seeding
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Counter-based child seed: every generated artefact gets a seed derived
/// from the master seed, a stream id, and a counter, so outputs are
/// reproducible independently of evaluation order and worker count.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t counter) {
  return splitmix64(splitmix64(master ^ (stream * 0x9e3779b97f4a7c15ull)) + counter);
}

/// Deterministic RNG helpers over std::mt19937_64. Bounded draws use the
/// modulo reduction and reals use 53 bits, so streams are identical across
/// platforms.
struct Rng {
  std::mt19937_64 engine;

  explicit Rng(std::uint64_t seed) : engine(seed) {}

  std::uint64_t below(std::uint64_t n) { return engine() % n; }

  /// Uniform real in (0, 1], realised as (k + 1) / 2^53.
  double unit_open_closed() {
    std::uint64_t k = engine() >> 11;
    return (double)(k + 1) * 0x1.0p-53;
  }
};

// ---------------------------------------------------------------------------
// Input generation
// ---------------------------------------------------------------------------

/// Random connected simple graph with exactly `num_edges` edges: grow a
/// random tree by joining an unconnected node to a connected one, then draw
/// the remaining edges uniformly without replacement from the absent pairs.
inline Graph gen_connected_graph(std::size_t num_nodes, std::size_t num_edges, std::uint64_t seed) {
  if (num_nodes == 0) throw StructuralError("graph needs at least one node");
  const std::size_t max_edges = num_nodes * (num_nodes - 1) / 2;
  if (num_edges + 1 < num_nodes || num_edges > max_edges)
    throw StructuralError("edge count out of range for a connected simple graph");
  Rng rng(seed);
  std::vector<std::string> nodes;
  for (std::size_t i = 0; i < num_nodes; ++i) nodes.push_back("n" + std::to_string(i));
  std::vector<std::vector<bool>> present(num_nodes, std::vector<bool>(num_nodes, false));
  std::vector<Edge> edges;
  auto add = [&](std::size_t u, std::size_t v) {
    if (u > v) std::swap(u, v);
    present[u][v] = true;
    edges.push_back(Edge{u, v, 1});
  };
  std::vector<std::size_t> connected{0}, unconnected;
  for (std::size_t i = 1; i < num_nodes; ++i) unconnected.push_back(i);
  while (!unconnected.empty()) {
    std::size_t ci = rng.below(connected.size());
    std::size_t ui = rng.below(unconnected.size());
    add(connected[ci], unconnected[ui]);
    connected.push_back(unconnected[ui]);
    unconnected.erase(unconnected.begin() + (std::ptrdiff_t)ui);
  }
  std::vector<std::pair<std::size_t, std::size_t>> absent;
  for (std::size_t u = 0; u < num_nodes; ++u)
    for (std::size_t v = u + 1; v < num_nodes; ++v)
      if (!present[u][v]) absent.emplace_back(u, v);
  for (std::size_t k = edges.size(); k < num_edges; ++k) {
    std::size_t pick = rng.below(absent.size());
    add(absent[pick].first, absent[pick].second);
    absent.erase(absent.begin() + (std::ptrdiff_t)pick);
  }
  return Graph(std::move(nodes), std::move(edges));
}

/// An n x items matrix of acceptance rates, each strictly in (0, 1].
struct BaseProfile {
  std::size_t voters = 0, items = 0;
  std::vector<double> entries;  // row-major

  double at(std::size_t voter, std::size_t item) const { return entries[voter * items + item]; }
};

inline BaseProfile gen_base_profile(std::size_t voters, std::size_t items, std::uint64_t seed) {
  BaseProfile bp;
  bp.voters = voters;
  bp.items = items;
  bp.entries.resize(voters * items);
  Rng rng(seed);
  for (auto& e : bp.entries) e = rng.unit_open_closed();
  return bp;
}

/// Voter i approves item e iff the base-profile entry is at most p.
inline Profile threshold_profile(const BaseProfile& bp, double p) {
  if (!(p > 0.0 && p < 1.0)) throw StructuralError("threshold p must lie in (0, 1)");
  Profile profile;
  for (std::size_t i = 0; i < bp.voters; ++i) {
    Bits bits(bp.items);
    for (std::size_t e = 0; e < bp.items; ++e) bits[e] = bp.at(i, e) <= p;
    profile.ballots.push_back(Ballot{std::move(bits)});
  }
  return profile;
}

// ---------------------------------------------------------------------------
// Benchmark
// ---------------------------------------------------------------------------

struct BenchConfig {
  std::size_t node_min = 6, node_max = 8;
  std::size_t voters = 100;
  std::size_t profiles_per_graph = 10;
  std::vector<double> p_grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<RuleSpec> rules = {{Operator::Sum, SetScoring::Simple},
                                 {Operator::Sum, SetScoring::CC},
                                 {Operator::Egal, SetScoring::Simple}};
  double timeout_s = 1200.0;
  std::uint64_t seed = 1;
  std::size_t workers = 1;

  void validate() const {
    for (double p : p_grid)
      if (!(p > 0.0 && p < 1.0)) throw StructuralError("p values must lie in (0, 1)");
    if (timeout_s <= 0) throw StructuralError("timeout must be positive");
    if (node_min < 2 || node_min > node_max) throw StructuralError("bad node range");
  }
};

struct BenchRecord {
  std::size_t nodes = 0, edges = 0;
  double p = 0.0;
  std::string rule;
  std::uint64_t seed = 0;  // base-profile seed of this instance
  double wall_ms = 0.0;
  Int optimum = 0;
  std::size_t outcome_count = 0;
  bool timed_out = false;
};

namespace harness_detail {

struct Job {
  std::size_t nodes, edges;
  std::size_t graph_index;   // position in the (|V|, |E|) grid
  std::size_t profile_index;
  double p;
  RuleSpec rule;
};

inline BenchRecord run_job(const Job& job, const BenchConfig& config) {
  const std::uint64_t graph_seed = derive_seed(config.seed, 1, job.nodes * 100 + job.edges);
  const std::uint64_t bp_seed =
      derive_seed(config.seed, 2, job.graph_index * 1000 + job.profile_index);
  Graph graph = gen_connected_graph(job.nodes, job.edges, graph_seed);
  auto [agenda, feasibility] = encode_spanning_tree(graph);
  BaseProfile bp = gen_base_profile(config.voters, graph.edges.size(), bp_seed);

  CdoInstance instance;
  instance.agenda = std::move(agenda);
  instance.feasibility = std::move(feasibility);
  instance.profile = threshold_profile(bp, job.p);

  BenchRecord rec;
  rec.nodes = job.nodes;
  rec.edges = job.edges;
  rec.p = job.p;
  rec.rule = job.rule.name();
  rec.seed = bp_seed;

  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::milliseconds((long long)(config.timeout_s * 1000.0));
  if (job.rule.op == Operator::Rank) {
    auto t0 = std::chrono::steady_clock::now();
    RuleResult res = rule_rank(job.rule.scoring, instance);
    auto t1 = std::chrono::steady_clock::now();
    rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    rec.optimum = res.optimum;
    rec.outcome_count = res.outcomes.size();
    if (!verify_spanning_tree(decode_tree(res.outcomes[0], graph), graph))
      throw Error("benchmark outcome is not a spanning tree");
    return rec;
  }

  IlpModel model = rule_detail::model_for(job.rule.op, job.rule.scoring, instance);
  auto t0 = std::chrono::steady_clock::now();
  SolveOutcome sol = branch_and_bound(model, {}, deadline);
  auto t1 = std::chrono::steady_clock::now();
  rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  if (sol.status == SolveStatus::TimedOut) {
    rec.timed_out = true;
    return rec;
  }
  if (sol.status == SolveStatus::Infeasible)
    throw Error("benchmark instance unexpectedly infeasible");
  rec.optimum = sol.optimum;
  rec.outcome_count = 1;
  if (!verify_spanning_tree(decode_tree(Outcome{sol.items, {}}, graph), graph))
    throw Error("benchmark outcome is not a spanning tree");
  return rec;
}

}  // namespace harness_detail

inline std::vector<harness_detail::Job> benchmark_grid(const BenchConfig& config) {
  std::vector<harness_detail::Job> jobs;
  std::size_t graph_index = 0;
  for (std::size_t nv = config.node_min; nv <= config.node_max; ++nv)
    for (std::size_t ne = nv - 1; ne <= nv * (nv - 1) / 2; ++ne, ++graph_index)
      for (std::size_t pi = 0; pi < config.profiles_per_graph; ++pi)
        for (double p : config.p_grid)
          for (const auto& rule : config.rules)
            jobs.push_back(harness_detail::Job{nv, ne, graph_index, pi, p, rule});
  return jobs;
}

/// Runs the full grid; jobs are independent and may run on several workers,
/// results come back in grid order regardless of the worker count.
inline std::vector<BenchRecord> run_benchmark(
    const BenchConfig& config, std::function<void(std::size_t, std::size_t)> progress = {}) {
  config.validate();
  std::vector<harness_detail::Job> jobs = benchmark_grid(config);
  std::vector<BenchRecord> records(jobs.size());
  std::atomic<std::size_t> next{0}, done{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        records[i] = harness_detail::run_job(jobs[i], config);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
      std::size_t d = ++done;
      if (progress) progress(d, jobs.size());
    }
  };
  std::size_t nworkers = config.workers == 0 ? 1 : config.workers;
  if (nworkers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < nworkers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return records;
}

inline std::string records_to_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream os;
  os << "nodes,edges,p,rule,seed,wall_ms,optimum,outcome_count,timed_out\n";
  for (const auto& r : records)
    os << r.nodes << "," << r.edges << "," << r.p << "," << r.rule << "," << r.seed << ","
       << r.wall_ms << "," << r.optimum << "," << r.outcome_count << "," << (r.timed_out ? 1 : 0)
       << "\n";
  return os.str();
}

/// Mean wall time per (nodes, p, rule) over non-timed-out records.
struct MeanTime {
  std::size_t nodes = 0;
  double p = 0.0;
  std::string rule;
  double mean_ms = 0.0;
  std::size_t count = 0;
};

inline std::vector<MeanTime> mean_times(const std::vector<BenchRecord>& records) {
  std::map<std::tuple<std::size_t, double, std::string>, std::pair<double, std::size_t>> acc;
  for (const auto& r : records) {
    if (r.timed_out) continue;
    auto& [sum, count] = acc[{r.nodes, r.p, r.rule}];
    sum += r.wall_ms;
    ++count;
  }
  std::vector<MeanTime> out;
  for (const auto& [key, val] : acc)
    out.push_back(MeanTime{std::get<0>(key), std::get<1>(key), std::get<2>(key),
                           val.first / (double)val.second, val.second});
  return out;
}

inline std::string mean_times_to_csv(const std::vector<MeanTime>& means) {
  std::ostringstream os;
  os << "nodes,p,rule,mean_ms,count\n";
  for (const auto& m : means)
    os << m.nodes << "," << m.p << "," << m.rule << "," << m.mean_ms << "," << m.count << "\n";
  return os.str();
}

/// Minimal SVG line chart of mean time (log2 y-axis) against node count,
/// one polyline per (rule, p) pair.
inline std::string mean_times_to_svg(const std::vector<MeanTime>& means,
                                     const std::vector<double>& p_shown = {0.2, 0.8}) {
  std::vector<MeanTime> shown;
  for (const auto& m : means)
    for (double p : p_shown)
      if (std::abs(m.p - p) < 1e-9) shown.push_back(m);
  const double width = 640, height = 420, margin = 60;
  double min_log = 0, max_log = 1;
  std::set<std::size_t> node_set;
  bool first = true;
  for (const auto& m : shown) {
    double lg = std::log2(m.mean_ms > 1e-3 ? m.mean_ms : 1e-3);
    if (first || lg < min_log) min_log = first ? lg : std::min(min_log, lg);
    if (first || lg > max_log) max_log = first ? lg : std::max(max_log, lg);
    first = false;
    node_set.insert(m.nodes);
  }
  if (max_log - min_log < 1) max_log = min_log + 1;
  std::vector<std::size_t> nodes_axis(node_set.begin(), node_set.end());
  auto xpos = [&](std::size_t nv) {
    if (nodes_axis.size() < 2) return margin + (width - 2 * margin) / 2;
    auto it = std::find(nodes_axis.begin(), nodes_axis.end(), nv);
    double idx = (double)(it - nodes_axis.begin());
    return margin + idx * (width - 2 * margin) / (double)(nodes_axis.size() - 1);
  };
  auto ypos = [&](double ms) {
    double lg = std::log2(ms > 1e-3 ? ms : 1e-3);
    return height - margin - (lg - min_log) * (height - 2 * margin) / (max_log - min_log);
  };
  const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};
  std::map<std::pair<std::string, double>, std::vector<std::pair<std::size_t, double>>> series;
  for (const auto& m : shown) series[{m.rule, m.p}].emplace_back(m.nodes, m.mean_ms);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
     << "\" text-anchor=\"middle\" font-size=\"13\">nodes</text>\n";
  os << "<text x=\"16\" y=\"" << height / 2
     << "\" font-size=\"13\" transform=\"rotate(-90 16 " << height / 2
     << ")\" text-anchor=\"middle\">mean time (ms, log2)</text>\n";
  for (std::size_t nv : nodes_axis)
    os << "<text x=\"" << xpos(nv) << "\" y=\"" << height - margin + 18
       << "\" text-anchor=\"middle\" font-size=\"12\">" << nv << "</text>\n";
  int color = 0;
  double legend_y = margin;
  for (auto& [key, points] : series) {
    std::sort(points.begin(), points.end());
    os << "<polyline fill=\"none\" stroke=\"" << palette[color % 6] << "\" stroke-width=\"2\" points=\"";
    for (const auto& [nv, ms] : points) os << xpos(nv) << "," << ypos(ms) << " ";
    os << "\"/>\n";
    os << "<text x=\"" << width - margin - 150 << "\" y=\"" << legend_y << "\" font-size=\"12\" fill=\""
       << palette[color % 6] << "\">" << key.first << " p=" << key.second << "</text>\n";
    legend_y += 16;
    ++color;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace cdo

#endif  // CDO_HARNESS_HPP

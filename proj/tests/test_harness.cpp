#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "cdo/harness.hpp"

using namespace cdo;

TEST_CASE("derived seeds are deterministic and well spread") {
  CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
  std::set<std::uint64_t> seen;
  for (std::uint64_t stream = 0; stream < 8; ++stream)
    for (std::uint64_t counter = 0; counter < 64; ++counter)
      seen.insert(derive_seed(42, stream, counter));
  CHECK(seen.size() == 8 * 64);
  CHECK(derive_seed(1, 2, 3) != derive_seed(2, 2, 3));
}

TEST_CASE("rng draws are reproducible") {
  Rng a(123), b(123);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.below(1000) == b.below(1000));
    double x = a.unit_open_closed();
    CHECK(x == b.unit_open_closed());
    CHECK(x > 0.0);
    CHECK(x <= 1.0);
  }
}

TEST_CASE("generated graphs are connected with the exact edge count") {
  Graph tree = gen_connected_graph(6, 5, 11);
  CHECK(tree.nodes.size() == 6);
  CHECK(tree.edges.size() == 5);
  CHECK(is_connected(tree));
  CHECK(verify_spanning_tree(tree.edges, tree));

  Graph complete = gen_connected_graph(8, 28, 11);
  CHECK(complete.edges.size() == 28);
  CHECK(is_connected(complete));

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    std::size_t nv = 4 + seed % 5;
    std::size_t ne = (nv - 1) + seed % (nv * (nv - 1) / 2 - nv + 2);
    Graph g = gen_connected_graph(nv, ne, seed);
    CHECK(g.edges.size() == ne);
    CHECK(is_connected(g));
  }
}

TEST_CASE("graph generation is seed deterministic") {
  Graph a = gen_connected_graph(7, 12, 5);
  Graph b = gen_connected_graph(7, 12, 5);
  REQUIRE(a.edges.size() == b.edges.size());
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    CHECK(a.edges[i].u == b.edges[i].u);
    CHECK(a.edges[i].v == b.edges[i].v);
  }
}

TEST_CASE("out-of-range edge counts are rejected") {
  CHECK_THROWS_AS(gen_connected_graph(5, 3, 1), StructuralError);   // below tree
  CHECK_THROWS_AS(gen_connected_graph(5, 11, 1), StructuralError);  // above complete
  CHECK_NOTHROW(gen_connected_graph(5, 4, 1));
  CHECK_NOTHROW(gen_connected_graph(5, 10, 1));
}

TEST_CASE("base profiles have in-range entries and are reproducible") {
  BaseProfile bp = gen_base_profile(10, 7, 99);
  CHECK(bp.entries.size() == 70);
  for (double e : bp.entries) {
    CHECK(e > 0.0);
    CHECK(e <= 1.0);
  }
  BaseProfile again = gen_base_profile(10, 7, 99);
  CHECK(bp.entries == again.entries);
  CHECK(gen_base_profile(10, 7, 100).entries != bp.entries);
}

TEST_CASE("thresholding is monotone in p") {
  BaseProfile bp = gen_base_profile(20, 10, 3);
  Profile low = threshold_profile(bp, 0.2);
  Profile high = threshold_profile(bp, 0.8);
  std::size_t low_total = 0, high_total = 0;
  for (std::size_t i = 0; i < 20; ++i) {
    for (std::size_t e = 0; e < 10; ++e)
      CHECK(low.ballots[i].bits[e] <= high.ballots[i].bits[e]);
    low_total += low.ballots[i].ones();
    high_total += high.ballots[i].ones();
  }
  CHECK(low_total < high_total);
  CHECK_THROWS_AS(threshold_profile(bp, 0.0), StructuralError);
  CHECK_THROWS_AS(threshold_profile(bp, 1.0), StructuralError);
}

TEST_CASE("the 6..8 node grid has 49 graph shapes") {
  BenchConfig config;
  config.profiles_per_graph = 1;
  config.p_grid = {0.5};
  config.rules = {{Operator::Sum, SetScoring::Simple}};
  auto jobs = benchmark_grid(config);
  CHECK(jobs.size() == 49);
  std::set<std::pair<std::size_t, std::size_t>> shapes;
  for (const auto& j : jobs) shapes.insert({j.nodes, j.edges});
  CHECK(shapes.size() == 49);
  CHECK(jobs.back().graph_index == 48);
}

TEST_CASE("bench config validation") {
  BenchConfig config;
  config.p_grid = {1.5};
  CHECK_THROWS_AS(config.validate(), StructuralError);
  config = BenchConfig{};
  config.timeout_s = 0;
  CHECK_THROWS_AS(config.validate(), StructuralError);
  config = BenchConfig{};
  config.node_min = 9;
  CHECK_THROWS_AS(config.validate(), StructuralError);
}

namespace {

BenchConfig small_config() {
  BenchConfig config;
  config.node_min = 3;
  config.node_max = 4;
  config.voters = 5;
  config.profiles_per_graph = 2;
  config.p_grid = {0.3, 0.7};
  config.rules = {{Operator::Sum, SetScoring::Simple},
                  {Operator::Egal, SetScoring::Simple},
                  {Operator::Rank, SetScoring::Simple}};
  config.seed = 7;
  return config;
}

}  // namespace

TEST_CASE("a small benchmark runs clean and is worker independent") {
  BenchConfig config = small_config();
  auto records = run_benchmark(config);
  // nv=3 has 2 edge counts, nv=4 has 4; 6 shapes x 2 profiles x 2 p x 3 rules.
  REQUIRE(records.size() == 72);
  for (const auto& r : records) {
    CHECK_FALSE(r.timed_out);
    CHECK(r.outcome_count == 1);
    CHECK(r.wall_ms >= 0.0);
  }

  BenchConfig threaded = small_config();
  threaded.workers = 3;
  auto again = run_benchmark(threaded);
  REQUIRE(again.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(again[i].optimum == records[i].optimum);
    CHECK(again[i].seed == records[i].seed);
    CHECK(again[i].rule == records[i].rule);
  }
}

TEST_CASE("csv and summary outputs have the expected shape") {
  BenchConfig config = small_config();
  config.node_max = 3;
  config.rules = {{Operator::Sum, SetScoring::Simple}};
  auto records = run_benchmark(config);
  std::string csv = records_to_csv(records);
  CHECK(csv.rfind("nodes,edges,p,rule,seed,wall_ms,optimum,outcome_count,timed_out\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == (long)records.size() + 1);

  auto means = mean_times(records);
  // One row per (nodes, p, rule): 1 x 2 x 1.
  CHECK(means.size() == 2);
  for (const auto& m : means) CHECK(m.count == 4);  // 2 shapes x 2 profiles
  std::string mcsv = mean_times_to_csv(means);
  CHECK(mcsv.rfind("nodes,p,rule,mean_ms,count\n", 0) == 0);

  std::string svg = mean_times_to_svg(means, {0.3, 0.7});
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("sum:simple") != std::string::npos);
}

TEST_CASE("timed out records are excluded from the means") {
  std::vector<BenchRecord> records;
  BenchRecord ok;
  ok.nodes = 6;
  ok.p = 0.5;
  ok.rule = "sum:simple";
  ok.wall_ms = 10.0;
  records.push_back(ok);
  BenchRecord bad = ok;
  bad.timed_out = true;
  bad.wall_ms = 1e9;
  records.push_back(bad);
  auto means = mean_times(records);
  REQUIRE(means.size() == 1);
  CHECK(means[0].count == 1);
  CHECK(means[0].mean_ms == 10.0);
}

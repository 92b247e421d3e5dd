// End-to-end acceptance checks. Each check prints one PASS/FAIL line; the
// process exit code is the number of failures. The benchmark check runs the
// full 6..8-node grid and takes a while; it can be selected or skipped with
// --only benchmark / --skip benchmark.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstring>
#include <iostream>
#include <set>
#include <sstream>

#include "cdo/cdo.hpp"

using namespace cdo;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
  std::cout << (ok ? "PASS " : "FAIL ") << name;
  if (!ok && !detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
  if (!ok) ++failures;
}

CdoInstance four_item_instance() {
  Agenda agenda({"a1", "a2", "a3", "a4"}, {1, 1, 1, 1});
  ConstraintSet cs = constraints_from_outcomes({{1, 0, 0, 1}, {1, 1, 0, 0}, {0, 1, 1, 0}}, agenda);
  Profile profile;
  for (int voter = 1; voter <= 4; ++voter) {
    Bits bits(4, 0);
    for (int item = 0; item < 4; ++item) bits[(std::size_t)item] = voter <= item + 1;
    profile.ballots.push_back(Ballot{bits});
  }
  return CdoInstance{agenda, ConstraintSet{}, std::move(cs), std::move(profile)};
}

std::vector<Bits> outcome_bits(const RuleResult& r) {
  std::vector<Bits> out;
  for (const auto& o : r.outcomes) out.push_back(o.bits);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

void check_scoring_goldens() {
  Bits ballot = {1, 0, 1, 0, 1}, outcome = {1, 1, 0, 0, 1};
  std::vector<Int> w = {1, 2, 3, 4, 5};
  bool ok = score(SetScoring::Simple, ballot, outcome, w) == 2 &&
            score(SetScoring::Swap, ballot, outcome, w) == -1 &&
            score(SetScoring::Weight, ballot, outcome, w) == 6 &&
            score(SetScoring::WSwap, ballot, outcome, w) == -3 &&
            score(SetScoring::CC, ballot, outcome, w) == 1;
  report("set-scoring golden values", ok);
}

void check_rule_goldens() {
  CdoInstance inst = four_item_instance();
  std::ostringstream why;

  RuleResult rank = rule_rank(SetScoring::Simple, inst);
  bool ok = outcome_bits(rank) == std::vector<Bits>{{1, 0, 0, 1}};
  const char* items[] = {"a4", "a3", "a2", "a1"};
  const bool accepted[] = {true, false, false, true};
  ok = ok && rank.trace.size() == 4;
  for (std::size_t i = 0; ok && i < 4; ++i)
    ok = rank.trace[i].item == items[i] && rank.trace[i].accepted == accepted[i];
  if (!ok) why << "ranked rule mismatch; ";

  RuleResult sum = rule_sum(SetScoring::Simple, inst);
  if (outcome_bits(sum) != std::vector<Bits>{{0, 1, 1, 0}, {1, 0, 0, 1}} || sum.optimum != 5) {
    ok = false;
    why << "sum:simple mismatch; ";
  }
  RuleResult egal = rule_egal(SetScoring::Simple, inst);
  if (outcome_bits(egal) != std::vector<Bits>{{1, 0, 0, 1}} || egal.optimum != 1) {
    ok = false;
    why << "egal:simple mismatch; ";
  }
  RuleResult egal_swap = rule_egal(SetScoring::Swap, inst);
  if (outcome_bits(egal_swap) != std::vector<Bits>{{0, 1, 1, 0}, {1, 0, 0, 1}, {1, 1, 0, 0}} ||
      egal_swap.optimum != -2) {
    ok = false;
    why << "egal:swap mismatch; ";
  }
  report("four-item worked instance under all operators", ok, why.str());
}

void check_sum_equivalences() {
  auto start = std::chrono::steady_clock::now();
  std::size_t bad = 0;
  const std::size_t trials = 200;
  for (std::size_t t = 0; t < trials; ++t) {
    CdoInstance inst = gen_random_instance(derive_seed(11, 21, t));
    if (outcome_bits(rule_sum(SetScoring::Simple, inst)) !=
        outcome_bits(rule_sum(SetScoring::Swap, inst)))
      ++bad;
    if (outcome_bits(rule_sum(SetScoring::Weight, inst)) !=
        outcome_bits(rule_sum(SetScoring::WSwap, inst)))
      ++bad;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream why;
  why << bad << " mismatches, " << secs << " s";
  report("sum-operator scoring equivalences on 200 random instances", bad == 0 && secs < 60.0,
         why.str());
}

void check_solver_oracle() {
  std::size_t bad = 0;
  const std::array<SetScoring, 5> scorings = {SetScoring::Simple, SetScoring::Weight,
                                              SetScoring::Swap, SetScoring::WSwap, SetScoring::CC};
  for (std::uint64_t t = 0; t < 100; ++t) {
    RandomInstanceOptions opt;
    opt.max_items = 12;
    CdoInstance inst = gen_random_instance(derive_seed(11, 22, t), opt);
    auto feasible = enumerate_feasible(inst.feasibility, inst.agenda);
    std::span<const Int> w(inst.agenda.weights);
    for (SetScoring scoring : scorings)
      for (Operator op : {Operator::Sum, Operator::Egal}) {
        Int best = 0;
        std::vector<Bits> argmax;
        bool first = true;
        for (const auto& o : feasible) {
          Int v = op == Operator::Sum ? profile_sum(scoring, inst.profile, o.bits, w)
                                      : profile_min(scoring, inst.profile, o.bits, w);
          if (first || v > best) {
            best = v;
            argmax.clear();
            first = false;
          }
          if (v == best) argmax.push_back(o.bits);
        }
        std::sort(argmax.begin(), argmax.end());
        IlpModel model = rule_detail::model_for(op, scoring, inst);
        OptimaSet got = enumerate_optima(model);
        SolveOutcome one = branch_and_bound(model);
        if (got.status != SolveStatus::Optimal || got.optimum != best ||
            got.witnesses != argmax || one.optimum != best ||
            !std::binary_search(argmax.begin(), argmax.end(), one.items))
          ++bad;
      }
  }
  std::ostringstream why;
  why << bad << " mismatches";
  report("exact solver vs enumeration oracle on 100 random instances", bad == 0, why.str());
}

std::set<Bits> direct_spanning_trees(const Graph& g) {
  std::set<Bits> trees;
  const std::size_t ne = g.edges.size();
  for (std::uint64_t code = 0; code < (1ull << ne); ++code) {
    Bits bits(ne);
    std::vector<Edge> chosen;
    for (std::size_t i = 0; i < ne; ++i)
      if ((code >> i) & 1) {
        bits[i] = 1;
        chosen.push_back(g.edges[i]);
      }
    if (verify_spanning_tree(chosen, g)) trees.insert(bits);
  }
  return trees;
}

void check_spanning_tree_encoding() {
  std::size_t bad = 0;
  for (std::uint64_t t = 0; t < 50; ++t) {
    Rng rng(derive_seed(11, 23, t));
    std::size_t nv = 2 + rng.below(5);  // up to 6 nodes
    std::size_t max_e = nv * (nv - 1) / 2;
    std::size_t ne = (nv - 1) + rng.below(max_e - nv + 2);
    Graph g = gen_connected_graph(nv, ne, derive_seed(11, 24, t));
    auto [agenda, cs] = encode_spanning_tree(g);
    std::set<Bits> encoded;
    for (const auto& o : enumerate_feasible(cs, agenda)) encoded.insert(o.bits);
    if (encoded != direct_spanning_trees(g)) ++bad;
  }
  Graph four({"H", "I", "J", "K"},
             {Edge{0, 1, 1}, Edge{0, 3, 2}, Edge{1, 2, 4}, Edge{1, 3, 3}, Edge{2, 3, 2}});
  auto [agenda4, cs4] = encode_spanning_tree(four);
  bool four_ok = enumerate_feasible(cs4, agenda4).size() == 8;
  std::ostringstream why;
  why << bad << " graph mismatches, four-city count "
      << enumerate_feasible(cs4, agenda4).size();
  report("spanning-tree feasible sets on 50 random graphs plus the four-city network",
         bad == 0 && four_ok, why.str());
}

void check_schedule_encoding() {
  bool ok = true;
  std::ostringstream why;
  std::size_t factorial = 1;
  for (std::size_t m = 2; m <= 4; ++m) {
    factorial *= m;
    std::vector<std::string> jobs;
    std::vector<Int> durations;
    for (std::size_t i = 0; i < m; ++i) {
      jobs.push_back("p" + std::to_string(i + 1));
      durations.push_back((Int)i + 1);
    }
    auto [agenda, cs] = encode_schedule(ScheduleSpec(jobs, durations));
    std::size_t got = enumerate_feasible(cs, agenda, 64).size();
    if (got != factorial) {
      ok = false;
      why << "m=" << m << " gave " << got << " orders; ";
    }
  }
  ScheduleSpec spec({"p1", "p2", "p3", "p4"}, {1, 1, 1, 1});
  Ballot b = ballot_from_partial_order(
      spec, {{"p2", "p1"}, {"p2", "p3"}, {"p2", "p4"}, {"p1", "p4"}, {"p3", "p4"}}, {"p2"});
  if (b.bits != Bits{0, 1, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 1, 0, 0, 0}) {
    ok = false;
    why << "course ballot mismatch";
  }
  report("schedule feasible sets are the m! orders and the course ballot is bit-exact", ok,
         why.str());
}

// Independent participatory-budgeting rules, written directly against the
// ballot bit vectors.
struct PbInstance {
  std::vector<Int> costs;
  Int limit = 0;
  std::vector<Bits> ballots;
};

PbInstance gen_pb(std::uint64_t seed) {
  Rng rng(seed);
  PbInstance pb;
  std::size_t m = 2 + rng.below(9);  // up to 10 items
  std::size_t n = 1 + rng.below(10);
  Int total = 0;
  for (std::size_t a = 0; a < m; ++a) {
    pb.costs.push_back(1 + (Int)rng.below(9));
    total += pb.costs.back();
  }
  pb.limit = 1 + (Int)rng.below((std::uint64_t)total);
  for (std::size_t i = 0; i < n; ++i) {
    Bits bits(m);
    for (auto& x : bits) x = (std::uint8_t)rng.below(2);
    pb.ballots.push_back(bits);
  }
  return pb;
}

Int pb_cardinality_score(const PbInstance& pb, const Bits& bundle) {
  Int s = 0;
  for (const auto& b : pb.ballots)
    for (std::size_t a = 0; a < bundle.size(); ++a)
      if (b[a] && bundle[a]) ++s;
  return s;
}

Int pb_cc_score(const PbInstance& pb, const Bits& bundle) {
  Int s = 0;
  for (const auto& b : pb.ballots)
    for (std::size_t a = 0; a < bundle.size(); ++a)
      if (b[a] && bundle[a]) {
        ++s;
        break;
      }
  return s;
}

template <typename Score>
std::pair<Int, std::vector<Bits>> pb_max_rule(const PbInstance& pb, Score&& sc) {
  const std::size_t m = pb.costs.size();
  Int best = 0;
  std::vector<Bits> argmax;
  bool first = true;
  for (std::uint64_t code = 0; code < (1ull << m); ++code) {
    Bits bundle(m);
    Int cost = 0;
    for (std::size_t a = 0; a < m; ++a)
      if ((code >> a) & 1) {
        bundle[a] = 1;
        cost += pb.costs[a];
      }
    if (cost > pb.limit) continue;
    Int v = sc(pb, bundle);
    if (first || v > best) {
      best = v;
      argmax.clear();
      first = false;
    }
    if (v == best) argmax.push_back(bundle);
  }
  std::sort(argmax.begin(), argmax.end());
  return {best, argmax};
}

// Greedy rule: repeatedly add the affordable item whose addition gives the
// highest score, smallest index on ties, until no item can be added.
template <typename Score>
Bits pb_greedy_rule(const PbInstance& pb, Score&& sc) {
  const std::size_t m = pb.costs.size();
  Bits bundle(m, 0);
  std::vector<bool> done(m, false);
  Int spent = 0;
  for (std::size_t round = 0; round < m; ++round) {
    std::size_t pick = m;
    Int pick_score = 0;
    for (std::size_t a = 0; a < m; ++a) {
      if (done[a]) continue;
      Bits plus = bundle;
      plus[a] = 1;
      Int v = sc(pb, plus);
      if (pick == m || v > pick_score) {
        pick = a;
        pick_score = v;
      }
    }
    if (spent + pb.costs[pick] <= pb.limit) {
      bundle[pick] = 1;
      spent += pb.costs[pick];
    }
    done[pick] = true;
  }
  return bundle;
}

CdoInstance pb_to_instance(const PbInstance& pb) {
  std::vector<std::string> items;
  for (std::size_t a = 0; a < pb.costs.size(); ++a) items.push_back("a" + std::to_string(a + 1));
  Agenda agenda(items, pb.costs);
  CdoInstance inst;
  inst.agenda = agenda;
  inst.feasibility = encode_budget(agenda, BudgetSpec{pb.limit});
  for (const auto& b : pb.ballots) inst.profile.ballots.push_back(Ballot{b});
  return inst;
}

void check_domain_rule_oracles() {
  std::size_t bad_max = 0, bad_cc = 0, bad_greedy = 0, bad_maximin = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    PbInstance pb = gen_pb(derive_seed(11, 25, t));
    CdoInstance inst = pb_to_instance(pb);

    auto [want_card, set_card] = pb_max_rule(pb, pb_cardinality_score);
    RuleResult got_card = rule_sum(SetScoring::Simple, inst);
    if (got_card.optimum != want_card || outcome_bits(got_card) != set_card) ++bad_max;

    auto [want_cc, set_cc] = pb_max_rule(pb, pb_cc_score);
    RuleResult got_cc = rule_sum(SetScoring::CC, inst);
    if (got_cc.optimum != want_cc || outcome_bits(got_cc) != set_cc) ++bad_cc;

    if (rule_rank(SetScoring::Simple, inst).outcomes[0].bits !=
        pb_greedy_rule(pb, pb_cardinality_score))
      ++bad_greedy;
    if (rule_rank(SetScoring::CC, inst).outcomes[0].bits != pb_greedy_rule(pb, pb_cc_score))
      ++bad_greedy;
  }
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng(derive_seed(11, 26, t));
    std::size_t nv = 3 + rng.below(3);  // up to 5 nodes
    std::size_t max_e = nv * (nv - 1) / 2;
    std::size_t ne = (nv - 1) + rng.below(max_e - nv + 2);
    Graph g = gen_connected_graph(nv, ne, derive_seed(11, 27, t));
    auto [agenda, cs] = encode_spanning_tree(g);
    std::size_t n = 1 + rng.below(10);
    Profile profile;
    for (std::size_t i = 0; i < n; ++i) {
      Bits bits(g.edges.size());
      for (auto& x : bits) x = (std::uint8_t)rng.below(2);
      profile.ballots.push_back(Ballot{bits});
    }
    CdoInstance inst{agenda, ConstraintSet{}, cs, profile};

    // Maximin approval over directly enumerated spanning trees.
    Int best = 0;
    std::vector<Bits> argmax;
    bool first = true;
    for (const Bits& tree : direct_spanning_trees(g)) {
      Int worst = 0;
      bool fv = true;
      for (const auto& ballot : profile.ballots) {
        Int v = 0;
        for (std::size_t e = 0; e < tree.size(); ++e)
          if (tree[e] && ballot.bits[e]) ++v;
        if (fv || v < worst) {
          worst = v;
          fv = false;
        }
      }
      if (first || worst > best) {
        best = worst;
        argmax.clear();
        first = false;
      }
      if (worst == best) argmax.push_back(tree);
    }
    std::sort(argmax.begin(), argmax.end());
    RuleResult got = rule_egal(SetScoring::Simple, inst);
    if (got.optimum != best || outcome_bits(got) != argmax) ++bad_maximin;
  }
  std::ostringstream why;
  why << bad_max << " max-rule, " << bad_cc << " coverage-rule, " << bad_greedy << " greedy, "
      << bad_maximin << " maximin mismatches";
  report("budget and network rules match their direct definitions on 100 instances each",
         bad_max + bad_cc + bad_greedy + bad_maximin == 0, why.str());
}

void check_translations() {
  std::size_t bad = 0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    RandomInstanceOptions opt;
    opt.max_items = 5;
    opt.max_voters = 7;
    CdoInstance inst = gen_random_instance(derive_seed(11, 28, t), opt);
    std::vector<Bits> median;
    for (const auto& x : median_rule_ja(cdo_to_ja(inst, JaWeighting::Unit)))
      median.push_back(project_from_ja(x));
    std::sort(median.begin(), median.end());
    if (median != outcome_bits(rule_sum(SetScoring::Simple, inst))) ++bad;

    JaInstance ja = gen_random_ja_instance(derive_seed(11, 29, t), 5, 7, true);
    std::vector<SignVector> via_cdo;
    for (const auto& o : rule_sum(SetScoring::Simple, ja_to_cdo(ja)).outcomes)
      via_cdo.push_back(project_to_ja(o.bits));
    std::sort(via_cdo.begin(), via_cdo.end());
    if (via_cdo != median_rule_ja(ja)) ++bad;
  }
  std::ostringstream why;
  why << bad << " mismatches";
  report("judgment-aggregation round trips agree on 200 random instances", bad == 0, why.str());
}

void check_benchmark() {
  BenchConfig config;  // 6..8 nodes, 100 voters, 10 profiles, 9 p values, 3 rules
  std::vector<BenchRecord> records = run_benchmark(config, [](std::size_t done, std::size_t total) {
    if (done % 500 == 0 || done == total)
      std::cout << "  benchmark progress " << done << "/" << total << std::endl;
  });
  io::write_text_file("benchmark_records.csv", records_to_csv(records));
  auto means = mean_times(records);
  io::write_text_file("benchmark_means.csv", mean_times_to_csv(means));
  io::write_text_file("benchmark_means.svg", mean_times_to_svg(means));

  std::size_t timeouts = 0;
  for (const auto& r : records)
    if (r.timed_out) ++timeouts;
  double cc_low = -1, cc_high = -1;
  for (const auto& m : means) {
    if (m.nodes != 8 || m.rule != "sum:cc") continue;
    if (std::abs(m.p - 0.2) < 1e-9) cc_low = m.mean_ms;
    if (std::abs(m.p - 0.8) < 1e-9) cc_high = m.mean_ms;
  }
  std::ostringstream why;
  why << records.size() << " runs, " << timeouts << " timeouts, coverage-rule means at 8 nodes: "
      << cc_low << " ms (p=0.2) vs " << cc_high << " ms (p=0.8)";
  bool ok = records.size() == 4410 * 3 && timeouts == 0 && cc_low > 0 && cc_high > 0 &&
            cc_low > cc_high;
  report("full benchmark grid solves without timeouts and coverage-rule time falls with p", ok,
         why.str());
}

}  // namespace

int main(int argc, char** argv) {
  bool run_benchmark_check = true, run_fast_checks = true;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (!std::strcmp(argv[i], "--skip") && !std::strcmp(argv[i + 1], "benchmark")) {
      run_benchmark_check = false;
    } else if (!std::strcmp(argv[i], "--only") && !std::strcmp(argv[i + 1], "benchmark")) {
      run_fast_checks = false;
    } else {
      std::cerr << "usage: acceptance [--skip benchmark | --only benchmark]" << std::endl;
      return 2;
    }
  }
  if (run_fast_checks) {
    check_scoring_goldens();
    check_rule_goldens();
    check_sum_equivalences();
    check_solver_oracle();
    check_spanning_tree_encoding();
    check_schedule_encoding();
    check_domain_rule_oracles();
    check_translations();
  }
  if (run_benchmark_check) check_benchmark();
  return failures;
}

// Command-line front end: encode domain problems, solve them with the
// modular rules, export ILP models, and reproduce the benchmark grid.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "cdo/cdo.hpp"
#include "cdo/randomgen.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitTimeoutOnly = 3;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CDO_SEED")) return std::strtoull(env, nullptr, 10);
  return 1;
}

std::string bits_to_string(const cdo::Bits& bits) {
  std::string s = "(";
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (i) s += ",";
    s += bits[i] ? '1' : '0';
  }
  return s + ")";
}

cdo::Profile profile_from_json_file(const std::string& path) {
  cdo::io::json j = cdo::io::read_json_file(path);
  const cdo::io::json& rows = j.is_array() ? j : j.at("profile");
  cdo::Profile profile;
  for (const auto& row : rows) profile.ballots.push_back(cdo::Ballot{row.get<cdo::Bits>()});
  return profile;
}

void apply_budget_flag(cdo::CdoInstance& instance, std::optional<cdo::Int> budget) {
  if (!budget) return;
  cdo::ConstraintSet knapsack = cdo::encode_budget(instance.agenda, cdo::BudgetSpec(*budget));
  for (auto& c : knapsack.constraints) instance.feasibility.constraints.push_back(std::move(c));
}

int cmd_solve(const std::string& rule_name, const std::string& instance_path, bool one_witness,
              std::optional<cdo::Int> budget) {
  cdo::RuleSpec rule = cdo::parse_rule(rule_name);
  cdo::CdoInstance instance = cdo::io::load_instance(instance_path, false);
  apply_budget_flag(instance, budget);
  cdo::RuleResult result = cdo::apply_rule(
      rule, instance, one_witness ? cdo::Mode::OneWitness : cdo::Mode::EnumerateAll);
  std::cout << "rule: " << rule.name() << "\n";
  std::cout << "optimum: " << result.optimum << "\n";
  std::cout << "outcomes (" << result.outcomes.size() << "):\n";
  for (const auto& o : result.outcomes) std::cout << "  " << bits_to_string(o.bits) << "\n";
  if (!result.trace.empty()) {
    std::cout << "trace:\n";
    for (const auto& step : result.trace)
      std::cout << "  " << step.item << " " << (step.accepted ? "accept" : "reject") << "\n";
  }
  return kExitOk;
}

int cmd_export(const std::string& rule_name, const std::string& instance_path,
               const std::string& out, std::optional<cdo::Int> budget) {
  cdo::RuleSpec rule = cdo::parse_rule(rule_name);
  if (rule.op == cdo::Operator::Rank)
    throw cdo::StructuralError("ranked rules have no single ILP model to export");
  cdo::CdoInstance instance = cdo::io::load_instance(instance_path, false);
  apply_budget_flag(instance, budget);
  instance.validate();
  cdo::IlpModel model = cdo::rule_detail::model_for(rule.op, rule.scoring, instance);
  cdo::io::write_text_file(out, cdo::export_lp(model));
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

int cmd_bench(cdo::BenchConfig config, const std::string& out, const std::string& means_out,
              const std::string& svg_out, bool quiet) {
  auto progress = [&](std::size_t done, std::size_t total) {
    if (quiet) return;
    if (done % 100 == 0 || done == total)
      std::cerr << "\r" << done << "/" << total << " instances" << std::flush;
  };
  std::vector<cdo::BenchRecord> records = cdo::run_benchmark(config, progress);
  if (!quiet) std::cerr << "\n";
  cdo::io::write_text_file(out, cdo::records_to_csv(records));
  std::cout << "wrote " << out << " (" << records.size() << " records)\n";
  auto means = cdo::mean_times(records);
  if (!means_out.empty()) {
    cdo::io::write_text_file(means_out, cdo::mean_times_to_csv(means));
    std::cout << "wrote " << means_out << "\n";
  }
  if (!svg_out.empty()) {
    cdo::io::write_text_file(svg_out, cdo::mean_times_to_svg(means));
    std::cout << "wrote " << svg_out << "\n";
  }
  bool all_timed_out = !records.empty();
  for (const auto& r : records)
    if (!r.timed_out) all_timed_out = false;
  return all_timed_out ? kExitTimeoutOnly : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cdo - collective discrete optimisation rules"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "apply a rule to an instance file");
  std::string rule_name, instance_path, out_path;
  bool flag_all = false, flag_one = false;
  std::optional<cdo::Int> budget;
  solve->add_option("--rule", rule_name, "<operator>:<scoring>, e.g. sum:simple")->required();
  solve->add_option("--instance", instance_path, "instance JSON file")->required();
  solve->add_flag("--all", flag_all, "enumerate all co-winners (default)");
  solve->add_flag("--one", flag_one, "stop at one witness");
  solve->add_option("--budget", budget, "add a knapsack feasibility constraint with this limit");

  // encode
  auto* encode = app.add_subcommand("encode", "encode a domain problem as an instance file");
  encode->require_subcommand(1);
  std::string graph_path, profile_path, schedule_path;
  std::optional<cdo::Int> enc_budget;
  auto* enc_budget_cmd = encode->add_subcommand("budget", "add a budget constraint to an instance");
  enc_budget_cmd->add_option("--instance", instance_path, "base instance JSON")->required();
  enc_budget_cmd->add_option("--limit", enc_budget, "budget limit")->required();
  enc_budget_cmd->add_option("-o,--out", out_path, "output instance file")->required();
  auto* enc_tree = encode->add_subcommand("tree", "spanning-tree instance from a graph file");
  enc_tree->add_option("--graph", graph_path, "edge-list graph file")->required();
  enc_tree->add_option("--profile", profile_path, "profile JSON (list of 0/1 rows)");
  enc_tree->add_option("-o,--out", out_path, "output instance file")->required();
  auto* enc_sched = encode->add_subcommand("schedule", "scheduling instance from a schedule file");
  enc_sched->add_option("--schedule", schedule_path, "schedule JSON with voters")->required();
  enc_sched->add_option("-o,--out", out_path, "output instance file")->required();

  // export-ilp
  auto* exp = app.add_subcommand("export-ilp", "write the rule's ILP model in LP format");
  exp->add_option("--rule", rule_name, "<operator>:<scoring>")->required();
  exp->add_option("--instance", instance_path, "instance JSON file")->required();
  exp->add_option("-o,--out", out_path, "output .lp file")->required();
  exp->add_option("--budget", budget, "add a knapsack feasibility constraint");

  // gen-graph
  auto* gg = app.add_subcommand("gen-graph", "generate a random connected graph");
  std::size_t gg_nodes = 6, gg_edges = 8;
  std::uint64_t seed = default_seed();
  gg->add_option("--nodes", gg_nodes, "node count")->required();
  gg->add_option("--edges", gg_edges, "edge count")->required();
  gg->add_option("--seed", seed, "RNG seed (default from CDO_SEED)");
  gg->add_option("-o,--out", out_path, "output graph file")->required();

  // gen-profile
  auto* gp = app.add_subcommand("gen-profile", "generate a (thresholded) random profile");
  std::size_t gp_voters = 100, gp_items = 10;
  std::optional<double> gp_p;
  gp->add_option("--voters", gp_voters, "number of voters")->required();
  gp->add_option("--items", gp_items, "number of agenda items")->required();
  gp->add_option("--seed", seed, "RNG seed (default from CDO_SEED)");
  gp->add_option("--p", gp_p, "acceptance threshold in (0,1); omit to dump the base matrix");
  gp->add_option("-o,--out", out_path, "output JSON file")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "run the spanning-tree benchmark grid");
  cdo::BenchConfig config;
  config.seed = default_seed();
  std::vector<std::string> bench_rules;
  std::string means_out, svg_out;
  bool include_rank = false, quiet = false;
  bench->add_option("--node-min", config.node_min, "smallest node count (default 6)");
  bench->add_option("--node-max", config.node_max, "largest node count (default 8)");
  bench->add_option("--voters", config.voters, "voters per instance (default 100)");
  bench->add_option("--profiles", config.profiles_per_graph, "base profiles per graph (default 10)");
  bench->add_option("--rules", bench_rules, "rules to run (default sum:simple sum:cc egal:simple)");
  bench->add_option("--timeout", config.timeout_s, "per-instance timeout in seconds (default 1200)");
  bench->add_option("--seed", config.seed, "master seed (default from CDO_SEED)");
  bench->add_option("--workers", config.workers, "parallel workers (default 1)");
  bench->add_flag("--include-rank", include_rank, "also run rank:simple");
  bench->add_flag("--quiet", quiet, "no progress output");
  bench->add_option("-o,--out", out_path, "results CSV")->required();
  bench->add_option("--means", means_out, "aggregated mean-time CSV");
  bench->add_option("--svg", svg_out, "mean-time chart (SVG)");

  // check-equiv
  auto* ce = app.add_subcommand("check-equiv", "empirically test the rule equivalences");
  std::string which = "median-simple";
  std::size_t trials = 200;
  ce->add_option("--which", which, "median-simple|median-weighted|ranked-agenda")->required();
  ce->add_option("--trials", trials, "number of random instances (default 200)");
  ce->add_option("--seed", seed, "RNG seed (default from CDO_SEED)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed())
      return cmd_solve(rule_name, instance_path, flag_one && !flag_all, budget);
    if (encode->parsed()) {
      if (enc_budget_cmd->parsed()) {
        cdo::CdoInstance instance = cdo::io::load_instance(instance_path, false);
        apply_budget_flag(instance, enc_budget);
        cdo::io::save_instance(out_path, instance);
      } else if (enc_tree->parsed()) {
        cdo::Graph graph = cdo::io::load_graph(graph_path);
        if (!cdo::is_connected(graph))
          std::cerr << "warning: graph is disconnected; the feasible set is empty\n";
        auto [agenda, feasibility] = cdo::encode_spanning_tree(graph);
        cdo::CdoInstance instance;
        instance.agenda = std::move(agenda);
        instance.feasibility = std::move(feasibility);
        if (!profile_path.empty()) instance.profile = profile_from_json_file(profile_path);
        cdo::io::save_instance(out_path, instance);
      } else {
        cdo::io::ScheduleInput input = cdo::io::schedule_from_json(cdo::io::read_json_file(schedule_path));
        auto [agenda, feasibility] = cdo::encode_schedule(input.spec);
        cdo::CdoInstance instance;
        instance.agenda = std::move(agenda);
        instance.feasibility = std::move(feasibility);
        instance.profile.ballots = std::move(input.ballots);
        cdo::io::save_instance(out_path, instance);
      }
      std::cout << "wrote " << out_path << "\n";
      return kExitOk;
    }
    if (exp->parsed()) return cmd_export(rule_name, instance_path, out_path, budget);
    if (gg->parsed()) {
      cdo::Graph graph = cdo::gen_connected_graph(gg_nodes, gg_edges, seed);
      cdo::io::write_text_file(out_path, cdo::io::graph_to_text(graph));
      std::cout << "wrote " << out_path << "\n";
      return kExitOk;
    }
    if (gp->parsed()) {
      cdo::BaseProfile bp = cdo::gen_base_profile(gp_voters, gp_items, seed);
      cdo::io::json j;
      j["format"] = cdo::io::kFormatTag;
      if (gp_p) {
        cdo::Profile profile = cdo::threshold_profile(bp, *gp_p);
        j["profile"] = cdo::io::json::array();
        for (const auto& b : profile.ballots) j["profile"].push_back(b.bits);
      } else {
        j["base"] = cdo::io::json::array();
        for (std::size_t i = 0; i < bp.voters; ++i) {
          cdo::io::json row = cdo::io::json::array();
          for (std::size_t e = 0; e < bp.items; ++e) row.push_back(bp.at(i, e));
          j["base"].push_back(std::move(row));
        }
      }
      cdo::io::write_json_file(out_path, j);
      std::cout << "wrote " << out_path << "\n";
      return kExitOk;
    }
    if (bench->parsed()) {
      if (!bench_rules.empty()) config.rules.clear();
      for (const auto& r : bench_rules) config.rules.push_back(cdo::parse_rule(r));
      if (include_rank) config.rules.push_back({cdo::Operator::Rank, cdo::SetScoring::Simple});
      return cmd_bench(config, out_path, means_out, svg_out, quiet);
    }
    if (ce->parsed()) {
      cdo::EquivReport report = cdo::run_equiv_check(cdo::parse_equiv_check(which), trials, seed);
      if (report.failures == 0) {
        std::cout << "PASS " << which << ": " << report.trials << " trials, 0 failures\n";
        return kExitOk;
      }
      std::cout << "FAIL " << which << ": " << report.failures << "/" << report.trials
                << " failures\n"
                << report.first_counterexample << "\n";
      return kExitUsage;
    }
  } catch (const cdo::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const cdo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

#ifndef CDO_RULES_HPP
#define CDO_RULES_HPP

#include "cdo/core.hpp"
#include "cdo/scoring.hpp"
#include "cdo/solver.hpp"

namespace cdo {

enum class Operator { Sum, Egal, Rank };

inline const char* to_string(Operator op) {
  switch (op) {
    case Operator::Sum: return "sum";
    case Operator::Egal: return "egal";
    case Operator::Rank: return "rank";
  }
  return "?";
}

inline Operator parse_operator(const std::string& name) {
  if (name == "sum") return Operator::Sum;
  if (name == "egal") return Operator::Egal;
  if (name == "rank") return Operator::Rank;
  throw StructuralError("unknown operator: " + name);
}

/// A rule is an operator paired with a set scoring, e.g. "sum:simple".
struct RuleSpec {
  Operator op = Operator::Sum;
  SetScoring scoring = SetScoring::Simple;

  std::string name() const {
    return std::string(to_string(op)) + ":" + to_string(scoring);
  }
};

inline RuleSpec parse_rule(const std::string& name) {
  auto colon = name.find(':');
  if (colon == std::string::npos)
    throw StructuralError("rule must be <operator>:<scoring>, got: " + name);
  return RuleSpec{parse_operator(name.substr(0, colon)), parse_scoring(name.substr(colon + 1))};
}

enum class Mode { EnumerateAll, OneWitness };

struct RankStep {
  std::string item;
  bool accepted = false;
};

struct RuleResult {
  std::vector<Outcome> outcomes;  // lexicographically sorted, non-empty
  Int optimum = 0;
  std::vector<RankStep> trace;  // ranked rules only
};

namespace rule_detail {

inline IlpModel model_for(Operator op, SetScoring scoring, const CdoInstance& instance) {
  if (scoring == SetScoring::CC)
    return encode_cc(op == Operator::Sum ? CcOperator::Sum : CcOperator::Egal, instance);
  return op == Operator::Sum ? encode_sum(scoring, instance) : encode_egal(scoring, instance);
}

inline RuleResult optimise(Operator op, SetScoring scoring, const CdoInstance& instance,
                           Mode mode, Deadline deadline) {
  instance.validate();
  IlpModel model = model_for(op, scoring, instance);
  RuleResult result;
  if (mode == Mode::OneWitness) {
    SolveOutcome sol = branch_and_bound(model, {}, deadline);
    if (sol.status == SolveStatus::TimedOut) throw Error("solve timed out");
    if (sol.status == SolveStatus::Infeasible)
      throw InfeasibleError("the feasibility constraints admit no outcome");
    result.optimum = sol.optimum;
    result.outcomes.push_back(Outcome{sol.items, sol.optimum});
  } else {
    OptimaSet opt = enumerate_optima(model, kDefaultCoWinnerCap, deadline);
    if (opt.status == SolveStatus::TimedOut) throw Error("solve timed out");
    if (opt.status == SolveStatus::Infeasible)
      throw InfeasibleError("the feasibility constraints admit no outcome");
    result.optimum = opt.optimum;
    for (const auto& bits : opt.witnesses) result.outcomes.push_back(Outcome{bits, opt.optimum});
  }
  return result;
}

}  // namespace rule_detail

/// arg max over feasible outcomes of the summed voter scores.
inline RuleResult rule_sum(SetScoring scoring, const CdoInstance& instance,
                           Mode mode = Mode::EnumerateAll, Deadline deadline = {}) {
  return rule_detail::optimise(Operator::Sum, scoring, instance, mode, deadline);
}

/// arg max over feasible outcomes of the least satisfied voter's score.
inline RuleResult rule_egal(SetScoring scoring, const CdoInstance& instance,
                            Mode mode = Mode::EnumerateAll, Deadline deadline = {}) {
  return rule_detail::optimise(Operator::Egal, scoring, instance, mode, deadline);
}

/// Greedy ranked rule: repeatedly pick the unprocessed item whose acceptance
/// maximises the profile score, accept it when the partial outcome restricted
/// to the processed items extends to a feasible outcome. Ties go to the
/// smallest agenda index.
inline RuleResult rule_rank(SetScoring scoring, const CdoInstance& instance) {
  instance.validate();
  const std::size_t m = instance.agenda.size();
  if (!is_extendable({}, instance.feasibility, instance.agenda))
    throw InfeasibleError("the feasibility constraints admit no outcome");

  Bits outcome(m, 0);
  std::vector<bool> processed(m, false);
  RuleResult result;
  std::span<const Int> weights(instance.agenda.weights);
  for (std::size_t round = 0; round < m; ++round) {
    std::size_t pick = m;
    Int pick_score = 0;
    for (std::size_t a = 0; a < m; ++a) {
      if (processed[a]) continue;
      Bits plus = outcome;
      plus[a] = 1;
      Int s = profile_sum(scoring, instance.profile, plus, weights);
      if (pick == m || s > pick_score) {
        pick = a;
        pick_score = s;
      }
    }
    std::map<std::string, int> partial;
    for (std::size_t a = 0; a < m; ++a)
      if (processed[a]) partial[instance.agenda.items[a]] = outcome[a];
    partial[instance.agenda.items[pick]] = 1;
    bool accepted = is_extendable(partial, instance.feasibility, instance.agenda);
    if (accepted) outcome[pick] = 1;
    processed[pick] = true;
    result.trace.push_back(RankStep{instance.agenda.items[pick], accepted});
  }
  result.optimum = profile_sum(scoring, instance.profile, outcome, weights);
  result.outcomes.push_back(Outcome{outcome, result.optimum});
  return result;
}

inline RuleResult apply_rule(RuleSpec rule, const CdoInstance& instance,
                             Mode mode = Mode::EnumerateAll, Deadline deadline = {}) {
  switch (rule.op) {
    case Operator::Sum: return rule_sum(rule.scoring, instance, mode, deadline);
    case Operator::Egal: return rule_egal(rule.scoring, instance, mode, deadline);
    case Operator::Rank: return rule_rank(rule.scoring, instance);
  }
  throw StructuralError("unknown operator");
}

}  // namespace cdo

#endif  // CDO_RULES_HPP

#ifndef CDO_SOLVER_HPP
#define CDO_SOLVER_HPP

#include <cctype>
#include <chrono>
#include <set>
#include <sstream>

#include "cdo/core.hpp"
#include "cdo/scoring.hpp"

namespace cdo {

/// A 0/1 maximisation model over the agenda items plus bounded-integer
/// auxiliary variables. `objective_offset` is a tracked constant added back
/// to every reported optimum (used by the swap scorings).
struct IlpModel {
  Agenda agenda;
  std::map<std::string, IntBounds> aux;
  std::map<std::string, Int> objective;
  std::vector<LinearConstraint> constraints;
  Int objective_offset = 0;
};

namespace model_detail {

inline std::string fresh_aux_name(const IlpModel& model, const std::string& base) {
  std::string name = base;
  while (model.agenda.index_of(name) || model.aux.count(name)) name = "_" + name;
  return name;
}

inline Int effective_weight(SetScoring scoring, const Agenda& agenda, std::size_t a) {
  return (scoring == SetScoring::Weight || scoring == SetScoring::WSwap) ? agenda.weights[a] : 1;
}

inline IlpModel base_model(const CdoInstance& instance) {
  IlpModel model;
  model.agenda = instance.agenda;
  model.aux = instance.feasibility.aux_vars;
  model.constraints = instance.feasibility.constraints;
  return model;
}

}  // namespace model_detail

/// Sum-operator objective for the four linear scorings: the coefficient of
/// item a is its (weighted) approval count; the swap variants reuse the same
/// coefficients with a constant offset.
inline IlpModel encode_sum(SetScoring scoring, const CdoInstance& instance) {
  if (scoring == SetScoring::CC)
    throw StructuralError("the cc scoring is not linear in the outcome; use encode_cc");
  IlpModel model = model_detail::base_model(instance);
  const std::size_t m = instance.agenda.size();
  std::vector<Int> coeff(m, 0);
  Int offset = 0;
  for (const auto& ballot : instance.profile.ballots)
    for (std::size_t a = 0; a < m; ++a) {
      if (!ballot.bits[a]) continue;
      Int w = model_detail::effective_weight(scoring, instance.agenda, a);
      coeff[a] = checked_add(coeff[a], w);
      if (scoring == SetScoring::Swap || scoring == SetScoring::WSwap)
        offset = checked_add(offset, -w);
    }
  for (std::size_t a = 0; a < m; ++a)
    if (coeff[a] != 0) model.objective[instance.agenda.items[a]] = coeff[a];
  model.objective_offset = offset;
  return model;
}

/// Egalitarian objective: maximise t subject to every voter's linear score
/// expression being at least t.
inline IlpModel encode_egal(SetScoring scoring, const CdoInstance& instance) {
  if (scoring == SetScoring::CC)
    throw StructuralError("the cc scoring is not linear in the outcome; use encode_cc");
  IlpModel model = model_detail::base_model(instance);
  const std::size_t m = instance.agenda.size();
  Int total_abs = 0;
  for (std::size_t a = 0; a < m; ++a) {
    Int w = model_detail::effective_weight(scoring, instance.agenda, a);
    total_abs = checked_add(total_abs, w < 0 ? -w : w);
  }
  Int big = checked_mul(total_abs == 0 ? 1 : total_abs, (Int)(m == 0 ? 1 : m));
  const std::string t = model_detail::fresh_aux_name(model, "t");
  model.aux[t] = IntBounds{-big, big};
  model.objective[t] = 1;
  for (const auto& ballot : instance.profile.ballots) {
    // score_i(X) = sum coeff * x + const_i; require score_i(X) >= t.
    LinearConstraint c;
    Int constant = 0;
    for (std::size_t a = 0; a < m; ++a) {
      if (!ballot.bits[a]) continue;
      Int w = model_detail::effective_weight(scoring, instance.agenda, a);
      if (scoring == SetScoring::Swap || scoring == SetScoring::WSwap)
        constant = checked_add(constant, -w);
      c.terms[instance.agenda.items[a]] = w;
    }
    c.terms[t] = -1;
    c.sense = Sense::GreaterEq;
    c.rhs = -constant;
    model.constraints.push_back(std::move(c));
  }
  return model;
}

enum class CcOperator { Sum, Egal };

/// Chamberlin-Courant objectives: a binary coverage variable per voter,
/// capped by the number of approved items in the outcome.

inline IlpModel encode_cc(CcOperator op, const CdoInstance& instance) {
  IlpModel model = model_detail::base_model(instance);
  const std::size_t m = instance.agenda.size();
  const std::size_t n = instance.profile.size();
  std::vector<std::string> zs;
  for (std::size_t i = 0; i < n; ++i) {
    std::ostringstream name;
    name << "z" << i;
    const std::string z = model_detail::fresh_aux_name(model, name.str());
    model.aux[z] = IntBounds{0, 1};
    zs.push_back(z);
    LinearConstraint c;  // z_i <= sum of approved items (empty ballot forces z_i = 0)
    c.terms[z] = 1;
    for (std::size_t a = 0; a < m; ++a)
      if (instance.profile.ballots[i].bits[a]) c.terms[instance.agenda.items[a]] = -1;
    c.sense = Sense::LessEq;
    c.rhs = 0;
    model.constraints.push_back(std::move(c));
  }
  if (op == CcOperator::Sum) {
    for (const auto& z : zs) model.objective[z] = 1;
  } else {
    const std::string t = model_detail::fresh_aux_name(model, "t");
    model.aux[t] = IntBounds{0, 1};
    model.objective[t] = 1;
    for (const auto& z : zs) {
      LinearConstraint c;
      c.terms[z] = 1;
      c.terms[t] = -1;
      c.sense = Sense::GreaterEq;
      c.rhs = 0;
      model.constraints.push_back(std::move(c));
    }
  }
  return model;
}

enum class SolveStatus { Optimal, Infeasible, TimedOut };

struct SolveOutcome {
  SolveStatus status = SolveStatus::Infeasible;
  Int optimum = 0;  // includes the model's objective offset
  Bits items;
};

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

namespace model_detail {

inline detail::System to_system(const IlpModel& model) {
  return detail::build_system(model.agenda, model.constraints, model.aux, model.objective);
}

inline Bits project_items(const IlpModel& model, const std::vector<Int>& assignment) {
  Bits bits(model.agenda.size());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = (std::uint8_t)assignment[i];
  return bits;
}

}  // namespace model_detail

/// Exact maximisation by depth-first branch and bound. `fixed` pins item
/// variables by name, which realises the extendability queries.
inline SolveOutcome branch_and_bound(const IlpModel& model,
                                     const std::map<std::string, int>& fixed = {},
                                     Deadline deadline = {}) {
  detail::System sys = model_detail::to_system(model);
  std::vector<std::pair<int, Int>> pins;
  for (const auto& [name, val] : fixed) {
    auto idx = model.agenda.index_of(name);
    if (!idx) throw StructuralError("fixed assignment names unknown item: " + name);
    pins.emplace_back((int)*idx, (Int)val);
  }
  detail::SolveOptions opts;
  opts.deadline = deadline;
  detail::SolveResult res = detail::solve_max(sys, pins, opts);
  SolveOutcome out;
  if (res.timed_out && !res.feasible) {
    out.status = SolveStatus::TimedOut;
    return out;
  }
  if (!res.feasible) return out;
  out.status = res.timed_out ? SolveStatus::TimedOut : SolveStatus::Optimal;
  out.optimum = checked_add(res.optimum, model.objective_offset);
  out.items = model_detail::project_items(model, res.assignment);
  return out;
}

struct OptimaSet {
  SolveStatus status = SolveStatus::Infeasible;
  Int optimum = 0;
  std::vector<Bits> witnesses;  // item projections, lexicographically sorted
};

constexpr std::size_t kDefaultCoWinnerCap = 1000;

/// All optima of the model, found by repeated solves with a no-good cut over
/// the item variables after each witness.
inline OptimaSet enumerate_optima(const IlpModel& model, std::size_t cap = kDefaultCoWinnerCap,
                                  Deadline deadline = {}) {
  IlpModel work = model;
  OptimaSet out;
  std::set<Bits> seen;
  bool first = true;
  while (seen.size() < cap) {
    SolveOutcome sol = branch_and_bound(work, {}, deadline);
    if (sol.status == SolveStatus::TimedOut) {
      out.status = SolveStatus::TimedOut;
      return out;
    }
    if (sol.status == SolveStatus::Infeasible) break;
    if (first) {
      out.optimum = sol.optimum;
      out.status = SolveStatus::Optimal;
      first = false;
    } else if (sol.optimum < out.optimum) {
      break;
    }
    if (!seen.insert(sol.items).second) break;  // duplicate projection: distinct aux only
    LinearConstraint cut;
    Int rhs = 1;
    for (std::size_t a = 0; a < sol.items.size(); ++a) {
      if (sol.items[a]) {
        cut.terms[model.agenda.items[a]] = -1;
        rhs -= 1;
      } else {
        cut.terms[model.agenda.items[a]] = 1;
      }
    }
    cut.sense = Sense::GreaterEq;
    cut.rhs = rhs;
    work.constraints.push_back(std::move(cut));
  }
  out.witnesses.assign(seen.begin(), seen.end());
  return out;
}

namespace model_detail {

inline std::string sanitize_lp_name(const std::string& raw, std::set<std::string>& used) {
  std::string s;
  for (char c : raw)
    s += (std::isalnum((unsigned char)c) || c == '_') ? c : '_';
  if (s.empty() || std::isdigit((unsigned char)s[0])) s = "v_" + s;
  std::string candidate = s;
  int k = 1;
  while (!used.insert(candidate).second) candidate = s + "_" + std::to_string(k++);
  return candidate;
}

inline void append_terms(std::ostringstream& os, const std::vector<std::pair<std::string, Int>>& terms) {
  bool first = true;
  for (const auto& [name, coeff] : terms) {
    if (coeff == 0) continue;
    Int mag = coeff < 0 ? -coeff : coeff;
    if (first) {
      if (coeff < 0) os << "- ";
      first = false;
    } else {
      os << (coeff < 0 ? " - " : " + ");
    }
    if (mag != 1) os << mag << " ";
    os << name;
  }
}

}  // namespace model_detail

/// Serialises the model in the standard LP text format with deterministic
/// variable and row ordering.
inline std::string export_lp(const IlpModel& model) {
  std::set<std::string> used;
  std::map<std::string, std::string> lp_name;
  std::vector<std::string> item_names, aux_names;
  for (const auto& id : model.agenda.items) {
    lp_name[id] = model_detail::sanitize_lp_name(id, used);
    item_names.push_back(id);
  }
  for (const auto& [id, b] : model.aux) {
    (void)b;
    lp_name[id] = model_detail::sanitize_lp_name(id, used);
    aux_names.push_back(id);
  }

  std::ostringstream os;
  os << "Maximize\n obj:";
  {
    std::vector<std::pair<std::string, Int>> terms;
    for (const auto& id : item_names)
      if (auto it = model.objective.find(id); it != model.objective.end())
        terms.emplace_back(lp_name[id], it->second);
    for (const auto& id : aux_names)
      if (auto it = model.objective.find(id); it != model.objective.end())
        terms.emplace_back(lp_name[id], it->second);
    if (!terms.empty()) {
      os << " ";
      model_detail::append_terms(os, terms);
    }
    if (model.objective_offset != 0)
      os << (model.objective_offset < 0 ? " - " : " + ")
         << (model.objective_offset < 0 ? -model.objective_offset : model.objective_offset);
  }
  os << "\nSubject To\n";
  for (std::size_t i = 0; i < model.constraints.size(); ++i) {
    const auto& c = model.constraints[i];
    os << " c" << i << ": ";
    std::vector<std::pair<std::string, Int>> terms;
    for (const auto& [id, coeff] : c.terms) terms.emplace_back(lp_name.at(id), coeff);
    model_detail::append_terms(os, terms);
    os << " " << to_string(c.sense) << " " << c.rhs << "\n";
  }
  std::vector<std::string> binaries, generals;
  std::ostringstream bounds;
  for (const auto& id : item_names) binaries.push_back(lp_name[id]);
  for (const auto& id : aux_names) {
    const auto& b = model.aux.at(id);
    if (b.lo == 0 && b.hi == 1) {
      binaries.push_back(lp_name[id]);
    } else {
      generals.push_back(lp_name[id]);
      bounds << " " << b.lo << " <= " << lp_name[id] << " <= " << b.hi << "\n";
    }
  }
  if (!generals.empty()) os << "Bounds\n" << bounds.str();
  if (!binaries.empty()) {
    os << "Binary\n";
    for (const auto& n : binaries) os << " " << n << "\n";
  }
  if (!generals.empty()) {
    os << "General\n";
    for (const auto& n : generals) os << " " << n << "\n";
  }
  os << "End\n";
  return os.str();
}

}  // namespace cdo

#endif  // CDO_SOLVER_HPP

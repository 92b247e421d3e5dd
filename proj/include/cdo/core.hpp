#ifndef CDO_CORE_HPP
#define CDO_CORE_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdo {

using Int = std::int64_t;
using Bits = std::vector<std::uint8_t>;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: length mismatches, unknown variable names, bad bounds.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// The feasibility constraints admit no outcome.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("integer overflow in addition");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("integer overflow in multiplication");
  return r;
}

/// Ordered list of named items with integer weights. Item k corresponds to
/// vector position k everywhere in the library.
struct Agenda {
  std::vector<std::string> items;
  std::vector<Int> weights;

  Agenda() = default;
  Agenda(std::vector<std::string> items_, std::vector<Int> weights_)
      : items(std::move(items_)), weights(std::move(weights_)) {
    if (items.size() != weights.size())
      throw StructuralError("agenda items and weights differ in length");
    for (std::size_t i = 0; i < items.size(); ++i)
      if (!index_.emplace(items[i], i).second)
        throw StructuralError("duplicate agenda item id: " + items[i]);
  }

  std::size_t size() const { return items.size(); }

  std::optional<std::size_t> index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::map<std::string, std::size_t> index_;
};

/// A 0/1 approval vector; 1 means approval, 0 non-approval or abstention.
struct Ballot {
  Bits bits;

  std::size_t ones() const {
    std::size_t c = 0;
    for (auto b : bits) c += b;
    return c;
  }
};

/// A list of n >= 1 ballots, all of the same length.
struct Profile {
  std::vector<Ballot> ballots;

  std::size_t size() const { return ballots.size(); }

  void validate(std::size_t m) const {
    if (ballots.empty()) throw StructuralError("profile must contain at least one ballot");
    for (const auto& b : ballots) {
      if (b.bits.size() != m) throw StructuralError("ballot length differs from agenda size");
      for (auto v : b.bits)
        if (v > 1) throw StructuralError("ballot entries must be 0 or 1");
    }
  }
};

enum class Sense { LessEq, GreaterEq, Eq };

inline const char* to_string(Sense s) {
  switch (s) {
    case Sense::LessEq: return "<=";
    case Sense::GreaterEq: return ">=";
    case Sense::Eq: return "=";
  }
  return "?";
}

/// A linear constraint sum(coeff * var) sense rhs over item and auxiliary
/// variables, identified by name.
struct LinearConstraint {
  std::map<std::string, Int> terms;
  Sense sense = Sense::LessEq;
  Int rhs = 0;
};

struct IntBounds {
  Int lo = 0;
  Int hi = 0;
};

/// A conjunction of linear constraints, possibly over auxiliary
/// bounded-integer variables. The induced feasible set over the agenda is the
/// projection onto item variables of all satisfying integer assignments.
struct ConstraintSet {
  std::vector<LinearConstraint> constraints;
  std::map<std::string, IntBounds> aux_vars;

  void validate(const Agenda& agenda) const {
    for (const auto& [name, b] : aux_vars) {
      if (b.lo > b.hi)
        throw StructuralError("auxiliary variable '" + name + "' has lo > hi");
      if (agenda.index_of(name))
        throw StructuralError("auxiliary variable '" + name + "' shadows an agenda item");
    }
    for (const auto& c : constraints)
      for (const auto& [var, coeff] : c.terms) {
        (void)coeff;
        if (!agenda.index_of(var) && !aux_vars.count(var))
          throw StructuralError("unknown variable in constraint: " + var);
      }
  }
};

/// A candidate collective outcome, optionally annotated with a rule score.
struct Outcome {
  Bits bits;
  std::optional<Int> score;

  friend bool operator==(const Outcome& a, const Outcome& b) { return a.bits == b.bits; }
  friend bool operator<(const Outcome& a, const Outcome& b) { return a.bits < b.bits; }
};

}  // namespace cdo

#include "cdo/detail/search.hpp"

namespace cdo {

/// True iff some assignment of the auxiliary variables within bounds
/// satisfies every constraint with item variables fixed to `bits`.
inline bool check_assignment(const Bits& bits, const ConstraintSet& cs, const Agenda& agenda) {
  if (bits.size() != agenda.size())
    throw StructuralError("assignment length differs from agenda size");
  cs.validate(agenda);
  detail::System sys = detail::build_system(agenda, cs);
  std::vector<std::pair<int, Int>> fixed;
  fixed.reserve(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) fixed.emplace_back((int)i, (Int)bits[i]);
  return detail::solve_max(sys, fixed).feasible;
}

/// True iff some full assignment agreeing with `partial` on its domain
/// satisfies `cs`. Realises the restriction-membership test of the ranked
/// rules.
inline bool is_extendable(const std::map<std::string, int>& partial, const ConstraintSet& cs,
                          const Agenda& agenda) {
  cs.validate(agenda);
  detail::System sys = detail::build_system(agenda, cs);
  std::vector<std::pair<int, Int>> fixed;
  for (const auto& [id, val] : partial) {
    auto idx = agenda.index_of(id);
    if (!idx) throw StructuralError("partial assignment names unknown item: " + id);
    if (val != 0 && val != 1) throw StructuralError("partial assignment values must be 0 or 1");
    fixed.emplace_back((int)*idx, (Int)val);
  }
  return detail::solve_max(sys, fixed).feasible;
}

constexpr std::size_t kDefaultEnumerationCap = 24;

/// All feasible outcomes, deduplicated, in lexicographic order of bits.
/// Serves as the reference oracle for every rule; refuses above the cap.
inline std::vector<Outcome> enumerate_feasible(const ConstraintSet& cs, const Agenda& agenda,
                                               std::size_t cap = kDefaultEnumerationCap) {
  if (agenda.size() > cap)
    throw Error("agenda size " + std::to_string(agenda.size()) +
                " exceeds the enumeration cap (" + std::to_string(cap) +
                "); use the branch-and-bound path instead");
  cs.validate(agenda);
  detail::System sys = detail::build_system(agenda, cs);
  const std::size_t m = agenda.size();
  std::vector<Outcome> out;
  Bits bits(m, 0);

  detail::Domains root = detail::initial_domains(sys);
  // Depth-first over items in index order, 0 before 1, so output is already
  // lexicographically sorted.
  auto rec = [&](auto&& self, std::size_t depth, const detail::Domains& d) -> void {
    detail::Domains cur = d;
    if (!detail::propagate(sys, cur)) return;
    if (depth == m) {
      if (detail::aux_feasible(sys, cur)) out.push_back(Outcome{bits, std::nullopt});
      return;
    }
    for (Int v = 0; v <= 1; ++v) {
      if (v < cur.lo[depth] || v > cur.hi[depth]) continue;
      detail::Domains child = cur;
      child.lo[depth] = child.hi[depth] = v;
      bits[depth] = (std::uint8_t)v;
      self(self, depth + 1, child);
    }
  };
  rec(rec, 0, root);
  return out;
}

/// Encodes an explicit set of allowed outcomes as linear constraints:
/// one no-good cut per excluded 0/1 vector. Desk-scale only (m <= cap).
inline ConstraintSet constraints_from_outcomes(const std::vector<Bits>& allowed,
                                               const Agenda& agenda) {
  const std::size_t m = agenda.size();
  ConstraintSet cs;
  std::vector<Bits> sorted = allowed;
  std::sort(sorted.begin(), sorted.end());
  if (m > 20) throw Error("explicit outcome-set encoding limited to 20 items");
  Bits cand(m, 0);
  for (std::uint64_t code = 0; code < (1ull << m); ++code) {
    for (std::size_t i = 0; i < m; ++i) cand[i] = (std::uint8_t)((code >> i) & 1);
    if (std::binary_search(sorted.begin(), sorted.end(), cand)) continue;
    LinearConstraint cut;
    Int rhs = 1;
    for (std::size_t i = 0; i < m; ++i) {
      if (cand[i]) {
        cut.terms[agenda.items[i]] = -1;
        rhs -= 1;
      } else {
        cut.terms[agenda.items[i]] = 1;
      }
    }
    cut.sense = Sense::GreaterEq;
    cut.rhs = rhs;
    cs.constraints.push_back(std::move(cut));
  }
  return cs;
}

/// A full collective discrete optimisation instance. Every ballot must
/// satisfy the rationality constraints; violations are load errors.
struct CdoInstance {
  Agenda agenda;
  ConstraintSet rationality;
  ConstraintSet feasibility;
  Profile profile;

  void validate() const {
    rationality.validate(agenda);
    feasibility.validate(agenda);
    profile.validate(agenda.size());
    for (std::size_t i = 0; i < profile.ballots.size(); ++i)
      if (!check_assignment(profile.ballots[i].bits, rationality, agenda))
        throw StructuralError("ballot " + std::to_string(i) +
                              " violates the rationality constraints");
  }
};

}  // namespace cdo

#endif  // CDO_CORE_HPP

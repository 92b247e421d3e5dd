#ifndef CDO_SCORING_HPP
#define CDO_SCORING_HPP

#include <limits>
#include <span>
#include <string>

#include "cdo/core.hpp"

namespace cdo {

/// The five set scorings measuring a voter's satisfaction with an outcome.
enum class SetScoring { Simple, Weight, Swap, WSwap, CC };

inline const char* to_string(SetScoring s) {
  switch (s) {
    case SetScoring::Simple: return "simple";
    case SetScoring::Weight: return "weight";
    case SetScoring::Swap: return "swap";
    case SetScoring::WSwap: return "w-swap";
    case SetScoring::CC: return "cc";
  }
  return "?";
}

inline SetScoring parse_scoring(const std::string& name) {
  if (name == "simple") return SetScoring::Simple;
  if (name == "weight") return SetScoring::Weight;
  if (name == "swap") return SetScoring::Swap;
  if (name == "w-swap" || name == "w_swap" || name == "wswap") return SetScoring::WSwap;
  if (name == "cc") return SetScoring::CC;
  throw StructuralError("unknown set scoring: " + name);
}

/// One voter's score for a candidate outcome.
///   simple:  |B ∩ C|            weight:  sum of w_a over B ∩ C
///   swap:   -|B \ C|            w-swap: -sum of w_a over B \ C
///   cc:      1 iff B ∩ C nonempty
inline Int score(SetScoring kind, const Bits& ballot, const Bits& outcome,
                 std::span<const Int> weights) {
  const std::size_t m = ballot.size();
  if (outcome.size() != m) throw StructuralError("ballot and outcome lengths differ");
  const bool weighted = kind == SetScoring::Weight || kind == SetScoring::WSwap;
  if (weighted && weights.size() != m)
    throw StructuralError("weight vector length differs from ballot length");
  Int total = 0;
  for (std::size_t a = 0; a < m; ++a) {
    if (!ballot[a]) continue;
    switch (kind) {
      case SetScoring::Simple:
        if (outcome[a]) total = checked_add(total, 1);
        break;
      case SetScoring::Weight:
        if (outcome[a]) total = checked_add(total, weights[a]);
        break;
      case SetScoring::Swap:
        if (!outcome[a]) total = checked_add(total, -1);
        break;
      case SetScoring::WSwap:
        if (!outcome[a]) total = checked_add(total, checked_mul(-1, weights[a]));
        break;
      case SetScoring::CC:
        if (outcome[a]) return 1;
        break;
    }
  }
  return total;
}

/// Sum of the scoring over all ballots (the sum operator's objective).
inline Int profile_sum(SetScoring kind, const Profile& profile, const Bits& outcome,
                       std::span<const Int> weights) {
  Int total = 0;
  for (const auto& b : profile.ballots)
    total = checked_add(total, score(kind, b.bits, outcome, weights));
  return total;
}

/// Minimum of the scoring over all ballots (the egalitarian objective).
inline Int profile_min(SetScoring kind, const Profile& profile, const Bits& outcome,
                       std::span<const Int> weights) {
  if (profile.ballots.empty()) throw StructuralError("profile must contain at least one ballot");
  Int best = std::numeric_limits<Int>::max();
  for (const auto& b : profile.ballots)
    best = std::min(best, score(kind, b.bits, outcome, weights));
  return best;
}

}  // namespace cdo

#endif  // CDO_SCORING_HPP

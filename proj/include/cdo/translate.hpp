#ifndef CDO_TRANSLATE_HPP
#define CDO_TRANSLATE_HPP

#include <numeric>

#include "cdo/core.hpp"

namespace cdo {

using SignVector = std::vector<std::int8_t>;  // entries in {-1, +1}

/// A desk-scale judgment aggregation instance in the weighted-issues style:
/// named issues with positive integer weights, {-1,+1} views, and an
/// explicit output space. Exists as an oracle for the rule equivalences, not
/// as a production solving path.
struct JaInstance {
  std::vector<std::string> issues;
  std::vector<Int> weights;
  std::vector<SignVector> views;
  std::vector<SignVector> output_space;

  void validate() const {
    if (issues.size() != weights.size())
      throw StructuralError("issue and weight counts differ");
    for (Int w : weights)
      if (w <= 0) throw StructuralError("issue weights must be positive integers");
    if (output_space.empty()) throw StructuralError("output space must be non-empty");
    auto check = [&](const SignVector& v, const char* what) {
      if (v.size() != issues.size()) throw StructuralError(std::string(what) + " has wrong length");
      for (auto s : v)
        if (s != -1 && s != 1) throw StructuralError(std::string(what) + " entries must be -1 or +1");
    };
    for (const auto& v : views) check(v, "view");
    for (const auto& x : output_space) check(x, "output");
  }
};

/// Brute-force median rule: all outputs maximising total weighted agreement
/// with the profile.
inline std::vector<SignVector> median_rule_ja(const JaInstance& ja) {
  ja.validate();
  if (ja.views.empty()) throw StructuralError("median rule needs at least one view");
  std::vector<SignVector> best;
  Int best_score = 0;
  for (const auto& x : ja.output_space) {
    Int s = 0;
    for (const auto& view : ja.views)
      for (std::size_t k = 0; k < ja.issues.size(); ++k)
        if (view[k] == x[k]) s = checked_add(s, ja.weights[k]);
    if (best.empty() || s > best_score) {
      best.assign(1, x);
      best_score = s;
    } else if (s == best_score) {
      best.push_back(x);
    }
  }
  std::sort(best.begin(), best.end());
  best.erase(std::unique(best.begin(), best.end()), best.end());
  return best;
}

/// Ranked agenda oracle: issues in descending order of absolute majority
/// margin (unweighted head count, ties by issue index) are fixed to their
/// majority value when consistent with the output space, else to the
/// opposite value. Zero margins go to +1.
inline SignVector ja_ranked_agenda(const JaInstance& ja) {
  ja.validate();
  if (ja.views.empty()) throw StructuralError("ranked agenda needs at least one view");
  const std::size_t k = ja.issues.size();
  std::vector<Int> margin(k, 0);
  for (const auto& view : ja.views)
    for (std::size_t i = 0; i < k; ++i) margin[i] += view[i];
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    Int ma = margin[a] < 0 ? -margin[a] : margin[a];
    Int mb = margin[b] < 0 ? -margin[b] : margin[b];
    return ma > mb;
  });
  std::vector<std::int8_t> fixed(k, 0);  // 0 = undecided
  auto consistent = [&]() {
    for (const auto& x : ja.output_space) {
      bool ok = true;
      for (std::size_t i = 0; i < k; ++i)
        if (fixed[i] != 0 && x[i] != fixed[i]) {
          ok = false;
          break;
        }
      if (ok) return true;
    }
    return false;
  };
  for (std::size_t i : order) {
    std::int8_t majority = margin[i] >= 0 ? 1 : -1;
    fixed[i] = majority;
    if (!consistent()) fixed[i] = (std::int8_t)-majority;
  }
  return SignVector(fixed.begin(), fixed.end());
}

/// Whether JA issue weights carry over as item weights or collapse to 1.
/// Unit weighting matches the unweighted median against sum(simple);
/// item weights match the weighted median against sum(weight).
enum class JaWeighting { Unit, ItemWeights };

/// JA to CDO: two agenda items per issue (acceptance and rejection), views
/// become ballots, and the explicit output space becomes exactly-one rows
/// plus no-good cuts.
inline CdoInstance ja_to_cdo(const JaInstance& ja) {
  ja.validate();
  const std::size_t k = ja.issues.size();
  if (k > 10) throw Error("ja_to_cdo limited to 10 issues (explicit output space)");
  std::vector<std::string> items;
  std::vector<Int> weights;
  for (std::size_t i = 0; i < k; ++i) {
    items.push_back(ja.issues[i]);
    items.push_back("not_" + ja.issues[i]);
    weights.push_back(ja.weights[i]);
    weights.push_back(ja.weights[i]);
  }
  Agenda agenda(items, weights);

  std::vector<Bits> allowed;
  for (const auto& x : ja.output_space) {
    Bits bits(2 * k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      bits[2 * i] = x[i] == 1;
      bits[2 * i + 1] = x[i] == -1;
    }
    allowed.push_back(std::move(bits));
  }
  ConstraintSet feasibility = constraints_from_outcomes(allowed, agenda);
  for (std::size_t i = 0; i < k; ++i) {
    LinearConstraint c;  // a_k + a_not_k = 1
    c.terms[items[2 * i]] = 1;
    c.terms[items[2 * i + 1]] = 1;
    c.sense = Sense::Eq;
    c.rhs = 1;
    feasibility.constraints.push_back(std::move(c));
  }

  Profile profile;
  for (const auto& view : ja.views) {
    Bits bits(2 * k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      bits[2 * i] = view[i] == 1;
      bits[2 * i + 1] = view[i] == -1;
    }
    profile.ballots.push_back(Ballot{bits});
  }
  return CdoInstance{std::move(agenda), ConstraintSet{}, std::move(feasibility), std::move(profile)};
}

/// Projects a translated outcome (from ja_to_cdo) back onto the issues.
inline SignVector project_to_ja(const Bits& bits) {
  if (bits.size() % 2 != 0) throw StructuralError("translated outcome has odd length");
  SignVector x(bits.size() / 2);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = bits[2 * i] ? 1 : -1;
  return x;
}

/// CDO to JA: per item a support issue a^s and an auxiliary issue a^* that
/// every voter approves; the output space enforces a^s equal to a^*. Issue
/// order: all support issues in agenda order, then all auxiliaries.
inline JaInstance cdo_to_ja(const CdoInstance& instance,
                            JaWeighting weighting = JaWeighting::ItemWeights,
                            std::size_t enumeration_cap = kDefaultEnumerationCap) {
  const std::size_t m = instance.agenda.size();
  JaInstance ja;
  for (std::size_t a = 0; a < m; ++a) ja.issues.push_back(instance.agenda.items[a] + "_s");
  for (std::size_t a = 0; a < m; ++a) ja.issues.push_back(instance.agenda.items[a] + "_star");
  for (int rep = 0; rep < 2; ++rep)
    for (std::size_t a = 0; a < m; ++a) {
      Int w = weighting == JaWeighting::Unit ? 1 : instance.agenda.weights[a];
      if (w <= 0) throw StructuralError("cdo_to_ja requires positive item weights");
      ja.weights.push_back(w);
    }
  for (const auto& outcome : enumerate_feasible(instance.feasibility, instance.agenda, enumeration_cap)) {
    SignVector x(2 * m);
    for (std::size_t a = 0; a < m; ++a) {
      x[a] = outcome.bits[a] ? 1 : -1;
      x[m + a] = x[a];
    }
    ja.output_space.push_back(std::move(x));
  }
  if (ja.output_space.empty()) throw InfeasibleError("instance has an empty feasible set");
  for (const auto& ballot : instance.profile.ballots) {
    SignVector view(2 * m);
    for (std::size_t a = 0; a < m; ++a) {
      view[a] = ballot.bits[a] ? 1 : -1;
      view[m + a] = 1;
    }
    ja.views.push_back(std::move(view));
  }
  return ja;
}

/// Projects a cdo_to_ja output onto the original items via the support
/// issues.
inline Bits project_from_ja(const SignVector& x) {
  if (x.size() % 2 != 0) throw StructuralError("translated output has odd length");
  Bits bits(x.size() / 2);
  for (std::size_t a = 0; a < bits.size(); ++a) bits[a] = x[a] == 1;
  return bits;
}

/// Ranked-rule translation: one issue per item plus n+1 extra voters who
/// approve everything, making every majority margin positive so the ranked
/// agenda oracle processes items in descending approval order.
inline JaInstance cdo_to_ja_ranked(const CdoInstance& instance,
                                   std::size_t enumeration_cap = kDefaultEnumerationCap) {
  const std::size_t m = instance.agenda.size();
  JaInstance ja;
  ja.issues = instance.agenda.items;
  for (std::size_t a = 0; a < m; ++a) {
    Int w = instance.agenda.weights[a];
    ja.weights.push_back(w > 0 ? w : 1);
  }
  for (const auto& outcome : enumerate_feasible(instance.feasibility, instance.agenda, enumeration_cap)) {
    SignVector x(m);
    for (std::size_t a = 0; a < m; ++a) x[a] = outcome.bits[a] ? 1 : -1;
    ja.output_space.push_back(std::move(x));
  }
  if (ja.output_space.empty()) throw InfeasibleError("instance has an empty feasible set");
  for (const auto& ballot : instance.profile.ballots) {
    SignVector view(m);
    for (std::size_t a = 0; a < m; ++a) view[a] = ballot.bits[a] ? 1 : -1;
    ja.views.push_back(std::move(view));
  }
  const std::size_t extras = instance.profile.ballots.size() + 1;
  for (std::size_t i = 0; i < extras; ++i) ja.views.push_back(SignVector(m, 1));
  return ja;
}

}  // namespace cdo

#endif  // CDO_TRANSLATE_HPP

#ifndef CDO_RANDOMGEN_HPP
#define CDO_RANDOMGEN_HPP

#include <sstream>

#include "cdo/harness.hpp"
#include "cdo/rules.hpp"
#include "cdo/translate.hpp"

namespace cdo {

/// Desk-scale random instances with an explicit feasible set, used by the
/// rule-equivalence checks.
struct RandomInstanceOptions {
  std::size_t min_items = 2, max_items = 8;
  std::size_t max_voters = 10;
  std::size_t max_feasible = 20;
  Int max_weight = 9;  // weights drawn from [1, max_weight]
};

inline CdoInstance gen_random_instance(std::uint64_t seed, RandomInstanceOptions opt = {}) {
  Rng rng(seed);
  const std::size_t m = opt.min_items + rng.below(opt.max_items - opt.min_items + 1);
  const std::size_t n = 1 + rng.below(opt.max_voters);
  std::vector<std::string> items;
  std::vector<Int> weights;
  for (std::size_t a = 0; a < m; ++a) {
    items.push_back("a" + std::to_string(a + 1));
    weights.push_back(1 + (Int)rng.below((std::uint64_t)opt.max_weight));
  }
  Agenda agenda(items, weights);

  std::set<Bits> feasible;
  const std::size_t want = 1 + rng.below(opt.max_feasible);
  for (std::size_t tries = 0; tries < 4 * want; ++tries) {
    Bits bits(m);
    for (auto& b : bits) b = (std::uint8_t)rng.below(2);
    feasible.insert(std::move(bits));
    if (feasible.size() == want) break;
  }
  ConstraintSet cs = constraints_from_outcomes({feasible.begin(), feasible.end()}, agenda);

  Profile profile;
  for (std::size_t i = 0; i < n; ++i) {
    Bits bits(m);
    for (auto& b : bits) b = (std::uint8_t)rng.below(2);
    profile.ballots.push_back(Ballot{std::move(bits)});
  }
  return CdoInstance{std::move(agenda), ConstraintSet{}, std::move(cs), std::move(profile)};
}

inline JaInstance gen_random_ja_instance(std::uint64_t seed, std::size_t max_issues = 5,
                                         std::size_t max_voters = 7, bool unit_weights = false) {
  Rng rng(seed);
  const std::size_t k = 1 + rng.below(max_issues);
  const std::size_t n = 1 + rng.below(max_voters);
  JaInstance ja;
  for (std::size_t i = 0; i < k; ++i) {
    ja.issues.push_back("q" + std::to_string(i + 1));
    ja.weights.push_back(unit_weights ? 1 : 1 + (Int)rng.below(5));
  }
  std::set<SignVector> outputs;
  const std::size_t want = 1 + rng.below(std::min<std::size_t>(1ull << k, 12));
  for (std::size_t tries = 0; tries < 4 * want; ++tries) {
    SignVector x(k);
    for (auto& s : x) s = rng.below(2) ? 1 : -1;
    outputs.insert(std::move(x));
    if (outputs.size() == want) break;
  }
  ja.output_space.assign(outputs.begin(), outputs.end());
  for (std::size_t i = 0; i < n; ++i) {
    SignVector v(k);
    for (auto& s : v) s = rng.below(2) ? 1 : -1;
    ja.views.push_back(std::move(v));
  }
  return ja;
}

enum class EquivCheck { MedianSimple, MedianWeighted, RankedAgenda };

inline EquivCheck parse_equiv_check(const std::string& name) {
  if (name == "median-simple") return EquivCheck::MedianSimple;
  if (name == "median-weighted") return EquivCheck::MedianWeighted;
  if (name == "ranked-agenda") return EquivCheck::RankedAgenda;
  throw StructuralError("unknown equivalence check: " + name);
}

struct EquivReport {
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::string first_counterexample;  // empty when all trials pass
};

namespace equiv_detail {

inline std::vector<Bits> outcome_bits(const RuleResult& r) {
  std::vector<Bits> out;
  for (const auto& o : r.outcomes) out.push_back(o.bits);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string dump_bits(const std::vector<Bits>& set) {
  std::ostringstream os;
  for (const auto& b : set) {
    os << "(";
    for (std::size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << (int)b[i];
    os << ") ";
  }
  return os.str();
}

}  // namespace equiv_detail

/// Empirically checks the rule equivalences on seeded random instances.
///   median-simple:  sum(simple) == sum(swap) outcome sets, and the JA median
///             round-trips through both translations (unit weights).
///   median-weighted: sum(weight) == sum(w-swap), weighted median round trip.
///   ranked-agenda: the JA ranked agenda on the ranked translation equals
///              rank(simple).
inline EquivReport run_equiv_check(EquivCheck which, std::size_t trials, std::uint64_t seed) {
  EquivReport report;
  report.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t child = derive_seed(seed, (std::uint64_t)which + 10, t);
    std::ostringstream fail;
    switch (which) {
      case EquivCheck::MedianSimple: {
        RandomInstanceOptions opt;
        opt.max_items = 5;
        opt.max_voters = 7;
        CdoInstance inst = gen_random_instance(child, opt);
        auto lhs = equiv_detail::outcome_bits(rule_sum(SetScoring::Simple, inst));
        auto rhs = equiv_detail::outcome_bits(rule_sum(SetScoring::Swap, inst));
        if (lhs != rhs)
          fail << "sum(simple) != sum(swap): " << equiv_detail::dump_bits(lhs) << "vs "
               << equiv_detail::dump_bits(rhs);
        std::vector<Bits> median;
        for (const auto& x : median_rule_ja(cdo_to_ja(inst, JaWeighting::Unit)))
          median.push_back(project_from_ja(x));
        std::sort(median.begin(), median.end());
        if (fail.str().empty() && median != lhs)
          fail << "median(cdo_to_ja) != sum(simple): " << equiv_detail::dump_bits(median) << "vs "
               << equiv_detail::dump_bits(lhs);
        // The opposite direction: JA instance into CDO and back.
        JaInstance ja = gen_random_ja_instance(child ^ 0x5bd1e995u, 5, 7, true);
        if (ja.views.empty()) break;
        auto median_direct = median_rule_ja(ja);
        CdoInstance translated = ja_to_cdo(ja);
        std::vector<SignVector> via_cdo;
        for (const auto& o : rule_sum(SetScoring::Simple, translated).outcomes)
          via_cdo.push_back(project_to_ja(o.bits));
        std::sort(via_cdo.begin(), via_cdo.end());
        if (fail.str().empty() && via_cdo != median_direct) fail << "sum(simple)(ja_to_cdo) != median";
        break;
      }
      case EquivCheck::MedianWeighted: {
        RandomInstanceOptions opt;
        opt.max_items = 5;
        opt.max_voters = 7;
        CdoInstance inst = gen_random_instance(child, opt);
        auto lhs = equiv_detail::outcome_bits(rule_sum(SetScoring::Weight, inst));
        auto rhs = equiv_detail::outcome_bits(rule_sum(SetScoring::WSwap, inst));
        if (lhs != rhs)
          fail << "sum(weight) != sum(w-swap): " << equiv_detail::dump_bits(lhs) << "vs "
               << equiv_detail::dump_bits(rhs);
        std::vector<Bits> median;
        for (const auto& x : median_rule_ja(cdo_to_ja(inst, JaWeighting::ItemWeights)))
          median.push_back(project_from_ja(x));
        std::sort(median.begin(), median.end());
        if (fail.str().empty() && median != lhs)
          fail << "weighted median(cdo_to_ja) != sum(weight)";
        JaInstance ja = gen_random_ja_instance(child ^ 0x5bd1e995u, 5, 7, false);
        auto median_direct = median_rule_ja(ja);
        CdoInstance translated = ja_to_cdo(ja);
        std::vector<SignVector> via_cdo;
        for (const auto& o : rule_sum(SetScoring::Weight, translated).outcomes)
          via_cdo.push_back(project_to_ja(o.bits));
        std::sort(via_cdo.begin(), via_cdo.end());
        if (fail.str().empty() && via_cdo != median_direct) fail << "sum(weight)(ja_to_cdo) != weighted median";
        break;
      }
      case EquivCheck::RankedAgenda: {
        RandomInstanceOptions opt;
        opt.max_items = 4;
        opt.max_voters = 7;
        CdoInstance inst = gen_random_instance(child, opt);
        Bits ranked_cdo = rule_rank(SetScoring::Simple, inst).outcomes[0].bits;
        SignVector ranked_ja = ja_ranked_agenda(cdo_to_ja_ranked(inst));
        Bits projected(ranked_ja.size());
        for (std::size_t a = 0; a < ranked_ja.size(); ++a) projected[a] = ranked_ja[a] == 1;
        if (projected != ranked_cdo)
          fail << "ja ranked agenda != rank(simple): " << equiv_detail::dump_bits({projected})
               << "vs " << equiv_detail::dump_bits({ranked_cdo});
        break;
      }
    }
    if (!fail.str().empty()) {
      ++report.failures;
      if (report.first_counterexample.empty()) {
        std::ostringstream os;
        os << "trial " << t << " (seed " << child << "): " << fail.str();
        report.first_counterexample = os.str();
      }
    }
  }
  return report;
}

}  // namespace cdo

#endif  // CDO_RANDOMGEN_HPP

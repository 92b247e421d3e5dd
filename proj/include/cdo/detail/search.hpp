#ifndef CDO_DETAIL_SEARCH_HPP
#define CDO_DETAIL_SEARCH_HPP

// Internal exact search over binary item variables plus bounded-integer
// auxiliaries: interval propagation, depth-first branch and bound, and
// feasibility queries. Included by cdo/core.hpp; not a public header.

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>

namespace cdo::detail {

inline Int floor_div(Int a, Int b) {
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline Int ceil_div(Int a, Int b) { return -floor_div(-a, b); }

struct Row {
  std::vector<std::pair<int, Int>> terms;  // (variable index, coefficient)
  Sense sense = Sense::LessEq;
  Int rhs = 0;
};

// Rows of the form sum of distinct binary item variables (unit coefficients)
// <= k or = k; used to tighten the objective bound.
struct CardRow {
  std::vector<int> vars;
  Int cap = 0;
};

// A row sum(rest) - div * t >= rhs bounding the single objective variable t
// from above: t <= (max(rest) - rhs) / div. `card_members[ci]` lists the
// positions of `rest` terms whose variable sits in card row ci.
struct CeilRow {
  std::vector<std::pair<int, Int>> rest;
  Int rhs = 0;
  Int div = 1;
  std::vector<std::vector<std::size_t>> card_members;
};

// Objective variable z with z <= sum of its support items: z pays off only
// when a supporting item is selected.
struct CoverGroup {
  int z = 0;
  Int gain = 0;
  std::vector<int> supports;
  std::vector<bool> inside_card;  // supports confined to card row ci
};

struct System {
  int num_items = 0;  // variables [0, num_items) are binary item variables
  std::vector<std::string> names;
  std::vector<Int> lo, hi;  // initial bounds
  std::vector<Int> obj;     // maximisation coefficients
  std::vector<Row> rows;
  std::vector<int> branch_order;  // item variables, |obj| descending
  std::vector<CardRow> card_rows;
  bool zero_objective = true;
  int single_obj_var = -1;  // objective is coeff * one auxiliary variable
  Int single_obj_coeff = 0;
  std::vector<CeilRow> ceil_rows;
  bool coverage_mode = false;  // objective is a sum of covered-voter variables
  std::vector<CoverGroup> cover_groups;

  void finalize() {
    branch_order.resize(num_items);
    for (int i = 0; i < num_items; ++i) branch_order[i] = i;
    std::stable_sort(branch_order.begin(), branch_order.end(), [&](int a, int b) {
      Int aa = obj[a] < 0 ? -obj[a] : obj[a];
      Int bb = obj[b] < 0 ? -obj[b] : obj[b];
      return aa > bb;
    });
    zero_objective = true;
    for (Int c : obj)
      if (c != 0) zero_objective = false;
    card_rows.clear();
    for (const auto& r : rows) {
      if (r.sense == Sense::GreaterEq || r.rhs < 0) continue;
      bool ok = true;
      for (const auto& [v, c] : r.terms)
        if (c != 1 || v >= num_items) {
          ok = false;
          break;
        }
      if (!ok) continue;
      CardRow cr;
      cr.cap = r.rhs;
      for (const auto& [v, c] : r.terms) {
        (void)c;
        cr.vars.push_back(v);
      }
      card_rows.push_back(std::move(cr));
    }
    detect_single_obj();
    detect_coverage();
  }

 private:
  void detect_single_obj() {
    single_obj_var = -1;
    ceil_rows.clear();
    int var = -1;
    for (std::size_t v = 0; v < obj.size(); ++v) {
      if (obj[v] == 0) continue;
      if (var >= 0 || obj[v] < 0 || (int)v < num_items) return;
      var = (int)v;
    }
    if (var < 0) return;
    single_obj_var = var;
    single_obj_coeff = obj[(std::size_t)var];
    for (const auto& r : rows) {
      if (r.sense != Sense::GreaterEq) continue;
      CeilRow cr;
      bool has_t = false;
      for (const auto& [v, c] : r.terms) {
        if (v == var) {
          if (c >= 0) {
            has_t = false;
            break;
          }
          cr.div = -c;
          has_t = true;
        } else {
          cr.rest.emplace_back(v, c);
        }
      }
      if (!has_t) continue;
      cr.rhs = r.rhs;
      for (const auto& card : card_rows) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < cr.rest.size(); ++i)
          if (std::find(card.vars.begin(), card.vars.end(), cr.rest[i].first) != card.vars.end())
            members.push_back(i);
        cr.card_members.push_back(std::move(members));
      }
      ceil_rows.push_back(std::move(cr));
    }
  }

  void detect_coverage() {
    coverage_mode = false;
    cover_groups.clear();
    std::vector<CoverGroup> groups;
    for (std::size_t v = 0; v < obj.size(); ++v) {
      if (obj[v] == 0) continue;
      if (obj[v] < 0 || (int)v < num_items || lo[v] < 0 || hi[v] > 1) return;
      groups.push_back(CoverGroup{(int)v, obj[v], {}, {}});
    }
    if (groups.empty()) return;
    for (auto& g : groups) {
      bool found = false;
      for (const auto& r : rows) {
        if (r.sense != Sense::LessEq || r.rhs != 0) continue;
        bool mine = false, ok = true;
        std::vector<int> supports;
        for (const auto& [v, c] : r.terms) {
          if (v == g.z && c == 1) {
            mine = true;
          } else if (c == -1 && v < num_items) {
            supports.push_back(v);
          } else {
            ok = false;
            break;
          }
        }
        if (mine && ok) {
          g.supports = std::move(supports);
          found = true;
          break;
        }
      }
      if (!found) return;
      // z may appear in exactly one row, so fixing a covered z to 1 is a
      // dominance move the search can apply without re-propagation.
      std::size_t occurrences = 0;
      for (const auto& r : rows)
        for (const auto& [v, c] : r.terms)
          if (v == g.z && c != 0) ++occurrences;
      if (occurrences != 1) return;
      for (const auto& card : card_rows) {
        bool inside = true;
        for (int a : g.supports)
          if (std::find(card.vars.begin(), card.vars.end(), a) == card.vars.end()) {
            inside = false;
            break;
          }
        g.inside_card.push_back(inside);
      }
    }
    coverage_mode = true;
    cover_groups = std::move(groups);
  }
};

struct Domains {
  std::vector<Int> lo, hi;
};

inline Domains initial_domains(const System& s) { return Domains{s.lo, s.hi}; }

// Bounds tightening to fixpoint. Returns false on a proven conflict.
inline bool propagate(const System& s, Domains& d) {
  bool changed = true;
  int passes = 0;
  while (changed && passes++ < 200) {
    changed = false;
    for (const auto& row : s.rows) {
      Int min_lhs = 0, max_lhs = 0;
      for (const auto& [v, c] : row.terms) {
        if (c > 0) {
          min_lhs += c * d.lo[v];
          max_lhs += c * d.hi[v];
        } else {
          min_lhs += c * d.hi[v];
          max_lhs += c * d.lo[v];
        }
      }
      const bool need_le = row.sense != Sense::GreaterEq;
      const bool need_ge = row.sense != Sense::LessEq;
      if (need_le && min_lhs > row.rhs) return false;
      if (need_ge && max_lhs < row.rhs) return false;
      for (const auto& [v, c] : row.terms) {
        if (need_le) {
          Int rest_min = min_lhs - (c > 0 ? c * d.lo[v] : c * d.hi[v]);
          Int slack = row.rhs - rest_min;  // c * x_v <= slack
          if (c > 0) {
            Int nb = floor_div(slack, c);
            if (nb < d.hi[v]) {
              d.hi[v] = nb;
              changed = true;
            }
          } else {
            Int nb = ceil_div(slack, c);
            if (nb > d.lo[v]) {
              d.lo[v] = nb;
              changed = true;
            }
          }
          if (d.lo[v] > d.hi[v]) return false;
        }
        if (need_ge) {
          Int rest_max = max_lhs - (c > 0 ? c * d.hi[v] : c * d.lo[v]);
          Int need = row.rhs - rest_max;  // c * x_v >= need
          if (c > 0) {
            Int nb = ceil_div(need, c);
            if (nb > d.lo[v]) {
              d.lo[v] = nb;
              changed = true;
            }
          } else {
            Int nb = floor_div(need, c);
            if (nb < d.hi[v]) {
              d.hi[v] = nb;
              changed = true;
            }
          }
          if (d.lo[v] > d.hi[v]) return false;
        }
      }
    }
  }
  return true;
}

// Sum of the `room` largest entries, or of all of them when fewer.
inline Int top_k_sum(std::vector<Int>& values, Int room) {
  if (room <= 0) return 0;
  if ((Int)values.size() <= room) {
    Int s = 0;
    for (Int v : values) s += v;
    return s;
  }
  std::nth_element(values.begin(), values.begin() + (std::ptrdiff_t)room, values.end(),
                   std::greater<Int>());
  Int s = 0;
  for (Int i = 0; i < room; ++i) s += values[(std::size_t)i];
  return s;
}

inline Int card_room(const System& s, const Domains& d, std::size_t ci) {
  Int ones_fixed = 0;
  for (int v : s.card_rows[ci].vars)
    if (d.lo[v] == 1) ++ones_fixed;
  Int room = s.card_rows[ci].cap - ones_fixed;
  return room < 0 ? 0 : room;
}

// Admissible upper bound on the objective over the current domains, with a
// top-k refinement from cardinality rows.
inline Int obj_bound(const System& s, const Domains& d) {
  Int bound = 0;
  for (std::size_t v = 0; v < s.obj.size(); ++v)
    bound += s.obj[v] > 0 ? s.obj[v] * d.hi[v] : s.obj[v] * d.lo[v];
  for (std::size_t ci = 0; ci < s.card_rows.size(); ++ci) {
    const auto& cr = s.card_rows[ci];
    std::vector<Int> free_pos;
    Int free_pos_sum = 0;
    for (int v : cr.vars)
      if (d.lo[v] == 0 && d.hi[v] == 1 && s.obj[v] > 0) {
        free_pos.push_back(s.obj[v]);
        free_pos_sum += s.obj[v];
      }
    Int tightened = bound - (free_pos_sum - top_k_sum(free_pos, card_room(s, d, ci)));
    if (tightened < bound) bound = tightened;
  }

  // When the whole objective is one auxiliary variable, every row bounding it
  // from above yields a ceiling; restrict each ceiling's item terms by the
  // cardinality caps.
  if (s.single_obj_var >= 0) {
    Int t_hi = d.hi[s.single_obj_var];
    for (const auto& row : s.ceil_rows) {
      Int max_rest = 0;
      for (const auto& [v, c] : row.rest)
        max_rest += c > 0 ? c * d.hi[v] : c * d.lo[v];
      for (std::size_t ci = 0; ci < s.card_rows.size(); ++ci) {
        std::vector<Int> free_pos;
        Int free_pos_sum = 0;
        for (std::size_t i : row.card_members[ci]) {
          auto [v, c] = row.rest[i];
          if (d.lo[v] == 0 && d.hi[v] == 1 && c > 0) {
            free_pos.push_back(c);
            free_pos_sum += c;
          }
        }
        Int tightened = max_rest - (free_pos_sum - top_k_sum(free_pos, card_room(s, d, ci)));
        if (tightened < max_rest) max_rest = tightened;
      }
      Int ceiling = floor_div(max_rest - row.rhs, row.div);
      if (ceiling < t_hi) t_hi = ceiling;
      if (t_hi <= d.lo[s.single_obj_var]) break;
    }
    Int via_ceilings = s.single_obj_coeff * t_hi;
    if (via_ceilings < bound) bound = via_ceilings;
  }

  // Coverage objective: groups whose support contains a selected item pay in
  // full; the rest need one of the remaining cardinality slots.
  if (s.coverage_mode) {
    Int covered = 0, pending_total = 0;
    std::vector<Int> item_gain(s.obj.size(), 0);
    std::vector<Int> pending_outside(s.card_rows.size(), 0);
    for (const auto& g : s.cover_groups) {
      if (d.hi[g.z] == 0) continue;
      if (d.lo[g.z] == 1) {
        covered += g.gain;
        continue;
      }
      bool has_selected = false, has_free = false;
      for (int a : g.supports) {
        if (d.lo[a] == 1) {
          has_selected = true;
          break;
        }
        if (d.hi[a] == 1) has_free = true;
      }
      if (has_selected) {
        covered += g.gain;
      } else if (has_free) {
        pending_total += g.gain;
        for (int a : g.supports)
          if (d.lo[a] == 0 && d.hi[a] == 1) item_gain[(std::size_t)a] += g.gain;
        for (std::size_t ci = 0; ci < s.card_rows.size(); ++ci)
          if (!g.inside_card[ci]) pending_outside[ci] += g.gain;
      }
    }
    Int additional = pending_total;
    for (std::size_t ci = 0; ci < s.card_rows.size(); ++ci) {
      std::vector<Int> gains;
      for (int v : s.card_rows[ci].vars)
        if (d.lo[v] == 0 && d.hi[v] == 1 && item_gain[(std::size_t)v] > 0)
          gains.push_back(item_gain[(std::size_t)v]);
      Int via_card =
          top_k_sum(gains, card_room(s, d, ci)) + pending_outside[ci];
      if (via_card < additional) additional = via_card;
    }
    Int via_coverage = covered + additional;
    if (via_coverage < bound) bound = via_coverage;
  }
  return bound;
}

struct SolveResult {
  bool feasible = false;
  Int optimum = 0;
  std::vector<Int> assignment;
  bool timed_out = false;
};

struct SolveOptions {
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

class Searcher {
 public:
  Searcher(const System& s, SolveOptions opts) : s_(s), opts_(opts) {}

  SolveResult run(Domains root) {
    dfs(std::move(root));
    SolveResult res;
    res.timed_out = timed_out_;
    if (found_) {
      res.feasible = true;
      res.optimum = best_;
      res.assignment = best_assign_;
    }
    return res;
  }

 private:
  void dfs(Domains d) {
    if (timed_out_) return;
    if ((++nodes_ & 1023) == 0 && opts_.deadline &&
        std::chrono::steady_clock::now() > *opts_.deadline) {
      timed_out_ = true;
      return;
    }
    if (!propagate(s_, d)) return;
    if (s_.coverage_mode)
      for (const auto& g : s_.cover_groups) {
        if (d.lo[g.z] != 0 || d.hi[g.z] != 1) continue;
        for (int a : g.supports)
          if (d.lo[a] == 1) {
            d.lo[g.z] = 1;  // covered for sure, and z has no other row
            break;
          }
      }
    if (found_) {
      if (s_.zero_objective) return;  // feasibility query: first solution wins
      if (obj_bound(s_, d) <= best_) return;
    }
    int v = pick_var(d);
    if (v < 0) {
      Int value = 0;
      for (std::size_t i = 0; i < s_.obj.size(); ++i) value += s_.obj[i] * d.lo[i];
      if (!found_ || value > best_) {
        found_ = true;
        best_ = value;
        best_assign_ = d.lo;
      }
      return;
    }
    const Int c = s_.obj[v];
    if (c >= 0 && v < s_.num_items) {
      for (Int val = d.hi[v]; val >= d.lo[v]; --val) branch(d, v, val);
    } else if (c > 0) {
      for (Int val = d.hi[v]; val >= d.lo[v]; --val) branch(d, v, val);
    } else {
      for (Int val = d.lo[v]; val <= d.hi[v]; ++val) branch(d, v, val);
    }
  }

  void branch(const Domains& d, int v, Int val) {
    if (timed_out_) return;
    Domains child = d;
    child.lo[v] = child.hi[v] = val;
    dfs(std::move(child));
  }

  // Free item whose selection would cover the most pending groups. Breaks
  // ties towards the smallest index; -1 when no item variable is free.
  int pick_cover_var(const Domains& d) const {
    std::vector<Int> gain((std::size_t)s_.num_items, 0);
    for (const auto& g : s_.cover_groups) {
      if (d.hi[g.z] == 0 || d.lo[g.z] == 1) continue;
      bool has_selected = false;
      for (int a : g.supports)
        if (d.lo[a] == 1) {
          has_selected = true;
          break;
        }
      if (has_selected) continue;
      for (int a : g.supports)
        if (d.lo[a] == 0 && d.hi[a] == 1) gain[(std::size_t)a] += g.gain;
    }
    int best = -1;
    Int best_gain = -1;
    for (int v = 0; v < s_.num_items; ++v)
      if (d.lo[v] < d.hi[v] && gain[(std::size_t)v] > best_gain) {
        best_gain = gain[(std::size_t)v];
        best = v;
      }
    return best;
  }

  // First undecided item variable in branch order; then the auxiliary
  // variable with the smallest remaining domain.
  int pick_var(const Domains& d) const {
    if (s_.coverage_mode && found_) {
      int v = pick_cover_var(d);
      if (v >= 0) return v;
    } else {
      for (int v : s_.branch_order)
        if (d.lo[v] < d.hi[v]) return v;
    }
    int best_v = -1;
    Int best_width = std::numeric_limits<Int>::max();
    for (std::size_t v = (std::size_t)s_.num_items; v < d.lo.size(); ++v) {
      Int w = d.hi[v] - d.lo[v];
      if (w > 0 && w < best_width) {
        best_width = w;
        best_v = (int)v;
      }
    }
    return best_v;
  }

  const System& s_;
  SolveOptions opts_;
  bool found_ = false;
  bool timed_out_ = false;
  Int best_ = 0;
  std::vector<Int> best_assign_;
  std::uint64_t nodes_ = 0;
};

inline SolveResult solve_max(const System& s, const std::vector<std::pair<int, Int>>& fixed = {},
                             SolveOptions opts = {}) {
  Domains d = initial_domains(s);
  for (const auto& [v, val] : fixed) {
    if (val < d.lo[v] || val > d.hi[v]) return SolveResult{};
    d.lo[v] = d.hi[v] = val;
  }
  return Searcher(s, opts).run(std::move(d));
}

// Feasibility of the remaining (auxiliary) variables once items are fixed.
inline bool aux_feasible(const System& s, const Domains& d) {
  if (s.zero_objective) return Searcher(s, {}).run(Domains{d}).feasible;
  System probe = s;
  std::fill(probe.obj.begin(), probe.obj.end(), 0);
  probe.zero_objective = true;
  return Searcher(probe, {}).run(Domains{d}).feasible;
}

inline System build_system(const Agenda& agenda, const std::vector<LinearConstraint>& constraints,
                           const std::map<std::string, IntBounds>& aux,
                           const std::map<std::string, Int>& objective) {
  System s;
  s.num_items = (int)agenda.size();
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < agenda.size(); ++i) {
    s.names.push_back(agenda.items[i]);
    s.lo.push_back(0);
    s.hi.push_back(1);
    s.obj.push_back(0);
    index[agenda.items[i]] = (int)i;
  }
  for (const auto& [name, b] : aux) {
    index[name] = (int)s.names.size();
    s.names.push_back(name);
    s.lo.push_back(b.lo);
    s.hi.push_back(b.hi);
    s.obj.push_back(0);
  }
  for (const auto& [name, coeff] : objective) {
    auto it = index.find(name);
    if (it == index.end()) throw StructuralError("objective names unknown variable: " + name);
    s.obj[(std::size_t)it->second] = coeff;
  }
  for (const auto& c : constraints) {
    Row row;
    row.sense = c.sense;
    row.rhs = c.rhs;
    for (const auto& [name, coeff] : c.terms) {
      auto it = index.find(name);
      if (it == index.end()) throw StructuralError("constraint names unknown variable: " + name);
      if (coeff != 0) row.terms.emplace_back(it->second, coeff);
    }
    s.rows.push_back(std::move(row));
  }
  s.finalize();
  return s;
}

inline System build_system(const Agenda& agenda, const ConstraintSet& cs) {
  return build_system(agenda, cs.constraints, cs.aux_vars, {});
}

}  // namespace cdo::detail

#endif  // CDO_DETAIL_SEARCH_HPP

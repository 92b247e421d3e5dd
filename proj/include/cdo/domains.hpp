#ifndef CDO_DOMAINS_HPP
#define CDO_DOMAINS_HPP

#include <numeric>
#include <sstream>

#include "cdo/core.hpp"

namespace cdo {

// ---------------------------------------------------------------------------
// Participatory budgeting
// ---------------------------------------------------------------------------

struct BudgetSpec {
  Int limit = 0;  // non-negative, in currency units

  explicit BudgetSpec(Int l) : limit(l) {
    if (l < 0) throw StructuralError("budget limit must be non-negative");
  }
};

/// A single knapsack inequality sum(w_a x_a) <= limit, plus any caller
/// supplied extra constraints (district quotas and the like).
inline ConstraintSet encode_budget(const Agenda& agenda, const BudgetSpec& spec,
                                   const std::vector<LinearConstraint>& extras = {}) {
  ConstraintSet cs;
  LinearConstraint knapsack;
  for (std::size_t a = 0; a < agenda.size(); ++a)
    if (agenda.weights[a] != 0) knapsack.terms[agenda.items[a]] = agenda.weights[a];
  knapsack.sense = Sense::LessEq;
  knapsack.rhs = spec.limit;
  cs.constraints.push_back(std::move(knapsack));
  for (const auto& c : extras) cs.constraints.push_back(c);
  cs.validate(agenda);
  return cs;
}

// ---------------------------------------------------------------------------
// Collective networking (spanning trees)
// ---------------------------------------------------------------------------

struct Edge {
  std::size_t u = 0, v = 0;  // node indices, u < v
  Int cost = 0;
};

/// An undirected simple graph over named nodes. Edges are stored with the
/// lower node index first and sorted, which fixes the agenda order.
struct Graph {
  std::vector<std::string> nodes;
  std::vector<Edge> edges;

  Graph() = default;
  Graph(std::vector<std::string> nodes_, std::vector<Edge> edges_)
      : nodes(std::move(nodes_)), edges(std::move(edges_)) {
    for (auto& e : edges) {
      if (e.u == e.v) throw StructuralError("self-loop in graph");
      if (e.u >= nodes.size() || e.v >= nodes.size())
        throw StructuralError("edge endpoint out of range");
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
    for (std::size_t i = 1; i < edges.size(); ++i)
      if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v)
        throw StructuralError("duplicate edge in graph");
  }
};

inline bool is_connected(const Graph& g) {
  if (g.nodes.empty()) return true;
  std::vector<std::vector<std::size_t>> adj(g.nodes.size());
  for (const auto& e : g.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<bool> seen(g.nodes.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        stack.push_back(v);
      }
  }
  return count == g.nodes.size();
}

namespace domain_detail {

inline std::string edge_item_id(const Graph& g, const Edge& e) {
  return "a_" + g.nodes[e.u] + "_" + g.nodes[e.v];
}

inline std::string flow_var_id(const Graph& g, std::size_t from, std::size_t to) {
  return "y_" + g.nodes[from] + "_" + g.nodes[to];
}

}  // namespace domain_detail

/// Single-commodity-flow spanning-tree encoding: one binary item per edge,
/// two flow variables per edge in [0, |V|-1], flow conservation at every
/// node with the first declared node as root (no in-flow), capacity linking
/// flows to selected edges, and the |V|-1 cardinality row. On a disconnected
/// graph the feasible set is empty.
inline std::pair<Agenda, ConstraintSet> encode_spanning_tree(const Graph& g) {
  const std::size_t nv = g.nodes.size();
  if (nv == 0) throw StructuralError("graph has no nodes");
  const Int flow_cap = (Int)nv - 1;

  std::vector<std::string> items;
  std::vector<Int> weights;
  for (const auto& e : g.edges) {
    items.push_back(domain_detail::edge_item_id(g, e));
    weights.push_back(e.cost);
  }
  Agenda agenda(items, weights);

  ConstraintSet cs;
  for (const auto& e : g.edges) {
    cs.aux_vars[domain_detail::flow_var_id(g, e.u, e.v)] = IntBounds{0, flow_cap};
    cs.aux_vars[domain_detail::flow_var_id(g, e.v, e.u)] = IntBounds{0, flow_cap};
  }

  // Flow conservation: in-flow minus out-flow is 1 - |V| at the root and 1
  // elsewhere.
  for (std::size_t j = 0; j < nv; ++j) {
    LinearConstraint c;
    for (const auto& e : g.edges) {
      if (e.u == j) {
        c.terms[domain_detail::flow_var_id(g, e.v, e.u)] = 1;   // into j
        c.terms[domain_detail::flow_var_id(g, e.u, e.v)] = -1;  // out of j
      } else if (e.v == j) {
        c.terms[domain_detail::flow_var_id(g, e.u, e.v)] = 1;
        c.terms[domain_detail::flow_var_id(g, e.v, e.u)] = -1;
      }
    }
    c.sense = Sense::Eq;
    c.rhs = j == 0 ? 1 - (Int)nv : 1;
    cs.constraints.push_back(std::move(c));
  }

  // The root has no in-flow.
  for (const auto& e : g.edges) {
    if (e.u != 0 && e.v != 0) continue;
    std::size_t other = e.u == 0 ? e.v : e.u;
    LinearConstraint c;
    c.terms[domain_detail::flow_var_id(g, other, 0)] = 1;
    c.sense = Sense::Eq;
    c.rhs = 0;
    cs.constraints.push_back(std::move(c));
  }

  // Capacity: an edge carries flow in either direction only when selected.
  for (const auto& e : g.edges) {
    for (auto [from, to] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      LinearConstraint c;
      c.terms[domain_detail::flow_var_id(g, from, to)] = 1;
      c.terms[domain_detail::edge_item_id(g, e)] = -flow_cap;
      c.sense = Sense::LessEq;
      c.rhs = 0;
      cs.constraints.push_back(std::move(c));
    }
  }

  // Exactly |V| - 1 edges.
  LinearConstraint card;
  for (const auto& e : g.edges) card.terms[domain_detail::edge_item_id(g, e)] = 1;
  card.sense = Sense::Eq;
  card.rhs = flow_cap;
  cs.constraints.push_back(std::move(card));

  cs.validate(agenda);
  return {std::move(agenda), std::move(cs)};
}

inline std::vector<Edge> decode_tree(const Outcome& outcome, const Graph& g) {
  if (outcome.bits.size() != g.edges.size())
    throw StructuralError("outcome length differs from edge count");
  std::vector<Edge> selected;
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    if (outcome.bits[i]) selected.push_back(g.edges[i]);
  return selected;
}

/// Direct spanning-tree check (edge count, acyclicity, connectivity) by
/// union-find, independent of the flow encoding.
inline bool verify_spanning_tree(const std::vector<Edge>& edges, const Graph& g) {
  if (g.nodes.empty()) return false;
  if (edges.size() != g.nodes.size() - 1) return false;
  std::vector<std::size_t> parent(g.nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : edges) {
    std::size_t ru = find(e.u), rv = find(e.v);
    if (ru == rv) return false;  // cycle
    parent[ru] = rv;
  }
  std::size_t root = find(0);
  for (std::size_t i = 1; i < g.nodes.size(); ++i)
    if (find(i) != root) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Collective scheduling
// ---------------------------------------------------------------------------

struct ScheduleSpec {
  std::vector<std::string> jobs;
  std::vector<Int> durations;

  ScheduleSpec() = default;
  ScheduleSpec(std::vector<std::string> jobs_, std::vector<Int> durations_)
      : jobs(std::move(jobs_)), durations(std::move(durations_)) {
    if (jobs.size() != durations.size())
      throw StructuralError("jobs and durations differ in length");
    if (jobs.empty()) throw StructuralError("schedule needs at least one job");
    for (Int d : durations)
      if (d <= 0) throw StructuralError("job durations must be positive");
  }

  std::size_t index_of(const std::string& job) const {
    for (std::size_t i = 0; i < jobs.size(); ++i)
      if (jobs[i] == job) return i;
    throw StructuralError("unknown job: " + job);
  }
};

namespace domain_detail {

inline std::string first_item_id(const ScheduleSpec& s, std::size_t x) {
  return "o_" + s.jobs[x];
}

inline std::string pair_item_id(const ScheduleSpec& s, std::size_t x, std::size_t y) {
  return "p_" + s.jobs[x] + "_" + s.jobs[y];
}

}  // namespace domain_detail

/// Linear-order encoding of schedules. Agenda order: the m first-job markers
/// in job order, then the ordered pairs lexicographically by (x, y). The
/// weight of a pair item is the duration of the second job; the weight of a
/// first-job marker is that job's own duration.
inline std::pair<Agenda, ConstraintSet> encode_schedule(const ScheduleSpec& spec) {
  const std::size_t m = spec.jobs.size();
  std::vector<std::string> items;
  std::vector<Int> weights;
  for (std::size_t x = 0; x < m; ++x) {
    items.push_back(domain_detail::first_item_id(spec, x));
    weights.push_back(spec.durations[x]);
  }
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      if (x == y) continue;
      items.push_back(domain_detail::pair_item_id(spec, x, y));
      weights.push_back(spec.durations[y]);
    }
  Agenda agenda(items, weights);

  ConstraintSet cs;
  // Completeness and asymmetry of the collective order.
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = x + 1; y < m; ++y) {
      LinearConstraint c;
      c.terms[domain_detail::pair_item_id(spec, x, y)] = 1;
      c.terms[domain_detail::pair_item_id(spec, y, x)] = 1;
      c.sense = Sense::Eq;
      c.rhs = 1;
      cs.constraints.push_back(std::move(c));
    }
  // Transitivity.
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      for (std::size_t z = 0; z < m; ++z) {
        if (x == y || y == z || x == z) continue;
        LinearConstraint c;
        c.terms[domain_detail::pair_item_id(spec, x, y)] = 1;
        c.terms[domain_detail::pair_item_id(spec, y, z)] = 1;
        c.terms[domain_detail::pair_item_id(spec, x, z)] = -1;
        c.sense = Sense::LessEq;
        c.rhs = 1;
        cs.constraints.push_back(std::move(c));
      }
  // Unique starting job.
  LinearConstraint unique;
  for (std::size_t x = 0; x < m; ++x)
    unique.terms[domain_detail::first_item_id(spec, x)] = 1;
  unique.sense = Sense::Eq;
  unique.rhs = 1;
  cs.constraints.push_back(std::move(unique));
  // The first-job marker can only sit on a job scheduled before every other.
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      if (x == y) continue;
      LinearConstraint c;
      c.terms[domain_detail::first_item_id(spec, x)] = 1;
      c.terms[domain_detail::pair_item_id(spec, x, y)] = -1;
      c.sense = Sense::LessEq;
      c.rhs = 0;
      cs.constraints.push_back(std::move(c));
    }

  cs.validate(agenda);
  return {std::move(agenda), std::move(cs)};
}

/// Recovers the job order from a feasible outcome: jobs sorted by descending
/// number of pairwise wins. Inconsistent inputs are rejected.
inline std::vector<std::string> decode_schedule(const Outcome& outcome, const ScheduleSpec& spec) {
  const std::size_t m = spec.jobs.size();
  if (outcome.bits.size() != m + m * (m - 1))
    throw StructuralError("outcome length does not match the scheduling agenda");
  auto pair_bit = [&](std::size_t x, std::size_t y) {
    std::size_t idx = m;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j) continue;
        if (i == x && j == y) return outcome.bits[idx];
        ++idx;
      }
    throw StructuralError("bad pair lookup");
  };
  std::vector<std::size_t> wins(m, 0);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      if (x != y && pair_bit(x, y)) ++wins[x];
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return wins[a] > wins[b]; });
  for (std::size_t pos = 0; pos < m; ++pos) {
    if (wins[order[pos]] != m - 1 - pos)
      throw StructuralError("outcome bits do not form a linear order");
    for (std::size_t later = pos + 1; later < m; ++later)
      if (!pair_bit(order[pos], order[later]))
        throw StructuralError("outcome bits do not form a linear order");
  }
  std::vector<std::string> jobs;
  for (std::size_t idx : order) jobs.push_back(spec.jobs[idx]);
  return jobs;
}

/// Builds a ballot from precedence pairs and first-job claims; only the
/// stated bits are set. Contradictory pairs are rejected.
inline Ballot ballot_from_partial_order(const ScheduleSpec& spec,
                                        const std::vector<std::pair<std::string, std::string>>& precedes,
                                        const std::vector<std::string>& first_jobs = {}) {
  const std::size_t m = spec.jobs.size();
  Bits bits(m + m * (m - 1), 0);
  auto pair_index = [&](std::size_t x, std::size_t y) {
    std::size_t idx = m;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j) continue;
        if (i == x && j == y) return idx;
        ++idx;
      }
    throw StructuralError("bad pair index");
  };
  for (const auto& [before, after] : precedes) {
    std::size_t x = spec.index_of(before), y = spec.index_of(after);
    if (x == y) throw StructuralError("a job cannot precede itself: " + before);
    if (bits[pair_index(y, x)])
      throw StructuralError("contradictory precedence pairs for " + before + " and " + after);
    bits[pair_index(x, y)] = 1;
  }
  for (const auto& job : first_jobs) bits[spec.index_of(job)] = 1;
  return Ballot{bits};
}

}  // namespace cdo

#endif  // CDO_DOMAINS_HPP

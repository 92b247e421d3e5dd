#ifndef CDO_IO_HPP
#define CDO_IO_HPP

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cdo/core.hpp"
#include "cdo/domains.hpp"

namespace cdo::io {

using nlohmann::json;

inline constexpr const char* kFormatTag = "cdo/1";

inline Sense parse_sense(const std::string& s) {
  if (s == "<=") return Sense::LessEq;
  if (s == ">=") return Sense::GreaterEq;
  if (s == "=" || s == "==") return Sense::Eq;
  throw StructuralError("unknown constraint sense: " + s);
}

inline json constraint_set_to_json(const ConstraintSet& cs) {
  json out;
  out["constraints"] = json::array();
  for (const auto& c : cs.constraints) {
    json jc;
    jc["terms"] = json::object();
    for (const auto& [var, coeff] : c.terms) jc["terms"][var] = coeff;
    jc["sense"] = to_string(c.sense);
    jc["rhs"] = c.rhs;
    out["constraints"].push_back(std::move(jc));
  }
  out["aux"] = json::object();
  for (const auto& [name, b] : cs.aux_vars) out["aux"][name] = json::array({b.lo, b.hi});
  return out;
}

inline ConstraintSet constraint_set_from_json(const json& j) {
  ConstraintSet cs;
  const json& list = j.is_array() ? j : j.at("constraints");
  for (const auto& jc : list) {
    LinearConstraint c;
    for (const auto& [var, coeff] : jc.at("terms").items()) c.terms[var] = coeff.get<Int>();
    c.sense = parse_sense(jc.at("sense").get<std::string>());
    c.rhs = jc.at("rhs").get<Int>();
    cs.constraints.push_back(std::move(c));
  }
  if (j.is_object() && j.contains("aux"))
    for (const auto& [name, bounds] : j.at("aux").items())
      cs.aux_vars[name] = IntBounds{bounds.at(0).get<Int>(), bounds.at(1).get<Int>()};
  return cs;
}

inline json instance_to_json(const CdoInstance& instance) {
  json out;
  out["format"] = kFormatTag;
  out["agenda"] = json::array();
  for (std::size_t a = 0; a < instance.agenda.size(); ++a)
    out["agenda"].push_back({{"id", instance.agenda.items[a]}, {"weight", instance.agenda.weights[a]}});
  out["rationality"] = constraint_set_to_json(instance.rationality);
  out["feasibility"] = constraint_set_to_json(instance.feasibility);
  out["profile"] = json::array();
  for (const auto& b : instance.profile.ballots) out["profile"].push_back(b.bits);
  return out;
}

inline CdoInstance instance_from_json(const json& j, bool validate = true) {
  if (!j.contains("format") || j.at("format") != kFormatTag)
    throw StructuralError("instance file is missing the format: \"cdo/1\" tag");
  std::vector<std::string> items;
  std::vector<Int> weights;
  for (const auto& entry : j.at("agenda")) {
    items.push_back(entry.at("id").get<std::string>());
    weights.push_back(entry.at("weight").get<Int>());
  }
  CdoInstance instance;
  instance.agenda = Agenda(std::move(items), std::move(weights));
  if (j.contains("rationality")) instance.rationality = constraint_set_from_json(j.at("rationality"));
  if (j.contains("feasibility")) instance.feasibility = constraint_set_from_json(j.at("feasibility"));
  if (j.contains("profile"))
    for (const auto& row : j.at("profile"))
      instance.profile.ballots.push_back(Ballot{row.get<Bits>()});
  if (validate) instance.validate();
  return instance;
}

inline json outcomes_to_json(const std::vector<Outcome>& outcomes) {
  json out;
  out["format"] = kFormatTag;
  out["outcomes"] = json::array();
  for (const auto& o : outcomes) {
    json jo;
    jo["bits"] = o.bits;
    if (o.score) jo["score"] = *o.score;
    out["outcomes"].push_back(std::move(jo));
  }
  return out;
}

inline std::vector<Outcome> outcomes_from_json(const json& j) {
  if (!j.contains("format") || j.at("format") != kFormatTag)
    throw StructuralError("outcome file is missing the format: \"cdo/1\" tag");
  std::vector<Outcome> outcomes;
  for (const auto& jo : j.at("outcomes")) {
    Outcome o;
    if (jo.is_array()) {
      o.bits = jo.get<Bits>();
    } else {
      o.bits = jo.at("bits").get<Bits>();
      if (jo.contains("score")) o.score = jo.at("score").get<Int>();
    }
    outcomes.push_back(std::move(o));
  }
  return outcomes;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << text;
}

inline void write_json_file(const std::string& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

inline CdoInstance load_instance(const std::string& path, bool validate = true) {
  return instance_from_json(read_json_file(path), validate);
}

inline void save_instance(const std::string& path, const CdoInstance& instance) {
  write_json_file(path, instance_to_json(instance));
}

// Graph text format: one header line with the node count, then one line
// "i j cost" per edge with 0-based node indices.
inline Graph parse_graph(std::istream& in) {
  std::size_t nv = 0;
  if (!(in >> nv)) throw StructuralError("graph file: missing node count header");
  std::vector<std::string> nodes;
  for (std::size_t i = 0; i < nv; ++i) nodes.push_back("n" + std::to_string(i));
  std::vector<Edge> edges;
  std::size_t u, v;
  Int cost;
  while (in >> u >> v >> cost) edges.push_back(Edge{u, v, cost});
  return Graph(std::move(nodes), std::move(edges));
}

inline Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  return parse_graph(in);
}

inline std::string graph_to_text(const Graph& g) {
  std::ostringstream os;
  os << g.nodes.size() << "\n";
  for (const auto& e : g.edges) os << e.u << " " << e.v << " " << e.cost << "\n";
  return os.str();
}

/// Scheduling input: jobs, durations, and per-voter partial orders.
struct ScheduleInput {
  ScheduleSpec spec;
  std::vector<Ballot> ballots;
};

inline ScheduleInput schedule_from_json(const json& j) {
  if (!j.contains("format") || j.at("format") != kFormatTag)
    throw StructuralError("schedule file is missing the format: \"cdo/1\" tag");
  ScheduleInput input;
  input.spec = ScheduleSpec(j.at("jobs").get<std::vector<std::string>>(),
                            j.at("durations").get<std::vector<Int>>());
  if (j.contains("voters"))
    for (const auto& voter : j.at("voters")) {
      std::vector<std::pair<std::string, std::string>> precedes;
      if (voter.contains("precedes"))
        for (const auto& p : voter.at("precedes"))
          precedes.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
      std::vector<std::string> first;
      if (voter.contains("first")) first = voter.at("first").get<std::vector<std::string>>();
      input.ballots.push_back(ballot_from_partial_order(input.spec, precedes, first));
    }
  return input;
}

}  // namespace cdo::io

#endif  // CDO_IO_HPP

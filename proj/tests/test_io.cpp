#include <cstdio>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "cdo/io.hpp"
#include "example2.hpp"

using namespace cdo;

TEST_CASE("constraint sets survive a json round trip") {
  ConstraintSet cs;
  LinearConstraint c;
  c.terms = {{"a", 2}, {"b", -1}};
  c.sense = Sense::GreaterEq;
  c.rhs = -3;
  cs.constraints.push_back(c);
  cs.aux_vars["y"] = IntBounds{-5, 7};

  ConstraintSet back = io::constraint_set_from_json(io::constraint_set_to_json(cs));
  REQUIRE(back.constraints.size() == 1);
  CHECK(back.constraints[0].terms == cs.constraints[0].terms);
  CHECK(back.constraints[0].sense == Sense::GreaterEq);
  CHECK(back.constraints[0].rhs == -3);
  REQUIRE(back.aux_vars.count("y"));
  CHECK(back.aux_vars["y"].lo == -5);
  CHECK(back.aux_vars["y"].hi == 7);
}

TEST_CASE("sense strings parse both spellings of equality") {
  CHECK(io::parse_sense("<=") == Sense::LessEq);
  CHECK(io::parse_sense(">=") == Sense::GreaterEq);
  CHECK(io::parse_sense("=") == Sense::Eq);
  CHECK(io::parse_sense("==") == Sense::Eq);
  CHECK_THROWS_AS(io::parse_sense("<"), StructuralError);
}

TEST_CASE("instances survive a json round trip") {
  CdoInstance inst = example2_instance();
  CdoInstance back = io::instance_from_json(io::instance_to_json(inst));
  CHECK(back.agenda.items == inst.agenda.items);
  CHECK(back.agenda.weights == inst.agenda.weights);
  REQUIRE(back.profile.size() == 4);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(back.profile.ballots[i].bits == inst.profile.ballots[i].bits);
  auto a = enumerate_feasible(inst.feasibility, inst.agenda);
  auto b = enumerate_feasible(back.feasibility, back.agenda);
  CHECK(a == b);
}

TEST_CASE("a missing or wrong format tag is rejected") {
  io::json j = io::instance_to_json(example2_instance());
  io::json no_tag = j;
  no_tag.erase("format");
  CHECK_THROWS_AS(io::instance_from_json(no_tag), StructuralError);
  io::json wrong = j;
  wrong["format"] = "cdo/2";
  CHECK_THROWS_AS(io::instance_from_json(wrong), StructuralError);
}

TEST_CASE("loading validates rationality by default") {
  CdoInstance inst = example2_instance();
  LinearConstraint cap;  // at most one approval, which every ballot violates
  for (const auto& id : inst.agenda.items) cap.terms[id] = 1;
  cap.sense = Sense::LessEq;
  cap.rhs = 1;
  inst.rationality.constraints.push_back(cap);
  io::json j = io::instance_to_json(inst);
  CHECK_THROWS_AS(io::instance_from_json(j), StructuralError);
  CHECK_NOTHROW(io::instance_from_json(j, false));
}

TEST_CASE("outcomes round trip with and without scores") {
  std::vector<Outcome> outcomes = {Outcome{{1, 0, 1}, 7}, Outcome{{0, 0, 0}, std::nullopt}};
  auto back = io::outcomes_from_json(io::outcomes_to_json(outcomes));
  REQUIRE(back.size() == 2);
  CHECK(back[0].bits == Bits{1, 0, 1});
  CHECK(back[0].score == 7);
  CHECK(back[1].bits == Bits{0, 0, 0});
  CHECK(!back[1].score);
}

TEST_CASE("file round trip through a temp path") {
  const std::string path = "io_test_instance.json";
  CdoInstance inst = example2_instance();
  io::save_instance(path, inst);
  CdoInstance back = io::load_instance(path);
  CHECK(back.agenda.items == inst.agenda.items);
  std::remove(path.c_str());
  CHECK_THROWS_AS(io::load_instance(path), Error);
}

TEST_CASE("graph text round trip") {
  Graph g({"n0", "n1", "n2"}, {Edge{0, 1, 4}, Edge{1, 2, 2}});
  std::string text = io::graph_to_text(g);
  CHECK(text == "3\n0 1 4\n1 2 2\n");
  std::istringstream in(text);
  Graph back = io::parse_graph(in);
  CHECK(back.nodes.size() == 3);
  REQUIRE(back.edges.size() == 2);
  CHECK(back.edges[0].cost == 4);
  CHECK(back.edges[1].u == 1);
}

TEST_CASE("graph parsing rejects garbage") {
  std::istringstream empty("");
  CHECK_THROWS_AS(io::parse_graph(empty), StructuralError);
  std::istringstream bad_edge("2\n0 3 1\n");
  CHECK_THROWS_AS(io::parse_graph(bad_edge), StructuralError);
}

TEST_CASE("schedule input from json") {
  io::json j;
  j["format"] = io::kFormatTag;
  j["jobs"] = {"p1", "p2", "p3"};
  j["durations"] = {3, 1, 2};
  io::json voter1 = io::json::object();
  voter1["precedes"] = io::json::array({io::json::array({"p2", "p1"}), io::json::array({"p2", "p3"})});
  voter1["first"] = io::json::array({"p2"});
  io::json voter2 = io::json::object();
  voter2["precedes"] = io::json::array();
  j["voters"] = io::json::array({voter1, voter2});
  io::ScheduleInput input = io::schedule_from_json(j);
  CHECK(input.spec.jobs == std::vector<std::string>{"p1", "p2", "p3"});
  REQUIRE(input.ballots.size() == 2);
  CHECK(input.ballots[0].bits == Bits{0, 1, 0, 0, 0, 1, 1, 0, 0});
  CHECK(input.ballots[1].ones() == 0);

  j.erase("format");
  CHECK_THROWS_AS(io::schedule_from_json(j), StructuralError);
}

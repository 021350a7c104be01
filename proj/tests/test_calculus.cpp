#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "craig/dot.hpp"
#include "craig/parser.hpp"
#include "craig/proof.hpp"
#include "craig/proof_json.hpp"

using namespace craig;

namespace {

ProofPtr axiom(const std::string& s, std::vector<int> principal) {
  return make_proof(parse_sequent(s), RuleId::Axiom, std::move(principal));
}

}  // namespace

TEST_CASE("axiom forms") {
  CHECK(check_proof(axiom("p, q => q, p", {0, 0}), System::LK).ok());
  CHECK(check_proof(axiom("p, q => q, p", {1, 1}), System::LK).ok());
  CHECK(check_proof(axiom("=> true", {0}), System::LK).ok());
  CHECK(check_proof(axiom("false => q", {0}), System::LK).ok());
  CHECK(check_proof(axiom("p & q => r, p & q", {0, 0}), System::LK).ok());

  auto bad = check_proof(axiom("p, q => q, p", {0, 1}), System::LK);
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.violations[0].message.find("matching") != std::string::npos);
  CHECK_FALSE(check_proof(axiom("p => q", {0, 0}), System::LK).ok());
  CHECK_FALSE(check_proof(axiom("p => p", {2, 0}), System::LK).ok());
  CHECK_FALSE(check_proof(axiom("true => p", {0}), System::LK).ok());
}

TEST_CASE("unary schemas") {
  auto ax = axiom("p => p, q", {0, 0});
  auto notl = make_proof(parse_sequent("p, ~p => q"), RuleId::NotL, {1}, {ax});
  CHECK(check_proof(notl, System::LK).ok());

  auto wrong = make_proof(parse_sequent("p, ~p => q"), RuleId::NotL, {1},
                          {axiom("p => p", {0, 0})});
  auto rep = check_proof(wrong, System::LK);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.violations[0].message.find("should read 'p => p, q'") != std::string::npos);

  auto andl = make_proof(parse_sequent("p & q => p"), RuleId::AndLMult, {0},
                         {axiom("p, q => p", {0, 0})});
  CHECK(check_proof(andl, System::LK).ok());

  auto impr = make_proof(parse_sequent("=> p -> p"), RuleId::ImpR, {0},
                         {axiom("p => p", {0, 0})});
  CHECK(check_proof(impr, System::LK).ok());
  CHECK(check_proof(impr, System::LJ).ok());

  auto contr = make_proof(parse_sequent("p | p => p"), RuleId::ContrL, {0},
                          {make_proof(parse_sequent("p | p, p | p => p"), RuleId::Axiom,
                                      {0, 0})});
  auto crep = check_proof(contr, System::LK);
  REQUIRE(crep.violations.size() == 1);  // inner node is not an axiom
  CHECK(crep.violations[0].node == std::vector<int>{0});
}

TEST_CASE("binary schemas and premise context split") {
  auto andr = make_proof(parse_sequent("p, q => p & q"), RuleId::AndR, {0},
                         {axiom("p => p", {0, 0}), axiom("q => q", {0, 0})});
  CHECK(check_proof(andr, System::LK).ok());
  CHECK(check_proof(andr, System::LJ).ok());

  auto swapped = make_proof(parse_sequent("p, q => p & q"), RuleId::AndR, {0},
                            {axiom("q => q", {0, 0}), axiom("p => p", {0, 0})});
  auto rep = check_proof(swapped, System::LK);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.violations[0].message.find("lacks 'p'") != std::string::npos);

  auto impl = make_proof(parse_sequent("p, p -> q => q"), RuleId::ImpL, {1},
                         {axiom("p => p", {0, 0}), axiom("q => q", {0, 0})});
  CHECK(check_proof(impl, System::LK).ok());
  CHECK(check_proof(impl, System::LJ).ok());
}

TEST_CASE("single-succedent restrictions") {
  auto ax2 = axiom("p => p, q", {0, 0});
  auto rep = check_proof(ax2, System::LJ);
  REQUIRE(rep.violations.size() == 2);
  CHECK(rep.violations[0].message.find("distinct formulas") != std::string::npos);
  CHECK(rep.violations[1].message.find("single formula") != std::string::npos);

  auto weak = make_proof(parse_sequent("q => q, r"), RuleId::WeakR, {1},
                         {axiom("q => q", {0, 0})});
  CHECK(check_proof(weak, System::LK).ok());
  CHECK_FALSE(check_proof(weak, System::LJ).ok());

  auto notl = make_proof(parse_sequent("p, ~p => q"), RuleId::NotL, {1},
                         {axiom("p => p, q", {0, 0})});
  auto nrep = check_proof(notl, System::LJ);
  bool found = false;
  for (const auto& v : nrep.violations)
    if (v.message.find("empty succedent") != std::string::npos) found = true;
  CHECK(found);

  CHECK(check_proof(axiom("false => q, q", {0}), System::LJ).ok());
  CHECK_FALSE(check_proof(axiom("p => true, true", {0}), System::LJ).ok());
}

TEST_CASE("links across single inferences") {
  auto weak = make_proof(parse_sequent("q => q, r"), RuleId::WeakR, {1},
                         {axiom("q => q", {0, 0})});
  auto wlinks = per_rule_links(*weak);
  REQUIRE(wlinks.size() == 2);
  for (const auto& l : wlinks) CHECK(l.to.index == 0);  // nothing reaches r

  auto andl = make_proof(parse_sequent("p & q => q | r"), RuleId::AndLAddRight, {0},
                         {make_proof(parse_sequent("q => q | r"), RuleId::WeakL, {0})});
  auto alinks = per_rule_links(*andl);
  REQUIRE(alinks.size() == 3);
  CHECK(alinks[0].from == OccPath{Side::Ant, 0, {}});
  CHECK(alinks[0].to == OccPath{Side::Ant, 0, {1}});  // q lands under the conjunction

  auto contr = make_proof(parse_sequent("p | p => p"), RuleId::ContrR, {0},
                          {axiom("p | p => p, p", {0, 0})});
  auto clinks = per_rule_links(*contr);
  int hits = 0;
  for (const auto& l : clinks)
    if (l.from.side == Side::Suc && l.to == OccPath{Side::Suc, 0, {}}) ++hits;
  CHECK(hits == 2);  // both copies collapse onto the contracted occurrence
}

TEST_CASE("flow graph composition") {
  auto ax = axiom("q => q", {0, 0});
  auto weak = make_proof(parse_sequent("q => q, r"), RuleId::WeakR, {1}, {ax});
  auto orr = make_proof(parse_sequent("q => q | r"), RuleId::OrRMult, {0}, {weak});
  auto andl = make_proof(parse_sequent("p & q => q | r"), RuleId::AndLAddRight, {0}, {orr});
  REQUIRE(check_proof(andl, System::LK).ok());

  auto g = flow_graph(andl);
  CHECK(g.vertices.size() == 4);
  REQUIRE(g.edges.size() == 1);
  CHECK(flow_has_edge(g, OccPath{Side::Ant, 0, {1}}, OccPath{Side::Suc, 0, {0}}));

  auto dot = flow_dot(g, andl->conclusion);
  CHECK(dot.find("\"ant:0:0:p\"") != std::string::npos);
  CHECK(dot.find("\"ant:0:1:q\" -- \"suc:0:0:q\"") != std::string::npos);
}

TEST_CASE("contraction makes the flow one-to-many") {
  auto orl = make_proof(parse_sequent("p | p => p, p"), RuleId::OrL, {0},
                        {axiom("p => p", {0, 0}), axiom("p => p", {0, 0})});
  auto contr = make_proof(parse_sequent("p | p => p"), RuleId::ContrR, {0}, {orl});
  REQUIRE(check_proof(contr, System::LK).ok());

  auto g = flow_graph(contr);
  REQUIRE(g.edges.size() == 2);
  CHECK(flow_has_edge(g, OccPath{Side::Ant, 0, {0}}, OccPath{Side::Suc, 0, {}}));
  CHECK(flow_has_edge(g, OccPath{Side::Ant, 0, {1}}, OccPath{Side::Suc, 0, {}}));
}

TEST_CASE("implication flow") {
  auto impl = make_proof(parse_sequent("p, p -> q => q"), RuleId::ImpL, {1},
                         {axiom("p => p", {0, 0}), axiom("q => q", {0, 0})});
  auto g = flow_graph(impl);
  REQUIRE(g.edges.size() == 2);
  CHECK(flow_has_edge(g, OccPath{Side::Ant, 0, {}}, OccPath{Side::Ant, 1, {0}}));
  CHECK(flow_has_edge(g, OccPath{Side::Ant, 1, {1}}, OccPath{Side::Suc, 0, {}}));
}

TEST_CASE("proof serialization") {
  auto impl = make_proof(parse_sequent("p, p -> q => q"), RuleId::ImpL, {1},
                         {axiom("p => p", {0, 0}), axiom("q => q", {0, 0})});
  auto j = proof_to_json(impl);
  CHECK(j["rule"] == "ImpL");
  CHECK(j["conclusion"] == "p, p -> q => q");
  auto rt = proof_from_json(j);
  CHECK(proof_to_json(rt) == j);
  CHECK(check_proof(rt, System::LK).ok());

  auto j2 = j;
  j2["rule"] = "Cut";
  CHECK_THROWS_AS(proof_from_json(j2), std::runtime_error);
  auto j3 = j;
  j3.erase("principal");
  CHECK_THROWS_AS(proof_from_json(j3), std::runtime_error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "craig/eval.hpp"
#include "craig/parser.hpp"

using namespace craig;

TEST_CASE("parse and print round trip on canonical text") {
  const char* samples[] = {
      "p",
      "true",
      "false",
      "~p",
      "~~p",
      "~(p & q)",
      "p & q",
      "p & q & r",
      "p & (q & r)",
      "p | q & r",
      "(p | q) & r",
      "p -> q -> r",
      "(p -> q) -> r",
      "~p & q | r -> s",
      "p -> (q | r) & ~s",
      "_x1 & Y_2",
  };
  for (const char* s : samples) {
    Formula f = parse_formula(s);
    CHECK(f.text() == s);
    CHECK(parse_formula(f.text()) == f);
  }
}

TEST_CASE("precedence and associativity shape") {
  Formula f = parse_formula("~p & q | r -> s");
  REQUIRE(f.kind() == Conn::Implies);
  CHECK(f.child(0).text() == "~p & q | r");
  CHECK(f.child(0).kind() == Conn::Or);
  CHECK(f.child(0).child(0).kind() == Conn::And);
  CHECK(f.child(0).child(0).child(0).kind() == Conn::Not);

  Formula g = parse_formula("p -> q -> r");
  CHECK(g.child(1).kind() == Conn::Implies);
  CHECK(parse_formula("(p -> q) -> r") != g);

  CHECK(parse_formula("p & q & r").child(0).kind() == Conn::And);
  CHECK(parse_formula("  p   &q ").text() == "p & q");
}

TEST_CASE("formula measures") {
  Formula f = parse_formula("p & (q -> p)");
  CHECK(f.size() == 5);
  CHECK(f.depth() == 3);
  CHECK(parse_formula("p").depth() == 1);
  CHECK(parse_formula("~p").depth() == 2);
  CHECK(parse_formula("true").size() == 1);
  CHECK(f.atoms() == std::set<std::string>{"p", "q"});
}

TEST_CASE("atom paths walk leaves left to right") {
  auto paths = atom_paths(parse_formula("p & (q -> p)"));
  REQUIRE(paths.size() == 3);
  CHECK(paths[0] == std::pair<std::vector<int>, std::string>{{0}, "p"});
  CHECK(paths[1] == std::pair<std::vector<int>, std::string>{{1, 0}, "q"});
  CHECK(paths[2] == std::pair<std::vector<int>, std::string>{{1, 1}, "p"});
  CHECK(atom_paths(parse_formula("true & false")).empty());
  auto root = atom_paths(parse_formula("p"));
  REQUIRE(root.size() == 1);
  CHECK(root[0].first.empty());
}

TEST_CASE("parse errors carry positions") {
  auto pos_of = [](const char* s) {
    try {
      parse_formula(s);
    } catch (const ParseError& e) {
      return e.position();
    }
    return -1;
  };
  CHECK(pos_of("p &") == 4);
  CHECK(pos_of("p q") == 3);
  CHECK(pos_of("(p") == 3);
  CHECK(pos_of("p - q") == 3);
  CHECK(pos_of("@") == 1);
  CHECK(pos_of("") == 1);
  CHECK_THROWS_AS(parse_sequent("p => q => r"), ParseError);
  CHECK_THROWS_AS(parse_sequent("p, q"), ParseError);
}

TEST_CASE("sequent parsing and canonical order") {
  Sequent s = parse_sequent("q, p => r");
  CHECK(s.text() == "p, q => r");
  CHECK(parse_sequent("p,q=>r") == parse_sequent("q, p => r"));
  CHECK(parse_sequent("=>").text() == "=>");
  CHECK(parse_sequent("p =>").text() == "p =>");
  CHECK(parse_sequent("=> p").text() == "=> p");

  Sequent dup = parse_sequent("p, q, p => p");
  CHECK(dup.ant().size() == 3);
  CHECK(dup.at(Side::Ant, 0).text() == "p");
  CHECK(dup.at(Side::Ant, 1).text() == "p");
  CHECK(dup.at(Side::Ant, 2).text() == "q");

  auto [grown, at] = dup.inserted(Side::Ant, parse_formula("p"));
  CHECK(at == 2);
  CHECK(grown.ant().size() == 4);
  auto [grown2, at2] = dup.inserted(Side::Suc, parse_formula("a"));
  CHECK(at2 == 0);
  CHECK(grown2.suc().size() == 2);
  CHECK(grown2.removed(Side::Suc, 0) == dup);
}

TEST_CASE("occurrence labels") {
  Sequent s = parse_sequent("p & (q -> p) => r");
  CHECK(occ_label(OccPath{Side::Ant, 0, {1, 0}}, s) == "ant:0:1.0:q");
  CHECK(occ_label(OccPath{Side::Suc, 0, {}}, s) == "suc:0::r");
}

TEST_CASE("classical evaluation oracle") {
  Valuation v{{"p", true}, {"q", false}};
  CHECK(eval_classical(parse_formula("p & ~q"), v));
  CHECK(eval_classical(parse_formula("q -> p"), v));
  CHECK_FALSE(eval_classical(parse_formula("p -> q"), v));
  CHECK_FALSE(eval_classical(parse_formula("r"), v));
  CHECK(eval_classical(parse_formula("true"), {}));
  CHECK_FALSE(eval_classical(parse_formula("false"), {}));
}

TEST_CASE("truth-table validity oracle") {
  CHECK(is_valid_classical(parse_sequent("p & q => q | r")));
  CHECK(is_valid_classical(parse_sequent("=> p | ~p")));
  CHECK(is_valid_classical(parse_sequent("p & ~p => q")));
  CHECK(is_valid_classical(parse_sequent("p, p -> q => q")));
  CHECK(is_valid_classical(parse_sequent("=> ((p -> q) -> p) -> p")));
  CHECK(is_valid_classical(parse_sequent("false =>")));
  CHECK(is_valid_classical(parse_sequent("=> true")));
  CHECK_FALSE(is_valid_classical(parse_sequent("p | q => q")));
  CHECK_FALSE(is_valid_classical(parse_sequent("=> p")));
  CHECK_FALSE(is_valid_classical(parse_sequent("p => p -> q")));
  CHECK_FALSE(is_valid_classical(parse_sequent("=>")));
  CHECK_FALSE(is_valid_classical(parse_sequent("p => q")));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>
#include <string>
#include <vector>

#include "craig/eval.hpp"
#include "craig/maehara.hpp"
#include "craig/parser.hpp"
#include "craig/proof_json.hpp"
#include "craig/prover.hpp"
#include "doctest.h"

using namespace craig;

namespace {

Sequent seq(const std::string& text) { return parse_sequent(text); }

// Color strings follow the canonical occurrence order of each side.
Partition colors(const std::string& ant, const std::string& suc) {
  Partition p;
  for (int i = 0; i < static_cast<int>(ant.size()); ++i)
    p.color[{Side::Ant, i}] = ant[i] == 'A' ? Part::A : Part::B;
  for (int i = 0; i < static_cast<int>(suc.size()); ++i)
    p.color[{Side::Suc, i}] = suc[i] == 'A' ? Part::A : Part::B;
  return p;
}

ProofPtr lk(const std::string& text) {
  auto p = prove_lk(seq(text));
  REQUIRE(p.has_value());
  return *p;
}

ProofPtr lj(const std::string& text) {
  LjResult r = prove_lj(seq(text));
  REQUIRE(r.status == LjStatus::Proved);
  return r.proof;
}

std::pair<Sequent, Sequent> parts_of(const Sequent& s, const Partition& part) {
  std::vector<Formula> aa, as, ba, bs;
  for (Side side : {Side::Ant, Side::Suc})
    for (int i = 0; i < s.count(side); ++i) {
      bool a = part.color.at({side, i}) == Part::A;
      auto& bucket = side == Side::Ant ? (a ? aa : ba) : (a ? as : bs);
      bucket.push_back(s.at(side, i));
    }
  return {Sequent::of(std::move(aa), std::move(as)),
          Sequent::of(std::move(ba), std::move(bs))};
}

void check_shared_language(const Formula& interpolant, const Sequent& pa,
                           const Sequent& pb) {
  auto av = pa.atoms();
  auto bv = pb.atoms();
  for (const auto& name : interpolant.atoms()) {
    CAPTURE(name);
    CHECK(av.count(name) == 1);
    CHECK(bv.count(name) == 1);
  }
}

void check_traces(const InterpolationCertificate& c, const ProofPtr& p,
                  const Partition& part) {
  auto expected = atom_paths(c.interpolant);
  REQUIRE(c.traces.size() == expected.size());
  FlowGraph g = flow_graph(p);
  for (size_t k = 0; k < c.traces.size(); ++k) {
    const Trace& t = c.traces[k];
    CHECK(t.interpolant_path == expected[k].first);
    CHECK(part.color.at({t.a_end.side, t.a_end.index}) == Part::A);
    CHECK(part.color.at({t.b_end.side, t.b_end.index}) == Part::B);
    CHECK(flow_has_edge(g, t.a_end, t.b_end));
  }
}

InterpolationCertificate check_lk(const ProofPtr& p, const Partition& part) {
  InterpolationCertificate c = interpolate_lk(p, part);
  auto [pa, pb] = parts_of(p->conclusion, part);
  CHECK(c.left->conclusion == pa.inserted(Side::Suc, c.interpolant).first);
  CHECK(c.right->conclusion == pb.inserted(Side::Ant, c.interpolant).first);
  CHECK(check_proof(c.left, System::LK).ok());
  CHECK(check_proof(c.right, System::LK).ok());
  CHECK(is_valid_classical(c.left->conclusion));
  CHECK(is_valid_classical(c.right->conclusion));
  check_shared_language(c.interpolant, pa, pb);
  CHECK(c.interpolant.size() <= 2 * proof_size(p));
  check_traces(c, p, part);
  return c;
}

InterpolationCertificate check_lj(const ProofPtr& p, const Partition& part) {
  InterpolationCertificate c = interpolate_lj(p, part);
  auto [pa, pb] = parts_of(p->conclusion, part);
  CHECK(c.left->conclusion == pa.inserted(Side::Suc, c.interpolant).first);
  CHECK(c.right->conclusion == pb.inserted(Side::Ant, c.interpolant).first);
  CHECK(check_proof(c.left, System::LJ).ok());
  CHECK(check_proof(c.right, System::LJ).ok());
  CHECK(prove_lj(c.left->conclusion).status == LjStatus::Proved);
  CHECK(prove_lj(c.right->conclusion).status == LjStatus::Proved);
  check_shared_language(c.interpolant, pa, pb);
  CHECK(c.interpolant.size() <= 2 * proof_size(p));
  return c;
}

}  // namespace

TEST_CASE("axiom split keeps the shared atom") {
  ProofPtr p = lk("p => p");
  auto c = check_lk(p, colors("A", "B"));
  CHECK(c.interpolant == Formula::atom("p"));
  CHECK(c.left->conclusion == seq("p => p"));
  CHECK(c.right->conclusion == seq("p => p"));
  REQUIRE(c.traces.size() == 1);
  CHECK(c.traces[0] == Trace{{}, {Side::Ant, 0, {}}, {Side::Suc, 0, {}}});
}

TEST_CASE("conjunction proof transmits only the common atom") {
  ProofPtr p = lk("p & q => q | r");
  auto c = check_lk(p, colors("A", "B"));
  CHECK(c.interpolant == Formula::atom("q"));
  CHECK(c.left->conclusion == seq("p & q => q"));
  CHECK(c.right->conclusion == seq("q => q | r"));

  auto swapped = check_lk(p, colors("B", "A"));
  CHECK(swapped.interpolant == Formula::negation(Formula::atom("q")));
}

TEST_CASE("clashing antecedent interpolates to the false constant") {
  ProofPtr p = lk("p & ~p => q");
  auto c = check_lk(p, colors("A", "B"));
  CHECK(c.interpolant == Formula::bottom());
  CHECK(c.traces.empty());
  CHECK(c.left->conclusion == seq("p & ~p => false"));
  CHECK(c.right->conclusion == seq("false => q"));
}

TEST_CASE("one sided colorings collapse to a constant") {
  ProofPtr p = lk("=> p | ~p");
  auto all_b = check_lk(p, colors("", "B"));
  CHECK(all_b.interpolant == Formula::top());
  CHECK(all_b.left->conclusion == seq("=> true"));

  auto all_a = check_lk(p, colors("", "A"));
  CHECK(all_a.interpolant == Formula::bottom());
  CHECK(all_a.right->conclusion == seq("false =>"));

  // axioms never cross the coloring, so one part is provable on its own
  auto [pa, pb] = parts_of(p->conclusion, colors("", "A"));
  CHECK(prove_lk(pa).has_value());
  CHECK_FALSE(prove_lk(pb).has_value());
}

TEST_CASE("binary steps follow the color of the value") {
  ProofPtr p = lk("p, p -> q => q");
  auto c = check_lk(p, colors("AB", "B"));
  CHECK(c.interpolant ==
        Formula::conjunction(Formula::atom("p"), Formula::top()));
  CHECK(c.left->conclusion == seq("p => p & true"));
  CHECK(c.right->conclusion == seq("p & true, p -> q => q"));

  auto d = check_lk(p, colors("BB", "A"));
  CHECK(d.interpolant ==
        Formula::conjunction(Formula::top(),
                             Formula::negation(Formula::atom("q"))));
}

TEST_CASE("disjunctive main in the A part joins with a disjunction") {
  ProofPtr p = lk("p | p => p");
  auto c = check_lk(p, colors("A", "B"));
  CHECK(c.interpolant ==
        Formula::disjunction(Formula::atom("p"), Formula::atom("p")));
  CHECK(c.traces.size() == 2);
}

TEST_CASE("weakening passes the interpolant through") {
  ProofPtr ax = make_proof(seq("p => p"), RuleId::Axiom, {0, 0});
  ProofPtr w = fwd_weak(Side::Suc, Formula::atom("q"), ax);
  REQUIRE(w->conclusion == seq("p => p, q"));
  auto c = interpolate_lk(w, colors("A", "BB"));
  CHECK(c.interpolant == Formula::atom("p"));
  CHECK(c.left->conclusion == seq("p => p"));
  CHECK(c.right->conclusion == seq("p => p, q"));
}

TEST_CASE("coloring must cover every end occurrence") {
  ProofPtr p = lk("p => p");
  CHECK_THROWS_WITH_AS(interpolate_lk(p, Partition{}),
                       "partition not total over the end sequent",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(interpolate_lk(p, colors("A", "")),
                       "partition not total over the end sequent",
                       std::invalid_argument);
  Partition off;
  off.color[{Side::Ant, 0}] = Part::A;
  off.color[{Side::Suc, 3}] = Part::B;
  CHECK_THROWS_WITH_AS(interpolate_lk(p, off),
                       "partition not total over the end sequent",
                       std::invalid_argument);
}

TEST_CASE("malformed proofs are rejected before splitting") {
  ProofPtr bad = make_proof(seq("p => q"), RuleId::Axiom, {0, 0});
  CHECK_THROWS_AS(interpolate_lk(bad, colors("A", "B")), std::invalid_argument);
}

TEST_CASE("single succedent split of a conjunction proof") {
  ProofPtr p = lj("p & q => p");
  auto c = check_lj(p, colors("A", "B"));
  CHECK(c.interpolant == Formula::atom("p"));
  CHECK(c.left->conclusion == seq("p & q => p"));
  CHECK(c.right->conclusion == seq("p => p"));
}

TEST_CASE("empty left component interpolates to the true constant") {
  ProofPtr p = lj("p & q => p");
  auto c = check_lj(p, colors("B", "B"));
  CHECK(c.interpolant == Formula::top());
  CHECK(c.left->conclusion == seq("=> true"));
  CHECK(c.right->conclusion == seq("p & q, true => p"));
}

TEST_CASE("empty right component interpolates through a negation") {
  ProofPtr ax = make_proof(seq("p => p"), RuleId::Axiom, {0, 0});
  ProofPtr p = fwd_intro(RuleId::NotL, {{Side::Suc, Formula::atom("p")}},
                         Side::Ant, Formula::negation(Formula::atom("p")), ax);
  REQUIRE(p->conclusion == seq("p, ~p =>"));
  auto c = check_lj(p, colors("AA", ""));
  CHECK(c.interpolant == Formula::negation(Formula::top()));
  CHECK(c.right->conclusion == seq("~true =>"));
}

TEST_CASE("implication premise keeps the transmitted atom") {
  ProofPtr left = make_proof(seq("p => p"), RuleId::Axiom, {0, 0});
  ProofPtr right = make_proof(seq("q => q"), RuleId::Axiom, {0, 0});
  ProofPtr p = fwd_binary(RuleId::ImpL, parse_formula("p -> q"), left, right);
  REQUIRE(p->conclusion == seq("p, p -> q => q"));
  auto c = check_lj(p, colors("AB", "B"));
  CHECK(c.interpolant == Formula::atom("p"));
  CHECK(c.left->conclusion == seq("p => p"));
  CHECK(c.right->conclusion == seq("p, p -> q => q"));
  REQUIRE(c.traces.size() == 1);
  CHECK(c.traces[0] == Trace{{}, {Side::Ant, 0, {}}, {Side::Ant, 1, {0}}});
  CHECK(flow_has_edge(flow_graph(p), c.traces[0].a_end, c.traces[0].b_end));
}

TEST_CASE("searched implication proof interpolates with a unit") {
  ProofPtr p = lj("p, p -> q => q");
  auto c = check_lj(p, colors("AB", "B"));
  CHECK(c.interpolant ==
        Formula::conjunction(Formula::atom("p"), Formula::top()));
}

TEST_CASE("negative main on the left flips the interpolant") {
  ProofPtr ax = make_proof(seq("p => p"), RuleId::Axiom, {0, 0});
  ProofPtr p = fwd_intro(RuleId::NotL, {{Side::Suc, Formula::atom("p")}},
                         Side::Ant, Formula::negation(Formula::atom("p")), ax);
  auto c = check_lj(p, colors("BA", ""));
  CHECK(c.interpolant == Formula::negation(Formula::atom("p")));
  CHECK(c.left->conclusion == seq("~p => ~p"));
  CHECK(c.right->conclusion == seq("p, ~p =>"));
}

TEST_CASE("single succedent restriction is enforced") {
  ProofPtr p = lj("p & q => p");
  CHECK_THROWS_AS(interpolate_lj(p, colors("A", "A")), std::invalid_argument);

  ProofPtr classical = lk("=> p | ~p");
  CHECK_THROWS_AS(interpolate_lj(classical, colors("", "B")),
                  std::invalid_argument);
}

TEST_CASE("constant replacement rewrites over the pool") {
  auto c = interpolate_lk(lk("p & ~p => q"), colors("A", "B"));
  REQUIRE(c.interpolant == Formula::bottom());

  auto n = normalize_constants(c, {"q"});
  CHECK(n.interpolant == parse_formula("q & ~q"));
  CHECK(n.left->conclusion == seq("p & ~p => q & ~q"));
  CHECK(n.right->conclusion == seq("q & ~q => q"));
  CHECK(check_proof(n.left, System::LK).ok());
  CHECK(check_proof(n.right, System::LK).ok());
  CHECK(is_valid_classical(n.left->conclusion));
  CHECK(is_valid_classical(n.right->conclusion));

  auto least = normalize_constants(c, {"b", "a"});
  CHECK(least.interpolant == parse_formula("a & ~a"));

  CHECK_THROWS_AS(normalize_constants(c, {}), NoReplacementAvailable);
}

TEST_CASE("constant free certificates pass replacement unchanged") {
  auto c = interpolate_lk(lk("p & q => q | r"), colors("A", "B"));
  auto n = normalize_constants(c, {"z"});
  CHECK(n.interpolant == c.interpolant);
  CHECK(n.left == c.left);
  CHECK(n.right == c.right);
}

TEST_CASE("true constant replacement uses an implication") {
  auto c = interpolate_lk(lk("p => p"), colors("B", "B"));
  REQUIRE(c.interpolant == Formula::top());
  auto n = normalize_constants(c, {"p"});
  CHECK(n.interpolant == parse_formula("p -> p"));
  CHECK(is_valid_classical(n.left->conclusion));
  CHECK(is_valid_classical(n.right->conclusion));
  CHECK_THROWS_AS(normalize_constants(c, {}), NoReplacementAvailable);
}

TEST_CASE("atom traces land on axiom links") {
  ProofPtr p = lk("p => p");
  Partition part = colors("A", "B");
  auto c = interpolate_lk(p, part);
  auto ts = trace_atoms(c, p, part);
  CHECK(ts == c.traces);

  Formula q = Formula::atom("q");
  Formula pq = parse_formula("p & q");
  ProofPtr a1 = make_proof(seq("q => q"), RuleId::Axiom, {0, 0});
  ProofPtr a2 = make_proof(seq("q => q"), RuleId::Axiom, {0, 0});
  ProofPtr l1 = fwd_intro(RuleId::AndLAddRight, {{Side::Ant, q}}, Side::Ant, pq, a1);
  ProofPtr l2 = fwd_intro(RuleId::AndLAddRight, {{Side::Ant, q}}, Side::Ant, pq, a2);
  ProofPtr j = fwd_binary(RuleId::AndR, parse_formula("q & q"), l1, l2);
  ProofPtr contracted = fwd_contr(Side::Ant, pq, j);
  REQUIRE(contracted->conclusion == seq("p & q => q & q"));

  Partition split = colors("A", "B");
  auto cc = check_lk(contracted, split);
  CHECK(cc.interpolant == parse_formula("q & q"));
  auto both = trace_atoms(cc, contracted, split);
  REQUIRE(both.size() == 2);
  FlowGraph g = flow_graph(contracted);
  for (const Trace& t : both) {
    CHECK(t.a_end == OccPath{Side::Ant, 0, {1}});
    CHECK(flow_has_edge(g, t.a_end, t.b_end));
  }
  CHECK(both[0].interpolant_path == std::vector<int>{0});
  CHECK(both[1].interpolant_path == std::vector<int>{1});
  CHECK(both[0].b_end == OccPath{Side::Suc, 0, {0}});
  CHECK(both[1].b_end == OccPath{Side::Suc, 0, {1}});

  // a single-succedent certificate is recognized even where the classical
  // table would have produced a different interpolant
  ProofPtr b1 = make_proof(seq("p => p"), RuleId::Axiom, {0, 0});
  ProofPtr b2 = make_proof(seq("q => q"), RuleId::Axiom, {0, 0});
  ProofPtr imp = fwd_binary(RuleId::ImpL, parse_formula("p -> q"), b1, b2);
  Partition lp = colors("AB", "B");
  auto lc = interpolate_lj(imp, lp);
  REQUIRE(lc.interpolant == Formula::atom("p"));
  CHECK(trace_atoms(lc, imp, lp) == lc.traces);
}

TEST_CASE("traces refuse weakened proofs and foreign certificates") {
  ProofPtr ax = make_proof(seq("p => p"), RuleId::Axiom, {0, 0});
  ProofPtr w = fwd_weak(Side::Suc, Formula::atom("q"), ax);
  Partition part = colors("A", "BB");
  auto c = interpolate_lk(w, part);
  CHECK_THROWS_AS(trace_atoms(c, w, part), TraceUnavailable);

  ProofPtr p = lk("p => p");
  auto other = interpolate_lk(lk("p & q => q | r"), colors("A", "B"));
  CHECK_THROWS_AS(trace_atoms(other, p, colors("A", "B")), std::invalid_argument);
}

TEST_CASE("repeated extraction is reproducible") {
  ProofPtr p = lk("p -> q, q -> r => p -> r");
  Partition part = colors("AB", "B");
  auto c1 = interpolate_lk(p, part);
  auto c2 = interpolate_lk(p, part);
  CHECK(c1.interpolant == c2.interpolant);
  CHECK(proof_to_json(c1.left) == proof_to_json(c2.left));
  CHECK(proof_to_json(c1.right) == proof_to_json(c2.right));
  CHECK(c1.traces == c2.traces);

  ProofPtr q = lj("p & q => p");
  auto d1 = interpolate_lj(q, colors("A", "B"));
  auto d2 = interpolate_lj(q, colors("A", "B"));
  CHECK(d1.interpolant == d2.interpolant);
  CHECK(proof_to_json(d1.left) == proof_to_json(d2.left));
  CHECK(proof_to_json(d1.right) == proof_to_json(d2.right));
}

TEST_CASE("certificate sweep over classical proofs") {
  const char* goals[] = {
      "p => p",
      "=> p | ~p",
      "p & q => q | r",
      "p & ~p => q",
      "=> ((p -> q) -> p) -> p",
      "p -> q, q -> r => p -> r",
      "=> (p -> q) | (q -> p)",
      "~(p & q) => ~p | ~q",
      "=> true",
      "false => p & ~p",
      "p | q => q | p",
      "p -> q, p => q, r",
      "~~p => p",
      "p | (q & r) => (p | q) & (p | r)",
      "p -> (q -> r) => q -> (p -> r)",
      "p & q, q -> r => r | s",
  };
  for (const char* text : goals) {
    CAPTURE(text);
    ProofPtr p = lk(text);
    const Sequent& end = p->conclusion;
    int na = end.count(Side::Ant), ns = end.count(Side::Suc);

    Partition ab, ba, mixed;
    int k = 0;
    for (int i = 0; i < na; ++i, ++k) {
      ab.color[{Side::Ant, i}] = Part::A;
      ba.color[{Side::Ant, i}] = Part::B;
      mixed.color[{Side::Ant, i}] = k % 2 ? Part::B : Part::A;
    }
    for (int i = 0; i < ns; ++i, ++k) {
      ab.color[{Side::Suc, i}] = Part::B;
      ba.color[{Side::Suc, i}] = Part::A;
      mixed.color[{Side::Suc, i}] = k % 2 ? Part::B : Part::A;
    }
    check_lk(p, ab);
    check_lk(p, ba);
    check_lk(p, mixed);
  }
}

TEST_CASE("certificate sweep over single succedent proofs") {
  const char* goals[] = {
      "p & q => p",
      "p & q => q & p",
      "p, p -> q => q",
      "p -> (q -> r), p, q => r",
      "p | q, p -> r, q -> r => r",
      "p & (q | r) => (p & q) | (p & r)",
      "p, ~p =>",
      "p -> q, q -> r, p => r",
      "p => ~~p",
      "false => q",
      "q, p => p & q",
      "p | p => p",
      "p => p | q",
      "~~p, q => q",
      "(p -> q) -> r, q => r",
  };
  for (const char* text : goals) {
    CAPTURE(text);
    ProofPtr p = lj(text);
    const Sequent& end = p->conclusion;
    int na = end.count(Side::Ant), ns = end.count(Side::Suc);

    Partition gamma1, gamma2, mixed;
    for (int i = 0; i < na; ++i) {
      gamma1.color[{Side::Ant, i}] = Part::A;
      gamma2.color[{Side::Ant, i}] = Part::B;
      mixed.color[{Side::Ant, i}] = i % 2 ? Part::B : Part::A;
    }
    for (int i = 0; i < ns; ++i) {
      gamma1.color[{Side::Suc, i}] = Part::B;
      gamma2.color[{Side::Suc, i}] = Part::B;
      mixed.color[{Side::Suc, i}] = Part::B;
    }
    check_lj(p, gamma1);
    check_lj(p, gamma2);
    check_lj(p, mixed);
  }
}

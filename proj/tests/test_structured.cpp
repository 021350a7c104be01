#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <string>
#include <vector>

#include "craig/builders.hpp"
#include "craig/derivation.hpp"
#include "craig/parser.hpp"
#include "craig/prover.hpp"
#include "doctest.h"

using namespace craig;

namespace {

Sequent seq(const std::string& text) { return parse_sequent(text); }

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

PointSet pset(Derivation& d, const std::string& f) {
  return tree_set(d.alloc.set_id(), parse_formula(f), d.alloc.next_point);
}

}  // namespace

TEST_CASE("triviality needs a crossing witness and two occupied components") {
  SetTable table;
  int np = 0;
  PointSet s = tree_set(0, parse_formula("p"), np);
  PointSet t = tree_set(1, parse_formula("p"), np);
  table[0] = s;
  table[1] = t;

  StructuredSet both;
  both.first = {0};
  both.second = {1};
  CHECK_FALSE(validate_trivial(both, tree_identity(s, t), table).has_value());
  CHECK_FALSE(validate_trivial(both, tree_identity(t, s), table).has_value());

  StructuredSet lop;
  lop.first = {0};
  auto v = validate_trivial(lop, tree_identity(s, t), table);
  REQUIRE(v.has_value());
  CHECK(*v == "the components of a trivial structured set are non-empty");

  PointSet e = plain_set(2, {});
  table[2] = e;
  StructuredSet hollow;
  hollow.first = {2};
  hollow.second = {1};
  Embedding none{2, 1, {}};
  CHECK_FALSE(validate_trivial(hollow, none, table).has_value());

  StructuredSet skew;
  skew.first = {0, 1};
  skew.second = {2};
  CHECK(validate_trivial(skew, tree_identity(s, t), table).has_value());
}

TEST_CASE("a unary step wraps its argument under the new connective") {
  Derivation d;
  Space sp;
  PointSet x = pset(d, "p");
  PointSet y = pset(d, "p");
  Embedding w = tree_identity(x, y);
  push_initial(d, sp, {x}, {y}, w);

  OperatorSpec notr = rule_operator(RuleId::NotR);
  int out = push_step(d, sp, notr, {0}, {{{Comp::First, 0}}});
  auto& st = std::get<OpStep>(d.steps.back());
  const PointSet& v = set_at(d.table, st.value_id);
  CHECK(decode_formula(v).text() == "~p");
  CHECK(sp[static_cast<size_t>(out)].first.empty());
  CHECK(sp[static_cast<size_t>(out)].second ==
        std::vector<int>{y.id, st.value_id});
  CHECK(st.surjective);
  REQUIRE(st.arg_embeddings.size() == 1);
  REQUIRE(st.arg_embeddings[0].pairs.size() == 1);
  CHECK(st.arg_embeddings[0].pairs[0] ==
        std::pair<int, int>{point_at(x, {}), point_at(v, {0})});
}

TEST_CASE("selections from a wrong or exhausted component are rejected") {
  Derivation d;
  Space sp;
  PointSet x = pset(d, "p");
  PointSet y = pset(d, "p");
  push_initial(d, sp, {x}, {y}, tree_identity(x, y));
  OperatorSpec notr = rule_operator(RuleId::NotR);
  CHECK_THROWS_AS(push_step(d, sp, notr, {0}, {{{Comp::Second, 0}}}),
                  ComponentMismatch);
  CHECK_THROWS_AS(push_step(d, sp, notr, {0}, {{{Comp::First, 7}}}), ArgumentMissing);
  PointSet x2 = pset(d, "q");
  PointSet y2 = pset(d, "q");
  push_initial(d, sp, {x2}, {y2}, tree_identity(x2, y2));
  CHECK_THROWS_AS(push_step(d, sp, notr, {0, 1}, {{{Comp::First, 0}}, {}}),
                  ArgumentMissing);
}

TEST_CASE("the binary conjunction step mirrors the kernel's rule links") {
  Formula p = parse_formula("p"), q = parse_formula("q");
  ProofPtr ax1 = make_proof(Sequent::of({p}, {p}), RuleId::Axiom, {0, 0});
  ProofPtr ax2 = make_proof(Sequent::of({q}, {q}), RuleId::Axiom, {0, 0});
  ProofPtr pr = fwd_binary(RuleId::AndR, Formula::conjunction(p, q), ax1, ax2);
  REQUIRE(check_proof(pr, System::LK).ok());

  Derivation d = lk_as_operators(pr, colors("AB", "A"));
  REQUIRE(d.steps.size() == 1);
  auto& st = std::get<OpStep>(d.steps[0]);
  CHECK(st.op == rule_name(RuleId::AndR));
  CHECK(st.inputs == std::vector<int>{0, 1});
  CHECK(st.surjective);
  const PointSet& v = set_at(d.table, st.value_id);
  CHECK(decode_formula(v).text() == "p & q");

  auto links = per_rule_links(*pr);
  int hits = 0;
  for (auto& ln : links) {
    if (ln.to.side != Side::Suc) continue;
    auto& emb = st.arg_embeddings[static_cast<size_t>(ln.premise)];
    const PointSet& src = set_at(d.table, emb.source);
    std::pair<int, int> want{point_at(src, ln.from.path), point_at(v, ln.to.path)};
    CHECK(std::count(emb.pairs.begin(), emb.pairs.end(), want) == 1);
    ++hits;
  }
  CHECK(hits == 2);
  CHECK(decode_sequent(d.final_space.at(0), d) == seq("p, q => p & q"));
}

TEST_CASE("weakening adjoins a set with no history") {
  Formula p = parse_formula("p"), q = parse_formula("q");
  ProofPtr ax = make_proof(Sequent::of({p}, {p}), RuleId::Axiom, {0, 0});
  ProofPtr pr = fwd_weak(Side::Suc, q, ax);
  REQUIRE(check_proof(pr, System::LK).ok());
  Derivation d = lk_as_operators(pr, colors("A", "AB"));
  REQUIRE(d.steps.size() == 1);
  auto* adj = std::get_if<AdjoinStep>(&d.steps[0]);
  REQUIRE(adj != nullptr);
  CHECK(adj->comp == Comp::Second);
  CHECK(decode_formula(set_at(d.table, adj->set_id)).text() == "q");
  CHECK_NOTHROW(replay(d));
}

TEST_CASE("empty auxiliaries give back the base operator's action") {
  OperatorSpec base = plain_op("join", {{1, 0}, {1, 0}}, Comp::First);
  PointSet s1 = plain_set(0, {0, 1});
  PointSet none = plain_set(1, {});
  OperatorSpec der = derive_operator(base, 1, {{1, 0, Comp::First, none}});
  CHECK(der.arity == 1);
  CHECK(der.surjective);

  IdAlloc a1{10, 10}, a2{10, 10};
  BuiltValue full = base.build({&s1, &none}, a1);
  BuiltValue part = der.build({&s1}, a2);
  BuiltValue trimmed{full.value, {full.args[0]}};
  CHECK(built_equivalent(trimmed, {&s1}, part, {&s1}));
}

TEST_CASE("the additive conjunction-left is the multiplicative one plus an auxiliary") {
  Formula p = parse_formula("p");
  ProofPtr ax = make_proof(Sequent::of({p}, {p}), RuleId::Axiom, {0, 0});
  ProofPtr pr = fwd_intro(RuleId::AndLAddLeft, {{Side::Ant, p}}, Side::Ant,
                          parse_formula("p & q"), ax);
  REQUIRE(check_proof(pr, System::LJ).ok());

  Derivation d = lk_as_operators(pr, colors("A", "B"));
  REQUIRE(d.steps.size() == 1);
  auto& st = std::get<OpStep>(d.steps[0]);
  CHECK(st.op == std::string(rule_name(RuleId::AndLMult)) + "'");
  CHECK_FALSE(st.surjective);
  const PointSet& v = set_at(d.table, st.value_id);
  CHECK(decode_formula(v).text() == "p & q");

  OperatorSpec base = rule_operator(RuleId::AndLMult);
  IdAlloc b{1000, 1000};
  PointSet bp = tree_set(b.set_id(), parse_formula("p"), b.next_point);
  PointSet bq = tree_set(b.set_id(), parse_formula("q"), b.next_point);
  BuiltValue full = base.build({&bp, &bq}, b);
  BuiltValue trimmed{full.value, {full.args[0]}};
  BuiltValue enc{v, st.arg_embeddings};
  const PointSet& src = set_at(d.table, st.arg_embeddings.at(0).source);
  CHECK(built_equivalent(enc, {&src}, trimmed, {&bp}));
}

TEST_CASE("keeping more inputs than the base offers is an error") {
  OperatorSpec base = plain_op("join", {{1, 0}, {1, 0}}, Comp::First);
  CHECK_THROWS_WITH_AS(derive_operator(base, 3, {}),
                       "derived operator keeps more inputs than the base provides",
                       std::invalid_argument);
}

TEST_CASE("operator values depend on the arguments alone") {
  Formula p = parse_formula("p"), q = parse_formula("q");
  OperatorSpec orr = rule_operator(RuleId::OrRMult);
  IdAlloc a{0, 0}, b{50, 50};
  PointSet a1 = tree_set(a.set_id(), p, a.next_point);
  PointSet a2 = tree_set(a.set_id(), q, a.next_point);
  PointSet b1 = tree_set(b.set_id(), p, b.next_point);
  PointSet b2 = tree_set(b.set_id(), q, b.next_point);
  BuiltValue va = orr.build({&a1, &a2}, a);
  BuiltValue vb = orr.build({&b1, &b2}, b);
  CHECK(built_equivalent(va, {&a1, &a2}, vb, {&b1, &b2}));

  SetTable tbl;
  tbl[b1.id] = b1;
  tbl[b2.id] = b2;
  PointSet bystander = plain_set(b.set_id(), {b.point_id()});
  tbl[bystander.id] = bystander;
  StructuredSet in;
  in.first = {bystander.id};
  in.second = {b1.id, b2.id};
  Applied ap = apply_operator(orr, {&in}, {{{Comp::Second, 0}, {Comp::Second, 1}}},
                              tbl, b);
  CHECK(ap.output.first == std::vector<int>{bystander.id});
  CHECK(ap.output.second == std::vector<int>{ap.value.id});
  CHECK(ap.surjective);
}

TEST_CASE("the registry's pairs satisfy the pair laws") {
  auto reg = logic_registry();
  Formula p = parse_formula("p"), q = parse_formula("q & r");
  IdAlloc al{0, 0};
  PointSet s1 = tree_set(al.set_id(), p, al.next_point);
  PointSet s2 = tree_set(al.set_id(), q, al.next_point);

  auto probe2 = [&](PairKey k) {
    auto& pr = reg.require(k);
    CHECK_FALSE(validate_pair_shape(pr).has_value());
    CHECK_FALSE(validate_pair_values(pr, {&s1, &s2}).has_value());
  };
  auto probe1 = [&](PairKey k) {
    auto& pr = reg.require(k);
    CHECK_FALSE(validate_pair_shape(pr).has_value());
    CHECK_FALSE(validate_pair_values(pr, {&s2}).has_value());
  };
  probe2({2, {Comp::First, Comp::First}, Comp::First});
  probe2({2, {Comp::Second, Comp::Second}, Comp::Second});
  probe2({2, {Comp::Second, Comp::First}, Comp::First});
  probe1({1, {Comp::First}, Comp::Second});
  probe1({1, {Comp::Second}, Comp::First});

  auto plain = plain_registry();
  PointSet u1 = plain_set(100, {100, 101}), u2 = plain_set(101, {102});
  auto& join = plain.require({2, {Comp::First, Comp::First}, Comp::First});
  CHECK_FALSE(validate_pair_values(join, {&u1, &u2}).has_value());

  CHECK(plain.contraction(Comp::First, 2).name == rule_name(RuleId::ContrL));
}

TEST_CASE("broken pairs are caught") {
  RegularPair skewed{rule_operator(RuleId::OrL), rule_operator(RuleId::AndLMult)};
  RegularPairRegistry reg;
  CHECK_THROWS_AS(reg.add(skewed), std::invalid_argument);

  RegularPair twisted{rule_operator(RuleId::OrL), rule_operator(RuleId::OrRMult)};
  twisted.tall.build = rule_operator(RuleId::AndLMult).build;
  CHECK_FALSE(validate_pair_shape(twisted).has_value());
  Formula p = parse_formula("p"), q = parse_formula("q");
  IdAlloc al{0, 0};
  PointSet s1 = tree_set(al.set_id(), p, al.next_point);
  PointSet s2 = tree_set(al.set_id(), q, al.next_point);
  CHECK(validate_pair_values(twisted, {&s1, &s2}).has_value());

  auto reg2 = logic_registry();
  CHECK_THROWS_WITH_AS(
      reg2.require({3, {Comp::First, Comp::First, Comp::First}, Comp::First}),
      "no regular pair registered for arity 3 with arguments [first, first, first] "
      "and value in first",
      RegistryGap);
  RegularPairRegistry bare;
  CHECK_THROWS_AS(bare.contraction(Comp::First, 2), RegistryGap);
}

TEST_CASE("replay is deterministic and checks the recorded final space") {
  ProofPtr pr = lk("p & q => q | r");
  Derivation d = lk_as_operators(pr, colors("A", "B"));
  Derivation d2 = lk_as_operators(pr, colors("A", "B"));
  CHECK(derivation_to_json(d).dump() == derivation_to_json(d2).dump());

  ReplayLog log1 = replay(d);
  ReplayLog log2 = replay(d);
  REQUIRE(log1.steps.size() == log2.steps.size());
  for (size_t i = 0; i < log1.steps.size(); ++i) {
    CHECK(log1.steps[i].arg_ids == log2.steps[i].arg_ids);
    CHECK(same_structured(log1.steps[i].output, log2.steps[i].output));
  }
  REQUIRE(log1.final_space.size() == 1);
  CHECK(log1.final_space[0].first == d.final_space[0].first);
  CHECK(log1.final_space[0].second == d.final_space[0].second);
  CHECK(decode_sequent(log1.final_space[0], d) == seq("p & q => q | r"));

  Derivation bad = lk_as_operators(pr, colors("A", "B"));
  bad.final_space[0].first.push_back(999);
  CHECK_THROWS_AS(replay(bad), NonReplayableDerivation);

  Derivation bent = lk_as_operators(pr, colors("A", "B"));
  for (auto& step : bent.steps)
    if (auto* st = std::get_if<OpStep>(&step)) {
      st->surjective = !st->surjective;
      break;
    }
  CHECK_THROWS_AS(replay(bent), NonReplayableDerivation);
}

TEST_CASE("an axiom encodes to one trivial structured set and no steps") {
  Formula p = parse_formula("p");
  ProofPtr ax = make_proof(Sequent::of({p}, {p}), RuleId::Axiom, {0, 0});
  Derivation d = lk_as_operators(ax, colors("A", "B"));
  CHECK(d.initial.size() == 1);
  CHECK(d.steps.empty());
  REQUIRE(d.final_space.size() == 1);
  CHECK(decode_sequent(d.final_space[0], d) == seq("p => p"));
  CHECK_FALSE(
      validate_trivial(d.initial[0].sets, d.initial[0].witness, d.table).has_value());
  CHECK_NOTHROW(replay(d));
}

TEST_CASE("constant axioms lean on a pad when a component is empty") {
  ProofPtr pr = lk("=> true");
  Derivation d = lk_as_operators(pr, colors("", "A"));
  REQUIRE(d.initial.size() == 1);
  CHECK(d.pads.size() == 1);
  CHECK(d.initial[0].witness.pairs.empty());
  CHECK_NOTHROW(replay(d));
  CHECK(decode_sequent(d.final_space.at(0), d) == seq("=> true"));
}

TEST_CASE("contraction encodes to a contraction step merging two copies") {
  Formula p = parse_formula("p");
  ProofPtr prem = make_proof(Sequent::of({p, p}, {p}), RuleId::Axiom, {0, 0});
  ProofPtr pr = fwd_contr(Side::Ant, p, prem);
  REQUIRE(check_proof(pr, System::LJ).ok());
  Derivation d = lk_as_operators(pr, colors("A", "A"));
  REQUIRE(d.steps.size() == 1);
  auto& st = std::get<OpStep>(d.steps[0]);
  CHECK(st.op == rule_name(RuleId::ContrL));
  CHECK(st.arg_counts == std::vector<std::pair<int, int>>{{2, 0}});
  CHECK(st.surjective);
  REQUIRE(st.arg_embeddings.size() == 2);
  const PointSet& v = set_at(d.table, st.value_id);
  for (auto& emb : st.arg_embeddings) {
    const PointSet& src = set_at(d.table, emb.source);
    CHECK(emb.pairs ==
          std::vector<std::pair<int, int>>{{point_at(src, {}), point_at(v, {})}});
  }
  CHECK(decode_sequent(d.final_space.at(0), d) == seq("p => p"));
}

TEST_CASE("ancestry coloring covers every set of an encoded proof") {
  ProofPtr pr = lk("p & q => q | r");
  Derivation d = lk_as_operators(pr, colors("A", "B"));
  auto cols = chase_colors(d);
  CHECK(cols.size() == d.table.size());
  for (auto& in : d.initial)
    for (Comp c : {Comp::First, Comp::Second})
      for (int id : in.sets.comp(c)) CHECK(cols.count(id) == 1);
}

TEST_CASE("derivations round-trip through json") {
  Derivation d;
  Space sp;
  PointSet a = plain_set(d.alloc.set_id(), {d.alloc.point_id(), d.alloc.point_id()});
  PointSet b = plain_set(d.alloc.set_id(), {d.alloc.point_id(), d.alloc.point_id()});
  Embedding w{a.id, b.id, {{a.points[0], b.points[0]}, {a.points[1], b.points[1]}}};
  push_initial(d, sp, {a}, {b}, w);
  push_step(d, sp, plain_op("join", {{1, 0}}, Comp::First), {0}, {{{Comp::First, 0}}});
  d.final_space = sp;

  auto j = derivation_to_json(d);
  Derivation back = derivation_from_json(j);
  CHECK(derivation_to_json(back).dump() == j.dump());
  CHECK_NOTHROW(replay(back));
  CHECK(back.table.at(a.id) == a);

  ProofPtr pr = lk("p & q => q | r");
  Derivation enc = lk_as_operators(pr, colors("A", "B"));
  Derivation loaded = derivation_from_json(derivation_to_json(enc));
  CHECK(derivation_to_json(loaded).dump() == derivation_to_json(enc).dump());
  CHECK_NOTHROW(replay(loaded));

  CHECK_THROWS_AS(derivation_from_json(nlohmann::json::object()), std::runtime_error);
}

TEST_CASE("the space renders to graphviz") {
  ProofPtr pr = lk("p & q => p & q");
  Derivation d = lk_as_operators(pr, colors("A", "B"));
  std::string dot = space_dot(d);
  CHECK(dot.find("digraph space") != std::string::npos);
  CHECK(dot.find("witness") != std::string::npos);
  CHECK(dot.find("label=\"S0\"") != std::string::npos);
}

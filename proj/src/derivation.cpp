#include "craig/derivation.hpp"

#include <algorithm>
#include <sstream>

#include "craig/parser.hpp"

namespace craig {

namespace {

OperatorSpec shape_of(const OpStep& s) {
  OperatorSpec op;
  op.name = s.op;
  op.arity = static_cast<int>(s.inputs.size());
  op.arg_counts = s.arg_counts;
  op.value_comp = s.value_comp;
  op.surjective = s.surjective;
  return op;
}

[[noreturn]] void fail(const std::string& m) { throw NonReplayableDerivation(m); }

}  // namespace

ReplayLog replay(const Derivation& d) {
  Space space;
  ReplayLog log;
  for (size_t i = 0; i < d.initial.size(); ++i) {
    auto& in = d.initial[i];
    for (Comp c : {Comp::First, Comp::Second})
      for (int id : in.sets.comp(c))
        if (!d.table.count(id))
          fail("initial entry " + std::to_string(i) + " references an unknown set");
    auto bad = d.bipartite ? validate_trivial(in.sets, in.witness, d.table)
                           : validate_trivial_collection(in.sets, in.witness, d.table);
    if (bad) fail("initial entry " + std::to_string(i) + ": " + *bad);
    space.push_back(in.sets);
  }
  for (size_t k = 0; k < d.steps.size(); ++k) {
    try {
      if (auto* adj = std::get_if<AdjoinStep>(&d.steps[k])) {
        if (adj->input < 0 || adj->input >= static_cast<int>(space.size()))
          fail("adjoin input out of range");
        if (!d.table.count(adj->set_id)) fail("the adjoined set is unknown");
        if (!d.bipartite && adj->comp == Comp::Second)
          fail("a collection keeps every set in its first component");
        StructuredSet out = space[static_cast<size_t>(adj->input)];
        out.comp(adj->comp).push_back(adj->set_id);
        space.erase(space.begin() + adj->input);
        space.push_back(out);
        ResolvedStep r;
        r.adjoin = true;
        r.value_id = adj->set_id;
        r.output = std::move(out);
        log.steps.push_back(std::move(r));
      } else {
        auto& st = std::get<OpStep>(d.steps[k]);
        std::set<int> used;
        std::vector<const StructuredSet*> ins;
        for (int idx : st.inputs) {
          if (idx < 0 || idx >= static_cast<int>(space.size()))
            fail("step input out of range");
          if (!used.insert(idx).second) fail("step consumes one space entry twice");
          ins.push_back(&space[static_cast<size_t>(idx)]);
        }
        if (!d.table.count(st.value_id)) fail("the step value is unknown");
        if (!d.bipartite && st.value_comp == Comp::Second)
          fail("collection steps keep their values in the first component");
        Applied ap = apply_prebuilt(shape_of(st), ins, st.picks, d.table,
                                    set_at(d.table, st.value_id), st.arg_embeddings);
        if (ap.surjective != st.surjective)
          fail("recorded surjectivity disagrees with the embeddings");
        std::vector<int> order = st.inputs;
        std::sort(order.rbegin(), order.rend());
        for (int idx : order) space.erase(space.begin() + idx);
        space.push_back(ap.output);
        ResolvedStep r;
        r.arg_ids = std::move(ap.arg_ids);
        r.value_id = st.value_id;
        r.output = std::move(ap.output);
        log.steps.push_back(std::move(r));
      }
    } catch (const NonReplayableDerivation&) {
      throw;
    } catch (const std::exception& e) {
      fail("step " + std::to_string(k) + ": " + e.what());
    }
  }
  if (space.size() != d.final_space.size())
    fail("the replayed space differs in size from the recorded final space");
  for (size_t i = 0; i < space.size(); ++i)
    if (!(space[i].first == d.final_space[i].first &&
          space[i].second == d.final_space[i].second))
      fail("the replayed space differs from the recorded final space at entry " +
           std::to_string(i));
  log.final_space = std::move(space);
  return log;
}

namespace {

void register_set(Derivation& d, const PointSet& s) {
  auto [it, fresh] = d.table.emplace(s.id, s);
  if (!fresh && !(it->second == s))
    throw std::logic_error("set id " + std::to_string(s.id) +
                           " reused with a different shape");
}

int record_step(Derivation& d, Space& space, const OperatorSpec& op,
                std::vector<int> inputs, std::vector<std::vector<ArgPick>> picks,
                Applied ap) {
  register_set(d, ap.value);
  OpStep st;
  st.op = op.name;
  st.arg_counts = op.arg_counts;
  st.value_comp = op.value_comp;
  st.surjective = ap.surjective;
  st.inputs = inputs;
  st.picks = std::move(picks);
  st.value_id = ap.value.id;
  st.arg_embeddings = std::move(ap.arg_embeddings);
  d.steps.push_back(std::move(st));
  std::sort(inputs.rbegin(), inputs.rend());
  for (int idx : inputs) space.erase(space.begin() + idx);
  space.push_back(std::move(ap.output));
  return static_cast<int>(space.size()) - 1;
}

std::vector<const StructuredSet*> entries_at(const Space& space,
                                             const std::vector<int>& inputs) {
  std::vector<const StructuredSet*> ins;
  for (int idx : inputs) {
    if (idx < 0 || idx >= static_cast<int>(space.size()))
      throw std::out_of_range("space position " + std::to_string(idx) +
                              " out of range");
    ins.push_back(&space[static_cast<size_t>(idx)]);
  }
  return ins;
}

}  // namespace

int push_step(Derivation& d, Space& space, const OperatorSpec& op,
              std::vector<int> inputs, std::vector<std::vector<ArgPick>> picks) {
  Applied ap = apply_operator(op, entries_at(space, inputs), picks, d.table, d.alloc);
  return record_step(d, space, op, std::move(inputs), std::move(picks), std::move(ap));
}

int push_built(Derivation& d, Space& space, const OperatorSpec& shape,
               std::vector<int> inputs, std::vector<std::vector<ArgPick>> picks,
               const PointSet& value, std::vector<Embedding> embeddings) {
  Applied ap = apply_prebuilt(shape, entries_at(space, inputs), picks, d.table, value,
                              std::move(embeddings));
  return record_step(d, space, shape, std::move(inputs), std::move(picks), std::move(ap));
}

int push_adjoin(Derivation& d, Space& space, int input, Comp comp, PointSet set) {
  if (input < 0 || input >= static_cast<int>(space.size()))
    throw std::out_of_range("space position " + std::to_string(input) + " out of range");
  register_set(d, set);
  StructuredSet out = space[static_cast<size_t>(input)];
  out.comp(comp).push_back(set.id);
  space.erase(space.begin() + input);
  space.push_back(std::move(out));
  d.steps.push_back(AdjoinStep{input, comp, set.id});
  return static_cast<int>(space.size()) - 1;
}

int push_initial(Derivation& d, Space& space, std::vector<PointSet> first,
                 std::vector<PointSet> second, Embedding witness) {
  if (!d.steps.empty())
    throw std::logic_error("initial entries must precede every step");
  InitialSet in;
  for (auto& s : first) {
    register_set(d, s);
    in.sets.first.push_back(s.id);
  }
  for (auto& s : second) {
    register_set(d, s);
    in.sets.second.push_back(s.id);
  }
  in.witness = std::move(witness);
  auto bad = d.bipartite ? validate_trivial(in.sets, in.witness, d.table)
                         : validate_trivial_collection(in.sets, in.witness, d.table);
  if (bad) throw std::invalid_argument(*bad);
  space.push_back(in.sets);
  d.initial.push_back(std::move(in));
  return static_cast<int>(space.size()) - 1;
}

std::map<int, Part> chase_colors(const Derivation& d) {
  ReplayLog log = replay(d);
  std::map<int, Part> colors = d.final_colors;
  for (auto& s : log.final_space)
    for (Comp c : {Comp::First, Comp::Second})
      for (int id : s.comp(c))
        if (!colors.count(id))
          throw std::logic_error("final set " + std::to_string(id) + " has no color");
  for (size_t k = log.steps.size(); k-- > 0;) {
    auto& r = log.steps[k];
    if (r.adjoin) continue;
    Part c = colors.at(r.value_id);
    for (int id : r.arg_ids) {
      auto [it, fresh] = colors.emplace(id, c);
      if (!fresh && it->second != c)
        throw std::logic_error("ancestry coloring is inconsistent at set " +
                               std::to_string(id));
    }
  }
  for (auto& in : d.initial)
    for (Comp c : {Comp::First, Comp::Second})
      for (int id : in.sets.comp(c))
        if (!colors.count(id))
          throw std::logic_error("set " + std::to_string(id) +
                                 " never reaches the final space");
  return colors;
}

namespace {

nlohmann::json set_to_json(const PointSet& s) {
  nlohmann::json j;
  j["id"] = s.id;
  j["points"] = s.points;
  if (!s.plain()) {
    j["formula"] = s.shape->formula.text();
    nlohmann::json leaves = nlohmann::json::array();
    for (auto& [path, pt] : s.shape->leaves) leaves.push_back({path, pt});
    j["leaves"] = leaves;
  }
  return j;
}

PointSet set_from_json(const nlohmann::json& j) {
  PointSet s;
  s.id = j.at("id").get<int>();
  s.points = j.at("points").get<std::vector<int>>();
  if (j.count("formula")) {
    TreeShape shape{parse_formula(j.at("formula").get<std::string>()), {}};
    for (auto& leaf : j.at("leaves"))
      shape.leaves.emplace_back(leaf.at(0).get<std::vector<int>>(), leaf.at(1).get<int>());
    s.shape = std::move(shape);
  }
  return s;
}

nlohmann::json embedding_to_json(const Embedding& e) {
  nlohmann::json j;
  j["source"] = e.source;
  j["target"] = e.target;
  nlohmann::json pairs = nlohmann::json::array();
  for (auto& [a, b] : e.pairs) pairs.push_back({a, b});
  j["pairs"] = pairs;
  return j;
}

Embedding embedding_from_json(const nlohmann::json& j) {
  Embedding e;
  e.source = j.at("source").get<int>();
  e.target = j.at("target").get<int>();
  for (auto& p : j.at("pairs")) e.pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
  return e;
}

const char* comp_tag(Comp c) { return c == Comp::First ? "first" : "second"; }

Comp comp_from_tag(const std::string& s) {
  if (s == "first") return Comp::First;
  if (s == "second") return Comp::Second;
  throw std::runtime_error("unknown component tag '" + s + "'");
}

nlohmann::json structured_to_json(const StructuredSet& s) {
  return {{"first", s.first}, {"second", s.second}};
}

StructuredSet structured_from_json(const nlohmann::json& j) {
  StructuredSet s;
  s.first = j.at("first").get<std::vector<int>>();
  s.second = j.at("second").get<std::vector<int>>();
  return s;
}

}  // namespace

nlohmann::json derivation_to_json(const Derivation& d) {
  nlohmann::json j;
  j["bipartite"] = d.bipartite;
  nlohmann::json sets = nlohmann::json::array();
  for (auto& [id, s] : d.table) {
    (void)id;
    sets.push_back(set_to_json(s));
  }
  j["sets"] = sets;
  nlohmann::json initial = nlohmann::json::array();
  for (auto& in : d.initial) {
    nlohmann::json e = structured_to_json(in.sets);
    e["witness"] = embedding_to_json(in.witness);
    initial.push_back(e);
  }
  j["initial"] = initial;
  nlohmann::json steps = nlohmann::json::array();
  for (auto& step : d.steps) {
    if (auto* adj = std::get_if<AdjoinStep>(&step)) {
      steps.push_back({{"adjoin", {{"input", adj->input},
                                   {"component", comp_tag(adj->comp)},
                                   {"set", adj->set_id}}}});
      continue;
    }
    auto& st = std::get<OpStep>(step);
    nlohmann::json e;
    e["op"] = st.op;
    nlohmann::json counts = nlohmann::json::array();
    for (auto& [a, b] : st.arg_counts) counts.push_back({a, b});
    e["counts"] = counts;
    e["value_component"] = comp_tag(st.value_comp);
    e["surjective"] = st.surjective;
    e["inputs"] = st.inputs;
    nlohmann::json picks = nlohmann::json::array();
    for (auto& per : st.picks) {
      nlohmann::json one = nlohmann::json::array();
      for (auto& p : per) one.push_back({comp_tag(p.comp), p.index});
      picks.push_back(one);
    }
    e["args"] = picks;
    e["value"] = st.value_id;
    nlohmann::json embs = nlohmann::json::array();
    for (auto& emb : st.arg_embeddings) embs.push_back(embedding_to_json(emb));
    e["embeddings"] = embs;
    steps.push_back(e);
  }
  j["steps"] = steps;
  nlohmann::json fin = nlohmann::json::array();
  for (auto& s : d.final_space) fin.push_back(structured_to_json(s));
  j["final"] = fin;
  nlohmann::json colors = nlohmann::json::object();
  for (auto& [id, part] : d.final_colors) colors[std::to_string(id)] = part_name(part);
  j["colors"] = colors;
  j["pads"] = std::vector<int>(d.pads.begin(), d.pads.end());
  nlohmann::json occs = nlohmann::json::object();
  for (auto& [id, occ] : d.occurrences)
    occs[std::to_string(id)] = std::string(occ.side == Side::Ant ? "ant" : "suc") + ":" +
                               std::to_string(occ.index);
  j["occurrences"] = occs;
  j["next_set"] = d.alloc.next_set;
  j["next_point"] = d.alloc.next_point;
  return j;
}

Derivation derivation_from_json(const nlohmann::json& j) {
  try {
    Derivation d;
    d.bipartite = j.at("bipartite").get<bool>();
    for (auto& s : j.at("sets")) {
      PointSet set = set_from_json(s);
      d.table.emplace(set.id, std::move(set));
    }
    for (auto& e : j.at("initial")) {
      InitialSet in;
      in.sets = structured_from_json(e);
      in.witness = embedding_from_json(e.at("witness"));
      d.initial.push_back(std::move(in));
    }
    for (auto& e : j.at("steps")) {
      if (e.count("adjoin")) {
        auto& a = e.at("adjoin");
        d.steps.push_back(AdjoinStep{a.at("input").get<int>(),
                                     comp_from_tag(a.at("component").get<std::string>()),
                                     a.at("set").get<int>()});
        continue;
      }
      OpStep st;
      st.op = e.at("op").get<std::string>();
      for (auto& c : e.at("counts"))
        st.arg_counts.emplace_back(c.at(0).get<int>(), c.at(1).get<int>());
      st.value_comp = comp_from_tag(e.at("value_component").get<std::string>());
      st.surjective = e.at("surjective").get<bool>();
      st.inputs = e.at("inputs").get<std::vector<int>>();
      for (auto& per : e.at("args")) {
        std::vector<ArgPick> one;
        for (auto& p : per)
          one.push_back({comp_from_tag(p.at(0).get<std::string>()), p.at(1).get<int>()});
        st.picks.push_back(std::move(one));
      }
      st.value_id = e.at("value").get<int>();
      for (auto& emb : e.at("embeddings"))
        st.arg_embeddings.push_back(embedding_from_json(emb));
      d.steps.push_back(std::move(st));
    }
    for (auto& s : j.at("final")) d.final_space.push_back(structured_from_json(s));
    for (auto& [key, val] : j.at("colors").items()) {
      std::string v = val.get<std::string>();
      if (v != "A" && v != "B") throw std::runtime_error("unknown color '" + v + "'");
      d.final_colors[std::stoi(key)] = v == "A" ? Part::A : Part::B;
    }
    for (auto& p : j.at("pads")) d.pads.insert(p.get<int>());
    for (auto& [key, val] : j.at("occurrences").items()) {
      std::string v = val.get<std::string>();
      auto colon = v.find(':');
      if (colon == std::string::npos) throw std::runtime_error("malformed occurrence");
      std::string side = v.substr(0, colon);
      if (side != "ant" && side != "suc") throw std::runtime_error("malformed occurrence");
      d.occurrences[std::stoi(key)] =
          OccRef{side == "ant" ? Side::Ant : Side::Suc, std::stoi(v.substr(colon + 1))};
    }
    d.alloc.next_set = j.at("next_set").get<int>();
    d.alloc.next_point = j.at("next_point").get<int>();
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed derivation: ") + e.what());
  }
}

namespace {

std::string set_label(const PointSet& s) {
  std::ostringstream out;
  out << s.id << ": ";
  if (!s.plain()) {
    out << s.shape->formula.text();
  } else {
    out << "{";
    for (size_t i = 0; i < s.points.size(); ++i) out << (i ? " " : "") << s.points[i];
    out << "}";
  }
  return out.str();
}

}  // namespace

std::string space_dot(const Derivation& d) {
  std::ostringstream out;
  out << "digraph space {\n  rankdir=LR;\n  node [shape=box, fontsize=10];\n";
  std::set<int> placed;
  for (size_t i = 0; i < d.final_space.size(); ++i) {
    out << "  subgraph cluster_" << i << " {\n    label=\"S" << i << "\";\n";
    for (Comp c : {Comp::First, Comp::Second}) {
      auto& ids = d.final_space[i].comp(c);
      if (ids.empty()) continue;
      out << "    subgraph cluster_" << i << "_" << comp_tag(c) << " {\n      label=\""
          << comp_tag(c) << "\";\n";
      for (size_t k = 0; k < ids.size(); ++k) {
        int id = ids[k];
        out << "      s" << id;
        if (placed.count(id)) out << "_dup" << i << "_" << comp_tag(c)[0] << k;
        out << " [label=\"" << set_label(set_at(d.table, id)) << "\""
            << (d.pads.count(id) ? ", style=dotted" : "") << "];\n";
        placed.insert(id);
      }
      out << "    }\n";
    }
    out << "  }\n";
  }
  for (auto& [id, s] : d.table)
    if (!placed.count(id))
      out << "  s" << id << " [label=\"" << set_label(s) << "\", style=dashed];\n";
  for (auto& in : d.initial)
    out << "  s" << in.witness.source << " -> s" << in.witness.target
        << " [style=dashed, label=\"witness\"];\n";
  for (auto& step : d.steps) {
    auto* st = std::get_if<OpStep>(&step);
    if (!st) continue;
    for (auto& e : st->arg_embeddings)
      out << "  s" << e.source << " -> s" << e.target << " [label=\"" << st->op
          << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

Formula decode_formula(const PointSet& s) { return shape_formula(s); }

Sequent decode_sequent(const StructuredSet& s, const Derivation& d) {
  std::vector<Formula> ants, sucs;
  for (int id : s.first)
    if (!d.pads.count(id)) ants.push_back(shape_formula(set_at(d.table, id)));
  for (int id : s.second)
    if (!d.pads.count(id)) sucs.push_back(shape_formula(set_at(d.table, id)));
  return Sequent::of(std::move(ants), std::move(sucs));
}

}  // namespace craig

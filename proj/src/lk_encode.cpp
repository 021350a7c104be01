#include <algorithm>
#include <tuple>

#include "craig/derivation.hpp"
#include "maehara_detail.hpp"

namespace craig {

namespace {

Comp side_comp(Side s) { return s == Side::Ant ? Comp::First : Comp::Second; }

struct EncNode {
  std::map<OccRef, int> sets;  // conclusion occurrence -> table id
  int tag = -1;                // identity of this node's space entry
};

struct Encoder {
  Derivation d;
  Space space;
  std::vector<int> tags;  // parallel to space
  std::map<const Proof*, detail::RootMap> roots;
  std::map<const Proof*, EncNode> nodes;
  std::vector<const Proof*> axioms;
  const Partition* part = nullptr;
  int next_tag = 0;

  void map_tree(const ProofPtr& p, detail::RootMap to_root) {
    if (p->rule == RuleId::Axiom) {
      roots.emplace(p.get(), std::move(to_root));
      axioms.push_back(p.get());
      return;
    }
    auto maps = detail::premise_maps(*p, to_root);
    roots.emplace(p.get(), std::move(to_root));
    for (size_t k = 0; k < p->premises.size(); ++k)
      map_tree(p->premises[k], std::move(maps[k]));
  }

  void place_axiom(const Proof* ax) {
    EncNode n;
    std::vector<PointSet> first, second;
    for (Side s : {Side::Ant, Side::Suc})
      for (int i = 0; i < ax->conclusion.count(s); ++i) {
        PointSet set =
            tree_set(d.alloc.set_id(), ax->conclusion.at(s, i), d.alloc.next_point);
        n.sets[{s, i}] = set.id;
        (s == Side::Ant ? first : second).push_back(std::move(set));
      }
    Embedding w;
    if (ax->principal.size() == 2) {
      w = tree_identity(first[static_cast<size_t>(ax->principal[0])],
                        second[static_cast<size_t>(ax->principal[1])]);
    } else {
      int pi = ax->principal.at(0);
      auto ps = constant_axiom_side(ax->conclusion, pi);
      if (!ps) throw std::logic_error("axiom closes over no principal");
      const PointSet& src =
          (*ps == Side::Ant ? first : second)[static_cast<size_t>(pi)];
      auto& opp = *ps == Side::Ant ? second : first;
      if (opp.empty()) {
        PointSet pad = plain_set(d.alloc.set_id(), {});
        d.pads.insert(pad.id);
        d.final_colors[pad.id] = detail::color_of(roots.at(ax), *part, *ps, pi);
        opp.push_back(std::move(pad));
      }
      w.source = src.id;
      w.target = opp[0].id;
    }
    n.tag = next_tag++;
    push_initial(d, space, std::move(first), std::move(second), std::move(w));
    tags.push_back(n.tag);
    nodes.emplace(ax, std::move(n));
  }

  int pos_of(int tag) const {
    for (size_t i = 0; i < tags.size(); ++i)
      if (tags[i] == tag) return static_cast<int>(i);
    throw std::logic_error("lost a space entry");
  }

  static int find_index(const std::vector<int>& ids, int id) {
    auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end())
      throw std::logic_error("argument set missing from its component");
    return static_cast<int>(it - ids.begin());
  }

  void consume_tags(std::vector<int> positions, int new_tag) {
    std::sort(positions.rbegin(), positions.rend());
    for (int idx : positions) tags.erase(tags.begin() + idx);
    tags.push_back(new_tag);
  }

  OperatorSpec step_operator(const Proof& p) {
    auto main = [&]() -> const Formula& {
      return p.conclusion.at(rule_main_side(p.rule), p.principal.at(0));
    };
    auto aux_arg = [&](int pos, Comp comp, const Formula& f) {
      std::vector<Auxiliary> aux;
      Auxiliary a;
      a.input = 0;
      a.pos = pos;
      a.comp = comp;
      a.set = tree_set(d.alloc.set_id(), f, d.alloc.next_point);
      aux.push_back(std::move(a));
      return aux;
    };
    switch (p.rule) {
      case RuleId::AndLAddLeft:
        return derive_operator(rule_operator(RuleId::AndLMult), 1,
                               aux_arg(1, Comp::First, main().child(1)));
      case RuleId::AndLAddRight:
        return derive_operator(rule_operator(RuleId::AndLMult), 1,
                               aux_arg(0, Comp::First, main().child(0)));
      case RuleId::OrRAddLeft:
        return derive_operator(rule_operator(RuleId::OrRMult), 1,
                               aux_arg(1, Comp::Second, main().child(1)));
      case RuleId::OrRAddRight:
        return derive_operator(rule_operator(RuleId::OrRMult), 1,
                               aux_arg(0, Comp::Second, main().child(0)));
      default:
        return rule_operator(p.rule);
    }
  }

  EncNode& encode(const ProofPtr& p) {
    if (auto it = nodes.find(p.get()); it != nodes.end()) return it->second;
    for (auto& pr : p->premises) encode(pr);
    auto maps = down_maps(*p);
    std::map<OccRef, std::vector<std::tuple<std::vector<int>, int, OccRef>>> sources;
    for (size_t k = 0; k < maps.size(); ++k)
      for (auto& [from, img] : maps[k])
        sources[img.to].push_back({img.prefix, static_cast<int>(k), from});
    EncNode out;
    Side ms = rule_main_side(p->rule);
    OccRef main{ms, p->principal.at(0)};
    for (Side s : {Side::Ant, Side::Suc})
      for (int i = 0; i < p->conclusion.count(s); ++i) {
        OccRef occ{s, i};
        if (occ == main) continue;
        auto it = sources.find(occ);
        if (it == sources.end() || it->second.size() != 1)
          throw std::logic_error("side occurrence without a unique source");
        auto& [pre, k, from] = it->second[0];
        (void)pre;
        out.sets[occ] =
            nodes.at(p->premises[static_cast<size_t>(k)].get()).sets.at(from);
      }
    if (p->rule == RuleId::WeakL || p->rule == RuleId::WeakR) {
      int pos = pos_of(nodes.at(p->premises[0].get()).tag);
      PointSet set =
          tree_set(d.alloc.set_id(), p->conclusion.at(main), d.alloc.next_point);
      out.sets[main] = set.id;
      push_adjoin(d, space, pos, side_comp(ms), std::move(set));
      out.tag = next_tag++;
      consume_tags({pos}, out.tag);
    } else {
      auto msrc = sources.find(main);
      if (msrc == sources.end())
        throw std::logic_error("rule occurrence without sources");
      auto margs = msrc->second;
      std::sort(margs.begin(), margs.end(), [](auto& a, auto& b) {
        return std::tie(std::get<1>(a), std::get<0>(a), std::get<2>(a)) <
               std::tie(std::get<1>(b), std::get<0>(b), std::get<2>(b));
      });
      OperatorSpec op = step_operator(*p);
      std::vector<int> inputs;
      for (auto& pr : p->premises) inputs.push_back(pos_of(nodes.at(pr.get()).tag));
      std::vector<std::vector<ArgPick>> picks(p->premises.size());
      for (auto& [prefix, k, from] : margs) {
        (void)prefix;
        auto& entry = space[static_cast<size_t>(inputs[static_cast<size_t>(k)])];
        Comp c = side_comp(from.side);
        picks[static_cast<size_t>(k)].push_back(
            {c, find_index(entry.comp(c),
                           nodes.at(p->premises[static_cast<size_t>(k)].get())
                               .sets.at(from))});
      }
      push_step(d, space, op, inputs, std::move(picks));
      auto& st = std::get<OpStep>(d.steps.back());
      out.sets[main] = st.value_id;
      if (!(shape_formula(set_at(d.table, st.value_id)) == p->conclusion.at(main)))
        throw std::logic_error("operator value differs from the rule's formula");
      out.tag = next_tag++;
      consume_tags(inputs, out.tag);
    }
    return nodes.emplace(p.get(), std::move(out)).first->second;
  }
};

}  // namespace

Derivation lk_as_operators(const ProofPtr& p, const Partition& part) {
  if (!p) throw std::invalid_argument("cannot encode an empty proof");
  if (!check_proof(p, System::LK).ok())
    throw std::invalid_argument("the proof fails its check");
  detail::require_total(part, p->conclusion);
  Encoder enc;
  enc.part = &part;
  enc.d.bipartite = true;
  enc.map_tree(p, detail::identity_map(p->conclusion));
  for (auto* ax : enc.axioms) enc.place_axiom(ax);
  enc.encode(p);
  enc.d.final_space = enc.space;
  auto& root = enc.nodes.at(p.get());
  for (Side s : {Side::Ant, Side::Suc})
    for (int i = 0; i < p->conclusion.count(s); ++i) {
      int id = root.sets.at({s, i});
      enc.d.final_colors[id] = part.color.at({s, i});
      enc.d.occurrences[id] = OccRef{s, i};
    }
  return std::move(enc.d);
}

}  // namespace craig

#include "craig/absint.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace craig {

namespace {

int pick_index(const std::vector<int>& comp, int id, std::set<int>& used) {
  for (size_t i = 0; i < comp.size(); ++i)
    if (comp[i] == id && !used.count(static_cast<int>(i))) {
      used.insert(static_cast<int>(i));
      return static_cast<int>(i);
    }
  throw std::logic_error("argument set " + std::to_string(id) +
                         " is absent from the rebuilt entry");
}

OperatorSpec step_shape(const OpStep& st) {
  OperatorSpec op;
  op.name = st.op;
  op.arity = static_cast<int>(st.inputs.size());
  op.arg_counts = st.arg_counts;
  op.value_comp = st.value_comp;
  op.surjective = st.surjective;
  return op;
}

bool erase_one(std::vector<int>& v, int id) {
  auto it = std::find(v.begin(), v.end(), id);
  if (it == v.end()) return false;
  v.erase(it);
  return true;
}

// One walk of a derivation: a tag per entry, the tags each step consumed, and
// the initial entries every tag descends from.
struct Walk {
  int n0 = 0;
  std::vector<std::vector<int>> step_in_tags;
  std::map<int, std::vector<size_t>> ancestors;  // sorted initial indices

  const StructuredSet& entry(const Derivation& d, const ReplayLog& log,
                             int tag) const {
    if (tag < n0) return d.initial[static_cast<size_t>(tag)].sets;
    return log.steps[static_cast<size_t>(tag - n0)].output;
  }
};

Walk walk_of(const Derivation& d) {
  Walk w;
  w.n0 = static_cast<int>(d.initial.size());
  std::vector<int> tags;
  for (int i = 0; i < w.n0; ++i) {
    tags.push_back(i);
    w.ancestors[i] = {static_cast<size_t>(i)};
  }
  for (size_t k = 0; k < d.steps.size(); ++k) {
    std::vector<int> inputs;
    if (auto* adj = std::get_if<AdjoinStep>(&d.steps[k]))
      inputs.push_back(adj->input);
    else
      inputs = std::get<OpStep>(d.steps[k]).inputs;
    std::vector<int> in_tags;
    std::vector<size_t> anc;
    for (int idx : inputs) {
      int t = tags.at(static_cast<size_t>(idx));
      in_tags.push_back(t);
      auto& a = w.ancestors.at(t);
      anc.insert(anc.end(), a.begin(), a.end());
    }
    std::sort(anc.begin(), anc.end());
    anc.erase(std::unique(anc.begin(), anc.end()), anc.end());
    int out_tag = w.n0 + static_cast<int>(k);
    w.step_in_tags.push_back(std::move(in_tags));
    w.ancestors[out_tag] = std::move(anc);
    std::vector<int> order = inputs;
    std::sort(order.rbegin(), order.rend());
    for (int idx : order) tags.erase(tags.begin() + idx);
    tags.push_back(out_tag);
  }
  return w;
}

// The one side whose initial witnesses cover every ancestor of the entry, if
// a single such side exists.
std::optional<Part> justified(const Walk& w, const Derivation& d,
                              const std::map<int, Part>& colors, int tag) {
  std::optional<Part> j;
  for (size_t i : w.ancestors.at(tag)) {
    Part c = colors.at(d.initial[i].witness.source);
    if (!j)
      j = c;
    else if (*j != c)
      return std::nullopt;
  }
  return j;
}

struct RebuildPlan {
  std::set<size_t> dropped_initials;
  std::set<size_t> dropped_steps;
  std::map<int, int> alias;                     // dropped output tag -> survivor
  std::map<size_t, std::vector<int>> removals;  // initial -> one occurrence each
  std::optional<Part> keep_only;                // drop members of the other color
  std::optional<size_t> carrier;                // initial receiving the hoist
  std::vector<int> hoist_first, hoist_second;
};

Derivation rebuild(const Derivation& cur, const ReplayLog& log, const Walk& w,
                   const std::map<int, Part>& colors, const RebuildPlan& plan) {
  auto resolve = [&](int t) {
    auto it = plan.alias.find(t);
    while (it != plan.alias.end()) {
      t = it->second;
      it = plan.alias.find(t);
    }
    return t;
  };
  Derivation nd;
  nd.bipartite = cur.bipartite;
  Space nspace;
  std::vector<int> ntags;
  auto pos_of = [&](int t) {
    for (size_t i = 0; i < ntags.size(); ++i)
      if (ntags[i] == t) return static_cast<int>(i);
    throw std::logic_error("the rebuilt space lost a lineage entry");
  };
  for (size_t i = 0; i < cur.initial.size(); ++i) {
    if (plan.dropped_initials.count(i)) continue;
    StructuredSet sets = cur.initial[i].sets;
    if (auto it = plan.removals.find(i); it != plan.removals.end())
      for (int id : it->second)
        if (!erase_one(sets.first, id) && !erase_one(sets.second, id))
          throw std::logic_error("a consumed argument lost its origin");
    if (plan.keep_only) {
      auto prune = [&](std::vector<int>& v) {
        std::erase_if(v, [&](int id) { return colors.at(id) != *plan.keep_only; });
      };
      prune(sets.first);
      prune(sets.second);
    }
    if (plan.carrier && *plan.carrier == i) {
      sets.first.insert(sets.first.end(), plan.hoist_first.begin(),
                        plan.hoist_first.end());
      sets.second.insert(sets.second.end(), plan.hoist_second.begin(),
                         plan.hoist_second.end());
    }
    auto members = [&](const std::vector<int>& ids) {
      std::vector<PointSet> out;
      for (int id : ids) out.push_back(set_at(cur.table, id));
      return out;
    };
    push_initial(nd, nspace, members(sets.first), members(sets.second),
                 cur.initial[i].witness);
    ntags.push_back(static_cast<int>(i));
  }
  for (size_t k = 0; k < cur.steps.size(); ++k) {
    if (plan.dropped_steps.count(k)) continue;
    int out_tag = w.n0 + static_cast<int>(k);
    std::vector<int> in_tags;
    for (int t : w.step_in_tags[k]) in_tags.push_back(resolve(t));
    if (auto* adj = std::get_if<AdjoinStep>(&cur.steps[k])) {
      int p = pos_of(in_tags[0]);
      push_adjoin(nd, nspace, p, adj->comp, set_at(cur.table, adj->set_id));
      ntags.erase(ntags.begin() + p);
      ntags.push_back(out_tag);
      continue;
    }
    auto& st = std::get<OpStep>(cur.steps[k]);
    std::vector<int> positions;
    for (int t : in_tags) positions.push_back(pos_of(t));
    std::vector<std::vector<ArgPick>> picks(st.picks.size());
    size_t flat = 0;
    for (size_t h = 0; h < st.picks.size(); ++h) {
      std::set<int> used1, used2;
      for (auto& p : st.picks[h]) {
        int id = log.steps[k].arg_ids.at(flat++);
        auto& used = p.comp == Comp::First ? used1 : used2;
        picks[h].push_back(
            {p.comp,
             pick_index(nspace[static_cast<size_t>(positions[h])].comp(p.comp), id,
                        used)});
      }
    }
    push_built(nd, nspace, step_shape(st), positions, std::move(picks),
               set_at(cur.table, st.value_id), st.arg_embeddings);
    std::vector<int> order = positions;
    std::sort(order.rbegin(), order.rend());
    for (int p : order) ntags.erase(ntags.begin() + p);
    ntags.push_back(out_tag);
  }
  nd.final_space = nspace;
  for (auto& e : nspace)
    for (Comp c : {Comp::First, Comp::Second})
      for (int id : e.comp(c)) nd.final_colors[id] = colors.at(id);
  for (int id : cur.pads)
    if (nd.table.count(id)) nd.pads.insert(id);
  for (auto& [id, oc] : cur.occurrences)
    if (nd.table.count(id)) nd.occurrences[id] = oc;
  nd.alloc = cur.alloc;
  return nd;
}

}  // namespace

Derivation empty_interpolant_simplify(const Derivation& d,
                                      const AbstractInterpolation& result) {
  if (!result.interpolant.points.empty())
    throw PreconditionViolated("the interpolant still has points");
  Derivation cur = d;
  for (;;) {
    auto colors = chase_colors(cur);
    ReplayLog log = replay(cur);
    if (cur.final_space.size() != 1)
      throw std::invalid_argument(
          "the derivation must end in a single structured set");
    for (auto& in : cur.initial) {
      if (in.witness.pairs.empty())
        throw PreconditionViolated("an initial witness carries no point pair");
      if (colors.at(in.witness.source) != colors.at(in.witness.target))
        throw PreconditionViolated("an initial witness straddles the coloring");
    }
    Walk w = walk_of(cur);

    std::optional<std::pair<size_t, size_t>> hit;  // step, input slot
    for (size_t k = 0; k < cur.steps.size() && !hit; ++k) {
      auto* st = std::get_if<OpStep>(&cur.steps[k]);
      if (!st) continue;
      Part x = colors.at(st->value_id);
      for (size_t h = 0; h < w.step_in_tags[k].size(); ++h) {
        auto j = justified(w, cur, colors, w.step_in_tags[k][h]);
        if (j && *j != x) {
          hit = {{k, h}};
          break;
        }
      }
    }

    if (!hit) {
      std::optional<Part> J;
      for (auto& in : cur.initial) {
        Part c = colors.at(in.witness.source);
        if (!J)
          J = c;
        else if (*J != c)
          throw std::logic_error("the shrink stopped between the two sides");
      }
      RebuildPlan plan;
      plan.keep_only = J;
      for (size_t j = 0; j < cur.steps.size(); ++j) {
        auto* adj = std::get_if<AdjoinStep>(&cur.steps[j]);
        if (adj && colors.at(adj->set_id) != *J) {
          plan.dropped_steps.insert(j);
          plan.alias[w.n0 + static_cast<int>(j)] = w.step_in_tags[j][0];
        }
      }
      Derivation nd = rebuild(cur, log, w, colors, plan);
      replay(nd);
      return nd;
    }

    size_t k = hit->first, h1 = hit->second;
    auto& st = std::get<OpStep>(cur.steps[k]);
    const auto& in_tags = w.step_in_tags[k];
    int s1 = in_tags[h1];

    std::vector<std::vector<int>> args(st.picks.size());
    {
      size_t flat = 0;
      for (size_t h = 0; h < st.picks.size(); ++h)
        for (size_t j = 0; j < st.picks[h].size(); ++j)
          args[h].push_back(log.steps[k].arg_ids.at(flat++));
    }

    RebuildPlan plan;
    plan.dropped_steps.insert(k);
    plan.alias[w.n0 + static_cast<int>(k)] = s1;
    std::vector<int> stack;
    for (size_t h = 0; h < in_tags.size(); ++h)
      if (h != h1) stack.push_back(in_tags[h]);
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      if (t < w.n0) {
        plan.dropped_initials.insert(static_cast<size_t>(t));
        continue;
      }
      size_t j = static_cast<size_t>(t - w.n0);
      plan.dropped_steps.insert(j);
      for (int u : w.step_in_tags[j]) stack.push_back(u);
    }
    for (int a : args[h1]) {
      bool found = false;
      for (size_t i = 0; i < cur.initial.size() && !found; ++i) {
        auto& s = cur.initial[i].sets;
        if (std::count(s.first.begin(), s.first.end(), a) ||
            std::count(s.second.begin(), s.second.end(), a)) {
          plan.removals[i].push_back(a);
          found = true;
        }
      }
      for (size_t j = 0; j < cur.steps.size() && !found; ++j) {
        auto* adj = std::get_if<AdjoinStep>(&cur.steps[j]);
        if (adj && adj->set_id == a) {
          plan.dropped_steps.insert(j);
          plan.alias[w.n0 + static_cast<int>(j)] = w.step_in_tags[j][0];
          found = true;
        }
      }
      if (!found)
        throw std::logic_error("a consumed argument has no initial or adjoin origin");
    }
    plan.carrier = w.ancestors.at(s1).front();
    for (size_t h = 0; h < in_tags.size(); ++h) {
      if (h == h1) continue;
      const StructuredSet& e = w.entry(cur, log, in_tags[h]);
      std::vector<int> consumed = args[h];
      for (Comp c : {Comp::First, Comp::Second}) {
        auto& dst = c == Comp::First ? plan.hoist_first : plan.hoist_second;
        for (int id : e.comp(c)) {
          auto it = std::find(consumed.begin(), consumed.end(), id);
          if (it != consumed.end()) {
            consumed.erase(it);
            continue;
          }
          dst.push_back(id);
        }
      }
    }
    (st.value_comp == Comp::First ? plan.hoist_first : plan.hoist_second)
        .push_back(st.value_id);
    cur = rebuild(cur, log, w, colors, plan);
  }
}

}  // namespace craig

#include "craig/operators.hpp"

#include <algorithm>
#include <memory>
#include <set>

namespace craig {

int OperatorSpec::subarity() const {
  int n = 0;
  for (auto& [a, b] : arg_counts) n += a + b;
  return n;
}

namespace {

std::vector<int> resolve_selection(const OperatorSpec& op,
                                   const std::vector<const StructuredSet*>& inputs,
                                   const std::vector<std::vector<ArgPick>>& selection) {
  if (static_cast<int>(inputs.size()) != op.arity)
    throw ArgumentMissing(op.name + " expects " + std::to_string(op.arity) +
                          " inputs, got " + std::to_string(inputs.size()));
  if (selection.size() != inputs.size())
    throw ArgumentMissing(op.name + ": one selection list per input is required");
  std::vector<int> arg_ids;
  for (int h = 0; h < op.arity; ++h) {
    auto [want1, want2] = op.arg_counts[h];
    int got1 = 0, got2 = 0;
    std::set<std::pair<int, int>> seen;
    for (auto& p : selection[h]) {
      auto& comp = inputs[h]->comp(p.comp);
      if (p.index < 0 || p.index >= static_cast<int>(comp.size()))
        throw ArgumentMissing(op.name + ": input " + std::to_string(h) + " holds no " +
                              comp_name(p.comp) + "-component set at position " +
                              std::to_string(p.index));
      if (!seen.insert({static_cast<int>(p.comp), p.index}).second)
        throw ArgumentMissing(op.name + ": argument picked twice");
      (p.comp == Comp::First ? got1 : got2)++;
      arg_ids.push_back(comp[p.index]);
    }
    if (got1 != want1 || got2 != want2)
      throw ComponentMismatch(op.name + ": input " + std::to_string(h) + " must supply " +
                              std::to_string(want1) + " first-component and " +
                              std::to_string(want2) + " second-component arguments");
  }
  return arg_ids;
}

Applied finish_application(const OperatorSpec& op,
                           const std::vector<const StructuredSet*>& inputs,
                           const std::vector<std::vector<ArgPick>>& selection,
                           const std::vector<const PointSet*>& args,
                           std::vector<int> arg_ids, BuiltValue built) {
  if (built.args.size() != args.size())
    throw std::logic_error(op.name + ": builder returned a wrong embedding count");
  for (size_t i = 0; i < args.size(); ++i) {
    auto& e = built.args[i];
    if (e.source != args[i]->id || e.target != built.value.id)
      throw std::logic_error(op.name + ": builder embedding endpoints are off");
    if (auto bad = check_embedding(e, *args[i], built.value))
      throw std::logic_error(op.name + ": " + *bad);
  }
  Applied out;
  out.value = std::move(built.value);
  out.arg_embeddings = std::move(built.args);
  out.arg_ids = std::move(arg_ids);
  std::set<int> hit;
  for (auto& e : out.arg_embeddings)
    for (auto& [a, b] : e.pairs) {
      (void)a;
      hit.insert(b);
    }
  out.surjective = std::all_of(out.value.points.begin(), out.value.points.end(),
                               [&](int p) { return hit.count(p) > 0; });
  for (int h = 0; h < op.arity; ++h) {
    std::set<int> drop1, drop2;
    for (auto& p : selection[h]) (p.comp == Comp::First ? drop1 : drop2).insert(p.index);
    for (int i = 0; i < static_cast<int>(inputs[h]->first.size()); ++i)
      if (!drop1.count(i)) out.output.first.push_back(inputs[h]->first[i]);
    for (int i = 0; i < static_cast<int>(inputs[h]->second.size()); ++i)
      if (!drop2.count(i)) out.output.second.push_back(inputs[h]->second[i]);
  }
  out.output.comp(op.value_comp).push_back(out.value.id);
  return out;
}

}  // namespace

Applied apply_operator(const OperatorSpec& op,
                       const std::vector<const StructuredSet*>& inputs,
                       const std::vector<std::vector<ArgPick>>& selection,
                       const SetTable& table, IdAlloc& alloc) {
  auto arg_ids = resolve_selection(op, inputs, selection);
  std::vector<const PointSet*> args;
  args.reserve(arg_ids.size());
  for (int id : arg_ids) args.push_back(&set_at(table, id));
  BuiltValue built = op.build(args, alloc);
  return finish_application(op, inputs, selection, args, std::move(arg_ids),
                            std::move(built));
}

Applied apply_prebuilt(const OperatorSpec& shape,
                       const std::vector<const StructuredSet*>& inputs,
                       const std::vector<std::vector<ArgPick>>& selection,
                       const SetTable& table, PointSet value,
                       std::vector<Embedding> embeddings) {
  auto arg_ids = resolve_selection(shape, inputs, selection);
  std::vector<const PointSet*> args;
  args.reserve(arg_ids.size());
  for (int id : arg_ids) args.push_back(&set_at(table, id));
  BuiltValue built;
  built.value = std::move(value);
  built.args = std::move(embeddings);
  return finish_application(shape, inputs, selection, args, std::move(arg_ids),
                            std::move(built));
}

namespace {

BuiltValue build_node(Conn conn, const std::vector<const PointSet*>& args, IdAlloc& alloc) {
  std::vector<Formula> kids;
  kids.reserve(args.size());
  for (auto* a : args) kids.push_back(shape_formula(*a));
  Formula f = [&] {
    switch (conn) {
      case Conn::Not: return Formula::negation(kids.at(0));
      case Conn::And: return Formula::conjunction(kids.at(0), kids.at(1));
      case Conn::Or: return Formula::disjunction(kids.at(0), kids.at(1));
      case Conn::Implies: return Formula::implication(kids.at(0), kids.at(1));
      default: throw std::logic_error("connective builders cover ~ & | ->");
    }
  }();
  PointSet value = tree_set(alloc.set_id(), f, alloc.next_point);
  BuiltValue out;
  for (size_t h = 0; h < args.size(); ++h) {
    Embedding e;
    e.source = args[h]->id;
    e.target = value.id;
    for (auto& [path, pt] : args[h]->shape->leaves) {
      std::vector<int> vp;
      vp.reserve(path.size() + 1);
      vp.push_back(static_cast<int>(h));
      vp.insert(vp.end(), path.begin(), path.end());
      int q = point_at(value, vp);
      if (q < 0) throw std::logic_error("leaf missing under the connective");
      e.pairs.emplace_back(pt, q);
    }
    std::sort(e.pairs.begin(), e.pairs.end());
    out.args.push_back(std::move(e));
  }
  out.value = std::move(value);
  return out;
}

BuiltValue build_contraction(const std::vector<const PointSet*>& args, IdAlloc& alloc) {
  if (args.empty()) throw std::logic_error("contraction needs arguments");
  for (auto* a : args)
    if (!copy_equivalent(*a, *args[0]))
      throw std::invalid_argument("contraction arguments must be copies of one shape");
  BuiltValue out;
  if (args[0]->plain()) {
    std::vector<int> pts;
    pts.reserve(args[0]->points.size());
    for (size_t i = 0; i < args[0]->points.size(); ++i) pts.push_back(alloc.point_id());
    out.value = plain_set(alloc.set_id(), std::move(pts));
    for (auto* a : args) {
      Embedding e;
      e.source = a->id;
      e.target = out.value.id;
      for (size_t i = 0; i < a->points.size(); ++i)
        e.pairs.emplace_back(a->points[i], out.value.points[i]);
      std::sort(e.pairs.begin(), e.pairs.end());
      out.args.push_back(std::move(e));
    }
  } else {
    out.value = tree_set(alloc.set_id(), args[0]->shape->formula, alloc.next_point);
    for (auto* a : args) out.args.push_back(tree_identity(*a, out.value));
  }
  return out;
}

BuiltValue build_union(const std::vector<const PointSet*>& args, IdAlloc& alloc) {
  BuiltValue out;
  std::vector<int> pts;
  int id = alloc.set_id();
  for (auto* a : args) {
    Embedding e;
    e.source = a->id;
    e.target = id;
    for (int p : a->points) {
      int q = alloc.point_id();
      pts.push_back(q);
      e.pairs.emplace_back(p, q);
    }
    std::sort(e.pairs.begin(), e.pairs.end());
    out.args.push_back(std::move(e));
  }
  out.value = plain_set(id, std::move(pts));
  return out;
}

// Point iso between copies: leaf by leaf for tree sets, positional for plain.
bool iso_points(const PointSet& a, const PointSet& b, std::map<int, int>& m) {
  if (!copy_equivalent(a, b)) return false;
  if (a.plain()) {
    for (size_t i = 0; i < a.points.size(); ++i) m[a.points[i]] = b.points[i];
  } else {
    for (auto& [path, pt] : a.shape->leaves) {
      int q = point_at(b, path);
      if (q < 0) return false;
      m[pt] = q;
    }
  }
  return true;
}

}  // namespace

OperatorSpec rule_operator(RuleId r) {
  auto node = [](Conn c) {
    return [c](const std::vector<const PointSet*>& args, IdAlloc& a) {
      return build_node(c, args, a);
    };
  };
  OperatorSpec op;
  op.name = rule_name(r);
  switch (r) {
    case RuleId::NotL:
      op.arity = 1, op.arg_counts = {{0, 1}}, op.value_comp = Comp::First;
      op.build = node(Conn::Not);
      break;
    case RuleId::NotR:
      op.arity = 1, op.arg_counts = {{1, 0}}, op.value_comp = Comp::Second;
      op.build = node(Conn::Not);
      break;
    case RuleId::AndLMult:
      op.arity = 1, op.arg_counts = {{2, 0}}, op.value_comp = Comp::First;
      op.build = node(Conn::And);
      break;
    case RuleId::AndR:
      op.arity = 2, op.arg_counts = {{0, 1}, {0, 1}}, op.value_comp = Comp::Second;
      op.build = node(Conn::And);
      break;
    case RuleId::OrL:
      op.arity = 2, op.arg_counts = {{1, 0}, {1, 0}}, op.value_comp = Comp::First;
      op.build = node(Conn::Or);
      break;
    case RuleId::OrRMult:
      op.arity = 1, op.arg_counts = {{0, 2}}, op.value_comp = Comp::Second;
      op.build = node(Conn::Or);
      break;
    case RuleId::ImpL:
      op.arity = 2, op.arg_counts = {{0, 1}, {1, 0}}, op.value_comp = Comp::First;
      op.build = node(Conn::Implies);
      break;
    case RuleId::ImpR:
      op.arity = 1, op.arg_counts = {{1, 1}}, op.value_comp = Comp::Second;
      op.build = node(Conn::Implies);
      break;
    case RuleId::ContrL:
      return contraction_op(Comp::First, 2);
    case RuleId::ContrR:
      return contraction_op(Comp::Second, 2);
    default:
      throw std::invalid_argument(std::string(rule_name(r)) + " is not a base operator");
  }
  return op;
}

OperatorSpec contraction_op(Comp c, int copies) {
  if (copies < 2) throw std::invalid_argument("contraction merges at least two copies");
  OperatorSpec op;
  op.name = c == Comp::First ? rule_name(RuleId::ContrL) : rule_name(RuleId::ContrR);
  if (copies != 2) op.name += "/" + std::to_string(copies);
  op.arity = 1;
  op.arg_counts = {c == Comp::First ? std::pair<int, int>{copies, 0}
                                    : std::pair<int, int>{0, copies}};
  op.value_comp = c;
  op.build = build_contraction;
  return op;
}

OperatorSpec plain_op(std::string name, std::vector<std::pair<int, int>> arg_counts,
                      Comp value_comp) {
  OperatorSpec op;
  op.name = std::move(name);
  op.arity = static_cast<int>(arg_counts.size());
  op.arg_counts = std::move(arg_counts);
  op.value_comp = value_comp;
  op.build = build_union;
  return op;
}

OperatorSpec derive_operator(const OperatorSpec& base, int kept, std::vector<Auxiliary> aux) {
  if (kept > base.arity)
    throw std::invalid_argument("derived operator keeps more inputs than the base provides");
  if (kept < 0) throw std::invalid_argument("kept input count cannot be negative");
  std::vector<std::vector<const Auxiliary*>> by_input(base.arity);
  for (auto& a : aux) {
    if (a.input < 0 || a.input >= base.arity)
      throw std::invalid_argument("auxiliary placed on a nonexistent input");
    by_input[a.input].push_back(&a);
  }
  OperatorSpec out;
  out.name = base.name + "'";
  out.arity = kept;
  out.value_comp = base.value_comp;
  out.surjective = base.surjective &&
                   std::all_of(aux.begin(), aux.end(),
                               [](const Auxiliary& a) { return a.set.points.empty(); });
  for (int h = 0; h < base.arity; ++h) {
    auto [c1, c2] = base.arg_counts[h];
    int a1 = 0, a2 = 0;
    std::set<int> poss;
    for (auto* a : by_input[h]) {
      if (a->pos < 0 || a->pos >= c1 + c2)
        throw std::invalid_argument("auxiliary position outside the input's argument list");
      if (!poss.insert(a->pos).second)
        throw std::invalid_argument("two auxiliaries share one argument slot");
      (a->comp == Comp::First ? a1 : a2)++;
    }
    if (h >= kept) {
      if (a1 != c1 || a2 != c2)
        throw std::invalid_argument("auxiliaries must fill every dropped argument");
    } else {
      if (a1 > c1 || a2 > c2)
        throw std::invalid_argument("auxiliaries exceed the input's component counts");
      if (c1 - a1 + c2 - a2 == 0)
        throw std::invalid_argument("a kept input must keep at least one argument");
      out.arg_counts.emplace_back(c1 - a1, c2 - a2);
    }
  }
  auto auxes = std::make_shared<std::vector<Auxiliary>>(std::move(aux));
  auto base_build = base.build;
  int base_arity = base.arity;
  auto counts = base.arg_counts;
  out.build = [auxes, base_build, base_arity, counts](
                  const std::vector<const PointSet*>& real, IdAlloc& alloc) {
    std::vector<const PointSet*> full;
    std::vector<bool> is_aux;
    size_t r = 0;
    for (int h = 0; h < base_arity; ++h) {
      int n = counts[h].first + counts[h].second;
      std::vector<const PointSet*> slot(n, nullptr);
      for (auto& a : *auxes)
        if (a.input == h) slot[a.pos] = &a.set;
      for (int i = 0; i < n; ++i) {
        is_aux.push_back(slot[i] != nullptr);
        if (!slot[i]) {
          if (r >= real.size())
            throw ArgumentMissing("derived operator is short of arguments");
          slot[i] = real[r++];
        }
      }
      full.insert(full.end(), slot.begin(), slot.end());
    }
    if (r != real.size())
      throw ArgumentMissing("derived operator received surplus arguments");
    BuiltValue whole = base_build(full, alloc);
    BuiltValue trimmed;
    trimmed.value = std::move(whole.value);
    for (size_t k = 0; k < whole.args.size(); ++k)
      if (!is_aux[k]) trimmed.args.push_back(std::move(whole.args[k]));
    return trimmed;
  };
  return out;
}

bool built_equivalent(const BuiltValue& a, const std::vector<const PointSet*>& args_a,
                      const BuiltValue& b, const std::vector<const PointSet*>& args_b) {
  if (args_a.size() != args_b.size() || a.args.size() != b.args.size()) return false;
  std::map<int, int> m;
  if (!iso_points(a.value, b.value, m)) return false;
  for (size_t h = 0; h < args_a.size(); ++h)
    if (!iso_points(*args_a[h], *args_b[h], m)) return false;
  for (size_t h = 0; h < a.args.size(); ++h) {
    auto pa = a.args[h].pairs;
    for (auto& [x, y] : pa) {
      auto ix = m.find(x), iy = m.find(y);
      if (ix == m.end() || iy == m.end()) return false;
      x = ix->second, y = iy->second;
    }
    std::sort(pa.begin(), pa.end());
    if (pa != b.args[h].pairs) return false;
  }
  return true;
}

PairKey pair_key(const OperatorSpec& wide) {
  PairKey k;
  k.arity = wide.arity;
  for (auto& [c1, c2] : wide.arg_counts) {
    if (c1 + c2 != 1)
      throw std::invalid_argument("pair keys index one-argument-per-input operators");
    k.arg_comps.push_back(c1 == 1 ? Comp::First : Comp::Second);
  }
  k.value_comp = wide.value_comp;
  return k;
}

std::string pair_key_text(const PairKey& k) {
  std::string s = "arity " + std::to_string(k.arity) + " with arguments [";
  for (size_t i = 0; i < k.arg_comps.size(); ++i) {
    if (i) s += ", ";
    s += comp_name(k.arg_comps[i]);
  }
  s += "] and value in ";
  s += comp_name(k.value_comp);
  return s;
}

std::optional<std::string> validate_pair_shape(const RegularPair& p) {
  for (auto& [c1, c2] : p.wide.arg_counts)
    if (c1 + c2 != 1) return "the wide member takes one argument per input";
  if (p.tall.arity != 1) return "the tall member is unary";
  if (p.tall.subarity() != p.wide.arity)
    return "the tall member's subarity must equal the wide member's arity";
  int opp1 = 0, opp2 = 0;
  for (auto& [c1, c2] : p.wide.arg_counts) opp2 += c1, opp1 += c2;
  if (p.tall.arg_counts.at(0) != std::pair<int, int>{opp1, opp2})
    return "the tall member's arguments must sit in the opposite components";
  if (p.tall.value_comp != opposite(p.wide.value_comp))
    return "the members' values must lie in opposite components";
  return std::nullopt;
}

std::optional<std::string> validate_pair_values(const RegularPair& p,
                                                const std::vector<const PointSet*>& args) {
  IdAlloc alloc;
  for (auto* s : args) {
    alloc.next_set = std::max(alloc.next_set, s->id + 1);
    for (int q : s->points) alloc.next_point = std::max(alloc.next_point, q + 1);
  }
  IdAlloc alloc2 = alloc;
  BuiltValue w = p.wide.build(args, alloc);
  BuiltValue t = p.tall.build(args, alloc2);
  std::map<int, int> m;
  if (!iso_points(w.value, t.value, m)) return "the members build different values";
  for (size_t h = 0; h < args.size(); ++h) {
    auto pa = w.args[h].pairs;
    for (auto& [x, y] : pa) {
      (void)x;
      auto it = m.find(y);
      if (it == m.end()) return "a wide-member image misses the shared value";
      y = it->second;
    }
    std::sort(pa.begin(), pa.end());
    if (pa != t.args[h].pairs)
      return "the members' embeddings into the shared value differ";
  }
  return std::nullopt;
}

void RegularPairRegistry::add(RegularPair pair) {
  if (auto bad = validate_pair_shape(pair)) throw std::invalid_argument(*bad);
  auto key = pair_key(pair.wide);
  pairs_.insert_or_assign(std::move(key), std::move(pair));
}

const RegularPair* RegularPairRegistry::find(const PairKey& k) const {
  auto it = pairs_.find(k);
  return it == pairs_.end() ? nullptr : &it->second;
}

const RegularPair& RegularPairRegistry::require(const PairKey& k) const {
  if (auto* p = find(k)) return *p;
  throw RegistryGap("no regular pair registered for " + pair_key_text(k));
}

void RegularPairRegistry::set_contraction(std::function<OperatorSpec(Comp, int)> make) {
  contraction_ = std::move(make);
}

OperatorSpec RegularPairRegistry::contraction(Comp c, int copies) const {
  if (!contraction_) throw RegistryGap("no contraction operators registered");
  return contraction_(c, copies);
}

RegularPairRegistry logic_registry() {
  RegularPairRegistry reg;
  reg.add({rule_operator(RuleId::OrL), rule_operator(RuleId::OrRMult)});
  reg.add({rule_operator(RuleId::AndR), rule_operator(RuleId::AndLMult)});
  reg.add({rule_operator(RuleId::NotR), rule_operator(RuleId::NotL)});
  reg.add({rule_operator(RuleId::NotL), rule_operator(RuleId::NotR)});
  reg.add({rule_operator(RuleId::ImpL), rule_operator(RuleId::ImpR)});
  reg.set_contraction([](Comp c, int n) { return contraction_op(c, n); });
  return reg;
}

RegularPairRegistry plain_registry() {
  RegularPairRegistry reg;
  reg.add({plain_op("join", {{1, 0}, {1, 0}}, Comp::First),
           plain_op("join:dual", {{0, 2}}, Comp::Second)});
  reg.add({plain_op("meet", {{0, 1}, {0, 1}}, Comp::Second),
           plain_op("meet:dual", {{2, 0}}, Comp::First)});
  reg.set_contraction([](Comp c, int n) { return contraction_op(c, n); });
  return reg;
}

}  // namespace craig

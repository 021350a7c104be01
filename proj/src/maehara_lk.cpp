#include "craig/maehara.hpp"
#include "maehara_detail.hpp"

namespace craig {
namespace {

using detail::RootMap;

struct Piece {
  Formula i;
  ProofPtr left;
  ProofPtr right;
  std::vector<Trace> traces;
};

OccPath end_atom(const RootMap& to_root, Side side, int index,
                 const std::vector<int>& ap) {
  const OccImage& img = to_root.at({side, index});
  return {img.to.side, img.to.index, detail::cat(img.prefix, ap)};
}

void push_under(std::vector<Trace>& ts, int branch) {
  for (auto& t : ts)
    t.interpolant_path.insert(t.interpolant_path.begin(), branch);
}

Piece axiom_piece(const Proof& p, const RootMap& to_root, const Partition& part) {
  auto [pa, pb] = detail::split_parts(p.conclusion, to_root, part);
  if (p.principal.size() == 1) {
    int k = p.principal[0];
    Side side = constant_axiom_side(p.conclusion, k).value();
    Formula i = detail::color_of(to_root, part, side, k) == Part::A
                    ? Formula::bottom()
                    : Formula::top();
    return {i, detail::any_axiom(pa.inserted(Side::Suc, i).first),
            detail::any_axiom(pb.inserted(Side::Ant, i).first), {}};
  }

  int ia = p.principal[0], is = p.principal[1];
  const Formula& c = p.conclusion.at(Side::Ant, ia);
  Part ca = detail::color_of(to_root, part, Side::Ant, ia);
  Part cs = detail::color_of(to_root, part, Side::Suc, is);
  if (ca == cs) {
    Formula i = ca == Part::A ? Formula::bottom() : Formula::top();
    return {i, detail::any_axiom(pa.inserted(Side::Suc, i).first),
            detail::any_axiom(pb.inserted(Side::Ant, i).first), {}};
  }
  if (ca == Part::A) {
    std::vector<Trace> ts;
    for (const auto& [ap, name] : atom_paths(c))
      ts.push_back({ap, end_atom(to_root, Side::Ant, ia, ap),
                    end_atom(to_root, Side::Suc, is, ap)});
    return {c, detail::any_axiom(pa.inserted(Side::Suc, c).first),
            detail::any_axiom(pb.inserted(Side::Ant, c).first), std::move(ts)};
  }
  Formula i = Formula::negation(c);
  std::vector<Trace> ts;
  for (const auto& [ap, name] : atom_paths(c))
    ts.push_back({detail::cat({0}, ap), end_atom(to_root, Side::Suc, is, ap),
                  end_atom(to_root, Side::Ant, ia, ap)});
  ProofPtr left = fwd_intro(RuleId::NotR, {{Side::Ant, c}}, Side::Suc, i,
                            detail::any_axiom(pa.inserted(Side::Ant, c).first));
  ProofPtr right = fwd_intro(RuleId::NotL, {{Side::Suc, c}}, Side::Ant, i,
                             detail::any_axiom(pb.inserted(Side::Suc, c).first));
  return {i, left, right, std::move(ts)};
}

Piece go(const ProofPtr& p, const RootMap& to_root, const Partition& part) {
  if (p->rule == RuleId::Axiom) return axiom_piece(*p, to_root, part);

  std::vector<RootMap> maps = detail::premise_maps(*p, to_root);
  Side ms = rule_main_side(p->rule);
  int m = p->principal[0];
  Part x = detail::color_of(to_root, part, ms, m);
  const Formula& main = p->conclusion.at(ms, m);

  if (p->premises.size() == 2) {
    Piece s1 = go(p->premises[0], maps[0], part);
    Piece s2 = go(p->premises[1], maps[1], part);
    push_under(s1.traces, 0);
    push_under(s2.traces, 1);
    std::vector<Trace> ts = std::move(s1.traces);
    ts.insert(ts.end(), s2.traces.begin(), s2.traces.end());
    auto [pa, pb] = detail::split_parts(p->conclusion, to_root, part);
    ProofPtr left, right;
    Formula i = x == Part::A ? Formula::disjunction(s1.i, s2.i)
                             : Formula::conjunction(s1.i, s2.i);
    if (x == Part::A) {
      left = fwd_intro(RuleId::OrRMult, {{Side::Suc, s1.i}, {Side::Suc, s2.i}},
                       Side::Suc, i, fwd_binary(p->rule, main, s1.left, s2.left));
      right = fwd_binary(RuleId::OrL, i, s1.right, s2.right);
    } else {
      left = fwd_binary(RuleId::AndR, i, s1.left, s2.left);
      right = fwd_intro(RuleId::AndLMult, {{Side::Ant, s1.i}, {Side::Ant, s2.i}},
                        Side::Ant, i, fwd_binary(p->rule, main, s1.right, s2.right));
    }
    // shared context occurrences arrive once per premise; fold them back
    left = contract_to(left, pa.inserted(Side::Suc, i).first);
    right = contract_to(right, pb.inserted(Side::Ant, i).first);
    return {i, left, right, std::move(ts)};
  }

  Piece sub = go(p->premises[0], maps[0], part);
  ProofPtr h = x == Part::A ? sub.left : sub.right;
  switch (p->rule) {
    case RuleId::NotL:
      h = fwd_intro(p->rule, {{Side::Suc, main.child(0)}}, Side::Ant, main, h);
      break;
    case RuleId::NotR:
      h = fwd_intro(p->rule, {{Side::Ant, main.child(0)}}, Side::Suc, main, h);
      break;
    case RuleId::AndLMult:
      h = fwd_intro(p->rule, {{Side::Ant, main.child(0)}, {Side::Ant, main.child(1)}},
                    Side::Ant, main, h);
      break;
    case RuleId::AndLAddLeft:
      h = fwd_intro(p->rule, {{Side::Ant, main.child(0)}}, Side::Ant, main, h);
      break;
    case RuleId::AndLAddRight:
      h = fwd_intro(p->rule, {{Side::Ant, main.child(1)}}, Side::Ant, main, h);
      break;
    case RuleId::OrRMult:
      h = fwd_intro(p->rule, {{Side::Suc, main.child(0)}, {Side::Suc, main.child(1)}},
                    Side::Suc, main, h);
      break;
    case RuleId::OrRAddLeft:
      h = fwd_intro(p->rule, {{Side::Suc, main.child(0)}}, Side::Suc, main, h);
      break;
    case RuleId::OrRAddRight:
      h = fwd_intro(p->rule, {{Side::Suc, main.child(1)}}, Side::Suc, main, h);
      break;
    case RuleId::ImpR:
      h = fwd_intro(p->rule, {{Side::Ant, main.child(0)}, {Side::Suc, main.child(1)}},
                    Side::Suc, main, h);
      break;
    case RuleId::ContrL:
      h = fwd_contr(Side::Ant, main, h);
      break;
    case RuleId::ContrR:
      h = fwd_contr(Side::Suc, main, h);
      break;
    case RuleId::WeakL:
      h = fwd_weak(Side::Ant, main, h);
      break;
    case RuleId::WeakR:
      h = fwd_weak(Side::Suc, main, h);
      break;
    default:
      throw std::logic_error("unexpected one-premise rule");
  }
  (x == Part::A ? sub.left : sub.right) = h;
  return sub;
}

}  // namespace

InterpolationCertificate interpolate_lk(const ProofPtr& p, const Partition& part) {
  CheckReport rep = check_proof(p, System::LK);
  if (!rep.ok())
    throw std::invalid_argument("proof rejected: " + rep.violations[0].message);
  detail::require_total(part, p->conclusion);
  detail::RootMap root = detail::identity_map(p->conclusion);
  Piece r = go(p, root, part);
  auto [pa, pb] = detail::split_parts(p->conclusion, root, part);
  if (!(r.left->conclusion == pa.inserted(Side::Suc, r.i).first) ||
      !(r.right->conclusion == pb.inserted(Side::Ant, r.i).first))
    throw std::logic_error("component conclusions drifted from the split");
  return {r.i, r.left, r.right, std::move(r.traces)};
}

}  // namespace craig

#include "craig/maehara.hpp"
#include "maehara_detail.hpp"

namespace craig {
namespace {

using detail::RootMap;

// Mixed-color node state. `n_shape` means the succedent belongs to the B
// component (or is empty): the interpolant then sits in the succedent of
// `left` and the antecedent of `right`. Otherwise the positions swap.
struct Full {
  bool n_shape;
  Formula i;
  ProofPtr left;
  ProofPtr right;
  std::vector<Trace> traces;
};

// A single-colored subtree serves as its own component proof.
struct State {
  std::optional<Full> full;
  Part only = Part::A;
  ProofPtr raw;
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

std::optional<Part> uniform_color(const Sequent& s, const RootMap& to_root,
                                  const Partition& part) {
  std::optional<Part> u;
  for (Side side : {Side::Ant, Side::Suc})
    for (int i = 0; i < s.count(side); ++i) {
      Part c = detail::color_of(to_root, part, side, i);
      if (!u)
        u = c;
      else if (*u != c)
        return std::nullopt;
    }
  return u;
}

bool n_shape_of(const Sequent& s, const RootMap& to_root, const Partition& part) {
  if (s.count(Side::Suc) == 0) return true;
  Part c = detail::color_of(to_root, part, Side::Suc, 0);
  for (int i = 1; i < s.count(Side::Suc); ++i)
    if (detail::color_of(to_root, part, Side::Suc, i) != c)
      throw std::logic_error("succedent copies straddle the coloring");
  return c == Part::B;
}

// Positions of the interpolant inside the half owned by the main side's
// color: for an A-colored value the host is `left`, for B it is `right`.
struct View {
  ProofPtr host;
  ProofPtr guest;
  bool at_suc;
  Formula i;
  std::vector<Trace> traces;
};

View view_of(Full f, Part x) {
  if (x == Part::A)
    return {std::move(f.left), std::move(f.right), f.n_shape, std::move(f.i),
            std::move(f.traces)};
  return {std::move(f.right), std::move(f.left), !f.n_shape, std::move(f.i),
          std::move(f.traces)};
}

Full assemble(bool n_shape, Formula i, ProofPtr host, ProofPtr guest, Part x,
              std::vector<Trace> ts) {
  if (x == Part::A)
    return {n_shape, std::move(i), std::move(host), std::move(guest), std::move(ts)};
  return {n_shape, std::move(i), std::move(guest), std::move(host), std::move(ts)};
}

Full axiom_full(const Proof& p, const RootMap& to_root, const Partition& part) {
  auto [pa, pb] = detail::split_parts(p.conclusion, to_root, part);
  bool n = n_shape_of(p.conclusion, to_root, part);
  std::optional<Formula> i;
  std::vector<Trace> ts;
  if (p.principal.size() == 1) {
    int k = p.principal[0];
    Side side = constant_axiom_side(p.conclusion, k).value();
    bool host_a = detail::color_of(to_root, part, side, k) == Part::A;
    i = host_a == n ? Formula::bottom() : Formula::top();
  } else {
    int ia = p.principal[0], is = p.principal[1];
    const Formula& c = p.conclusion.at(Side::Ant, ia);
    Part ca = detail::color_of(to_root, part, Side::Ant, ia);
    Part cs = detail::color_of(to_root, part, Side::Suc, is);
    if (ca == cs) {
      i = Formula::top();
    } else {
      i = c;
      for (const auto& [ap, name] : atom_paths(c)) {
        OccPath xa = end_atom(to_root, Side::Ant, ia, ap);
        OccPath xs = end_atom(to_root, Side::Suc, is, ap);
        if (ca == Part::A)
          ts.push_back({ap, xa, xs});
        else
          ts.push_back({ap, xs, xa});
      }
    }
  }
  Sequent ls = pa.inserted(n ? Side::Suc : Side::Ant, *i).first;
  Sequent rs = pb.inserted(n ? Side::Ant : Side::Suc, *i).first;
  return {n, *i, detail::any_axiom(ls), detail::any_axiom(rs), std::move(ts)};
}

Full unary_full(const Proof& p, const RootMap& to_root, const Partition& part,
                Full s) {
  Side ms = rule_main_side(p.rule);
  int m = p.principal[0];
  Part x = detail::color_of(to_root, part, ms, m);
  const Formula& main = p.conclusion.at(ms, m);
  ProofPtr& own = x == Part::A ? s.left : s.right;
  switch (p.rule) {
    case RuleId::AndLAddLeft:
      own = fwd_intro(p.rule, {{Side::Ant, main.child(0)}}, Side::Ant, main, own);
      return s;
    case RuleId::AndLAddRight:
      own = fwd_intro(p.rule, {{Side::Ant, main.child(1)}}, Side::Ant, main, own);
      return s;
    case RuleId::OrRAddLeft:
      own = fwd_intro(p.rule, {{Side::Suc, main.child(0)}}, Side::Suc, main, own);
      return s;
    case RuleId::OrRAddRight:
      own = fwd_intro(p.rule, {{Side::Suc, main.child(1)}}, Side::Suc, main, own);
      return s;
    case RuleId::ImpR:
      own = fwd_intro(p.rule, {{Side::Ant, main.child(0)}, {Side::Suc, main.child(1)}},
                      Side::Suc, main, own);
      return s;
    case RuleId::ContrL:
      own = fwd_contr(Side::Ant, main, own);
      return s;
    case RuleId::ContrR: {
      ProofPtr& h = s.n_shape ? s.right : s.left;
      h = fwd_contr(Side::Suc, main, h);
      return s;
    }
    case RuleId::NotR: {
      if (x == Part::B) {
        s.right = fwd_intro(p.rule, {{Side::Ant, main.child(0)}}, Side::Suc, main,
                            s.right);
        return s;
      }
      Formula ni = Formula::negation(s.i);
      s.left = fwd_intro(p.rule, {{Side::Ant, main.child(0)}}, Side::Suc, main,
                         fwd_intro(RuleId::NotL, {{Side::Suc, s.i}}, Side::Ant, ni,
                                   s.left));
      s.right = fwd_intro(RuleId::NotR, {{Side::Ant, s.i}}, Side::Suc, ni, s.right);
      s.i = ni;
      s.n_shape = false;
      push_under(s.traces, 0);
      return s;
    }
    case RuleId::NotL: {
      if (x == Part::B) {
        s.right = fwd_intro(p.rule, {{Side::Suc, main.child(0)}}, Side::Ant, main,
                            s.right);
        return s;
      }
      Formula ni = Formula::negation(s.i);
      s.left = fwd_intro(RuleId::NotR, {{Side::Ant, s.i}}, Side::Suc, ni,
                         fwd_intro(p.rule, {{Side::Suc, main.child(0)}}, Side::Ant,
                                   main, s.left));
      s.right = fwd_intro(RuleId::NotL, {{Side::Suc, s.i}}, Side::Ant, ni, s.right);
      s.i = ni;
      s.n_shape = true;
      push_under(s.traces, 0);
      return s;
    }
    default:
      throw std::logic_error("rule outside the single-succedent fragment");
  }
}

Full binary_full(const Proof& p, const RootMap& to_root, const Partition& part,
                 State s1, State s2) {
  Side ms = rule_main_side(p.rule);
  Part x = detail::color_of(to_root, part, ms, p.principal[0]);
  const Formula& main = p.conclusion.at(ms, p.principal[0]);
  bool n_concl = n_shape_of(p.conclusion, to_root, part);
  bool q_suc = x == Part::A ? n_concl : !n_concl;
  auto [pa, pb] = detail::split_parts(p.conclusion, to_root, part);

  Formula i = Formula::top();
  ProofPtr host, guest;
  std::vector<Trace> ts;

  if (!s1.full || !s2.full) {
    if (!s1.full && !s2.full)
      throw std::logic_error("two single-colored premises under a mixed node");
    int k = !s1.full ? 0 : 1;
    State& oneside = k == 0 ? s1 : s2;
    if (oneside.only != x)
      throw std::logic_error("single-colored premise off the value's side");
    View vj = view_of(std::move(k == 0 ? *s2.full : *s1.full), x);
    ts = std::move(vj.traces);
    bool flip = vj.at_suc != q_suc;
    i = flip ? Formula::negation(vj.i) : vj.i;
    ProofPtr hj = vj.host;
    guest = vj.guest;
    if (flip) {
      push_under(ts, 0);
      if (vj.at_suc) {
        hj = fwd_intro(RuleId::NotL, {{Side::Suc, vj.i}}, Side::Ant, i, hj);
        guest = fwd_intro(RuleId::NotR, {{Side::Ant, vj.i}}, Side::Suc, i, guest);
      } else {
        guest = fwd_intro(RuleId::NotL, {{Side::Suc, vj.i}}, Side::Ant, i, guest);
      }
    }
    host = k == 0 ? fwd_binary(p.rule, main, oneside.raw, hj)
                  : fwd_binary(p.rule, main, hj, oneside.raw);
    if (flip && !vj.at_suc)
      host = fwd_intro(RuleId::NotR, {{Side::Ant, vj.i}}, Side::Suc, i, host);
  } else {
    View v1 = view_of(std::move(*s1.full), x);
    View v2 = view_of(std::move(*s2.full), x);
    if (!v1.at_suc && !v2.at_suc) {
      if (q_suc) throw std::logic_error("conjunctive merge facing a succedent slot");
      i = Formula::conjunction(v1.i, v2.i);
      ProofPtr h1 = fwd_intro(RuleId::AndLAddLeft, {{Side::Ant, v1.i}}, Side::Ant,
                              i, v1.host);
      ProofPtr h2 = fwd_intro(RuleId::AndLAddRight, {{Side::Ant, v2.i}}, Side::Ant,
                              i, v2.host);
      host = fwd_contr(Side::Ant, i, fwd_binary(p.rule, main, h1, h2));
      guest = fwd_binary(RuleId::AndR, i, v1.guest, v2.guest);
      push_under(v1.traces, 0);
      push_under(v2.traces, 1);
    } else if (v1.at_suc && v2.at_suc) {
      if (!q_suc) throw std::logic_error("disjunctive merge facing an antecedent slot");
      i = Formula::disjunction(v1.i, v2.i);
      ProofPtr h1 = fwd_intro(RuleId::OrRAddLeft, {{Side::Suc, v1.i}}, Side::Suc,
                              i, v1.host);
      ProofPtr h2 = fwd_intro(RuleId::OrRAddRight, {{Side::Suc, v2.i}}, Side::Suc,
                              i, v2.host);
      host = fwd_contr(Side::Suc, i, fwd_binary(p.rule, main, h1, h2));
      guest = fwd_binary(RuleId::OrL, i, v1.guest, v2.guest);
      push_under(v1.traces, 0);
      push_under(v2.traces, 1);
    } else {
      View& va = v1.at_suc ? v2 : v1;
      View& vs = v1.at_suc ? v1 : v2;
      if (q_suc) {
        i = Formula::implication(va.i, vs.i);
        host = fwd_intro(RuleId::ImpR, {{Side::Ant, va.i}, {Side::Suc, vs.i}},
                         Side::Suc, i, fwd_binary(p.rule, main, v1.host, v2.host));
        guest = fwd_binary(RuleId::ImpL, i, va.guest, vs.guest);
        push_under(va.traces, 0);
        push_under(vs.traces, 1);
      } else {
        Formula nv = Formula::negation(vs.i);
        i = Formula::conjunction(va.i, nv);
        va.host = fwd_intro(RuleId::AndLAddLeft, {{Side::Ant, va.i}}, Side::Ant, i,
                            va.host);
        vs.host = fwd_intro(RuleId::AndLAddRight, {{Side::Ant, nv}}, Side::Ant, i,
                            fwd_intro(RuleId::NotL, {{Side::Suc, vs.i}}, Side::Ant,
                                      nv, vs.host));
        host = fwd_contr(Side::Ant, i, fwd_binary(p.rule, main, v1.host, v2.host));
        guest = fwd_binary(RuleId::AndR, i, va.guest,
                           fwd_intro(RuleId::NotR, {{Side::Ant, vs.i}}, Side::Suc,
                                     nv, vs.guest));
        push_under(va.traces, 0);
        push_under(vs.traces, 0);
        push_under(vs.traces, 1);
      }
    }
    ts = std::move(v1.traces);
    ts.insert(ts.end(), v2.traces.begin(), v2.traces.end());
  }

  // fold shared context copies back into the exact component targets
  const Sequent& hpart = x == Part::A ? pa : pb;
  const Sequent& gpart = x == Part::A ? pb : pa;
  host = contract_to(host, hpart.inserted(q_suc ? Side::Suc : Side::Ant, i).first);
  guest = contract_to(guest, gpart.inserted(q_suc ? Side::Ant : Side::Suc, i).first);
  return assemble(n_concl, std::move(i), std::move(host), std::move(guest), x,
                  std::move(ts));
}

State go(const ProofPtr& p, const RootMap& to_root, const Partition& part) {
  if (auto u = uniform_color(p->conclusion, to_root, part))
    return {std::nullopt, *u, p};
  if (p->rule == RuleId::Axiom)
    return {axiom_full(*p, to_root, part), Part::A, nullptr};
  std::vector<RootMap> maps = detail::premise_maps(*p, to_root);
  if (p->premises.size() == 1) {
    State s = go(p->premises[0], maps[0], part);
    if (!s.full)
      throw std::logic_error("single-colored premise under a mixed one-premise node");
    return {unary_full(*p, to_root, part, std::move(*s.full)), Part::A, nullptr};
  }
  State s1 = go(p->premises[0], maps[0], part);
  State s2 = go(p->premises[1], maps[1], part);
  return {binary_full(*p, to_root, part, std::move(s1), std::move(s2)), Part::A,
          nullptr};
}

}  // namespace

InterpolationCertificate interpolate_lj(const ProofPtr& p, const Partition& part) {
  CheckReport rep = check_proof(p, System::LJ);
  if (!rep.ok())
    throw std::invalid_argument("input violates the LJ restriction: " +
                                rep.violations[0].message);
  detail::require_total(part, p->conclusion);
  for (int i = 0; i < p->conclusion.count(Side::Suc); ++i)
    if (part.color.at({Side::Suc, i}) != Part::B)
      throw std::invalid_argument(
          "input violates the LJ restriction: succedent occurrence outside the B "
          "component");

  RootMap root = detail::identity_map(p->conclusion);
  State s = go(p, root, part);
  Formula top = Formula::top();
  if (s.full) {
    if (!s.full->n_shape)
      throw std::logic_error("end succedent escaped the B component");
    return {s.full->i, s.full->left, s.full->right, std::move(s.full->traces)};
  }
  if (s.only == Part::B) {
    ProofPtr left = make_proof(Sequent::of({}, {top}), RuleId::Axiom, {0});
    return {top, left, weaken_lj(s.raw, top), {}};
  }
  Formula i = Formula::negation(top);
  ProofPtr left = fwd_intro(RuleId::NotR, {{Side::Ant, top}}, Side::Suc, i,
                            weaken_lj(s.raw, top));
  ProofPtr right = fwd_intro(RuleId::NotL, {{Side::Suc, top}}, Side::Ant, i,
                             make_proof(Sequent::of({}, {top}), RuleId::Axiom, {0}));
  return {i, left, right, {}};
}

}  // namespace craig

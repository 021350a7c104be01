#include "craig/maehara.hpp"

#include "craig/prover.hpp"
#include "maehara_detail.hpp"

namespace craig {

const char* part_name(Part p) { return p == Part::A ? "A" : "B"; }

NoReplacementAvailable::NoReplacementAvailable()
    : std::runtime_error("interpolant has constant leaves but the language is empty") {}

TraceUnavailable::TraceUnavailable()
    : std::runtime_error("atom traces need a weakening-free proof") {}

namespace {

bool mentions_constants(const Formula& f) {
  if (f.kind() == Conn::Top || f.kind() == Conn::Bottom) return true;
  for (int i = 0; i < f.arity(); ++i)
    if (mentions_constants(f.child(i))) return true;
  return false;
}

Formula swap_constants(const Formula& f, const Formula& bot, const Formula& top) {
  switch (f.kind()) {
    case Conn::Bottom: return bot;
    case Conn::Top: return top;
    case Conn::Atom: return f;
    case Conn::Not: return Formula::negation(swap_constants(f.child(0), bot, top));
    case Conn::And:
      return Formula::conjunction(swap_constants(f.child(0), bot, top),
                                  swap_constants(f.child(1), bot, top));
    case Conn::Or:
      return Formula::disjunction(swap_constants(f.child(0), bot, top),
                                  swap_constants(f.child(1), bot, top));
    case Conn::Implies:
      return Formula::implication(swap_constants(f.child(0), bot, top),
                                  swap_constants(f.child(1), bot, top));
  }
  throw std::logic_error("unreachable");
}

ProofPtr reprove(const Sequent& goal) {
  auto p = prove_lk(goal);
  if (!p)
    throw std::logic_error("constant replacement lost provability of '" +
                           goal.text() + "'");
  return *p;
}

bool has_weakening(const ProofPtr& p) {
  if (p->rule == RuleId::WeakL || p->rule == RuleId::WeakR) return true;
  for (const auto& q : p->premises)
    if (has_weakening(q)) return true;
  return false;
}

}  // namespace

InterpolationCertificate normalize_constants(const InterpolationCertificate& cert,
                                             const Language& lang) {
  if (!mentions_constants(cert.interpolant)) return cert;
  if (lang.empty()) throw NoReplacementAvailable();
  Formula q = Formula::atom(*lang.begin());
  Formula bot = Formula::conjunction(q, Formula::negation(q));
  Formula top = Formula::implication(q, q);
  Formula fresh = swap_constants(cert.interpolant, bot, top);

  const Sequent& lc = cert.left->conclusion;
  Sequent left_goal =
      lc.removed(Side::Suc, locate_first(lc, Side::Suc, cert.interpolant))
          .inserted(Side::Suc, fresh)
          .first;
  const Sequent& rc = cert.right->conclusion;
  Sequent right_goal =
      rc.removed(Side::Ant, locate_first(rc, Side::Ant, cert.interpolant))
          .inserted(Side::Ant, fresh)
          .first;
  return {fresh, reprove(left_goal), reprove(right_goal), {}};
}

std::vector<Trace> trace_atoms(const InterpolationCertificate& cert,
                               const ProofPtr& p, const Partition& part) {
  if (has_weakening(p)) throw TraceUnavailable();
  InterpolationCertificate again = interpolate_lk(p, part);
  if (!(again.interpolant == cert.interpolant)) {
    bool matched = false;
    try {
      again = interpolate_lj(p, part);
      matched = again.interpolant == cert.interpolant;
    } catch (const std::invalid_argument&) {
    }
    if (!matched)
      throw std::invalid_argument("certificate does not belong to this proof and coloring");
  }
  return again.traces;
}

}  // namespace craig

#include "craig/eval.hpp"

#include <stdexcept>

namespace craig {

bool eval_classical(const Formula& f, const Valuation& v) {
  switch (f.kind()) {
    case Conn::Atom: {
      auto it = v.find(f.atom_name());
      return it != v.end() && it->second;
    }
    case Conn::Top: return true;
    case Conn::Bottom: return false;
    case Conn::Not: return !eval_classical(f.child(0), v);
    case Conn::And: return eval_classical(f.child(0), v) && eval_classical(f.child(1), v);
    case Conn::Or: return eval_classical(f.child(0), v) || eval_classical(f.child(1), v);
    case Conn::Implies:
      return !eval_classical(f.child(0), v) || eval_classical(f.child(1), v);
  }
  throw std::logic_error("unreachable formula kind");
}

bool holds_classical(const Sequent& s, const Valuation& v) {
  for (const Formula& f : s.ant())
    if (!eval_classical(f, v)) return true;
  for (const Formula& f : s.suc())
    if (eval_classical(f, v)) return true;
  return false;
}

bool is_valid_classical(const Sequent& s) {
  std::set<std::string> atom_set = s.atoms();
  std::vector<std::string> names(atom_set.begin(), atom_set.end());
  if (names.size() > 8 * sizeof(unsigned long long))
    throw std::logic_error("too many atoms for truth-table validity");
  unsigned long long rows = 1ull << names.size();
  for (unsigned long long row = 0; row < rows; ++row) {
    Valuation v;
    for (std::size_t i = 0; i < names.size(); ++i) v[names[i]] = (row >> i) & 1;
    if (!holds_classical(s, v)) return false;
  }
  return true;
}

}  // namespace craig

#include "craig/formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace craig {

struct Formula::Node {
  Conn kind;
  std::string name;
  std::vector<Formula> kids;
  std::string text;
  int size = 1;
  int depth = 1;
};

namespace {

int prec_of(Conn c) {
  switch (c) {
    case Conn::Implies: return 1;
    case Conn::Or: return 2;
    case Conn::And: return 3;
    case Conn::Not: return 4;
    default: return 5;
  }
}

std::string wrap(const Formula& f, bool parens) {
  return parens ? "(" + f.text() + ")" : f.text();
}

std::string render(Conn kind, const std::string& name, const std::vector<Formula>& kids) {
  switch (kind) {
    case Conn::Atom: return name;
    case Conn::Top: return "true";
    case Conn::Bottom: return "false";
    case Conn::Not:
      return "~" + wrap(kids[0], prec_of(kids[0].kind()) < 4);
    case Conn::And:
      return wrap(kids[0], prec_of(kids[0].kind()) < 3) + " & " +
             wrap(kids[1], prec_of(kids[1].kind()) <= 3);
    case Conn::Or:
      return wrap(kids[0], prec_of(kids[0].kind()) < 2) + " | " +
             wrap(kids[1], prec_of(kids[1].kind()) <= 2);
    case Conn::Implies:
      return wrap(kids[0], prec_of(kids[0].kind()) <= 1) + " -> " + kids[1].text();
  }
  throw std::logic_error("unreachable formula kind");
}

}  // namespace

Formula Formula::make(Conn kind, std::string name, std::vector<Formula> kids) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->name = std::move(name);
  n->kids = std::move(kids);
  for (const Formula& k : n->kids) {
    n->size += k.size();
    n->depth = std::max(n->depth, 1 + k.depth());
  }
  n->text = render(n->kind, n->name, n->kids);
  return Formula(std::move(n));
}

Formula Formula::atom(std::string name) {
  if (name.empty()) throw std::logic_error("empty atom name");
  return make(Conn::Atom, std::move(name), {});
}
Formula Formula::top() { return make(Conn::Top, {}, {}); }
Formula Formula::bottom() { return make(Conn::Bottom, {}, {}); }
Formula Formula::negation(Formula a) { return make(Conn::Not, {}, {std::move(a)}); }
Formula Formula::conjunction(Formula a, Formula b) {
  return make(Conn::And, {}, {std::move(a), std::move(b)});
}
Formula Formula::disjunction(Formula a, Formula b) {
  return make(Conn::Or, {}, {std::move(a), std::move(b)});
}
Formula Formula::implication(Formula a, Formula b) {
  return make(Conn::Implies, {}, {std::move(a), std::move(b)});
}

Conn Formula::kind() const { return node_->kind; }

const std::string& Formula::atom_name() const {
  if (node_->kind != Conn::Atom) throw std::logic_error("atom_name on non-atom");
  return node_->name;
}

int Formula::arity() const { return static_cast<int>(node_->kids.size()); }

const Formula& Formula::child(int i) const {
  if (i < 0 || i >= arity()) throw std::logic_error("formula child index out of range");
  return node_->kids[static_cast<std::size_t>(i)];
}

const std::string& Formula::text() const { return node_->text; }
int Formula::size() const { return node_->size; }
int Formula::depth() const { return node_->depth; }

void Formula::collect_atoms(std::set<std::string>& out) const {
  if (node_->kind == Conn::Atom) {
    out.insert(node_->name);
    return;
  }
  for (const Formula& k : node_->kids) k.collect_atoms(out);
}

std::set<std::string> Formula::atoms() const {
  std::set<std::string> out;
  collect_atoms(out);
  return out;
}

bool Formula::operator==(const Formula& o) const {
  return node_ == o.node_ || node_->text == o.node_->text;
}

std::strong_ordering Formula::operator<=>(const Formula& o) const {
  int c = node_->text.compare(o.node_->text);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

const Formula& subformula(const Formula& root, const std::vector<int>& path) {
  const Formula* f = &root;
  for (int step : path) f = &f->child(step);
  return *f;
}

namespace {
void walk_atoms(const Formula& f, std::vector<int>& path,
                std::vector<std::pair<std::vector<int>, std::string>>& out) {
  if (f.kind() == Conn::Atom) {
    out.emplace_back(path, f.atom_name());
    return;
  }
  for (int i = 0; i < f.arity(); ++i) {
    path.push_back(i);
    walk_atoms(f.child(i), path, out);
    path.pop_back();
  }
}
}  // namespace

std::vector<std::pair<std::vector<int>, std::string>> atom_paths(const Formula& f) {
  std::vector<std::pair<std::vector<int>, std::string>> out;
  std::vector<int> path;
  walk_atoms(f, path, out);
  return out;
}

}  // namespace craig

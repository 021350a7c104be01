#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace craig {

enum class Conn : std::uint8_t { Atom, Top, Bottom, Not, And, Or, Implies };

// Immutable formula tree with a cached minimal-parenthesis rendering.
// Rendering is injective over the grammar, so text order doubles as a
// total structural order.
class Formula {
public:
  static Formula atom(std::string name);
  static Formula top();
  static Formula bottom();
  static Formula negation(Formula a);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);

  Conn kind() const;
  const std::string& atom_name() const;
  int arity() const;
  const Formula& child(int i) const;

  const std::string& text() const;
  int size() const;
  int depth() const;

  void collect_atoms(std::set<std::string>& out) const;
  std::set<std::string> atoms() const;

  bool operator==(const Formula& o) const;
  std::strong_ordering operator<=>(const Formula& o) const;

private:
  struct Node;
  std::shared_ptr<const Node> node_;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Conn kind, std::string name, std::vector<Formula> kids);
};

// Child-index path from a formula root, 0 = only/left child, 1 = right child.
const Formula& subformula(const Formula& root, const std::vector<int>& path);

// Paths to the Atom leaves in depth-first left-to-right order, with atom names.
// Constant leaves carry no atoms and are skipped.
std::vector<std::pair<std::vector<int>, std::string>> atom_paths(const Formula& f);

}  // namespace craig

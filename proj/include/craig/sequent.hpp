#pragma once

#include "craig/formula.hpp"

namespace craig {

enum class Side : std::uint8_t { Ant, Suc };

Side opposite(Side s);
const char* side_name(Side s);  // "ant" / "suc"

// Occurrence of a whole formula in a sequent.
struct OccRef {
  Side side;
  int index;
  bool operator==(const OccRef&) const = default;
  auto operator<=>(const OccRef&) const = default;
};

// Occurrence of a subformula: formula occurrence plus a child-index path.
struct OccPath {
  Side side;
  int index;
  std::vector<int> path;
  bool operator==(const OccPath&) const = default;
  auto operator<=>(const OccPath&) const = default;
};

// Two formula multisets kept in canonical order: sorted by rendered text,
// ties by insertion order. Indices always refer to this canonical order.
class Sequent {
public:
  Sequent() = default;
  static Sequent of(std::vector<Formula> ant, std::vector<Formula> suc);

  const std::vector<Formula>& ant() const { return ant_; }
  const std::vector<Formula>& suc() const { return suc_; }
  const std::vector<Formula>& side(Side s) const { return s == Side::Ant ? ant_ : suc_; }
  int count(Side s) const { return static_cast<int>(side(s).size()); }
  const Formula& at(Side s, int index) const;
  const Formula& at(const OccRef& r) const { return at(r.side, r.index); }
  bool empty() const { return ant_.empty() && suc_.empty(); }

  // New copy with one more formula; returns the index it landed at
  // (after any equal formulas already present).
  std::pair<Sequent, int> inserted(Side s, const Formula& f) const;
  Sequent removed(Side s, int index) const;

  std::string text() const;
  std::set<std::string> atoms() const;

  bool operator==(const Sequent& o) const = default;

private:
  std::vector<Formula> ant_, suc_;
};

// "side:index:path:atom", path as dot-joined child indices (empty for the root).
std::string occ_label(const OccPath& p, const Sequent& s);

}  // namespace craig

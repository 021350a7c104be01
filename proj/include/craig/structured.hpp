#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "craig/formula.hpp"

namespace craig {

// Formula-shaped point set: the atomic leaves carry the points.
struct TreeShape {
  Formula formula;
  std::vector<std::pair<std::vector<int>, int>> leaves;  // leaf path -> point
  bool operator==(const TreeShape& o) const {
    return formula == o.formula && leaves == o.leaves;
  }
};

// Finite set of abstract points, plain or shaped as a formula tree.
struct PointSet {
  int id = -1;
  std::vector<int> points;  // ascending, duplicate-free
  std::optional<TreeShape> shape;
  bool plain() const { return !shape.has_value(); }
  bool operator==(const PointSet& o) const = default;
};

enum class Comp : std::uint8_t { First, Second };

Comp opposite(Comp c);
const char* comp_name(Comp c);  // "first" / "second"

// Bipartite multiset of point sets, held as ids into a shared table. Within a
// component the stored order carries no meaning.
struct StructuredSet {
  std::vector<int> first, second;
  const std::vector<int>& comp(Comp c) const { return c == Comp::First ? first : second; }
  std::vector<int>& comp(Comp c) { return c == Comp::First ? first : second; }
};

bool same_structured(const StructuredSet& a, const StructuredSet& b);

using Space = std::vector<StructuredSet>;
using SetTable = std::map<int, PointSet>;

const PointSet& set_at(const SetTable& table, int id);

// Pseudomap between two point sets: any relation defined on every source
// point. The empty relation from the empty set is legal.
struct Embedding {
  int source = -1, target = -1;
  std::vector<std::pair<int, int>> pairs;  // ascending
  bool operator==(const Embedding& o) const = default;
};

// Violation message, or nothing when the embedding is well formed.
std::optional<std::string> check_embedding(const Embedding& e, const PointSet& src,
                                           const PointSet& dst);

// A structured set is trivial when the witness embeds one member set into a
// member of the opposite component. Returns the failed clause, if any.
std::optional<std::string> validate_trivial(const StructuredSet& s, const Embedding& w,
                                            const SetTable& table);

// Non-bipartite variant: the witness connects two distinct member positions
// of the single component.
std::optional<std::string> validate_trivial_collection(const StructuredSet& s,
                                                       const Embedding& w,
                                                       const SetTable& table);

// Same shape up to renaming of points: equal formula for tree sets, equal
// cardinality for plain ones.
bool copy_equivalent(const PointSet& a, const PointSet& b);

// Reading of a tree set; throws std::invalid_argument for plain sets.
const Formula& shape_formula(const PointSet& s);

PointSet plain_set(int id, std::vector<int> points);

// Fresh tree set over f: one new point per atomic leaf.
PointSet tree_set(int id, const Formula& f, int& next_point);

// The point sitting at a leaf path, -1 when absent.
int point_at(const PointSet& s, const std::vector<int>& path);

// Identity embedding between two copies of one tree shape, pairing points
// leaf by leaf.
Embedding tree_identity(const PointSet& from, const PointSet& to);

}  // namespace craig

#include "craig/structured.hpp"

#include <algorithm>
#include <stdexcept>

namespace craig {

Comp opposite(Comp c) { return c == Comp::First ? Comp::Second : Comp::First; }

const char* comp_name(Comp c) { return c == Comp::First ? "first" : "second"; }

bool same_structured(const StructuredSet& a, const StructuredSet& b) {
  auto sorted = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  return sorted(a.first) == sorted(b.first) && sorted(a.second) == sorted(b.second);
}

const PointSet& set_at(const SetTable& table, int id) {
  auto it = table.find(id);
  if (it == table.end())
    throw std::out_of_range("unknown point set id " + std::to_string(id));
  return it->second;
}

std::optional<std::string> check_embedding(const Embedding& e, const PointSet& src,
                                           const PointSet& dst) {
  auto member = [](const std::vector<int>& v, int x) {
    return std::binary_search(v.begin(), v.end(), x);
  };
  std::vector<bool> covered(src.points.size(), false);
  for (auto& [a, b] : e.pairs) {
    auto it = std::lower_bound(src.points.begin(), src.points.end(), a);
    if (it == src.points.end() || *it != a)
      return "pair references a point outside the source set";
    covered[static_cast<size_t>(it - src.points.begin())] = true;
    if (!member(dst.points, b)) return "pair references a point outside the target set";
  }
  for (size_t i = 0; i < covered.size(); ++i)
    if (!covered[i]) return "source point " + std::to_string(src.points[i]) + " has no image";
  return std::nullopt;
}

namespace {

int count_id(const std::vector<int>& v, int id) {
  return static_cast<int>(std::count(v.begin(), v.end(), id));
}

}  // namespace

std::optional<std::string> validate_trivial(const StructuredSet& s, const Embedding& w,
                                            const SetTable& table) {
  if (s.first.empty() || s.second.empty())
    return "the components of a trivial structured set are non-empty";
  bool fwd = count_id(s.first, w.source) > 0 && count_id(s.second, w.target) > 0;
  bool bwd = count_id(s.second, w.source) > 0 && count_id(s.first, w.target) > 0;
  if (!fwd && !bwd) return "the witness must connect sets in opposite components";
  return check_embedding(w, set_at(table, w.source), set_at(table, w.target));
}

std::optional<std::string> validate_trivial_collection(const StructuredSet& s,
                                                       const Embedding& w,
                                                       const SetTable& table) {
  if (!s.second.empty()) return "a collection keeps every set in its first component";
  if (s.first.size() < 2) return "a trivial collection holds at least two sets";
  int need = w.source == w.target ? 2 : 1;
  if (count_id(s.first, w.source) < need || count_id(s.first, w.target) < 1)
    return "the witness must connect two member sets";
  return check_embedding(w, set_at(table, w.source), set_at(table, w.target));
}

bool copy_equivalent(const PointSet& a, const PointSet& b) {
  if (a.plain() != b.plain()) return false;
  if (a.plain()) return a.points.size() == b.points.size();
  return a.shape->formula == b.shape->formula;
}

const Formula& shape_formula(const PointSet& s) {
  if (s.plain())
    throw std::invalid_argument("point set " + std::to_string(s.id) + " has no formula shape");
  return s.shape->formula;
}

PointSet plain_set(int id, std::vector<int> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  PointSet s;
  s.id = id;
  s.points = std::move(points);
  return s;
}

PointSet tree_set(int id, const Formula& f, int& next_point) {
  PointSet s;
  s.id = id;
  TreeShape shape{f, {}};
  for (auto& [path, atom] : atom_paths(f)) {
    (void)atom;
    int p = next_point++;
    shape.leaves.emplace_back(path, p);
    s.points.push_back(p);
  }
  std::sort(s.points.begin(), s.points.end());
  s.shape = std::move(shape);
  return s;
}

int point_at(const PointSet& s, const std::vector<int>& path) {
  if (s.plain()) return -1;
  for (auto& [lp, pt] : s.shape->leaves)
    if (lp == path) return pt;
  return -1;
}

Embedding tree_identity(const PointSet& from, const PointSet& to) {
  if (from.plain() || to.plain())
    throw std::invalid_argument("leafwise pairing needs tree shapes on both sides");
  if (!(from.shape->formula == to.shape->formula))
    throw std::invalid_argument("leafwise pairing needs copies of one shape");
  Embedding e;
  e.source = from.id;
  e.target = to.id;
  for (auto& [path, pt] : from.shape->leaves) {
    int q = point_at(to, path);
    if (q < 0) throw std::logic_error("leaf missing in the target copy");
    e.pairs.emplace_back(pt, q);
  }
  std::sort(e.pairs.begin(), e.pairs.end());
  return e;
}

}  // namespace craig

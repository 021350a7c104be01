#pragma once

#include <map>
#include <stdexcept>

#include "craig/maehara.hpp"

namespace craig::detail {

// Image of each occurrence of a node inside the end sequent.
using RootMap = std::map<OccRef, OccImage>;

inline std::vector<int> cat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

inline RootMap identity_map(const Sequent& s) {
  RootMap m;
  for (Side side : {Side::Ant, Side::Suc})
    for (int i = 0; i < s.count(side); ++i)
      m[{side, i}] = {{side, i}, {}};
  return m;
}

inline std::vector<RootMap> premise_maps(const Proof& node, const RootMap& to_root) {
  DownMaps down = down_maps(node);
  std::vector<RootMap> out(down.size());
  for (size_t k = 0; k < down.size(); ++k)
    for (const auto& [occ, img] : down[k]) {
      const OccImage& up = to_root.at(img.to);
      out[k][occ] = {up.to, cat(up.prefix, img.prefix)};
    }
  return out;
}

inline Part color_of(const RootMap& to_root, const Partition& part, Side side,
                     int index) {
  return part.color.at(to_root.at({side, index}).to);
}

// A-part and B-part of a sequent under the coloring, as separate sequents.
inline std::pair<Sequent, Sequent> split_parts(const Sequent& s, const RootMap& to_root,
                                               const Partition& part) {
  std::vector<Formula> aa, as, ba, bs;
  for (Side side : {Side::Ant, Side::Suc})
    for (int i = 0; i < s.count(side); ++i) {
      bool is_a = color_of(to_root, part, side, i) == Part::A;
      auto& bucket = side == Side::Ant ? (is_a ? aa : ba) : (is_a ? as : bs);
      bucket.push_back(s.at(side, i));
    }
  return {Sequent::of(std::move(aa), std::move(as)),
          Sequent::of(std::move(ba), std::move(bs))};
}

// One-node proof of a sequent closed by some axiom form.
inline ProofPtr any_axiom(const Sequent& s) {
  for (int i = 0; i < s.count(Side::Ant); ++i)
    for (int j = 0; j < s.count(Side::Suc); ++j)
      if (s.at(Side::Ant, i) == s.at(Side::Suc, j))
        return make_proof(s, RuleId::Axiom, {i, j});
  for (int j = 0; j < s.count(Side::Suc); ++j)
    if (s.at(Side::Suc, j).kind() == Conn::Top)
      return make_proof(s, RuleId::Axiom, {j});
  for (int i = 0; i < s.count(Side::Ant); ++i)
    if (s.at(Side::Ant, i).kind() == Conn::Bottom)
      return make_proof(s, RuleId::Axiom, {i});
  throw std::logic_error("no axiom closes '" + s.text() + "'");
}

inline void require_total(const Partition& part, const Sequent& end) {
  int n = end.count(Side::Ant) + end.count(Side::Suc);
  if (static_cast<int>(part.color.size()) != n)
    throw std::invalid_argument("partition not total over the end sequent");
  for (Side side : {Side::Ant, Side::Suc})
    for (int i = 0; i < end.count(side); ++i)
      if (!part.color.count({side, i}))
        throw std::invalid_argument("partition not total over the end sequent");
}

}  // namespace craig::detail

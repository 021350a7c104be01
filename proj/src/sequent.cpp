#include "craig/sequent.hpp"

#include <algorithm>
#include <stdexcept>

namespace craig {

Side opposite(Side s) { return s == Side::Ant ? Side::Suc : Side::Ant; }
const char* side_name(Side s) { return s == Side::Ant ? "ant" : "suc"; }

Sequent Sequent::of(std::vector<Formula> ant, std::vector<Formula> suc) {
  auto by_text = [](const Formula& a, const Formula& b) { return a < b; };
  std::stable_sort(ant.begin(), ant.end(), by_text);
  std::stable_sort(suc.begin(), suc.end(), by_text);
  Sequent s;
  s.ant_ = std::move(ant);
  s.suc_ = std::move(suc);
  return s;
}

const Formula& Sequent::at(Side s, int index) const {
  const auto& v = side(s);
  if (index < 0 || index >= static_cast<int>(v.size()))
    throw std::logic_error("sequent index out of range");
  return v[static_cast<std::size_t>(index)];
}

std::pair<Sequent, int> Sequent::inserted(Side s, const Formula& f) const {
  Sequent out = *this;
  auto& v = (s == Side::Ant) ? out.ant_ : out.suc_;
  auto it = std::upper_bound(v.begin(), v.end(), f,
                             [](const Formula& a, const Formula& b) { return a < b; });
  int index = static_cast<int>(it - v.begin());
  v.insert(it, f);
  return {std::move(out), index};
}

Sequent Sequent::removed(Side s, int index) const {
  const auto& v = side(s);
  if (index < 0 || index >= static_cast<int>(v.size()))
    throw std::logic_error("sequent index out of range");
  Sequent out = *this;
  auto& w = (s == Side::Ant) ? out.ant_ : out.suc_;
  w.erase(w.begin() + index);
  return out;
}

std::string Sequent::text() const {
  std::string out;
  for (std::size_t i = 0; i < ant_.size(); ++i) {
    if (i) out += ", ";
    out += ant_[i].text();
  }
  if (!ant_.empty()) out += " ";
  out += "=>";
  for (std::size_t i = 0; i < suc_.size(); ++i) {
    out += (i ? ", " : " ");
    out += suc_[i].text();
  }
  return out;
}

std::set<std::string> Sequent::atoms() const {
  std::set<std::string> out;
  for (const Formula& f : ant_) f.collect_atoms(out);
  for (const Formula& f : suc_) f.collect_atoms(out);
  return out;
}

std::string occ_label(const OccPath& p, const Sequent& s) {
  std::string path_text;
  for (std::size_t i = 0; i < p.path.size(); ++i) {
    if (i) path_text += ".";
    path_text += std::to_string(p.path[i]);
  }
  const Formula& leaf = subformula(s.at(p.side, p.index), p.path);
  return std::string(side_name(p.side)) + ":" + std::to_string(p.index) + ":" + path_text +
         ":" + leaf.text();
}

}  // namespace craig

#include "craig/absint.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <set>

namespace craig {

namespace {

// Point forwarding along step embeddings; identity pairs are skipped so
// contraction steps cannot loop the chase.
struct Fwd {
  std::map<int, int> next;

  void add(const Embedding& e) {
    for (auto& [u, v] : e.pairs)
      if (u != v) next[u] = v;
  }
  void add(const std::vector<Embedding>& es) {
    for (auto& e : es) add(e);
  }
  int resolve(int p) const {
    auto it = next.find(p);
    while (it != next.end()) {
      p = it->second;
      it = next.find(p);
    }
    return p;
  }
};

// One half under construction: the derivation, its evolving space, and a tag
// per entry tying it back to the source derivation's lineage.
struct Half {
  Derivation d;
  Space space;
  std::vector<int> tags;

  int pos(int tag) const {
    for (size_t i = 0; i < tags.size(); ++i)
      if (tags[i] == tag) return static_cast<int>(i);
    return -1;
  }
  int require_pos(int tag) const {
    int p = pos(tag);
    if (p < 0) throw std::logic_error("a half lost track of a lineage entry");
    return p;
  }
  void consume(std::vector<int> positions, int out_tag) {
    std::sort(positions.rbegin(), positions.rend());
    for (int p : positions) tags.erase(tags.begin() + p);
    tags.push_back(out_tag);
  }
};

int pick_index(const std::vector<int>& comp, int id, std::set<int>& used) {
  for (size_t i = 0; i < comp.size(); ++i)
    if (comp[i] == id && !used.count(static_cast<int>(i))) {
      used.insert(static_cast<int>(i));
      return static_cast<int>(i);
    }
  throw std::logic_error("argument set " + std::to_string(id) +
                         " is absent from the mirrored entry");
}

// Re-derives a recorded step's picks against this half's thinner entries:
// same argument ids, fresh component indices.
std::vector<std::vector<ArgPick>> refind_picks(
    const OpStep& st, const std::vector<int>& arg_ids,
    const std::vector<const StructuredSet*>& entries) {
  std::vector<std::vector<ArgPick>> picks(st.picks.size());
  size_t flat = 0;
  for (size_t h = 0; h < st.picks.size(); ++h) {
    std::set<int> used1, used2;
    for (auto& p : st.picks[h]) {
      int id = arg_ids.at(flat++);
      auto& used = p.comp == Comp::First ? used1 : used2;
      picks[h].push_back({p.comp, pick_index(entries[h]->comp(p.comp), id, used)});
    }
  }
  return picks;
}

OperatorSpec step_shape(const OpStep& st) {
  OperatorSpec op;
  op.name = st.op;
  op.arity = static_cast<int>(st.inputs.size());
  op.arg_counts = st.arg_counts;
  op.value_comp = st.value_comp;
  op.surjective = st.surjective;
  return op;
}

PointSet copy_of(const PointSet& s, IdAlloc& alloc,
                 std::vector<std::pair<int, int>>& iso) {
  if (s.plain()) {
    std::vector<int> pts;
    pts.reserve(s.points.size());
    for (int p : s.points) {
      int q = alloc.point_id();
      pts.push_back(q);
      iso.emplace_back(p, q);
    }
    std::sort(iso.begin(), iso.end());
    return plain_set(alloc.set_id(), std::move(pts));
  }
  PointSet c = tree_set(alloc.set_id(), s.shape->formula, alloc.next_point);
  for (auto& [path, pt] : s.shape->leaves) {
    int q = point_at(c, path);
    if (q < 0) throw std::logic_error("a copied set lost a leaf");
    iso.emplace_back(pt, q);
  }
  std::sort(iso.begin(), iso.end());
  return c;
}

std::vector<std::pair<int, int>> compose_pairs(
    const std::vector<std::pair<int, int>>& first,
    const std::vector<std::pair<int, int>>& second) {
  std::map<int, int> m(first.begin(), first.end());
  std::vector<std::pair<int, int>> out;
  for (auto& [u, v] : second) out.emplace_back(m.at(u), v);
  std::sort(out.begin(), out.end());
  return out;
}

Embedding identity_embedding(const PointSet& s) {
  Embedding e;
  e.source = e.target = s.id;
  for (int p : s.points) e.pairs.emplace_back(p, p);
  return e;
}

bool constant_tree(const PointSet& s) {
  if (s.plain()) return false;
  Conn k = s.shape->formula.kind();
  return k == Conn::Top || k == Conn::Bottom;
}

struct WitnessInfo {
  int src_id = -1, tgt_id = -1;  // embedding endpoints
  int x_id = -1, y_id = -1;      // first-component and second-component endpoint
};

WitnessInfo witness_info(const StructuredSet& sets, const Embedding& w,
                         bool bipartite) {
  auto holds = [](const std::vector<int>& v, int id) {
    return std::count(v.begin(), v.end(), id) > 0;
  };
  WitnessInfo out;
  out.src_id = w.source;
  out.tgt_id = w.target;
  if (bipartite && holds(sets.second, w.source) && holds(sets.first, w.target)) {
    out.x_id = w.target;
    out.y_id = w.source;
  } else {
    out.x_id = w.source;
    out.y_id = w.target;
  }
  return out;
}

// Per-lineage state for the one-sided lanes.
struct TagState {
  bool full = false;
  Part only = Part::A;  // single-colored lineages
  int iid = -1;         // interpolant set id of interpolant-carrying ones
  bool n = true;        // true: interpolant sits in the left half's second component
};

struct Builder {
  const Derivation& src;
  const RegularPairRegistry& reg;
  std::map<int, Part> colors;
  ReplayLog log;
  IdAlloc alloc;
  Half ha, hb;
  std::vector<int> otags;  // source-space simulation, one tag per entry
  int next_tag = 0;
  std::map<int, int> i_of;  // lineage tag -> interpolant set id
  Fwd fwd;
  std::vector<std::array<int, 3>> raw;  // interpolant / A-side / B-side point
  std::vector<std::pair<int, int>> iso_src;  // scratch from endpoint_copy

  Builder(const Derivation& d, const RegularPairRegistry& r)
      : src(d), reg(r), colors(chase_colors(d)), log(replay(d)), alloc(d.alloc) {
    if (d.final_space.size() != 1)
      throw std::invalid_argument("the derivation must end in a single structured set");
    ha.d.bipartite = hb.d.bipartite = d.bipartite;
  }

  Half& half(Part p) { return p == Part::A ? ha : hb; }
  Half& other(Part p) { return p == Part::A ? hb : ha; }
  const PointSet& source_set(int id) const { return set_at(src.table, id); }

  // The interpolant is the opposite side's contribution inside each half, and
  // the filler sets created around it follow suit.
  Part interp_color(const Half& h) const { return &h == &ha ? Part::B : Part::A; }

  void split_entry(const StructuredSet& sets, std::vector<PointSet>& af,
                   std::vector<PointSet>& as, std::vector<PointSet>& bf,
                   std::vector<PointSet>& bs) const {
    for (int id : sets.first)
      (colors.at(id) == Part::A ? af : bf).push_back(source_set(id));
    for (int id : sets.second)
      (colors.at(id) == Part::A ? as : bs).push_back(source_set(id));
  }

  std::optional<Part> uniform_color(const StructuredSet& sets) const {
    std::optional<Part> c;
    for (Comp comp : {Comp::First, Comp::Second})
      for (int id : sets.comp(comp)) {
        Part p = colors.at(id);
        if (!c) c = p;
        if (*c != p) return std::nullopt;
      }
    return c;
  }

  // Succedent ownership of a bipartite entry: true when its second component
  // (filler sets aside) is empty or colored B.
  bool n_shape_of(const StructuredSet& s) const {
    for (int id : s.second)
      if (!src.pads.count(id)) return colors.at(id) == Part::B;
    return true;
  }

  void one_sided_base(size_t idx, Part c, int tag) {
    auto& in = src.initial[idx];
    std::vector<PointSet> f, s;
    for (int id : in.sets.first) f.push_back(source_set(id));
    for (int id : in.sets.second) s.push_back(source_set(id));
    Half& h = half(c);
    push_initial(h.d, h.space, std::move(f), std::move(s), in.witness);
    h.tags.push_back(tag);
  }

  // One half's base entry around the interpolant. A missing witness is rebuilt
  // from the interpolant toward any opposite-component member, padding with an
  // empty set when that component has none.
  void base_entry(Half& h, std::vector<PointSet> firsts,
                  std::vector<PointSet> seconds, const PointSet& iset, Comp ic,
                  std::optional<Embedding> w, int tag) {
    (ic == Comp::First ? firsts : seconds).push_back(iset);
    if (!w) {
      auto& opp = ic == Comp::First ? seconds : firsts;
      if (opp.empty()) {
        PointSet pad = plain_set(alloc.set_id(), {});
        h.d.pads.insert(pad.id);
        opp.push_back(std::move(pad));
      }
      if (!iset.points.empty())
        throw std::logic_error("an interpolant-rooted witness needs a point-free set");
      w = Embedding{iset.id, opp.front().id, {}};
    }
    push_initial(h.d, h.space, std::move(firsts), std::move(seconds), *w);
    h.tags.push_back(tag);
  }

  // Copies the witness source as the interpolant of a mixed base and records
  // one trace seed per point, oriented by the endpoint colors.
  PointSet endpoint_copy(const InitialSet& in, const WitnessInfo& wi) {
    iso_src.clear();
    PointSet iset = copy_of(source_set(wi.src_id), alloc, iso_src);
    std::map<int, int> image(in.witness.pairs.begin(), in.witness.pairs.end());
    bool src_is_a = colors.at(wi.src_id) == Part::A;
    for (auto& [sp, ip] : iso_src) {
      int tp = image.at(sp);
      raw.push_back({ip, src_is_a ? sp : tp, src_is_a ? tp : sp});
    }
    return iset;
  }

  Embedding iso_witness(int src_id, int iset_id) const {
    return {src_id, iset_id, iso_src};
  }

  Embedding composed_witness(int iset_id, int tgt_id, const Embedding& w) const {
    return {iset_id, tgt_id, compose_pairs(iso_src, w.pairs)};
  }

  // Mirrors one recorded step into half h, consuming the given lineage tags.
  void mirror_step(Half& h, const OpStep& st, const std::vector<int>& arg_ids,
                   const std::vector<int>& in_tags, int out_tag) {
    std::vector<int> positions;
    std::vector<const StructuredSet*> entries;
    for (int t : in_tags) positions.push_back(h.require_pos(t));
    for (int p : positions) entries.push_back(&h.space[static_cast<size_t>(p)]);
    auto picks = refind_picks(st, arg_ids, entries);
    push_built(h.d, h.space, step_shape(st), positions, std::move(picks),
               source_set(st.value_id), st.arg_embeddings);
    h.consume(positions, out_tag);
    fwd.add(st.arg_embeddings);
  }

  // A regular pair's unary member applied to interpolant sets sitting in one
  // entry of h, around the shared prebuilt value.
  void tall_step(Half& h, const OperatorSpec& tall, int tag, Comp ic,
                 const std::vector<int>& iids, const BuiltValue& bv) {
    int p = h.require_pos(tag);
    std::set<int> used;
    std::vector<ArgPick> picks;
    for (int iid : iids)
      picks.push_back(
          {ic, pick_index(h.space[static_cast<size_t>(p)].comp(ic), iid, used)});
    push_built(h.d, h.space, tall, {p}, {std::move(picks)}, bv.value, bv.args);
    h.consume({p}, tag);
  }

  // The wide member across separate entries of h, one pick per entry. `comps`
  // names the component holding each entry's interpolant.
  void wide_step(Half& h, const OperatorSpec& wide, const std::vector<int>& in_tags,
                 const std::vector<Comp>& comps, const std::vector<int>& iids,
                 const BuiltValue& bv, int out_tag) {
    std::vector<int> positions;
    std::vector<std::vector<ArgPick>> picks;
    for (size_t j = 0; j < in_tags.size(); ++j) {
      int p = h.require_pos(in_tags[j]);
      positions.push_back(p);
      std::set<int> used;
      picks.push_back({{comps[j], pick_index(h.space[static_cast<size_t>(p)].comp(comps[j]),
                                             iids[j], used)}});
    }
    push_built(h.d, h.space, wide, positions, std::move(picks), bv.value, bv.args);
    h.consume(positions, out_tag);
  }

  // Moves a lineage's interpolant to the other component of both halves via
  // the negation-shaped pair. `a_comp` is its current component in the left
  // half; returns the new interpolant id.
  int flip(int tag, int iid, Comp a_comp) {
    auto& pr = reg.require(PairKey{1, {a_comp}, opposite(a_comp)});
    const PointSet& iset = set_at(ha.d.table, iid);
    BuiltValue bv = pr.wide.build({&iset}, alloc);
    tall_step(ha, pr.wide, tag, a_comp, {iid}, bv);
    tall_step(hb, pr.tall, tag, opposite(a_comp), {iid}, bv);
    fwd.add(bv.args);
    return bv.value.id;
  }

  AbstractInterpolation finish(Comp left_comp) {
    if (ha.space.size() != 1 || hb.space.size() != 1)
      throw std::logic_error("the halves did not close into single entries");
    int iid = i_of.at(otags.at(0));
    for (Half* hp : {&ha, &hb}) {
      Half& h = *hp;
      Part ip = interp_color(h);
      h.d.final_space = h.space;
      for (Comp c : {Comp::First, Comp::Second})
        for (int id : h.space[0].comp(c)) {
          if (id == iid || h.d.pads.count(id)) {
            h.d.final_colors[id] = ip;
            continue;
          }
          if (src.pads.count(id)) h.d.pads.insert(id);
          h.d.final_colors[id] = colors.at(id);
          auto oc = src.occurrences.find(id);
          if (oc != src.occurrences.end()) h.d.occurrences[id] = oc->second;
        }
      h.d.alloc = alloc;
      replay(h.d);
    }
    AbstractInterpolation out;
    out.interpolant = set_at(ha.d.table, iid);
    out.left_comp = left_comp;
    out.left = std::move(ha.d);
    out.right = std::move(hb.d);
    for (auto& [ip, ap, bp] : raw)
      out.traces.push_back({fwd.resolve(ip), fwd.resolve(ap), fwd.resolve(bp)});
    return out;
  }

  std::vector<int> step_in_tags(const OpStep& st) const {
    std::vector<int> tags;
    for (int idx : st.inputs) tags.push_back(otags.at(static_cast<size_t>(idx)));
    return tags;
  }
  void advance(const std::vector<int>& inputs, int out_tag) {
    std::vector<int> order = inputs;
    std::sort(order.rbegin(), order.rend());
    for (int idx : order) otags.erase(otags.begin() + static_cast<size_t>(idx));
    otags.push_back(out_tag);
  }
};

// ---------------------------------------------------------------------------
// Shared base dispatch. A constant endpoint keys the interpolant to its own
// color, same-colored endpoints give a closed interpolant, and mixed endpoints
// copy the witness source.

const PointSet* constant_anchor(const Builder& bx, const WitnessInfo& wi) {
  if (constant_tree(bx.source_set(wi.src_id))) return &bx.source_set(wi.src_id);
  if (constant_tree(bx.source_set(wi.tgt_id))) return &bx.source_set(wi.tgt_id);
  return nullptr;
}

// Places one interpolant-carrying base into both halves. `a_comp` is the
// interpolant's component in the left half; the original witness survives in a
// half only when both its endpoints live there.
void place_base(Builder& bx, size_t idx, const PointSet& iset, Comp a_comp,
                bool mixed, const WitnessInfo& wi, int tag) {
  auto& in = bx.src.initial[idx];
  std::vector<PointSet> af, as, bf, bs;
  bx.split_entry(in.sets, af, as, bf, bs);
  Part cs = bx.colors.at(wi.src_id), ct = bx.colors.at(wi.tgt_id);
  auto witness_for = [&](Part p) -> std::optional<Embedding> {
    if (mixed) {
      if (cs == p) return bx.iso_witness(wi.src_id, iset.id);
      return bx.composed_witness(iset.id, wi.tgt_id, in.witness);
    }
    if (cs == p && ct == p) return in.witness;
    return std::nullopt;
  };
  bx.base_entry(bx.ha, std::move(af), std::move(as), iset, a_comp,
                witness_for(Part::A), tag);
  bx.base_entry(bx.hb, std::move(bf), std::move(bs), iset, opposite(a_comp),
                witness_for(Part::B), tag);
}

// ---------------------------------------------------------------------------
// Component lane: every initial entry contributes an interpolant set, joins
// combine them through registered pairs, and the final interpolant lands in
// the left half's second component.

void component_base(Builder& bx, size_t idx, std::vector<int>& pending_flips) {
  int tag = bx.next_tag++;
  bx.otags.push_back(tag);
  auto& in = bx.src.initial[idx];
  WitnessInfo wi = witness_info(in.sets, in.witness, true);

  if (const PointSet* anchor = constant_anchor(bx, wi)) {
    Formula f = bx.colors.at(anchor->id) == Part::A ? Formula::bottom()
                                                    : Formula::top();
    PointSet iset = tree_set(bx.alloc.set_id(), f, bx.alloc.next_point);
    place_base(bx, idx, iset, Comp::Second, false, wi, tag);
    bx.i_of[tag] = iset.id;
    return;
  }
  Part cx = bx.colors.at(wi.x_id), cy = bx.colors.at(wi.y_id);
  if (cx == cy) {
    Formula f = cx == Part::A ? Formula::bottom() : Formula::top();
    PointSet iset = tree_set(bx.alloc.set_id(), f, bx.alloc.next_point);
    place_base(bx, idx, iset, Comp::Second, false, wi, tag);
    bx.i_of[tag] = iset.id;
    return;
  }
  PointSet iset = bx.endpoint_copy(in, wi);
  Comp a_comp = cx == Part::A ? Comp::Second : Comp::First;
  place_base(bx, idx, iset, a_comp, true, wi, tag);
  bx.i_of[tag] = iset.id;
  if (a_comp == Comp::First) pending_flips.push_back(tag);
}

void component_steps(Builder& bx, const std::vector<int>& pending_flips) {
  for (int tag : pending_flips)
    bx.i_of[tag] = bx.flip(tag, bx.i_of.at(tag), Comp::First);
  for (size_t k = 0; k < bx.src.steps.size(); ++k) {
    if (auto* adj = std::get_if<AdjoinStep>(&bx.src.steps[k])) {
      int tin = bx.otags.at(static_cast<size_t>(adj->input));
      int tout = bx.next_tag++;
      Part c = bx.colors.at(adj->set_id);
      Half& h = bx.half(c);
      Half& o = bx.other(c);
      int p = h.require_pos(tin);
      push_adjoin(h.d, h.space, p, adj->comp, bx.source_set(adj->set_id));
      h.consume({p}, tout);
      o.tags[static_cast<size_t>(o.require_pos(tin))] = tout;
      bx.i_of[tout] = bx.i_of.at(tin);
      bx.advance({adj->input}, tout);
      continue;
    }
    auto& st = std::get<OpStep>(bx.src.steps[k]);
    std::vector<int> in_tags = bx.step_in_tags(st);
    int tout = bx.next_tag++;
    Part c = bx.colors.at(st.value_id);
    Half& h = bx.half(c);
    Half& o = bx.other(c);
    bx.mirror_step(h, st, bx.log.steps[k].arg_ids, in_tags, tout);
    if (in_tags.size() == 1) {
      o.tags[static_cast<size_t>(o.require_pos(in_tags[0]))] = tout;
      bx.i_of[tout] = bx.i_of.at(in_tags[0]);
    } else {
      Comp x = c == Part::A ? Comp::First : Comp::Second;
      auto& pr = bx.reg.require(PairKey{static_cast<int>(in_tags.size()),
                                        std::vector<Comp>(in_tags.size(), x), x});
      std::vector<int> iids;
      std::vector<const PointSet*> iargs;
      for (int t : in_tags) iids.push_back(bx.i_of.at(t));
      for (int iid : iids) iargs.push_back(&set_at(h.d.table, iid));
      BuiltValue bv = pr.wide.build(iargs, bx.alloc);
      bx.tall_step(h, pr.tall, tout, opposite(x), iids, bv);
      bx.wide_step(o, pr.wide, in_tags, std::vector<Comp>(in_tags.size(), x), iids,
                   bv, tout);
      bx.fwd.add(bv.args);
      bx.i_of[tout] = bv.value.id;
    }
    bx.advance(st.inputs, tout);
  }
}

// ---------------------------------------------------------------------------
// Restricted lane: second components hold copies of one set, single-colored
// lineages stay whole in their own half, and interpolants appear only where
// the coloring mixes.

void check_restricted(const Builder& bx) {
  auto check_entry = [&](const StructuredSet& s) {
    const PointSet* rep = nullptr;
    std::optional<Part> c;
    for (int id : s.second) {
      if (bx.src.pads.count(id)) continue;
      const PointSet& m = bx.source_set(id);
      if (!rep) {
        rep = &m;
        c = bx.colors.at(id);
        continue;
      }
      if (!copy_equivalent(m, *rep))
        throw NotRestricted(
            "a second component holds two sets that are not copies of one shape");
      if (bx.colors.at(id) != *c)
        throw HypothesisViolated(
            "second-component copies straddle the two sides of the coloring");
    }
  };
  for (auto& in : bx.src.initial) check_entry(in.sets);
  for (auto& rs : bx.log.steps) check_entry(rs.output);
}

// The three interpolant shapes a two-interpolant join can take, written from
// the host half (the one receiving the mirrored step). `hcomp` components are
// host-local; the guest holds every interpolant in the opposite component.
// `value_tags` orders the built value's arguments, which can differ from the
// premise order the mirrored step wants.

int same_shape_merge(Builder& bx, Half& host, Half& guest, const OpStep& st,
                     const std::vector<int>& arg_ids,
                     const std::vector<int>& mirror_tags,
                     const std::array<int, 2>& value_tags,
                     const std::array<int, 2>& value_iids, Comp hcomp, int tout) {
  auto& pr = bx.reg.require(
      PairKey{2, {opposite(hcomp), opposite(hcomp)}, opposite(hcomp)});
  const PointSet& s1 = set_at(host.d.table, value_iids[0]);
  const PointSet& s2 = set_at(host.d.table, value_iids[1]);
  BuiltValue bv = pr.wide.build({&s1, &s2}, bx.alloc);
  std::vector<std::pair<int, int>> scratch;
  PointSet aux2 = copy_of(s2, bx.alloc, scratch);
  scratch.clear();
  PointSet aux1 = copy_of(s1, bx.alloc, scratch);
  OperatorSpec keep_left = derive_operator(pr.tall, 1, {{0, 1, hcomp, aux2}});
  OperatorSpec keep_right = derive_operator(pr.tall, 1, {{0, 0, hcomp, aux1}});
  bx.tall_step(host, keep_left, value_tags[0], hcomp, {value_iids[0]},
               BuiltValue{bv.value, {bv.args[0]}});
  bx.tall_step(host, keep_right, value_tags[1], hcomp, {value_iids[1]},
               BuiltValue{bv.value, {bv.args[1]}});
  bx.mirror_step(host, st, arg_ids, mirror_tags, tout);
  OperatorSpec contr = bx.reg.contraction(hcomp, 2);
  Embedding idv = identity_embedding(bv.value);
  bx.tall_step(host, contr, tout, hcomp, {bv.value.id, bv.value.id},
               BuiltValue{bv.value, {idv, idv}});
  bx.wide_step(guest, pr.wide, {value_tags[0], value_tags[1]},
               {opposite(hcomp), opposite(hcomp)},
               {value_iids[0], value_iids[1]}, bv, tout);
  bx.fwd.add(bv.args);
  return bv.value.id;
}

int implication_merge(Builder& bx, Half& host, Half& guest, const OpStep& st,
                      const std::vector<int>& arg_ids,
                      const std::vector<int>& in_tags, int ta, int ts, int ia,
                      int is, int tout) {
  auto& pr = bx.reg.require(PairKey{2, {Comp::Second, Comp::First}, Comp::First});
  const PointSet& sa = set_at(host.d.table, ia);
  const PointSet& ss = set_at(host.d.table, is);
  BuiltValue bv = pr.wide.build({&sa, &ss}, bx.alloc);
  bx.mirror_step(host, st, arg_ids, in_tags, tout);
  int p = host.require_pos(tout);
  std::set<int> u1, u2;
  std::vector<ArgPick> picks;
  picks.push_back(
      {Comp::First, pick_index(host.space[static_cast<size_t>(p)].first, ia, u1)});
  picks.push_back(
      {Comp::Second, pick_index(host.space[static_cast<size_t>(p)].second, is, u2)});
  push_built(host.d, host.space, pr.tall, {p}, {std::move(picks)}, bv.value,
             bv.args);
  host.consume({p}, tout);
  bx.wide_step(guest, pr.wide, {ta, ts}, {Comp::Second, Comp::First}, {ia, is}, bv,
               tout);
  bx.fwd.add(bv.args);
  return bv.value.id;
}

int guarded_merge(Builder& bx, Half& host, Half& guest, const OpStep& st,
                  const std::vector<int>& arg_ids, const std::vector<int>& in_tags,
                  int ta, int ts, int ia, int is, int tout) {
  auto& fp = bx.reg.require(PairKey{1, {Comp::Second}, Comp::First});
  const PointSet& ss = set_at(host.d.table, is);
  BuiltValue nvb = fp.wide.build({&ss}, bx.alloc);
  bx.tall_step(host, fp.wide, ts, Comp::Second, {is}, nvb);
  bx.tall_step(guest, fp.tall, ts, Comp::First, {is}, nvb);
  bx.fwd.add(nvb.args);
  return same_shape_merge(bx, host, guest, st, arg_ids, in_tags, {ta, ts},
                          {ia, nvb.value.id}, Comp::First, tout);
}

void restricted_base(Builder& bx, size_t idx, std::map<int, TagState>& state) {
  int tag = bx.next_tag++;
  bx.otags.push_back(tag);
  auto& in = bx.src.initial[idx];
  if (auto c = bx.uniform_color(in.sets)) {
    bx.one_sided_base(idx, *c, tag);
    state[tag] = TagState{false, *c, -1, true};
    return;
  }
  WitnessInfo wi = witness_info(in.sets, in.witness, true);
  bool n = bx.n_shape_of(in.sets);
  Comp a_comp = n ? Comp::Second : Comp::First;
  int iid;
  if (const PointSet* anchor = constant_anchor(bx, wi)) {
    bool host_a = bx.colors.at(anchor->id) == Part::A;
    Formula f = host_a == n ? Formula::bottom() : Formula::top();
    PointSet iset = tree_set(bx.alloc.set_id(), f, bx.alloc.next_point);
    place_base(bx, idx, iset, a_comp, false, wi, tag);
    iid = iset.id;
  } else if (bx.colors.at(wi.src_id) == bx.colors.at(wi.tgt_id)) {
    PointSet iset = tree_set(bx.alloc.set_id(), Formula::top(), bx.alloc.next_point);
    place_base(bx, idx, iset, a_comp, false, wi, tag);
    iid = iset.id;
  } else {
    PointSet iset = bx.endpoint_copy(in, wi);
    place_base(bx, idx, iset, a_comp, true, wi, tag);
    iid = iset.id;
  }
  state[tag] = TagState{true, Part::A, iid, n};
}

void restricted_steps(Builder& bx, std::map<int, TagState>& state) {
  for (size_t k = 0; k < bx.src.steps.size(); ++k) {
    if (auto* adj = std::get_if<AdjoinStep>(&bx.src.steps[k])) {
      int tin = bx.otags.at(static_cast<size_t>(adj->input));
      int tout = bx.next_tag++;
      TagState s = state.at(tin);
      Part c = bx.colors.at(adj->set_id);
      if (!s.full && s.only != c)
        throw std::logic_error("an adjoined set straddles a single-colored lineage");
      Half& h = bx.half(c);
      int p = h.require_pos(tin);
      push_adjoin(h.d, h.space, p, adj->comp, bx.source_set(adj->set_id));
      h.consume({p}, tout);
      if (s.full) {
        Half& o = bx.other(c);
        o.tags[static_cast<size_t>(o.require_pos(tin))] = tout;
      }
      state[tout] = s;
      bx.advance({adj->input}, tout);
      continue;
    }
    auto& st = std::get<OpStep>(bx.src.steps[k]);
    const auto& arg_ids = bx.log.steps[k].arg_ids;
    std::vector<int> in_tags = bx.step_in_tags(st);
    int tout = bx.next_tag++;
    Part c = bx.colors.at(st.value_id);
    std::vector<int> fulls;
    for (int t : in_tags) {
      const TagState& s = state.at(t);
      if (s.full)
        fulls.push_back(t);
      else if (s.only != c)
        throw std::logic_error("a joined entry straddles a single-colored lineage");
    }
    bool n_out = bx.n_shape_of(bx.log.steps[k].output);

    if (fulls.empty()) {
      bx.mirror_step(bx.half(c), st, arg_ids, in_tags, tout);
      state[tout] = TagState{false, c, -1, true};
      bx.advance(st.inputs, tout);
      continue;
    }
    if (fulls.size() == 1) {
      TagState prev = state.at(fulls[0]);
      Half& h = bx.half(c);
      Half& o = bx.other(c);
      bx.mirror_step(h, st, arg_ids, in_tags, tout);
      o.tags[static_cast<size_t>(o.require_pos(fulls[0]))] = tout;
      int iid = prev.iid;
      if (n_out != prev.n)
        iid = bx.flip(tout, iid, prev.n ? Comp::Second : Comp::First);
      state[tout] = TagState{true, Part::A, iid, n_out};
      bx.advance(st.inputs, tout);
      continue;
    }
    if (in_tags.size() != 2)
      throw std::logic_error(
          "joins of more than two interpolant-carrying entries are outside the "
          "restricted fragment");

    TagState s1 = state.at(in_tags[0]), s2 = state.at(in_tags[1]);
    Half& host = bx.half(c);
    Half& guest = bx.other(c);
    bool host_is_a = c == Part::A;
    auto at_suc = [&](bool n) { return host_is_a ? n : !n; };
    bool at1 = at_suc(s1.n), at2 = at_suc(s2.n);
    bool q = at_suc(n_out);

    int out_iid;
    if (at1 == at2) {
      if (at1 != q)
        throw std::logic_error("the joined shapes disagree with the output shape");
      Comp hcomp = at1 ? Comp::Second : Comp::First;
      out_iid = same_shape_merge(bx, host, guest, st, arg_ids, in_tags,
                                 {in_tags[0], in_tags[1]}, {s1.iid, s2.iid},
                                 hcomp, tout);
    } else {
      int ta = at1 ? in_tags[1] : in_tags[0];
      int ts = at1 ? in_tags[0] : in_tags[1];
      int ia = state.at(ta).iid, is = state.at(ts).iid;
      out_iid = q ? implication_merge(bx, host, guest, st, arg_ids, in_tags, ta,
                                      ts, ia, is, tout)
                  : guarded_merge(bx, host, guest, st, arg_ids, in_tags, ta, ts,
                                  ia, is, tout);
    }
    state[tout] = TagState{true, Part::A, out_iid, n_out};
    bx.advance(st.inputs, tout);
  }
}

}  // namespace

AbstractInterpolation interpolate_derivation(const Derivation& d,
                                             const RegularPairRegistry& reg) {
  if (!d.bipartite)
    throw std::invalid_argument(
        "collection derivations interpolate through interpolate_sets");
  Builder bx(d, reg);
  std::vector<int> pending_flips;
  for (size_t i = 0; i < d.initial.size(); ++i)
    component_base(bx, i, pending_flips);
  component_steps(bx, pending_flips);
  return bx.finish(Comp::Second);
}

AbstractInterpolation interpolate_restricted(const Derivation& d,
                                             const RegularPairRegistry& reg) {
  if (!d.bipartite)
    throw std::invalid_argument(
        "collection derivations interpolate through interpolate_sets");
  Builder bx(d, reg);
  check_restricted(bx);
  std::map<int, TagState> state;
  for (size_t i = 0; i < d.initial.size(); ++i) restricted_base(bx, i, state);
  restricted_steps(bx, state);
  int ftag = bx.otags.at(0);
  TagState end = state.at(ftag);
  if (end.full) {
    bx.i_of[ftag] = end.iid;
    return bx.finish(end.n ? Comp::Second : Comp::First);
  }
  if (end.only == Part::B) {
    PointSet top = tree_set(bx.alloc.set_id(), Formula::top(), bx.alloc.next_point);
    int p = bx.hb.require_pos(ftag);
    push_adjoin(bx.hb.d, bx.hb.space, p, Comp::First, top);
    bx.hb.consume({p}, ftag);
    PointSet pad = plain_set(bx.alloc.set_id(), {});
    bx.ha.d.pads.insert(pad.id);
    push_initial(bx.ha.d, bx.ha.space, {pad}, {top}, Embedding{top.id, pad.id, {}});
    bx.ha.tags.push_back(ftag);
    bx.i_of[ftag] = top.id;
    return bx.finish(Comp::Second);
  }
  auto& pr = bx.reg.require(PairKey{1, {Comp::First}, Comp::Second});
  PointSet t1 = tree_set(bx.alloc.set_id(), Formula::top(), bx.alloc.next_point);
  BuiltValue bv = pr.wide.build({&t1}, bx.alloc);
  int p = bx.ha.require_pos(ftag);
  push_adjoin(bx.ha.d, bx.ha.space, p, Comp::First, t1);
  bx.ha.consume({p}, ftag);
  bx.tall_step(bx.ha, pr.wide, ftag, Comp::First, {t1.id}, bv);
  PointSet t2 = tree_set(bx.alloc.set_id(), Formula::top(), bx.alloc.next_point);
  PointSet pad = plain_set(bx.alloc.set_id(), {});
  bx.hb.d.pads.insert(pad.id);
  push_initial(bx.hb.d, bx.hb.space, {pad}, {t2}, Embedding{t2.id, pad.id, {}});
  bx.hb.tags.push_back(ftag);
  bx.tall_step(bx.hb, pr.tall, ftag, Comp::Second, {t2.id},
               BuiltValue{bv.value, {Embedding{t2.id, bv.value.id, {}}}});
  bx.i_of[ftag] = bv.value.id;
  return bx.finish(Comp::Second);
}

AbstractInterpolation interpolate_sets(const Derivation& d,
                                       const RegularPairRegistry& reg) {
  if (d.bipartite)
    throw std::invalid_argument(
        "bipartite derivations interpolate through the component lanes");
  Builder bx(d, reg);
  std::map<int, Part> side;  // single-colored lineages
  for (size_t i = 0; i < d.initial.size(); ++i) {
    int tag = bx.next_tag++;
    bx.otags.push_back(tag);
    auto& in = d.initial[i];
    if (auto c = bx.uniform_color(in.sets)) {
      bx.one_sided_base(i, *c, tag);
      side[tag] = *c;
      continue;
    }
    std::vector<PointSet> am, as_unused, bm, bs_unused;
    bx.split_entry(in.sets, am, as_unused, bm, bs_unused);
    WitnessInfo wi = witness_info(in.sets, in.witness, false);
    Part cs = bx.colors.at(wi.src_id), ct = bx.colors.at(wi.tgt_id);
    PointSet iset = cs == ct ? plain_set(bx.alloc.set_id(), {})
                             : bx.endpoint_copy(in, wi);
    for (Part part : {Part::A, Part::B}) {
      Half& h = bx.half(part);
      std::vector<PointSet>& members = part == Part::A ? am : bm;
      Embedding w;
      if (cs == part && ct == part)
        w = in.witness;
      else if (cs == ct)
        w = Embedding{iset.id, members.front().id, {}};
      else if (cs == part)
        w = bx.iso_witness(wi.src_id, iset.id);
      else
        w = bx.composed_witness(iset.id, wi.tgt_id, in.witness);
      members.push_back(iset);
      push_initial(h.d, h.space, std::move(members), {}, w);
      h.tags.push_back(tag);
    }
    bx.i_of[tag] = iset.id;
  }
  for (size_t k = 0; k < d.steps.size(); ++k) {
    if (auto* adj = std::get_if<AdjoinStep>(&d.steps[k])) {
      int tin = bx.otags.at(static_cast<size_t>(adj->input));
      int tout = bx.next_tag++;
      Part c = bx.colors.at(adj->set_id);
      auto sit = side.find(tin);
      if (sit != side.end() && sit->second != c)
        throw std::logic_error("an adjoined set straddles a single-colored lineage");
      Half& h = bx.half(c);
      int p = h.require_pos(tin);
      push_adjoin(h.d, h.space, p, adj->comp, bx.source_set(adj->set_id));
      h.consume({p}, tout);
      if (sit == side.end()) {
        Half& o = bx.other(c);
        o.tags[static_cast<size_t>(o.require_pos(tin))] = tout;
        bx.i_of[tout] = bx.i_of.at(tin);
      } else {
        side[tout] = c;
      }
      bx.advance({adj->input}, tout);
      continue;
    }
    auto& st = std::get<OpStep>(d.steps[k]);
    std::vector<int> in_tags = bx.step_in_tags(st);
    int tout = bx.next_tag++;
    Part c = bx.colors.at(st.value_id);
    std::vector<int> carriers;
    for (int t : in_tags) {
      auto sit = side.find(t);
      if (sit == side.end())
        carriers.push_back(t);
      else if (sit->second != c)
        throw std::logic_error("a joined entry straddles a single-colored lineage");
    }
    Half& h = bx.half(c);
    Half& o = bx.other(c);
    bx.mirror_step(h, st, bx.log.steps[k].arg_ids, in_tags, tout);
    if (carriers.empty()) {
      side[tout] = c;
    } else if (carriers.size() == 1) {
      o.tags[static_cast<size_t>(o.require_pos(carriers[0]))] = tout;
      bx.i_of[tout] = bx.i_of.at(carriers[0]);
    } else {
      int m = static_cast<int>(carriers.size());
      auto& hpr = bx.reg.require(
          PairKey{m, std::vector<Comp>(carriers.size(), Comp::Second), Comp::Second});
      auto& gpr = bx.reg.require(
          PairKey{m, std::vector<Comp>(carriers.size(), Comp::First), Comp::First});
      std::vector<int> iids;
      std::vector<const PointSet*> iargs;
      for (int t : carriers) iids.push_back(bx.i_of.at(t));
      for (int iid : iids) iargs.push_back(&set_at(h.d.table, iid));
      BuiltValue bv = gpr.wide.build(iargs, bx.alloc);
      bx.tall_step(h, hpr.tall, tout, Comp::First, iids, bv);
      bx.wide_step(o, gpr.wide, carriers,
                   std::vector<Comp>(carriers.size(), Comp::First), iids, bv, tout);
      bx.fwd.add(bv.args);
      bx.i_of[tout] = bv.value.id;
    }
    bx.advance(st.inputs, tout);
  }
  int ftag = bx.otags.at(0);
  if (!bx.i_of.count(ftag)) {
    Part c = side.at(ftag);
    PointSet iset = plain_set(bx.alloc.set_id(), {});
    Half& h = bx.half(c);
    int p = h.require_pos(ftag);
    push_adjoin(h.d, h.space, p, Comp::First, iset);
    h.consume({p}, ftag);
    Half& o = bx.other(c);
    PointSet pad = plain_set(bx.alloc.set_id(), {});
    o.d.pads.insert(pad.id);
    push_initial(o.d, o.space, {iset, pad}, {}, Embedding{iset.id, pad.id, {}});
    o.tags.push_back(ftag);
    bx.i_of[ftag] = iset.id;
  }
  return bx.finish(Comp::First);
}

}  // namespace craig

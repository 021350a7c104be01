#pragma once

#include "craig/derivation.hpp"

namespace craig {

// One interpolant point with its images in the two end components, read off
// the composed step embeddings.
struct PointTrace {
  int point = -1;
  int a_point = -1;
  int b_point = -1;
  bool operator==(const PointTrace&) const = default;
  auto operator<=>(const PointTrace&) const = default;
};

// An interpolant set plus the two half derivations built around it. `left`
// ends in the A-colored material with the interpolant in `left_comp`; `right`
// ends in the B-colored material with the interpolant in the opposite
// component. Both halves replay on their own, share the interpolant set id,
// and carry ancestry colors for every final set.
struct AbstractInterpolation {
  PointSet interpolant;
  Comp left_comp = Comp::Second;
  Derivation left;
  Derivation right;
  std::vector<PointTrace> traces;
};

struct NotRestricted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HypothesisViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreconditionViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Splits a bipartite derivation of a single structured set along its ancestry
// coloring. Every initial entry contributes an interpolant set, every join is
// matched by a registered regular pair, and the final interpolant lands in the
// left half's second component. Throws RegistryGap when a needed pair or the
// contraction family is missing, NonReplayableDerivation when the input does
// not replay, and std::invalid_argument for non-bipartite input or a final
// space with more than one entry.
AbstractInterpolation interpolate_derivation(const Derivation& d,
                                             const RegularPairRegistry& reg);

// Variant for derivations whose second components only ever hold copies of a
// single set. Entries on one side of the coloring stay whole in their own
// half; the interpolant may come out in either component of the left half,
// reported through `left_comp`. Throws NotRestricted when some second
// component mixes distinct shapes and HypothesisViolated when its copies
// straddle the coloring.
AbstractInterpolation interpolate_restricted(const Derivation& d,
                                             const RegularPairRegistry& reg);

// Collection form: the derivation must not be bipartite, components play no
// role, and both halves end as plain collections around the shared
// interpolant set.
AbstractInterpolation interpolate_sets(const Derivation& d,
                                       const RegularPairRegistry& reg);

// For a point-free interpolant, shrinks the derivation until one side of the
// coloring justifies everything, then extracts that side's sub-derivation.
// Requires every initial witness to carry at least one point pair; throws
// PreconditionViolated otherwise or when the interpolant has points.
Derivation empty_interpolant_simplify(const Derivation& d,
                                      const AbstractInterpolation& result);

}  // namespace craig

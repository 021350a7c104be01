#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "craig/builders.hpp"
#include "craig/proof.hpp"

namespace craig {

enum class Part : std::uint8_t { A, B };

const char* part_name(Part p);  // "A" / "B"

// Total coloring of the end-sequent occurrences into the two halves of an
// interpolation problem.
struct Partition {
  std::map<OccRef, Part> color;
};

// One interpolant atom together with the end-sequent atoms it connects.
struct Trace {
  std::vector<int> interpolant_path;
  OccPath a_end;
  OccPath b_end;
  bool operator==(const Trace&) const = default;
};

// Interpolant plus the two component proofs witnessing it: `left` ends in
// the A-part with the interpolant appended to its succedent, `right` ends in
// the B-part with the interpolant prefixed to its antecedent.
struct InterpolationCertificate {
  Formula interpolant;
  ProofPtr left;
  ProofPtr right;
  std::vector<Trace> traces;
};

// Splits a checked classical proof along the given coloring. Throws
// std::invalid_argument if the coloring is not total on the end sequent.
InterpolationCertificate interpolate_lk(const ProofPtr& p, const Partition& part);

// Single-succedent variant: the coloring must place every succedent
// occurrence in the B-part, and the proof must satisfy the single-succedent
// discipline. Both component proofs stay within that discipline.
InterpolationCertificate interpolate_lj(const ProofPtr& p, const Partition& part);

using Language = std::set<std::string>;

struct NoReplacementAvailable : std::runtime_error {
  NoReplacementAvailable();
};

struct TraceUnavailable : std::runtime_error {
  TraceUnavailable();
};

// Rewrites constant leaves of the interpolant over the given atom pool
// (false becomes q & ~q, true becomes q -> q for the least atom q) and
// re-proves both components classically. Certificates without constants pass
// through unchanged; otherwise an empty pool raises NoReplacementAvailable.
InterpolationCertificate normalize_constants(const InterpolationCertificate& cert,
                                             const Language& lang);

// Recomputes the atom connections for a weakening-free classical proof.
// Raises TraceUnavailable when the proof contains a weakening step.
std::vector<Trace> trace_atoms(const InterpolationCertificate& cert,
                               const ProofPtr& p, const Partition& part);

}  // namespace craig

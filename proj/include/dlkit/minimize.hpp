// ============================================================================
//  minimize.hpp -- minimal bisimilar companions: quotient minimization and
//  the counting-aware constructions over partial tree-unravellings
// ============================================================================
#pragma once

#include <cstddef>
#include <string>

#include "dlkit/model.hpp"

namespace dlkit {

// The three companion flavors.
//
//   AlcGlobal  factor by the largest auto-bisimulation; one element per
//              bisimilarity class.
//   Alcqu1     preserves per-element successor counts within every
//              bisimilarity class: for each class the largest group of
//              same-role successors of a common predecessor survives and
//              everything else is redirected into it.
//   Alcqu      additionally preserves the global number of elements of
//              every class. The only difference to Alcqu1 is that root
//              elements of the unravelling count as one group per class
//              instead of one group each, so on finite inputs the output
//              keeps one element per input element and only rewires edges.
enum class CompanionKind { AlcGlobal, Alcqu1, Alcqu };

// "alc-global", "alcqu1", "alcqu".
const char* to_string(CompanionKind kind);
CompanionKind companion_kind_from_string(const std::string& text);

// Smallest interpretation globally related to I under the kind's relation:
// plain global bisimilarity for AlcGlobal, counting bisimilarity with
// existential reach for Alcqu1, counting with global class cardinalities
// for Alcqu. Output elements are named after input elements (the last
// letter of the surviving unravelling path; the class representative for
// AlcGlobal) and carry a provenance note. The counting kinds reject
// interpretations with individuals (std::invalid_argument) and raise
// ResourceError when the partial unravelling exceeds cap elements.
Interpretation minimal_companion(const Interpretation& I, CompanionKind kind,
                                 std::size_t cap = kSizeCap);

}  // namespace dlkit

// ============================================================================
//  characteristic.hpp -- characteristic concepts of pointed and whole finite
//  interpretations, round-trip validation against the level systems, and
//  minimal tree models of EL characteristic concepts
// ============================================================================
#pragma once

#include <cstdint>
#include <vector>

#include "dlkit/model.hpp"
#include "dlkit/syntax.hpp"

namespace dlkit {

// ── Requests ─────────────────────────────────────────────────────────────────

// Concept language the characteristic is written in. Alcq produces counting
// quantifiers capped at kappa; ElNeg produces an EL concept conjoined with
// negated EL concepts.
enum class CharDialect { Alc, Alci, Alcq, El, ElNeg };

// Pointed characterizes one element; the Global* scopes characterize the
// whole interpretation with universal-role quantifiers. Each global scope is
// tied to one dialect: GlobalAlcu/Alc, GlobalAlciu/Alci, GlobalAlcqu and
// GlobalAlcqu1/Alcq, GlobalEluneg/ElNeg. GlobalAlcqu grades the universal
// role; GlobalAlcqu1 and GlobalEluneg quantify it plainly.
enum class CharScope {
  Pointed,
  GlobalAlcu,
  GlobalAlciu,
  GlobalAlcqu,
  GlobalAlcqu1,
  GlobalEluneg,
};

struct CharRequest {
  CharDialect dialect = CharDialect::Alc;
  CharScope scope = CharScope::Pointed;
  int level = 0;       // number of refinement rounds the concept captures
  uint32_t kappa = 0;  // count cap; required >= 1 for Alcq
  Signature sig;       // symbols the concept may mention
};

// Levels beyond this raise ResourceError: concept size can grow
// exponentially with the level, so runaway requests fail fast.
inline constexpr int kCharLevelCap = 6;

// ── Operations ───────────────────────────────────────────────────────────────

// The characteristic concept of (I, element) (scope Pointed, element
// required) or of I as a whole (global scopes, element omitted). The point
// always satisfies its own characteristic; a target element satisfies it
// exactly when it is level-n related to the point under the matching
// relation kind. Labels, roles, and individuals outside req.sig are
// invisible; individual names assigned in I enter as nominal atoms. Throws
// std::invalid_argument on dialect/scope mismatch, a missing or superfluous
// element, or kappa = 0 with Alcq; ResourceError past kCharLevelCap.
ConceptPtr characteristic(const CharRequest& req, const Interpretation& I,
                          int element = -1);

// Evaluates characteristic(req, I, element) over H and compares, per target
// element, membership in the extension with level-n relatedness under the
// kind matching req.dialect (Alc/alc-bisim, Alci/alci-bisim,
// Alcq/alcq-bisim, El/el-sim, ElNeg/equi-sim). Pointed scope only. A sound
// builder returns all-true.
std::vector<bool> char_round_trip_check(const CharRequest& req,
                                        const Interpretation& I, int element,
                                        const Interpretation& H);

// Smallest tree model of an EL characteristic concept: one element per
// nested conjunct, root first, edges from each node to the roots of its
// existential subtrees. The root satisfies X. Throws std::invalid_argument
// if X is not a pure EL concept (only conjunction, plain direct existential
// restrictions, concept names, and top).
PointedInterpretation el_minimal_model(ConceptPtr X, const Signature& sig);

}  // namespace dlkit

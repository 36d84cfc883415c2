// ============================================================================
//  games.hpp -- simulation and bisimulation relations between finite
//  interpretations: greatest fixpoints, stratified level systems, global
//  variants, and distinguishing-concept extraction
// ============================================================================
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dlkit/model.hpp"
#include "dlkit/syntax.hpp"

namespace dlkit {

// ── Relation kinds ───────────────────────────────────────────────────────────

// The five relation families. AlcBisim matches atoms and closes under forth
// and back moves along direct edges; AlciBisim additionally moves along
// inverse edges; AlcqBisim compares successor counts per equivalence class;
// ElSim demands label containment and forth moves only (directional); EquiSim
// is mutual ElSim. Individual names act as additional atoms throughout.
enum class RelationKind { AlcBisim, AlciBisim, AlcqBisim, ElSim, EquiSim };

// "alc-bisim", "alci-bisim", "alcq-bisim", "el-sim", "equi-sim".
const char* to_string(RelationKind kind);
RelationKind relation_kind_from_string(const std::string& text);

// ── RelationTable ────────────────────────────────────────────────────────────
//
// The computed relation between a source and a target interpretation, one
// pair set per refinement level. Pairs hold element indices (source index,
// target index) and are sorted by the corresponding id strings. Levels only
// ever shrink; a table produced by greatest_relation is refined until stable
// and flags the last set as the fixpoint.
struct RelationTable {
  RelationKind kind = RelationKind::AlcBisim;
  uint32_t kappa = 0;  // successor-count cap; 0 compares exact counts
  bool fixpoint = false;
  std::vector<std::string> source_ids;
  std::vector<std::string> target_ids;
  std::vector<std::vector<std::pair<int, int>>> levels;

  // Final pair set: the fixpoint, or the level-n set of a stratified run.
  const std::vector<std::pair<int, int>>& last() const;
  bool related(int level, int source_index, int target_index) const;

  // One line per level: "level <k>: (<id>,<id>) (<id>,<id>) ..." with pairs
  // in id order. The trailing fixpoint line is prefixed "fixpoint:" instead.
  std::string render() const;
};

// ── Relation computation ─────────────────────────────────────────────────────

// Greatest relation of the kind between I and H: starts from the atom
// relation and removes pairs until stable. Every intermediate level is
// retained, so the table doubles as the refinement trace. AlcqBisim uses
// exact successor counts here (finite inputs are finitely branching, where
// the capped and exact notions coincide in the limit).
RelationTable greatest_relation(RelationKind kind, const Interpretation& I,
                                const Interpretation& H);

// Levels 0..n of the stratified system. kappa caps the successor counts
// compared by AlcqBisim (required >= 1 there, ignored elsewhere).
RelationTable stratified_relation(RelationKind kind, int n, uint32_t kappa,
                                  const Interpretation& I,
                                  const Interpretation& H);

// ── Global relatedness ───────────────────────────────────────────────────────

// Verdict of the global variant: the greatest relation must cover every
// source element (totality) and every target element (surjectivity);
// AlcqBisim additionally requires each equivalence class to have the same
// cardinality on both sides. uncovered_* list the element indices that
// witness failure: elements with no partner, plus for AlcqBisim the members
// of count-mismatched classes on the larger side.
struct GlobalCheck {
  bool related = false;
  std::vector<int> uncovered_source;
  std::vector<int> uncovered_target;
};

GlobalCheck global_related(RelationKind kind, const Interpretation& I,
                           const Interpretation& H);

// ── Distinguishing concepts ──────────────────────────────────────────────────

// Result of a separation attempt. When the pair falls out of the level
// system at some level <= max_n, `witness` is a concept in the kind's
// dialect that the source point satisfies and the target point does not,
// taken from the characteristic concept of the source point at the least
// separating level (the failing clause). Candidates are verified by
// evaluating extensions on both structures; ties break toward the
// lexicographically least rendering.
struct Distinguish {
  bool separated = false;
  int level = -1;
  ConceptPtr witness = nullptr;
};

// kappa is required >= 1 for AlcqBisim and ignored for the other kinds.
Distinguish distinguish(RelationKind kind, const PointedInterpretation& source,
                        const PointedInterpretation& target, int max_n,
                        uint32_t kappa = 0);

}  // namespace dlkit

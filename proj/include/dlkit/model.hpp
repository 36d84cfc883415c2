// ============================================================================
//  model.hpp -- finite interpretations, model checking, and the model
//  constructions: unions, products, subinterpretations, quotients,
//  unravellings, coherence machinery
// ============================================================================
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dlkit/syntax.hpp"

namespace dlkit {

// Sorted list of element indices. All set-valued results use ascending index
// order; an element's index is its declaration position.
using ElementSet = std::vector<int>;

// ── Interpretation ──────────────────────────────────────────────────────────
//
// A finite interpretation: ordered domain of named elements, concept-name
// labels, role edges, and a partial single-valued individual assignment.
// Element ids are free-form tokens (no whitespace, no '#'); concept, role,
// and individual names must be valid identifiers.
//
// Construction happens through the mutators or parse(); afterwards treat the
// object as immutable. All queries are const and safe to share across
// threads. References to elements that were never declared are retained as
// dangling records: they are invisible to evaluation, reported by validate(),
// and resolved retroactively if the element is declared later.
class Interpretation {
 public:
  Interpretation() = default;

  // Builds the dense structure in one step. Label lists are per element
  // (parallel to ids); edges are index pairs. Throws std::invalid_argument
  // on out-of-range indices or invalid names.
  Interpretation(std::vector<std::string> ids,
                 std::vector<std::vector<std::string>> labels,
                 std::map<std::string, std::vector<std::pair<int, int>>> edges,
                 std::map<std::string, std::string> individuals = {});

  // ── construction ──
  int add_element(const std::string& id);  // idempotent; returns index
  void add_label(const std::string& id, const std::string& concept_name);
  void add_edge(const std::string& role, const std::string& from,
                const std::string& to);
  void assign(const std::string& individual, const std::string& id);
  void set_note(int e, const std::string& note);  // provenance annotation

  // File format, line-based: "elem <id>", "label <id> <ConceptName>",
  // "edge <role> <id> <id>", "ind <IndividualName> <id>"; '#' starts a
  // comment; duplicate directives are idempotent; forward references are
  // errors; declaration order fixes element order.
  static Interpretation parse(const std::string& text);
  std::string render() const;

  // ── queries ──
  int size() const { return static_cast<int>(ids_.size()); }
  const std::vector<std::string>& elements() const { return ids_; }
  const std::string& id(int e) const { return ids_.at(e); }
  int element(const std::string& id) const;  // index, or -1 if unknown
  const std::string& note(int e) const { return notes_.at(e); }

  bool labeled(int e, const std::string& concept_name) const;
  const std::vector<std::string>& labels(int e) const { return labels_.at(e); }

  std::vector<std::string> role_names() const;  // sorted, edge-bearing roles
  const std::vector<int>& successors(const std::string& role, int e) const;
  const std::vector<int>& predecessors(const std::string& role, int e) const;
  bool edge(const std::string& role, int from, int to) const;
  std::size_t edge_count(const std::string& role) const;

  // Raw assignment (name -> element id), including unresolved targets.
  const std::map<std::string, std::string>& individuals() const {
    return inds_;
  }
  int individual(const std::string& name) const;  // resolved index, or -1

  // Names occurring in the interpretation, as a signature.
  Signature signature() const;

  // Dangling records: directives whose element never got declared.
  struct Dangling {
    std::vector<std::pair<std::string, std::string>> labels;  // (id, name)
    std::vector<std::pair<std::string, std::pair<std::string, std::string>>>
        edges;  // (role, (from, to))
  };
  const Dangling& dangling() const { return dangling_; }

 private:
  void promote_dangling();
  struct RoleGraph {
    std::vector<std::vector<int>> succ;  // per element, ascending
    std::vector<std::vector<int>> pred;
    std::size_t edges = 0;
  };
  std::vector<std::string> ids_;
  std::map<std::string, int> index_;
  std::vector<std::vector<std::string>> labels_;  // per element, sorted
  std::vector<std::string> notes_;                // per element, may be empty
  std::map<std::string, RoleGraph> roles_;
  std::map<std::string, std::string> inds_;  // name -> element id
  Dangling dangling_;
};

// A pointed interpretation: structure plus distinguished element.
struct PointedInterpretation {
  Interpretation interpretation;
  int point = -1;  // index into interpretation, always valid when produced
};

// Default element cap for the size-guarded constructions; edge output is
// guarded at 16x the element cap. Exceeding a cap raises ResourceError.
inline constexpr std::size_t kSizeCap = 1'000'000;

// ── Model checking ───────────────────────────────────────────────────────────

// Structural and signature diagnostics. Reports the empty domain, dangling
// references, names outside sig, and (with require_K) every individual name
// of sig without an assigned element. Empty result = well formed.
std::vector<std::string> validate(const Interpretation& I, bool require_K,
                                  const Signature& sig);

// The extension of C in I, per the recursive semantics. Nominals evaluate to
// their singleton carrier, or to the empty set while unassigned. The
// universal role is never stored as edges: it means all pairs over the
// domain, so its restrictions evaluate all-or-nothing.
ElementSet extension(const Interpretation& I, ConceptPtr c);

// TBox satisfaction with the first violation, axioms checked in order and
// witnesses in element order.
struct SatCheck {
  bool holds = true;
  int axiom = -1;    // index into the TBox
  int element = -1;  // violating element: in lhs extension, not in rhs
};
SatCheck satisfies(const Interpretation& I, const TBox& t);

// ── Constructions ────────────────────────────────────────────────────────────

// Tagged disjoint union; element "d" of part i becomes "<i>:d". A single
// part is returned unchanged. Individual assignments survive only when no
// name is assigned in two parts; otherwise the whole output map is dropped
// and each multiply assigned name is reported through diagnostics.
Interpretation disjoint_union(const std::vector<Interpretation>& parts,
                              std::vector<std::string>* diagnostics = nullptr);

// Direct product: full cartesian domain, labels by intersection, edges by
// componentwise agreement, individuals where every part assigns. Element
// ids join the component ids with ','.
Interpretation direct_product(const std::vector<Interpretation>& parts,
                              std::size_t cap = kSizeCap);
PointedInterpretation direct_product(const std::vector<Interpretation>& parts,
                                     const std::vector<int>& points,
                                     std::size_t cap = kSizeCap);

// Generated subinterpretation over G: the union of the connected components
// of G, closed under successors and predecessors. The forward variant keeps
// only the elements reachable on directed paths from d. Ids survive;
// individuals on dropped elements are dropped with them.
Interpretation generated_sub(const Interpretation& I, const ElementSet& g);
Interpretation forward_generated_sub(const Interpretation& I, int d);

// Factor interpretation by a partition of the domain: classes become
// elements (named after their smallest member), a class carries a label,
// edge, or individual iff some member does. Throws std::invalid_argument
// unless classes is a partition.
Interpretation quotient(const Interpretation& I,
                        const std::vector<ElementSet>& classes);

// Unravellings. Elements are path words d.r1.d1..., labels come from the
// last letter, edges extend a path by one step; the word is also kept as a
// provenance note. Unravelled structures carry no individual assignments.
//   tree_unravel:   paths from d with at most depth edges; point = root.
//   forest_unravel: the union of the depth-limited unravellings in every
//                   element.
//   partial_tree_unravel: the forest unravelling blocked at repetition; a
//       path survives iff every element occurring twice in it is its last
//       letter, so paths stop one step after closing a cycle and carry at
//       most |domain|+1 letters.
PointedInterpretation tree_unravel(const Interpretation& I, int d, int depth,
                                   std::size_t cap = kSizeCap);
Interpretation forest_unravel(const Interpretation& I, int depth,
                              std::size_t cap = kSizeCap);
Interpretation partial_tree_unravel(const Interpretation& I,
                                    std::size_t cap = kSizeCap);

// ── Individuals across structures ────────────────────────────────────────────

// A family is coherent when any two carriers of the same individual name,
// across or within parts, are ALC-bisimilar; individual names count as
// atoms for this comparison.
struct CoherenceCheck {
  bool coherent = true;
  std::string detail;  // first failing pair, empty when coherent
};
CoherenceCheck coherence_check(const std::vector<Interpretation>& parts);

// Disjoint union quotiented by the same-individual merge, for families where
// every part assigns every occurring name and carriers of a name are
// pairwise bisimilar. The result assigns each name exactly once. Throws
// std::invalid_argument on an incoherent family.
Interpretation coherent_union_alco(const std::vector<Interpretation>& parts);

// Plain disjoint union for parts whose assigned individual names are
// pairwise disjoint and jointly cover sig's individual names. Throws
// std::invalid_argument when the cover or disjointness condition fails.
Interpretation nominal_union_alcqio(const std::vector<Interpretation>& parts,
                                    const Signature& sig);

}  // namespace dlkit

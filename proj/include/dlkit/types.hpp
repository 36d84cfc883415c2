// ============================================================================
//  types.hpp -- closure-relative types: enumeration by elimination, the
//  possible-successor relation, canonical models and satisfiability
// ============================================================================
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dlkit/model.hpp"
#include "dlkit/syntax.hpp"

namespace dlkit {

// ── Type tables ──────────────────────────────────────────────────────────────

// Tp enumerates the satisfiable maximal subsets of the closure; TpT keeps
// those that are satisfiable together with the TBox; TpK works over the
// rank-bounded slice of the closure instead (maximal there, no axiom filter).
enum class TypeMode { Tp, TpT, TpK };

std::string to_string(TypeMode m);  // "tp", "tpT", "tpk"

// Atom count bound for enumeration; larger closures raise ResourceError.
inline constexpr int kTypeAtomCap = 12;

// The result of one enumeration. base is the closure slice the types are
// complete over, both polarities, in text order; atoms is its positive half.
// Each member is a bit mask over atoms: bit i set means atoms[i] belongs to
// the type, clear means its negation does. Every member is therefore locally
// consistent by construction (one polarity per pair, conjunctions evaluated
// member-wise, bot never holds). Members are sorted by the induced subset of
// base, lexicographically over the base order.
struct TypeTable {
  TypeMode mode = TypeMode::Tp;
  Dialect dialect = Dialect::ALC;
  int k = -1;                       // rank bound when mode is TpK, else -1
  std::vector<ConceptPtr> base;     // closure slice, both polarities
  std::vector<ConceptPtr> atoms;    // positive half of base, text order
  std::vector<uint32_t> members;    // surviving types, bit i <-> atoms[i]
  int size() const { return static_cast<int>(members.size()); }
};

// Enumerates the types of t. Seeds every locally consistent subset (TpT
// additionally requires each axiom to hold member-wise), then repeatedly
// removes types whose existential atoms have no possible-successor witness
// among the survivors; inverse atoms need a witness on the incoming side.
// k is the rank bound for TpK and must stay -1 otherwise. Throws
// DialectError unless d is ALC or ALCI and t conforms to it, ResourceError
// past kTypeAtomCap, std::invalid_argument on a bad k.
TypeTable enumerate_types(const TBox& t, TypeMode mode, Dialect d, int k = -1);

// ── Member queries ───────────────────────────────────────────────────────────

// Whether c holds in the given member, evaluated over the primitive form:
// names and existential restrictions look up their bit, booleans recurse.
// Throws std::invalid_argument when c reaches an atom outside the base.
bool member_has(const TypeTable& tt, int member, ConceptPtr c);

// The member as a subset of base, in base order.
std::vector<ConceptPtr> member_concepts(const TypeTable& tt, int member);

// The conjunction of the member's concepts (top for an empty base).
ConceptPtr type_concept(const TypeTable& tt, int member);

// Index of the member with exactly these bits, or -1.
int member_index(const TypeTable& tt, uint32_t member_bits);

// The type of element d in I: the bit mask of base atoms whose extension
// contains d. Always locally consistent; a member of every Tp table, and of
// a TpT table whenever I satisfies the TBox.
uint32_t interpretation_type(const TypeTable& tt, const Interpretation& I,
                             int d);

// One member per line, rendered as its type_concept.
std::string render(const TypeTable& tt);

// ── Possible successors ──────────────────────────────────────────────────────

// Whether member s1 is a possible r-successor of member s0: no negated
// existential r-atom of s0 may have its body in s1, and under ALCI no
// negated inverse atom of s1 may have its body in s0. An inverse r flips
// the direction. Throws std::invalid_argument on the universal role.
bool leadsto(const TypeTable& tt, int s0, Role r, int s1);

// The same relation lifted to pairs (s, S): s0 leads to s1 and every member
// of S0 leads to some member of S1.
bool leadsto(const TypeTable& tt, int s0, const std::vector<int>& S0, Role r,
             int s1, const std::vector<int>& S1);

// ── Models and satisfiability ────────────────────────────────────────────────

// The canonical model over the surviving types: one element per member
// (ids t0, t1, ...), labeled with its positive concept names, with an
// r-edge wherever leadsto holds and one endpoint's existential atom is
// witnessed by the other. Every closure concept then holds exactly at the
// members containing it, and for TpT mode the model satisfies the TBox.
Interpretation canonical_model(const TypeTable& tt);

// Satisfiability of c (alone, or together with t) by type enumeration over
// the closure extended with c. Dialects above ALCI raise DialectError.
bool concept_sat(ConceptPtr c, Dialect d);
bool concept_sat(ConceptPtr c, const TBox& t, Dialect d);

}  // namespace dlkit

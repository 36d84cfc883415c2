// ============================================================================
//  dlkit/syntax.hpp -- signatures, concept ASTs, TBoxes, parsing, printing,
//  measures, closures and the constructive normal forms
// ============================================================================
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dlkit {

// ── Errors ──────────────────────────────────────────────────────────────────

// Problems in user-supplied text: grammar violations, undeclared names.
struct ParseError : std::runtime_error {
  int line, col;
  ParseError(int line_, int col_, const std::string& what_)
      : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                           std::to_string(col_) + ": " + what_),
        line(line_), col(col_) {}
};

// An operation was asked to handle a constructor outside its dialect.
struct DialectError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A configured cap (elements, steps, depth) was exceeded.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ── Signature ───────────────────────────────────────────────────────────────

// N_C / N_R / N_I. The three sets are kept pairwise disjoint; "u" is the
// universal role, a logical symbol, and may not be declared in N_R.
struct Signature {
  std::set<std::string> concept_names;
  std::set<std::string> role_names;
  std::set<std::string> individual_names;

  void declare_concept(const std::string& n);
  void declare_role(const std::string& n);
  void declare_individual(const std::string& n);
  bool has_concept(const std::string& n) const { return concept_names.count(n) > 0; }
  bool has_role(const std::string& n) const { return role_names.count(n) > 0; }
  bool has_individual(const std::string& n) const { return individual_names.count(n) > 0; }
  void merge(const Signature& other);
};

bool valid_identifier(const std::string& s);   // [A-Za-z][A-Za-z0-9_]*, not reserved
bool reserved_word(const std::string& s);

// ── Roles ───────────────────────────────────────────────────────────────────

enum class RoleKind { Direct, Inverse, Universal };

// Role occurrence in a quantifier: r, inv(r), or u. Inverse never wraps u.
struct Role {
  RoleKind kind = RoleKind::Direct;
  std::string name;                      // empty iff Universal

  static Role direct(const std::string& r) { return {RoleKind::Direct, r}; }
  static Role inverse(const std::string& r) { return {RoleKind::Inverse, r}; }
  static Role universal() { return {RoleKind::Universal, ""}; }

  bool is_universal() const { return kind == RoleKind::Universal; }
  Role flipped() const;                  // r <-> inv(r); u stays u
  std::string render() const;

  bool operator==(const Role& o) const { return kind == o.kind && name == o.name; }
  bool operator!=(const Role& o) const { return !(*this == o); }
  bool operator<(const Role& o) const {
    if (kind != o.kind) return kind < o.kind;
    return name < o.name;
  }
};

// ── Concepts ────────────────────────────────────────────────────────────────

enum class Ctor { Top, Bot, Name, Nominal, Not, And, Or, Exists, Forall };

class Concept;
// Interned: one node per canonical rendering, live for the whole process.
// Pointer equality is structural equality on canonical forms.
using ConceptPtr = const Concept*;

class Concept {
 public:
  Ctor op;
  std::string name;                      // Name / Nominal payload
  Role role;                             // Exists / Forall
  uint32_t bound = 1;                    // kappa; 1 encodes plain some/all
  std::vector<ConceptPtr> kids;          // Not: 1, And/Or: >=2, quantifiers: 1
  std::string text;                      // canonical rendering (intern key)

  ConceptPtr kid() const { return kids.at(0); }
};

// Smart constructors. All inputs are canonicalized:
//   - And/Or flatten one nesting level, drop their unit, sort children by
//     rendered text, drop duplicates, collapse to the child when one remains,
//     and collapse to the absorbing element when it occurs;
//   - not not C -> C, not top -> bot, not bot -> top;
//   - a bound of 0 collapses: some^{>=0} is top, its dual is bot.
ConceptPtr top();
ConceptPtr bot();
ConceptPtr name(const std::string& n);
ConceptPtr nominal(const std::string& a);
ConceptPtr neg(ConceptPtr c);
ConceptPtr conj(std::vector<ConceptPtr> cs);
ConceptPtr disj(std::vector<ConceptPtr> cs);
ConceptPtr exists(Role r, uint32_t bound, ConceptPtr c);
ConceptPtr forall(Role r, uint32_t bound, ConceptPtr c);
inline ConceptPtr exists(Role r, ConceptPtr c) { return exists(r, 1, c); }
inline ConceptPtr forall(Role r, ConceptPtr c) { return forall(r, 1, c); }

inline const std::string& render(ConceptPtr c) { return c->text; }
inline bool text_less(ConceptPtr a, ConceptPtr b) { return a->text < b->text; }

// ── TBoxes ──────────────────────────────────────────────────────────────────

struct Axiom {
  ConceptPtr lhs;
  ConceptPtr rhs;
  bool operator==(const Axiom& o) const { return lhs == o.lhs && rhs == o.rhs; }
};

struct TBox {
  std::vector<Axiom> axioms;
  bool empty() const { return axioms.empty(); }
};

std::string render(const TBox& t);       // one "C [= D" line per axiom

// ── Parsing ─────────────────────────────────────────────────────────────────

// Grammar (exact):
//   Concept := "top" | "bot" | IDENT | "{" IDENT "}" | "not" Concept
//            | "(" Concept (("and" Concept)+ | ("or" Concept)+) ")"
//            | ("some"|"all") Role "." Concept
//            | ("min"|"max") NAT Role "." Concept
//   Role    := IDENT | "inv(" IDENT ")" | "u"
// Binary operators require parentheses; one group chains a single operator.
//
// With declare_on_use the signature is extended as names are met (category
// determined by syntactic position); otherwise unseen names are errors.
ConceptPtr parse_concept(const std::string& text, Signature& sig,
                         bool declare_on_use = false);

// One "Concept [= Concept" per line; "#" starts a comment; blank lines skipped.
TBox parse_tbox(const std::string& text, Signature& sig,
                bool declare_on_use = false);

// ── Measures ────────────────────────────────────────────────────────────────

enum class Dialect { EL, ELsqcup, ELneg, ALC, ALCI, ALCQ, ALCO, ALCQO, ALCQIO };
enum class UFlag { None, U1, GradedU };

struct Measure {
  int rank = 0;           // role-restriction nesting; u restrictions are free
  uint32_t grade = 0;     // greatest kappa that occurs (0 if quantifier-free)
  long length = 0;
  Dialect min_dialect = Dialect::EL;
  UFlag u_flag = UFlag::None;
};

int rank(ConceptPtr c);
int rank(const TBox& t);
uint32_t grade(ConceptPtr c);
long length(ConceptPtr c);
long length(const TBox& t);              // sum of |lhs| + |rhs|
Measure measure(ConceptPtr c);
Measure measure(const TBox& t);
std::string dialect_name(Dialect d, UFlag u = UFlag::None);

// True iff c uses only constructors available in d (with the given u budget).
bool conforms(ConceptPtr c, Dialect d, UFlag u = UFlag::GradedU);
bool conforms(const TBox& t, Dialect d, UFlag u = UFlag::GradedU);

// ── Closure ─────────────────────────────────────────────────────────────────

// Rewrites Or/Forall away ({not, and, some} over direct/inverse roles) and
// collapses double negation. Identity on Top/Bot/names. Counting, nominals
// and u are dialect errors here.
ConceptPtr primitive_form(ConceptPtr c);

// clos T for an ALCI TBox: both polarities, conjunctions decomposed,
// clos(not D) = clos D, clos(top) = clos(bot) = {}. Members are in primitive
// form; sorted by rendered text. |clos T| <= 2 |T|.
std::vector<ConceptPtr> clos(const TBox& t);
std::vector<ConceptPtr> clos(ConceptPtr c);

// ── Normal forms ────────────────────────────────────────────────────────────

enum class NormalForm { ElnegNnf, ElnegTboxToElsqcup, ElsqcupSplit, AlcuDnf };

// elneg-nnf        : EL-with-negation concept -> negation pushed onto names
//                    and onto whole some-subtrees (those are the literals).
// elsqcup-split    : EL-with-or concept -> or of pure EL concepts.
// alcu-dnf         : ALCu concept -> or of (local and some-u parts and one
//                    all-u part), all parts u-free; rank never grows.
ConceptPtr normalize_concept(ConceptPtr c, NormalForm form);

// elneg-tbox-to-elsqcup: EL-with-negation TBox -> equivalent EL-with-or TBox,
// one axiom (and N) [= (or P) per clause of the NNF/CNF of not lhs or rhs.
TBox normalize_tbox(const TBox& t, NormalForm form);

// ── First-order translation ─────────────────────────────────────────────────

// Standard translation at variable x_i. ALC/ALCI/u fragments use exactly
// x0/x1 (alternation); counting bounds > 1 spend kappa fresh variables and
// emit equality. Nominals translate as unary predicates.
std::string fo_translate(ConceptPtr c, int i = 0);

}  // namespace dlkit

// ============================================================================
//  types.cpp -- type enumeration by elimination over the closure, the
//  possible-successor relation, canonical models, satisfiability
// ============================================================================
#include "dlkit/types.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dlkit {

namespace {

// ── Atom context ─────────────────────────────────────────────────────────────

struct ExAtom {
  int bit;            // position in atoms
  bool inverse;       // role direction of the atom
  std::string role;   // base role name
  ConceptPtr body;
};

// Lookup structures over a table's atoms; rebuilt per call, the tables stay
// plain data.
struct Ctx {
  std::unordered_map<ConceptPtr, int> atom_ix;
  std::vector<ExAtom> ex;
};

Ctx make_ctx(const TypeTable& tt) {
  Ctx ctx;
  for (int i = 0; i < static_cast<int>(tt.atoms.size()); ++i) {
    ConceptPtr a = tt.atoms[i];
    ctx.atom_ix.emplace(a, i);
    if (a->op == Ctor::Exists)
      ctx.ex.push_back({i, a->role.kind == RoleKind::Inverse, a->role.name,
                        a->kid()});
  }
  return ctx;
}

// Truth of a primitive-form concept in the type with the given atom bits.
bool holds(const Ctx& ctx, uint32_t bits, ConceptPtr c) {
  switch (c->op) {
    case Ctor::Top:
      return true;
    case Ctor::Bot:
      return false;
    case Ctor::Not:
      return !holds(ctx, bits, c->kid());
    case Ctor::And:
      for (ConceptPtr k : c->kids)
        if (!holds(ctx, bits, k)) return false;
      return true;
    case Ctor::Name:
    case Ctor::Exists: {
      auto it = ctx.atom_ix.find(c);
      if (it == ctx.atom_ix.end())
        throw std::invalid_argument("concept is not over the type base");
      return bits >> it->second & 1;
    }
    default:
      throw std::invalid_argument("concept has no primitive form");
  }
}

// Whether the type `to` is a possible rn-successor of the type `from`: no
// negated rn-atom of `from` has its body in `to`, and no negated inverse
// rn-atom of `to` has its body in `from` (vacuous without inverse atoms).
bool edge_ok(const Ctx& ctx, uint32_t from, uint32_t to,
             const std::string& rn) {
  for (const ExAtom& a : ctx.ex) {
    if (a.role != rn) continue;
    if (!a.inverse && !(from >> a.bit & 1) && holds(ctx, to, a.body))
      return false;
    if (a.inverse && !(to >> a.bit & 1) && holds(ctx, from, a.body))
      return false;
  }
  return true;
}

// ── Bit sets over the mask space ─────────────────────────────────────────────

using Bits = std::vector<uint64_t>;

Bits make_bits(uint32_t n) { return Bits((n + 63) / 64, 0); }
void set_bit(Bits& b, uint32_t i) { b[i >> 6] |= uint64_t{1} << (i & 63); }
void clear_bit(Bits& b, uint32_t i) { b[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
bool get_bit(const Bits& b, uint32_t i) { return b[i >> 6] >> (i & 63) & 1; }

bool any(const Bits& b) {
  for (uint64_t w : b)
    if (w) return true;
  return false;
}

// ── Elimination ──────────────────────────────────────────────────────────────

// Shared tables for the witness scan: which masks make each atom's body true
// and which masks carry each atom.
struct ElimTables {
  std::vector<Bits> body_true;
  std::vector<Bits> with_atom;
};

ElimTables make_tables(const Ctx& ctx, uint32_t space) {
  ElimTables et;
  et.body_true.reserve(ctx.ex.size());
  et.with_atom.reserve(ctx.ex.size());
  for (const ExAtom& a : ctx.ex) {
    Bits bt = make_bits(space), wa = make_bits(space);
    for (uint32_t b = 0; b < space; ++b) {
      if (holds(ctx, b, a.body)) set_bit(bt, b);
      if (b >> a.bit & 1) set_bit(wa, b);
    }
    et.body_true.push_back(std::move(bt));
    et.with_atom.push_back(std::move(wa));
  }
  return et;
}

// Survivors among `alive` that can witness the existential atom ctx.ex[j] of
// the type `t`: they must carry the body and sit on an admissible edge
// (outgoing for a direct atom, incoming for an inverse one).
bool has_witness(const Ctx& ctx, const ElimTables& et, const Bits& alive,
                 uint32_t t, int j) {
  const ExAtom& a = ctx.ex[j];
  Bits cand = alive;
  for (size_t w = 0; w < cand.size(); ++w) cand[w] &= et.body_true[j][w];
  for (int i = 0; i < static_cast<int>(ctx.ex.size()); ++i) {
    const ExAtom& o = ctx.ex[i];
    if (o.role != a.role) continue;
    if (o.inverse == a.inverse) {
      // same direction as the edge: absent atoms of t forbid their bodies
      if (!(t >> o.bit & 1))
        for (size_t w = 0; w < cand.size(); ++w) cand[w] &= ~et.body_true[i][w];
    } else {
      // opposite direction: bodies true at t force the atom on the witness
      if (get_bit(et.body_true[i], t))
        for (size_t w = 0; w < cand.size(); ++w) cand[w] &= et.with_atom[i][w];
    }
  }
  return any(cand);
}

// Base-order lexicographic comparison of two members, false before true.
bool base_less(const TypeTable& tt, const Ctx& ctx, uint32_t a, uint32_t b) {
  for (ConceptPtr c : tt.base) {
    bool neg = c->op == Ctor::Not;
    int bit = ctx.atom_ix.at(neg ? c->kid() : c);
    bool x = (a >> bit & 1) != neg;
    bool y = (b >> bit & 1) != neg;
    if (x != y) return y;
  }
  return false;
}

uint32_t bits_of(const TypeTable& tt, int member) {
  return tt.members.at(static_cast<size_t>(member));
}

}  // namespace

// ── Enumeration ──────────────────────────────────────────────────────────────

std::string to_string(TypeMode m) {
  switch (m) {
    case TypeMode::Tp:
      return "tp";
    case TypeMode::TpT:
      return "tpT";
    default:
      return "tpk";
  }
}

TypeTable enumerate_types(const TBox& t, TypeMode mode, Dialect d, int k) {
  if (d != Dialect::ALC && d != Dialect::ALCI)
    throw DialectError("type tables support ALC and ALCI only");
  if (!conforms(t, d, UFlag::None))
    throw DialectError("tbox does not conform to " + dialect_name(d));
  if (mode == TypeMode::TpK ? k < 0 : k != -1)
    throw std::invalid_argument(mode == TypeMode::TpK
                                    ? "tpk needs a rank bound k >= 0"
                                    : "a rank bound applies to tpk only");

  TypeTable tt;
  tt.mode = mode;
  tt.dialect = d;
  tt.k = k;
  for (ConceptPtr c : clos(t))
    if (mode != TypeMode::TpK || rank(c) <= k) tt.base.push_back(c);
  for (ConceptPtr c : tt.base)
    if (c->op != Ctor::Not) tt.atoms.push_back(c);
  int m = static_cast<int>(tt.atoms.size());
  if (m > kTypeAtomCap)
    throw ResourceError("closure has " + std::to_string(m) +
                        " atoms, cap is " + std::to_string(kTypeAtomCap));

  Ctx ctx = make_ctx(tt);
  uint32_t space = uint32_t{1} << m;

  // seed: every assignment, minus the ones violating an axiom member-wise
  std::vector<std::pair<ConceptPtr, ConceptPtr>> ax;
  if (mode == TypeMode::TpT)
    for (const Axiom& a : t.axioms)
      ax.emplace_back(primitive_form(a.lhs), primitive_form(a.rhs));
  Bits alive = make_bits(space);
  for (uint32_t b = 0; b < space; ++b) {
    bool ok = true;
    for (const auto& [lhs, rhs] : ax)
      if (holds(ctx, b, lhs) && !holds(ctx, b, rhs)) {
        ok = false;
        break;
      }
    if (ok) set_bit(alive, b);
  }

  // elimination: drop types whose existential atoms lost all witnesses,
  // in batches until stable
  ElimTables et = make_tables(ctx, space);
  bool changed = true;
  while (changed) {
    changed = false;
    Bits keep = alive;
    for (uint32_t b = 0; b < space; ++b) {
      if (!get_bit(alive, b)) continue;
      for (int j = 0; j < static_cast<int>(ctx.ex.size()); ++j) {
        if (!(b >> ctx.ex[j].bit & 1)) continue;
        if (!has_witness(ctx, et, alive, b, j)) {
          clear_bit(keep, b);
          changed = true;
          break;
        }
      }
    }
    alive = keep;
  }

  for (uint32_t b = 0; b < space; ++b)
    if (get_bit(alive, b)) tt.members.push_back(b);
  std::sort(tt.members.begin(), tt.members.end(),
            [&](uint32_t a, uint32_t b) { return base_less(tt, ctx, a, b); });
  return tt;
}

// ── Member queries ───────────────────────────────────────────────────────────

bool member_has(const TypeTable& tt, int member, ConceptPtr c) {
  uint32_t bits = bits_of(tt, member);
  return holds(make_ctx(tt), bits, primitive_form(c));
}

std::vector<ConceptPtr> member_concepts(const TypeTable& tt, int member) {
  uint32_t bits = bits_of(tt, member);
  Ctx ctx = make_ctx(tt);
  std::vector<ConceptPtr> out;
  for (ConceptPtr c : tt.base)
    if (holds(ctx, bits, c)) out.push_back(c);
  return out;
}

ConceptPtr type_concept(const TypeTable& tt, int member) {
  std::vector<ConceptPtr> cs = member_concepts(tt, member);
  return cs.empty() ? top() : conj(std::move(cs));
}

int member_index(const TypeTable& tt, uint32_t member_bits) {
  for (int i = 0; i < tt.size(); ++i)
    if (tt.members[i] == member_bits) return i;
  return -1;
}

uint32_t interpretation_type(const TypeTable& tt, const Interpretation& I,
                             int d) {
  if (d < 0 || d >= I.size())
    throw std::invalid_argument("element out of range");
  uint32_t bits = 0;
  for (int i = 0; i < static_cast<int>(tt.atoms.size()); ++i) {
    ElementSet ext = extension(I, tt.atoms[i]);
    if (std::binary_search(ext.begin(), ext.end(), d))
      bits |= uint32_t{1} << i;
  }
  return bits;
}

std::string render(const TypeTable& tt) {
  std::string out;
  for (int i = 0; i < tt.size(); ++i)
    out += render(type_concept(tt, i)) + "\n";
  return out;
}

// ── Possible successors ──────────────────────────────────────────────────────

bool leadsto(const TypeTable& tt, int s0, Role r, int s1) {
  if (r.is_universal())
    throw std::invalid_argument("the universal role has no successor types");
  uint32_t from = bits_of(tt, s0), to = bits_of(tt, s1);
  if (r.kind == RoleKind::Inverse) std::swap(from, to);
  return edge_ok(make_ctx(tt), from, to, r.name);
}

bool leadsto(const TypeTable& tt, int s0, const std::vector<int>& S0, Role r,
             int s1, const std::vector<int>& S1) {
  if (!leadsto(tt, s0, r, s1)) return false;
  for (int t0 : S0) {
    bool found = false;
    for (int t1 : S1)
      if (leadsto(tt, t0, r, t1)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

// ── Models and satisfiability ────────────────────────────────────────────────

Interpretation canonical_model(const TypeTable& tt) {
  Ctx ctx = make_ctx(tt);
  int n = tt.size();
  std::vector<std::string> ids;
  std::vector<std::vector<std::string>> labels(n);
  for (int i = 0; i < n; ++i) {
    ids.push_back("t" + std::to_string(i));
    for (const auto& [atom, bit] : ctx.atom_ix)
      if (atom->op == Ctor::Name && (tt.members[i] >> bit & 1))
        labels[i].push_back(atom->name);
    std::sort(labels[i].begin(), labels[i].end());
  }

  // an edge needs an admissible pair that witnesses an existential atom on
  // one of its endpoints
  std::map<std::string, std::vector<std::pair<int, int>>> edges;
  for (const ExAtom& a : ctx.ex) edges[a.role];
  for (auto& [rn, pairs] : edges) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        uint32_t from = tt.members[i], to = tt.members[j];
        if (!edge_ok(ctx, from, to, rn)) continue;
        bool witnessed = false;
        for (const ExAtom& a : ctx.ex) {
          if (a.role != rn) continue;
          if (!a.inverse && (from >> a.bit & 1) && holds(ctx, to, a.body))
            witnessed = true;
          if (a.inverse && (to >> a.bit & 1) && holds(ctx, from, a.body))
            witnessed = true;
          if (witnessed) break;
        }
        if (witnessed) pairs.emplace_back(i, j);
      }
  }
  return Interpretation(std::move(ids), std::move(labels), std::move(edges));
}

namespace {

void check_sat_dialect(ConceptPtr c, Dialect d) {
  if (d > Dialect::ALCI)
    throw DialectError("satisfiability supports dialects up to ALCI");
  if (!conforms(c, d, UFlag::None))
    throw DialectError("concept does not conform to " + dialect_name(d));
}

}  // namespace

bool concept_sat(ConceptPtr c, Dialect d) {
  check_sat_dialect(c, d);
  TBox frame;
  frame.axioms.push_back({top(), disj({neg(c), c})});
  TypeTable tt = enumerate_types(frame, TypeMode::Tp,
                                 d == Dialect::ALCI ? Dialect::ALCI
                                                    : Dialect::ALC);
  for (int i = 0; i < tt.size(); ++i)
    if (member_has(tt, i, c)) return true;
  return false;
}

bool concept_sat(ConceptPtr c, const TBox& t, Dialect d) {
  check_sat_dialect(c, d);
  TBox framed = t;
  framed.axioms.push_back({top(), disj({neg(c), c})});
  TypeTable tt = enumerate_types(framed, TypeMode::TpT,
                                 d == Dialect::ALCI ? Dialect::ALCI
                                                    : Dialect::ALC);
  for (int i = 0; i < tt.size(); ++i)
    if (member_has(tt, i, c)) return true;
  return false;
}

}  // namespace dlkit

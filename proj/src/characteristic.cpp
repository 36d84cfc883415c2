// ============================================================================
//  characteristic.cpp -- characteristic concept builders per dialect and
//  scope, the round-trip validator, and minimal EL tree models
// ============================================================================
#include "dlkit/characteristic.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dlkit/games.hpp"

namespace dlkit {
namespace {

// ── Structure view ───────────────────────────────────────────────────────────

// Per-call view of the structure under the requested signature: atom concepts
// per element (labels plus assigned individual names, nominals acting as
// concept names) and the requested role alphabet. Symbols outside the
// signature are invisible.
struct Frame {
  const Interpretation& I;
  std::set<std::string> concept_set;             // for atom -> concept mapping
  std::vector<std::string> alphabet;             // atom names, sorted
  std::vector<std::string> roles;                // requested roles, sorted
  std::vector<std::vector<ConceptPtr>> present;  // atom concepts the element carries
  std::vector<std::vector<ConceptPtr>> absent;   // and those it does not
  std::vector<std::vector<std::string>> atoms;   // atom names per element, sorted

  Frame(const Signature& sig, const Interpretation& I0)
      : I(I0), concept_set(sig.concept_names) {
    roles.assign(sig.role_names.begin(), sig.role_names.end());
    alphabet.assign(sig.concept_names.begin(), sig.concept_names.end());
    alphabet.insert(alphabet.end(), sig.individual_names.begin(),
                    sig.individual_names.end());
    std::sort(alphabet.begin(), alphabet.end());
    const int n = I.size();
    present.resize(n);
    absent.resize(n);
    atoms.resize(n);
    for (int d = 0; d < n; ++d) {
      for (const std::string& a : sig.concept_names)
        (I.labeled(d, a) ? present : absent)[d].push_back(name(a));
      for (const std::string& a : sig.individual_names)
        (I.individual(a) == d ? present : absent)[d].push_back(nominal(a));
      for (const std::string& a : alphabet)
        if (carries(d, a)) atoms[d].push_back(a);
    }
  }

  bool carries(int d, const std::string& a) const {
    return concept_set.count(a) ? I.labeled(d, a) : I.individual(a) == d;
  }
  ConceptPtr atom_concept(const std::string& a) const {
    return concept_set.count(a) ? name(a) : nominal(a);
  }
  const std::vector<int>& succ(std::size_t r, int d) const {
    return I.successors(roles[r], d);
  }
  const std::vector<int>& pred(std::size_t r, int d) const {
    return I.predecessors(roles[r], d);
  }
};

// ── Positive builders ────────────────────────────────────────────────────────

// Level-0 characteristics. ALC negates the disjunction of the absent atoms
// as one block; ALCI and ALCQ negate them one by one; EL keeps only the
// present atoms.
std::vector<ConceptPtr> level0(const Frame& f, CharDialect dia) {
  std::vector<ConceptPtr> out(f.I.size());
  for (int d = 0; d < f.I.size(); ++d) {
    std::vector<ConceptPtr> parts = f.present[d];
    if (dia == CharDialect::Alc) {
      parts.push_back(neg(disj(f.absent[d])));
    } else if (dia == CharDialect::Alci || dia == CharDialect::Alcq) {
      for (ConceptPtr a : f.absent[d]) parts.push_back(neg(a));
    }
    out[d] = conj(std::move(parts));
  }
  return out;
}

// One refinement round. Every dialect keeps its level-0 part and describes
// the successors of the previous round: EL with existentials only, ALC with
// existentials plus a value restriction over the successor disjunction,
// ALCI additionally along inverse roles, ALCQ with counting quantifiers per
// successor class ("=m" below the cap, ">=kappa" at it).
std::vector<ConceptPtr> round(const Frame& f, CharDialect dia,
                              const std::vector<ConceptPtr>& base,
                              const std::vector<ConceptPtr>& prev,
                              uint32_t kappa) {
  std::vector<ConceptPtr> out(f.I.size());
  for (int d = 0; d < f.I.size(); ++d) {
    std::vector<ConceptPtr> parts{base[d]};
    for (std::size_t r = 0; r < f.roles.size(); ++r) {
      const Role direct = Role::direct(f.roles[r]);
      std::vector<ConceptPtr> succ_chars;
      for (int dp : f.succ(r, d)) succ_chars.push_back(prev[dp]);
      if (dia == CharDialect::Alcq) {
        std::map<ConceptPtr, uint32_t> groups;
        for (ConceptPtr c : succ_chars) ++groups[c];
        std::vector<ConceptPtr> keys;
        for (const auto& g : groups) {
          keys.push_back(g.first);
          if (g.second < kappa) {
            parts.push_back(exists(direct, g.second, g.first));
            parts.push_back(neg(exists(direct, g.second + 1, g.first)));
          } else {
            parts.push_back(exists(direct, kappa, g.first));
          }
        }
        parts.push_back(forall(direct, 1, disj(std::move(keys))));
        continue;
      }
      for (ConceptPtr c : succ_chars) parts.push_back(exists(direct, 1, c));
      if (dia == CharDialect::El) continue;
      parts.push_back(forall(direct, 1, disj(succ_chars)));
      if (dia == CharDialect::Alci) {
        const Role inverse = Role::inverse(f.roles[r]);
        std::vector<ConceptPtr> pred_chars;
        for (int dp : f.pred(r, d)) pred_chars.push_back(prev[dp]);
        for (ConceptPtr c : pred_chars) parts.push_back(exists(inverse, 1, c));
        parts.push_back(forall(inverse, 1, disj(std::move(pred_chars))));
      }
    }
    out[d] = conj(std::move(parts));
  }
  return out;
}

// Level-n characteristics of every element, for the purely positive-shape
// dialects (ElNeg is assembled separately on top of El).
std::vector<ConceptPtr> char_levels(const Frame& f, CharDialect dia, int n,
                                    uint32_t kappa) {
  const std::vector<ConceptPtr> base = level0(f, dia);
  std::vector<ConceptPtr> cur = base;
  for (int k = 0; k < n; ++k) cur = round(f, dia, base, cur, kappa);
  return cur;
}

// ── Simulation types ─────────────────────────────────────────────────────────
//
// Canonical finite EL simulation types: a set of atoms plus, per role, an
// antichain of child types, ordered by "simulates into". The negative half
// of the EL-with-negation characteristic negates exactly the minimal types
// that fail to simulate into the element; conjuncts for non-minimal types
// are implied, so dropping them loses nothing.
struct TypePool {
  using Data = std::pair<std::vector<std::string>,
                         std::vector<std::pair<std::string, int>>>;
  std::vector<Data> types;
  std::map<Data, int> index;
  std::map<std::pair<int, int>, bool> le_memo;
  std::map<int, ConceptPtr> concept_memo;

  int intern(const Data& d) {
    auto it = index.find(d);
    if (it != index.end()) return it->second;
    const int id = static_cast<int>(types.size());
    types.push_back(d);
    index.emplace(d, id);
    return id;
  }

  // s <= t: t simulates everywhere s does (kids have strictly smaller
  // level, so the recursion is well founded).
  bool le(int s, int t) {
    if (s == t) return true;
    const auto key = std::make_pair(s, t);
    const auto it = le_memo.find(key);
    if (it != le_memo.end()) return it->second;
    const Data a = types[s];
    const Data b = types[t];
    bool ok = std::includes(b.first.begin(), b.first.end(), a.first.begin(),
                            a.first.end());
    for (std::size_t i = 0; ok && i < a.second.size(); ++i) {
      bool hit = false;
      for (const auto& kb : b.second)
        if (kb.first == a.second[i].first && le(a.second[i].second, kb.second)) {
          hit = true;
          break;
        }
      ok = hit;
    }
    le_memo[key] = ok;
    return ok;
  }
};

// Keeps the <=-minimal (or maximal) members. Canonical types dominate each
// other both ways only when identical, so strictness needs no tie-break.
std::vector<int> reduce_types(TypePool& pool, std::vector<int> v,
                              bool keep_minimal) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; !dominated && j < v.size(); ++j) {
      if (i == j) continue;
      dominated = keep_minimal
                      ? pool.le(v[j], v[i]) && !pool.le(v[i], v[j])
                      : pool.le(v[i], v[j]) && !pool.le(v[j], v[i]);
    }
    if (!dominated) out.push_back(v[i]);
  }
  return out;
}

// Canonical form: sorted atoms, kids reduced to the maximal antichain per
// role (a dominated sibling adds an implied conjunct only).
int make_type(TypePool& pool, std::vector<std::string> atoms,
              const std::map<std::string, std::vector<int>>& kids) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  TypePool::Data d;
  d.first = std::move(atoms);
  for (const auto& k : kids) {
    std::vector<int> anti = reduce_types(pool, k.second, false);
    std::sort(anti.begin(), anti.end());
    for (int t : anti) d.second.emplace_back(k.first, t);
  }
  return pool.intern(d);
}

ConceptPtr type_concept(TypePool& pool, const Frame& f, int t) {
  const auto it = pool.concept_memo.find(t);
  if (it != pool.concept_memo.end()) return it->second;
  const TypePool::Data data = pool.types[t];
  std::vector<ConceptPtr> parts;
  for (const std::string& a : data.first) parts.push_back(f.atom_concept(a));
  for (const auto& k : data.second)
    parts.push_back(
        exists(Role::direct(k.first), 1, type_concept(pool, f, k.second)));
  const ConceptPtr c = conj(std::move(parts));
  pool.concept_memo[t] = c;
  return c;
}

// One blocked element's ways to fail: a missing atom, or a role with a
// minimal type no successor admits.
struct Witness {
  std::string atom;
  std::string role;
  int type = -1;
};

constexpr std::size_t kAssemblyCap = 100000;

// Minimal level-k types that simulate into no member of W. Each candidate
// assembles one witness per member; the product is then reduced to the
// minimal antichain, which is complete: lowering the parts of any minimal
// excluded type to per-member minimal witnesses reproduces it.
std::vector<int> min_excluded(
    TypePool& pool, const Frame& f, int k, std::vector<int> W,
    std::map<std::pair<int, std::vector<int>>, std::vector<int>>& memo) {
  std::sort(W.begin(), W.end());
  W.erase(std::unique(W.begin(), W.end()), W.end());
  const auto key = std::make_pair(k, W);
  const auto hit = memo.find(key);
  if (hit != memo.end()) return hit->second;

  std::vector<int> out;
  if (W.empty()) {
    // every type misses an empty member set, so the least one is top
    out.push_back(make_type(pool, {}, {}));
  } else if (k == 0) {
    std::vector<std::string> covered;
    for (int w : W)
      covered.insert(covered.end(), f.atoms[w].begin(), f.atoms[w].end());
    std::sort(covered.begin(), covered.end());
    for (const std::string& a : f.alphabet)
      if (!std::binary_search(covered.begin(), covered.end(), a))
        out.push_back(make_type(pool, {a}, {}));
  } else {
    std::vector<std::vector<Witness>> options;
    bool blockable = true;
    for (int w : W) {
      std::vector<Witness> ws;
      for (const std::string& a : f.alphabet)
        if (!f.carries(w, a)) ws.push_back({a, "", -1});
      for (std::size_t r = 0; r < f.roles.size(); ++r) {
        std::vector<int> wsucc = f.succ(r, w);
        for (int t : min_excluded(pool, f, k - 1, std::move(wsucc), memo))
          ws.push_back({"", f.roles[r], t});
      }
      if (ws.empty()) {
        blockable = false;
        break;
      }
      options.push_back(std::move(ws));
    }
    if (blockable) {
      struct Assembly {
        std::vector<std::string> atoms;
        std::map<std::string, std::vector<int>> kids;
      };
      std::vector<Assembly> acc(1);
      for (const auto& ws : options) {
        if (acc.size() * ws.size() > kAssemblyCap)
          throw ResourceError("characteristic type assembly exceeds cap");
        std::vector<Assembly> next;
        next.reserve(acc.size() * ws.size());
        for (const Assembly& a : acc)
          for (const Witness& w : ws) {
            Assembly b = a;
            if (w.type < 0)
              b.atoms.push_back(w.atom);
            else
              b.kids[w.role].push_back(w.type);
            next.push_back(std::move(b));
          }
        acc = std::move(next);
      }
      std::set<int> distinct;
      for (const Assembly& a : acc)
        distinct.insert(make_type(pool, a.atoms, a.kids));
      out = reduce_types(pool, {distinct.begin(), distinct.end()}, true);
    }
  }
  memo[key] = out;
  return out;
}

// Z^n: the EL characteristic conjoined with the negations of the minimal
// non-simulating types. A target satisfies it exactly when it simulates the
// element and is simulated back.
std::vector<ConceptPtr> elneg_levels(const Frame& f, int n) {
  const std::vector<ConceptPtr> positive =
      char_levels(f, CharDialect::El, n, 0);
  TypePool pool;
  std::map<std::pair<int, std::vector<int>>, std::vector<int>> memo;
  std::vector<ConceptPtr> out(f.I.size());
  for (int d = 0; d < f.I.size(); ++d) {
    std::vector<ConceptPtr> parts{positive[d]};
    for (int t : min_excluded(pool, f, n, {d}, memo))
      parts.push_back(neg(type_concept(pool, f, t)));
    out[d] = conj(std::move(parts));
  }
  return out;
}

// ── Global assembly ──────────────────────────────────────────────────────────

// some u . top and all u . top are tautologies; dropping them keeps the
// degenerate characteristics canonical.
void push_unless_trivial(std::vector<ConceptPtr>& parts, ConceptPtr c) {
  if ((c->op == Ctor::Exists || c->op == Ctor::Forall) && c->bound == 1 &&
      c->role.is_universal() && c->kid() == top())
    return;
  parts.push_back(c);
}

ConceptPtr global_concept(const Frame& f, const CharRequest& req) {
  std::vector<ConceptPtr> chars;
  switch (req.scope) {
    case CharScope::GlobalAlcu:
      chars = char_levels(f, CharDialect::Alc, req.level, 0);
      break;
    case CharScope::GlobalAlciu:
      chars = char_levels(f, CharDialect::Alci, req.level, 0);
      break;
    case CharScope::GlobalAlcqu:
    case CharScope::GlobalAlcqu1:
      chars = char_levels(f, CharDialect::Alcq, req.level, req.kappa);
      break;
    case CharScope::GlobalEluneg:
      chars = elneg_levels(f, req.level);
      break;
    case CharScope::Pointed:
      throw std::logic_error("pointed scope in global assembly");
  }
  const Role u = Role::universal();
  std::vector<ConceptPtr> parts;
  if (req.scope == CharScope::GlobalAlcqu) {
    // Graded universal role: pin how often each characteristic is realized,
    // exactly below the cap and ">= kappa" at it.
    std::map<ConceptPtr, uint32_t> groups;
    for (ConceptPtr c : chars) ++groups[c];
    for (const auto& g : groups) {
      if (g.second < req.kappa) {
        push_unless_trivial(parts, exists(u, g.second, g.first));
        parts.push_back(neg(exists(u, g.second + 1, g.first)));
      } else {
        push_unless_trivial(parts, exists(u, req.kappa, g.first));
      }
    }
  } else {
    for (ConceptPtr c : chars) push_unless_trivial(parts, exists(u, 1, c));
  }
  push_unless_trivial(parts, forall(u, 1, disj(std::move(chars))));
  return conj(std::move(parts));
}

RelationKind kind_of(CharDialect dia) {
  switch (dia) {
    case CharDialect::Alc:
      return RelationKind::AlcBisim;
    case CharDialect::Alci:
      return RelationKind::AlciBisim;
    case CharDialect::Alcq:
      return RelationKind::AlcqBisim;
    case CharDialect::El:
      return RelationKind::ElSim;
    case CharDialect::ElNeg:
      return RelationKind::EquiSim;
  }
  throw std::logic_error("unknown dialect");
}

// The relation side of the round trip must see exactly the requested
// symbols, so out-of-signature labels, edges, and individuals are stripped.
Interpretation restrict_to_signature(const Interpretation& I,
                                     const Signature& sig) {
  Interpretation out;
  for (int e = 0; e < I.size(); ++e) out.add_element(I.id(e));
  for (int e = 0; e < I.size(); ++e)
    for (const std::string& a : I.labels(e))
      if (sig.has_concept(a)) out.add_label(I.id(e), a);
  for (const std::string& r : I.role_names()) {
    if (!sig.has_role(r)) continue;
    for (int e = 0; e < I.size(); ++e)
      for (int t : I.successors(r, e)) out.add_edge(r, I.id(e), I.id(t));
  }
  for (const auto& ind : I.individuals())
    if (sig.has_individual(ind.first) && I.individual(ind.first) >= 0)
      out.assign(ind.first, ind.second);
  return out;
}

void validate_request(const CharRequest& req, const Interpretation& I,
                      int element) {
  if (req.level < 0) throw std::invalid_argument("negative level");
  if (req.level > kCharLevelCap)
    throw ResourceError("characteristic level " + std::to_string(req.level) +
                        " exceeds cap " + std::to_string(kCharLevelCap));
  const bool pointed = req.scope == CharScope::Pointed;
  if (pointed && (element < 0 || element >= I.size()))
    throw std::invalid_argument("element out of range");
  if (!pointed && element != -1)
    throw std::invalid_argument("global characteristic takes no element");
  CharDialect want = req.dialect;
  switch (req.scope) {
    case CharScope::Pointed:
      break;
    case CharScope::GlobalAlcu:
      want = CharDialect::Alc;
      break;
    case CharScope::GlobalAlciu:
      want = CharDialect::Alci;
      break;
    case CharScope::GlobalAlcqu:
    case CharScope::GlobalAlcqu1:
      want = CharDialect::Alcq;
      break;
    case CharScope::GlobalEluneg:
      want = CharDialect::ElNeg;
      break;
  }
  if (want != req.dialect)
    throw std::invalid_argument("scope does not match dialect");
  if (req.dialect == CharDialect::Alcq && req.kappa == 0)
    throw std::invalid_argument("counting characteristics require kappa >= 1");
}

}  // namespace

// ── Public surface ───────────────────────────────────────────────────────────

ConceptPtr characteristic(const CharRequest& req, const Interpretation& I,
                          int element) {
  validate_request(req, I, element);
  const Frame f(req.sig, I);
  if (req.scope != CharScope::Pointed) return global_concept(f, req);
  if (req.dialect == CharDialect::ElNeg)
    return elneg_levels(f, req.level)[element];
  return char_levels(f, req.dialect, req.level, req.kappa)[element];
}

std::vector<bool> char_round_trip_check(const CharRequest& req,
                                        const Interpretation& I, int element,
                                        const Interpretation& H) {
  if (req.scope != CharScope::Pointed)
    throw std::invalid_argument("round trip checks pointed characteristics");
  const ConceptPtr X = characteristic(req, I, element);
  const Interpretation ri = restrict_to_signature(I, req.sig);
  const Interpretation rh = restrict_to_signature(H, req.sig);
  const RelationTable table = stratified_relation(
      kind_of(req.dialect), req.level, req.kappa, ri, rh);
  const ElementSet ext = extension(H, X);
  std::vector<bool> out(H.size());
  for (int e = 0; e < H.size(); ++e) {
    const bool satisfied = std::binary_search(ext.begin(), ext.end(), e);
    out[e] = satisfied == table.related(req.level, element, e);
  }
  return out;
}

PointedInterpretation el_minimal_model(ConceptPtr X, const Signature& sig) {
  Interpretation M;
  int counter = 0;
  const std::function<std::string(ConceptPtr)> build =
      [&](ConceptPtr c) -> std::string {
    const std::string me = "m" + std::to_string(counter++);
    M.add_element(me);
    const std::vector<ConceptPtr> parts =
        c->op == Ctor::And ? c->kids : std::vector<ConceptPtr>{c};
    for (ConceptPtr p : parts) {
      switch (p->op) {
        case Ctor::Top:
          break;
        case Ctor::Name:
          if (!sig.has_concept(p->name))
            throw std::invalid_argument("concept name outside signature: " +
                                        p->name);
          M.add_label(me, p->name);
          break;
        case Ctor::Exists: {
          if (p->role.kind != RoleKind::Direct || p->bound != 1)
            throw std::invalid_argument(
                "not an EL characteristic shape: " + render(p));
          if (!sig.has_role(p->role.name))
            throw std::invalid_argument("role name outside signature: " +
                                        p->role.name);
          const std::string child = build(p->kid());
          M.add_edge(p->role.name, me, child);
          break;
        }
        default:
          throw std::invalid_argument("not an EL characteristic shape: " +
                                      render(p));
      }
    }
    return me;
  };
  build(X);
  PointedInterpretation out;
  out.interpretation = std::move(M);
  out.point = 0;
  return out;
}

}  // namespace dlkit

// ============================================================================
//  games.cpp -- refinement kernels for the five relation families, global
//  verdicts, and distinguishing-concept extraction
// ============================================================================
#include "dlkit/games.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dlkit/characteristic.hpp"

namespace dlkit {
namespace {

// ── Joint arena ──────────────────────────────────────────────────────────────
//
// Both structures live in one index space: 0..nI-1 is the source, nI..n-1
// the target. Relations are computed over the whole space and the table
// keeps the cross pairs. Atoms are label names plus assigned individual
// names; the role alphabet is the union of both edge alphabets, so a role
// present on one side only still generates (empty) successor lists.
struct Kernel {
  int nI = 0;
  int nH = 0;
  int n = 0;
  std::vector<std::vector<std::string>> atoms;      // per element, sorted
  std::vector<std::string> roles;                   // sorted union
  std::vector<std::vector<std::vector<int>>> succ;  // [role][element]
  std::vector<std::vector<std::vector<int>>> pred;
};

Kernel build_kernel(const Interpretation& I, const Interpretation& H) {
  Kernel k;
  k.nI = I.size();
  k.nH = H.size();
  k.n = k.nI + k.nH;
  k.atoms.resize(k.n);
  const Interpretation* part[2] = {&I, &H};
  const int off[2] = {0, k.nI};
  std::set<std::string> roles;
  for (int p = 0; p < 2; ++p)
    for (const std::string& r : part[p]->role_names()) roles.insert(r);
  k.roles.assign(roles.begin(), roles.end());
  for (int p = 0; p < 2; ++p) {
    const Interpretation& J = *part[p];
    for (int e = 0; e < J.size(); ++e) k.atoms[off[p] + e] = J.labels(e);
    for (const auto& ind : J.individuals()) {
      const int e = J.individual(ind.first);
      if (e >= 0) k.atoms[off[p] + e].push_back(ind.first);
    }
  }
  for (auto& a : k.atoms) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  k.succ.assign(k.roles.size(), {});
  k.pred.assign(k.roles.size(), {});
  for (std::size_t r = 0; r < k.roles.size(); ++r) {
    k.succ[r].assign(k.n, {});
    k.pred[r].assign(k.n, {});
    for (int p = 0; p < 2; ++p) {
      const Interpretation& J = *part[p];
      for (int e = 0; e < J.size(); ++e) {
        for (int t : J.successors(k.roles[r], e))
          k.succ[r][off[p] + e].push_back(off[p] + t);
        for (int t : J.predecessors(k.roles[r], e))
          k.pred[r][off[p] + e].push_back(off[p] + t);
      }
    }
  }
  return k;
}

// Relation matrix over the joint index space, row-major.
using Mat = std::vector<char>;

inline std::size_t at(int n, int x, int y) {
  return static_cast<std::size_t>(x) * n + y;
}

// EquiSim is computed on the directional ElSim matrix; a pair is
// equisimilar when the matrix holds in both orientations.
bool directional(RelationKind kind) {
  return kind == RelationKind::ElSim || kind == RelationKind::EquiSim;
}

Mat atom_relation(const Kernel& k, RelationKind kind) {
  const bool contain = directional(kind);
  Mat z(static_cast<std::size_t>(k.n) * k.n, 0);
  for (int x = 0; x < k.n; ++x)
    for (int y = 0; y < k.n; ++y) {
      const bool ok =
          contain ? std::includes(k.atoms[y].begin(), k.atoms[y].end(),
                                  k.atoms[x].begin(), k.atoms[x].end())
                  : k.atoms[x] == k.atoms[y];
      z[at(k.n, x, y)] = ok ? 1 : 0;
    }
  return z;
}

// Every xs member is related to some ys member.
bool forth(const Mat& z, int n, const std::vector<int>& xs,
           const std::vector<int>& ys) {
  for (int xp : xs) {
    bool hit = false;
    for (int yp : ys)
      if (z[at(n, xp, yp)]) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

// Every ys member has a related xs member (relation read left-to-right).
bool back(const Mat& z, int n, const std::vector<int>& xs,
          const std::vector<int>& ys) {
  for (int yp : ys) {
    bool hit = false;
    for (int xp : xs)
      if (z[at(n, xp, yp)]) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

uint32_t class_count(const Mat& z, int n, int rep, const std::vector<int>& v,
                     uint32_t kappa) {
  uint32_t c = 0;
  for (int w : v)
    if (z[at(n, rep, w)]) ++c;
  return kappa != 0 && c > kappa ? kappa : c;
}

// Successor counts per class of the previous round, compared capped. Reps
// are drawn from both successor lists, so a class missing on either side
// shows up as a 0 count.
bool counts_agree(const Mat& z, int n, const std::vector<int>& xs,
                  const std::vector<int>& ys, uint32_t kappa) {
  for (int rep : xs)
    if (class_count(z, n, rep, xs, kappa) != class_count(z, n, rep, ys, kappa))
      return false;
  for (int rep : ys)
    if (class_count(z, n, rep, xs, kappa) != class_count(z, n, rep, ys, kappa))
      return false;
  return true;
}

Mat refine(const Kernel& k, RelationKind kind, const Mat& prev,
           uint32_t kappa) {
  Mat next = prev;
  for (int x = 0; x < k.n; ++x)
    for (int y = 0; y < k.n; ++y) {
      if (!prev[at(k.n, x, y)]) continue;
      bool keep = true;
      for (std::size_t r = 0; keep && r < k.roles.size(); ++r) {
        const std::vector<int>& sx = k.succ[r][x];
        const std::vector<int>& sy = k.succ[r][y];
        switch (kind) {
          case RelationKind::ElSim:
          case RelationKind::EquiSim:
            keep = forth(prev, k.n, sx, sy);
            break;
          case RelationKind::AlcBisim:
            keep = forth(prev, k.n, sx, sy) && back(prev, k.n, sx, sy);
            break;
          case RelationKind::AlciBisim:
            keep = forth(prev, k.n, sx, sy) && back(prev, k.n, sx, sy) &&
                   forth(prev, k.n, k.pred[r][x], k.pred[r][y]) &&
                   back(prev, k.n, k.pred[r][x], k.pred[r][y]);
            break;
          case RelationKind::AlcqBisim:
            keep = counts_agree(prev, k.n, sx, sy, kappa);
            break;
        }
      }
      if (!keep) next[at(k.n, x, y)] = 0;
    }
  return next;
}

// Levels 0..rounds, or 0..stable when rounds < 0 (the repeated matrix is
// not stored, so the last entry is the fixpoint).
std::vector<Mat> run_levels(const Kernel& k, RelationKind kind, int rounds,
                            uint32_t kappa) {
  std::vector<Mat> out;
  out.push_back(atom_relation(k, kind));
  for (int i = 0; rounds < 0 || i < rounds; ++i) {
    Mat next = refine(k, kind, out.back(), kappa);
    if (rounds < 0 && next == out.back()) break;
    out.push_back(std::move(next));
  }
  return out;
}

bool cross_related(const Mat& z, const Kernel& k, RelationKind kind, int i,
                   int j) {
  const int x = i;
  const int y = k.nI + j;
  if (!z[at(k.n, x, y)]) return false;
  return kind != RelationKind::EquiSim || z[at(k.n, y, x)] != 0;
}

RelationTable make_table(const Kernel& k, const Interpretation& I,
                         const Interpretation& H, RelationKind kind,
                         uint32_t kappa, bool fixpoint,
                         const std::vector<Mat>& mats) {
  RelationTable tab;
  tab.kind = kind;
  tab.kappa = kappa;
  tab.fixpoint = fixpoint;
  tab.source_ids = I.elements();
  tab.target_ids = H.elements();
  std::vector<std::pair<int, int>> order;
  order.reserve(static_cast<std::size_t>(k.nI) * k.nH);
  for (int i = 0; i < k.nI; ++i)
    for (int j = 0; j < k.nH; ++j) order.emplace_back(i, j);
  std::sort(order.begin(), order.end(),
            [&](const std::pair<int, int>& a, const std::pair<int, int>& b) {
              if (I.id(a.first) != I.id(b.first))
                return I.id(a.first) < I.id(b.first);
              return H.id(a.second) < H.id(b.second);
            });
  tab.levels.reserve(mats.size());
  for (const Mat& z : mats) {
    std::vector<std::pair<int, int>> level;
    for (const auto& p : order)
      if (cross_related(z, k, kind, p.first, p.second)) level.push_back(p);
    tab.levels.push_back(std::move(level));
  }
  return tab;
}

CharDialect dialect_of(RelationKind kind) {
  switch (kind) {
    case RelationKind::AlcBisim:
      return CharDialect::Alc;
    case RelationKind::AlciBisim:
      return CharDialect::Alci;
    case RelationKind::AlcqBisim:
      return CharDialect::Alcq;
    case RelationKind::ElSim:
      return CharDialect::El;
    case RelationKind::EquiSim:
      return CharDialect::ElNeg;
  }
  throw std::logic_error("unknown relation kind");
}

}  // namespace

// ── RelationTable ────────────────────────────────────────────────────────────

const std::vector<std::pair<int, int>>& RelationTable::last() const {
  if (levels.empty()) throw std::logic_error("empty relation table");
  return levels.back();
}

bool RelationTable::related(int level, int source_index,
                            int target_index) const {
  const auto& set = levels.at(level);
  return std::find(set.begin(), set.end(),
                   std::make_pair(source_index, target_index)) != set.end();
}

std::string RelationTable::render() const {
  std::ostringstream out;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (fixpoint && k + 1 == levels.size())
      out << "fixpoint:";
    else
      out << "level " << k << ":";
    for (const auto& p : levels[k])
      out << " (" << source_ids.at(p.first) << "," << target_ids.at(p.second)
          << ")";
    out << "\n";
  }
  return out.str();
}

const char* to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::AlcBisim:
      return "alc-bisim";
    case RelationKind::AlciBisim:
      return "alci-bisim";
    case RelationKind::AlcqBisim:
      return "alcq-bisim";
    case RelationKind::ElSim:
      return "el-sim";
    case RelationKind::EquiSim:
      return "equi-sim";
  }
  return "?";
}

RelationKind relation_kind_from_string(const std::string& text) {
  if (text == "alc-bisim") return RelationKind::AlcBisim;
  if (text == "alci-bisim") return RelationKind::AlciBisim;
  if (text == "alcq-bisim") return RelationKind::AlcqBisim;
  if (text == "el-sim") return RelationKind::ElSim;
  if (text == "equi-sim") return RelationKind::EquiSim;
  throw std::invalid_argument("unknown relation kind: " + text);
}

// ── Relation computation ─────────────────────────────────────────────────────

RelationTable greatest_relation(RelationKind kind, const Interpretation& I,
                                const Interpretation& H) {
  const Kernel k = build_kernel(I, H);
  const std::vector<Mat> mats = run_levels(k, kind, -1, 0);
  return make_table(k, I, H, kind, 0, true, mats);
}

RelationTable stratified_relation(RelationKind kind, int n, uint32_t kappa,
                                  const Interpretation& I,
                                  const Interpretation& H) {
  if (n < 0) throw std::invalid_argument("negative level bound");
  if (kind == RelationKind::AlcqBisim && kappa == 0)
    throw std::invalid_argument("alcq-bisim requires kappa >= 1");
  if (kind != RelationKind::AlcqBisim) kappa = 0;
  const Kernel k = build_kernel(I, H);
  const std::vector<Mat> mats = run_levels(k, kind, n, kappa);
  return make_table(k, I, H, kind, kappa, false, mats);
}

// ── Global relatedness ───────────────────────────────────────────────────────

GlobalCheck global_related(RelationKind kind, const Interpretation& I,
                           const Interpretation& H) {
  const Kernel k = build_kernel(I, H);
  const std::vector<Mat> mats = run_levels(k, kind, -1, 0);
  const Mat& z = mats.back();
  GlobalCheck g;
  std::vector<char> covered_source(k.nI, 0);
  std::vector<char> covered_target(k.nH, 0);
  for (int i = 0; i < k.nI; ++i)
    for (int j = 0; j < k.nH; ++j)
      if (cross_related(z, k, kind, i, j)) {
        covered_source[i] = 1;
        covered_target[j] = 1;
      }
  for (int i = 0; i < k.nI; ++i)
    if (!covered_source[i]) g.uncovered_source.push_back(i);
  for (int j = 0; j < k.nH; ++j)
    if (!covered_target[j]) g.uncovered_target.push_back(j);
  if (kind == RelationKind::AlcqBisim) {
    // Counting makes totality insufficient: each equivalence class must
    // have the same cardinality on both sides. Mismatched classes report
    // their larger side.
    std::vector<char> seen(k.n, 0);
    for (int x = 0; x < k.n; ++x) {
      if (seen[x]) continue;
      std::vector<int> members;
      int in_source = 0;
      int in_target = 0;
      for (int y = 0; y < k.n; ++y)
        if (z[at(k.n, x, y)]) {
          seen[y] = 1;
          members.push_back(y);
          ++(y < k.nI ? in_source : in_target);
        }
      if (in_source == in_target) continue;
      for (int y : members) {
        if (in_source > in_target && y < k.nI) g.uncovered_source.push_back(y);
        if (in_target > in_source && y >= k.nI)
          g.uncovered_target.push_back(y - k.nI);
      }
    }
    auto tidy = [](std::vector<int>& v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    tidy(g.uncovered_source);
    tidy(g.uncovered_target);
  }
  g.related = g.uncovered_source.empty() && g.uncovered_target.empty();
  return g;
}

// ── Distinguishing concepts ──────────────────────────────────────────────────

Distinguish distinguish(RelationKind kind, const PointedInterpretation& source,
                        const PointedInterpretation& target, int max_n,
                        uint32_t kappa) {
  const Interpretation& I = source.interpretation;
  const Interpretation& H = target.interpretation;
  if (max_n < 0) throw std::invalid_argument("negative level bound");
  if (kind == RelationKind::AlcqBisim && kappa == 0)
    throw std::invalid_argument("alcq-bisim requires kappa >= 1");
  if (kind != RelationKind::AlcqBisim) kappa = 0;
  if (source.point < 0 || source.point >= I.size() || target.point < 0 ||
      target.point >= H.size())
    throw std::invalid_argument("point out of range");

  const Kernel k = build_kernel(I, H);
  const std::vector<Mat> mats = run_levels(k, kind, max_n, kappa);
  const int d = source.point;
  const int e = k.nI + target.point;

  int least = -1;
  for (std::size_t lev = 0; lev < mats.size(); ++lev) {
    const bool rel =
        kind == RelationKind::EquiSim
            ? mats[lev][at(k.n, d, e)] && mats[lev][at(k.n, e, d)]
            : mats[lev][at(k.n, d, e)] != 0;
    if (!rel) {
      least = static_cast<int>(lev);
      break;
    }
  }
  if (least < 0) return {};

  Signature sig = I.signature();
  sig.merge(H.signature());
  // Characteristic of a joint-arena element at a given level, in the
  // dialect the separating clauses are drawn from.
  auto charac = [&](CharDialect dialect, int level, int x) {
    CharRequest rq;
    rq.dialect = dialect;
    rq.scope = CharScope::Pointed;
    rq.level = level;
    rq.kappa = kappa;
    rq.sig = sig;
    return x < k.nI ? characteristic(rq, I, x)
                    : characteristic(rq, H, x - k.nI);
  };

  std::set<ConceptPtr> cands;
  const CharDialect dia = dialect_of(kind);
  if (least == 0) {
    if (kind == RelationKind::EquiSim) {
      // Whichever simulation direction broke supplies the clause; the
      // backward direction is phrased as a negated atom characteristic.
      const Mat& z0 = mats[0];
      if (!z0[at(k.n, d, e)]) cands.insert(charac(CharDialect::El, 0, d));
      if (!z0[at(k.n, e, d)]) cands.insert(neg(charac(CharDialect::El, 0, e)));
    } else {
      cands.insert(charac(dia, 0, d));
    }
  } else {
    const Mat& prev = mats[least - 1];
    for (std::size_t r = 0; r < k.roles.size(); ++r) {
      const Role direct = Role::direct(k.roles[r]);
      const std::vector<int>& sx = k.succ[r][d];
      const std::vector<int>& sy = k.succ[r][e];
      // A source successor no target successor matches: its existential
      // clause fails at the target.
      auto forth_clauses = [&](CharDialect cd, const Role& ro,
                               const std::vector<int>& xs,
                               const std::vector<int>& ys) {
        for (int dp : xs) {
          bool hit = false;
          for (int ep : ys)
            if (prev[at(k.n, dp, ep)]) {
              hit = true;
              break;
            }
          if (hit) continue;
          cands.insert(exists(ro, 1, charac(cd, least - 1, dp)));
        }
      };
      // An unmatched target successor: the value restriction over the
      // source's successor characteristics fails at the target.
      auto back_clause = [&](CharDialect cd, const Role& ro,
                             const std::vector<int>& xs,
                             const std::vector<int>& ys) {
        bool unmatched = false;
        for (int ep : ys) {
          bool hit = false;
          for (int dp : xs)
            if (prev[at(k.n, dp, ep)]) {
              hit = true;
              break;
            }
          if (!hit) {
            unmatched = true;
            break;
          }
        }
        if (!unmatched) return;
        std::vector<ConceptPtr> parts;
        for (int dp : xs) parts.push_back(charac(cd, least - 1, dp));
        cands.insert(forall(ro, 1, disj(std::move(parts))));
      };
      switch (kind) {
        case RelationKind::AlcBisim:
          forth_clauses(dia, direct, sx, sy);
          back_clause(dia, direct, sx, sy);
          break;
        case RelationKind::AlciBisim: {
          forth_clauses(dia, direct, sx, sy);
          back_clause(dia, direct, sx, sy);
          const Role inverse = Role::inverse(k.roles[r]);
          forth_clauses(dia, inverse, k.pred[r][d], k.pred[r][e]);
          back_clause(dia, inverse, k.pred[r][d], k.pred[r][e]);
          break;
        }
        case RelationKind::AlcqBisim: {
          // One representative per previous-round class occurring on
          // either side; a capped count mismatch yields a counting clause.
          std::vector<int> reps;
          auto add_rep = [&](int w) {
            for (int have : reps)
              if (prev[at(k.n, have, w)]) return;
            reps.push_back(w);
          };
          for (int w : sx) add_rep(w);
          for (int w : sy) add_rep(w);
          for (int rep : reps) {
            const uint32_t a = class_count(prev, k.n, rep, sx, kappa);
            const uint32_t b = class_count(prev, k.n, rep, sy, kappa);
            if (a == b) continue;
            const ConceptPtr X = charac(dia, least - 1, rep);
            if (a > b)
              cands.insert(exists(direct, a, X));
            else
              cands.insert(neg(exists(direct, a + 1, X)));
          }
          break;
        }
        case RelationKind::ElSim:
          forth_clauses(dia, direct, sx, sy);
          break;
        case RelationKind::EquiSim: {
          // Whichever simulation direction broke supplies clauses; a
          // backward failure is phrased as a negated existential.
          if (!forth(prev, k.n, sx, sy))
            forth_clauses(CharDialect::El, direct, sx, sy);
          if (!forth(prev, k.n, sy, sx)) {
            for (int ep : sy) {
              bool hit = false;
              for (int dp : sx)
                if (prev[at(k.n, ep, dp)]) {
                  hit = true;
                  break;
                }
              if (!hit)
                cands.insert(neg(
                    exists(direct, 1, charac(CharDialect::El, least - 1, ep))));
            }
          }
          break;
        }
      }
    }
  }

  ConceptPtr best = nullptr;
  for (ConceptPtr c : cands) {
    const ElementSet ext_source = extension(I, c);
    if (!std::binary_search(ext_source.begin(), ext_source.end(),
                            source.point))
      continue;
    const ElementSet ext_target = extension(H, c);
    if (std::binary_search(ext_target.begin(), ext_target.end(), target.point))
      continue;
    if (best == nullptr || render(c) < render(best)) best = c;
  }
  if (best == nullptr)
    throw std::logic_error("no verified separating clause at level " +
                           std::to_string(least));
  Distinguish out;
  out.separated = true;
  out.level = least;
  out.witness = best;
  return out;
}

}  // namespace dlkit

// ============================================================================
//  minimize.cpp -- minimal bisimilar companions
// ============================================================================
#include "dlkit/minimize.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "dlkit/games.hpp"
#include "dlkit/syntax.hpp"

namespace dlkit {

namespace {

// ── Partial unravelling paths ────────────────────────────────────────────────

// One path: letters are input element indices, roles[i] joins elems[i] to
// elems[i+1]. All letters are distinct except that the last may close a
// cycle; closing paths are leaves of the unravelling.
struct Path {
  std::vector<int> elems;
  std::vector<std::string> roles;
  int parent = -1;  // index of the one-shorter prefix, -1 for roots
  bool closing = false;
  int last() const { return elems.back(); }
};

// Lexicographic over the interleaved letter/role word; a prefix sorts first.
bool path_less(const Path& a, const Path& b) {
  std::size_t n = std::min(a.elems.size(), b.elems.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.elems[i] != b.elems[i]) return a.elems[i] < b.elems[i];
    bool more_a = i < a.roles.size(), more_b = i < b.roles.size();
    if (!more_a || !more_b) return more_b;
    if (a.roles[i] != b.roles[i]) return a.roles[i] < b.roles[i];
  }
  return false;
}

// Every path from every root, blocked one step after a letter repeats.
// Non-closing paths are expanded in table order, so prefixes precede their
// extensions and children of a surviving path are always present.
std::vector<Path> unravel_paths(const Interpretation& I, std::size_t cap) {
  std::vector<Path> table;
  std::vector<std::string> roles = I.role_names();
  for (int d = 0; d < I.size(); ++d) {
    Path p;
    p.elems = {d};
    table.push_back(std::move(p));
  }
  for (std::size_t head = 0; head < table.size(); ++head) {
    if (table[head].closing) continue;
    Path cur = table[head];  // copy, the table reallocates while growing
    for (const std::string& r : roles)
      for (int x : I.successors(r, cur.last())) {
        if (table.size() >= cap)
          throw ResourceError("partial unravelling exceeds the element cap of " +
                              std::to_string(cap));
        Path q = cur;
        q.elems.push_back(x);
        q.roles.push_back(r);
        q.parent = static_cast<int>(head);
        q.closing =
            std::find(cur.elems.begin(), cur.elems.end(), x) != cur.elems.end();
        table.push_back(std::move(q));
      }
  }
  return table;
}

// Index of the length-len prefix of path p, found through parent links.
int prefix_index(const std::vector<Path>& paths, int p, std::size_t len) {
  while (paths[p].elems.size() > len) p = paths[p].parent;
  return p;
}

// ── Bisimilarity classes ─────────────────────────────────────────────────────

// Representative (least partner) of each element under the kind's greatest
// auto-relation; the equivalence kinds make this a well defined class id.
std::vector<int> class_reps(RelationKind kind, const Interpretation& I) {
  RelationTable rel = greatest_relation(kind, I, I);
  std::vector<int> rep(I.size(), std::numeric_limits<int>::max());
  for (auto [a, b] : rel.last()) rep[a] = std::min(rep[a], b);
  return rep;
}

Interpretation alc_global_companion(const Interpretation& I) {
  std::vector<int> rep = class_reps(RelationKind::AlcBisim, I);
  std::map<int, ElementSet> by_rep;
  for (int d = 0; d < I.size(); ++d) by_rep[rep[d]].push_back(d);
  std::vector<ElementSet> classes;
  for (auto& [r, members] : by_rep) classes.push_back(members);
  return quotient(I, classes);
}

// ── Counting companions ──────────────────────────────────────────────────────

std::string path_note(const Interpretation& I, const Path& p) {
  std::string note = "path: " + I.id(p.elems[0]);
  for (std::size_t i = 0; i < p.roles.size(); ++i)
    note += " " + p.roles[i] + " " + I.id(p.elems[i + 1]);
  return note;
}

Interpretation counting_companion(const Interpretation& I, CompanionKind kind,
                                  std::size_t cap) {
  if (!I.individuals().empty())
    throw std::invalid_argument(
        "counting companions do not support individuals");

  std::vector<Path> paths = unravel_paths(I, cap);
  std::vector<int> type_of = class_reps(RelationKind::AlcqBisim, I);

  // successor-group classes per bisimilarity type: paths of the same type
  // that are same-role successors of a common predecessor; roots group per
  // type for Alcqu and stand alone for Alcqu1
  std::map<std::tuple<int, int, std::string>, std::vector<int>> groups;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const Path& p = paths[i];
    int t = type_of[p.last()];
    if (p.parent < 0) {
      int slot = kind == CompanionKind::Alcqu ? -1 : -2 - static_cast<int>(i);
      groups[{t, slot, ""}].push_back(static_cast<int>(i));
    } else {
      groups[{t, p.parent, p.roles.back()}].push_back(static_cast<int>(i));
    }
  }
  std::map<int, std::vector<std::vector<int>>> per_type;
  for (auto& [key, members] : groups) {
    std::sort(members.begin(), members.end(),
              [&](int a, int b) { return path_less(paths[a], paths[b]); });
    per_type[std::get<0>(key)].push_back(members);
  }

  // per type: keep the largest class (ties to the lexicographically least),
  // cut closing members back to the first occurrence of their last letter,
  // and redirect every other class injectively into the kept one
  std::vector<int> sigma(paths.size(), -1);
  std::vector<char> kept(paths.size(), 0);
  for (auto& [t, classes] : per_type) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < classes.size(); ++k)
      if (classes[k].size() > classes[best].size() ||
          (classes[k].size() == classes[best].size() &&
           path_less(paths[classes[k][0]], paths[classes[best][0]])))
        best = k;

    std::vector<int> c;
    for (int m : classes[best]) {
      if (!paths[m].closing) {
        c.push_back(m);
        continue;
      }
      // the prefix ending at the first occurrence is repeat free, keeps the
      // last letter, and is already in the table
      const Path& p = paths[m];
      std::size_t first =
          std::find(p.elems.begin(), p.elems.end(), p.last()) - p.elems.begin();
      c.push_back(prefix_index(paths, m, first + 1));
    }
    std::sort(c.begin(), c.end(),
              [&](int a, int b) { return path_less(paths[a], paths[b]); });
    std::set<int> c_set(c.begin(), c.end());
    for (int m : c) kept[m] = 1;

    for (auto& cls : classes) {
      std::set<int> cls_set(cls.begin(), cls.end());
      std::vector<int> domain, target;
      for (int m : cls)
        if (!c_set.count(m)) domain.push_back(m);
      for (int m : c)
        if (!cls_set.count(m)) target.push_back(m);
      // |cls| <= |c| makes the zip total on the domain
      for (std::size_t k = 0; k < domain.size(); ++k) sigma[domain[k]] = target[k];
    }
  }

  // children, for edge assembly over the surviving paths
  std::vector<std::vector<int>> children(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i)
    if (paths[i].parent >= 0) children[paths[i].parent].push_back(static_cast<int>(i));

  std::vector<int> survivors;
  for (std::size_t i = 0; i < paths.size(); ++i)
    if (kept[i]) survivors.push_back(static_cast<int>(i));
  std::sort(survivors.begin(), survivors.end(),
            [&](int a, int b) { return path_less(paths[a], paths[b]); });

  // surviving paths have pairwise distinct last letters, so input ids name
  // the output elements
  Interpretation out;
  for (int m : survivors) {
    const Path& p = paths[m];
    out.add_element(I.id(p.last()));
    for (const std::string& a : I.labels(p.last()))
      out.add_label(I.id(p.last()), a);
  }
  for (std::size_t i = 0; i < survivors.size(); ++i)
    out.set_note(static_cast<int>(i), path_note(I, paths[survivors[i]]));
  for (int m : survivors)
    for (int q : children[m]) {
      int to = sigma[q] >= 0 ? sigma[q] : q;
      out.add_edge(paths[q].roles.back(), I.id(paths[m].last()),
                   I.id(paths[to].last()));
    }
  return out;
}

}  // namespace

// ── Public surface ───────────────────────────────────────────────────────────

const char* to_string(CompanionKind kind) {
  switch (kind) {
    case CompanionKind::AlcGlobal: return "alc-global";
    case CompanionKind::Alcqu1: return "alcqu1";
    default: return "alcqu";
  }
}

CompanionKind companion_kind_from_string(const std::string& text) {
  if (text == "alc-global") return CompanionKind::AlcGlobal;
  if (text == "alcqu1") return CompanionKind::Alcqu1;
  if (text == "alcqu") return CompanionKind::Alcqu;
  throw std::invalid_argument("unknown companion kind: " + text);
}

Interpretation minimal_companion(const Interpretation& I, CompanionKind kind,
                                 std::size_t cap) {
  if (kind == CompanionKind::AlcGlobal) return alc_global_companion(I);
  return counting_companion(I, kind, cap);
}

}  // namespace dlkit

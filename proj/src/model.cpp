// ============================================================================
//  model.cpp -- finite interpretations, model checking, and the model
//  constructions
// ============================================================================
#include "dlkit/model.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace dlkit {

// ── Local helpers ───────────────────────────────────────────────────────────

namespace {

bool valid_element_id(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '#') return false;
  return true;
}

void check_element_id(const std::string& s) {
  if (!valid_element_id(s))
    throw std::invalid_argument("invalid element id '" + s + "'");
}

void check_name(const std::string& s, const char* category) {
  if (!valid_identifier(s))
    throw std::invalid_argument("invalid " + std::string(category) + " name '" +
                                s + "'");
}

// Insert into a sorted vector, keeping it duplicate free.
template <typename T>
bool sorted_insert(std::vector<T>& v, const T& x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) return false;
  v.insert(it, x);
  return true;
}

template <typename T>
bool sorted_contains(const std::vector<T>& v, const T& x) {
  return std::binary_search(v.begin(), v.end(), x);
}

}  // namespace

// ── Interpretation: construction ────────────────────────────────────────────

int Interpretation::add_element(const std::string& id) {
  check_element_id(id);
  auto it = index_.find(id);
  if (it != index_.end()) return it->second;
  int e = static_cast<int>(ids_.size());
  ids_.push_back(id);
  labels_.emplace_back();
  notes_.emplace_back();
  index_.emplace(id, e);
  for (auto& [role, g] : roles_) {
    g.succ.emplace_back();
    g.pred.emplace_back();
  }
  promote_dangling();
  return e;
}

void Interpretation::add_label(const std::string& id,
                               const std::string& concept_name) {
  check_name(concept_name, "concept");
  auto it = index_.find(id);
  if (it == index_.end()) {
    std::pair<std::string, std::string> rec{id, concept_name};
    if (std::find(dangling_.labels.begin(), dangling_.labels.end(), rec) ==
        dangling_.labels.end())
      dangling_.labels.push_back(rec);
    return;
  }
  sorted_insert(labels_[it->second], concept_name);
}

void Interpretation::add_edge(const std::string& role, const std::string& from,
                              const std::string& to) {
  check_name(role, "role");
  auto f = index_.find(from);
  auto t = index_.find(to);
  if (f == index_.end() || t == index_.end()) {
    std::pair<std::string, std::pair<std::string, std::string>> rec{
        role, {from, to}};
    if (std::find(dangling_.edges.begin(), dangling_.edges.end(), rec) ==
        dangling_.edges.end())
      dangling_.edges.push_back(rec);
    return;
  }
  auto it = roles_.find(role);
  if (it == roles_.end()) {
    it = roles_.emplace(role, RoleGraph{}).first;
    it->second.succ.resize(ids_.size());
    it->second.pred.resize(ids_.size());
  }
  if (sorted_insert(it->second.succ[f->second], t->second)) {
    sorted_insert(it->second.pred[t->second], f->second);
    ++it->second.edges;
  }
}

void Interpretation::assign(const std::string& individual,
                            const std::string& id) {
  check_name(individual, "individual");
  auto it = inds_.find(individual);
  if (it != inds_.end() && it->second != id)
    throw std::invalid_argument("individual '" + individual +
                                "' is already assigned to '" + it->second +
                                "'");
  inds_[individual] = id;
}

void Interpretation::set_note(int e, const std::string& note) {
  notes_.at(e) = note;
}

void Interpretation::promote_dangling() {
  auto labels = std::move(dangling_.labels);
  dangling_.labels.clear();
  for (auto& [id, name] : labels) add_label(id, name);
  auto edges = std::move(dangling_.edges);
  dangling_.edges.clear();
  for (auto& [role, ends] : edges) add_edge(role, ends.first, ends.second);
}

Interpretation::Interpretation(
    std::vector<std::string> ids, std::vector<std::vector<std::string>> labels,
    std::map<std::string, std::vector<std::pair<int, int>>> edges,
    std::map<std::string, std::string> individuals) {
  if (labels.size() != ids.size())
    throw std::invalid_argument("one label list per element required");
  int n = static_cast<int>(ids.size());
  for (int e = 0; e < n; ++e) {
    check_element_id(ids[e]);
    if (!index_.emplace(ids[e], e).second)
      throw std::invalid_argument("duplicate element id '" + ids[e] + "'");
  }
  ids_ = std::move(ids);
  notes_.resize(n);
  labels_.resize(n);
  for (int e = 0; e < n; ++e) {
    for (auto& name : labels[e]) {
      check_name(name, "concept");
      sorted_insert(labels_[e], name);
    }
  }
  for (auto& [role, pairs] : edges) {
    check_name(role, "role");
    RoleGraph g;
    g.succ.resize(n);
    g.pred.resize(n);
    for (auto [from, to] : pairs) {
      if (from < 0 || from >= n || to < 0 || to >= n)
        throw std::invalid_argument("edge endpoint out of range for role '" +
                                    role + "'");
      if (sorted_insert(g.succ[from], to)) {
        sorted_insert(g.pred[to], from);
        ++g.edges;
      }
    }
    roles_.emplace(role, std::move(g));
  }
  for (auto& [name, id] : individuals) {
    check_name(name, "individual");
    if (index_.find(id) == index_.end())
      throw std::invalid_argument("individual '" + name +
                                  "' assigned to unknown element '" + id + "'");
    inds_.emplace(name, id);
  }
}

// ── Interpretation: queries ─────────────────────────────────────────────────

int Interpretation::element(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

bool Interpretation::labeled(int e, const std::string& concept_name) const {
  return sorted_contains(labels_.at(e), concept_name);
}

std::vector<std::string> Interpretation::role_names() const {
  std::vector<std::string> out;
  for (auto& [role, g] : roles_)
    if (g.edges > 0) out.push_back(role);
  return out;
}

namespace {
const std::vector<int> kNoNeighbours;
}

const std::vector<int>& Interpretation::successors(const std::string& role,
                                                   int e) const {
  auto it = roles_.find(role);
  if (it == roles_.end()) {
    if (e < 0 || e >= size()) throw std::out_of_range("element out of range");
    return kNoNeighbours;
  }
  return it->second.succ.at(e);
}

const std::vector<int>& Interpretation::predecessors(const std::string& role,
                                                     int e) const {
  auto it = roles_.find(role);
  if (it == roles_.end()) {
    if (e < 0 || e >= size()) throw std::out_of_range("element out of range");
    return kNoNeighbours;
  }
  return it->second.pred.at(e);
}

bool Interpretation::edge(const std::string& role, int from, int to) const {
  return sorted_contains(successors(role, from), to);
}

std::size_t Interpretation::edge_count(const std::string& role) const {
  auto it = roles_.find(role);
  return it == roles_.end() ? 0 : it->second.edges;
}

int Interpretation::individual(const std::string& name) const {
  auto it = inds_.find(name);
  return it == inds_.end() ? -1 : element(it->second);
}

Signature Interpretation::signature() const {
  Signature sig;
  auto concept_name = [&](const std::string& n) {
    if (!sig.has_concept(n)) sig.declare_concept(n);
  };
  for (auto& ls : labels_)
    for (auto& n : ls) concept_name(n);
  for (auto& [id, n] : dangling_.labels) concept_name(n);
  for (auto& [r, g] : roles_)
    if (!sig.has_role(r)) sig.declare_role(r);
  for (auto& [r, ends] : dangling_.edges)
    if (!sig.has_role(r)) sig.declare_role(r);
  for (auto& [a, id] : inds_)
    if (!sig.has_individual(a)) sig.declare_individual(a);
  return sig;
}

// ── Interpretation: file format ─────────────────────────────────────────────

Interpretation Interpretation::parse(const std::string& text) {
  Interpretation out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string line = text.substr(
        pos, eol == std::string::npos ? std::string::npos : eol - pos);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);

    std::vector<std::pair<std::string, int>> tok;  // (token, 1-based column)
    for (std::size_t i = 0; i < line.size();) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() &&
             !std::isspace(static_cast<unsigned char>(line[j])))
        ++j;
      tok.emplace_back(line.substr(i, j - i), static_cast<int>(i) + 1);
      i = j;
    }
    if (!tok.empty()) {
      auto fail = [&](int t, const std::string& msg) -> void {
        int col = t < static_cast<int>(tok.size()) ? tok[t].second
                                                   : tok.back().second;
        throw ParseError(line_no, col, msg);
      };
      auto want = [&](std::size_t n) {
        if (tok.size() != n)
          fail(0, "directive '" + tok[0].first + "' takes " +
                      std::to_string(n - 1) + " arguments");
      };
      const std::string& head = tok[0].first;
      if (head == "elem") {
        want(2);
        if (!valid_element_id(tok[1].first))
          fail(1, "invalid element id '" + tok[1].first + "'");
        out.add_element(tok[1].first);
      } else if (head == "label") {
        want(3);
        if (out.element(tok[1].first) < 0)
          fail(1, "undeclared element '" + tok[1].first + "'");
        if (!valid_identifier(tok[2].first))
          fail(2, "invalid concept name '" + tok[2].first + "'");
        out.add_label(tok[1].first, tok[2].first);
      } else if (head == "edge") {
        want(4);
        if (!valid_identifier(tok[1].first))
          fail(1, "invalid role name '" + tok[1].first + "'");
        if (out.element(tok[2].first) < 0)
          fail(2, "undeclared element '" + tok[2].first + "'");
        if (out.element(tok[3].first) < 0)
          fail(3, "undeclared element '" + tok[3].first + "'");
        out.add_edge(tok[1].first, tok[2].first, tok[3].first);
      } else if (head == "ind") {
        want(3);
        if (!valid_identifier(tok[1].first))
          fail(1, "invalid individual name '" + tok[1].first + "'");
        if (out.element(tok[2].first) < 0)
          fail(2, "undeclared element '" + tok[2].first + "'");
        auto& inds = out.individuals();
        auto it = inds.find(tok[1].first);
        if (it != inds.end() && it->second != tok[2].first)
          fail(2, "individual '" + tok[1].first + "' is already assigned to '" +
                      it->second + "'");
        out.assign(tok[1].first, tok[2].first);
      } else {
        fail(0, "unknown directive '" + head + "'");
      }
    }
    if (eol == std::string::npos) break;
    pos = eol + 1;
  }
  return out;
}

std::string Interpretation::render() const {
  std::ostringstream os;
  for (int e = 0; e < size(); ++e) {
    os << "elem " << ids_[e];
    if (!notes_[e].empty()) os << " # " << notes_[e];
    os << "\n";
  }
  for (int e = 0; e < size(); ++e)
    for (auto& name : labels_[e]) os << "label " << ids_[e] << " " << name << "\n";
  for (auto& [role, g] : roles_)
    for (int from = 0; from < size(); ++from)
      for (int to : g.succ[from])
        os << "edge " << role << " " << ids_[from] << " " << ids_[to] << "\n";
  for (auto& [name, id] : inds_) os << "ind " << name << " " << id << "\n";
  for (auto& [id, name] : dangling_.labels)
    os << "# dangling label " << id << " " << name << "\n";
  for (auto& [role, ends] : dangling_.edges)
    os << "# dangling edge " << role << " " << ends.first << " " << ends.second
       << "\n";
  return os.str();
}

// ── validate ────────────────────────────────────────────────────────────────

std::vector<std::string> validate(const Interpretation& I, bool require_K,
                                  const Signature& sig) {
  std::vector<std::string> out;
  if (I.size() == 0) out.push_back("domain is empty");
  for (auto& [id, name] : I.dangling().labels)
    out.push_back("label " + name + ": element '" + id + "' undeclared");
  for (auto& [role, ends] : I.dangling().edges)
    out.push_back("edge " + role + ": element '" +
                  (I.element(ends.first) < 0 ? ends.first : ends.second) +
                  "' undeclared");
  for (auto& [name, id] : I.individuals())
    if (I.element(id) < 0)
      out.push_back("ind " + name + ": element '" + id + "' undeclared");

  std::set<std::string> seen;
  for (int e = 0; e < I.size(); ++e)
    for (auto& n : I.labels(e))
      if (!sig.has_concept(n) && seen.insert(n).second)
        out.push_back("concept name '" + n + "' not in signature");
  for (auto& r : I.role_names())
    if (!sig.has_role(r)) out.push_back("role name '" + r + "' not in signature");
  for (auto& [a, id] : I.individuals())
    if (!sig.has_individual(a))
      out.push_back("individual name '" + a + "' not in signature");

  if (require_K)
    for (auto& a : sig.individual_names)
      if (I.individual(a) < 0) out.push_back("individual " + a + " uninterpreted");
  return out;
}

// ── extension ───────────────────────────────────────────────────────────────

namespace {

using Mask = std::vector<char>;

int popcount(const Mask& m) {
  int c = 0;
  for (char b : m) c += b != 0;
  return c;
}

// Count how many of `out` satisfy `good` (at least `bound` stops early).
int bounded_count(const std::vector<int>& out, const Mask& good,
                  uint32_t bound) {
  int c = 0;
  for (int e : out) {
    if (good[e]) ++c;
    if (c >= static_cast<int>(bound)) break;
  }
  return c;
}

struct Evaluator {
  const Interpretation& I;
  std::unordered_map<ConceptPtr, Mask> memo;

  const Mask& eval(ConceptPtr c) {
    auto it = memo.find(c);
    if (it != memo.end()) return it->second;
    int n = I.size();
    Mask m(n, 0);
    switch (c->op) {
      case Ctor::Top:
        std::fill(m.begin(), m.end(), 1);
        break;
      case Ctor::Bot:
        break;
      case Ctor::Name:
        for (int e = 0; e < n; ++e) m[e] = I.labeled(e, c->name);
        break;
      case Ctor::Nominal: {
        int e = I.individual(c->name);
        if (e >= 0) m[e] = 1;
        break;
      }
      case Ctor::Not: {
        const Mask& k = eval(c->kid());
        for (int e = 0; e < n; ++e) m[e] = !k[e];
        break;
      }
      case Ctor::And: {
        std::fill(m.begin(), m.end(), 1);
        for (ConceptPtr kid : c->kids) {
          const Mask& k = eval(kid);
          for (int e = 0; e < n; ++e) m[e] = m[e] && k[e];
        }
        break;
      }
      case Ctor::Or: {
        for (ConceptPtr kid : c->kids) {
          const Mask& k = eval(kid);
          for (int e = 0; e < n; ++e) m[e] = m[e] || k[e];
        }
        break;
      }
      case Ctor::Exists: {
        const Mask& k = eval(c->kid());
        if (c->role.is_universal()) {
          // u means all pairs, so the count is |C| uniformly.
          char all = popcount(k) >= static_cast<int>(c->bound);
          std::fill(m.begin(), m.end(), all);
        } else {
          for (int e = 0; e < n; ++e) {
            const std::vector<int>& out = c->role.kind == RoleKind::Direct
                                              ? I.successors(c->role.name, e)
                                              : I.predecessors(c->role.name, e);
            m[e] = bounded_count(out, k, c->bound) >=
                   static_cast<int>(c->bound);
          }
        }
        break;
      }
      case Ctor::Forall: {
        // forall with bound k is the dual: fewer than k witnesses against C.
        const Mask& k = eval(c->kid());
        Mask bad(n, 0);
        for (int e = 0; e < n; ++e) bad[e] = !k[e];
        if (c->role.is_universal()) {
          char all = popcount(bad) < static_cast<int>(c->bound);
          std::fill(m.begin(), m.end(), all);
        } else {
          for (int e = 0; e < n; ++e) {
            const std::vector<int>& out = c->role.kind == RoleKind::Direct
                                              ? I.successors(c->role.name, e)
                                              : I.predecessors(c->role.name, e);
            m[e] = bounded_count(out, bad, c->bound) <
                   static_cast<int>(c->bound);
          }
        }
        break;
      }
    }
    return memo.emplace(c, std::move(m)).first->second;
  }
};

}  // namespace

ElementSet extension(const Interpretation& I, ConceptPtr c) {
  Evaluator ev{I, {}};
  const Mask& m = ev.eval(c);
  ElementSet out;
  for (int e = 0; e < I.size(); ++e)
    if (m[e]) out.push_back(e);
  return out;
}

SatCheck satisfies(const Interpretation& I, const TBox& t) {
  for (std::size_t i = 0; i < t.axioms.size(); ++i) {
    ElementSet lhs = extension(I, t.axioms[i].lhs);
    ElementSet rhs = extension(I, t.axioms[i].rhs);
    std::vector<int> diff;
    std::set_difference(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(),
                        std::back_inserter(diff));
    if (!diff.empty())
      return {false, static_cast<int>(i), diff.front()};
  }
  return {};
}

// ── disjoint union ──────────────────────────────────────────────────────────

Interpretation disjoint_union(const std::vector<Interpretation>& parts,
                              std::vector<std::string>* diagnostics) {
  if (parts.empty()) throw std::invalid_argument("disjoint union of nothing");
  if (parts.size() == 1) return parts[0];

  std::vector<std::string> ids;
  std::vector<std::vector<std::string>> labels;
  std::map<std::string, std::vector<std::pair<int, int>>> edges;
  std::vector<std::string> notes;
  int offset = 0;
  std::map<std::string, std::vector<std::string>> carriers;  // name -> tagged
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Interpretation& p = parts[i];
    std::string tag = std::to_string(i) + ":";
    for (int e = 0; e < p.size(); ++e) {
      ids.push_back(tag + p.id(e));
      labels.push_back(p.labels(e));
      notes.push_back(p.note(e));
    }
    for (auto& role : p.role_names())
      for (int from = 0; from < p.size(); ++from)
        for (int to : p.successors(role, from))
          edges[role].emplace_back(offset + from, offset + to);
    for (auto& [a, id] : p.individuals())
      if (p.element(id) >= 0) carriers[a].push_back(tag + id);
    offset += p.size();
  }

  std::map<std::string, std::string> inds;
  bool conflict = false;
  for (auto& [a, c] : carriers)
    if (c.size() > 1) conflict = true;
  if (conflict) {
    if (diagnostics)
      for (auto& [a, c] : carriers)
        if (c.size() > 1)
          diagnostics->push_back("individual '" + a +
                                 "' assigned in multiple parts; individual "
                                 "assignments dropped");
  } else {
    for (auto& [a, c] : carriers) inds[a] = c.front();
  }

  Interpretation out(std::move(ids), std::move(labels), std::move(edges),
                     std::move(inds));
  for (std::size_t e = 0; e < notes.size(); ++e)
    if (!notes[e].empty()) out.set_note(static_cast<int>(e), notes[e]);
  return out;
}

// ── direct product ──────────────────────────────────────────────────────────

namespace {

Interpretation product_build(const std::vector<Interpretation>& parts,
                             std::size_t cap) {
  if (parts.empty()) throw std::invalid_argument("direct product of nothing");
  std::size_t k = parts.size();
  std::size_t total = 1;
  for (auto& p : parts) {
    std::size_t s = static_cast<std::size_t>(p.size());
    if (s == 0) {
      total = 0;
      break;
    }
    if (total > cap / s)
      throw ResourceError("direct product exceeds the element cap of " +
                          std::to_string(cap));
    total *= s;
  }

  // digits: first component varies slowest
  std::vector<int> digit(k, 0);
  auto tuple_id = [&](const std::vector<int>& dg) {
    std::string id = parts[0].id(dg[0]);
    for (std::size_t i = 1; i < k; ++i) id += "," + parts[i].id(dg[i]);
    return id;
  };
  auto advance = [&](std::vector<int>& dg) {
    for (std::size_t i = k; i-- > 0;) {
      if (++dg[i] < parts[i].size()) return true;
      dg[i] = 0;
    }
    return false;
  };
  auto index_of = [&](const std::vector<int>& dg) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < k; ++i)
      idx = idx * static_cast<std::size_t>(parts[i].size()) +
            static_cast<std::size_t>(dg[i]);
    return idx;
  };

  std::vector<std::string> ids;
  std::vector<std::vector<std::string>> labels;
  ids.reserve(total);
  labels.reserve(total);
  if (total > 0) do {
      ids.push_back(tuple_id(digit));
      std::vector<std::string> common = parts[0].labels(digit[0]);
      for (std::size_t i = 1; i < k && !common.empty(); ++i) {
        std::vector<std::string> next;
        for (auto& n : common)
          if (parts[i].labeled(digit[i], n)) next.push_back(n);
        common = std::move(next);
      }
      labels.push_back(std::move(common));
    } while (advance(digit));

  // roles present in every part
  std::vector<std::string> roles = parts[0].role_names();
  for (std::size_t i = 1; i < k; ++i) {
    std::vector<std::string> there = parts[i].role_names();
    std::vector<std::string> keep;
    std::set_intersection(roles.begin(), roles.end(), there.begin(),
                          there.end(), std::back_inserter(keep));
    roles = std::move(keep);
  }

  std::size_t edge_cap = 16 * cap;
  std::size_t edge_total = 0;
  std::map<std::string, std::vector<std::pair<int, int>>> edges;
  std::fill(digit.begin(), digit.end(), 0);
  if (total > 0) do {
      std::size_t from = index_of(digit);
      for (auto& role : roles) {
        // odometer over the componentwise successor lists
        std::vector<const std::vector<int>*> out(k);
        bool empty = false;
        for (std::size_t i = 0; i < k; ++i) {
          out[i] = &parts[i].successors(role, digit[i]);
          if (out[i]->empty()) empty = true;
        }
        if (empty) continue;
        std::vector<std::size_t> pick(k, 0);
        for (;;) {
          std::vector<int> target(k);
          for (std::size_t i = 0; i < k; ++i) target[i] = (*out[i])[pick[i]];
          if (++edge_total > edge_cap)
            throw ResourceError("direct product exceeds the edge cap of " +
                                std::to_string(edge_cap));
          edges[role].emplace_back(static_cast<int>(from),
                                   static_cast<int>(index_of(target)));
          std::size_t i = k;
          while (i-- > 0) {
            if (++pick[i] < out[i]->size()) break;
            pick[i] = 0;
            if (i == 0) goto next_role;
          }
        }
      next_role:;
      }
    } while (advance(digit));

  std::map<std::string, std::string> inds;
  if (total > 0)
    for (auto& [a, id0] : parts[0].individuals()) {
      std::vector<int> dg(k);
      bool all = true;
      for (std::size_t i = 0; i < k && all; ++i) {
        int e = parts[i].individual(a);
        if (e < 0)
          all = false;
        else
          dg[i] = e;
      }
      if (all) inds[a] = tuple_id(dg);
    }

  return Interpretation(std::move(ids), std::move(labels), std::move(edges),
                        std::move(inds));
}

}  // namespace

Interpretation direct_product(const std::vector<Interpretation>& parts,
                              std::size_t cap) {
  return product_build(parts, cap);
}

PointedInterpretation direct_product(const std::vector<Interpretation>& parts,
                                     const std::vector<int>& points,
                                     std::size_t cap) {
  if (points.size() != parts.size())
    throw std::invalid_argument("one point per factor required");
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (points[i] < 0 || points[i] >= parts[i].size())
      throw std::invalid_argument("point out of range in factor " +
                                  std::to_string(i));
  PointedInterpretation out{product_build(parts, cap), 0};
  std::size_t idx = 0;
  for (std::size_t i = 0; i < parts.size(); ++i)
    idx = idx * static_cast<std::size_t>(parts[i].size()) +
          static_cast<std::size_t>(points[i]);
  out.point = static_cast<int>(idx);
  return out;
}

// ── subinterpretations ──────────────────────────────────────────────────────

namespace {

// Restriction of I to `keep` (ascending): ids, labels, notes, edges and
// individual assignments inside `keep` survive.
Interpretation restrict_to(const Interpretation& I,
                           const std::vector<int>& keep) {
  std::vector<int> where(I.size(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) where[keep[i]] = static_cast<int>(i);
  std::vector<std::string> ids;
  std::vector<std::vector<std::string>> labels;
  for (int e : keep) {
    ids.push_back(I.id(e));
    labels.push_back(I.labels(e));
  }
  std::map<std::string, std::vector<std::pair<int, int>>> edges;
  for (auto& role : I.role_names())
    for (int from : keep)
      for (int to : I.successors(role, from))
        if (where[to] >= 0) edges[role].emplace_back(where[from], where[to]);
  std::map<std::string, std::string> inds;
  for (auto& [a, id] : I.individuals()) {
    int e = I.element(id);
    if (e >= 0 && where[e] >= 0) inds[a] = id;
  }
  Interpretation out(std::move(ids), std::move(labels), std::move(edges),
                     std::move(inds));
  for (std::size_t i = 0; i < keep.size(); ++i)
    if (!I.note(keep[i]).empty()) out.set_note(static_cast<int>(i), I.note(keep[i]));
  return out;
}

}  // namespace

Interpretation generated_sub(const Interpretation& I, const ElementSet& g) {
  std::vector<char> in(I.size(), 0);
  std::vector<int> queue;
  for (int e : g) {
    if (e < 0 || e >= I.size())
      throw std::invalid_argument("generator element out of range");
    if (!in[e]) {
      in[e] = 1;
      queue.push_back(e);
    }
  }
  std::vector<std::string> roles = I.role_names();
  for (std::size_t q = 0; q < queue.size(); ++q) {
    int e = queue[q];
    for (auto& role : roles) {
      for (int x : I.successors(role, e))
        if (!in[x]) {
          in[x] = 1;
          queue.push_back(x);
        }
      for (int x : I.predecessors(role, e))
        if (!in[x]) {
          in[x] = 1;
          queue.push_back(x);
        }
    }
  }
  std::vector<int> keep;
  for (int e = 0; e < I.size(); ++e)
    if (in[e]) keep.push_back(e);
  return restrict_to(I, keep);
}

Interpretation forward_generated_sub(const Interpretation& I, int d) {
  if (d < 0 || d >= I.size())
    throw std::invalid_argument("element out of range");
  std::vector<char> in(I.size(), 0);
  std::vector<int> queue{d};
  in[d] = 1;
  std::vector<std::string> roles = I.role_names();
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (auto& role : roles)
      for (int x : I.successors(role, queue[q]))
        if (!in[x]) {
          in[x] = 1;
          queue.push_back(x);
        }
  std::vector<int> keep;
  for (int e = 0; e < I.size(); ++e)
    if (in[e]) keep.push_back(e);
  return restrict_to(I, keep);
}

// ── quotient ────────────────────────────────────────────────────────────────

Interpretation quotient(const Interpretation& I,
                        const std::vector<ElementSet>& classes) {
  std::vector<int> class_of(I.size(), -1);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (classes[c].empty())
      throw std::invalid_argument("empty class in partition");
    for (int e : classes[c]) {
      if (e < 0 || e >= I.size())
        throw std::invalid_argument("class member out of range");
      if (class_of[e] != -1)
        throw std::invalid_argument("element '" + I.id(e) +
                                    "' occurs in two classes");
      class_of[e] = static_cast<int>(c);
    }
  }
  for (int e = 0; e < I.size(); ++e)
    if (class_of[e] == -1)
      throw std::invalid_argument("element '" + I.id(e) +
                                  "' missing from the partition");

  // order classes by their smallest member
  std::vector<std::vector<int>> sorted(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    sorted[c] = classes[c];
    std::sort(sorted[c].begin(), sorted[c].end());
  }
  std::vector<int> order(classes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return sorted[a][0] < sorted[b][0]; });
  std::vector<int> rank(classes.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);

  std::vector<std::string> ids;
  std::vector<std::vector<std::string>> labels;
  std::vector<std::string> notes;
  for (int c : order) {
    ids.push_back(I.id(sorted[c][0]));
    std::vector<std::string> ls;
    std::string note = "class:";
    for (int e : sorted[c]) {
      for (auto& n : I.labels(e)) sorted_insert(ls, n);
      note += " " + I.id(e);
    }
    labels.push_back(std::move(ls));
    notes.push_back(note);
  }

  std::map<std::string, std::vector<std::pair<int, int>>> edges;
  for (auto& role : I.role_names()) {
    std::set<std::pair<int, int>> pairs;
    for (int from = 0; from < I.size(); ++from)
      for (int to : I.successors(role, from))
        pairs.emplace(rank[class_of[from]], rank[class_of[to]]);
    edges[role].assign(pairs.begin(), pairs.end());
  }

  std::map<std::string, std::string> inds;
  for (auto& [a, id] : I.individuals()) {
    int e = I.element(id);
    if (e >= 0) inds[a] = ids[rank[class_of[e]]];
  }

  Interpretation out(std::move(ids), std::move(labels), std::move(edges),
                     std::move(inds));
  for (std::size_t i = 0; i < notes.size(); ++i)
    out.set_note(static_cast<int>(i), notes[i]);
  return out;
}

// ── unravellings ────────────────────────────────────────────────────────────

namespace {

struct PathNode {
  int orig;           // element of the input
  int parent;         // node index, -1 for roots
  std::string role;   // edge label towards the parent
  int depth;          // edges from the root
  bool simple;        // no element occurs twice on the path
};

// Walk the parent chain to test whether `orig` already occurs.
bool occurs_on_path(const std::vector<PathNode>& nodes, int node, int orig) {
  for (int i = node; i >= 0; i = nodes[i].parent)
    if (nodes[i].orig == orig) return true;
  return false;
}

// Shared breadth-first unraveller. depth < 0 means unlimited, in which case
// `blocking` must bound the expansion: a node is expanded only while its
// path is repetition free.
Interpretation unravel(const Interpretation& I, const std::vector<int>& roots,
                       int depth, bool blocking, std::size_t cap,
                       std::vector<int>* root_nodes) {
  std::vector<std::string> roles = I.role_names();
  std::vector<PathNode> nodes;
  std::vector<std::string> words;  // path word per node, also the element id

  auto emit = [&](PathNode pn, const std::string& word) {
    if (nodes.size() >= cap)
      throw ResourceError("unravelling exceeds the element cap of " +
                          std::to_string(cap));
    nodes.push_back(std::move(pn));
    words.push_back(word);
    return static_cast<int>(nodes.size()) - 1;
  };

  std::size_t q = 0, next_root = 0;
  for (;;) {
    if (q == nodes.size()) {  // current tree exhausted; seed the next root
      if (next_root == roots.size()) break;
      int d = roots[next_root++];
      int node = emit({d, -1, "", 0, true}, I.id(d));
      if (root_nodes) root_nodes->push_back(node);
    }
    const int at = static_cast<int>(q++);
    if (depth >= 0 && nodes[at].depth >= depth) continue;
    if (blocking && !nodes[at].simple) continue;
    for (auto& role : roles)
      for (int to : I.successors(role, nodes[at].orig)) {
        bool rep = occurs_on_path(nodes, at, to);
        emit({to, at, role, nodes[at].depth + 1, !rep},
             words[at] + "." + role + "." + I.id(to));
      }
  }

  std::vector<std::string> ids(nodes.size());
  std::vector<std::vector<std::string>> labels(nodes.size());
  std::map<std::string, std::vector<std::pair<int, int>>> edges;
  std::set<std::string> taken;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    // input ids may themselves contain the separator; keep words unique
    std::string id = words[i];
    for (int k = 2; !taken.insert(id).second; ++k)
      id = words[i] + "~" + std::to_string(k);
    ids[i] = id;
    labels[i] = I.labels(nodes[i].orig);
    if (nodes[i].parent >= 0)
      edges[nodes[i].role].emplace_back(nodes[i].parent, static_cast<int>(i));
  }
  Interpretation out(std::move(ids), std::move(labels), std::move(edges));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::string note = "path: " + I.id(nodes[i].orig);
    for (int j = static_cast<int>(i); nodes[j].parent >= 0;) {
      note = "path: " + I.id(nodes[nodes[j].parent].orig) + " " + nodes[j].role +
             " " + note.substr(6);
      j = nodes[j].parent;
    }
    out.set_note(static_cast<int>(i), note);
  }
  return out;
}

}  // namespace

PointedInterpretation tree_unravel(const Interpretation& I, int d, int depth,
                                   std::size_t cap) {
  if (d < 0 || d >= I.size())
    throw std::invalid_argument("element out of range");
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  std::vector<int> root_nodes;
  Interpretation out = unravel(I, {d}, depth, false, cap, &root_nodes);
  return {std::move(out), root_nodes.at(0)};
}

Interpretation forest_unravel(const Interpretation& I, int depth,
                              std::size_t cap) {
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  std::vector<int> roots(I.size());
  std::iota(roots.begin(), roots.end(), 0);
  return unravel(I, roots, depth, false, cap, nullptr);
}

Interpretation partial_tree_unravel(const Interpretation& I, std::size_t cap) {
  std::vector<int> roots(I.size());
  std::iota(roots.begin(), roots.end(), 0);
  return unravel(I, roots, -1, true, cap, nullptr);
}

// ── coherence ───────────────────────────────────────────────────────────────

namespace {

// Atoms for the coherence comparison: concept labels plus carried individual
// names (individuals count as concept names until K-membership is restored).
std::vector<std::string> atom_row(const Interpretation& I, int e) {
  std::vector<std::string> atoms = I.labels(e);
  for (auto& [a, id] : I.individuals())
    if (I.element(id) == e) sorted_insert(atoms, "\x01" + a);
  return atoms;
}

// Greatest ALC-bisimulation between two structures, as an |I| x |H| matrix.
std::vector<std::vector<char>> greatest_bisim(const Interpretation& I,
                                              const Interpretation& H) {
  std::vector<std::string> roles;
  for (auto& r : I.role_names()) sorted_insert(roles, r);
  for (auto& r : H.role_names()) sorted_insert(roles, r);

  std::vector<std::vector<std::string>> ai(I.size()), ah(H.size());
  for (int d = 0; d < I.size(); ++d) ai[d] = atom_row(I, d);
  for (int e = 0; e < H.size(); ++e) ah[e] = atom_row(H, e);

  std::vector<std::vector<char>> rel(I.size(),
                                     std::vector<char>(H.size(), 0));
  for (int d = 0; d < I.size(); ++d)
    for (int e = 0; e < H.size(); ++e) rel[d][e] = ai[d] == ah[e];

  bool changed = true;
  while (changed) {
    changed = false;
    for (int d = 0; d < I.size(); ++d)
      for (int e = 0; e < H.size(); ++e) {
        if (!rel[d][e]) continue;
        bool ok = true;
        for (auto& role : roles) {
          for (int d1 : I.successors(role, d)) {  // FORTH
            bool found = false;
            for (int e1 : H.successors(role, e))
              if (rel[d1][e1]) {
                found = true;
                break;
              }
            if (!found) {
              ok = false;
              break;
            }
          }
          if (!ok) break;
          for (int e1 : H.successors(role, e)) {  // BACK
            bool found = false;
            for (int d1 : I.successors(role, d))
              if (rel[d1][e1]) {
                found = true;
                break;
              }
            if (!found) {
              ok = false;
              break;
            }
          }
          if (!ok) break;
        }
        if (!ok) {
          rel[d][e] = 0;
          changed = true;
        }
      }
  }
  return rel;
}

}  // namespace

CoherenceCheck coherence_check(const std::vector<Interpretation>& parts) {
  std::map<std::string, std::vector<std::pair<std::size_t, int>>> carriers;
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (auto& [a, id] : parts[i].individuals()) {
      int e = parts[i].element(id);
      if (e >= 0) carriers[a].emplace_back(i, e);
    }
  std::map<std::pair<std::size_t, std::size_t>,
           std::vector<std::vector<char>>>
      bisim;
  for (auto& [a, cs] : carriers)
    for (std::size_t x = 0; x < cs.size(); ++x)
      for (std::size_t y = x + 1; y < cs.size(); ++y) {
        auto [i, d] = cs[x];
        auto [j, e] = cs[y];
        auto key = std::make_pair(i, j);
        auto it = bisim.find(key);
        if (it == bisim.end())
          it = bisim.emplace(key, greatest_bisim(parts[i], parts[j])).first;
        if (!it->second[d][e])
          return {false, "individual " + a + ": (part " + std::to_string(i) +
                             ", " + parts[i].id(d) + ") is not bisimilar to (part " +
                             std::to_string(j) + ", " + parts[j].id(e) + ")"};
      }
  return {};
}

Interpretation coherent_union_alco(const std::vector<Interpretation>& parts) {
  if (parts.empty())
    throw std::invalid_argument("coherent union of nothing");

  std::set<std::string> names;
  for (auto& p : parts)
    for (auto& [a, id] : p.individuals())
      if (p.element(id) >= 0) names.insert(a);
  for (auto& a : names)
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (parts[i].individual(a) < 0)
        throw std::invalid_argument("incoherent family: individual '" + a +
                                    "' is not assigned in part " +
                                    std::to_string(i));
  CoherenceCheck ch = coherence_check(parts);
  if (!ch.coherent)
    throw std::invalid_argument("incoherent family: " + ch.detail);

  if (parts.size() == 1) return parts[0];

  Interpretation u = disjoint_union(parts);
  // classes: same-name carriers merge, everything else stays alone
  std::vector<int> leader(u.size());
  std::iota(leader.begin(), leader.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return leader[x] == x ? x : leader[x] = find(leader[x]);
  };
  for (auto& a : names) {
    int first = -1;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      int e = parts[i].individual(a);
      std::string tagged = std::to_string(i) + ":" + parts[i].id(e);
      int x = u.element(tagged);
      if (first == -1)
        first = x;
      else
        leader[find(x)] = find(first);
    }
  }
  std::map<int, ElementSet> classes;
  for (int e = 0; e < u.size(); ++e) classes[find(e)].push_back(e);
  std::vector<ElementSet> partition;
  for (auto& [root, members] : classes) partition.push_back(members);

  Interpretation out = quotient(u, partition);
  for (auto& a : names) {
    // the class took the id of its smallest member
    std::string tagged = "0:" + parts[0].id(parts[0].individual(a));
    out.assign(a, u.id(classes[find(u.element(tagged))].front()));
  }
  return out;
}

Interpretation nominal_union_alcqio(const std::vector<Interpretation>& parts,
                                    const Signature& sig) {
  if (parts.empty())
    throw std::invalid_argument("nominal disjoint union of nothing");
  std::map<std::string, std::size_t> owner;
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (auto& [a, id] : parts[i].individuals()) {
      if (parts[i].element(id) < 0) continue;
      auto [it, fresh] = owner.emplace(a, i);
      if (!fresh)
        throw std::invalid_argument(
            "individual '" + a + "' assigned in parts " +
            std::to_string(it->second) + " and " + std::to_string(i));
    }
  for (auto& a : sig.individual_names)
    if (owner.find(a) == owner.end())
      throw std::invalid_argument("individual '" + a +
                                  "' not assigned in any part");
  return disjoint_union(parts);
}

}  // namespace dlkit

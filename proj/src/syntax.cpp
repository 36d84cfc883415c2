// ============================================================================
//  syntax.cpp -- concept interning, parsing, printing, measures, closures,
//  and the constructive normal forms
// ============================================================================
#include "dlkit/syntax.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <mutex>
#include <unordered_map>

namespace dlkit {

// ── Identifiers ─────────────────────────────────────────────────────────────

namespace {
const std::array<const char*, 11> kReserved = {
    "top", "bot", "not", "and", "or", "some", "all", "min", "max", "inv", "u"};
}

bool reserved_word(const std::string& s) {
  for (const char* w : kReserved)
    if (s == w) return true;
  return false;
}

bool valid_identifier(const std::string& s) {
  if (s.empty() || reserved_word(s)) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char ch : s) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (!std::isalnum(c) && c != '_') return false;
  }
  return true;
}

// ── Signature ───────────────────────────────────────────────────────────────

namespace {
void check_name(const std::string& n, const char* category) {
  if (!valid_identifier(n))
    throw std::invalid_argument("invalid " + std::string(category) + " name '" +
                                n + "'");
}
}  // namespace

void Signature::declare_concept(const std::string& n) {
  check_name(n, "concept");
  if (has_role(n) || has_individual(n))
    throw std::invalid_argument("'" + n + "' is already declared in another category");
  concept_names.insert(n);
}

void Signature::declare_role(const std::string& n) {
  check_name(n, "role");
  if (has_concept(n) || has_individual(n))
    throw std::invalid_argument("'" + n + "' is already declared in another category");
  role_names.insert(n);
}

void Signature::declare_individual(const std::string& n) {
  check_name(n, "individual");
  if (has_concept(n) || has_role(n))
    throw std::invalid_argument("'" + n + "' is already declared in another category");
  individual_names.insert(n);
}

void Signature::merge(const Signature& other) {
  for (const auto& n : other.concept_names) declare_concept(n);
  for (const auto& n : other.role_names) declare_role(n);
  for (const auto& n : other.individual_names) declare_individual(n);
}

// ── Roles ───────────────────────────────────────────────────────────────────

Role Role::flipped() const {
  switch (kind) {
    case RoleKind::Direct: return inverse(name);
    case RoleKind::Inverse: return direct(name);
    case RoleKind::Universal: return universal();
  }
  return universal();
}

std::string Role::render() const {
  switch (kind) {
    case RoleKind::Direct: return name;
    case RoleKind::Inverse: return "inv(" + name + ")";
    case RoleKind::Universal: return "u";
  }
  return "u";
}

// ── Interning ───────────────────────────────────────────────────────────────

namespace {

// One node per canonical rendering. Nodes live for the whole process, so
// ConceptPtr comparisons and memo tables stay valid across all callers.
std::mutex& pool_mutex() {
  static std::mutex m;
  return m;
}

std::unordered_map<std::string, const Concept*>& pool() {
  static std::unordered_map<std::string, const Concept*> p;
  return p;
}

std::string render_node(Ctor op, const std::string& nm, const Role& role,
                        uint32_t bound, const std::vector<ConceptPtr>& kids) {
  switch (op) {
    case Ctor::Top: return "top";
    case Ctor::Bot: return "bot";
    case Ctor::Name: return nm;
    case Ctor::Nominal: return "{" + nm + "}";
    case Ctor::Not: return "not " + kids[0]->text;
    case Ctor::And:
    case Ctor::Or: {
      std::string sep = op == Ctor::And ? " and " : " or ";
      std::string out = "(" + kids[0]->text;
      for (size_t i = 1; i < kids.size(); ++i) out += sep + kids[i]->text;
      return out + ")";
    }
    case Ctor::Exists:
    case Ctor::Forall: {
      std::string head;
      if (bound == 1)
        head = op == Ctor::Exists ? "some " : "all ";
      else
        head = (op == Ctor::Exists ? "min " : "max ") + std::to_string(bound) + " ";
      return head + role.render() + " . " + kids[0]->text;
    }
  }
  return "";
}

ConceptPtr intern(Ctor op, std::string nm, Role role, uint32_t bound,
                  std::vector<ConceptPtr> kids) {
  std::string text = render_node(op, nm, role, bound, kids);
  std::lock_guard<std::mutex> lock(pool_mutex());
  auto it = pool().find(text);
  if (it != pool().end()) return it->second;
  auto* node = new Concept();
  node->op = op;
  node->name = std::move(nm);
  node->role = role;
  node->bound = bound;
  node->kids = std::move(kids);
  node->text = text;
  pool().emplace(std::move(text), node);
  return node;
}

}  // namespace

// ── Smart constructors ──────────────────────────────────────────────────────

ConceptPtr top() {
  static ConceptPtr t = intern(Ctor::Top, "", Role::universal(), 1, {});
  return t;
}

ConceptPtr bot() {
  static ConceptPtr b = intern(Ctor::Bot, "", Role::universal(), 1, {});
  return b;
}

ConceptPtr name(const std::string& n) {
  check_name(n, "concept");
  return intern(Ctor::Name, n, Role::universal(), 1, {});
}

ConceptPtr nominal(const std::string& a) {
  check_name(a, "individual");
  return intern(Ctor::Nominal, a, Role::universal(), 1, {});
}

ConceptPtr neg(ConceptPtr c) {
  if (c == top()) return bot();
  if (c == bot()) return top();
  if (c->op == Ctor::Not) return c->kid();
  return intern(Ctor::Not, "", Role::universal(), 1, {c});
}

namespace {
// Shared body of conj/disj: flatten one level, absorb, drop the unit, sort by
// rendered text, dedup, collapse singletons, map the empty group to the unit.
ConceptPtr junction(Ctor op, std::vector<ConceptPtr> cs) {
  ConceptPtr unit = op == Ctor::And ? top() : bot();
  ConceptPtr zero = op == Ctor::And ? bot() : top();
  std::vector<ConceptPtr> flat;
  flat.reserve(cs.size());
  for (ConceptPtr c : cs) {
    if (c->op == op)
      flat.insert(flat.end(), c->kids.begin(), c->kids.end());
    else
      flat.push_back(c);
  }
  for (ConceptPtr c : flat)
    if (c == zero) return zero;
  flat.erase(std::remove(flat.begin(), flat.end(), unit), flat.end());
  std::sort(flat.begin(), flat.end(), text_less);
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  if (flat.empty()) return unit;
  if (flat.size() == 1) return flat[0];
  return intern(op, "", Role::universal(), 1, std::move(flat));
}

void check_role(const Role& r) {
  if (r.kind == RoleKind::Universal) {
    if (!r.name.empty())
      throw std::invalid_argument("universal role carries no name");
  } else if (!valid_identifier(r.name)) {
    throw std::invalid_argument("invalid role name '" + r.name + "'");
  }
}
}  // namespace

ConceptPtr conj(std::vector<ConceptPtr> cs) { return junction(Ctor::And, std::move(cs)); }
ConceptPtr disj(std::vector<ConceptPtr> cs) { return junction(Ctor::Or, std::move(cs)); }

ConceptPtr exists(Role r, uint32_t bound, ConceptPtr c) {
  check_role(r);
  if (bound == 0) return top();  // at least zero successors: trivially true
  return intern(Ctor::Exists, "", r, bound, {c});
}

ConceptPtr forall(Role r, uint32_t bound, ConceptPtr c) {
  check_role(r);
  if (bound == 0) return bot();  // dual of the trivial bound
  return intern(Ctor::Forall, "", r, bound, {c});
}

// ── TBox rendering ──────────────────────────────────────────────────────────

std::string render(const TBox& t) {
  std::string out;
  for (const Axiom& ax : t.axioms)
    out += ax.lhs->text + " [= " + ax.rhs->text + "\n";
  return out;
}

// ── Tokenizer ───────────────────────────────────────────────────────────────

namespace {

struct Tok {
  enum Kind { Word, Nat, LParen, RParen, LBrace, RBrace, Dot, Subsume, End };
  Kind kind;
  std::string text;
  uint64_t nat = 0;
  int line = 1, col = 1;
};

std::vector<Tok> lex(const std::string& src, int first_line) {
  std::vector<Tok> out;
  int line = first_line, col = 1;
  size_t i = 0;
  auto bump = [&](size_t n) { col += static_cast<int>(n); i += n; };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      bump(1);
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    Tok t;
    t.line = line;
    t.col = col;
    if (c == '(') { t.kind = Tok::LParen; bump(1); }
    else if (c == ')') { t.kind = Tok::RParen; bump(1); }
    else if (c == '{') { t.kind = Tok::LBrace; bump(1); }
    else if (c == '}') { t.kind = Tok::RBrace; bump(1); }
    else if (c == '.') { t.kind = Tok::Dot; bump(1); }
    else if (c == '[') {
      if (i + 1 >= src.size() || src[i + 1] != '=')
        throw ParseError(line, col, "expected '[=' after '['");
      t.kind = Tok::Subsume;
      bump(2);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::Nat;
      t.text = src.substr(i, j - i);
      if (t.text.size() > 9)
        throw ParseError(line, col, "count '" + t.text + "' is too large");
      t.nat = std::stoull(t.text);
      bump(j - i);
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      t.kind = Tok::Word;
      t.text = src.substr(i, j - i);
      bump(j - i);
    } else {
      throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(t));
  }
  Tok end;
  end.kind = Tok::End;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

// ── Parser ──────────────────────────────────────────────────────────────────

struct Parser {
  const std::vector<Tok>& ts;
  size_t p = 0;
  Signature& sig;
  bool declare;

  const Tok& peek() const { return ts[p]; }
  const Tok& next() { return ts[p++]; }

  [[noreturn]] void fail(const Tok& t, const std::string& msg) const {
    throw ParseError(t.line, t.col, msg);
  }

  bool at_word(const char* w) const {
    return peek().kind == Tok::Word && peek().text == w;
  }

  std::string concept_name(const Tok& t) {
    const std::string& n = t.text;
    if (!sig.has_concept(n)) {
      if (sig.has_role(n) || sig.has_individual(n))
        fail(t, "'" + n + "' is not a concept name");
      if (!declare) fail(t, "undeclared concept name '" + n + "'");
      sig.declare_concept(n);
    }
    return n;
  }

  Role role() {
    const Tok& t = next();
    if (t.kind != Tok::Word) fail(t, "expected a role");
    if (t.text == "u") return Role::universal();
    if (t.text == "inv") {
      if (next().kind != Tok::LParen) fail(ts[p - 1], "expected '(' after 'inv'");
      const Tok& rn = next();
      if (rn.kind != Tok::Word) fail(rn, "expected a role name in 'inv(...)'");
      if (rn.text == "u") fail(rn, "the universal role cannot be inverted");
      if (reserved_word(rn.text)) fail(rn, "'" + rn.text + "' is a reserved word");
      if (next().kind != Tok::RParen) fail(ts[p - 1], "expected ')' after role name");
      declare_role(rn);
      return Role::inverse(rn.text);
    }
    if (reserved_word(t.text)) fail(t, "expected a role, found '" + t.text + "'");
    declare_role(t);
    return Role::direct(t.text);
  }

  void declare_role(const Tok& t) {
    const std::string& n = t.text;
    if (sig.has_role(n)) return;
    if (sig.has_concept(n) || sig.has_individual(n))
      fail(t, "'" + n + "' is not a role name");
    if (!declare) fail(t, "undeclared role name '" + n + "'");
    sig.declare_role(n);
  }

  ConceptPtr quantifier(const Tok& head) {
    uint32_t bound = 1;
    if (head.text == "min" || head.text == "max") {
      const Tok& n = next();
      if (n.kind != Tok::Nat) fail(n, "expected a count after '" + head.text + "'");
      if (n.nat > 0xffffffffULL) fail(n, "count '" + n.text + "' is too large");
      bound = static_cast<uint32_t>(n.nat);
    }
    Role r = role();
    if (next().kind != Tok::Dot) fail(ts[p - 1], "expected '.' after the role");
    ConceptPtr body = concept_();
    bool ex = head.text == "some" || head.text == "min";
    return ex ? exists(r, bound, body) : forall(r, bound, body);
  }

  ConceptPtr concept_() {
    const Tok& t = next();
    switch (t.kind) {
      case Tok::Word: {
        if (t.text == "top") return top();
        if (t.text == "bot") return bot();
        if (t.text == "not") return neg(concept_());
        if (t.text == "some" || t.text == "all" || t.text == "min" ||
            t.text == "max")
          return quantifier(t);
        if (reserved_word(t.text))
          fail(t, "unexpected '" + t.text + "'");
        return name(concept_name(t));
      }
      case Tok::LParen: {
        std::vector<ConceptPtr> kids;
        kids.push_back(concept_());
        if (peek().kind == Tok::RParen) {  // redundant parentheses
          next();
          return kids[0];
        }
        const Tok& op = peek();
        if (!(at_word("and") || at_word("or")))
          fail(op, "expected 'and' or 'or'");
        std::string word = op.text;
        while (peek().kind == Tok::Word &&
               (peek().text == "and" || peek().text == "or")) {
          const Tok& o = next();
          if (o.text != word) fail(o, "mixed 'and'/'or' in one group");
          kids.push_back(concept_());
        }
        if (next().kind != Tok::RParen) fail(ts[p - 1], "expected ')'");
        return word == "and" ? conj(std::move(kids)) : disj(std::move(kids));
      }
      case Tok::LBrace: {
        const Tok& a = next();
        if (a.kind != Tok::Word || reserved_word(a.text))
          fail(a, "expected an individual name");
        if (!sig.has_individual(a.text)) {
          if (sig.has_concept(a.text) || sig.has_role(a.text))
            fail(a, "'" + a.text + "' is not an individual name");
          if (!declare) fail(a, "undeclared individual name '" + a.text + "'");
          sig.declare_individual(a.text);
        }
        if (next().kind != Tok::RBrace) fail(ts[p - 1], "expected '}'");
        return nominal(a.text);
      }
      case Tok::Nat:
        fail(t, "unexpected number");
      default:
        fail(t, "expected a concept");
    }
  }
};

}  // namespace

ConceptPtr parse_concept(const std::string& text, Signature& sig,
                         bool declare_on_use) {
  std::vector<Tok> ts = lex(text, 1);
  Parser parser{ts, 0, sig, declare_on_use};
  ConceptPtr c = parser.concept_();
  if (parser.peek().kind != Tok::End)
    parser.fail(parser.peek(), "unexpected trailing input");
  return c;
}

TBox parse_tbox(const std::string& text, Signature& sig, bool declare_on_use) {
  TBox t;
  size_t start = 0;
  int line_no = 0;
  while (start <= text.size()) {
    size_t eol = text.find('\n', start);
    std::string line = text.substr(
        start, eol == std::string::npos ? std::string::npos : eol - start);
    ++line_no;
    std::vector<Tok> ts = lex(line, line_no);
    if (ts.front().kind != Tok::End) {
      Parser parser{ts, 0, sig, declare_on_use};
      ConceptPtr lhs = parser.concept_();
      if (parser.peek().kind != Tok::Subsume)
        parser.fail(parser.peek(), "expected '[=' between the axiom sides");
      parser.next();
      ConceptPtr rhs = parser.concept_();
      if (parser.peek().kind != Tok::End)
        parser.fail(parser.peek(), "unexpected trailing input");
      t.axioms.push_back({lhs, rhs});
    }
    if (eol == std::string::npos) break;
    start = eol + 1;
  }
  return t;
}

// ── Measures and dialect classification ─────────────────────────────────────

namespace {

constexpr uint16_t bit(Dialect d) { return static_cast<uint16_t>(1u << static_cast<int>(d)); }

constexpr uint16_t kAll = 0x1ff;
constexpr uint16_t kCounting = bit(Dialect::ALCQ) | bit(Dialect::ALCQO) | bit(Dialect::ALCQIO);
constexpr uint16_t kInverse = bit(Dialect::ALCI) | bit(Dialect::ALCQIO);
constexpr uint16_t kNominal = bit(Dialect::ALCO) | bit(Dialect::ALCQO) | bit(Dialect::ALCQIO);
constexpr uint16_t kElFamily = bit(Dialect::EL) | bit(Dialect::ELsqcup) | bit(Dialect::ELneg);

// Everything measure() needs, computed in one walk over the interned DAG.
// mask has a bit per dialect whose constructor set covers the concept; the
// universal role is budgeted separately in uflag.
struct Feats {
  int rank = 0;
  uint32_t grade = 0;
  long length = 1;
  uint8_t uflag = 0;  // 0 none, 1 plain, 2 graded
  uint16_t mask = kAll;
};

const Feats& feats(ConceptPtr c);

Feats compute_feats(ConceptPtr c) {
  Feats f;
  switch (c->op) {
    case Ctor::Top:
      return f;
    case Ctor::Bot:
      f.mask = kAll & ~bit(Dialect::EL);
      return f;
    case Ctor::Name:
      return f;
    case Ctor::Nominal:
      f.mask = kNominal;
      return f;
    case Ctor::Not: {
      const Feats& k = feats(c->kid());
      f = k;
      f.length = k.length + 1;
      f.mask = k.mask & ~(bit(Dialect::EL) | bit(Dialect::ELsqcup));
      return f;
    }
    case Ctor::And:
    case Ctor::Or: {
      f.length = static_cast<long>(c->kids.size()) - 1;
      for (ConceptPtr kid : c->kids) {
        const Feats& k = feats(kid);
        f.rank = std::max(f.rank, k.rank);
        f.grade = std::max(f.grade, k.grade);
        f.length += k.length;
        f.uflag = std::max(f.uflag, k.uflag);
        f.mask &= k.mask;
      }
      if (c->op == Ctor::Or) f.mask &= ~bit(Dialect::EL);
      return f;
    }
    case Ctor::Exists:
    case Ctor::Forall: {
      const Feats& k = feats(c->kid());
      bool universal = c->role.is_universal();
      f.rank = universal ? k.rank : k.rank + 1;
      f.grade = std::max(c->bound, k.grade);
      f.length = k.length + 1;
      f.uflag = std::max(k.uflag, static_cast<uint8_t>(universal ? (c->bound == 1 ? 1 : 2) : 0));
      f.mask = k.mask;
      if (c->bound != 1) f.mask &= kCounting;
      switch (c->role.kind) {
        case RoleKind::Inverse:
          f.mask &= c->bound == 1 ? kInverse : bit(Dialect::ALCQIO);
          break;
        case RoleKind::Direct:
          if (c->op == Ctor::Exists) {
            // EL-family membership demands a pure EL body under direct some.
            bool el_body = (feats(c->kid()).mask & bit(Dialect::EL)) != 0;
            if (!el_body) f.mask &= ~bit(Dialect::ELneg);
          } else {
            // all r . D sits in the boolean closure only as the
            // not (some r . ...) notation: D = not F with F in EL, or D = bot.
            ConceptPtr d = c->kid();
            bool ok = d == bot() || (d->op == Ctor::Not &&
                                     (feats(d->kid()).mask & bit(Dialect::EL)) != 0);
            f.mask &= ~kElFamily;
            if (ok && c->bound == 1) f.mask |= bit(Dialect::ELneg);
          }
          break;
        case RoleKind::Universal:
          // some u keeps its body's dialect; all u needs negation to expand.
          if (c->op == Ctor::Forall)
            f.mask &= ~(bit(Dialect::EL) | bit(Dialect::ELsqcup));
          break;
      }
      return f;
    }
  }
  return f;
}

const Feats& feats(ConceptPtr c) {
  static std::mutex m;
  static std::unordered_map<ConceptPtr, Feats> memo;
  {
    std::lock_guard<std::mutex> lock(m);
    auto it = memo.find(c);
    if (it != memo.end()) return it->second;
  }
  Feats f = compute_feats(c);
  std::lock_guard<std::mutex> lock(m);
  return memo.emplace(c, f).first->second;
}

Dialect least_dialect(uint16_t mask) {
  static const std::array<Dialect, 9> order = {
      Dialect::EL,   Dialect::ELsqcup, Dialect::ELneg,
      Dialect::ALC,  Dialect::ALCI,    Dialect::ALCQ,
      Dialect::ALCO, Dialect::ALCQO,   Dialect::ALCQIO};
  for (Dialect d : order)
    if (mask & bit(d)) return d;
  return Dialect::ALCQIO;
}

}  // namespace

int rank(ConceptPtr c) { return feats(c).rank; }

int rank(const TBox& t) {
  int r = 0;
  for (const Axiom& ax : t.axioms)
    r = std::max({r, rank(ax.lhs), rank(ax.rhs)});
  return r;
}

uint32_t grade(ConceptPtr c) { return feats(c).grade; }

long length(ConceptPtr c) { return feats(c).length; }

long length(const TBox& t) {
  long n = 0;
  for (const Axiom& ax : t.axioms) n += length(ax.lhs) + length(ax.rhs);
  return n;
}

Measure measure(ConceptPtr c) {
  const Feats& f = feats(c);
  return {f.rank, f.grade, f.length, least_dialect(f.mask),
          static_cast<UFlag>(f.uflag)};
}

Measure measure(const TBox& t) {
  Measure m;
  uint16_t mask = kAll;
  uint8_t uflag = 0;
  for (const Axiom& ax : t.axioms) {
    for (ConceptPtr side : {ax.lhs, ax.rhs}) {
      const Feats& f = feats(side);
      m.rank = std::max(m.rank, f.rank);
      m.grade = std::max(m.grade, f.grade);
      m.length += f.length;
      mask &= f.mask;
      uflag = std::max(uflag, f.uflag);
    }
  }
  m.min_dialect = least_dialect(mask);
  m.u_flag = static_cast<UFlag>(uflag);
  return m;
}

std::string dialect_name(Dialect d, UFlag u) {
  switch (d) {
    case Dialect::EL: return u == UFlag::None ? "EL" : "ELu";
    case Dialect::ELsqcup: return u == UFlag::None ? "ELsqcup" : "ELusqcup";
    case Dialect::ELneg: return u == UFlag::None ? "ELneg" : "ELuneg";
    case Dialect::ALC: return u == UFlag::None ? "ALC" : "ALCu";
    case Dialect::ALCI: return u == UFlag::None ? "ALCI" : "ALCIu";
    case Dialect::ALCQ:
      return u == UFlag::None ? "ALCQ" : (u == UFlag::U1 ? "ALCQu1" : "ALCQu");
    case Dialect::ALCO: return u == UFlag::None ? "ALCO" : "ALCOu";
    case Dialect::ALCQO:
      return u == UFlag::None ? "ALCQO" : (u == UFlag::U1 ? "ALCQOu1" : "ALCQOu");
    case Dialect::ALCQIO:
      return u == UFlag::None ? "ALCQIO" : (u == UFlag::U1 ? "ALCQIOu1" : "ALCQIOu");
  }
  return "ALCQIO";
}

bool conforms(ConceptPtr c, Dialect d, UFlag u) {
  const Feats& f = feats(c);
  return (f.mask & bit(d)) != 0 && f.uflag <= static_cast<uint8_t>(u);
}

bool conforms(const TBox& t, Dialect d, UFlag u) {
  for (const Axiom& ax : t.axioms)
    if (!conforms(ax.lhs, d, u) || !conforms(ax.rhs, d, u)) return false;
  return true;
}

// ── Primitive form and closure ──────────────────────────────────────────────

ConceptPtr primitive_form(ConceptPtr c) {
  static std::mutex m;
  static std::unordered_map<ConceptPtr, ConceptPtr> memo;
  {
    std::lock_guard<std::mutex> lock(m);
    auto it = memo.find(c);
    if (it != memo.end()) return it->second;
  }
  ConceptPtr out = nullptr;
  switch (c->op) {
    case Ctor::Top:
    case Ctor::Bot:
    case Ctor::Name:
      out = c;
      break;
    case Ctor::Nominal:
      throw DialectError("nominals have no primitive form");
    case Ctor::Not:
      out = neg(primitive_form(c->kid()));
      break;
    case Ctor::And: {
      std::vector<ConceptPtr> kids;
      for (ConceptPtr k : c->kids) kids.push_back(primitive_form(k));
      out = conj(std::move(kids));
      break;
    }
    case Ctor::Or: {
      // C or D becomes not (not C and not D)
      std::vector<ConceptPtr> kids;
      for (ConceptPtr k : c->kids) kids.push_back(neg(primitive_form(k)));
      out = neg(conj(std::move(kids)));
      break;
    }
    case Ctor::Exists:
    case Ctor::Forall: {
      if (c->role.is_universal())
        throw DialectError("the universal role has no primitive form");
      if (c->bound != 1)
        throw DialectError("counting bounds have no primitive form");
      ConceptPtr body = primitive_form(c->kid());
      out = c->op == Ctor::Exists ? exists(c->role, 1, body)
                                  : neg(exists(c->role, 1, neg(body)));
      break;
    }
  }
  std::lock_guard<std::mutex> lock(m);
  memo.emplace(c, out);
  return out;
}

namespace {

// Collects both polarities of every non-boolean member, decomposing
// conjunctions and erasing double negations on the way down.
void clos_add(ConceptPtr c, std::set<std::string>& seen,
              std::vector<ConceptPtr>& out) {
  if (c == top() || c == bot()) return;
  switch (c->op) {
    case Ctor::Not:
      clos_add(c->kid(), seen, out);
      return;
    case Ctor::And:
      for (ConceptPtr k : c->kids) clos_add(k, seen, out);
      return;
    case Ctor::Name:
    case Ctor::Exists: {
      if (seen.insert(c->text).second) {
        out.push_back(c);
        out.push_back(neg(c));
      }
      if (c->op == Ctor::Exists) clos_add(c->kid(), seen, out);
      return;
    }
    default:
      return;  // unreachable on primitive forms
  }
}

}  // namespace

std::vector<ConceptPtr> clos(ConceptPtr c) {
  std::set<std::string> seen;
  std::vector<ConceptPtr> out;
  clos_add(primitive_form(c), seen, out);
  std::sort(out.begin(), out.end(), text_less);
  return out;
}

std::vector<ConceptPtr> clos(const TBox& t) {
  std::set<std::string> seen;
  std::vector<ConceptPtr> out;
  for (const Axiom& ax : t.axioms) {
    clos_add(primitive_form(ax.lhs), seen, out);
    clos_add(primitive_form(ax.rhs), seen, out);
  }
  std::sort(out.begin(), out.end(), text_less);
  return out;
}

// ── Normal forms ────────────────────────────────────────────────────────────

namespace {

constexpr size_t kFormCap = 65536;  // disjunct/clause budget for expansions

bool is_el(ConceptPtr c) { return (feats(c).mask & bit(Dialect::EL)) != 0 && feats(c).uflag == 0; }

// Negation normal form on the boolean closure of EL: push negation down to
// whole EL subtrees, expanding all r notation back into its not some form.
ConceptPtr nnf_pos(ConceptPtr c);
ConceptPtr nnf_neg(ConceptPtr c);

ConceptPtr nnf_pos(ConceptPtr c) {
  if (is_el(c)) return c;
  switch (c->op) {
    case Ctor::Bot: return bot();
    case Ctor::Not: return nnf_neg(c->kid());
    case Ctor::And: {
      std::vector<ConceptPtr> ks;
      for (ConceptPtr k : c->kids) ks.push_back(nnf_pos(k));
      return conj(std::move(ks));
    }
    case Ctor::Or: {
      std::vector<ConceptPtr> ks;
      for (ConceptPtr k : c->kids) ks.push_back(nnf_pos(k));
      return disj(std::move(ks));
    }
    case Ctor::Forall: {
      ConceptPtr body = c->kid() == bot() ? top() : c->kid()->kid();
      return neg(exists(c->role, 1, body));
    }
    default:
      throw DialectError("concept is not in the boolean closure of EL: " + c->text);
  }
}

ConceptPtr nnf_neg(ConceptPtr c) {
  if (is_el(c)) return neg(c);
  switch (c->op) {
    case Ctor::Bot: return top();
    case Ctor::Not: return nnf_pos(c->kid());
    case Ctor::And: {
      std::vector<ConceptPtr> ks;
      for (ConceptPtr k : c->kids) ks.push_back(nnf_neg(k));
      return disj(std::move(ks));
    }
    case Ctor::Or: {
      std::vector<ConceptPtr> ks;
      for (ConceptPtr k : c->kids) ks.push_back(nnf_neg(k));
      return conj(std::move(ks));
    }
    case Ctor::Forall: {
      ConceptPtr body = c->kid() == bot() ? top() : c->kid()->kid();
      return exists(c->role, 1, body);
    }
    default:
      throw DialectError("concept is not in the boolean closure of EL: " + c->text);
  }
}

// Clauses over EL literals. A clause is a sorted set of literals, each an EL
// concept or the negation of one.
using Clause = std::vector<ConceptPtr>;

std::vector<Clause> cnf(ConceptPtr c) {
  if (is_el(c) || (c->op == Ctor::Not && is_el(c->kid()))) return {{c}};
  if (c == bot()) return {{}};
  if (c == top()) return {};
  if (c->op == Ctor::And) {
    std::vector<Clause> out;
    for (ConceptPtr k : c->kids) {
      std::vector<Clause> part = cnf(k);
      out.insert(out.end(), part.begin(), part.end());
      if (out.size() > kFormCap) throw ResourceError("clause budget exceeded");
    }
    return out;
  }
  if (c->op == Ctor::Or) {
    std::vector<Clause> acc = {{}};
    for (ConceptPtr k : c->kids) {
      std::vector<Clause> part = cnf(k);
      std::vector<Clause> next;
      for (const Clause& a : acc)
        for (const Clause& b : part) {
          Clause merged = a;
          merged.insert(merged.end(), b.begin(), b.end());
          std::sort(merged.begin(), merged.end(), text_less);
          merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
          next.push_back(std::move(merged));
          if (next.size() > kFormCap) throw ResourceError("clause budget exceeded");
        }
      acc = std::move(next);
    }
    return acc;
  }
  throw DialectError("not an EL literal shape: " + c->text);
}

// ── ALCu disjunctive normal form ────────────────────────────────────────────

// One disjunct: a u-free local part plus quantified u parts over u-free
// bodies. The invariant "u-free" holds by construction.
struct UDisjunct {
  ConceptPtr local = top();
  std::vector<std::pair<bool, ConceptPtr>> uparts;  // (is_some, body)
};

// Drops trivially void disjuncts and trivially true u parts; interpretations
// have non-empty domains, so some u . top is top and all u . bot is bot.
bool udj_tidy(UDisjunct& d) {
  if (d.local == bot()) return false;
  std::vector<std::pair<bool, ConceptPtr>> keep;
  for (auto& [some, body] : d.uparts) {
    if (some && body == top()) continue;
    if (!some && body == top()) continue;
    if (some && body == bot()) return false;
    if (!some && body == bot()) return false;
    keep.emplace_back(some, body);
  }
  std::sort(keep.begin(), keep.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return text_less(a.second, b.second);
  });
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  // several all u parts collapse into one over the conjoined bodies
  std::vector<ConceptPtr> alls;
  while (!keep.empty() && !keep.back().first) {
    alls.push_back(keep.back().second);
    keep.pop_back();
  }
  if (!alls.empty()) keep.emplace_back(false, conj(std::move(alls)));
  d.uparts = std::move(keep);
  return true;
}

UDisjunct udj_merge(const UDisjunct& a, const UDisjunct& b) {
  UDisjunct m;
  m.local = conj({a.local, b.local});
  m.uparts = a.uparts;
  m.uparts.insert(m.uparts.end(), b.uparts.begin(), b.uparts.end());
  return m;
}

std::vector<UDisjunct> udnf(ConceptPtr c);

std::vector<UDisjunct> udnf_cross(const std::vector<std::vector<UDisjunct>>& factors) {
  std::vector<UDisjunct> acc = {UDisjunct{}};
  for (const auto& options : factors) {
    std::vector<UDisjunct> next;
    for (const UDisjunct& a : acc)
      for (const UDisjunct& o : options) {
        UDisjunct m = udj_merge(a, o);
        if (udj_tidy(m)) next.push_back(std::move(m));
        if (next.size() > kFormCap) throw ResourceError("disjunct budget exceeded");
      }
    acc = std::move(next);
  }
  return acc;
}

std::vector<UDisjunct> udnf(ConceptPtr c) {
  switch (c->op) {
    case Ctor::Top:
    case Ctor::Bot:
    case Ctor::Name: {
      UDisjunct d;
      d.local = c;
      std::vector<UDisjunct> out;
      if (udj_tidy(d)) out.push_back(std::move(d));
      return out;
    }
    case Ctor::And: {
      std::vector<std::vector<UDisjunct>> factors;
      for (ConceptPtr k : c->kids) factors.push_back(udnf(k));
      return udnf_cross(factors);
    }
    case Ctor::Or: {
      std::vector<UDisjunct> out;
      for (ConceptPtr k : c->kids) {
        auto part = udnf(k);
        out.insert(out.end(), part.begin(), part.end());
        if (out.size() > kFormCap) throw ResourceError("disjunct budget exceeded");
      }
      return out;
    }
    case Ctor::Not: {
      // Negate each disjunct into a small option list, then distribute.
      std::vector<std::vector<UDisjunct>> factors;
      for (const UDisjunct& d : udnf(c->kid())) {
        std::vector<UDisjunct> options;
        UDisjunct lo;
        lo.local = neg(d.local);
        if (udj_tidy(lo)) options.push_back(std::move(lo));
        for (const auto& [some, body] : d.uparts) {
          UDisjunct uo;
          uo.uparts.emplace_back(!some, neg(body));
          if (udj_tidy(uo)) options.push_back(std::move(uo));
        }
        factors.push_back(std::move(options));
      }
      return udnf_cross(factors);
    }
    case Ctor::Exists:
    case Ctor::Forall: {
      if (c->op == Ctor::Forall)
        return udnf(neg(exists(c->role, 1, neg(c->kid()))));
      std::vector<UDisjunct> out;
      for (const UDisjunct& d : udnf(c->kid())) {
        UDisjunct e;
        e.uparts = d.uparts;
        if (c->role.is_universal())
          e.uparts.emplace_back(true, d.local);
        else
          e.local = exists(c->role, 1, d.local);
        if (udj_tidy(e)) out.push_back(std::move(e));
        if (out.size() > kFormCap) throw ResourceError("disjunct budget exceeded");
      }
      return out;
    }
    case Ctor::Nominal:
      break;
  }
  throw DialectError("not an ALCu concept: " + c->text);
}

ConceptPtr udnf_assemble(const std::vector<UDisjunct>& ds) {
  std::vector<ConceptPtr> pieces;
  for (const UDisjunct& d : ds) {
    std::vector<ConceptPtr> parts = {d.local};
    for (const auto& [some, body] : d.uparts)
      parts.push_back(some ? exists(Role::universal(), 1, body)
                           : forall(Role::universal(), 1, body));
    pieces.push_back(conj(std::move(parts)));
  }
  return disj(std::move(pieces));
}

// ── EL with or: splitting into pure EL disjuncts ────────────────────────────

std::vector<ConceptPtr> el_split(ConceptPtr c) {
  switch (c->op) {
    case Ctor::Top:
    case Ctor::Name:
      return {c};
    case Ctor::Bot:
      return {};
    case Ctor::Or: {
      std::vector<ConceptPtr> out;
      for (ConceptPtr k : c->kids) {
        auto part = el_split(k);
        out.insert(out.end(), part.begin(), part.end());
        if (out.size() > kFormCap) throw ResourceError("disjunct budget exceeded");
      }
      return out;
    }
    case Ctor::And: {
      std::vector<ConceptPtr> acc = {top()};
      for (ConceptPtr k : c->kids) {
        std::vector<ConceptPtr> part = el_split(k);
        std::vector<ConceptPtr> next;
        for (ConceptPtr a : acc)
          for (ConceptPtr b : part) {
            next.push_back(conj({a, b}));
            if (next.size() > kFormCap)
              throw ResourceError("disjunct budget exceeded");
          }
        acc = std::move(next);
      }
      return acc;
    }
    case Ctor::Exists: {
      std::vector<ConceptPtr> out;
      for (ConceptPtr d : el_split(c->kid()))
        out.push_back(exists(c->role, 1, d));
      return out;
    }
    default:
      throw DialectError("not an EL-with-or concept: " + c->text);
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw DialectError(what);
}

}  // namespace

ConceptPtr normalize_concept(ConceptPtr c, NormalForm form) {
  switch (form) {
    case NormalForm::ElnegNnf:
      require(conforms(c, Dialect::ELneg, UFlag::None),
              "elneg-nnf expects a concept in the boolean closure of EL");
      return nnf_pos(c);
    case NormalForm::ElsqcupSplit:
      require(conforms(c, Dialect::ELsqcup, UFlag::None),
              "elsqcup-split expects an EL-with-or concept");
      return disj(el_split(c));
    case NormalForm::AlcuDnf:
      require(conforms(c, Dialect::ALC, UFlag::U1),
              "alcu-dnf expects an ALC concept with plain u");
      return udnf_assemble(udnf(c));
    case NormalForm::ElnegTboxToElsqcup:
      throw std::invalid_argument("elneg-tbox-to-elsqcup applies to TBoxes");
  }
  return c;
}

TBox normalize_tbox(const TBox& t, NormalForm form) {
  TBox out;
  switch (form) {
    case NormalForm::ElnegNnf:
    case NormalForm::AlcuDnf:
      for (const Axiom& ax : t.axioms)
        out.axioms.push_back({normalize_concept(ax.lhs, form),
                              normalize_concept(ax.rhs, form)});
      return out;
    case NormalForm::ElsqcupSplit: {
      for (const Axiom& ax : t.axioms) {
        require(conforms(ax.lhs, Dialect::ELsqcup, UFlag::None) &&
                    conforms(ax.rhs, Dialect::ELsqcup, UFlag::None),
                "elsqcup-split expects an EL-with-or TBox");
        ConceptPtr rhs = disj(el_split(ax.rhs));
        for (ConceptPtr l : el_split(ax.lhs)) out.axioms.push_back({l, rhs});
      }
      return out;
    }
    case NormalForm::ElnegTboxToElsqcup: {
      // Each axiom C [= D holds iff top [= not C or D does; the NNF of that
      // right side distributes into clauses over EL literals, and each clause
      // becomes one axiom (and of negated literals) [= (or of positive ones).
      for (const Axiom& ax : t.axioms) {
        require(conforms(ax.lhs, Dialect::ELneg, UFlag::None) &&
                    conforms(ax.rhs, Dialect::ELneg, UFlag::None),
                "elneg-tbox-to-elsqcup expects a TBox over the boolean closure of EL");
        ConceptPtr e = nnf_pos(disj({neg(ax.lhs), ax.rhs}));
        for (const Clause& clause : cnf(e)) {
          std::vector<ConceptPtr> n, p;
          for (ConceptPtr lit : clause)
            (lit->op == Ctor::Not ? n : p).push_back(
                lit->op == Ctor::Not ? lit->kid() : lit);
          ConceptPtr lhs = conj(std::move(n));
          ConceptPtr rhs = disj(std::move(p));
          bool tautology = false;
          for (ConceptPtr lit : clause)
            if (lit->op == Ctor::Not)
              for (ConceptPtr other : clause)
                if (other == lit->kid()) tautology = true;
          if (rhs == top()) tautology = true;
          if (tautology) continue;
          Axiom na{lhs, rhs};
          bool dup = false;
          for (const Axiom& have : out.axioms)
            if (have == na) dup = true;
          if (!dup) out.axioms.push_back(na);
        }
      }
      return out;
    }
  }
  return out;
}

// ── First-order translation ─────────────────────────────────────────────────

namespace {

std::string var(int i) { return "x" + std::to_string(i); }

std::string fo(ConceptPtr c, int i, int& next);

std::string fo_counting(ConceptPtr c, int i, int& next) {
  // min k spends k fresh variables, pairwise distinct, each a witness.
  int k = static_cast<int>(c->bound);
  std::vector<int> vs;
  for (int a = 0; a < k; ++a) vs.push_back(next++);
  std::string body;
  for (size_t a = 0; a < vs.size(); ++a)
    for (size_t b = a + 1; b < vs.size(); ++b)
      body += (body.empty() ? "" : " ∧ ") + std::string("¬(") + var(vs[a]) +
              " = " + var(vs[b]) + ")";
  for (int v : vs) {
    std::string edge;
    switch (c->role.kind) {
      case RoleKind::Direct: edge = c->role.name + "(" + var(i) + "," + var(v) + ") ∧ "; break;
      case RoleKind::Inverse: edge = c->role.name + "(" + var(v) + "," + var(i) + ") ∧ "; break;
      case RoleKind::Universal: edge = ""; break;
    }
    body += (body.empty() ? "" : " ∧ ") + edge + fo(c->kid(), v, next);
  }
  std::string out;
  for (int v : vs) out += "∃" + var(v) + ".";
  return out + "(" + body + ")";
}

std::string fo(ConceptPtr c, int i, int& next) {
  switch (c->op) {
    case Ctor::Top: return "⊤";
    case Ctor::Bot: return "⊥";
    case Ctor::Name:
    case Ctor::Nominal:
      return c->name + "(" + var(i) + ")";
    case Ctor::Not:
      return "¬" + fo(c->kid(), i, next);
    case Ctor::And:
    case Ctor::Or: {
      if (c->op == Ctor::Or && c->kids.size() == 2) {
        // render a two-part or with a negated side as an implication
        if (c->kids[0]->op == Ctor::Not)
          return "(" + fo(c->kids[0]->kid(), i, next) + " → " +
                 fo(c->kids[1], i, next) + ")";
        if (c->kids[1]->op == Ctor::Not)
          return "(" + fo(c->kids[1]->kid(), i, next) + " → " +
                 fo(c->kids[0], i, next) + ")";
      }
      std::string sep = c->op == Ctor::And ? " ∧ " : " ∨ ";
      std::string out = "(" + fo(c->kids[0], i, next);
      for (size_t k = 1; k < c->kids.size(); ++k)
        out += sep + fo(c->kids[k], i, next);
      return out + ")";
    }
    case Ctor::Exists:
    case Ctor::Forall: {
      bool ex = c->op == Ctor::Exists;
      if (c->role.is_universal() && c->bound == 1)
        return (ex ? "∃" : "∀") + var(i) + "." + fo(c->kid(), i, next);
      if (c->bound != 1) {
        if (ex) return fo_counting(c, i, next);
        // max k r . C abbreviates not min k r . not C
        ConceptPtr dual = exists(c->role, c->bound, neg(c->kid()));
        return "¬" + fo_counting(dual, i, next);
      }
      int j = i == 0 ? 1 : 0;
      std::string edge = c->role.kind == RoleKind::Inverse
                             ? c->role.name + "(" + var(j) + "," + var(i) + ")"
                             : c->role.name + "(" + var(i) + "," + var(j) + ")";
      if (ex)
        return "∃" + var(j) + ".(" + edge + " ∧ " + fo(c->kid(), j, next) + ")";
      return "∀" + var(j) + ".(" + edge + " → " + fo(c->kid(), j, next) + ")";
    }
  }
  return "";
}

}  // namespace

std::string fo_translate(ConceptPtr c, int i) {
  int next = std::max(i + 1, 2);
  return fo(c, i, next);
}

}  // namespace dlkit

// ============================================================================
//  test_syntax.cpp -- parsing, printing, measures, closures, normal forms
// ============================================================================
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <random>

#include "dlkit/syntax.hpp"

using namespace dlkit;

namespace {

Signature fixture_sig() {
  Signature s;
  s.declare_concept("A");
  s.declare_concept("B");
  s.declare_role("r");
  s.declare_role("s");
  s.declare_individual("a");
  return s;
}

ConceptPtr pc(const std::string& text) {
  Signature s = fixture_sig();
  return parse_concept(text, s);
}

}  // namespace

// ── Signatures and identifiers ──────────────────────────────────────────────

TEST_CASE("identifiers and reserved words") {
  CHECK(valid_identifier("A"));
  CHECK(valid_identifier("r_1"));
  CHECK(valid_identifier("Role2"));
  CHECK_FALSE(valid_identifier(""));
  CHECK_FALSE(valid_identifier("1a"));
  CHECK_FALSE(valid_identifier("a-b"));
  CHECK_FALSE(valid_identifier("some"));
  CHECK_FALSE(valid_identifier("u"));
  CHECK(reserved_word("min"));
  CHECK_FALSE(reserved_word("minimal"));
}

TEST_CASE("signature categories stay disjoint") {
  Signature s;
  s.declare_concept("A");
  s.declare_role("r");
  s.declare_individual("a");
  s.declare_concept("A");  // redeclaring in place is fine
  CHECK_THROWS_AS(s.declare_role("A"), std::invalid_argument);
  CHECK_THROWS_AS(s.declare_concept("a"), std::invalid_argument);
  CHECK_THROWS_AS(s.declare_individual("r"), std::invalid_argument);
  CHECK_THROWS_AS(s.declare_role("u"), std::invalid_argument);

  Signature t;
  t.declare_concept("r");
  CHECK_THROWS_AS(s.merge(t), std::invalid_argument);
  Signature ok;
  ok.declare_concept("B");
  s.merge(ok);
  CHECK(s.has_concept("B"));
}

// ── Parsing ─────────────────────────────────────────────────────────────────

TEST_CASE("parses the concept grammar") {
  ConceptPtr c = pc("some r . (A and B)");
  REQUIRE(c->op == Ctor::Exists);
  CHECK(c->role == Role::direct("r"));
  CHECK(c->bound == 1);
  REQUIRE(c->kid()->op == Ctor::And);
  CHECK(c->kid()->kids.size() == 2);
  CHECK(c->kid()->kids[0] == name("A"));
  CHECK(c->kid()->kids[1] == name("B"));

  ConceptPtr m = pc("min 3 r . A");
  REQUIRE(m->op == Ctor::Exists);
  CHECK(m->bound == 3);
  CHECK(m->kid() == name("A"));

  ConceptPtr i = pc("some inv(r) . top");
  CHECK(i->role == Role::inverse("r"));
  CHECK(i->kid() == top());

  ConceptPtr n = pc("min 2 u . {a}");
  CHECK(n->role.is_universal());
  CHECK(n->bound == 2);
  CHECK(n->kid() == nominal("a"));

  CHECK(pc("top") == top());
  CHECK(pc("bot") == bot());
  CHECK(pc("not A") == neg(name("A")));
  CHECK(pc("all r . A") == forall(Role::direct("r"), name("A")));
  CHECK(pc("max 2 s . B") == forall(Role::direct("s"), 2, name("B")));
  CHECK(pc("(A and B and not A)")->kids.size() == 3);
}

TEST_CASE("parse errors carry positions") {
  Signature s = fixture_sig();
  CHECK_THROWS_AS(parse_concept("some r .", s), ParseError);
  CHECK_THROWS_AS(parse_concept("(A and B or A)", s), ParseError);   // mixed group
  CHECK(parse_concept("(A)", s) == name("A"));  // redundant parens are fine
  CHECK_THROWS_AS(parse_concept("A B", s), ParseError);              // trailing input
  CHECK_THROWS_AS(parse_concept("some inv(u) . A", s), ParseError);  // no inverse of u
  CHECK_THROWS_AS(parse_concept("C", s), ParseError);                // undeclared
  CHECK_THROWS_AS(parse_concept("some q . A", s), ParseError);       // undeclared role
  CHECK_THROWS_AS(parse_concept("min r . A", s), ParseError);        // missing count
  CHECK_THROWS_AS(parse_concept("some r . \xc3\xa9", s), ParseError);

  try {
    parse_concept("(A and\n   ?)", s);
    CHECK_FALSE("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.col == 4);
  }
}

TEST_CASE("declare-on-use infers categories from position") {
  Signature s;
  ConceptPtr c = parse_concept("some q . (C and {b})", s, true);
  CHECK(s.has_role("q"));
  CHECK(s.has_concept("C"));
  CHECK(s.has_individual("b"));
  CHECK(c->op == Ctor::Exists);
  // a name reused in the wrong category still fails
  CHECK_THROWS_AS(parse_concept("some C . top", s, true), ParseError);
}

TEST_CASE("parses TBox files") {
  Signature s = fixture_sig();
  TBox t = parse_tbox("A [= some r . A", s);
  REQUIRE(t.axioms.size() == 1);
  CHECK(t.axioms[0].lhs == name("A"));
  CHECK(t.axioms[0].rhs == exists(Role::direct("r"), name("A")));

  TBox t2 = parse_tbox("some inv(r).top [= some r.top", s);
  REQUIRE(t2.axioms.size() == 1);
  CHECK(t2.axioms[0].lhs == exists(Role::inverse("r"), top()));

  CHECK(parse_tbox("", s).empty());
  CHECK(parse_tbox("# nothing here\n\n  \n# more", s).empty());

  TBox t3 = parse_tbox("# header\nA [= B  # trailing note\r\nB [= A\n", s);
  CHECK(t3.axioms.size() == 2);

  CHECK_THROWS_AS(parse_tbox("A [= B [= A", s), ParseError);
  CHECK_THROWS_AS(parse_tbox("A\nB", s), ParseError);
  try {
    parse_tbox("A [= B\nA [= ?\n", s);
    CHECK_FALSE("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

// ── Canonical forms and round trips ─────────────────────────────────────────

TEST_CASE("canonicalization is stable") {
  // flattening, sorting, deduplication
  CHECK(pc("(B and A)") == pc("(A and B)"));
  CHECK(pc("((A and B) and B)") == pc("(A and B)"));
  CHECK(pc("(A or (B or A))") == pc("(A or B)"));
  // units and absorbing elements
  CHECK(pc("(A and top)") == name("A"));
  CHECK(pc("(A and bot)") == bot());
  CHECK(pc("(A or bot)") == name("A"));
  CHECK(pc("(A or top)") == top());
  CHECK(pc("(A and A)") == name("A"));
  // negation collapses
  CHECK(pc("not not A") == name("A"));
  CHECK(pc("not top") == bot());
  CHECK(pc("not bot") == top());
  // trivial bounds collapse
  CHECK(pc("min 0 r . A") == top());
  CHECK(pc("max 0 r . A") == bot());
  // interning gives pointer equality for structurally equal concepts
  CHECK(pc("some r . (A and B)") == pc("some r . (B and A)"));
}

TEST_CASE("render and reparse round trip") {
  const char* fixtures[] = {
      "top",
      "bot",
      "A",
      "{a}",
      "not A",
      "(A and B)",
      "(A or B)",
      "(A and B and not A)",
      "some r . top",
      "all r . (A or not B)",
      "min 3 r . A",
      "max 2 inv(s) . (A and B)",
      "some u . A",
      "all u . some s . top",
      "min 2 u . {a}",
      "some r . some inv(r) . (B or {a} or not A)",
  };
  for (const char* f : fixtures) {
    ConceptPtr c = pc(f);
    CAPTURE(f);
    CHECK(pc(render(c)) == c);
  }

  Signature s = fixture_sig();
  TBox t = parse_tbox("A [= some r . A\n(A and B) [= bot", s);
  Signature s2 = fixture_sig();
  TBox back = parse_tbox(render(t), s2);
  REQUIRE(back.axioms.size() == t.axioms.size());
  for (size_t i = 0; i < back.axioms.size(); ++i)
    CHECK(back.axioms[i] == t.axioms[i]);
}

// ── Measures ────────────────────────────────────────────────────────────────

TEST_CASE("rank, grade, and length") {
  CHECK(rank(pc("some r . some r . A")) == 2);
  CHECK(grade(pc("min 3 r . (min 5 s . top)")) == 5);
  CHECK(length(pc("some r . (A and B)")) == 4);

  CHECK(rank(pc("A")) == 0);
  CHECK(rank(pc("not some r . A")) == 1);
  // restrictions along the universal role are free
  CHECK(rank(pc("some u . A")) == 0);
  CHECK(rank(pc("some r . all u . some s . top")) == 2);
  CHECK(rank(pc("all u . some s . top")) == 1);

  CHECK(grade(pc("A")) == 0);
  CHECK(grade(pc("some r . A")) == 1);
  CHECK(grade(pc("min 2 u . A")) == 2);

  CHECK(length(pc("A")) == 1);
  CHECK(length(pc("not A")) == 2);
  CHECK(length(pc("(A and B and not A)")) == 6);

  Signature s = fixture_sig();
  TBox t = parse_tbox("A [= some r . A", s);
  CHECK(rank(t) == 1);
  CHECK(length(t) == 3);
  CHECK(rank(TBox{}) == 0);
}

TEST_CASE("dialect classification") {
  auto dial = [](const char* text) {
    Measure m = measure(pc(text));
    return dialect_name(m.min_dialect, m.u_flag);
  };
  CHECK(dial("A") == "EL");
  CHECK(dial("some r . (A and B)") == "EL");
  CHECK(dial("(A or B)") == "ELsqcup");
  CHECK(dial("bot") == "ELsqcup");
  CHECK(dial("not A") == "ELneg");
  CHECK(dial("not (A and not some r . B)") == "ELneg");
  CHECK(dial("all r . not A") == "ELneg");     // spelled not some r . A
  CHECK(dial("all r . bot") == "ELneg");
  CHECK(dial("all r . A") == "ALC");           // no positive all in the closure
  CHECK(dial("some r . not A") == "ALC");      // negation below some leaves EL
  CHECK(dial("some r . (A or B)") == "ELsqcup");
  CHECK(dial("some inv(r) . A") == "ALCI");
  CHECK(dial("min 2 r . A") == "ALCQ");
  CHECK(dial("{a}") == "ALCO");
  CHECK(dial("(min 2 r . A and {a})") == "ALCQO");
  CHECK(dial("min 2 inv(r) . A") == "ALCQIO");
  CHECK(dial("(some inv(r) . A and {a})") == "ALCQIO");
  CHECK(dial("some u . A") == "ELu");
  CHECK(dial("all u . A") == "ELuneg");
  CHECK(dial("all u . not A") == "ELuneg");
  CHECK(dial("(not A and some u . B)") == "ELuneg");
  CHECK(dial("some u . all r . A") == "ALCu");
  CHECK(dial("min 2 u . A") == "ALCQu");
  CHECK(dial("(min 2 r . A and some u . B)") == "ALCQu1");

  CHECK(conforms(pc("not (A and not B)"), Dialect::ELneg));
  CHECK_FALSE(conforms(pc("some r . not A"), Dialect::ELneg));
  CHECK(conforms(pc("some r . not A"), Dialect::ALC));
  CHECK(conforms(pc("some u . A"), Dialect::EL, UFlag::U1));
  CHECK_FALSE(conforms(pc("some u . A"), Dialect::EL, UFlag::None));
  CHECK(conforms(pc("min 2 r . A"), Dialect::ALCQIO));
  CHECK_FALSE(conforms(pc("min 2 r . A"), Dialect::ALCI));

  Signature s = fixture_sig();
  TBox t = parse_tbox("A [= some inv(r) . B", s);
  CHECK(measure(t).min_dialect == Dialect::ALCI);
  CHECK(conforms(t, Dialect::ALCI));
  CHECK_FALSE(conforms(t, Dialect::ALC));
}

// ── Primitive form and closure ──────────────────────────────────────────────

TEST_CASE("primitive form eliminates or and all") {
  CHECK(primitive_form(pc("(A or B)")) == pc("not (not A and not B)"));
  CHECK(primitive_form(pc("all r . A")) == pc("not some r . not A"));
  CHECK(primitive_form(pc("not not A")) == name("A"));
  CHECK(primitive_form(pc("some r . (A or B)")) ==
        pc("some r . not (not A and not B)"));
  CHECK_THROWS_AS(primitive_form(pc("{a}")), DialectError);
  CHECK_THROWS_AS(primitive_form(pc("min 2 r . A")), DialectError);
  CHECK_THROWS_AS(primitive_form(pc("some u . A")), DialectError);
}

TEST_CASE("closure of a TBox") {
  Signature s = fixture_sig();

  TBox t = parse_tbox("A [= some r . A", s);
  auto cs = clos(t);
  REQUIRE(cs.size() == 4);
  CHECK(cs[0] == name("A"));
  CHECK(cs[1] == pc("not A"));
  CHECK(cs[2] == pc("not some r . A"));
  CHECK(cs[3] == pc("some r . A"));
  CHECK(static_cast<long>(cs.size()) <= 2 * length(t));

  TBox t2 = parse_tbox("top [= A", s);
  auto cs2 = clos(t2);
  REQUIRE(cs2.size() == 2);
  CHECK(cs2[0] == name("A"));
  CHECK(cs2[1] == pc("not A"));

  CHECK(clos(TBox{}).empty());

  // or and all enter through their primitive forms
  TBox t3 = parse_tbox("A [= all r . (A or B)", s);
  auto cs3 = clos(t3);
  CHECK(cs3.size() == 6);
  CHECK(static_cast<long>(cs3.size()) <= 2 * length(t3));

  TBox bad = parse_tbox("A [= min 2 r . A", s);
  CHECK_THROWS_AS(clos(bad), DialectError);
  TBox bad2 = parse_tbox("A [= some u . A", s);
  CHECK_THROWS_AS(clos(bad2), DialectError);
}

TEST_CASE("closure size bound on random TBoxes") {
  std::mt19937_64 rng(20250817);
  Signature s = fixture_sig();
  std::vector<std::string> names = {"A", "B"};
  std::vector<std::string> roles = {"r", "s"};

  // random ALCI concept of bounded quantifier depth
  std::function<ConceptPtr(int, int)> gen = [&](int depth, int size) -> ConceptPtr {
    std::uniform_int_distribution<int> pick(0, depth > 0 && size > 1 ? 6 : 2);
    switch (pick(rng)) {
      case 0: return name(names[rng() % names.size()]);
      case 1: return rng() % 4 ? name(names[rng() % names.size()]) : top();
      case 2: return neg(gen(depth, size - 1));
      case 3: case 4: {
        ConceptPtr l = gen(depth, size / 2), r = gen(depth, size / 2);
        return rng() % 2 ? conj({l, r}) : disj({l, r});
      }
      case 5: {
        Role ro = Role::direct(roles[rng() % roles.size()]);
        if (rng() % 3 == 0) ro = ro.flipped();
        return exists(ro, 1, gen(depth - 1, size - 1));
      }
      default: {
        Role ro = Role::direct(roles[rng() % roles.size()]);
        return forall(ro, 1, gen(depth - 1, size - 1));
      }
    }
  };

  for (int i = 0; i < 100; ++i) {
    TBox t;
    int axioms = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < axioms && length(t) <= 20; ++k)
      t.axioms.push_back({gen(3, 5), gen(3, 5)});
    std::string txt = render(t);
    CAPTURE(txt);
    CHECK(static_cast<long>(clos(t).size()) <= 2 * length(t));
  }
}

// ── Normal forms ────────────────────────────────────────────────────────────

TEST_CASE("negation normal form on the boolean closure of EL") {
  CHECK(normalize_concept(pc("not (A and not B)"), NormalForm::ElnegNnf) ==
        pc("(B or not A)"));
  CHECK(normalize_concept(pc("not not A"), NormalForm::ElnegNnf) == name("A"));
  CHECK(normalize_concept(pc("all r . not A"), NormalForm::ElnegNnf) ==
        pc("not some r . A"));
  CHECK(normalize_concept(pc("not all r . not A"), NormalForm::ElnegNnf) ==
        pc("some r . A"));
  CHECK(normalize_concept(pc("some r . (A and B)"), NormalForm::ElnegNnf) ==
        pc("some r . (A and B)"));
  CHECK_THROWS_AS(normalize_concept(pc("some r . not A"), NormalForm::ElnegNnf),
                  DialectError);
}

TEST_CASE("EL TBoxes with negation rewrite into EL TBoxes with or") {
  Signature s = fixture_sig();
  TBox t = parse_tbox("top [= not (A and not B)", s);
  TBox out = normalize_tbox(t, NormalForm::ElnegTboxToElsqcup);
  REQUIRE(out.axioms.size() == 1);
  CHECK(out.axioms[0].lhs == name("A"));
  CHECK(out.axioms[0].rhs == name("B"));

  // every output side must be an EL-with-or concept
  TBox t2 = parse_tbox(
      "not some r . A [= (not B or not some r . (A and B))\n"
      "(A and not B) [= bot", s);
  TBox out2 = normalize_tbox(t2, NormalForm::ElnegTboxToElsqcup);
  CHECK(conforms(out2, Dialect::ELsqcup, UFlag::None));
  for (const Axiom& ax : out2.axioms) CHECK(conforms(ax.lhs, Dialect::EL));

  // tautological clauses disappear
  TBox t3 = parse_tbox("A [= A", s);
  CHECK(normalize_tbox(t3, NormalForm::ElnegTboxToElsqcup).empty());

  TBox bad = parse_tbox("A [= some r . not A", s);
  CHECK_THROWS_AS(normalize_tbox(bad, NormalForm::ElnegTboxToElsqcup),
                  DialectError);
}

TEST_CASE("EL-with-or concepts split into pure EL disjuncts") {
  CHECK(normalize_concept(pc("some r . (A or B)"), NormalForm::ElsqcupSplit) ==
        pc("(some r . A or some r . B)"));
  CHECK(normalize_concept(pc("(A and (B or A))"), NormalForm::ElsqcupSplit) ==
        pc("((A and B) or A)"));
  CHECK(normalize_concept(pc("some r . bot"), NormalForm::ElsqcupSplit) == bot());
  ConceptPtr split = normalize_concept(
      pc("some r . ((A or B) and some s . (A or top))"), NormalForm::ElsqcupSplit);
  if (split->op == Ctor::Or)
    for (ConceptPtr d : split->kids) CHECK(conforms(d, Dialect::EL));

  Signature s = fixture_sig();
  TBox t = parse_tbox("(A or some r . B) [= (B or A)", s);
  TBox out = normalize_tbox(t, NormalForm::ElsqcupSplit);
  REQUIRE(out.axioms.size() == 2);
  CHECK(out.axioms[0].lhs == name("A"));
  CHECK(out.axioms[1].lhs == pc("some r . B"));
  CHECK(out.axioms[0].rhs == pc("(A or B)"));

  CHECK_THROWS_AS(normalize_concept(pc("not A"), NormalForm::ElsqcupSplit),
                  DialectError);
}

namespace {

bool uses_u(ConceptPtr c) {
  if ((c->op == Ctor::Exists || c->op == Ctor::Forall) && c->role.is_universal())
    return true;
  for (ConceptPtr k : c->kids)
    if (uses_u(k)) return true;
  return false;
}

// or over (u-free local and some-u parts and at most one all-u part)
bool dnf_shape(ConceptPtr c) {
  auto disjunct_ok = [](ConceptPtr d) {
    std::vector<ConceptPtr> parts =
        d->op == Ctor::And ? d->kids : std::vector<ConceptPtr>{d};
    int alls = 0;
    for (ConceptPtr p : parts) {
      if ((p->op == Ctor::Exists || p->op == Ctor::Forall) &&
          p->role.is_universal()) {
        if (uses_u(p->kid())) return false;
        if (p->op == Ctor::Forall && ++alls > 1) return false;
      } else if (uses_u(p)) {
        return false;
      }
    }
    return true;
  };
  std::vector<ConceptPtr> djs =
      c->op == Ctor::Or ? c->kids : std::vector<ConceptPtr>{c};
  for (ConceptPtr d : djs)
    if (!disjunct_ok(d)) return false;
  return true;
}

}  // namespace

TEST_CASE("ALCu disjunctive normal form") {
  ConceptPtr in = pc("some r . (top and all u . some s . top)");
  ConceptPtr out = normalize_concept(in, NormalForm::AlcuDnf);
  CHECK(out == pc("(all u . some s . top and some r . top)"));
  CHECK(rank(out) <= rank(in));
  CHECK(dnf_shape(out));

  // u-free inputs stay in plain DNF shape over themselves
  CHECK(dnf_shape(normalize_concept(pc("not (A and some r . B)"),
                                    NormalForm::AlcuDnf)));
  // nested u restrictions surface to the top level
  ConceptPtr deep = pc("all r . (A or some u . (B and all u . A))");
  ConceptPtr deep_out = normalize_concept(deep, NormalForm::AlcuDnf);
  CHECK(dnf_shape(deep_out));
  CHECK(rank(deep_out) <= rank(deep));

  CHECK_THROWS_AS(normalize_concept(pc("min 2 r . A"), NormalForm::AlcuDnf),
                  DialectError);
  CHECK_THROWS_AS(normalize_concept(pc("{a}"), NormalForm::AlcuDnf),
                  DialectError);
  CHECK_THROWS_AS(normalize_concept(pc("min 2 u . A"), NormalForm::AlcuDnf),
                  DialectError);
}

TEST_CASE("DNF rank never grows on random ALCu concepts") {
  std::mt19937_64 rng(462531);
  std::vector<std::string> names = {"A", "B"};
  std::vector<std::string> roles = {"r", "s"};

  std::function<ConceptPtr(int, int)> gen = [&](int depth, int size) -> ConceptPtr {
    std::uniform_int_distribution<int> pick(0, depth > 0 && size > 1 ? 7 : 2);
    switch (pick(rng)) {
      case 0: return name(names[rng() % names.size()]);
      case 1: return rng() % 4 == 0 ? (rng() % 2 ? top() : bot())
                                    : name(names[rng() % names.size()]);
      case 2: return neg(gen(depth, size - 1));
      case 3: case 4: {
        ConceptPtr l = gen(depth, size / 2), r = gen(depth, size / 2);
        return rng() % 2 ? conj({l, r}) : disj({l, r});
      }
      case 5: case 6: {
        Role ro = Role::direct(roles[rng() % roles.size()]);
        ConceptPtr body = gen(depth - 1, size - 1);
        return rng() % 2 ? exists(ro, 1, body) : forall(ro, 1, body);
      }
      default: {
        ConceptPtr body = gen(depth - 1, size - 1);
        return rng() % 2 ? exists(Role::universal(), 1, body)
                         : forall(Role::universal(), 1, body);
      }
    }
  };

  for (int i = 0; i < 1000; ++i) {
    ConceptPtr c = gen(4, 9);
    CAPTURE(render(c));
    ConceptPtr d = normalize_concept(c, NormalForm::AlcuDnf);
    CHECK(rank(d) <= rank(c));
    CHECK(dnf_shape(d));
  }
}

// ── First-order translation ─────────────────────────────────────────────────

TEST_CASE("standard translation into first-order logic") {
  CHECK(fo_translate(pc("A")) == "A(x0)");
  CHECK(fo_translate(pc("all r . (not A or some r . B)")) ==
        "∀x1.(r(x0,x1) → (A(x1) → ∃x0.(r(x1,x0) ∧ B(x0))))");
  CHECK(fo_translate(pc("some u . A")) == "∃x0.A(x0)");
  CHECK(fo_translate(pc("A"), 1) == "A(x1)");
  CHECK(fo_translate(pc("not A")) == "¬A(x0)");
  CHECK(fo_translate(pc("(A and B)")) == "(A(x0) ∧ B(x0))");
  CHECK(fo_translate(pc("some inv(r) . A")) == "∃x1.(r(x1,x0) ∧ A(x1))");
  CHECK(fo_translate(pc("all u . A")) == "∀x0.A(x0)");
  CHECK(fo_translate(pc("{a}")) == "a(x0)");

  // counting spends fresh pairwise-distinct variables
  CHECK(fo_translate(pc("min 2 r . A")) ==
        "∃x2.∃x3.(¬(x2 = x3) ∧ r(x0,x2) ∧ A(x2) ∧ r(x0,x3) ∧ A(x3))");
  CHECK(fo_translate(pc("max 2 r . A")) ==
        "¬∃x2.∃x3.(¬(x2 = x3) ∧ r(x0,x2) ∧ ¬A(x2) ∧ r(x0,x3) ∧ ¬A(x3))");

  // the ALC fragment stays inside two variables
  const char* alc[] = {"all r . some s . (A and not B)",
                       "not some r . (A or not some s . A)",
                       "some u . all r . A"};
  for (const char* f : alc) {
    std::string t = fo_translate(pc(f));
    CAPTURE(f);
    CHECK(t.find("x2") == std::string::npos);
  }
}

#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "formula_gen.hpp"
#include "ordforge/formula.hpp"
#include "ordforge/formula_io.hpp"
#include "ordforge/ordinal.hpp"
#include "ordforge/rank.hpp"

using namespace ordforge;

namespace {

Ord o(const std::string& text) { return parse_ord(text); }

bool oeq(const Ord& a, const Ord& b) { return compare(a, b) == Cmp::equal; }
bool olt(const Ord& a, const Ord& b) { return compare(a, b) == Cmp::less; }
bool ole(const Ord& a, const Ord& b) { return compare(a, b) != Cmp::greater; }

FormulaPtr f(const std::string& text, Theory th = Theory::ikp) {
  return parse_formula(text, th);
}

bool same_slots(const Formula& a, const Formula& b) {
  const auto sa = term_slots(a);
  const auto sb = term_slots(b);
  return sa.size() == sb.size() &&
         std::equal(sa.begin(), sa.end(), sb.begin(),
                    [](const TermPtr& x, const TermPtr& y) { return *x == *y; });
}

}  // namespace

TEST_CASE("parser produces the expected shapes") {
  auto g = f("(all x in a)(x in b)");
  REQUIRE(g->kind() == Formula::Kind::bounded_forall);
  CHECK(*g->terms()[0] == *Term::free_var("a"));
  CHECK(*g->subs()[0] ==
        *Formula::member(Term::bound_var(0), Term::free_var("b")));

  auto h = f("ex x . x in a & x = b");
  REQUIRE(h->kind() == Formula::Kind::exists);
  CHECK(h->subs()[0]->kind() == Formula::Kind::conjunction);

  auto p = f("(ex x sub a) x in b", Theory::ikpp);
  CHECK(p->kind() == Formula::Kind::subset_exists);

  auto e = f("(all g in exp(a, b)) g in c", Theory::ikpe);
  REQUIRE(e->kind() == Formula::Kind::exp_forall);
  CHECK(*e->terms()[0] == *Term::free_var("a"));
  CHECK(*e->terms()[1] == *Term::free_var("b"));

  auto c = parse_term_text("{ x in L(3) | x in a }");
  REQUIRE(c->kind() == Term::Kind::comprehension);
  CHECK(oeq(c->base()->level_ord(), o("3")));

  auto v = parse_term_text("var(2, w+1)");
  REQUIRE(v->kind() == Term::Kind::levelled_var);
  CHECK(v->var_id() == 2);
  CHECK(oeq(v->level_ord(), o("w+1")));
}

TEST_CASE("parser rejects malformed and foreign input") {
  CHECK_THROWS_AS(f("all x x in a"), ParseError);
  CHECK_THROWS_AS(f("x in"), ParseError);
  CHECK_THROWS_AS(f("(all in in a) x in b"), ParseError);
  CHECK_THROWS_AS(f("a in L(3@)"), ParseError);
  CHECK_THROWS_AS(f("a in b b in c"), ParseError);  // trailing input
  CHECK_THROWS_AS(f(""), ParseError);
  CHECK_THROWS_AS(f("(ex x sub a) x in b", Theory::ikp), TheoryMismatch);
  CHECK_THROWS_AS(f("(all g in exp(a, b)) g in c", Theory::ikpp), TheoryMismatch);
  CHECK_THROWS_AS(f("fun(a, b, c)", Theory::ikp), TheoryMismatch);
  CHECK_THROWS_AS(f("fun(a, b, c)", Theory::ikpp), TheoryMismatch);
}

TEST_CASE("parse error offsets point into the input") {
  try {
    f("a in b & c inn d");
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    CHECK(std::string(err.what()).find("offset") != std::string::npos);
  }
}

TEST_CASE("classification matches the defining induction") {
  struct Row {
    const char* text;
    Theory theory;
    bool delta0, sigma, pi, strict;
  };
  const Row rows[] = {
      {"a in b", Theory::ikp, true, true, true, true},
      {"(all x in a)(x in b)", Theory::ikp, true, true, true, true},
      {"ex x . x in a", Theory::ikp, false, true, false, true},
      {"all x . x in a", Theory::ikp, false, false, true, false},
      {"all x . ex y . x in y", Theory::ikp, false, false, false, false},
      {"(all x . x in a) -> ex y . y in b", Theory::ikp, false, true, false, false},
      {"~(all x . x in a)", Theory::ikp, false, true, false, false},
      {"~(ex x . x in a)", Theory::ikp, false, false, true, false},
      {"(all x in a) ex y . y in x", Theory::ikp, false, true, false, true},
      {"(ex x . x in a) & (ex y . y in b)", Theory::ikp, false, true, false, true},
      {"(all x sub a) x in b", Theory::ikpp, true, true, true, true},
      {"(all x sub a) ex y . y in x", Theory::ikpp, false, true, false, true},
      {"(ex g in exp(a, b)) g in c", Theory::ikpe, true, true, true, true},
      {"(ex g in exp(a, b)) all y . y in g", Theory::ikpe, false, false, true, false},
      {"fun(g, a, b)", Theory::ikpe, true, true, true, true},
  };
  for (const Row& row : rows) {
    CAPTURE(row.text);
    const auto c = classify(*f(row.text, row.theory), row.theory);
    CHECK(c.delta0 == row.delta0);
    CHECK(c.sigma == row.sigma);
    CHECK(c.pi == row.pi);
    CHECK(c.strict_sigma == row.strict);
  }
}

TEST_CASE("print and parse round trip") {
  for (Theory th : {Theory::ikp, Theory::ikpp, Theory::ikpe}) {
    testing::FormulaGen gen(th, 0x5eed0000 + static_cast<unsigned>(th));
    for (int i = 0; i < 1000; ++i) {
      auto g = gen.formula(4);
      const std::string text = print_formula(g);
      CAPTURE(text);
      auto back = parse_formula(text, th);
      REQUIRE(*back == *g);
      CHECK(print_formula(back) == text);
    }
  }
}

TEST_CASE("binder naming avoids free variables") {
  auto g = Formula::exists(Formula::member(Term::bound_var(0), Term::free_var("x0")));
  const std::string text = print_formula(g);
  CHECK(text == "ex x1 . x1 in x0");
  CHECK(*parse_formula(text, Theory::ikp) == *g);
}

TEST_CASE("opening and abstracting are mutually inverse") {
  testing::FormulaGen gen(Theory::ikp, 0xabba);
  const auto fresh = Term::free_var("zz");
  for (int i = 0; i < 300; ++i) {
    auto body = Formula::exists(Formula::member(Term::bound_var(0), gen.term(2)));
    auto opened = open_bound(body->subs()[0], fresh);
    CHECK_FALSE(has_loose_bound(*opened, 0));
    CHECK(*abstract_free(opened, "zz") == *body->subs()[0]);
  }
}

TEST_CASE("relativize restricts exactly the unbounded quantifiers") {
  const auto z = parse_term_text("z");
  CHECK(print_formula(relativize(f("ex x . x in a"), z)) == "(ex x0 in z) x0 in a");
  CHECK(print_formula(relativize(f("all x . ex y . x in y"), z)) ==
        "(all x0 in z) (ex x1 in z) x0 in x1");
  auto d0 = f("(all x in a)(x in b)");
  CHECK(*relativize(d0, z) == *d0);
  CHECK(is_delta0(*relativize(f("ex x . x in a"), z), Theory::ikp));
}

TEST_CASE("levels of terms") {
  CHECK(oeq(level(*parse_term_text("L(0)")), o("0")));
  CHECK(oeq(level(*parse_term_text("V(w)")), o("w")));
  CHECK(oeq(level(*parse_term_text("var(3, w)")), o("w")));
  CHECK(oeq(level(*parse_term_text("{ x in V(5) | x in V(0) }")), o("5")));
  CHECK(oeq(level(*parse_term_text("a")), o("0")));
  CHECK_THROWS_AS(level(*parse_term_text("E(2)")), NoLevel);
}

TEST_CASE("stage subscripts collected by k") {
  auto g = f("var(1, w) in V(2) & V(0) in V(2)", Theory::ikpp);
  const auto ks = k_of(*g);
  REQUIRE(ks.size() == 3);
  CHECK(oeq(ks[0], o("0")));
  CHECK(oeq(ks[1], o("2")));
  CHECK(oeq(ks[2], o("w")));

  auto inner = f("a in { x in L(3) | x in L(1) }");
  const auto ki = k_of(*inner);
  REQUIRE(ki.size() == 2);
  CHECK(oeq(ki[0], o("1")));
  CHECK(oeq(ki[1], o("3")));
}

TEST_CASE("exponential measure of terms") {
  CHECK(oeq(mbound(*parse_term_text("E(w)")), o("w")));
  CHECK(oeq(mbound(*parse_term_text("var(0, 3)")), o("3")));
  CHECK(oeq(mbound(*parse_term_text("{ x in E(2) | x in E(1) }")), o("3")));
  CHECK(oeq(mbound(*parse_term_text("a")), o("0")));
  CHECK_THROWS_AS(mbound(*parse_term_text("L(2)")), OrdError);
}

TEST_CASE("constructible rank of terms and formulas") {
  CHECK(oeq(rank_irs(*parse_term_text("L(0)")), o("0")));
  CHECK(oeq(rank_irs(*parse_term_text("L(w)")), o("w^(2)")));
  CHECK(oeq(rank_irs(f("L(1) in L(2)")), o("w+w+1")));
  CHECK(oeq(rank_irs(f("a in b")), o("6")));
  CHECK(oeq(rank_irs(f("ex x . x in L(0)")), o("W")));
  CHECK(oeq(rank_irs(f("all x . x in L(0)")), o("W")));
  CHECK(oeq(rank_irs(f("~(ex x . x in L(0))")), o("W+1")));
  CHECK(oeq(rank_irs(f("(all x in L(2)) x in L(2)")), o("w+w+3")));
  // the comprehension clause takes the larger of subscript and body rank
  CHECK(oeq(rank_irs(*parse_term_text("{ x in L(2) | x in L(0) }")),
                o("w+w+1")));
}

TEST_CASE("power rank of formulas") {
  CHECK(oeq(rank_irsp(f("V(0) in V(1)", Theory::ikpp)), o("2")));
  CHECK(oeq(rank_irsp(f("(ex x sub V(3)) x in V(3)", Theory::ikpp)), o("6")));
  CHECK(oeq(rank_irsp(f("(all x in V(3)) x in V(3)", Theory::ikpp)), o("6")));
  CHECK(oeq(rank_irsp(f("ex x . x in V(0)", Theory::ikpp)), o("W")));
  CHECK(oeq(rank_irsp(f("var(0, w) in V(1)", Theory::ikpp)), o("w+1")));
}

TEST_CASE("exponential rank against assigned stage ordinals") {
  CHECK(oeq(rank_irse(f("a in b", Theory::ikpe), {o("3"), o("5")}), o("5")));
  CHECK(oeq(rank_irse(f("(ex x in E(0)) x in E(0)", Theory::ikpe), {o("3")}),
                o("5")));
  CHECK(oeq(rank_irse(f("(all g in exp(a, b)) g in c", Theory::ikpe),
                          {o("1"), o("2"), o("5")}),
                o("w")));
  CHECK(oeq(rank_irse(f("ex x . x in a", Theory::ikpe)), o("W")));
  CHECK_THROWS_AS(rank_irse(f("a in b", Theory::ikpe), {o("3")}), ArityMismatch);
}

TEST_CASE("norms are omega powers of ranks") {
  CHECK(oeq(norm_no(f("a in b"), Theory::ikp), o("w^(6)")));
  CHECK(oeq(norm_no(f("ex x . x in L(0)"), Theory::ikp), o("W")));
  Sequent seq = make_sequent({f("a in b")}, f("ex x . x in L(0)"));
  CHECK(oeq(norm_no(seq, Theory::ikp), o("W+w^(6)")));
}

TEST_CASE("rank is below the reflection stage exactly on bounded formulas") {
  const Ord big = Ord::big_omega();
  for (Theory th : {Theory::ikp, Theory::ikpp, Theory::ikpe}) {
    testing::FormulaGen gen(th, 0xfeed0 + static_cast<unsigned>(th));
    for (int i = 0; i < 1000; ++i) {
      auto g = gen.formula(3);
      CAPTURE(print_formula(g));
      const Ord r = formula_rank(g, th);
      CHECK(is_delta0(*g, th) == olt(r, big));
    }
  }
}

TEST_CASE("term rank sits inside the window of its level") {
  testing::FormulaGen gen(Theory::ikp, 0x7e57);
  for (int i = 0; i < 500; ++i) {
    auto t = gen.term(2);
    const Ord lvl = level(*t);
    const Ord r = rank_irs(*t);
    CHECK(ole(omega_times(lvl), r));
    CHECK(olt(r, omega_times(add(lvl, Ord::one()))));
  }
}

TEST_CASE("bounded formula rank sits inside the window of its subscripts") {
  testing::FormulaGen gen(Theory::ikp, 0x71d0);
  for (int i = 0; i < 500; ++i) {
    auto g = gen.delta0(3);
    const auto ks = k_of(*g);
    const Ord top = ks.empty() ? Ord::zero() : ks.back();
    const Ord r = rank_irs(g);
    CHECK(ole(omega_times(top), r));
    CHECK(olt(r, omega_times(add(top, Ord::one()))));
  }
}

TEST_CASE("unbounded formula rank exceeds the reflection stage by a finite amount") {
  testing::FormulaGen gen(Theory::ikp, 0xcafe);
  const Ord big = Ord::big_omega();
  int seen = 0;
  for (int i = 0; i < 1000 && seen < 200; ++i) {
    auto g = gen.formula(3);
    if (is_delta0(*g, Theory::ikp)) continue;
    ++seen;
    const Ord r = rank_irs(g);
    CHECK(ole(big, r));
    CHECK(olt(r, add(big, o("w"))));
  }
  CHECK(seen == 200);
}

TEST_CASE("assigned ordinals do not move the rank of unbounded formulas") {
  testing::FormulaGen gen(Theory::ikpe, 0xdead);
  int seen = 0;
  for (int i = 0; i < 1500 && seen < 150; ++i) {
    auto g = gen.formula(3);
    if (is_delta0(*g, Theory::ikpe)) continue;
    ++seen;
    const auto slots = term_slots(*g);
    std::vector<Ord> beta;
    for (std::size_t j = 0; j < slots.size(); ++j)
      beta.push_back(o(j % 2 == 0 ? "w+3" : "2"));
    CHECK(oeq(rank_irse(g, beta), rank_irse(g)));
  }
  CHECK(seen == 150);
}

TEST_CASE("sugar expansion preserves meaning-level structure") {
  auto fx = f("fun(g, a, b)", Theory::ikpe);
  auto ex = expand_sugar(fx);
  CHECK(is_delta0(*ex, Theory::ikpe));
  CHECK(same_slots(*fx, *ex));

  auto eq = f("a = b");
  auto eqx = expand_sugar(eq);
  CHECK(print_formula(eqx) == "(all x0 in a) x0 in b & (all x1 in b) x1 in a");

  auto sub = f("a sub b");
  CHECK(print_formula(expand_sugar(sub)) == "(all x0 in a) x0 in b");

  testing::FormulaGen gen(Theory::ikpe, 0xf00d);
  for (int i = 0; i < 300; ++i) {
    auto g = gen.formula(3);
    CAPTURE(print_formula(g));
    auto x = expand_sugar(g);
    CHECK(same_slots(*g, *x));
    CHECK(is_delta0(*g, Theory::ikpe) == is_delta0(*x, Theory::ikpe));
  }
}

TEST_CASE("sequent printing") {
  Sequent seq = make_sequent({f("a in b"), f("b in c")}, f("ex x . x in a"));
  CHECK(print_sequent(seq) == "a in b, b in c => ex x0 . x0 in a");
  Sequent empty_right = make_sequent({f("a in b")}, nullptr);
  CHECK(print_sequent(empty_right) == "a in b =>");
}

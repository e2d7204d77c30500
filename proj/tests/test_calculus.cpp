#include <string>
#include <vector>

#include "doctest.h"
#include "ordforge/formula_io.hpp"
#include "ordforge/proof.hpp"
#include "ordforge/proof_io.hpp"
#include "proof_fixtures.hpp"

using namespace ordforge;
using testing::fixture_seq;

namespace {

FormulaPtr f(const std::string& text, Theory th = Theory::ikp) {
  return parse_formula(text, th);
}

TermPtr v(const std::string& name) { return Term::free_var(name); }

Sequent sq(const std::vector<std::string>& ante, const std::string& succ,
           Theory th = Theory::ikp) {
  return fixture_seq(th, ante, succ);
}

Sequent proves(FormulaPtr succ) { return Sequent{{}, std::move(succ)}; }

DerivationPtr ax(RuleTag r, Sequent c) { return make_derivation(r, std::move(c)); }

DerivationPtr step(RuleTag r, Sequent c, DerivationPtr p, std::string var = "") {
  return make_derivation(r, std::move(c), {std::move(p)}, std::move(var));
}

DerivationPtr split(RuleTag r, Sequent c, DerivationPtr p, DerivationPtr q) {
  return make_derivation(r, std::move(c), {std::move(p), std::move(q)});
}

}  // namespace

TEST_CASE("rule names round trip and classify") {
  for (int i = 0; i <= static_cast<int>(RuleTag::cut); ++i) {
    const auto tag = static_cast<RuleTag>(i);
    CHECK(rule_from_name(rule_name(tag)) == tag);
    if (takes_eigenvariable(tag)) CHECK(takes_variable(tag));
    if (is_axiom(tag)) CHECK(!takes_variable(tag));
  }
  CHECK_THROWS_AS(rule_from_name("frobnicate"), OrdError);

  CHECK(rule_name(RuleTag::ax_set_induction) == "set-induction");
  CHECK(rule_name(RuleTag::sball_left) == "sball-l");
  CHECK(rule_name(RuleTag::ebex_right) == "ebex-r");
  CHECK(is_axiom(RuleTag::ax_pair));
  CHECK(!is_axiom(RuleTag::cut));
  CHECK(takes_eigenvariable(RuleTag::ex_left));
  CHECK(takes_eigenvariable(RuleTag::all_right));
  CHECK(!takes_eigenvariable(RuleTag::ex_right));
  CHECK(takes_variable(RuleTag::all_left));
  CHECK(!takes_variable(RuleTag::cut));
}

TEST_CASE("the pair derivation checks in every theory") {
  for (Theory th : {Theory::ikp, Theory::ikpp, Theory::ikpe}) {
    auto proof = testing::pair_sigma_proof(th);
    CHECK_NOTHROW(check_proof(*proof, th));
  }
  // the axiom builder and the fixture text spell the same instance
  CHECK(*f("ex z . a in z & b in z") == *pair_axiom(v("a"), v("b")));
}

TEST_CASE("the power set derivation checks") {
  auto proof = testing::power_sigma_proof();
  CHECK_NOTHROW(check_proof(*proof, Theory::ikpp));
  // its language is not available elsewhere
  CHECK_THROWS_WITH_AS(check_proof(*proof, Theory::ikp),
                       "at root: succedent formula outside the theory's language",
                       ProofError);
}

TEST_CASE("the exponentiation derivation checks") {
  auto proof = testing::exp_sigma_proof();
  CHECK_NOTHROW(check_proof(*proof, Theory::ikpe));
  CHECK_THROWS_AS(check_proof(*proof, Theory::ikpp), ProofError);
}

TEST_CASE("axiom instances pass and near misses fail") {
  auto a = v("a");
  auto b = v("b");
  auto x0 = Term::bound_var(0);

  CHECK_NOTHROW(check_proof(*ax(RuleTag::ax_pair, proves(pair_axiom(a, b))),
                            Theory::ikp));
  CHECK_NOTHROW(check_proof(*ax(RuleTag::ax_union, proves(union_axiom(a))),
                            Theory::ikp));
  CHECK_NOTHROW(check_proof(*ax(RuleTag::ax_infinity, proves(infinity_axiom())),
                            Theory::ikp));
  // side formulas ride along on any axiom
  CHECK_NOTHROW(check_proof(
      *ax(RuleTag::ax_pair, sq({"c in d"}, "ex z . a in z & b in z")),
      Theory::ikp));

  auto tested_in_c = Formula::member(x0, v("c"));
  CHECK_NOTHROW(check_proof(
      *ax(RuleTag::ax_separation, proves(separation_axiom(a, tested_in_c))),
      Theory::ikp));
  // a body reaching the collected set is not an instance of the schema
  auto smuggled = Formula::member(x0, Term::bound_var(1));
  CHECK_THROWS_AS(
      check_proof(*ax(RuleTag::ax_separation, proves(separation_axiom(a, smuggled))),
                  Theory::ikp),
      ProofError);

  auto image_of = Formula::member(Term::bound_var(1), x0);
  CHECK_NOTHROW(check_proof(
      *ax(RuleTag::ax_collection, proves(collection_axiom(a, image_of))),
      Theory::ikp));
  // collection and separation bodies must be bounded
  auto unbounded = Formula::exists(Formula::member(Term::bound_var(2), x0));
  CHECK_THROWS_AS(
      check_proof(*ax(RuleTag::ax_collection, proves(collection_axiom(a, unbounded))),
                  Theory::ikp),
      ProofError);

  // set induction takes any body
  auto progressive = Formula::exists(Formula::member(Term::bound_var(1), x0));
  CHECK_NOTHROW(check_proof(
      *ax(RuleTag::ax_set_induction, proves(set_induction_axiom(progressive))),
      Theory::ikp));

  auto body = Formula::member(x0, v("c"));
  CHECK_NOTHROW(check_proof(
      *ax(RuleTag::ax_extensionality, proves(extensionality_axiom(a, b, body))),
      Theory::ikp));
  // replacement in one position only is still an instance (of another body)
  auto loose = Formula::implication(
      Formula::conjunction(Formula::equal(a, b), f("a in a")), f("b in b"));
  CHECK_NOTHROW(
      check_proof(*ax(RuleTag::ax_extensionality, proves(loose)), Theory::ikp));
  // replacement by an unrelated term is not
  auto broken = Formula::implication(
      Formula::conjunction(Formula::equal(a, b), f("a in c")), f("b in d"));
  CHECK_THROWS_AS(
      check_proof(*ax(RuleTag::ax_extensionality, proves(broken)), Theory::ikp),
      ProofError);

  CHECK_NOTHROW(check_proof(*ax(RuleTag::ax_power_set, proves(power_set_axiom(a))),
                            Theory::ikpp));
  CHECK_NOTHROW(check_proof(
      *ax(RuleTag::ax_exponentiation, proves(exponentiation_axiom(a, b))),
      Theory::ikpe));
  // the theory gate fires even when the sequent stays inside the language
  CHECK_THROWS_WITH_AS(
      check_proof(*ax(RuleTag::ax_power_set, sq({}, "a in a")), Theory::ikp),
      "at root: power set axiom outside its theory", ProofError);
  CHECK_THROWS_AS(
      check_proof(*ax(RuleTag::ax_exponentiation, sq({}, "a in a")), Theory::ikpp),
      ProofError);

  // a logical axiom needs its succedent in the antecedent, bounded
  CHECK_NOTHROW(check_proof(*ax(RuleTag::ax_logical, sq({"a in b"}, "a in b")),
                            Theory::ikp));
  CHECK_THROWS_AS(
      check_proof(*ax(RuleTag::ax_logical, sq({"a in b"}, "b in a")), Theory::ikp),
      ProofError);
  CHECK_THROWS_WITH_AS(
      check_proof(
          *ax(RuleTag::ax_logical, sq({"ex x . x in a"}, "ex x . x in a")),
          Theory::ikp),
      "at root: logical axiom formula is not bounded", ProofError);
}

TEST_CASE("propositional rules") {
  // contraction: the principal conjunction stays as a side formula
  auto kept = step(RuleTag::and_left, sq({"a in c & b in c"}, "a in c"),
                   ax(RuleTag::ax_logical,
                      sq({"a in c & b in c", "a in c"}, "a in c")));
  CHECK_NOTHROW(check_proof(*kept, Theory::ikp));

  // refutation of a in b & ~(a in b), then ex falso
  auto clash = sq({"a in b & ~a in b", "~a in b", "a in b"}, "");
  auto refute =
      step(RuleTag::and_left, sq({"a in b & ~a in b"}, ""),
           step(RuleTag::and_left, sq({"a in b & ~a in b", "~a in b"}, ""),
                step(RuleTag::neg_left, clash,
                     ax(RuleTag::ax_logical,
                        sq({"a in b & ~a in b", "~a in b", "a in b"}, "a in b")))));
  auto denial = step(RuleTag::neg_right, sq({}, "~(a in b & ~a in b)"), refute);
  CHECK_NOTHROW(check_proof(*denial, Theory::ikp));

  auto absurd = step(
      RuleTag::ex_falso, sq({"a in b", "~a in b"}, "c in d"),
      step(RuleTag::neg_left, sq({"a in b", "~a in b"}, ""),
           ax(RuleTag::ax_logical, sq({"a in b", "~a in b"}, "a in b"))));
  CHECK_NOTHROW(check_proof(*absurd, Theory::ikp));

  // disjunction elimination into a common existential conclusion
  const std::string goal = "ex x . ex y . x in y";
  auto from = [&](const std::string& hyp, const std::string& lo,
                  const std::string& hi) {
    return step(RuleTag::ex_right, sq({hyp}, goal),
                step(RuleTag::ex_right, sq({hyp}, "ex y . " + lo + " in y"),
                     ax(RuleTag::ax_logical, sq({hyp}, hyp)), hi),
                lo);
  };
  auto branch = split(RuleTag::or_left, sq({"a in b | b in a"}, goal),
                      from("a in b", "a", "b"), from("b in a", "b", "a"));
  CHECK_NOTHROW(check_proof(*branch, Theory::ikp));

  auto inject = step(RuleTag::or_right, sq({"a in b"}, "a in b | b in a"),
                     ax(RuleTag::ax_logical, sq({"a in b"}, "a in b")));
  CHECK_NOTHROW(check_proof(*inject, Theory::ikp));

  // imp-l accepts its premises in either order
  auto use = ax(RuleTag::ax_logical, sq({"a in b", "a in c"}, "a in c"));
  auto have = ax(RuleTag::ax_logical, sq({"a in b"}, "a in b"));
  auto conclusion = sq({"a in b -> a in c", "a in b"}, "a in c");
  CHECK_NOTHROW(check_proof(
      *make_derivation(RuleTag::imp_left, conclusion, {use, have}), Theory::ikp));
  CHECK_NOTHROW(check_proof(
      *make_derivation(RuleTag::imp_left, conclusion, {have, use}), Theory::ikp));

  // and so does cut
  auto pair = testing::pair_sigma_proof(Theory::ikp);
  auto swapped = make_derivation(RuleTag::cut, pair->conclusion,
                                 {pair->premises[1], pair->premises[0]});
  CHECK_NOTHROW(check_proof(*swapped, Theory::ikp));
}

TEST_CASE("bounded quantifier rules") {
  auto pick = step(RuleTag::bex_right, sq({"a in b", "a in c"}, "(ex x in b) x in c"),
                   split(RuleTag::and_right, sq({"a in b", "a in c"}, "a in b & a in c"),
                         ax(RuleTag::ax_logical, sq({"a in b", "a in c"}, "a in b")),
                         ax(RuleTag::ax_logical, sq({"a in b", "a in c"}, "a in c"))),
                   "a");
  CHECK_NOTHROW(check_proof(*pick, Theory::ikp));

  auto unpack = step(
      RuleTag::bex_left, sq({"(ex x in b) x in c"}, "ex y . y in c"),
      step(RuleTag::and_left, sq({"d in b & d in c"}, "ex y . y in c"),
           step(RuleTag::ex_right, sq({"d in c"}, "ex y . y in c"),
                ax(RuleTag::ax_logical, sq({"d in c"}, "d in c")), "d")),
      "d");
  CHECK_NOTHROW(check_proof(*unpack, Theory::ikp));

  auto instantiate = step(
      RuleTag::ball_left, sq({"(all x in b) x in c", "a in b"}, "a in c"),
      split(RuleTag::imp_left, sq({"a in b -> a in c", "a in b"}, "a in c"),
            ax(RuleTag::ax_logical, sq({"a in b", "a in c"}, "a in c")),
            ax(RuleTag::ax_logical, sq({"a in b"}, "a in b"))),
      "a");
  CHECK_NOTHROW(check_proof(*instantiate, Theory::ikp));

  auto close = step(RuleTag::ball_right, sq({}, "(all x in b) x in b"),
                    step(RuleTag::imp_right, sq({}, "d in b -> d in b"),
                         ax(RuleTag::ax_logical, sq({"d in b"}, "d in b"))),
                    "d");
  CHECK_NOTHROW(check_proof(*close, Theory::ikp));
}

TEST_CASE("unbounded quantifier rules and eigenvariables") {
  auto rename = step(RuleTag::ex_left, sq({"ex x . x in a"}, "ex y . y in a"),
                     step(RuleTag::ex_right, sq({"d in a"}, "ex y . y in a"),
                          ax(RuleTag::ax_logical, sq({"d in a"}, "d in a")), "d"),
                     "d");
  CHECK_NOTHROW(check_proof(*rename, Theory::ikp));

  // the eigenvariable may not occur in the conclusion
  auto clash = step(RuleTag::ex_left, sq({"ex x . x in a"}, "ex y . y in a"),
                    step(RuleTag::ex_right, sq({"a in a"}, "ex y . y in a"),
                         ax(RuleTag::ax_logical, sq({"a in a"}, "a in a")), "a"),
                    "a");
  CHECK_THROWS_WITH_AS(check_proof(*clash, Theory::ikp),
                       "at root: eigenvariable occurs in the conclusion",
                       ProofError);

  // witnesses carry no such restriction
  auto project = step(RuleTag::all_left, sq({"all x . x in a"}, "c in a"),
                      ax(RuleTag::ax_logical,
                         sq({"all x . x in a", "c in a"}, "c in a")),
                      "c");
  CHECK_NOTHROW(check_proof(*project, Theory::ikp));

  auto general = step(
      RuleTag::all_right, sq({"all x . x in a"}, "all y . y in a"),
      step(RuleTag::all_left, sq({"all x . x in a"}, "d in a"),
           ax(RuleTag::ax_logical, sq({"all x . x in a", "d in a"}, "d in a")),
           "d"),
      "d");
  CHECK_NOTHROW(check_proof(*general, Theory::ikp));

  // a quantifier inference without its variable, a variable where none goes
  auto anonymous = step(RuleTag::ex_left, sq({"ex x . x in a"}, "ex y . y in a"),
                        rename->premises[0]);
  CHECK_THROWS_WITH_AS(check_proof(*anonymous, Theory::ikp),
                       "at root: quantifier inference is missing its variable",
                       ProofError);
  auto pair = testing::pair_sigma_proof(Theory::ikp);
  auto decorated = make_derivation(RuleTag::cut, pair->conclusion,
                                   pair->premises, "x");
  CHECK_THROWS_WITH_AS(check_proof(*decorated, Theory::ikp),
                       "at root: cut does not take a variable", ProofError);
}

TEST_CASE("subset and function bounded rules") {
  // the guard is usable as an antecedent formula directly
  auto by_sugar = step(
      RuleTag::sbex_right, sq({"a sub b", "a in c"}, "(ex x sub b) x in c",
                              Theory::ikpp),
      split(RuleTag::and_right,
            sq({"a sub b", "a in c"}, "a sub b & a in c", Theory::ikpp),
            ax(RuleTag::ax_logical,
               sq({"a sub b", "a in c"}, "a sub b", Theory::ikpp)),
            ax(RuleTag::ax_logical,
               sq({"a sub b", "a in c"}, "a in c", Theory::ikpp))),
      "a");
  CHECK_NOTHROW(check_proof(*by_sugar, Theory::ikpp));

  auto narrow = step(
      RuleTag::sball_left,
      sq({"(all x sub b) x in c", "a sub b"}, "a in c", Theory::ikpp),
      split(RuleTag::imp_left,
            sq({"a sub b -> a in c", "a sub b"}, "a in c", Theory::ikpp),
            ax(RuleTag::ax_logical,
               sq({"a sub b", "a in c"}, "a in c", Theory::ikpp)),
            ax(RuleTag::ax_logical, sq({"a sub b"}, "a sub b", Theory::ikpp))),
      "a");
  CHECK_NOTHROW(check_proof(*narrow, Theory::ikpp));

  auto applied = step(
      RuleTag::ebex_right,
      sq({"fun(g, a, b)", "g in c"}, "(ex x in exp(a, b)) x in c", Theory::ikpe),
      split(RuleTag::and_right,
            sq({"fun(g, a, b)", "g in c"}, "fun(g, a, b) & g in c", Theory::ikpe),
            ax(RuleTag::ax_logical,
               sq({"fun(g, a, b)", "g in c"}, "fun(g, a, b)", Theory::ikpe)),
            ax(RuleTag::ax_logical,
               sq({"fun(g, a, b)", "g in c"}, "g in c", Theory::ikpe))),
      "g");
  CHECK_NOTHROW(check_proof(*applied, Theory::ikpe));

  // the spelled-out guard names the same minor formula
  auto spelled =
      *f("(all x0 in a) x0 in b & a in c", Theory::ikpp) ==
      *Formula::conjunction(expand_sugar(f("a sub b", Theory::ikpp)),
                            f("a in c", Theory::ikpp));
  CHECK(spelled);
}

TEST_CASE("rule shape violations are rejected") {
  // premise count
  auto pair = testing::pair_sigma_proof(Theory::ikp);
  auto lone = make_derivation(RuleTag::cut, pair->conclusion, {pair->premises[0]});
  CHECK_THROWS_WITH_AS(check_proof(*lone, Theory::ikp),
                       "at root: cut expects 2 premises, got 1", ProofError);

  // and-r premise antecedents must match the conclusion
  auto bloated = split(
      RuleTag::and_right, sq({}, "a in b & a in c"),
      ax(RuleTag::ax_logical, sq({"a in b"}, "a in b")),
      ax(RuleTag::ax_logical, sq({"a in c"}, "a in c")));
  CHECK_THROWS_AS(check_proof(*bloated, Theory::ikp), ProofError);

  // or-r premise must prove one of the disjuncts
  auto astray = step(RuleTag::or_right, sq({"c in d"}, "a in b | b in a"),
                     ax(RuleTag::ax_logical, sq({"c in d"}, "c in d")));
  CHECK_THROWS_AS(check_proof(*astray, Theory::ikp), ProofError);

  // neg-l conclusions carry no succedent
  auto leaky = step(RuleTag::neg_left, sq({"~a in b", "a in b"}, "c in d"),
                    ax(RuleTag::ax_logical, sq({"~a in b", "a in b"}, "a in b")));
  CHECK_THROWS_AS(check_proof(*leaky, Theory::ikp), ProofError);

  // the wrong witness does not open the body
  auto off = step(RuleTag::ex_right, sq({"a in c"}, "ex y . y in c"),
                  ax(RuleTag::ax_logical, sq({"a in c"}, "a in c")), "b");
  CHECK_THROWS_WITH_AS(check_proof(*off, Theory::ikp),
                       "at root: premise does not prove the instantiated body",
                       ProofError);
}

TEST_CASE("failures deep in a derivation name their premise path") {
  auto pair = testing::pair_sigma_proof(Theory::ikp);
  // rebuild with the innermost logical axiom mislabeled as infinity
  auto relabel = [](const Derivation& d, auto&& self) -> DerivationPtr {
    if (d.rule == RuleTag::ax_logical)
      return make_derivation(RuleTag::ax_infinity, d.conclusion);
    std::vector<DerivationPtr> ps;
    for (const auto& p : d.premises) ps.push_back(self(*p, self));
    return make_derivation(d.rule, d.conclusion, std::move(ps), d.variable);
  };
  auto broken = relabel(*pair, relabel);
  CHECK_THROWS_WITH_AS(
      check_proof(*broken, Theory::ikp),
      "at premise 1.0.0.0.0: infinity axiom instance has the wrong shape",
      ProofError);
}

TEST_CASE("finite derivations reject infinitary terms") {
  auto stage = Term::stage(StageKind::constructible, Ord::zero());
  auto at_stage = Formula::member(v("a"), stage);
  auto node = ax(RuleTag::ax_logical, Sequent{{at_stage}, at_stage});
  CHECK_THROWS_WITH_AS(check_proof(*node, Theory::ikp),
                       "at root: antecedent term outside the finite language",
                       ProofError);

  auto levelled = Formula::member(Term::levelled_var(0, Ord::zero()), v("a"));
  auto succ_only = ax(RuleTag::ax_logical, Sequent{{levelled}, levelled});
  CHECK_THROWS_AS(check_proof(*succ_only, Theory::ikp), ProofError);
}

TEST_CASE("proof text round trips") {
  for (Theory th : {Theory::ikp, Theory::ikpp, Theory::ikpe}) {
    auto proof = testing::sigma_proof(th);
    const std::string text = print_proof(*proof);
    auto back = parse_proof(text, th);
    CHECK(derivation_equal(*back, *proof));
    CHECK(print_proof(*back) == text);
    CHECK_NOTHROW(check_proof(*back, th));
  }
}

TEST_CASE("proof files allow comments and free keyword order") {
  const std::string text =
      "; witness introduction over a logical axiom\n"
      "(rule ex-r\n"
      "  :premises ((axiom logical :conclusion (seq (\"a in b\") (\"a in b\"))))\n"
      "  :var b\n"
      "  :conclusion (seq (\"a in b\") (\"ex x . a in x\")))\n";
  auto parsed = parse_proof(text, Theory::ikp);
  auto expected = step(RuleTag::ex_right, sq({"a in b"}, "ex x . a in x"),
                       ax(RuleTag::ax_logical, sq({"a in b"}, "a in b")), "b");
  CHECK(derivation_equal(*parsed, *expected));
  CHECK_NOTHROW(check_proof(*parsed, Theory::ikp));
}

TEST_CASE("malformed proof files are rejected") {
  auto bad = [](const std::string& text) {
    CHECK_THROWS_AS(parse_proof(text, Theory::ikp), ParseError);
  };
  bad("");
  bad("(rule cut");
  bad("(widget pair :conclusion (seq () ()))");
  bad("(rule nonsense :conclusion (seq () ()) :premises ())");
  bad("(rule pair :conclusion (seq () ()))");  // axiom tag under a rule head
  bad("(axiom pair :conclusion (seq () ()) :premises ())");
  bad("(rule cut :conclusion (seq () ()))");  // missing premises
  bad("(axiom pair)");                        // missing conclusion
  bad("(axiom pair :conclusion (seq () ())) trailing");
  bad("(axiom pair :conclusion (seq (bare) ()))");
  bad("(axiom pair :conclusion (seq () (\"a in b\" \"b in c\")))");
  bad("(axiom pair :conclusion (seq () ()) :colour blue)");
  bad("(axiom pair :conclusion (seq () ()) :conclusion (seq () ()))");
  bad("(rule ex-r :var :oops :conclusion (seq () ()) :premises ())");
  bad("(axiom logical :conclusion (seq (\"a \\q b\") ()))");

  try {
    parse_proof("(axiom pair :conclusion (seq () ())) trailing", Theory::ikp);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("offset") != std::string::npos);
  }

  // language violations surface as such, not as syntax errors
  CHECK_THROWS_AS(
      parse_proof("(axiom logical :conclusion (seq (\"(ex x sub a) x in a\") ()))",
                  Theory::ikp),
      TheoryMismatch);
}

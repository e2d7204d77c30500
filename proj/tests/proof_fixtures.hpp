#pragma once

#include <string>
#include <vector>

#include "ordforge/formula_io.hpp"
#include "ordforge/proof.hpp"

// Small closed derivations shared by the calculus, analysis and acceptance
// suites.  Each proves a closed existential sentence from a cut with the
// theory's characteristic axiom, or directly by quantifier introductions.

namespace ordforge {
namespace testing {

inline Sequent fixture_seq(Theory th, const std::vector<std::string>& ante,
                           const std::string& succ) {
  std::vector<FormulaPtr> a;
  a.reserve(ante.size());
  for (const auto& text : ante) a.push_back(parse_formula(text, th));
  FormulaPtr s;
  if (!succ.empty()) s = parse_formula(succ, th);
  return make_sequent(std::move(a), std::move(s));
}

// ex x . ex y . x in y, cut against the pair axiom; valid in every theory.
inline DerivationPtr pair_sigma_proof(Theory th) {
  auto sq = [&](const std::vector<std::string>& a, const std::string& s) {
    return fixture_seq(th, a, s);
  };
  const std::string target = "ex x . ex y . x in y";
  const std::string pair = "ex z . a in z & b in z";
  auto leaf = make_derivation(RuleTag::ax_logical, sq({"a in c"}, "a in c"));
  auto inner = make_derivation(RuleTag::ex_right, sq({"a in c"}, "ex y . a in y"),
                               {leaf}, "c");
  auto outer = make_derivation(RuleTag::ex_right, sq({"a in c"}, target),
                               {inner}, "a");
  auto split = make_derivation(RuleTag::and_left,
                               sq({"a in c & b in c"}, target), {outer});
  auto opened = make_derivation(RuleTag::ex_left, sq({pair}, target), {split}, "c");
  auto axiom = make_derivation(RuleTag::ax_pair, sq({}, pair));
  return make_derivation(RuleTag::cut, sq({}, target), {axiom, opened});
}

// ex u . ex z . (ex x sub u) x in z, cut against the power set axiom.  The
// subset guard is discharged in its spelled-out form.
inline DerivationPtr power_sigma_proof() {
  auto sq = [](const std::vector<std::string>& a, const std::string& s) {
    return fixture_seq(Theory::ikpp, a, s);
  };
  const std::string target = "ex u . ex z . (ex x sub u) x in z";
  const std::string power = "ex z . (all x sub a) x in z";
  const std::string guard = "(all x sub a) x in p";
  const std::string spelled = "(all y in a) y in a";

  auto refl = [&](const std::vector<std::string>& side) {
    auto base = make_derivation(
        RuleTag::ax_logical,
        sq([&] {
          auto a = side;
          a.push_back("q in a");
          return a;
        }(), "q in a"));
    auto step = make_derivation(RuleTag::imp_right, sq(side, "q in a -> q in a"),
                                {base});
    return make_derivation(RuleTag::ball_right, sq(side, spelled), {step}, "q");
  };

  auto use_b = make_derivation(RuleTag::ax_logical, sq({"a in p"}, "a in p"));
  auto apply = make_derivation(RuleTag::imp_left,
                               sq({spelled + " -> a in p"}, "a in p"),
                               {use_b, refl({})});
  auto from_guard = make_derivation(RuleTag::sball_left, sq({guard}, "a in p"),
                                    {apply}, "a");
  auto both = make_derivation(RuleTag::and_right,
                              sq({guard}, spelled + " & a in p"),
                              {refl({guard}), from_guard});
  auto witness = make_derivation(RuleTag::sbex_right,
                                 sq({guard}, "(ex x sub a) x in p"), {both}, "a");
  auto pick_z = make_derivation(RuleTag::ex_right,
                                sq({guard}, "ex z . (ex x sub a) x in z"),
                                {witness}, "p");
  auto pick_u = make_derivation(RuleTag::ex_right, sq({guard}, target),
                                {pick_z}, "a");
  auto opened = make_derivation(RuleTag::ex_left, sq({power}, target),
                                {pick_u}, "p");
  auto axiom = make_derivation(RuleTag::ax_power_set, sq({}, power));
  return make_derivation(RuleTag::cut, sq({}, target), {axiom, opened});
}

// ex u . ex v . (all g in exp(u, v)) (all y in g) y in g, by quantifier
// introductions alone; the function guard enters the antecedent and is
// never decomposed.
inline DerivationPtr exp_sigma_proof() {
  auto sq = [](const std::vector<std::string>& a, const std::string& s) {
    return fixture_seq(Theory::ikpe, a, s);
  };
  const std::string body = "(all y in g) y in g";
  const std::string target = "ex u . ex v . (all g in exp(u, v)) " + body;
  auto leaf = make_derivation(RuleTag::ax_logical,
                              sq({"fun(g, c, c)", "q in g"}, "q in g"));
  auto step = make_derivation(RuleTag::imp_right,
                              sq({"fun(g, c, c)"}, "q in g -> q in g"), {leaf});
  auto inner = make_derivation(RuleTag::ball_right, sq({"fun(g, c, c)"}, body),
                               {step}, "q");
  auto detach = make_derivation(RuleTag::imp_right,
                                sq({}, "fun(g, c, c) -> " + body), {inner});
  auto closed = make_derivation(
      RuleTag::eball_right, sq({}, "(all g in exp(c, c)) " + body), {detach}, "g");
  auto pick_v = make_derivation(
      RuleTag::ex_right, sq({}, "ex v . (all g in exp(c, v)) " + body), {closed},
      "c");
  return make_derivation(RuleTag::ex_right, sq({}, target), {pick_v}, "c");
}

// ex z . (all x in z) x in z, cut against the pair axiom.  The root keeps a
// single unbounded quantifier, so the embedding of this proof lands at the
// first stage in every theory.
inline DerivationPtr reflexive_sigma_proof(Theory th) {
  auto sq = [&](const std::vector<std::string>& a, const std::string& s) {
    return fixture_seq(th, a, s);
  };
  const std::string target = "ex z . (all x in z) x in z";
  const std::string pair = "ex z . a in z & b in z";
  auto leaf = make_derivation(RuleTag::ax_logical,
                              sq({"a in u", "q in u"}, "q in u"));
  auto step = make_derivation(RuleTag::imp_right,
                              sq({"a in u"}, "q in u -> q in u"), {leaf});
  auto ball = make_derivation(RuleTag::ball_right,
                              sq({"a in u"}, "(all x in u) x in u"), {step}, "q");
  auto pick = make_derivation(RuleTag::ex_right, sq({"a in u"}, target),
                              {ball}, "u");
  auto split = make_derivation(RuleTag::and_left,
                               sq({"a in u & b in u"}, target), {pick});
  auto opened = make_derivation(RuleTag::ex_left, sq({pair}, target), {split},
                                "u");
  auto axiom = make_derivation(RuleTag::ax_pair, sq({}, pair));
  return make_derivation(RuleTag::cut, sq({}, target), {axiom, opened});
}

// First-stage fixtures for the bound chain.
inline DerivationPtr sigma_proof(Theory th) { return reflexive_sigma_proof(th); }

// Deeper fixtures exercising the theory-specific quantifier rules; their
// roots nest two unbounded quantifiers and land past the first stage.
inline DerivationPtr deep_sigma_proof(Theory th) {
  switch (th) {
    case Theory::ikp: return pair_sigma_proof(th);
    case Theory::ikpp: return power_sigma_proof();
    case Theory::ikpe: return exp_sigma_proof();
  }
  throw OrdError("unknown theory");
}

}  // namespace testing
}  // namespace ordforge

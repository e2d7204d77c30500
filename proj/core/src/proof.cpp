#include "ordforge/proof.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <utility>

namespace ordforge {

namespace {

struct TagRow {
  RuleTag tag;
  std::string_view name;
  int premises;
};

constexpr std::array<TagRow, 36> kTags{{
    {RuleTag::ax_logical, "logical", 0},
    {RuleTag::ax_extensionality, "extensionality", 0},
    {RuleTag::ax_pair, "pair", 0},
    {RuleTag::ax_union, "union", 0},
    {RuleTag::ax_separation, "separation", 0},
    {RuleTag::ax_collection, "collection", 0},
    {RuleTag::ax_set_induction, "set-induction", 0},
    {RuleTag::ax_infinity, "infinity", 0},
    {RuleTag::ax_power_set, "power-set", 0},
    {RuleTag::ax_exponentiation, "exponentiation", 0},
    {RuleTag::and_left, "and-l", 1},
    {RuleTag::and_right, "and-r", 2},
    {RuleTag::or_left, "or-l", 2},
    {RuleTag::or_right, "or-r", 1},
    {RuleTag::neg_left, "neg-l", 1},
    {RuleTag::neg_right, "neg-r", 1},
    {RuleTag::ex_falso, "ex-falso", 1},
    {RuleTag::imp_left, "imp-l", 2},
    {RuleTag::imp_right, "imp-r", 1},
    {RuleTag::bex_left, "bex-l", 1},
    {RuleTag::bex_right, "bex-r", 1},
    {RuleTag::ball_left, "ball-l", 1},
    {RuleTag::ball_right, "ball-r", 1},
    {RuleTag::sbex_left, "sbex-l", 1},
    {RuleTag::sbex_right, "sbex-r", 1},
    {RuleTag::sball_left, "sball-l", 1},
    {RuleTag::sball_right, "sball-r", 1},
    {RuleTag::ebex_left, "ebex-l", 1},
    {RuleTag::ebex_right, "ebex-r", 1},
    {RuleTag::eball_left, "eball-l", 1},
    {RuleTag::eball_right, "eball-r", 1},
    {RuleTag::ex_left, "ex-l", 1},
    {RuleTag::ex_right, "ex-r", 1},
    {RuleTag::all_left, "all-l", 1},
    {RuleTag::all_right, "all-r", 1},
    {RuleTag::cut, "cut", 2},
}};

const TagRow& row_of(RuleTag tag) {
  for (const TagRow& row : kTags)
    if (row.tag == tag) return row;
  throw OrdError("unknown rule tag");
}

}  // namespace

std::string_view rule_name(RuleTag tag) { return row_of(tag).name; }

RuleTag rule_from_name(std::string_view name) {
  for (const TagRow& row : kTags)
    if (row.name == name) return row.tag;
  throw OrdError("unknown rule name: " + std::string(name));
}

bool is_axiom(RuleTag tag) { return row_of(tag).premises == 0; }

bool takes_eigenvariable(RuleTag tag) {
  switch (tag) {
    case RuleTag::bex_left:
    case RuleTag::ball_right:
    case RuleTag::sbex_left:
    case RuleTag::sball_right:
    case RuleTag::ebex_left:
    case RuleTag::eball_right:
    case RuleTag::ex_left:
    case RuleTag::all_right:
      return true;
    default:
      return false;
  }
}

bool takes_variable(RuleTag tag) {
  switch (tag) {
    case RuleTag::bex_right:
    case RuleTag::ball_left:
    case RuleTag::sbex_right:
    case RuleTag::sball_left:
    case RuleTag::ebex_right:
    case RuleTag::eball_left:
    case RuleTag::ex_right:
    case RuleTag::all_left:
      return true;
    default:
      return takes_eigenvariable(tag);
  }
}

DerivationPtr make_derivation(RuleTag rule, Sequent conclusion,
                              std::vector<DerivationPtr> premises,
                              std::string variable) {
  auto d = std::make_shared<Derivation>();
  d->rule = rule;
  d->conclusion = std::move(conclusion);
  d->premises = std::move(premises);
  d->variable = std::move(variable);
  return d;
}

bool derivation_equal(const Derivation& a, const Derivation& b) {
  if (a.rule != b.rule || a.variable != b.variable) return false;
  if (!sequent_equal(a.conclusion, b.conclusion)) return false;
  if (a.premises.size() != b.premises.size()) return false;
  for (std::size_t i = 0; i < a.premises.size(); ++i)
    if (!derivation_equal(*a.premises[i], *b.premises[i])) return false;
  return true;
}

// -- axiom instance builders --------------------------------------------

namespace {

TermPtr bv(std::size_t i) { return Term::bound_var(i); }

TermPtr up1(const TermPtr& t) { return shift_term(t, 1); }

}  // namespace

FormulaPtr pair_axiom(const TermPtr& a, const TermPtr& b) {
  return Formula::exists(Formula::conjunction(Formula::member(up1(a), bv(0)),
                                              Formula::member(up1(b), bv(0))));
}

FormulaPtr union_axiom(const TermPtr& a) {
  return Formula::exists(Formula::bounded_forall(
      up1(a), Formula::bounded_forall(bv(0), Formula::member(bv(0), bv(2)))));
}

FormulaPtr infinity_axiom() {
  auto first = Formula::bounded_exists(bv(0), Formula::member(bv(0), bv(1)));
  auto second = Formula::bounded_forall(
      bv(0), Formula::bounded_exists(bv(1), Formula::member(bv(1), bv(0))));
  return Formula::exists(Formula::conjunction(first, second));
}

FormulaPtr separation_axiom(const TermPtr& a, const FormulaPtr& body) {
  auto collects = Formula::bounded_forall(
      bv(0), Formula::conjunction(Formula::member(bv(0), shift_term(a, 2)), body));
  auto exhausts = Formula::bounded_forall(
      up1(a), Formula::implication(body, Formula::member(bv(0), bv(1))));
  return Formula::exists(Formula::conjunction(collects, exhausts));
}

FormulaPtr collection_axiom(const TermPtr& a, const FormulaPtr& body) {
  auto premise = Formula::bounded_forall(a, Formula::exists(body));
  auto bounded = Formula::exists(Formula::bounded_forall(
      up1(a), Formula::bounded_exists(bv(1), body)));
  return Formula::implication(premise, bounded);
}

FormulaPtr set_induction_axiom(const FormulaPtr& body) {
  auto progressive = Formula::forall(
      Formula::implication(Formula::bounded_forall(bv(0), body), body));
  return Formula::implication(progressive, Formula::forall(body));
}

FormulaPtr extensionality_axiom(const TermPtr& a, const TermPtr& b,
                                const FormulaPtr& body) {
  return Formula::implication(
      Formula::conjunction(Formula::equal(a, b), open_bound(body, a)),
      open_bound(body, b));
}

FormulaPtr power_set_axiom(const TermPtr& a) {
  return Formula::exists(
      Formula::subset_forall(up1(a), Formula::member(bv(0), bv(1))));
}

FormulaPtr exponentiation_axiom(const TermPtr& a, const TermPtr& b) {
  return Formula::exists(
      Formula::exp_forall(up1(a), up1(b), Formula::member(bv(0), bv(1))));
}

// -- checking -----------------------------------------------------------

namespace {

struct Ctx {
  Theory theory;
  std::vector<std::size_t> path;
};

[[noreturn]] void fail(const Ctx& ctx, const std::string& msg) {
  std::ostringstream out;
  out << "at ";
  if (ctx.path.empty()) {
    out << "root";
  } else {
    out << "premise ";
    for (std::size_t i = 0; i < ctx.path.size(); ++i) {
      if (i) out << '.';
      out << ctx.path[i];
    }
  }
  out << ": " << msg;
  throw ProofError(out.str());
}

bool pure_term(const Term& t);

bool pure_formula(const Formula& f) {
  for (const auto& t : f.terms())
    if (!pure_term(*t)) return false;
  for (const auto& s : f.subs())
    if (!pure_formula(*s)) return false;
  return true;
}

bool pure_term(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::free_var:
    case Term::Kind::bound_var:
      return true;
    default:
      return false;
  }
}

bool succ_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (!a || !b) return !a && !b;
  return *a == *b;
}

// A premise antecedent may keep the principal formula as a side formula or
// consume it; both readings are checked.
bool ante_matches(const Sequent& premise, const Sequent& conclusion,
                  const FormulaPtr& principal, const FormulaPtr& minor) {
  auto kept = with_formula(conclusion.antecedent, minor);
  if (formula_set_equal(premise.antecedent, kept)) return true;
  auto consumed =
      with_formula(without_formula(conclusion.antecedent, *principal), minor);
  return formula_set_equal(premise.antecedent, consumed);
}

// Antecedent for a premise that adds no minor formula.
bool ante_plain(const Sequent& premise, const Sequent& conclusion,
                const FormulaPtr& principal) {
  if (formula_set_equal(premise.antecedent, conclusion.antecedent)) return true;
  return formula_set_equal(premise.antecedent,
                           without_formula(conclusion.antecedent, *principal));
}

// Recovers the schema body from two instances that differ exactly by the
// replacement of one closed term by another.
bool instance_match(const Formula& fa, const Formula& fb, const Term& from,
                    const Term& to);

bool instance_match_term(const Term& ta, const Term& tb, const Term& from,
                         const Term& to) {
  if (ta == tb) return true;
  if (ta == from && tb == to) return true;
  if (ta.kind() == Term::Kind::comprehension &&
      tb.kind() == Term::Kind::comprehension)
    return instance_match_term(*ta.base(), *tb.base(), from, to) &&
           instance_match(*ta.body(), *tb.body(), from, to);
  return false;
}

bool instance_match(const Formula& fa, const Formula& fb, const Term& from,
                    const Term& to) {
  if (fa.kind() != fb.kind()) return false;
  const auto& ta = fa.terms();
  const auto& tb = fb.terms();
  if (ta.size() != tb.size()) return false;
  for (std::size_t i = 0; i < ta.size(); ++i)
    if (!instance_match_term(*ta[i], *tb[i], from, to)) return false;
  const auto& sa = fa.subs();
  const auto& sb = fb.subs();
  if (sa.size() != sb.size()) return false;
  for (std::size_t i = 0; i < sa.size(); ++i)
    if (!instance_match(*sa[i], *sb[i], from, to)) return false;
  return true;
}

const FormulaPtr& require_succedent(const Ctx& ctx, const Sequent& s,
                                    const char* what) {
  if (!s.succedent) fail(ctx, std::string(what) + " needs a succedent formula");
  return s.succedent;
}

void check_axiom(const Derivation& d, const Ctx& ctx) {
  const Sequent& c = d.conclusion;
  switch (d.rule) {
    case RuleTag::ax_logical: {
      const auto& a = require_succedent(ctx, c, "logical axiom");
      if (!contains_formula(c.antecedent, *a))
        fail(ctx, "logical axiom succedent missing from the antecedent");
      if (!is_delta0(*a, ctx.theory))
        fail(ctx, "logical axiom formula is not bounded");
      return;
    }
    case RuleTag::ax_extensionality: {
      const auto& a = require_succedent(ctx, c, "extensionality");
      if (a->kind() != Formula::Kind::implication ||
          a->subs()[0]->kind() != Formula::Kind::conjunction)
        fail(ctx, "extensionality instance has the wrong shape");
      const auto& eq = a->subs()[0]->subs()[0];
      if (eq->kind() != Formula::Kind::equal)
        fail(ctx, "extensionality instance has the wrong shape");
      const auto& ba = a->subs()[0]->subs()[1];
      const auto& bb = a->subs()[1];
      if (!instance_match(*ba, *bb, *eq->terms()[0], *eq->terms()[1]))
        fail(ctx, "extensionality conclusion is not an instance of the premise body");
      if (!is_delta0(*ba, ctx.theory))
        fail(ctx, "extensionality body is not bounded");
      return;
    }
    case RuleTag::ax_pair: {
      const auto& a = require_succedent(ctx, c, "pair axiom");
      if (a->kind() == Formula::Kind::exists &&
          a->subs()[0]->kind() == Formula::Kind::conjunction) {
        const auto& lhs = a->subs()[0]->subs()[0];
        const auto& rhs = a->subs()[0]->subs()[1];
        if (lhs->kind() == Formula::Kind::member &&
            rhs->kind() == Formula::Kind::member &&
            *a == *pair_axiom(lhs->terms()[0], rhs->terms()[0]))
          return;
      }
      fail(ctx, "pair axiom instance has the wrong shape");
    }
    case RuleTag::ax_union: {
      const auto& a = require_succedent(ctx, c, "union axiom");
      if (a->kind() == Formula::Kind::exists &&
          a->subs()[0]->kind() == Formula::Kind::bounded_forall &&
          *a == *union_axiom(a->subs()[0]->terms()[0]))
        return;
      fail(ctx, "union axiom instance has the wrong shape");
    }
    case RuleTag::ax_separation: {
      const auto& a = require_succedent(ctx, c, "separation axiom");
      if (a->kind() == Formula::Kind::exists &&
          a->subs()[0]->kind() == Formula::Kind::conjunction &&
          a->subs()[0]->subs()[1]->kind() == Formula::Kind::bounded_forall &&
          a->subs()[0]->subs()[1]->subs()[0]->kind() ==
              Formula::Kind::implication) {
        const auto& exhausts = a->subs()[0]->subs()[1];
        const auto& bound = exhausts->terms()[0];
        const auto& body = exhausts->subs()[0]->subs()[0];
        if (*a == *separation_axiom(bound, body)) {
          if (has_loose_bound(*body, 1))
            fail(ctx, "separation body mentions the collected set");
          if (!delta0_shape(*body, ctx.theory))
            fail(ctx, "separation body is not bounded");
          return;
        }
      }
      fail(ctx, "separation axiom instance has the wrong shape");
    }
    case RuleTag::ax_collection: {
      const auto& a = require_succedent(ctx, c, "collection axiom");
      if (a->kind() == Formula::Kind::implication &&
          a->subs()[0]->kind() == Formula::Kind::bounded_forall &&
          a->subs()[0]->subs()[0]->kind() == Formula::Kind::exists) {
        const auto& bound = a->subs()[0]->terms()[0];
        const auto& body = a->subs()[0]->subs()[0]->subs()[0];
        if (*a == *collection_axiom(bound, body)) {
          if (!delta0_shape(*body, ctx.theory))
            fail(ctx, "collection body is not bounded");
          return;
        }
      }
      fail(ctx, "collection axiom instance has the wrong shape");
    }
    case RuleTag::ax_set_induction: {
      const auto& a = require_succedent(ctx, c, "set induction axiom");
      if (a->kind() == Formula::Kind::implication &&
          a->subs()[1]->kind() == Formula::Kind::forall &&
          *a == *set_induction_axiom(a->subs()[1]->subs()[0]))
        return;
      fail(ctx, "set induction instance has the wrong shape");
    }
    case RuleTag::ax_infinity: {
      const auto& a = require_succedent(ctx, c, "infinity axiom");
      if (*a == *infinity_axiom()) return;
      fail(ctx, "infinity axiom instance has the wrong shape");
    }
    case RuleTag::ax_power_set: {
      if (ctx.theory != Theory::ikpp)
        fail(ctx, "power set axiom outside its theory");
      const auto& a = require_succedent(ctx, c, "power set axiom");
      if (a->kind() == Formula::Kind::exists &&
          a->subs()[0]->kind() == Formula::Kind::subset_forall &&
          *a == *power_set_axiom(a->subs()[0]->terms()[0]))
        return;
      fail(ctx, "power set axiom instance has the wrong shape");
    }
    case RuleTag::ax_exponentiation: {
      if (ctx.theory != Theory::ikpe)
        fail(ctx, "exponentiation axiom outside its theory");
      const auto& a = require_succedent(ctx, c, "exponentiation axiom");
      if (a->kind() == Formula::Kind::exists &&
          a->subs()[0]->kind() == Formula::Kind::exp_forall &&
          *a == *exponentiation_axiom(a->subs()[0]->terms()[0],
                                      a->subs()[0]->terms()[1]))
        return;
      fail(ctx, "exponentiation axiom instance has the wrong shape");
    }
    default:
      fail(ctx, "not an axiom tag");
  }
}

// Minor formulae of a bounded quantifier inference: the guard relating the
// inference variable to the bound, joined to the opened body.  The subset
// and function guards are abbreviation nodes, so the minor has two
// renderings of the same formula; a premise may use either.
std::vector<FormulaPtr> minor_spellings(const FormulaPtr& principal,
                                        const TermPtr& var) {
  const auto opened = open_bound(principal->subs()[0], var);
  FormulaPtr guard;
  bool universal = false;
  switch (principal->kind()) {
    case Formula::Kind::bounded_forall:
      universal = true;
      [[fallthrough]];
    case Formula::Kind::bounded_exists:
      guard = Formula::member(var, principal->terms()[0]);
      break;
    case Formula::Kind::subset_forall:
      universal = true;
      [[fallthrough]];
    case Formula::Kind::subset_exists:
      guard = Formula::subset(var, principal->terms()[0]);
      break;
    case Formula::Kind::exp_forall:
      universal = true;
      [[fallthrough]];
    case Formula::Kind::exp_exists:
      guard = Formula::func(var, principal->terms()[0], principal->terms()[1]);
      break;
    case Formula::Kind::exists:
    case Formula::Kind::forall:
      return {opened};
    default:
      throw OrdError("not a quantifier principal");
  }
  std::vector<FormulaPtr> guards{guard};
  auto expanded = expand_sugar(guard);
  if (!(*expanded == *guard)) guards.push_back(std::move(expanded));
  std::vector<FormulaPtr> out;
  out.reserve(guards.size());
  for (auto& g : guards)
    out.push_back(universal ? Formula::implication(std::move(g), opened)
                            : Formula::conjunction(std::move(g), opened));
  return out;
}

Formula::Kind principal_kind(RuleTag tag) {
  switch (tag) {
    case RuleTag::and_left: return Formula::Kind::conjunction;
    case RuleTag::or_left: return Formula::Kind::disjunction;
    case RuleTag::neg_left: return Formula::Kind::negation;
    case RuleTag::imp_left: return Formula::Kind::implication;
    case RuleTag::bex_left: return Formula::Kind::bounded_exists;
    case RuleTag::ball_left: return Formula::Kind::bounded_forall;
    case RuleTag::sbex_left: return Formula::Kind::subset_exists;
    case RuleTag::sball_left: return Formula::Kind::subset_forall;
    case RuleTag::ebex_left: return Formula::Kind::exp_exists;
    case RuleTag::eball_left: return Formula::Kind::exp_forall;
    case RuleTag::ex_left: return Formula::Kind::exists;
    case RuleTag::all_left: return Formula::Kind::forall;
    case RuleTag::bex_right: return Formula::Kind::bounded_exists;
    case RuleTag::ball_right: return Formula::Kind::bounded_forall;
    case RuleTag::sbex_right: return Formula::Kind::subset_exists;
    case RuleTag::sball_right: return Formula::Kind::subset_forall;
    case RuleTag::ebex_right: return Formula::Kind::exp_exists;
    case RuleTag::eball_right: return Formula::Kind::exp_forall;
    case RuleTag::ex_right: return Formula::Kind::exists;
    case RuleTag::all_right: return Formula::Kind::forall;
    default: throw OrdError("rule has no quantifier principal");
  }
}

bool left_quantifier_rule(RuleTag tag) {
  switch (tag) {
    case RuleTag::bex_left:
    case RuleTag::ball_left:
    case RuleTag::sbex_left:
    case RuleTag::sball_left:
    case RuleTag::ebex_left:
    case RuleTag::eball_left:
    case RuleTag::ex_left:
    case RuleTag::all_left:
      return true;
    default:
      return false;
  }
}

void check_rule(const Derivation& d, const Ctx& ctx) {
  const Sequent& c = d.conclusion;
  const auto& prem = d.premises;
  const auto one = [&](std::size_t i) -> const Sequent& {
    return prem[i]->conclusion;
  };
  switch (d.rule) {
    case RuleTag::and_left: {
      for (const auto& p : c.antecedent) {
        if (p->kind() != Formula::Kind::conjunction) continue;
        for (const auto& minor : p->subs())
          if (succ_equal(one(0).succedent, c.succedent) &&
              ante_matches(one(0), c, p, minor))
            return;
      }
      fail(ctx, "no conjunction in the antecedent matches the premise");
    }
    case RuleTag::and_right: {
      const auto& a = require_succedent(ctx, c, "and-r");
      if (a->kind() != Formula::Kind::conjunction)
        fail(ctx, "and-r succedent is not a conjunction");
      for (int swap = 0; swap < 2; ++swap) {
        const Sequent& left = one(swap);
        const Sequent& right = one(1 - swap);
        if (succ_equal(left.succedent, a->subs()[0]) &&
            succ_equal(right.succedent, a->subs()[1]) &&
            formula_set_equal(left.antecedent, c.antecedent) &&
            formula_set_equal(right.antecedent, c.antecedent))
          return;
      }
      fail(ctx, "and-r premises do not prove the two conjuncts");
    }
    case RuleTag::or_left: {
      for (const auto& p : c.antecedent) {
        if (p->kind() != Formula::Kind::disjunction) continue;
        for (int swap = 0; swap < 2; ++swap) {
          const Sequent& left = one(swap);
          const Sequent& right = one(1 - swap);
          if (succ_equal(left.succedent, c.succedent) &&
              succ_equal(right.succedent, c.succedent) &&
              ante_matches(left, c, p, p->subs()[0]) &&
              ante_matches(right, c, p, p->subs()[1]))
            return;
        }
      }
      fail(ctx, "no disjunction in the antecedent matches the premises");
    }
    case RuleTag::or_right: {
      const auto& a = require_succedent(ctx, c, "or-r");
      if (a->kind() != Formula::Kind::disjunction)
        fail(ctx, "or-r succedent is not a disjunction");
      if (!formula_set_equal(one(0).antecedent, c.antecedent))
        fail(ctx, "or-r premise antecedent differs from the conclusion");
      for (const auto& side : a->subs())
        if (succ_equal(one(0).succedent, side)) return;
      fail(ctx, "or-r premise proves neither disjunct");
    }
    case RuleTag::neg_left: {
      if (c.succedent) fail(ctx, "neg-l conclusion must have an empty succedent");
      for (const auto& p : c.antecedent) {
        if (p->kind() != Formula::Kind::negation) continue;
        if (succ_equal(one(0).succedent, p->subs()[0]) && ante_plain(one(0), c, p))
          return;
      }
      fail(ctx, "no negation in the antecedent matches the premise");
    }
    case RuleTag::neg_right: {
      const auto& a = require_succedent(ctx, c, "neg-r");
      if (a->kind() != Formula::Kind::negation)
        fail(ctx, "neg-r succedent is not a negation");
      if (one(0).succedent) fail(ctx, "neg-r premise must have an empty succedent");
      if (!formula_set_equal(one(0).antecedent,
                             with_formula(c.antecedent, a->subs()[0])))
        fail(ctx, "neg-r premise antecedent does not add the negated formula");
      return;
    }
    case RuleTag::ex_falso: {
      require_succedent(ctx, c, "ex-falso");
      if (one(0).succedent) fail(ctx, "ex-falso premise must have an empty succedent");
      if (!formula_set_equal(one(0).antecedent, c.antecedent))
        fail(ctx, "ex-falso premise antecedent differs from the conclusion");
      return;
    }
    case RuleTag::imp_left: {
      for (const auto& p : c.antecedent) {
        if (p->kind() != Formula::Kind::implication) continue;
        for (int swap = 0; swap < 2; ++swap) {
          const Sequent& with_b = one(swap);
          const Sequent& proves_a = one(1 - swap);
          if (succ_equal(with_b.succedent, c.succedent) &&
              ante_matches(with_b, c, p, p->subs()[1]) &&
              succ_equal(proves_a.succedent, p->subs()[0]) &&
              ante_plain(proves_a, c, p))
            return;
        }
      }
      fail(ctx, "no implication in the antecedent matches the premises");
    }
    case RuleTag::imp_right: {
      const auto& a = require_succedent(ctx, c, "imp-r");
      if (a->kind() != Formula::Kind::implication)
        fail(ctx, "imp-r succedent is not an implication");
      if (!succ_equal(one(0).succedent, a->subs()[1]))
        fail(ctx, "imp-r premise does not prove the consequent");
      if (!formula_set_equal(one(0).antecedent,
                             with_formula(c.antecedent, a->subs()[0])))
        fail(ctx, "imp-r premise antecedent does not add the hypothesis");
      return;
    }
    case RuleTag::cut: {
      for (int swap = 0; swap < 2; ++swap) {
        const Sequent& proves = one(swap);
        const Sequent& uses = one(1 - swap);
        if (!proves.succedent) continue;
        if (formula_set_equal(proves.antecedent, c.antecedent) &&
            succ_equal(uses.succedent, c.succedent) &&
            formula_set_equal(uses.antecedent,
                              with_formula(c.antecedent, proves.succedent)))
          return;
      }
      fail(ctx, "premises do not share a cut formula over the conclusion");
    }
    default: break;
  }

  // quantifier rules; all carry a recorded variable
  if (d.variable.empty()) fail(ctx, "quantifier inference is missing its variable");
  const auto var = Term::free_var(d.variable);
  if (takes_eigenvariable(d.rule) && free_vars(c).count(d.variable))
    fail(ctx, "eigenvariable occurs in the conclusion");

  const Formula::Kind want = principal_kind(d.rule);
  if (left_quantifier_rule(d.rule)) {
    for (const auto& p : c.antecedent) {
      if (p->kind() != want) continue;
      if (!succ_equal(one(0).succedent, c.succedent)) continue;
      for (const auto& minor : minor_spellings(p, var))
        if (ante_matches(one(0), c, p, minor)) return;
    }
    fail(ctx, "no quantified formula in the antecedent matches the premise");
  }
  const auto& a = require_succedent(ctx, c, "right quantifier rule");
  if (a->kind() != want) fail(ctx, "succedent is not the required quantifier form");
  if (!formula_set_equal(one(0).antecedent, c.antecedent))
    fail(ctx, "premise antecedent differs from the conclusion");
  for (const auto& minor : minor_spellings(a, var))
    if (succ_equal(one(0).succedent, minor)) return;
  fail(ctx, "premise does not prove the instantiated body");
}

void check_node(const Derivation& d, Ctx& ctx) {
  const TagRow& row = row_of(d.rule);
  if (d.premises.size() != static_cast<std::size_t>(row.premises))
    fail(ctx, std::string(row.name) + " expects " +
                  std::to_string(row.premises) + " premises, got " +
                  std::to_string(d.premises.size()));
  if (!d.variable.empty() && !takes_variable(d.rule))
    fail(ctx, std::string(row.name) + " does not take a variable");
  for (const auto& f : d.conclusion.antecedent) {
    if (!well_formed(*f, ctx.theory))
      fail(ctx, "antecedent formula outside the theory's language");
    if (!pure_formula(*f)) fail(ctx, "antecedent term outside the finite language");
  }
  if (d.conclusion.succedent) {
    if (!well_formed(*d.conclusion.succedent, ctx.theory))
      fail(ctx, "succedent formula outside the theory's language");
    if (!pure_formula(*d.conclusion.succedent))
      fail(ctx, "succedent term outside the finite language");
  }

  if (is_axiom(d.rule)) {
    check_axiom(d, ctx);
  } else {
    check_rule(d, ctx);
  }

  for (std::size_t i = 0; i < d.premises.size(); ++i) {
    ctx.path.push_back(i);
    check_node(*d.premises[i], ctx);
    ctx.path.pop_back();
  }
}

}  // namespace

void check_proof(const Derivation& d, Theory theory) {
  Ctx ctx{theory, {}};
  check_node(d, ctx);
}

}  // namespace ordforge

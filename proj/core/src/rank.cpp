#include "ordforge/rank.hpp"

#include <unordered_map>

namespace ordforge {

namespace {

Ord plus_n(const Ord& a, std::uint64_t n) { return add(a, Ord::nat(n)); }

TermPtr l_zero() { return Term::stage(StageKind::constructible, Ord::zero()); }
TermPtr v_zero() { return Term::stage(StageKind::power, Ord::zero()); }

Ord rank_irs_formula(const FormulaPtr& f);

}  // namespace

Ord rank_irs(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::free_var:
      return Ord::zero();  // level-0 object
    case Term::Kind::bound_var:
      throw OrdError("bound variable has no rank");
    case Term::Kind::stage:
      if (t.stage_family() != StageKind::constructible)
        throw TheoryMismatch("constructible-stage rank applied to a foreign stage");
      return omega_times(t.level_ord());
    case Term::Kind::levelled_var:
      throw TheoryMismatch("constructible-stage rank applied to a levelled variable");
    case Term::Kind::comprehension: {
      if (t.base()->kind() != Term::Kind::stage ||
          t.base()->stage_family() != StageKind::constructible)
        throw TheoryMismatch("comprehension base must be a constructible stage");
      const Ord stage_part = plus_n(omega_times(t.base()->level_ord()), 1);
      const Ord body_part = plus_n(rank_irs_formula(open_bound(t.body(), l_zero())), 2);
      return max(stage_part, body_part);
    }
  }
  throw OrdError("unknown term kind");
}

namespace {

Ord rank_irs_formula(const FormulaPtr& f) {
  using K = Formula::Kind;
  switch (f->kind()) {
    case K::member:
      return max(plus_n(rank_irs(*f->terms()[0]), 6), plus_n(rank_irs(*f->terms()[1]), 1));
    case K::equal:
    case K::subset:
    case K::func:
      return rank_irs_formula(expand_sugar(f));
    case K::negation:
      return plus_n(rank_irs_formula(f->subs()[0]), 1);
    case K::conjunction:
    case K::disjunction:
    case K::implication:
      return plus_n(max(rank_irs_formula(f->subs()[0]), rank_irs_formula(f->subs()[1])), 1);
    case K::bounded_forall:
    case K::bounded_exists:
      return max(rank_irs(*f->terms()[0]),
                 plus_n(rank_irs_formula(open_bound(f->subs()[0], l_zero())), 2));
    case K::forall:
    case K::exists:
      return max(Ord::big_omega(),
                 plus_n(rank_irs_formula(open_bound(f->subs()[0], l_zero())), 1));
    case K::subset_forall:
    case K::subset_exists:
    case K::exp_forall:
    case K::exp_exists:
      throw TheoryMismatch("quantifier form outside the constructible-stage language");
  }
  throw OrdError("unknown formula kind");
}

}  // namespace

Ord rank_irs(const FormulaPtr& f) { return rank_irs_formula(expand_sugar(f)); }

namespace {

Ord rank_irsp_formula(const FormulaPtr& f) {
  using K = Formula::Kind;
  switch (f->kind()) {
    case K::member:
      return max(plus_n(level(*f->terms()[0]), 1), plus_n(level(*f->terms()[1]), 1));
    case K::equal:
    case K::subset:
    case K::func:
      return rank_irsp_formula(expand_sugar(f));
    case K::negation:
      return plus_n(rank_irsp_formula(f->subs()[0]), 1);
    case K::conjunction:
    case K::disjunction:
    case K::implication:
      return plus_n(max(rank_irsp_formula(f->subs()[0]), rank_irsp_formula(f->subs()[1])), 1);
    case K::bounded_forall:
    case K::bounded_exists:
      return max(level(*f->terms()[0]),
                 plus_n(rank_irsp_formula(open_bound(f->subs()[0], v_zero())), 2));
    case K::subset_forall:
    case K::subset_exists:
      return max(plus_n(level(*f->terms()[0]), 1),
                 plus_n(rank_irsp_formula(open_bound(f->subs()[0], v_zero())), 2));
    case K::forall:
    case K::exists:
      return max(Ord::big_omega(),
                 plus_n(rank_irsp_formula(open_bound(f->subs()[0], v_zero())), 2));
    case K::exp_forall:
    case K::exp_exists:
      throw TheoryMismatch("quantifier form outside the power-stage language");
  }
  throw OrdError("unknown formula kind");
}

}  // namespace

Ord rank_irsp(const FormulaPtr& f) { return rank_irsp_formula(expand_sugar(f)); }

namespace {

using SlotMap = std::unordered_map<TermPtr, Ord, TermValueHash, TermValueEq>;

Ord slot_value(const SlotMap& slots, const TermPtr& t) {
  if (t->kind() == Term::Kind::bound_var) return Ord::zero();
  const auto it = slots.find(t);
  if (it == slots.end()) throw OrdError("term has no assigned ordinal");
  return it->second;
}

Ord rank_irse_formula(const FormulaPtr& f, const SlotMap& slots) {
  using K = Formula::Kind;
  switch (f->kind()) {
    case K::member:
      return max(slot_value(slots, f->terms()[0]), slot_value(slots, f->terms()[1]));
    case K::negation:
      return plus_n(rank_irse_formula(f->subs()[0], slots), 1);
    case K::conjunction:
    case K::disjunction:
    case K::implication:
      return plus_n(
          max(rank_irse_formula(f->subs()[0], slots), rank_irse_formula(f->subs()[1], slots)), 1);
    case K::bounded_forall:
    case K::bounded_exists:
      return max(slot_value(slots, f->terms()[0]),
                 plus_n(rank_irse_formula(f->subs()[0], slots), 2));
    case K::exp_forall:
    case K::exp_exists:
      return max(max(add(slot_value(slots, f->terms()[0]), Ord::omega()),
                     add(slot_value(slots, f->terms()[1]), Ord::omega())),
                 plus_n(rank_irse_formula(f->subs()[0], slots), 2));
    case K::forall:
    case K::exists:
      return max(Ord::big_omega(), plus_n(rank_irse_formula(f->subs()[0], slots), 2));
    case K::subset_forall:
    case K::subset_exists:
      throw TheoryMismatch("quantifier form outside the exponentiation-stage language");
    case K::equal:
    case K::subset:
    case K::func:
      throw OrdError("abbreviation survived expansion");
  }
  throw OrdError("unknown formula kind");
}

}  // namespace

Ord rank_irse(const FormulaPtr& f, const std::vector<Ord>& beta) {
  const FormulaPtr expanded = expand_sugar(f);
  const std::vector<TermPtr> slots = term_slots(*expanded);
  if (slots.size() != beta.size())
    throw ArityMismatch("assignment length does not match the term slots");
  SlotMap map;
  for (std::size_t i = 0; i < slots.size(); ++i) map.emplace(slots[i], beta[i]);
  return rank_irse_formula(expanded, map);
}

Ord rank_irse(const FormulaPtr& f) {
  const FormulaPtr expanded = expand_sugar(f);
  return rank_irse(expanded, std::vector<Ord>(term_slots(*expanded).size(), Ord::zero()));
}

Ord formula_rank(const FormulaPtr& f, Theory theory) {
  switch (theory) {
    case Theory::ikp:
      return rank_irs(f);
    case Theory::ikpp:
      return rank_irsp(f);
    case Theory::ikpe:
      return rank_irse(f);
  }
  throw OrdError("unknown theory");
}

Ord norm_no(const FormulaPtr& f, Theory theory) { return omega_pow(formula_rank(f, theory)); }

Ord norm_no(const Sequent& s, Theory theory) {
  Ord total = Ord::zero();
  for (const auto& f : s.antecedent) total = nat_sum(total, norm_no(f, theory));
  if (s.succedent) total = nat_sum(total, norm_no(s.succedent, theory));
  return total;
}

}  // namespace ordforge

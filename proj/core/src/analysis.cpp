#include "ordforge/analysis.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ordforge/rank.hpp"

namespace ordforge {

namespace {

bool lt(const Ord& a, const Ord& b) { return compare(a, b) == Cmp::less; }
bool le(const Ord& a, const Ord& b) { return compare(a, b) != Cmp::greater; }

bool succ_eq(const FormulaPtr& a, const FormulaPtr& b) {
  if (!a || !b) return !a && !b;
  return *a == *b;
}

bool is_limit(const Ord& g) {
  if (g.is_zero()) return false;
  return g.parts().back().kind != Ord::Kind::one;
}

// Least bound above every term instance of a node bound: instances share the
// summands at W and above and vary only in the countable remainder.
Ord countable_sup(const Ord& xi) {
  std::vector<Ord::Part> high;
  for (const auto& p : xi.parts()) {
    if (lt(Ord::from_parts({p}), Ord::big_omega())) break;
    high.push_back(p);
  }
  return nat_sum(Ord::from_parts(std::move(high)), Ord::big_omega());
}

// Cut ranks surviving arbitrary term instances: countable ranks grow
// unboundedly below W under reinstantiation, ranks at W and above are driven
// by the unbounded quantifier structure and do not move.
Ord dominate_rank(const Ord& rho) {
  if (rho.is_zero()) return rho;
  if (lt(rho, Ord::big_omega())) return Ord::big_omega();
  return rho;
}

Formula::Kind quantifier_kind(RuleTag tag) {
  switch (tag) {
    case RuleTag::bex_left:
    case RuleTag::bex_right:
      return Formula::Kind::bounded_exists;
    case RuleTag::ball_left:
    case RuleTag::ball_right:
      return Formula::Kind::bounded_forall;
    case RuleTag::sbex_left:
    case RuleTag::sbex_right:
      return Formula::Kind::subset_exists;
    case RuleTag::sball_left:
    case RuleTag::sball_right:
      return Formula::Kind::subset_forall;
    case RuleTag::ebex_left:
    case RuleTag::ebex_right:
      return Formula::Kind::exp_exists;
    case RuleTag::eball_left:
    case RuleTag::eball_right:
      return Formula::Kind::exp_forall;
    case RuleTag::ex_left:
    case RuleTag::ex_right:
      return Formula::Kind::exists;
    default:
      return Formula::Kind::forall;
  }
}

bool universal_kind(Formula::Kind k) {
  return k == Formula::Kind::bounded_forall || k == Formula::Kind::subset_forall ||
         k == Formula::Kind::exp_forall || k == Formula::Kind::forall;
}

FormulaPtr guard_of(const FormulaPtr& principal, const TermPtr& var) {
  switch (principal->kind()) {
    case Formula::Kind::bounded_forall:
    case Formula::Kind::bounded_exists:
      return Formula::member(var, principal->terms()[0]);
    case Formula::Kind::subset_forall:
    case Formula::Kind::subset_exists:
      return Formula::subset(var, principal->terms()[0]);
    case Formula::Kind::exp_forall:
    case Formula::Kind::exp_exists:
      return Formula::func(var, principal->terms()[0], principal->terms()[1]);
    default:
      return nullptr;
  }
}

FormulaPtr join_minor(const FormulaPtr& guard, const FormulaPtr& opened,
                      bool universal) {
  if (!guard) return opened;
  return universal ? Formula::implication(guard, opened)
                   : Formula::conjunction(guard, opened);
}

struct QuantParts {
  FormulaPtr principal;
  FormulaPtr minor;  // guard joined to the opened body, abbreviation spelling
};

// Recovers the principal formula of a left quantifier inference the same way
// the checker accepted it.  Only called on checked derivations.
QuantParts left_parts(const Derivation& d) {
  const Sequent& c = d.conclusion;
  const Sequent& prem = d.premises[0]->conclusion;
  const auto var = Term::free_var(d.variable);
  const Formula::Kind want = quantifier_kind(d.rule);
  for (const auto& p : c.antecedent) {
    if (p->kind() != want) continue;
    if (!succ_eq(prem.succedent, c.succedent)) continue;
    const auto opened = open_bound(p->subs()[0], var);
    const auto guard = guard_of(p, var);
    const bool uni = universal_kind(want);
    std::vector<FormulaPtr> minors{join_minor(guard, opened, uni)};
    if (guard) {
      auto expanded = expand_sugar(guard);
      if (!(*expanded == *guard))
        minors.push_back(join_minor(expanded, opened, uni));
    }
    for (const auto& minor : minors) {
      if (formula_set_equal(prem.antecedent, with_formula(c.antecedent, minor)) ||
          formula_set_equal(prem.antecedent,
                            with_formula(without_formula(c.antecedent, *p), minor)))
        return {p, minors.front()};
    }
  }
  throw OrdError("left quantifier inference has no matching principal");
}

QuantParts right_parts(const Derivation& d) {
  const auto& p = d.conclusion.succedent;
  const auto var = Term::free_var(d.variable);
  const auto opened = open_bound(p->subs()[0], var);
  const auto guard = guard_of(p, var);
  return {p, join_minor(guard, opened, universal_kind(p->kind()))};
}

FormulaPtr cut_formula(const Derivation& d) {
  const Sequent& c = d.conclusion;
  for (int swap = 0; swap < 2; ++swap) {
    const Sequent& proves = d.premises[swap]->conclusion;
    const Sequent& uses = d.premises[1 - swap]->conclusion;
    if (!proves.succedent) continue;
    if (formula_set_equal(proves.antecedent, c.antecedent) &&
        succ_eq(uses.succedent, c.succedent) &&
        formula_set_equal(uses.antecedent,
                          with_formula(c.antecedent, proves.succedent)))
      return proves.succedent;
  }
  throw OrdError("premises do not share a cut formula");
}

// Annotates the nodes of a checked derivation with bounds for its level-zero
// instance in the matching infinitary system.  Every variable free in the
// root keeps its assigned hierarchy location; variables introduced inside
// the tree are hypothesized at location 1, so a closing cut against the
// bottom-stage membership axiom can discharge them.
struct Annotator {
  Theory theory;
  std::set<std::string> root_vars;
  const std::map<std::string, Ord>* assigned = nullptr;
  std::vector<Ord> op_params;
  std::map<std::string, NodeAnnotation> out;

  bool e() const { return theory == Theory::ikpe; }

  ControlledOperator node_op() const {
    return ControlledOperator(Ord::zero(), op_params);
  }

  Ord location(const std::string& name) const {
    if (root_vars.count(name)) {
      auto it = assigned->find(name);
      return it == assigned->end() ? Ord::zero() : it->second;
    }
    return Ord::one();
  }

  Ord slot_beta(const TermPtr& t) const {
    if (t->kind() == Term::Kind::free_var) return location(t->name());
    return mbound(*t);
  }

  Ord rank_of(const FormulaPtr& f) const {
    if (!e()) return formula_rank(f, theory);
    std::vector<Ord> betas;
    for (const auto& s : term_slots(*f)) betas.push_back(slot_beta(s));
    return rank_irse(f, betas);
  }

  Ord norm_of(const FormulaPtr& f) const { return omega_pow(rank_of(f)); }

  Ord seq_norm(const Sequent& s) const {
    Ord n;
    for (const auto& f : s.antecedent) n = nat_sum(n, norm_of(f));
    if (s.succedent) n = nat_sum(n, norm_of(s.succedent));
    return n;
  }

  Ord max_term_level(const FormulaPtr& f) const {
    Ord m;
    for (const auto& t : term_slots(*f)) m = max(m, level(*t));
    return m;
  }

  Ord max_term_location(const FormulaPtr& f) const {
    Ord m;
    for (const auto& t : term_slots(*f)) m = max(m, slot_beta(t));
    return m;
  }

  // True when the inference's witness variable leaves no trace in the
  // conclusion and is not anchored by the root: its location hypothesis must
  // be discharged by a cut against the bottom-stage membership axiom.
  bool discharges(const Derivation& d) const {
    if (!e() || !takes_variable(d.rule)) return false;
    if (root_vars.count(d.variable)) return false;
    return free_vars(d.conclusion).count(d.variable) == 0;
  }

  void pay_discharge(const Derivation& d, Ord& xi, Ord& rho) const {
    if (!discharges(d)) return;
    xi = add(xi, Ord::one());
    rho = max(rho, Ord::nat(2));
  }

  NodeAnnotation axiom(const Derivation& d) const {
    const Sequent& c = d.conclusion;
    const Ord norm = seq_norm(c);
    NodeAnnotation a;
    a.op = node_op();
    a.ordinal = norm;
    switch (d.rule) {
      case RuleTag::ax_logical:
      case RuleTag::ax_extensionality:
        if (e() && !is_delta0(*c.succedent, theory)) a.cutrank = Ord::big_omega();
        break;
      case RuleTag::ax_collection:
        if (e()) a.cutrank = Ord::big_omega();
        break;
      case RuleTag::ax_set_induction:
        // The constructible lemma runs an inner induction on the rank of the
        // progressiveness hypothesis, the succedent implication's antecedent.
        if (theory == Theory::ikp)
          a.ordinal =
              nat_sum(norm, omega_pow(rank_of(c.succedent->subs()[0])));
        if (e()) a.cutrank = Ord::big_omega();
        break;
      case RuleTag::ax_infinity:
        if (theory == Theory::ikpp) {
          a.ordinal = add(Ord::omega(), Ord::nat(2));
        } else if (e()) {
          a.ordinal = add(Ord::omega(), Ord::nat(4));
          a.cutrank = Ord::omega();
        }
        break;
      case RuleTag::ax_separation:
        if (theory == Theory::ikpp) {
          a.ordinal = add(max_term_level(c.succedent), Ord::nat(7));
          a.cutrank = add(max_term_level(c.succedent), Ord::omega());
        } else if (e()) {
          a.ordinal = add(max_term_location(c.succedent), Ord::nat(7));
        }
        break;
      case RuleTag::ax_pair:
        if (theory == Theory::ikpp) {
          const Ord alpha = add(max_term_level(c.succedent), Ord::one());
          a.ordinal = add(alpha, Ord::nat(2));
        } else if (e()) {
          const Ord alpha = max_term_location(c.succedent);
          a.ordinal = add(alpha, Ord::nat(6));
          a.cutrank = add(alpha, Ord::nat(2));
        }
        break;
      case RuleTag::ax_union:
        if (theory == Theory::ikpp) {
          a.ordinal = add(max_term_level(c.succedent), Ord::nat(5));
        } else if (e()) {
          const Ord beta = max_term_location(c.succedent);
          a.ordinal = add(beta, Ord::nat(9));
          a.cutrank = add(beta, Ord::nat(2));
        }
        break;
      case RuleTag::ax_power_set:
        a.ordinal = add(max_term_level(c.succedent), Ord::nat(3));
        break;
      case RuleTag::ax_exponentiation: {
        const Ord delta = add(max_term_location(c.succedent), Ord::nat(2));
        a.ordinal = add(delta, Ord::nat(4));
        a.cutrank = add(delta, Ord::nat(3));
        break;
      }
      default:
        break;
    }
    return a;
  }

  NodeAnnotation annotate(const Derivation& d, const std::string& path) {
    std::vector<NodeAnnotation> ps;
    ps.reserve(d.premises.size());
    for (std::size_t i = 0; i < d.premises.size(); ++i)
      ps.push_back(annotate(*d.premises[i], path + "." + std::to_string(i)));

    NodeAnnotation a;
    if (is_axiom(d.rule)) {
      a = axiom(d);
      out[path] = a;
      return a;
    }
    a.op = node_op();
    const Sequent& c = d.conclusion;
    Ord xi;
    Ord rho;
    switch (d.rule) {
      case RuleTag::and_left:
      case RuleTag::or_right:
      case RuleTag::neg_left:
      case RuleTag::neg_right:
      case RuleTag::imp_right:
      case RuleTag::ex_falso:
        xi = add(ps[0].ordinal, Ord::one());
        rho = ps[0].cutrank;
        break;
      case RuleTag::and_right:
      case RuleTag::or_left:
      case RuleTag::imp_left:
        xi = add(max(ps[0].ordinal, ps[1].ordinal), Ord::one());
        rho = max(ps[0].cutrank, ps[1].cutrank);
        break;
      case RuleTag::cut: {
        const FormulaPtr b = cut_formula(d);
        xi = add(max(ps[0].ordinal, ps[1].ordinal), Ord::one());
        rho = max(max(ps[0].cutrank, ps[1].cutrank),
                  add(rank_of(b), Ord::one()));
        if (e()) {
          // Variables of the cut formula absent from the conclusion drop to
          // the bottom stage; one closing cut discharges their hypothesis.
          const auto cfv = free_vars(*b);
          const auto sfv = free_vars(c);
          for (const auto& n : cfv) {
            if (sfv.count(n) || root_vars.count(n)) continue;
            xi = add(xi, Ord::one());
            rho = max(rho, Ord::nat(2));
            break;
          }
        }
        break;
      }
      case RuleTag::ex_right:
      case RuleTag::all_left:
        if (!e()) {
          xi = add(ps[0].ordinal, Ord::nat(2));
          rho = ps[0].cutrank;
        } else {
          xi = add(max(add(ps[0].ordinal, Ord::nat(3)), location(d.variable)),
                   Ord::one());
          rho = ps[0].cutrank;
          pay_discharge(d, xi, rho);
        }
        break;
      case RuleTag::ex_left:
      case RuleTag::all_right:
        xi = countable_sup(ps[0].ordinal);
        rho = dominate_rank(ps[0].cutrank);
        break;
      case RuleTag::ball_left: {
        const QuantParts q = left_parts(d);
        const Ord nu = seq_norm(Sequent{c.antecedent, q.minor});
        xi = add(max(ps[0].ordinal, nu), Ord::one());
        rho = max(ps[0].cutrank, add(rank_of(q.minor), Ord::one()));
        pay_discharge(d, xi, rho);
        break;
      }
      case RuleTag::bex_right: {
        const FormulaPtr b = d.premises[0]->conclusion.succedent;
        if (!e()) {
          const Ord nu =
              seq_norm(Sequent{with_formula(c.antecedent, b), c.succedent});
          xi = add(max(ps[0].ordinal, nu), Ord::one());
          rho = max(ps[0].cutrank, add(rank_of(b), Ord::one()));
        } else {
          // The witness location comes from the member-of-a-located-set
          // axiom, so it equals the bound's own location.
          const Ord gamma = slot_beta(c.succedent->terms()[0]);
          xi = add(max(add(ps[0].ordinal, Ord::nat(2)), gamma), Ord::one());
          rho = max(ps[0].cutrank, add(rank_of(b), Ord::one()));
          pay_discharge(d, xi, rho);
        }
        break;
      }
      case RuleTag::ball_right:
      case RuleTag::bex_left:
        if (!e()) {
          // Level-zero bounds have no members, so the family is empty.
          xi = add(ps[0].ordinal, Ord::one());
          rho = ps[0].cutrank;
        } else {
          xi = countable_sup(ps[0].ordinal);
          rho = max(dominate_rank(ps[0].cutrank), Ord::big_omega());
        }
        break;
      case RuleTag::sball_left:
      case RuleTag::sbex_right:
        // The subset guard compares levels non-strictly, so the witness row
        // applies directly at level zero.
        xi = add(ps[0].ordinal, Ord::one());
        rho = ps[0].cutrank;
        break;
      case RuleTag::sball_right:
      case RuleTag::sbex_left:
        // Level-driven ranks make every level-zero family instance carry the
        // premise's own bounds.
        xi = add(ps[0].ordinal, Ord::one());
        rho = ps[0].cutrank;
        break;
      case RuleTag::eball_left: {
        const QuantParts q = left_parts(d);
        const Ord nu = seq_norm(Sequent{c.antecedent, q.minor});
        xi = add(max(ps[0].ordinal, nu), Ord::one());
        rho = max(ps[0].cutrank, add(rank_of(q.minor), Ord::one()));
        pay_discharge(d, xi, rho);
        break;
      }
      case RuleTag::ebex_right: {
        const FormulaPtr b = d.premises[0]->conclusion.succedent;
        const Ord delta = add(max(slot_beta(c.succedent->terms()[0]),
                                  slot_beta(c.succedent->terms()[1])),
                              Ord::nat(2));
        xi = add(max(add(ps[0].ordinal, Ord::nat(2)), delta), Ord::one());
        rho = max(ps[0].cutrank, add(rank_of(b), Ord::one()));
        pay_discharge(d, xi, rho);
        break;
      }
      case RuleTag::eball_right:
      case RuleTag::ebex_left:
        // The family ranges over all terms; per-member location cuts keep
        // countable ranks, so the cut rank climbs to W.
        xi = countable_sup(ps[0].ordinal);
        rho = max(dominate_rank(ps[0].cutrank), Ord::big_omega());
        break;
      default:
        throw OrdError("unannotated rule");
    }
    // Bounds keep the conclusion's norm as a floor, so the stage found for
    // the root dominates every sequent norm in the tree.  Axioms are exempt:
    // their lemma derivations can undercut the norm.
    a.ordinal = max(std::move(xi), seq_norm(c));
    a.cutrank = std::move(rho);
    out[path] = a;
    return a;
  }
};

void param_locations(const Derivation& d, const Annotator& an,
                     std::vector<Ord>& acc) {
  for (const auto& name : free_vars(d.conclusion)) acc.push_back(an.location(name));
  for (const auto& p : d.premises) param_locations(*p, an, acc);
}

bool row_in_theory(ControlledRule r, Theory t) {
  switch (r) {
    case ControlledRule::member_left:
    case ControlledRule::member_right:
      return t != Theory::ikpe;
    case ControlledRule::subset_left:
    case ControlledRule::subset_right:
    case ControlledRule::subset_all_left:
    case ControlledRule::subset_all_right:
    case ControlledRule::subset_ex_left:
    case ControlledRule::subset_ex_right:
      return t == Theory::ikpp;
    case ControlledRule::exp_all_left:
    case ControlledRule::exp_all_right:
    case ControlledRule::exp_ex_left:
    case ControlledRule::exp_ex_right:
    case ControlledRule::stage_limit:
      return t == Theory::ikpe;
    default:
      return true;
  }
}

}  // namespace

EmbedResult embed_bounds(const Derivation& d, Theory theory,
                         const std::map<std::string, Ord>& var_locations) {
  try {
    check_proof(d, theory);
  } catch (const ProofError& err) {
    throw UncheckedDerivation(err.what());
  }
  for (const auto& [name, loc] : var_locations)
    if (!lt(loc, Ord::big_omega()))
      throw OrdError("variable location must lie below W");

  Annotator an;
  an.theory = theory;
  an.root_vars = free_vars(d.conclusion);
  an.assigned = &var_locations;
  if (theory == Theory::ikpe) {
    std::vector<Ord> params{Ord::one()};
    param_locations(d, an, params);
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end()), params.end());
    an.op_params = std::move(params);
  }

  const NodeAnnotation root = an.annotate(d, "root");

  EmbedResult r;
  r.nodes = std::move(an.out);
  for (std::uint64_t m = 1;; ++m) {
    if (m > 64) throw OrdError("embedding stage search exceeded its cap");
    const Ord stage = add(Ord::big_omega(), Ord::nat(m));
    if (le(root.ordinal, omega_pow(stage)) && le(root.cutrank, stage)) {
      r.m = m;
      break;
    }
  }
  return r;
}

Ord reduce_bound(const Ord& alpha, const Ord& beta, Theory theory) {
  if (theory == Theory::ikpe)
    return reduce_bound(alpha, beta, Ord::zero(), theory);
  return nat_sum(nat_sum(alpha, alpha), nat_sum(beta, beta));
}

Ord reduce_bound(const Ord& alpha, const Ord& beta, const Ord& gamma,
                 Theory theory) {
  if (theory != Theory::ikpe)
    throw TheoryMismatch(
        "location premise bounds belong to the exponentiation system");
  return nat_sum(nat_sum(nat_sum(alpha, alpha), nat_sum(beta, beta)), gamma);
}

Ord predicative_ce(const Ord& alpha, const Ord& rho, const Ord& beta) {
  const Ord top = add(rho, omega_pow(beta));
  if (le(rho, Ord::big_omega()) && lt(Ord::big_omega(), top))
    throw DomainViolation("the lowered cut rank interval contains W");
  return veblen(beta, alpha);
}

Ord partial_ce(const Ord& alpha, std::uint64_t n) {
  return omega_tower(n, alpha);
}

std::pair<Ord, Ord> collapse(const Ord& eta, const Ord& alpha) {
  const ControlledOperator h(eta);
  if (!h_contains(h, eta))
    throw PreconditionViolated("collapse offset escapes its own operator");
  if (!h_contains(h, alpha))
    throw PreconditionViolated("collapse bound escapes the offset operator");
  Ord hatted = hat(eta, alpha);
  Ord collapsed = psi(hatted);
  return {std::move(hatted), std::move(collapsed)};
}

BoundReport analyze_sigma(const Derivation& d, Theory theory) {
  try {
    check_proof(d, theory);
  } catch (const ProofError& err) {
    throw UncheckedDerivation(err.what());
  }
  const Sequent& c = d.conclusion;
  if (!c.antecedent.empty() || !c.succedent)
    throw NotSigmaSentence("conclusion must be a bare succedent");
  if (!free_vars(c).empty())
    throw NotSigmaSentence("conclusion must be closed");
  if (!classify(*c.succedent, theory).sigma)
    throw NotSigmaSentence("conclusion is not a Sigma sentence");

  EmbedResult er = embed_bounds(d, theory);

  BoundReport r;
  r.theory = theory;
  r.m = er.m;
  r.nodes = std::move(er.nodes);
  r.embed_cutrank = add(Ord::big_omega(), Ord::nat(er.m));
  r.embed_ordinal = omega_pow(r.embed_cutrank);
  r.pre_collapse = partial_ce(r.embed_ordinal, er.m - 1);
  auto [gamma, collapsed] = collapse(Ord::zero(), r.pre_collapse);
  r.gamma_or_sigma = std::move(gamma);
  r.collapsed = collapsed;
  r.final_bound = theory == Theory::ikp
                      ? predicative_ce(collapsed, Ord::zero(), collapsed)
                      : std::move(collapsed);
  return r;
}

RuleCheck validate_inference(Theory theory, const RuleInstance& inst) {
  RuleCheck rc;
  auto flag = [&rc](std::string reason) {
    rc.ok = false;
    rc.reasons.push_back(std::move(reason));
  };
  const bool e = theory == Theory::ikpe;
  const Ord& alpha = inst.bound;
  const ControlledOperator& h = inst.op;

  if (!h_contains(h, alpha)) flag("conclusion bound escapes the operator");
  if (!e && inst.conclusion) {
    for (const auto& x : k_of(*inst.conclusion))
      if (!h_contains(h, x)) flag("sequent parameter escapes the operator");
  }
  if (e) {
    for (const auto& x : inst.locations)
      if (!h_contains(h, x)) flag("location escapes the operator");
  }
  if (!row_in_theory(inst.rule, theory)) {
    flag("rule row outside the selected system");
    return rc;
  }

  auto premises_below = [&] {
    for (const auto& p : inst.premises)
      if (!lt(p, alpha)) flag("premise bound not below the conclusion's");
  };
  auto family = [&](auto check_member) {
    if (inst.premise_levels.size() != inst.premises.size()) {
      flag("family rows pair one index with each premise bound");
      return;
    }
    for (std::size_t i = 0; i < inst.premises.size(); ++i)
      check_member(inst.premise_levels[i], inst.premises[i]);
  };
  auto need_premises = [&](std::size_t n) {
    if (inst.premises.size() == n) return true;
    flag("wrong premise count for the row");
    return false;
  };
  auto need_locations = [&](std::size_t n) {
    if (inst.locations.size() >= n) return true;
    flag("row names more locations than given");
    return false;
  };

  switch (inst.rule) {
    case ControlledRule::propositional:
      premises_below();
      break;
    case ControlledRule::member_left:
      family([&](const Ord& lvl, const Ord& p) {
        if (!le(lvl, p)) flag("member bound below its index level");
        if (!lt(p, alpha)) flag("premise bound not below the conclusion's");
        if (!lt(lvl, inst.bound_level)) flag("family index not below the bound's level");
      });
      break;
    case ControlledRule::member_right:
      premises_below();
      if (!lt(inst.witness_level, inst.bound_level))
        flag("witness level not below the bound's level");
      if (!lt(inst.witness_level, alpha))
        flag("witness level not below the conclusion bound");
      break;
    case ControlledRule::subset_left:
      family([&](const Ord& lvl, const Ord& p) {
        if (!le(lvl, p)) flag("member bound below its index level");
        if (!lt(p, alpha)) flag("premise bound not below the conclusion's");
        if (!le(lvl, inst.bound_level)) flag("family index above the bound's level");
      });
      break;
    case ControlledRule::subset_right:
      premises_below();
      if (!le(inst.witness_level, inst.bound_level))
        flag("witness level above the bound's level");
      if (!lt(inst.witness_level, alpha))
        flag("witness level not below the conclusion bound");
      break;
    case ControlledRule::bounded_all_left:
    case ControlledRule::bounded_ex_right:
      if (!e) {
        premises_below();
        if (!lt(inst.witness_level, inst.bound_level))
          flag("witness level not below the bound's level");
        if (!lt(inst.witness_level, alpha))
          flag("witness level not below the conclusion bound");
      } else {
        need_premises(3);
        premises_below();
        if (need_locations(2)) {
          if (!lt(inst.locations[1], alpha))
            flag("witness location not below the conclusion bound");
          if (!le(inst.locations[1], inst.locations[0]))
            flag("witness location above the bound's location");
        }
      }
      break;
    case ControlledRule::bounded_all_right:
    case ControlledRule::bounded_ex_left:
      if (!e) {
        family([&](const Ord& lvl, const Ord& p) {
          if (!le(lvl, p)) flag("member bound below its index level");
          if (!lt(p, alpha)) flag("premise bound not below the conclusion's");
          if (!lt(lvl, inst.bound_level)) flag("family index not below the bound's level");
        });
      } else {
        premises_below();
        if (need_locations(1) && !lt(inst.locations[0], alpha))
          flag("bound's location not below the conclusion bound");
      }
      break;
    case ControlledRule::subset_all_left:
    case ControlledRule::subset_ex_right:
      premises_below();
      if (!le(inst.witness_level, inst.bound_level))
        flag("witness level above the bound's level");
      if (!lt(inst.witness_level, alpha))
        flag("witness level not below the conclusion bound");
      break;
    case ControlledRule::subset_all_right:
    case ControlledRule::subset_ex_left:
      family([&](const Ord& lvl, const Ord& p) {
        if (!le(lvl, p)) flag("member bound below its index level");
        if (!lt(p, alpha)) flag("premise bound not below the conclusion's");
        if (!le(lvl, inst.bound_level)) flag("family index above the bound's level");
      });
      break;
    case ControlledRule::exp_all_left:
    case ControlledRule::exp_ex_right:
      need_premises(4);
      premises_below();
      if (need_locations(3)) {
        const Ord cap = add(max(inst.locations[0], inst.locations[1]), Ord::nat(2));
        if (!lt(inst.locations[2], alpha))
          flag("witness location not below the conclusion bound");
        if (!le(inst.locations[2], cap))
          flag("witness location above the function bound's reach");
      }
      break;
    case ControlledRule::exp_all_right:
    case ControlledRule::exp_ex_left:
      premises_below();
      if (need_locations(2)) {
        const Ord cap = add(max(inst.locations[0], inst.locations[1]), Ord::nat(2));
        if (!le(cap, alpha))
          flag("function bound's reach not within the conclusion bound");
      }
      break;
    case ControlledRule::stage_limit:
      premises_below();
      if (!is_limit(inst.bound_level)) flag("stage split needs a limit stage");
      if (!h_contains(h, inst.bound_level)) flag("stage escapes the operator");
      break;
    case ControlledRule::all_left:
    case ControlledRule::ex_right:
      if (!e) {
        premises_below();
        if (!inst.premises.empty() &&
            !lt(add(inst.premises[0], Ord::one()), alpha))
          flag("displaced premise bound not below the conclusion's");
        if (!lt(inst.witness_level, alpha))
          flag("witness level not below the conclusion bound");
      } else {
        need_premises(2);
        for (const auto& p : inst.premises)
          if (!lt(add(p, Ord::nat(3)), alpha))
            flag("displaced premise bound not below the conclusion's");
        if (need_locations(1) && !lt(inst.locations[0], alpha))
          flag("witness location not below the conclusion bound");
      }
      break;
    case ControlledRule::all_right:
    case ControlledRule::ex_left:
      if (!e) {
        family([&](const Ord& lvl, const Ord& p) {
          const Ord up = add(p, Ord::one());
          if (!lt(lvl, up)) flag("family index not below its displaced bound");
          if (!lt(up, alpha)) flag("displaced premise bound not below the conclusion's");
        });
      } else {
        family([&](const Ord& loc, const Ord& p) {
          const Ord up = add(p, Ord::nat(3));
          if (!lt(loc, up)) flag("family location not below its displaced bound");
          if (!lt(up, alpha)) flag("displaced premise bound not below the conclusion's");
          if (!h_contains(h, loc)) flag("family location escapes the operator");
        });
      }
      break;
    case ControlledRule::cut:
      premises_below();
      if (!lt(inst.cut_rank, inst.cutrank))
        flag("cut formula rank not below the cut rank bound");
      break;
    case ControlledRule::sigma_reflection:
      if (!inst.premises.empty() &&
          !lt(add(inst.premises[0], Ord::one()), alpha))
        flag("displaced premise bound not below the conclusion's");
      if (!lt(Ord::big_omega(), alpha))
        flag("reflection bound not above W");
      if (!inst.reflected) {
        flag("missing the reflected formula");
      } else if (!classify(*inst.reflected, theory).sigma) {
        flag("reflected formula is not Sigma");
      }
      break;
  }
  return rc;
}

}  // namespace ordforge

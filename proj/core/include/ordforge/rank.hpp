#pragma once

#include <vector>

#include "ordforge/formula.hpp"
#include "ordforge/ordinal.hpp"

namespace ordforge {

// Rank assignments of the three infinitary systems.  All three expand the
// abbreviation nodes before measuring, treat plain free variables as level-0
// objects, and satisfy: rank < W exactly on the delta0 fragment.

// Constructible-stage system.  Terms: rk(L(a)) = w*a, a comprehension over
// L(a) is max(w*a+1, rk(body at L(0))+2).  Formulas: membership adds 6 and 1
// to the term ranks, connectives add 1, bounded quantifiers step the opened
// body by 2, unbounded ones lift to W.
Ord rank_irs(const Term& t);
Ord rank_irs(const FormulaPtr& f);

// Power-stage system.  Driven by term levels: membership is level+1 on both
// sides, bounded quantifiers charge the bound's level, subset-bounded ones
// level+1, unbounded ones lift to W; opened bodies step by 2.
Ord rank_irsp(const FormulaPtr& f);

// Exponentiation-stage system.  beta assigns an ordinal to each distinct
// maximal closed term in first-occurrence order (ArityMismatch on length
// disagreement); bound variables count 0.  Membership takes the max of its
// operands' ordinals, exponentiation bounds charge their ordinal + w, and
// quantifier bodies step by 2.  rank_irse(f) is the all-zero assignment.
Ord rank_irse(const FormulaPtr& f, const std::vector<Ord>& beta);
Ord rank_irse(const FormulaPtr& f);

Ord formula_rank(const FormulaPtr& f, Theory theory);

// no(A) = w^rank(A); a sequent's norm is the natural sum over its formulas.
Ord norm_no(const FormulaPtr& f, Theory theory);
Ord norm_no(const Sequent& s, Theory theory);

}  // namespace ordforge

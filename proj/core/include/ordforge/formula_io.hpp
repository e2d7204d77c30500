#pragma once

#include <string>
#include <string_view>

#include "ordforge/formula.hpp"

namespace ordforge {

// Formula grammar (ASCII), loosest binding first:
//   F -> G  (right assoc) | A | B | A & B | ~A
//   atoms:   s in t   s sub t   s = t   fun(s,a,b)
//   quantifiers:
//     all x . F        ex x . F             whole rest of the formula in scope
//     (all x in t) F   (ex x in t) F        body binds like a prefix operator
//     (all x sub t) F  (ex x sub t) F
//     (all x in exp(a,b)) F  (ex x in exp(a,b)) F
//   terms:   x   L(ordinal)   V(ordinal)   E(ordinal)   var(i,ordinal)
//            { x in t | F }
// Reserved words: all ex in sub fun exp var L V E.  Formulas must be closed;
// parse_formula rejects quantifier forms outside the theory's language with
// TheoryMismatch, other errors raise ParseError with an offset.
FormulaPtr parse_formula(std::string_view text, Theory theory);

// A closed term by itself, same grammar.
TermPtr parse_term_text(std::string_view text);

// Canonical text; parse_formula(print_formula(f), theory) rebuilds f
// exactly.  Binder names are generated as x0, x1, ... skipping free names.
std::string print_formula(const FormulaPtr& f);
std::string print_term(const TermPtr& t);

// Human-readable sequent: "A, B => C"; an empty side prints as nothing.
std::string print_sequent(const Sequent& s);

}  // namespace ordforge

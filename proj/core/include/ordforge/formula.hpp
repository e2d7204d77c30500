#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ordforge/ordinal.hpp"

namespace ordforge {

// The three set theories.  The choice selects the axiom schemas, the
// quantifier repertoire and the rank assignment.
enum class Theory { ikp, ikpp, ikpe };

std::string_view theory_name(Theory t);
Theory theory_from_name(std::string_view name);  // throws ParseError

// Raised when a formula uses a quantifier form outside the theory's language.
struct TheoryMismatch : OrdError {
  using OrdError::OrdError;
};

// Raised when asking for the level of a term that does not carry one.
struct NoLevel : OrdError {
  using OrdError::OrdError;
};

// Raised when an ordinal assignment's length does not match the slot count.
struct ArityMismatch : OrdError {
  using OrdError::OrdError;
};

class Term;
class Formula;
using TermPtr = std::shared_ptr<const Term>;
using FormulaPtr = std::shared_ptr<const Formula>;

// Stage families of the three infinitary term structures: L(a) constructible
// stages, V(a) power-set stages, E(a) exponentiation stages.
enum class StageKind : std::uint8_t { constructible, power, exponential };

// Set terms.  Finite proofs use free variables only; the infinitary systems
// add stages, levelled variables a_i^alpha and comprehension terms.  Bound
// variables are de Bruijn indices; a comprehension binds one variable in its
// body.  Terms are immutable and shared.
class Term {
 public:
  enum class Kind : std::uint8_t {
    free_var,
    bound_var,
    stage,
    levelled_var,
    comprehension,
  };

  static TermPtr free_var(std::string name);
  static TermPtr bound_var(std::size_t index);
  static TermPtr stage(StageKind family, Ord level);
  static TermPtr levelled_var(std::size_t id, Ord level);
  static TermPtr comprehension(TermPtr base, FormulaPtr body);

  Kind kind() const { return kind_; }
  const std::string& name() const;      // free_var
  std::size_t index() const;            // bound_var
  std::size_t var_id() const;           // levelled_var
  StageKind stage_family() const;       // stage
  const Ord& level_ord() const;         // stage, levelled_var
  const TermPtr& base() const;          // comprehension
  const FormulaPtr& body() const;       // comprehension

  bool operator==(const Term& other) const;

 private:
  Kind kind_;
  std::string name_;
  std::size_t index_ = 0;
  StageKind stage_kind_ = StageKind::constructible;
  Ord level_;
  TermPtr base_;
  FormulaPtr body_;
};

// Formulas over set terms.  equal, subset and func are explicit abbreviation
// nodes; classifiers treat them as bounded atoms and expand_sugar rewrites
// them into the primitive language.  Quantifier nodes bind one de Bruijn
// variable in their single subformula; the bound terms of a bounded
// quantifier live outside that binder's scope.
class Formula {
 public:
  enum class Kind : std::uint8_t {
    member,         // terms: s, t
    equal,          // abbreviation; terms: s, t
    subset,         // abbreviation; terms: s, t
    func,           // abbreviation "x is a function from a to b"; terms: x, a, b
    negation,       // subs: A
    conjunction,    // subs: A, B
    disjunction,    // subs: A, B
    implication,    // subs: A, B
    forall,         // subs: body
    exists,         // subs: body
    bounded_forall,  // terms: t; subs: body
    bounded_exists,  // terms: t; subs: body
    subset_forall,   // terms: t; subs: body
    subset_exists,   // terms: t; subs: body
    exp_forall,      // terms: a, b; subs: body
    exp_exists,      // terms: a, b; subs: body
  };

  static FormulaPtr member(TermPtr s, TermPtr t);
  static FormulaPtr equal(TermPtr s, TermPtr t);
  static FormulaPtr subset(TermPtr s, TermPtr t);
  static FormulaPtr func(TermPtr f, TermPtr a, TermPtr b);
  static FormulaPtr negation(FormulaPtr a);
  static FormulaPtr conjunction(FormulaPtr a, FormulaPtr b);
  static FormulaPtr disjunction(FormulaPtr a, FormulaPtr b);
  static FormulaPtr implication(FormulaPtr a, FormulaPtr b);
  static FormulaPtr forall(FormulaPtr body);
  static FormulaPtr exists(FormulaPtr body);
  static FormulaPtr bounded_forall(TermPtr t, FormulaPtr body);
  static FormulaPtr bounded_exists(TermPtr t, FormulaPtr body);
  static FormulaPtr subset_forall(TermPtr t, FormulaPtr body);
  static FormulaPtr subset_exists(TermPtr t, FormulaPtr body);
  static FormulaPtr exp_forall(TermPtr a, TermPtr b, FormulaPtr body);
  static FormulaPtr exp_exists(TermPtr a, TermPtr b, FormulaPtr body);
  // Generic rebuild with arity validation; the workhorse of traversals.
  static FormulaPtr make(Kind kind, std::vector<TermPtr> terms, std::vector<FormulaPtr> subs);

  Kind kind() const { return kind_; }
  const std::vector<TermPtr>& terms() const { return terms_; }
  const std::vector<FormulaPtr>& subs() const { return subs_; }

  bool is_atom() const;        // member or an abbreviation node
  bool is_quantifier() const;  // any of the six quantifier kinds plus forall/exists
  bool binds() const;          // quantifier kinds introduce one bound variable

  bool operator==(const Formula& other) const;

 private:
  Formula(Kind kind, std::vector<TermPtr> terms, std::vector<FormulaPtr> subs)
      : kind_(kind), terms_(std::move(terms)), subs_(std::move(subs)) {}
  Kind kind_;
  std::vector<TermPtr> terms_;
  std::vector<FormulaPtr> subs_;
};

std::size_t hash_value(const Term& t);
std::size_t hash_value(const Formula& f);

// An intuitionistic sequent: finite set antecedent, at most one succedent
// formula (null when empty).  make_sequent deduplicates the antecedent while
// keeping first-occurrence order.
struct Sequent {
  std::vector<FormulaPtr> antecedent;
  FormulaPtr succedent;
};

Sequent make_sequent(std::vector<FormulaPtr> antecedent, FormulaPtr succedent);
bool formula_set_equal(const std::vector<FormulaPtr>& a, const std::vector<FormulaPtr>& b);
bool sequent_equal(const Sequent& a, const Sequent& b);
bool contains_formula(const std::vector<FormulaPtr>& set, const Formula& f);
std::vector<FormulaPtr> with_formula(std::vector<FormulaPtr> set, FormulaPtr f);
std::vector<FormulaPtr> without_formula(const std::vector<FormulaPtr>& set, const Formula& f);

// de Bruijn plumbing.  shift_* adds delta to every index at or above cutoff;
// open_bound instantiates a binder's variable 0 with a term, renumbering the
// remaining loose indices down.
TermPtr shift_term(const TermPtr& t, std::int64_t delta, std::size_t cutoff = 0);
FormulaPtr shift_formula(const FormulaPtr& f, std::int64_t delta, std::size_t cutoff = 0);
FormulaPtr open_bound(const FormulaPtr& body, const TermPtr& s);
// Abstracts every occurrence of the named free variable into index 0, for
// placing under a new binder.
FormulaPtr abstract_free(const FormulaPtr& f, const std::string& name);
TermPtr subst_free_term(const TermPtr& t, const std::string& name, const TermPtr& repl);
FormulaPtr subst_free(const FormulaPtr& f, const std::string& name, const TermPtr& repl);

// True when the tree mentions a bound-variable index reaching at or above
// `depth` enclosing binders; with depth 0, true iff the tree is open.
bool has_loose_bound(const Term& t, std::size_t depth = 0);
bool has_loose_bound(const Formula& f, std::size_t depth = 0);

void collect_free_vars(const Term& t, std::set<std::string>& out);
void collect_free_vars(const Formula& f, std::set<std::string>& out);
std::set<std::string> free_vars(const Formula& f);
std::set<std::string> free_vars(const Sequent& s);

// Membership in the formula classes of the selected theory.  delta0: no
// unbounded quantifiers.  sigma/pi: the simultaneously defined wider classes,
// closed under the bounded quantifiers, with implication and negation
// swapping sides.  strict_sigma: delta0 closed under conjunction,
// disjunction, the bounded quantifiers and unbounded exists only.
struct Classification {
  bool delta0;
  bool sigma;
  bool pi;
  bool strict_sigma;
};

Classification classify(const Formula& f, Theory theory);
bool is_delta0(const Formula& f, Theory theory);
bool is_strict_sigma(const Formula& f, Theory theory);

// Classifies by quantifier structure alone, accepting unbound variable
// indices.  Used for schema bodies that live under binders.
bool delta0_shape(const Formula& f, Theory theory);

// Checks the quantifier repertoire against the theory and that no bound
// index escapes its binders.
bool well_formed(const Formula& f, Theory theory);
void require_well_formed(const Formula& f, Theory theory);

// The function abbreviation, fully expanded: "f is a set of ordered pairs
// with first components exactly a, second components in b, and functional".
// Ordered pairs, equality and the product bound are spelled out through
// bounded quantifiers only, so the result is delta0 in every theory.
FormulaPtr fun_expand(const TermPtr& f, const TermPtr& a, const TermPtr& b);

// Rewrites every abbreviation node (equal, subset, func) into the primitive
// language, inside comprehension bodies as well.
FormulaPtr expand_sugar(const FormulaPtr& f);
TermPtr expand_sugar_term(const TermPtr& t);

// Replaces each unbounded quantifier by the corresponding z-bounded one.
// Bounded quantifiers and term contents are untouched.  z must be closed.
FormulaPtr relativize(const FormulaPtr& f, const TermPtr& z);

// Ordinal level of a term.  Stages and levelled variables carry theirs, a
// comprehension takes its base's, plain free variables sit at level 0.
// Exponentiation-family terms have no level (NoLevel).
Ord level(const Term& t);

// Position measure for exponentiation-family terms: stages and levelled
// variables carry their subscript, a comprehension is one above the maximum
// of its base and parameters, plain free variables sit at 0.
Ord mbound(const Term& t);

// All stage subscripts and levelled-variable levels occurring anywhere in
// the tree, subterms included; sorted and deduplicated.
std::vector<Ord> k_of(const Formula& f);
std::vector<Ord> k_of(const Sequent& s);

// The distinct maximal closed terms of the formula in left-to-right
// first-occurrence order; bound-variable occurrences are not slots.
std::vector<TermPtr> term_slots(const Formula& f);

// Value semantics for keying containers of shared terms.
struct TermValueHash {
  std::size_t operator()(const TermPtr& t) const { return t ? hash_value(*t) : 0; }
};
struct TermValueEq {
  bool operator()(const TermPtr& a, const TermPtr& b) const {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
  }
};

}  // namespace ordforge

#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ordforge/formula.hpp"

namespace ordforge {

// Finite sequent calculus for the three set theories.  A derivation is a
// tree of inferences; check_proof validates every node against the rule
// schemas of the selected theory.
//
// Sequents are intuitionistic: at most one succedent formula.  Antecedents
// are finite sets, so a premise may either consume its principal formula or
// keep it as a side formula (a contraction).  The checker accepts both.
// Terms of the finite language are plain variables; stages, levelled
// variables and comprehensions belong to the infinitary systems and are
// rejected here.

enum class RuleTag : std::uint8_t {
  // axiom schemas
  ax_logical,
  ax_extensionality,
  ax_pair,
  ax_union,
  ax_separation,
  ax_collection,
  ax_set_induction,
  ax_infinity,
  ax_power_set,
  ax_exponentiation,
  // propositional rules
  and_left,
  and_right,
  or_left,
  or_right,
  neg_left,
  neg_right,
  ex_falso,
  imp_left,
  imp_right,
  // membership bounded quantifier rules
  bex_left,
  bex_right,
  ball_left,
  ball_right,
  // subset bounded quantifier rules
  sbex_left,
  sbex_right,
  sball_left,
  sball_right,
  // exponentiation bounded quantifier rules
  ebex_left,
  ebex_right,
  eball_left,
  eball_right,
  // unbounded quantifier rules
  ex_left,
  ex_right,
  all_left,
  all_right,
  cut,
};

std::string_view rule_name(RuleTag tag);
RuleTag rule_from_name(std::string_view name);
bool is_axiom(RuleTag tag);

// True for the rules whose recorded variable must not occur free in the
// conclusion; the remaining quantifier rules use the variable as a witness.
bool takes_eigenvariable(RuleTag tag);
bool takes_variable(RuleTag tag);

struct Derivation;
using DerivationPtr = std::shared_ptr<const Derivation>;

struct Derivation {
  RuleTag rule;
  Sequent conclusion;
  std::vector<DerivationPtr> premises;
  // eigenvariable or witness of a quantifier inference, empty elsewhere
  std::string variable;
};

DerivationPtr make_derivation(RuleTag rule, Sequent conclusion,
                              std::vector<DerivationPtr> premises = {},
                              std::string variable = {});

bool derivation_equal(const Derivation& a, const Derivation& b);

struct ProofError : OrdError {
  explicit ProofError(const std::string& what) : OrdError(what) {}
};

// Throws ProofError describing the first violation, locating the node by
// its premise path from the root.
void check_proof(const Derivation& d, Theory theory);

// Closed instances of the axiom schemas.  Formula arguments are schema
// bodies with variable index 0 standing for the schema's distinguished
// variable; the collection schema's body sees the source element at
// index 1 and the image at index 0.
FormulaPtr pair_axiom(const TermPtr& a, const TermPtr& b);
FormulaPtr union_axiom(const TermPtr& a);
FormulaPtr infinity_axiom();
FormulaPtr separation_axiom(const TermPtr& a, const FormulaPtr& body);
FormulaPtr collection_axiom(const TermPtr& a, const FormulaPtr& body);
FormulaPtr set_induction_axiom(const FormulaPtr& body);
FormulaPtr extensionality_axiom(const TermPtr& a, const TermPtr& b,
                                const FormulaPtr& body);
FormulaPtr power_set_axiom(const TermPtr& a);
FormulaPtr exponentiation_axiom(const TermPtr& a, const TermPtr& b);

}  // namespace ordforge

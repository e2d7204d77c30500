#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordforge/collapse.hpp"
#include "ordforge/ordinal.hpp"
#include "ordforge/proof.hpp"

namespace ordforge {

// Ordinal bookkeeping for the infinitary counterparts of the three theories:
// per-node derivation bounds for embedded finite proofs, the cut elimination
// arithmetic, the collapse below W, and a validator for the side conditions
// of the operator-controlled rules.

// Raised when an operation is handed a derivation that fails check_proof.
struct UncheckedDerivation : OrdError {
  using OrdError::OrdError;
};

// Raised when a cut elimination step would have to cross W.
struct DomainViolation : OrdError {
  using OrdError::OrdError;
};

// Raised when a collapse offset escapes its own operator.
struct PreconditionViolated : OrdError {
  using OrdError::OrdError;
};

// Raised by analyze_sigma when the conclusion is not a closed Sigma sentence.
struct NotSigmaSentence : OrdError {
  using OrdError::OrdError;
};

// Bound data attached to one node of an embedded derivation: a derivation
// length, a cut rank, and the operator controlling the node.  The ordinal
// always lies inside the operator.
struct NodeAnnotation {
  Ord ordinal;
  Ord cutrank;
  ControlledOperator op;
};

// Result of embedding a finite derivation: annotations keyed by node path
// ("root", "root.0", "root.0.1", ...) and the least m >= 1 with root ordinal
// <= W*w^m and root cut rank <= W+m.
struct EmbedResult {
  std::uint64_t m = 1;
  std::map<std::string, NodeAnnotation> nodes;
};

// The full bound chain for a derivation of a closed Sigma sentence.
//   embed:          (W*w^m, W+m), from embed_bounds
//   pre_collapse:   the (m-1)-fold tower over W*w^m, at cut rank W+1
//   gamma_or_sigma: the m-fold tower, the argument handed to the collapse
//   collapsed:      psi of gamma_or_sigma
//   final_bound:    phi(collapsed, collapsed) for the constructible theory,
//                   collapsed itself for the power and exponentiation ones
struct BoundReport {
  Theory theory = Theory::ikp;
  std::uint64_t m = 1;
  Ord embed_ordinal;
  Ord embed_cutrank;
  Ord pre_collapse;
  Ord gamma_or_sigma;
  Ord collapsed;
  Ord final_bound;
  std::map<std::string, NodeAnnotation> nodes;
};

// Annotates every node of a checked derivation with infinitary bounds.
// Axioms carry the bounds of their lemma derivations; rule nodes combine
// their premises' annotations, paying for the auxiliary cuts the embedding
// needs.  For the exponentiation theory, var_locations assigns hierarchy
// locations to the free variables of the root sequent (absent means 0);
// variables bound inside the tree always sit at location 1.  Locations must
// lie below W.  Throws UncheckedDerivation when the proof fails check_proof.
EmbedResult embed_bounds(const Derivation& d, Theory theory,
                         const std::map<std::string, Ord>& var_locations = {});

// Bound of the cut elimination step that removes one cut over premises with
// bounds alpha and beta: the natural sum alpha#alpha#beta#beta.  The
// exponentiation theory's step also pays for its location premises, whose
// bound gamma joins the sum; the two-argument form takes gamma = 0 there.
Ord reduce_bound(const Ord& alpha, const Ord& beta, Theory theory);
Ord reduce_bound(const Ord& alpha, const Ord& beta, const Ord& gamma,
                 Theory theory);

// Bound of full predicative cut elimination: lowering a cut rank from
// rho+w^beta to rho turns a derivation bound alpha into phi(beta, alpha).
// The lowered interval must not contain W; DomainViolation otherwise.
Ord predicative_ce(const Ord& alpha, const Ord& rho, const Ord& beta);

// Bound of n rounds of cut elimination above W: from cut rank W+n+1 down to
// W+1, a bound alpha becomes the n-fold tower w^...^alpha.
Ord partial_ce(const Ord& alpha, std::uint64_t n);

// The collapse step: from cut rank W+1 under the operator with offset eta, a
// bound alpha yields hat = eta+w^(W+alpha) and the new bound and cut rank
// psi(hat).  Returns (hat, psi(hat)).  Requires eta inside its own operator;
// PreconditionViolated otherwise.
std::pair<Ord, Ord> collapse(const Ord& eta, const Ord& alpha);

// Runs the full chain on a checked derivation of a sequent "=> A" with A a
// closed Sigma sentence: embedding, m-1 rounds of cut elimination above W,
// the collapse, and for the constructible theory the final predicative
// elimination.  NotSigmaSentence when the conclusion has the wrong shape.
BoundReport analyze_sigma(const Derivation& d, Theory theory);

// Rule rows of the operator-controlled systems, named by what they do.  The
// member/subset decomposition rows and every row marked as a family take one
// displayed premise per family member.
enum class ControlledRule : std::uint8_t {
  propositional,     // one or two premises, each bound below the conclusion's
  member_left,       // family over the members of the bound
  member_right,      // witness form of the membership decomposition
  subset_left,       // power theory: family over the subsets of the bound
  subset_right,      // power theory: witness form
  bounded_all_left,  // witness below a member bound
  bounded_all_right,  // family below a member bound
  bounded_ex_left,    // family below a member bound
  bounded_ex_right,   // witness below a member bound
  subset_all_left,    // power theory: witness below a subset bound
  subset_all_right,   // power theory: family below a subset bound
  subset_ex_left,     // power theory: family below a subset bound
  subset_ex_right,    // power theory: witness below a subset bound
  exp_all_left,       // exponentiation theory: witness below a function bound
  exp_all_right,      // exponentiation theory: family below a function bound
  exp_ex_left,        // exponentiation theory: family below a function bound
  exp_ex_right,       // exponentiation theory: witness below a function bound
  stage_limit,        // exponentiation theory: limit stage split on the left
  all_left,           // unbounded witness rows
  all_right,          // unbounded family rows
  ex_left,            // unbounded family rows
  ex_right,           // unbounded witness rows
  cut,
  sigma_reflection,
};

// One controlled inference to validate.  bound/cutrank/op annotate the
// conclusion; premises lists the premise bounds in display order.  The
// remaining fields carry whatever the selected row mentions:
//   premise_levels   per-premise index level (family rows) or, for the
//                    unbounded family rows of the exponentiation theory, the
//                    per-premise hierarchy location
//   witness_level    level of the witness term (level-bearing theories)
//   bound_level      level of the bounding term; the limit of stage_limit
//   locations        hierarchy locations named by exponentiation rows, in
//                    row order; the cut row's per-premise term locations
//   cut_rank         rank of the cut formula
//   reflected        the reflected formula of a sigma_reflection row
//   conclusion       enables the parameter membership check
struct RuleInstance {
  ControlledRule rule = ControlledRule::propositional;
  Ord bound;
  Ord cutrank;
  ControlledOperator op;
  std::vector<Ord> premises;
  std::vector<Ord> premise_levels;
  Ord witness_level;
  Ord bound_level;
  std::vector<Ord> locations;
  Ord cut_rank;
  FormulaPtr reflected;
  std::optional<Sequent> conclusion;
};

struct RuleCheck {
  bool ok = true;
  std::vector<std::string> reasons;
  explicit operator bool() const { return ok; }
};

// Checks every side condition of the selected row in the infinitary system
// paired with the theory: ordinal inequalities, operator membership of the
// conclusion bound and of the sequent's parameters or stage locations, level
// comparisons, and formula class requirements.  Returns the verdict together
// with one reason per violated condition.
RuleCheck validate_inference(Theory theory, const RuleInstance& inst);

}  // namespace ordforge

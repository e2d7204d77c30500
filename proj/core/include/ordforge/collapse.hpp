#pragma once

#include <vector>

#include "ordforge/ordinal.hpp"

namespace ordforge {

// Membership in the stage-alpha closure: the closure of {0, Omega} under +
// and phi in which psi(xi) is admitted only when xi < alpha (with xi itself
// in the closure).  Monotone in alpha.
bool closure_contains(const Ord& alpha, const Ord& x);

// Least stage whose closure contains x: one past the largest psi argument
// occurring anywhere in x, or 0 when x has no psi subterm.
Ord admission_index(const Ord& x);

// H_eta(params): the intersection of all stage closures whose stage exceeds
// eta and whose closure contains every parameter.  The admissible stages form
// an upward closed set with a least element, so the operator coincides with
// that single stage's closure.
class ControlledOperator {
 public:
  ControlledOperator() = default;
  explicit ControlledOperator(Ord eta, std::vector<Ord> params = {});

  const Ord& eta() const { return eta_; }
  // Sorted, deduplicated, and closed under summand-exponent decomposition.
  const std::vector<Ord>& params() const { return params_; }

  // The least admissible stage.
  Ord least_stage() const;

  bool contains(const Ord& x) const;

 private:
  Ord eta_;
  std::vector<Ord> params_;
};

bool h_contains(const ControlledOperator& h, const Ord& x);

// Same eta, parameters enlarged by xs.
ControlledOperator extend(const ControlledOperator& h, const std::vector<Ord>& xs);

// eta + w^(Omega + alpha): the offset whose collapse bounds the conclusion of
// the impredicative cut elimination step.
Ord hat(const Ord& eta, const Ord& alpha);

}  // namespace ordforge

#include "ordforge/collapse.hpp"

#include <algorithm>
#include <memory>
#include <utility>

namespace ordforge {

namespace {

// Largest psi argument occurring anywhere in x, written into `best`.
void max_psi_argument(const Ord& x, Ord& best, bool& found) {
  for (const Ord::Part& p : x.parts()) {
    if (p.kind == Ord::Kind::psi) {
      if (!found || compare(*p.first, best) == Cmp::greater) {
        best = *p.first;
        found = true;
      }
      max_psi_argument(*p.first, best, found);
    } else if (p.kind == Ord::Kind::veblen) {
      max_psi_argument(*p.first, best, found);
      max_psi_argument(*p.second, best, found);
    }
  }
}

// Exponent of a principal summand viewed as w^e.  The epsilon-like summands
// are their own exponent.
Ord summand_exponent(const Ord::Part& p) {
  switch (p.kind) {
    case Ord::Kind::one:
      return Ord::zero();
    case Ord::Kind::veblen:
      if (p.first->is_zero()) return *p.second;
      return Ord::from_parts({p});
    default:
      return Ord::from_parts({p});
  }
}

}  // namespace

bool closure_contains(const Ord& alpha, const Ord& x) {
  for (const Ord::Part& p : x.parts()) {
    switch (p.kind) {
      case Ord::Kind::one:
      case Ord::Kind::big_omega:
        break;
      case Ord::Kind::veblen:
        if (!closure_contains(alpha, *p.first) ||
            !closure_contains(alpha, *p.second))
          return false;
        break;
      case Ord::Kind::psi:
        if (compare(*p.first, alpha) != Cmp::less ||
            !closure_contains(alpha, *p.first))
          return false;
        break;
    }
  }
  return true;
}

Ord admission_index(const Ord& x) {
  Ord best;
  bool found = false;
  max_psi_argument(x, best, found);
  if (!found) return Ord::zero();
  return add(best, Ord::one());
}

ControlledOperator::ControlledOperator(Ord eta, std::vector<Ord> params)
    : eta_(std::move(eta)), params_(std::move(params)) {
  // Close the parameter set under summand-exponent decomposition.
  for (std::size_t i = 0; i < params_.size(); ++i) {
    const Ord current = params_[i];
    for (const Ord::Part& p : current.parts()) {
      Ord e = summand_exponent(p);
      if (std::find(params_.begin(), params_.end(), e) == params_.end())
        params_.push_back(std::move(e));
    }
  }
  std::sort(params_.begin(), params_.end(),
            [](const Ord& a, const Ord& b) { return compare(a, b) == Cmp::less; });
  params_.erase(std::unique(params_.begin(), params_.end()), params_.end());
}

Ord ControlledOperator::least_stage() const {
  Ord stage = add(eta_, Ord::one());
  for (const Ord& p : params_) stage = max(stage, admission_index(p));
  return stage;
}

bool ControlledOperator::contains(const Ord& x) const {
  return closure_contains(least_stage(), x);
}

bool h_contains(const ControlledOperator& h, const Ord& x) {
  return h.contains(x);
}

ControlledOperator extend(const ControlledOperator& h,
                          const std::vector<Ord>& xs) {
  std::vector<Ord> params = h.params();
  params.insert(params.end(), xs.begin(), xs.end());
  return ControlledOperator(h.eta(), std::move(params));
}

Ord hat(const Ord& eta, const Ord& alpha) {
  return add(eta, omega_pow(add(Ord::big_omega(), alpha)));
}

Ord psi(const Ord& a) {
  if (!closure_contains(a, a)) {
    throw NonNormalPsiArgument("psi argument is not admissible at its own stage: " +
                               print_ord(a));
  }
  return Ord::from_parts(
      {Ord::Part{Ord::Kind::psi, std::make_shared<const Ord>(a), nullptr}});
}

}  // namespace ordforge

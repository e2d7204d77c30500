#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ordforge/formula.hpp"

namespace ordforge {

// Raised when a stage index lies beyond the enumeration cap, or when a
// quantifier bound is too wide to enumerate.
struct StageCapExceeded : OrdError {
  using OrdError::OrdError;
};

// Raised when evaluation meets a formula outside the bounded class of the
// selected theory, or a sentence outside the Sigma class.
struct ClassViolation : OrdError {
  using OrdError::OrdError;
};

// A hereditarily finite set in canonical form: the element list is sorted
// and duplicate-free, so extensional equality is structural equality.  The
// rank is cached at construction.
class HFSet {
 public:
  HFSet() = default;
  explicit HFSet(std::vector<HFSet> elements);

  const std::vector<HFSet>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  std::size_t rank() const { return rank_; }

  bool contains(const HFSet& x) const;
  bool subset_of(const HFSet& other) const;

  bool operator==(const HFSet& other) const { return elements_ == other.elements_; }
  bool operator!=(const HFSet& other) const { return !(*this == other); }
  // Strict total order: lexicographic on the canonical element lists.
  bool operator<(const HFSet& other) const;

 private:
  std::vector<HFSet> elements_;
  std::size_t rank_ = 0;
};

// Unordered pair {a, b} and the Kuratowski ordered pair {{a, b}, {a}}.
HFSet hf_pair(const HFSet& a, const HFSet& b);
HFSet hf_ordered_pair(const HFSet& a, const HFSet& b);

// Brace syntax: `{}`, `{{}}`, `{{},{{}}}`; whitespace is free around braces
// and commas.  print_hf emits elements in canonical order with no spaces,
// and parse_hf(print_hf(x)) == x.
HFSet parse_hf(std::string_view text);  // throws ParseError
std::string print_hf(const HFSet& x);

// Values for the free variables of a formula under evaluation.  Levelled
// variables are keyed by their printed spelling, e.g. "var(0,w)", and their
// values must satisfy rank <= level when the level is finite.
using Assignment = std::map<std::string, HFSet>;

// Enumeration cap for stage().  Defaults to 4, or to the value of the
// ORDFORGE_STAGE_CAP environment variable when that parses as a natural
// number not above 5.  set_stage_cap rejects values above 5: the next stage
// has 2^65536 elements.  Membership tests by rank stay available through
// stage 5 regardless of the cap.
std::size_t stage_cap();
void set_stage_cap(std::size_t cap);  // throws StageCapExceeded above 5

// The n-th cumulative stage, in canonical order.  Stage 0 is empty and each
// later stage collects every subset of its predecessor; at finite indices
// the constructible, power and exponentiation hierarchies all coincide with
// this (every subset of a finite structure is definable from parameters,
// and finite function spaces land inside the iterated powerset), which the
// tests verify independently at small indices.  Results are memoized and
// the returned reference stays valid for the process lifetime.
const std::vector<HFSet>& stage(std::size_t n);  // throws StageCapExceeded

// The same stage as a single set.
HFSet stage_set(std::size_t n);

// Membership in stage(n) without enumerating it: rank(x) < n.  Valid
// through n = 5 independent of the enumeration cap.
bool stage_contains(const HFSet& x, std::size_t n);

// Truth value of a bounded formula under the assignment.  The formula must
// be well formed and delta0 for the theory; every free variable needs a
// value.  Membership-bounded quantifiers walk the bound's elements,
// subset-bounded quantifiers enumerate all subsets of the bound, and
// exponentiation-bounded quantifiers enumerate the full finite function
// space as sets of Kuratowski pairs.  equal, subset and func are decided
// directly; agreement with their expansions is a tested property.
bool eval_bounded(const FormulaPtr& f, const Assignment& v, Theory theory);

// Truth of a closed Sigma sentence in the n-th stage structure: unbounded
// quantifiers are relativized to the stage, then the bounded result is
// evaluated.  Throws ClassViolation when the sentence is open or not Sigma
// for the theory.
bool sat_stage(const FormulaPtr& f, std::size_t n, Theory theory);

}  // namespace ordforge

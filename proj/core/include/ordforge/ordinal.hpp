#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ordforge {

// Notations for ordinals below the Bachmann-Howard ordinal: the closure of
// {0, Omega} under ordinal addition, the binary Veblen function phi and the
// collapsing function psi.  A value is a weakly decreasing sum of principal
// summands; the empty sum denotes 0.
//
// Normal form invariants, maintained by the smart constructors:
//  - summands are weakly decreasing under principal comparison;
//  - a Veblen summand phi(a,b) satisfies b < phi(a,b), i.e. b is not a fixed
//    point of phi_a, and a < phi(a,b);
//  - Omega and psi values are strongly critical (closed under phi), so
//    phi(a,k) with a < k and phi(k,0) both collapse to k for such k, and
//    w^Omega = Omega;
//  - a psi summand psi(a) requires the argument normality condition
//    "a lies in the stage-a closure" (see in_closure in collapse.hpp).

class Ord;

struct OrdError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when psi is applied to an argument failing the normality condition.
struct NonNormalPsiArgument : OrdError {
  using OrdError::OrdError;
};

// Raised on malformed ordinal, formula or proof text.
struct ParseError : OrdError {
  using OrdError::OrdError;
};

enum class Cmp { less, equal, greater };

class Ord {
 public:
  enum class Kind : std::uint8_t { one, big_omega, veblen, psi };

  // One principal summand.  `first`/`second` are the Veblen arguments; psi
  // uses only `first`; the atoms use neither.
  struct Part {
    Kind kind;
    std::shared_ptr<const Ord> first;
    std::shared_ptr<const Ord> second;
  };

  Ord() = default;  // zero

  static Ord zero() { return Ord{}; }
  static Ord one();
  static Ord omega();      // w = phi(0,1)
  static Ord big_omega();  // W, the uncountable anchor of the collapse
  static Ord nat(std::uint64_t n);

  const std::vector<Part>& parts() const { return parts_; }
  bool is_zero() const { return parts_.empty(); }
  bool is_finite() const;
  // Value of a finite ordinal; throws OrdError on infinite input.
  std::uint64_t finite_value() const;

  bool operator==(const Ord& other) const;
  std::strong_ordering operator<=>(const Ord& other) const;

  // Internal: assumes the parts already satisfy the invariants.
  static Ord from_parts(std::vector<Part> parts) { return Ord(std::move(parts)); }

 private:
  explicit Ord(std::vector<Part> parts) : parts_(std::move(parts)) {}
  std::vector<Part> parts_;
};

Cmp compare(const Ord& a, const Ord& b);

// Ordinal sum with the usual left absorption: summands of `a` strictly below
// the leading summand of `b` are swallowed.
Ord add(const Ord& a, const Ord& b);

// Natural (commutative) sum: merges the summand lists of both arguments.
Ord nat_sum(const Ord& a, const Ord& b);

// phi(a,b), with fixed points collapsed so the result is in normal form.
Ord veblen(const Ord& a, const Ord& b);

// w^a = phi(0,a).
Ord omega_pow(const Ord& a);

// Iterated exponentiation: tower(0,a) = a, tower(n+1,a) = w^tower(n,a).
Ord omega_tower(std::uint64_t n, const Ord& a);

// w*a, via the summand-wise exponent shift w^e -> w^(1+e).  Only this one
// product is ever needed; there is no general multiplication.
Ord omega_times(const Ord& a);

// psi(a); requires the argument normality condition (declared here, checked
// through the closure machinery in collapse.hpp).
Ord psi(const Ord& a);

// Rebuilds a value bottom-up through the smart constructors.  Identity on
// normal forms; exposed so idempotence is testable.
Ord normalize(const Ord& a);

Ord max(const Ord& a, const Ord& b);

// Text syntax:  0  1  17  w  W  w^(a)  phi(a,b)  psi(a)  tower(n,a)  a + b
// a # b.  `#` and `tower` are evaluated while reading, so printed normal
// forms never contain them; print/parse round-trip exactly on normal forms.
Ord parse_ord(std::string_view text);
std::string print_ord(const Ord& a);

// Same structure with the conventional glyphs, for reports.
std::string pretty_ord(const Ord& a);

std::size_t hash_value(const Ord& a);

}  // namespace ordforge

template <>
struct std::hash<ordforge::Ord> {
  std::size_t operator()(const ordforge::Ord& a) const noexcept {
    return ordforge::hash_value(a);
  }
};

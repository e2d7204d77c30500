#pragma once

#include <string>
#include <string_view>

#include "ordforge/proof.hpp"

namespace ordforge {

// Proof files are s-expressions.  A node is either
//
//   (axiom <tag>
//     :conclusion (seq ("A" ...) ("B")))
//
// or
//
//   (rule <tag>
//     :var <name>
//     :conclusion (seq ("A" ...) ())
//     :premises (
//       <node>
//       ...))
//
// where formulas are quoted strings of the formula grammar, the second seq
// list holds the succedent (empty for none), and :var records the eigen or
// witness variable of a quantifier inference.  Keyword arguments may appear
// in any order; print_proof emits them canonically, and feeding its output
// back through parse_proof reproduces the derivation exactly.

DerivationPtr parse_proof(std::string_view text, Theory theory);
std::string print_proof(const Derivation& d);

}  // namespace ordforge

#pragma once

#include <string>

#include "meroq/germ.hpp"

namespace meroq {

// Parses an expression over variables z1..zk into a Germ.
//
// Grammar: sums/differences of terms; terms are products/quotients of
// factors; a factor is an optionally signed atom with an optional integer
// exponent >= 0; atoms are rational literals p or p/q, variables, and
// parenthesized expressions. No implicit multiplication.
//
// Division is validated after normalization: the divisor must be a scalar
// times a product of rational linear forms (NonLinearPole otherwise), and
// must not be identically zero (ZeroDivision). Malformed text raises
// SyntaxError.
Germ parse(const std::string& text, int k);

}  // namespace meroq

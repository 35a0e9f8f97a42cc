#pragma once

#include <optional>
#include <vector>

#include "meroq/germ.hpp"
#include "meroq/poly.hpp"

namespace meroq {

struct LinearFactorization {
    Rat scale;
    std::vector<DenFactor> factors;  // canonical forms with multiplicities
};

// Decides exactly whether p is a scalar times a product of rational linear
// forms, and produces that factorization if so. Complete over the rationals:
// a nullopt means no such factorization exists. p must be nonzero.
std::optional<LinearFactorization> factor_into_linear_forms(const Poly& p);

// All rational roots of a univariate polynomial (coefficients ascending by
// degree), with multiplicities. complete is true iff the polynomial splits
// into rational linear factors over Q (times a scalar).
struct RationalRoots {
    std::vector<std::pair<Rat, int>> roots;
    bool complete;
};
RationalRoots rational_roots(const std::vector<Rat>& coeffs);

// The unique rational with smallest denominator (then smallest numerator in
// absolute value) in the open interval (lo, hi).
Rat simplest_rational_between(const Rat& lo, const Rat& hi);

}  // namespace meroq

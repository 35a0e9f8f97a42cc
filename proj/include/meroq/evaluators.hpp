#pragma once

#include <vector>

#include "meroq/decompose.hpp"
#include "meroq/germ.hpp"

namespace meroq {

// Value at zero of a holomorphic germ (exact division first). Throws
// NotHolomorphic when the germ has genuine poles.
Rat ev0(const Germ& f);

// Minimal subtraction: value at zero of the holomorphic part of the
// splitting. Linear in f; multiplicative over pairs with dual-orthogonal
// dependence subspaces.
Rat eval_ms(const Germ& f, const InnerProductFamily& q);

// The z_{j+1}^0 Laurent coefficient of f at z_{j+1} = 0 (0-based j): a germ
// in the remaining variables, returned in ambient dimension f.k() with the
// variable gone from the support. Per term, axis factors contribute an exact
// monomial pole while every other factor L = a*z + L' expands as a finite
// binomial jet with denominators L'^(s+m); the jets and the numerator slices
// are convolved and the order-zero coefficient collected.
Germ finite_part(const Germ& f, int j);

// Iterated one-variable evaluation along a permutation of {0..k-1}:
// finite_part for sigma[k-1] is applied first, sigma[0] last; the result is a
// constant germ whose value is returned.
Rat speer_sigma(const Germ& f, const std::vector<int>& sigma);

struct SpeerOptions {
    int budget = 6;      // largest admissible ambient dimension (k! growth)
    bool parallel = false;
    bool memoize = true;
};

// Average of speer_sigma over all k! permutations, computed by recursing on
// the set of remaining indices: F(g, R) = (1/|R|) * sum_j F(e_j(g), R\{j}).
Rat speer_f(const Germ& f, const SpeerOptions& opts = {});

// Dependence subspaces dual-orthogonal (after embedding to a common ambient
// dimension).
bool orth_q(const Germ& f1, const Germ& f2, const InnerProductFamily& q);

// Variable supports disjoint (strictly stronger than orth_q for the identity
// family).
bool disjoint_support(const Germ& f1, const Germ& f2);

}  // namespace meroq

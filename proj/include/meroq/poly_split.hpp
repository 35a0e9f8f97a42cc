#pragma once

#include "meroq/linear_form.hpp"
#include "meroq/poly.hpp"
#include "meroq/qlinalg.hpp"

namespace meroq {

// f = L*g + h with h constant along the Riesz direction of L.
struct SplitPair {
    Poly g;
    Poly h;
};

// f composed with the Q-orthogonal projection onto ker L: substitute
// z -> z - (L(z)/Q*(L,L)) * riesz(L). Exact polynomial.
Poly kernel_projection_substitute(const Poly& f, const LinearForm& l, const InnerProductFamily& q);

// Split f into L*g + h: h by kernel projection, g by exact division of f - h
// (divisible because f - h vanishes on ker L).
SplitPair split_linear(const Poly& f, const LinearForm& l, const InnerProductFamily& q);

// Max of |f| over n equispaced samples of the circle of radius r in C
// (one-variable polynomials only). Floating approximation.
double sup_norm_sampled(const Poly& f, const Rat& radius, int n_samples);

}  // namespace meroq

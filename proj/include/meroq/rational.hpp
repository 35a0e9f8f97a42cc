#pragma once

#include <gmpxx.h>

#include <string>

#include "meroq/errors.hpp"

namespace meroq {

// Exact rational scalar. mpq_class keeps values canonicalized (lowest terms,
// positive denominator) through arithmetic, but NOT through the two-argument
// numerator/denominator constructor or raw string assignment — those require
// an explicit canonicalize() before the value touches any arithmetic. Use
// reduced literals, rat_frac, or rat_from_string.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat_frac(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat_from_string(const std::string& text) {
    Rat r;
    if (r.set_str(text, 10) != 0) throw SyntaxError("bad rational literal: " + text);
    if (r.get_den() == 0) throw ZeroDivision("rational with zero denominator: " + text);
    r.canonicalize();
    return r;
}

// Renders as "p" or "p/q", matching the expression grammar.
inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline Rat rat_pow(const Rat& base, unsigned long e) {
    Rat out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e);
    return out;
}

inline Int int_binomial(unsigned long n, unsigned long k) {
    Int out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

}  // namespace meroq

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "meroq/qlinalg.hpp"

namespace meroq {

// Exponent multi-index of length k.
using Mono = std::vector<unsigned>;

inline unsigned mono_degree(const Mono& m) {
    unsigned d = 0;
    for (unsigned e : m) d += e;
    return d;
}

// Graded lexicographic order with z1 the most significant variable.
struct GrlexLess {
    bool operator()(const Mono& a, const Mono& b) const {
        unsigned da = mono_degree(a), db = mono_degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

// Sparse exact polynomial in variables z1..zk.
class Poly {
public:
    using Terms = std::map<Mono, Rat, GrlexLess>;

    explicit Poly(int k = 0) : k_(k) {}
    static Poly constant(int k, const Rat& c);
    static Poly variable(int k, int i);  // z_{i+1}, 0-based i
    static Poly monomial(int k, Mono m, const Rat& c);
    static Poly linear(int k, const VecQ& coeffs);  // sum of coeffs[i]*z_{i+1}

    int k() const { return k_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_coeff() const;
    Rat coeff(const Mono& m) const;
    // Total degree; -1 for the zero polynomial.
    int total_degree() const;
    bool is_homogeneous() const;
    Poly homogeneous_component(unsigned d) const;

    Poly operator-() const;
    Poly operator+(const Poly& rhs) const;
    Poly operator-(const Poly& rhs) const;
    Poly operator*(const Poly& rhs) const;
    Poly& operator+=(const Poly& rhs);
    Poly& operator-=(const Poly& rhs);
    Poly scaled(const Rat& c) const;
    Poly pow(unsigned e) const;
    bool operator==(const Poly&) const = default;

    Rat eval(const VecQ& point) const;
    Poly partial(int i) const;
    Poly embed(int new_k) const;
    // Substitute z_{i+1} = sum_j m(i,j) * y_{j+1}; result lives in m.cols() variables.
    Poly subst_linear(const MatQ& m) const;
    // Group terms by the exponent of z_{i+1}: exponent -> polynomial with that
    // variable's exponent zeroed out (same ambient dimension).
    std::map<unsigned, Poly> split_by_variable(int i) const;

    // Canonical rendering, reparseable: graded-lex descending, explicit * and ^.
    std::string str() const;

    void add_term(const Mono& m, const Rat& c);

private:
    int k_ = 0;
    Terms terms_;
};

// Exact division of p by the linear form with the given coefficients
// (long division in the first variable the form involves); nullopt when the
// remainder is nonzero. The form must not be zero.
std::optional<Poly> divide_by_linear(const Poly& p, const VecQ& form);

}  // namespace meroq

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "meroq/linear_form.hpp"
#include "meroq/poly.hpp"
#include "meroq/qlinalg.hpp"

namespace meroq {

// One denominator factor L^power, power >= 1, L canonical.
struct DenFactor {
    LinearForm form;
    int power;
    auto operator<=>(const DenFactor&) const = default;
};

// num / product of den factors. Denominator forms are kept sorted, pairwise
// distinct (canonicalization identifies proportional forms), powers >= 1.
// An empty denominator is a holomorphic term.
class GermTerm {
public:
    GermTerm(Poly num, std::vector<DenFactor> den);

    int k() const { return num_.k(); }
    const Poly& num() const { return num_; }
    const std::vector<DenFactor>& den() const { return den_; }
    int den_degree() const;
    Poly den_poly() const;
    GermTerm embed(int new_k) const;
    GermTerm operator*(const GermTerm& rhs) const;
    GermTerm scaled(const Rat& c) const;
    std::string str(bool wrap_holomorphic) const;
    bool operator==(const GermTerm&) const = default;

private:
    Poly num_;
    std::vector<DenFactor> den_;
};

enum class GeneratingSetTag { Free, FeynmanF, ChenC };

// Meromorphic germ at zero with linear poles: a finite sum of terms
// h/(L1^m1*...*Ll^ml). Values are immutable; every operation returns a new
// germ in a deterministic shape (zero numerators dropped, terms with equal
// denominators merged and sorted). Equality of germs is semantic: see equals.
class Germ {
public:
    explicit Germ(int k = 0) : k_(k) {}
    static Germ from_poly(Poly p);
    static Germ constant(int k, const Rat& c) { return from_poly(Poly::constant(k, c)); }
    static Germ variable(int k, int i) { return from_poly(Poly::variable(k, i)); }
    static Germ from_terms(int k, std::vector<GermTerm> terms);

    int k() const { return k_; }
    const std::vector<GermTerm>& terms() const { return terms_; }

    Germ operator-() const;
    Germ operator+(const Germ& rhs) const;
    Germ operator-(const Germ& rhs) const;
    Germ operator*(const Germ& rhs) const;
    Germ scaled(const Rat& c) const;
    Germ pow(unsigned e) const;
    Germ embed(int new_k) const;

    struct SingleFraction {
        Poly num;
        std::vector<DenFactor> den;
    };
    // f = num / product(den) semantically; den takes the max power per form
    // across terms; no polynomial cancellation is attempted.
    SingleFraction as_single_fraction() const;
    bool equals(const Germ& rhs) const;

    Germ directional_derivative(const VecQ& v) const;
    // {v : D_v f = 0}, the exact kernel of v -> (D_v p)q - p(D_v q) over the
    // single-fraction representation (correct without GCD reduction).
    Subspace indep_subspace() const;
    // Annihilator of indep_subspace: the covectors f factors through.
    Subspace dep_subspace() const;
    // 0-based variable indices i with e_i not in indep_subspace.
    std::vector<int> supp() const;

    std::optional<Poly> to_polynomial() const;
    bool is_holomorphic() const { return to_polynomial().has_value(); }
    // Value of this representation at a point where no denominator vanishes.
    std::optional<Rat> eval_at(const VecQ& point) const;
    bool validate_poles(GeneratingSetTag tag) const;

    std::string str() const;

private:
    int k_ = 0;
    std::vector<GermTerm> terms_;
};

}  // namespace meroq

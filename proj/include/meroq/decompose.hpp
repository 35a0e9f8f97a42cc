#pragma once

#include <vector>

#include "meroq/germ.hpp"
#include "meroq/qlinalg.hpp"

namespace meroq {

// Algorithmic knobs for the splitting. The holomorphic output of decompose is
// provably independent of them (direct-sum uniqueness); they exist so tests
// can demonstrate exactly that.
enum class PivotRule { LargestForm, SmallestForm };

struct SplitOptions {
    PivotRule pivot = PivotRule::LargestForm;
    bool reverse_complement_basis = false;
};

// A certified polar term: numerator over independent denominator forms with
// Dep(numerator) orthogonal (dual inner product) to the span of the forms.
// The certificate is checked at construction.
class PolarTerm {
public:
    PolarTerm(Poly num, std::vector<DenFactor> den, const InnerProductFamily& q);

    int k() const { return num_.k(); }
    const Poly& num() const { return num_; }
    const std::vector<DenFactor>& den() const { return den_; }
    GermTerm to_term() const { return GermTerm(num_, den_); }
    Germ to_germ() const { return Germ::from_terms(num_.k(), {to_term()}); }
    // The distinct denominator forms in canonical order (cone generators).
    std::vector<LinearForm> supporting_cone() const;

private:
    Poly num_;
    std::vector<DenFactor> den_;
};

struct Decomposition {
    Poly holomorphic;
    std::vector<PolarTerm> polar;

    Germ polar_germ(int k) const;
    Germ reconstructed() const;
};

// true iff t has a nonempty denominator of independent forms and
// Dep(numerator) is dual-orthogonal to their span.
bool is_polar(const GermTerm& t, const InnerProductFamily& q);

// Rewrites t as a sum of terms whose denominator forms are linearly
// independent, by eliminating circuits: with sum c_i*L_i = 0 over a circuit
// and pivot j, 1/prod L^t = -sum_{i != j} (c_i/c_j) / prod L^{t+e_j-e_i}.
// The pivot is the largest (or smallest) form of the circuit per options.
std::vector<GermTerm> reduce_independent(const GermTerm& t, const SplitOptions& opts = {});

// One layer of the splitting for a term with independent denominator forms:
// rewrite the numerator in adapted coordinates (the forms, completed by a
// basis of their dual-orthogonal complement) and sort monomials into
// holomorphic / certified polar / residual terms with strictly smaller
// denominator support.
struct TaylorSplit {
    Poly holomorphic;
    std::vector<PolarTerm> polar;
    std::vector<GermTerm> residual;
};
TaylorSplit taylor_split(const GermTerm& t, const InnerProductFamily& q,
                         const SplitOptions& opts = {});

// Full splitting f = holomorphic + sum of certified polar terms.
Decomposition decompose(const Germ& f, const InnerProductFamily& q,
                        const SplitOptions& opts = {});

// Projection onto holomorphic germs along the polar span; unique regardless
// of options.
Poly pi_q(const Germ& f, const InnerProductFamily& q, const SplitOptions& opts = {});
// f - pi_q(f) as a germ (the polar projection).
Germ pi_minus(const Germ& f, const InnerProductFamily& q, const SplitOptions& opts = {});

}  // namespace meroq

#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "meroq/poly.hpp"
#include "meroq/qlinalg.hpp"

namespace meroq {

// Nonzero rational linear form in canonical shape: coprime integer
// coefficients with the first nonzero one positive. Scalar multiples are
// identified; the extracted scale lives with whoever created the form.
// Trailing zero coefficients extend a form to a larger ambient dimension
// without changing its identity or order.
class LinearForm {
public:
    // Canonicalizes coeffs; returns the form and the scale s with
    // coeffs = s * canonical. Throws ZeroForm on the zero covector.
    static std::pair<LinearForm, Rat> normalized(const VecQ& coeffs);
    static LinearForm axis(int k, int i);  // z_{i+1}

    int k() const { return static_cast<int>(c_.size()); }
    const std::vector<Int>& coeffs() const { return c_; }
    VecQ coeffs_q() const;
    Rat eval(const VecQ& point) const;
    LinearForm embed(int new_k) const;
    Poly to_poly() const;
    Poly to_poly(int ambient) const;
    bool is_axis(int i) const;
    std::string str() const { return to_poly().str(); }

    // Total order on canonical forms, stable under trailing-zero embedding:
    // lexicographic on the trimmed coefficient sequence, a strict prefix
    // ordering below its extensions.
    std::strong_ordering operator<=>(const LinearForm& rhs) const;
    bool operator==(const LinearForm& rhs) const { return (*this <=> rhs) == 0; }

private:
    explicit LinearForm(std::vector<Int> c) : c_(std::move(c)) {}
    std::vector<Int> c_;
};

}  // namespace meroq

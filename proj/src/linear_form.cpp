#include "meroq/linear_form.hpp"

#include "meroq/errors.hpp"

namespace meroq {

std::pair<LinearForm, Rat> LinearForm::normalized(const VecQ& coeffs) {
    Int den = 1;
    for (const Rat& x : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Int> c;
    c.reserve(coeffs.size());
    Int gcd = 0;
    for (const Rat& x : coeffs) {
        Rat scaled = x * Rat(den);
        c.push_back(scaled.get_num());
        mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), c.back().get_mpz_t());
    }
    if (gcd == 0) throw ZeroForm("the zero covector is not a linear form");
    int sign = 0;
    for (const Int& x : c)
        if (x != 0) {
            sign = (x > 0) ? 1 : -1;
            break;
        }
    Int divisor = sign > 0 ? gcd : Int(-gcd);
    for (Int& x : c) x /= divisor;
    // coeffs = scale * canonical with scale = divisor / den.
    Rat scale(divisor, den);
    scale.canonicalize();
    return {LinearForm(std::move(c)), scale};
}

LinearForm LinearForm::axis(int k, int i) {
    if (i < 0 || i >= k) throw IndexOutOfRange("axis form index outside ambient dimension");
    std::vector<Int> c(k, Int(0));
    c[i] = 1;
    return LinearForm(std::move(c));
}

VecQ LinearForm::coeffs_q() const {
    VecQ v;
    v.reserve(c_.size());
    for (const Int& x : c_) v.emplace_back(x);
    return v;
}

Rat LinearForm::eval(const VecQ& point) const {
    if (point.size() != c_.size()) throw DimensionMismatch("form eval: point size");
    Rat s = 0;
    for (size_t i = 0; i < c_.size(); ++i) s += Rat(c_[i]) * point[i];
    return s;
}

LinearForm LinearForm::embed(int new_k) const {
    if (new_k < k()) throw DimensionMismatch("form embed: shrinking ambient dimension");
    std::vector<Int> c = c_;
    c.resize(new_k, Int(0));
    return LinearForm(std::move(c));
}

Poly LinearForm::to_poly() const { return to_poly(k()); }

Poly LinearForm::to_poly(int ambient) const {
    if (ambient < k()) throw DimensionMismatch("form to_poly: ambient too small");
    Poly p(ambient);
    for (int i = 0; i < k(); ++i) {
        if (c_[i] == 0) continue;
        Mono m(ambient, 0);
        m[i] = 1;
        p.add_term(m, Rat(c_[i]));
    }
    return p;
}

bool LinearForm::is_axis(int i) const {
    for (int j = 0; j < k(); ++j)
        if ((c_[j] != 0) != (j == i)) return false;
    return i < k() && c_[i] == 1;
}

std::strong_ordering LinearForm::operator<=>(const LinearForm& rhs) const {
    size_t na = c_.size(), nb = rhs.c_.size();
    while (na > 0 && c_[na - 1] == 0) --na;
    while (nb > 0 && rhs.c_[nb - 1] == 0) --nb;
    for (size_t i = 0; i < std::min(na, nb); ++i) {
        int cmp = ::cmp(c_[i], rhs.c_[i]);
        if (cmp != 0) return cmp < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return na <=> nb;
}

}  // namespace meroq

#include "meroq/poly_split.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "meroq/errors.hpp"

namespace meroq {

Poly kernel_projection_substitute(const Poly& f, const LinearForm& l,
                                  const InnerProductFamily& q) {
    const int k = f.k();
    if (l.k() > k) throw DimensionMismatch("projection: form exceeds ambient dimension");
    VecQ c = padded(l.coeffs_q(), k);
    VecQ v = q.riesz_vector(c);
    Rat qll = dot(c, v);  // Q*(L, L) > 0
    MatQ m = MatQ::identity(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m.at(i, j) -= v[i] * c[j] / qll;
    return f.subst_linear(m);
}

SplitPair split_linear(const Poly& f, const LinearForm& l, const InnerProductFamily& q) {
    Poly h = kernel_projection_substitute(f, l, q);
    Poly diff = f - h;
    std::optional<Poly> g =
        diff.is_zero() ? Poly(f.k()) : divide_by_linear(diff, padded(l.coeffs_q(), f.k()));
    if (!g) throw Error("split_linear: projection residue not divisible by the form");
    return {std::move(*g), std::move(h)};
}

double sup_norm_sampled(const Poly& f, const Rat& radius, int n_samples) {
    if (f.k() != 1) throw DimensionMismatch("sup_norm_sampled expects one variable");
    if (!(radius > 0)) throw Error("sup_norm_sampled: radius must be positive");
    if (n_samples < 8) throw Error("sup_norm_sampled: need at least 8 samples");
    std::vector<std::pair<unsigned, double>> coeffs;
    for (const auto& [m, c] : f.terms()) coeffs.emplace_back(m[0], c.get_d());
    const double r = radius.get_d();
    double best = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        double angle = 2.0 * std::numbers::pi * i / n_samples;
        std::complex<double> z = std::polar(r, angle);
        std::complex<double> value = 0.0;
        for (const auto& [e, c] : coeffs) value += c * std::pow(z, static_cast<int>(e));
        best = std::max(best, std::abs(value));
    }
    return best;
}

}  // namespace meroq

#include "meroq/poly_factor.hpp"

#include <algorithm>

#include "meroq/errors.hpp"

namespace meroq {

namespace {

// Dense univariate polynomial, coefficients ascending by degree, trimmed.
using UPoly = std::vector<Rat>;

void utrim(UPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int udeg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

Rat ueval(const UPoly& p, const Rat& x) {
    Rat v = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
    return v;
}

UPoly uderiv(const UPoly& p) {
    UPoly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rat(static_cast<long>(i)));
    utrim(d);
    return d;
}

// Remainder of a by b (b nonzero).
UPoly urem(UPoly a, const UPoly& b) {
    utrim(a);
    while (udeg(a) >= udeg(b)) {
        Rat f = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        utrim(a);
        if (a.empty()) break;
    }
    return a;
}

UPoly uquot(UPoly a, const UPoly& b) {
    utrim(a);
    UPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
    while (udeg(a) >= udeg(b)) {
        Rat f = a.back() / b.back();
        size_t shift = a.size() - b.size();
        q[shift] = f;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        utrim(a);
        if (a.empty()) break;
    }
    utrim(q);
    return q;
}

UPoly umonic(UPoly p) {
    utrim(p);
    if (p.empty()) return p;
    Rat lead = p.back();
    for (Rat& c : p) c /= lead;
    return p;
}

UPoly ugcd(UPoly a, UPoly b) {
    utrim(a);
    utrim(b);
    while (!b.empty()) {
        UPoly r = urem(a, b);
        a = std::move(b);
        b = umonic(std::move(r));
    }
    return umonic(std::move(a));
}

// Synthetic division by (x - r): quotient plus remainder p(r).
std::pair<UPoly, Rat> udiv_root(const UPoly& p, const Rat& r) {
    UPoly q(p.size() > 0 ? p.size() - 1 : 0, Rat(0));
    Rat carry = 0;
    for (size_t i = p.size(); i-- > 0;) {
        Rat c = p[i] + carry * r;
        if (i == 0) return {q, c};
        q[i - 1] = c;
        carry = c;
    }
    return {q, Rat(0)};
}

int sign_of(const Rat& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

int sturm_variations(const std::vector<UPoly>& chain, const Rat& x) {
    int vars = 0, last = 0;
    for (const UPoly& p : chain) {
        int s = sign_of(ueval(p, x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++vars;
        last = s;
    }
    return vars;
}

std::vector<UPoly> sturm_chain(const UPoly& f) {
    std::vector<UPoly> chain{f, uderiv(f)};
    while (!chain.back().empty()) {
        UPoly r = urem(chain[chain.size() - 2], chain.back());
        for (Rat& c : r) c = -c;
        utrim(r);
        if (r.empty()) break;
        chain.push_back(std::move(r));
    }
    return chain;
}

// Largest absolute value of the leading integer coefficient after clearing
// denominators; every rational root's denominator divides it.
Int integral_leading(const UPoly& p) {
    Int den = 1;
    for (const Rat& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    Int content = 0;
    std::vector<Int> ints;
    for (const Rat& c : p) {
        Rat s = c * Rat(den);
        ints.push_back(s.get_num());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), ints.back().get_mpz_t());
    }
    Int lead = ints.back() / content;
    return lead < 0 ? Int(-lead) : lead;
}

Int rat_floor(const Rat& x) {
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return f;
}

}  // namespace

Rat simplest_rational_between(const Rat& lo, const Rat& hi) {
    if (!(lo < hi)) throw Error("simplest_rational_between: empty interval");
    if (lo < 0 && hi > 0) return Rat(0);
    if (hi <= 0) return -simplest_rational_between(-hi, -lo);
    // 0 <= lo < hi
    Int n = rat_floor(lo);
    Rat next(n + 1);
    if (next < hi) return next;
    if (Rat(n) == lo) {
        // (n, hi) with hi <= n+1: smallest m with n + 1/m inside.
        Rat inv = 1 / (hi - Rat(n));
        Int m = rat_floor(inv) + 1;
        Rat unit(1);
        return Rat(n) + unit / Rat(m);
    }
    Rat y = simplest_rational_between(1 / (hi - Rat(n)), 1 / (lo - Rat(n)));
    return Rat(n) + 1 / y;
}

RationalRoots rational_roots(const std::vector<Rat>& coeffs) {
    UPoly p = coeffs;
    utrim(p);
    RationalRoots out;
    out.complete = true;
    if (p.empty()) {
        out.complete = false;  // zero polynomial: no meaningful split
        return out;
    }
    int d = udeg(p);
    if (d == 0) return out;

    // Strip roots at zero.
    size_t v = 0;
    while (v < p.size() && p[v] == 0) ++v;
    if (v > 0) {
        out.roots.push_back({Rat(0), static_cast<int>(v)});
        p.erase(p.begin(), p.begin() + static_cast<long>(v));
    }
    int total_mult = static_cast<int>(v);
    if (udeg(p) == 0) {
        out.complete = (total_mult == d);
        return out;
    }

    UPoly g = p;  // g(0) != 0
    UPoly f0 = uquot(g, ugcd(g, uderiv(g)));
    std::vector<Rat> found;
    bool irrational_seen = false;

    bool restart = true;
    while (restart) {
        restart = false;
        if (udeg(f0) == 0) break;
        Int lc = integral_leading(f0);
        Rat width_bound = Rat(1) / Rat(lc * lc);
        Rat bound(1);
        for (const Rat& c : f0) {
            Rat a = c / f0.back();
            if (a < 0) a = -a;
            if (a + 1 > bound) bound = a + 1;
        }
        std::vector<UPoly> chain = sturm_chain(f0);
        std::vector<std::pair<Rat, Rat>> stack{{-bound, bound}};
        while (!stack.empty()) {
            auto [lo, hi] = stack.back();
            stack.pop_back();
            int count = sturm_variations(chain, lo) - sturm_variations(chain, hi);
            if (count <= 0) continue;
            if (count == 1 && hi - lo < width_bound) {
                Rat r = simplest_rational_between(lo, hi);
                if (ueval(f0, r) == 0)
                    found.push_back(r);
                else
                    irrational_seen = true;
                continue;
            }
            Rat mid = (lo + hi) / 2;
            if (ueval(f0, mid) == 0) {
                found.push_back(mid);
                f0 = udiv_root(f0, mid).first;
                restart = true;
                break;
            }
            stack.push_back({lo, mid});
            stack.push_back({mid, hi});
        }
    }

    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    for (const Rat& r : found) {
        int mult = 0;
        UPoly cur = g;
        while (true) {
            auto [q, rem] = udiv_root(cur, r);
            if (rem != 0) break;
            cur = std::move(q);
            ++mult;
            if (cur.empty()) break;
        }
        out.roots.push_back({r, mult});
        total_mult += mult;
    }
    out.complete = (total_mult == d) && !irrational_seen;
    return out;
}

namespace {

// Univariate slice of q: substitute w_s = x, w_j = 1, all other variables 0.
UPoly slice_poly(const Poly& q, int s, int j) {
    UPoly u;
    for (const auto& [m, c] : q.terms()) {
        bool pure = true;
        for (int i = 0; i < q.k() && pure; ++i)
            if (i != s && i != j && m[i] > 0) pure = false;
        if (!pure) continue;
        if (u.size() <= m[s]) u.resize(m[s] + 1, Rat(0));
        u[m[s]] += c;
    }
    utrim(u);
    return u;
}

}  // namespace

std::optional<LinearFactorization> factor_into_linear_forms(const Poly& p) {
    if (p.is_zero()) throw Error("factor_into_linear_forms: zero polynomial");
    if (p.is_constant()) return LinearFactorization{p.constant_coeff(), {}};
    if (!p.is_homogeneous()) return std::nullopt;
    const int k = p.k();
    const int d = p.total_degree();

    if (p.terms().size() == 1) {
        const auto& [m, c] = *p.terms().begin();
        std::vector<DenFactor> fs;
        for (int i = 0; i < k; ++i)
            if (m[i] > 0) fs.push_back({LinearForm::axis(k, i), static_cast<int>(m[i])});
        return LinearFactorization{c, std::move(fs)};
    }

    std::vector<bool> present(k, false);
    for (const auto& [m, c] : p.terms())
        for (int i = 0; i < k; ++i)
            if (m[i] > 0) present[i] = true;
    int s = static_cast<int>(std::find(present.begin(), present.end(), true) - present.begin());
    std::vector<int> others;
    for (int i = 0; i < k; ++i)
        if (i != s && present[i]) others.push_back(i);

    // Find a shift with p(e_s + sum t_j e_j) != 0; a (d+1)-grid per coordinate
    // must contain one since the restriction is a nonzero polynomial in t.
    std::vector<int> t(others.size(), 0);
    VecQ point(k, Rat(0));
    point[s] = 1;
    bool found_shift = false;
    while (true) {
        for (size_t i = 0; i < others.size(); ++i) point[others[i]] = Rat(t[i]);
        if (p.eval(point) != 0) {
            found_shift = true;
            break;
        }
        size_t pos = 0;
        while (pos < t.size()) {
            if (++t[pos] <= d) break;
            t[pos] = 0;
            ++pos;
        }
        if (pos == t.size()) break;
    }
    if (!found_shift) throw Error("factor_into_linear_forms: shift search failed");

    // Substitute z_s = w_s, z_j = w_j + t_j*w_s: every linear factor of the
    // result has a nonzero w_s coefficient.
    MatQ shift = MatQ::identity(k);
    for (size_t i = 0; i < others.size(); ++i) shift.at(others[i], s) = Rat(t[i]);
    Poly q = p.subst_linear(shift);

    // Candidate coefficient ratios per variable come from the rational roots
    // of bivariate slices; each slice must split completely over Q.
    std::vector<std::vector<Rat>> candidates(k);
    for (int j : others) {
        UPoly u = slice_poly(q, s, j);
        RationalRoots rr = rational_roots(u);
        if (!rr.complete) return std::nullopt;
        for (const auto& [root, mult] : rr.roots) candidates[j].push_back(-root);
        std::sort(candidates[j].begin(), candidates[j].end());
        candidates[j].erase(std::unique(candidates[j].begin(), candidates[j].end()),
                            candidates[j].end());
        if (candidates[j].empty()) return std::nullopt;
    }

    std::vector<size_t> pick(others.size(), 0);
    Poly rem = q;
    std::vector<std::pair<VecQ, int>> w_factors;
    while (true) {
        VecQ cand(k, Rat(0));
        cand[s] = 1;
        for (size_t i = 0; i < others.size(); ++i) cand[others[i]] = candidates[others[i]][pick[i]];
        int mult = 0;
        while (true) {
            std::optional<Poly> quo = divide_by_linear(rem, cand);
            if (!quo) break;
            rem = std::move(*quo);
            ++mult;
        }
        if (mult > 0) w_factors.push_back({std::move(cand), mult});
        if (rem.is_constant()) break;
        size_t pos = 0;
        while (pos < pick.size()) {
            if (++pick[pos] < candidates[others[pos]].size()) break;
            pick[pos] = 0;
            ++pos;
        }
        if (pos == pick.size()) break;
    }
    if (!rem.is_constant()) return std::nullopt;

    LinearFactorization out;
    out.scale = rem.constant_coeff();
    for (const auto& [cand, mult] : w_factors) {
        // Back through the inverse shift: w_s = z_s, w_j = z_j - t_j*z_s.
        VecQ lz(k, Rat(0));
        Rat head(1);
        for (size_t i = 0; i < others.size(); ++i) {
            lz[others[i]] = cand[others[i]];
            head -= cand[others[i]] * Rat(t[i]);
        }
        lz[s] = head;
        auto [form, scale] = LinearForm::normalized(lz);
        out.scale *= rat_pow(scale, static_cast<unsigned long>(mult));
        out.factors.push_back({std::move(form), mult});
    }
    std::sort(out.factors.begin(), out.factors.end());
    return out;
}

}  // namespace meroq

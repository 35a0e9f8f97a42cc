#include "meroq/evaluators.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <mutex>

#include "meroq/errors.hpp"

namespace meroq {

Rat ev0(const Germ& f) {
    std::optional<Poly> p = f.to_polynomial();
    if (!p) throw NotHolomorphic("ev0 on a germ with poles: " + f.str());
    return p->constant_coeff();
}

Rat eval_ms(const Germ& f, const InnerProductFamily& q) {
    return pi_q(f, q).constant_coeff();
}

namespace {

// Binomial series coefficient of (L' + a z)^(-s): coefficient m is
// C(-s, m) a^m / L'^(s+m) with C(-s, m) = (-1)^m * binom(s+m-1, m).
Rat signed_binomial(int s, int m) {
    Rat b(int_binomial(static_cast<unsigned long>(s + m - 1), static_cast<unsigned long>(m)));
    return (m % 2 == 0) ? b : -b;
}

Germ finite_part_term(const GermTerm& t, int j) {
    const int k = t.k();
    int axis_order = 0;
    struct JetFactor {
        LinearForm reduced;  // L with the z_j coefficient dropped, canonical
        Rat scale;           // original residual form = scale * reduced
        Rat a;               // coefficient of z_j in the original form
        int s;
    };
    std::vector<JetFactor> factors;
    for (const DenFactor& f : t.den()) {
        if (f.form.is_axis(j)) {
            axis_order += f.power;
            continue;
        }
        VecQ c = f.form.coeffs_q();
        Rat a = c[j];
        c[j] = 0;
        auto [reduced, scale] = LinearForm::normalized(c);
        factors.push_back({std::move(reduced), std::move(scale), std::move(a), f.power});
    }

    // Jet of the product of the non-axis reciprocals up to order axis_order:
    // entry m is a germ with poles in the reduced forms.
    std::vector<Germ> jet{Germ::constant(k, Rat(1))};
    jet.resize(axis_order + 1, Germ(k));
    for (const JetFactor& f : factors) {
        std::vector<Germ> factor_jet;
        for (int m = 0; m <= axis_order; ++m) {
            Rat coeff = signed_binomial(f.s, m) * rat_pow(f.a, static_cast<unsigned long>(m)) /
                        rat_pow(f.scale, static_cast<unsigned long>(f.s + m));
            factor_jet.push_back(Germ::from_terms(
                k, {GermTerm(Poly::constant(k, coeff), {{f.reduced, f.s + m}})}));
        }
        std::vector<Germ> next(axis_order + 1, Germ(k));
        for (int u = 0; u <= axis_order; ++u) {
            if (jet[u].terms().empty()) continue;
            for (int v = 0; u + v <= axis_order; ++v) next[u + v] = next[u + v] + jet[u] * factor_jet[v];
        }
        jet = std::move(next);
    }

    Germ result(k);
    for (const auto& [r, slice] : t.num().split_by_variable(j)) {
        if (static_cast<int>(r) > axis_order) continue;
        result = result + Germ::from_poly(slice) * jet[axis_order - static_cast<int>(r)];
    }
    return result;
}

}  // namespace

Germ finite_part(const Germ& f, int j) {
    if (j < 0 || j >= f.k()) throw IndexOutOfRange("finite_part: variable index");
    Germ out(f.k());
    for (const GermTerm& t : f.terms()) out = out + finite_part_term(t, j);
    return out;
}

Rat speer_sigma(const Germ& f, const std::vector<int>& sigma) {
    const int k = f.k();
    if (static_cast<int>(sigma.size()) != k)
        throw PermutationSizeMismatch("permutation size differs from ambient dimension");
    std::vector<bool> seen(k, false);
    for (int v : sigma) {
        if (v < 0 || v >= k || seen[v])
            throw PermutationSizeMismatch("not a permutation of the ambient indices");
        seen[v] = true;
    }
    Germ g = f;
    for (int i = k; i-- > 0;) g = finite_part(g, sigma[i]);
    return ev0(g);
}

namespace {

struct SpeerMemo {
    std::mutex lock;
    std::map<std::pair<std::string, unsigned long>, Rat> values;
};

Rat speer_recurse(const Germ& g, unsigned long remaining, const SpeerOptions& opts,
                  SpeerMemo* memo) {
    if (remaining == 0) return ev0(g);
    std::string key;
    if (memo) {
        key = g.str();
        std::scoped_lock hold(memo->lock);
        auto it = memo->values.find({key, remaining});
        if (it != memo->values.end()) return it->second;
    }
    Rat sum = 0;
    int count = 0;
    for (int j = 0; j < g.k(); ++j) {
        if (!(remaining & (1ul << j))) continue;
        ++count;
        sum += speer_recurse(finite_part(g, j), remaining & ~(1ul << j), opts, memo);
    }
    Rat value = sum / Rat(count);
    if (memo) {
        std::scoped_lock hold(memo->lock);
        memo->values.try_emplace({std::move(key), remaining}, value);
    }
    return value;
}

}  // namespace

Rat speer_f(const Germ& f, const SpeerOptions& opts) {
    const int k = f.k();
    if (k > opts.budget)
        throw DegreeBudgetExceeded("ambient dimension " + std::to_string(k) +
                                   " above factorial budget " + std::to_string(opts.budget));
    if (k == 0) return ev0(f);
    unsigned long all = (1ul << k) - 1;
    SpeerMemo memo;
    SpeerMemo* memo_ptr = opts.memoize ? &memo : nullptr;
    if (!opts.parallel) return speer_recurse(f, all, opts, memo_ptr);

    std::vector<std::future<Rat>> branches;
    for (int j = 0; j < k; ++j)
        branches.push_back(std::async(std::launch::async, [&, j] {
            return speer_recurse(finite_part(f, j), all & ~(1ul << j), opts, memo_ptr);
        }));
    Rat sum = 0;
    for (auto& b : branches) sum += b.get();
    return sum / Rat(k);
}

bool orth_q(const Germ& f1, const Germ& f2, const InnerProductFamily& q) {
    int k = std::max(f1.k(), f2.k());
    Subspace d1 = f1.embed(k).dep_subspace();
    Subspace d2 = f2.embed(k).dep_subspace();
    for (const VecQ& a : d1.basis())
        for (const VecQ& b : d2.basis())
            if (q.dual_inner(a, b) != 0) return false;
    return true;
}

bool disjoint_support(const Germ& f1, const Germ& f2) {
    std::vector<int> s1 = f1.supp();
    std::vector<int> s2 = f2.supp();
    for (int a : s1)
        if (std::find(s2.begin(), s2.end(), a) != s2.end()) return false;
    return true;
}

}  // namespace meroq

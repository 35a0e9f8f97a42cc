#include "meroq/decompose.hpp"

#include <algorithm>
#include <map>

#include "meroq/errors.hpp"

namespace meroq {

namespace {

std::vector<VecQ> form_rows(const std::vector<DenFactor>& den) {
    std::vector<VecQ> rows;
    rows.reserve(den.size());
    for (const DenFactor& f : den) rows.push_back(f.form.coeffs_q());
    return rows;
}

bool forms_independent(const std::vector<DenFactor>& den, int k) {
    if (den.empty()) return true;
    return Subspace::span(k, form_rows(den)).dim() == static_cast<int>(den.size());
}

bool numerator_orthogonal(const Poly& num, const std::vector<DenFactor>& den,
                          const InnerProductFamily& q) {
    int k = num.k();
    Subspace dep = Germ::from_poly(num).dep_subspace();
    for (const VecQ& w : dep.basis())
        for (const DenFactor& f : den) {
            VecQ c = padded(f.form.coeffs_q(), k);
            if (q.dual_inner(w, c) != 0) return false;
        }
    return true;
}

}  // namespace

bool is_polar(const GermTerm& t, const InnerProductFamily& q) {
    if (t.den().empty()) return false;
    if (!forms_independent(t.den(), t.k())) return false;
    return numerator_orthogonal(t.num(), t.den(), q);
}

PolarTerm::PolarTerm(Poly num, std::vector<DenFactor> den, const InnerProductFamily& q)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.empty()) throw Error("polar term with empty denominator");
    std::sort(den_.begin(), den_.end());
    if (!forms_independent(den_, num_.k()))
        throw Error("polar term with dependent denominator forms");
    if (!numerator_orthogonal(num_, den_, q))
        throw Error("polar certificate violated: numerator not orthogonal to denominator");
}

std::vector<LinearForm> PolarTerm::supporting_cone() const {
    std::vector<LinearForm> forms;
    forms.reserve(den_.size());
    for (const DenFactor& f : den_) forms.push_back(f.form);
    return forms;
}

Germ Decomposition::polar_germ(int k) const {
    std::vector<GermTerm> terms;
    terms.reserve(polar.size());
    for (const PolarTerm& t : polar) terms.push_back(t.to_term());
    return Germ::from_terms(k, std::move(terms));
}

Germ Decomposition::reconstructed() const {
    return Germ::from_poly(holomorphic) + polar_germ(holomorphic.k());
}

std::vector<GermTerm> reduce_independent(const GermTerm& t, const SplitOptions& opts) {
    std::vector<GermTerm> out;
    std::vector<GermTerm> stack{t};
    while (!stack.empty()) {
        GermTerm cur = std::move(stack.back());
        stack.pop_back();
        if (cur.num().is_zero()) continue;
        std::optional<Circuit> circuit = find_circuit(form_rows(cur.den()));
        if (!circuit) {
            out.push_back(std::move(cur));
            continue;
        }
        // Pivot: extreme form of the circuit in canonical order.
        int pivot_pos = 0;
        for (size_t i = 1; i < circuit->indices.size(); ++i) {
            const LinearForm& a = cur.den()[circuit->indices[i]].form;
            const LinearForm& b = cur.den()[circuit->indices[pivot_pos]].form;
            bool better = opts.pivot == PivotRule::LargestForm ? (a > b) : (a < b);
            if (better) pivot_pos = static_cast<int>(i);
        }
        int j = circuit->indices[pivot_pos];
        Rat cj(circuit->coeffs[pivot_pos]);
        for (size_t i = 0; i < circuit->indices.size(); ++i) {
            if (static_cast<int>(i) == pivot_pos) continue;
            int idx = circuit->indices[i];
            Rat ci(circuit->coeffs[i]);
            std::vector<DenFactor> den = cur.den();
            den[j].power += 1;
            den[idx].power -= 1;
            if (den[idx].power == 0) den.erase(den.begin() + idx);
            stack.emplace_back(cur.num().scaled(-ci / cj), std::move(den));
        }
    }
    return out;
}

TaylorSplit taylor_split(const GermTerm& t, const InnerProductFamily& q,
                         const SplitOptions& opts) {
    const int k = t.k();
    const int n = static_cast<int>(t.den().size());
    TaylorSplit out{Poly(k), {}, {}};
    if (n == 0) {
        out.holomorphic = t.num();
        return out;
    }
    std::vector<VecQ> rows = form_rows(t.den());
    Subspace span = Subspace::span(k, rows);
    if (span.dim() != n) throw Error("taylor_split: dependent denominator forms");
    Subspace comp = q.orth_complement_dual(span);
    std::vector<VecQ> comp_rows = comp.basis();
    if (opts.reverse_complement_basis) std::reverse(comp_rows.begin(), comp_rows.end());

    std::vector<VecQ> all_rows = rows;
    all_rows.insert(all_rows.end(), comp_rows.begin(), comp_rows.end());
    MatQ basis = MatQ::from_rows(all_rows);  // y = basis * z
    MatQ basis_inv = inverse(basis);         // z = basis_inv * y
    Poly num_y = t.num().subst_linear(basis_inv);

    std::vector<int> s(n);
    for (int i = 0; i < n; ++i) s[i] = t.den()[i].power;

    Poly holo_y(k);
    std::map<std::vector<int>, Poly> polar_groups;     // residual den powers -> numerator in y
    std::map<std::vector<int>, Poly> residual_groups;  // same keying
    for (const auto& [m, c] : num_y.terms()) {
        bool all_ge = true, all_lt = true;
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(m[i]) < s[i]) all_ge = false;
            if (static_cast<int>(m[i]) >= s[i]) all_lt = false;
        }
        if (all_ge) {
            Mono reduced = m;
            for (int i = 0; i < n; ++i) reduced[i] -= s[i];
            holo_y.add_term(reduced, c);
            continue;
        }
        std::vector<int> powers(n, 0);
        Mono reduced = m;
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(m[i]) < s[i]) {
                powers[i] = s[i] - static_cast<int>(m[i]);
                reduced[i] = 0;
            } else {
                reduced[i] = m[i] - s[i];
            }
        }
        auto& groups = all_lt ? polar_groups : residual_groups;
        groups.emplace(powers, Poly(k)).first->second.add_term(reduced, c);
    }

    out.holomorphic = holo_y.subst_linear(basis);
    for (auto& [powers, num] : polar_groups) {
        std::vector<DenFactor> den;
        for (int i = 0; i < n; ++i)
            if (powers[i] > 0) den.push_back({t.den()[i].form, powers[i]});
        out.polar.emplace_back(num.subst_linear(basis), std::move(den), q);
    }
    for (auto& [powers, num] : residual_groups) {
        std::vector<DenFactor> den;
        for (int i = 0; i < n; ++i)
            if (powers[i] > 0) den.push_back({t.den()[i].form, powers[i]});
        out.residual.emplace_back(num.subst_linear(basis), std::move(den));
    }
    return out;
}

Decomposition decompose(const Germ& f, const InnerProductFamily& q, const SplitOptions& opts) {
    const int k = f.k();
    Poly holo(k);
    std::map<std::vector<DenFactor>, Poly> polar_acc;
    // Residual terms lose at least one denominator form per round, so the
    // recursion depth is bounded by the ambient dimension.
    std::vector<std::pair<GermTerm, int>> stack;
    for (const GermTerm& t : f.terms()) stack.push_back({t, 0});
    while (!stack.empty()) {
        auto [term, depth] = std::move(stack.back());
        stack.pop_back();
        if (depth > k + 1) throw Error("decompose: recursion depth exceeded ambient bound");
        for (GermTerm& rt : reduce_independent(term, opts)) {
            TaylorSplit split = taylor_split(rt, q, opts);
            holo += split.holomorphic;
            for (PolarTerm& pt : split.polar) {
                auto [it, inserted] = polar_acc.try_emplace(pt.den(), pt.num());
                if (!inserted) it->second += pt.num();
            }
            for (GermTerm& res : split.residual) stack.push_back({std::move(res), depth + 1});
        }
    }
    Decomposition out{std::move(holo), {}};
    for (auto& [den, num] : polar_acc) {
        if (num.is_zero()) continue;
        out.polar.emplace_back(std::move(num), den, q);
    }
    return out;
}

Poly pi_q(const Germ& f, const InnerProductFamily& q, const SplitOptions& opts) {
    return decompose(f, q, opts).holomorphic;
}

Germ pi_minus(const Germ& f, const InnerProductFamily& q, const SplitOptions& opts) {
    return decompose(f, q, opts).polar_germ(f.k());
}

}  // namespace meroq

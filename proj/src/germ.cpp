#include "meroq/germ.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "meroq/errors.hpp"

namespace meroq {

GermTerm::GermTerm(Poly num, std::vector<DenFactor> den) : num_(std::move(num)) {
    for (const DenFactor& f : den) {
        if (f.power < 1) throw Error("denominator power must be positive");
        if (f.form.k() > num_.k()) throw DimensionMismatch("denominator form exceeds ambient");
    }
    std::sort(den.begin(), den.end());
    for (DenFactor& f : den) {
        if (f.form.k() < num_.k()) f.form = f.form.embed(num_.k());
        if (!den_.empty() && den_.back().form == f.form)
            den_.back().power += f.power;
        else
            den_.push_back(std::move(f));
    }
}

int GermTerm::den_degree() const {
    int d = 0;
    for (const DenFactor& f : den_) d += f.power;
    return d;
}

Poly GermTerm::den_poly() const {
    Poly p = Poly::constant(k(), 1);
    for (const DenFactor& f : den_) p = p * f.form.to_poly(k()).pow(f.power);
    return p;
}

GermTerm GermTerm::embed(int new_k) const {
    std::vector<DenFactor> den = den_;
    for (DenFactor& f : den) f.form = f.form.embed(new_k);
    return GermTerm(num_.embed(new_k), std::move(den));
}

GermTerm GermTerm::operator*(const GermTerm& rhs) const {
    if (k() != rhs.k()) throw DimensionMismatch("term product: ambient mismatch");
    std::vector<DenFactor> den = den_;
    den.insert(den.end(), rhs.den_.begin(), rhs.den_.end());
    return GermTerm(num_ * rhs.num_, std::move(den));
}

GermTerm GermTerm::scaled(const Rat& c) const {
    return GermTerm(num_.scaled(c), den_);
}

std::string GermTerm::str(bool wrap_holomorphic) const {
    if (den_.empty()) {
        if (!wrap_holomorphic) return num_.str();
        return "(" + num_.str() + ")";
    }
    std::ostringstream out;
    out << "(" << num_.str() << ")/(";
    bool first = true;
    for (const DenFactor& f : den_) {
        if (!first) out << "*";
        out << "(" << f.form.str() << ")^" << f.power;
        first = false;
    }
    out << ")";
    return out.str();
}

Germ Germ::from_poly(Poly p) {
    Germ g(p.k());
    if (!p.is_zero()) g.terms_.emplace_back(std::move(p), std::vector<DenFactor>{});
    return g;
}

Germ Germ::from_terms(int k, std::vector<GermTerm> terms) {
    // Deterministic shape: merge terms sharing a denominator, sort by it,
    // drop zero numerators.
    std::map<std::vector<DenFactor>, Poly> by_den;
    for (GermTerm& t : terms) {
        if (t.k() > k) throw DimensionMismatch("term ambient exceeds germ ambient");
        GermTerm e = t.k() == k ? std::move(t) : t.embed(k);
        auto [it, inserted] = by_den.try_emplace(e.den(), e.num());
        if (!inserted) it->second += e.num();
    }
    Germ g(k);
    for (auto& [den, num] : by_den) {
        if (num.is_zero()) continue;
        g.terms_.emplace_back(std::move(num), den);
    }
    return g;
}

Germ Germ::operator-() const { return scaled(Rat(-1)); }

Germ Germ::operator+(const Germ& rhs) const {
    int kk = std::max(k_, rhs.k_);
    std::vector<GermTerm> all = terms_;
    all.insert(all.end(), rhs.terms_.begin(), rhs.terms_.end());
    return from_terms(kk, std::move(all));
}

Germ Germ::operator-(const Germ& rhs) const { return *this + (-rhs); }

Germ Germ::operator*(const Germ& rhs) const {
    int kk = std::max(k_, rhs.k_);
    std::vector<GermTerm> prods;
    prods.reserve(terms_.size() * rhs.terms_.size());
    for (const GermTerm& a : terms_)
        for (const GermTerm& b : rhs.terms_) {
            GermTerm ea = a.k() == kk ? a : a.embed(kk);
            GermTerm eb = b.k() == kk ? b : b.embed(kk);
            prods.push_back(ea * eb);
        }
    return from_terms(kk, std::move(prods));
}

Germ Germ::scaled(const Rat& c) const {
    std::vector<GermTerm> ts;
    ts.reserve(terms_.size());
    for (const GermTerm& t : terms_) ts.push_back(t.scaled(c));
    return from_terms(k_, std::move(ts));
}

Germ Germ::pow(unsigned e) const {
    Germ acc = constant(k_, Rat(1));
    for (unsigned i = 0; i < e; ++i) acc = acc * *this;
    return acc;
}

Germ Germ::embed(int new_k) const {
    if (new_k < k_) throw DimensionMismatch("germ embed: shrinking ambient dimension");
    std::vector<GermTerm> ts;
    ts.reserve(terms_.size());
    for (const GermTerm& t : terms_) ts.push_back(t.embed(new_k));
    return from_terms(new_k, std::move(ts));
}

Germ::SingleFraction Germ::as_single_fraction() const {
    std::map<LinearForm, int> lcm;
    for (const GermTerm& t : terms_)
        for (const DenFactor& f : t.den()) {
            auto [it, inserted] = lcm.try_emplace(f.form, f.power);
            if (!inserted) it->second = std::max(it->second, f.power);
        }
    Poly num(k_);
    for (const GermTerm& t : terms_) {
        Poly part = t.num();
        for (const auto& [form, power] : lcm) {
            int have = 0;
            for (const DenFactor& f : t.den())
                if (f.form == form) have = f.power;
            if (power > have) part = part * form.to_poly(k_).pow(power - have);
        }
        num += part;
    }
    std::vector<DenFactor> den;
    for (const auto& [form, power] : lcm) den.push_back({form, power});
    return {std::move(num), std::move(den)};
}

bool Germ::equals(const Germ& rhs) const {
    return (*this - rhs).as_single_fraction().num.is_zero();
}

Germ Germ::directional_derivative(const VecQ& v) const {
    if (static_cast<int>(v.size()) != k_)
        throw DimensionMismatch("directional_derivative: direction size");
    std::vector<GermTerm> parts;
    for (const GermTerm& t : terms_) {
        Poly dnum(k_);
        for (int i = 0; i < k_; ++i)
            if (v[i] != 0) dnum += t.num().partial(i).scaled(v[i]);
        if (!dnum.is_zero()) parts.emplace_back(std::move(dnum), t.den());
        // quotient rule: each factor L^s contributes -s*L(v)*num/(den*L).
        for (size_t i = 0; i < t.den().size(); ++i) {
            const DenFactor& f = t.den()[i];
            Rat lv = f.form.eval(v);
            if (lv == 0) continue;
            std::vector<DenFactor> den = t.den();
            den[i].power += 1;
            parts.emplace_back(t.num().scaled(-Rat(f.power) * lv), std::move(den));
        }
    }
    return from_terms(k_, std::move(parts));
}

Subspace Germ::indep_subspace() const {
    SingleFraction sf = as_single_fraction();
    const Poly& p = sf.num;
    Poly q = Poly::constant(k_, 1);
    for (const DenFactor& f : sf.den) q = q * f.form.to_poly(k_).pow(f.power);
    // Rows of the condition: R_i = (d_i p) q - p (d_i q); v is independent iff
    // sum_i v_i R_i = 0 as a polynomial.
    std::vector<Poly> rows;
    rows.reserve(k_);
    for (int i = 0; i < k_; ++i) rows.push_back(p.partial(i) * q - p * q.partial(i));
    std::map<Mono, int, GrlexLess> mono_index;
    for (const Poly& r : rows)
        for (const auto& [m, c] : r.terms()) mono_index.try_emplace(m, 0);
    int idx = 0;
    for (auto& [m, no] : mono_index) no = idx++;
    MatQ a(idx, k_);
    for (int i = 0; i < k_; ++i)
        for (const auto& [m, c] : rows[i].terms()) a.at(mono_index[m], i) = c;
    return kernel(a);
}

Subspace Germ::dep_subspace() const { return indep_subspace().annihilator(); }

std::vector<int> Germ::supp() const {
    Subspace indep = indep_subspace();
    std::vector<int> out;
    for (int i = 0; i < k_; ++i) {
        VecQ e(k_, Rat(0));
        e[i] = 1;
        if (!indep.contains(e)) out.push_back(i);
    }
    return out;
}

std::optional<Poly> Germ::to_polynomial() const {
    SingleFraction sf = as_single_fraction();
    Poly p = std::move(sf.num);
    for (const DenFactor& f : sf.den)
        for (int i = 0; i < f.power; ++i) {
            std::optional<Poly> q = divide_by_linear(p, f.form.coeffs_q());
            if (!q) return std::nullopt;
            p = std::move(*q);
        }
    return p;
}

std::optional<Rat> Germ::eval_at(const VecQ& point) const {
    if (static_cast<int>(point.size()) != k_) throw DimensionMismatch("eval_at: point size");
    Rat sum = 0;
    for (const GermTerm& t : terms_) {
        Rat den = 1;
        for (const DenFactor& f : t.den()) {
            Rat lv = f.form.eval(point);
            if (lv == 0) return std::nullopt;
            den *= rat_pow(lv, static_cast<unsigned long>(f.power));
        }
        sum += t.num().eval(point) / den;
    }
    return sum;
}

namespace {

bool form_in_tag(const LinearForm& form, GeneratingSetTag tag) {
    switch (tag) {
        case GeneratingSetTag::Free:
            return true;
        case GeneratingSetTag::FeynmanF: {
            bool any = false;
            for (const Int& c : form.coeffs()) {
                if (c != 0 && c != 1) return false;
                if (c == 1) any = true;
            }
            return any;
        }
        case GeneratingSetTag::ChenC: {
            // Prefix sums z1+...+zj: a run of ones then zeros.
            bool seen_zero = false;
            bool any = false;
            for (const Int& c : form.coeffs()) {
                if (c == 1) {
                    if (seen_zero) return false;
                    any = true;
                } else if (c == 0) {
                    seen_zero = true;
                } else {
                    return false;
                }
            }
            return any;
        }
    }
    return false;
}

}  // namespace

bool Germ::validate_poles(GeneratingSetTag tag) const {
    for (const GermTerm& t : terms_)
        for (const DenFactor& f : t.den())
            if (!form_in_tag(f.form, tag)) return false;
    return true;
}

std::string Germ::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const GermTerm& t : terms_) {
        if (!first) out << " + ";
        out << t.str(terms_.size() > 1);
        first = false;
    }
    return out.str();
}

}  // namespace meroq

#include "meroq/poly.hpp"

#include <algorithm>
#include <sstream>

#include "meroq/errors.hpp"

namespace meroq {

Poly Poly::constant(int k, const Rat& c) {
    Poly p(k);
    p.add_term(Mono(k, 0), c);
    return p;
}

Poly Poly::variable(int k, int i) {
    if (i < 0 || i >= k) throw IndexOutOfRange("variable index outside ambient dimension");
    Mono m(k, 0);
    m[i] = 1;
    return monomial(k, m, Rat(1));
}

Poly Poly::monomial(int k, Mono m, const Rat& c) {
    if (static_cast<int>(m.size()) != k) throw DimensionMismatch("monomial: bad index length");
    Poly p(k);
    p.add_term(m, c);
    return p;
}

Poly Poly::linear(int k, const VecQ& coeffs) {
    if (static_cast<int>(coeffs.size()) != k)
        throw DimensionMismatch("linear: coefficient count differs from ambient");
    Poly p(k);
    for (int i = 0; i < k; ++i) {
        Mono m(k, 0);
        m[i] = 1;
        p.add_term(m, coeffs[i]);
    }
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0);
}

Rat Poly::constant_coeff() const { return coeff(Mono(k_, 0)); }

Rat Poly::coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

int Poly::total_degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(mono_degree(terms_.rbegin()->first));
}

bool Poly::is_homogeneous() const {
    if (terms_.empty()) return true;
    unsigned d = mono_degree(terms_.begin()->first);
    return mono_degree(terms_.rbegin()->first) == d;
}

Poly Poly::homogeneous_component(unsigned d) const {
    Poly out(k_);
    for (const auto& [m, c] : terms_)
        if (mono_degree(m) == d) out.add_term(m, c);
    return out;
}

void Poly::add_term(const Mono& m, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly out(k_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

Poly Poly::operator+(const Poly& rhs) const {
    Poly out = *this;
    out += rhs;
    return out;
}

Poly Poly::operator-(const Poly& rhs) const {
    Poly out = *this;
    out -= rhs;
    return out;
}

Poly& Poly::operator+=(const Poly& rhs) {
    if (k_ != rhs.k_) throw DimensionMismatch("poly sum: ambient mismatch");
    for (const auto& [m, c] : rhs.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
    if (k_ != rhs.k_) throw DimensionMismatch("poly difference: ambient mismatch");
    for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
    return *this;
}

Poly Poly::operator*(const Poly& rhs) const {
    if (k_ != rhs.k_) throw DimensionMismatch("poly product: ambient mismatch");
    Poly out(k_);
    Mono m(k_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : rhs.terms_) {
            for (int i = 0; i < k_; ++i) m[i] = ma[i] + mb[i];
            out.add_term(m, ca * cb);
        }
    return out;
}

Poly Poly::scaled(const Rat& c) const {
    Poly out(k_);
    if (c == 0) return out;
    for (const auto& [m, x] : terms_) out.terms_.emplace(m, x * c);
    return out;
}

Poly Poly::pow(unsigned e) const {
    Poly acc = constant(k_, 1);
    for (unsigned i = 0; i < e; ++i) acc = acc * *this;
    return acc;
}

Rat Poly::eval(const VecQ& point) const {
    if (static_cast<int>(point.size()) != k_) throw DimensionMismatch("eval: point size");
    std::vector<std::vector<Rat>> powers(k_, {Rat(1)});
    auto power = [&](int i, unsigned e) -> const Rat& {
        auto& cache = powers[i];
        while (cache.size() <= e) cache.push_back(cache.back() * point[i]);
        return cache[e];
    };
    Rat sum = 0;
    for (const auto& [m, c] : terms_) {
        Rat t = c;
        for (int i = 0; i < k_; ++i)
            if (m[i] > 0) t *= power(i, m[i]);
        sum += t;
    }
    return sum;
}

Poly Poly::partial(int i) const {
    if (i < 0 || i >= k_) throw IndexOutOfRange("partial: variable index");
    Poly out(k_);
    for (const auto& [m, c] : terms_) {
        if (m[i] == 0) continue;
        Mono d = m;
        d[i] -= 1;
        out.add_term(d, c * Rat(m[i]));
    }
    return out;
}

Poly Poly::embed(int new_k) const {
    if (new_k < k_) throw DimensionMismatch("embed: shrinking ambient dimension");
    Poly out(new_k);
    for (const auto& [m, c] : terms_) {
        Mono padded = m;
        padded.resize(new_k, 0);
        out.terms_.emplace(std::move(padded), c);
    }
    return out;
}

Poly Poly::subst_linear(const MatQ& m) const {
    if (m.rows() != k_) throw DimensionMismatch("subst_linear: matrix rows != ambient");
    int out_k = m.cols();
    std::vector<std::vector<Poly>> powers(k_);
    for (int i = 0; i < k_; ++i) powers[i].push_back(Poly::constant(out_k, 1));
    auto power = [&](int i, unsigned e) -> const Poly& {
        auto& cache = powers[i];
        if (cache.size() == 1 && e >= 1) cache.push_back(Poly::linear(out_k, m.row(i)));
        while (cache.size() <= e) cache.push_back(cache.back() * cache[1]);
        return cache[e];
    };
    Poly out(out_k);
    for (const auto& [mono, c] : terms_) {
        Poly t = Poly::constant(out_k, c);
        for (int i = 0; i < k_; ++i)
            if (mono[i] > 0) t = t * power(i, mono[i]);
        out += t;
    }
    return out;
}

std::map<unsigned, Poly> Poly::split_by_variable(int i) const {
    if (i < 0 || i >= k_) throw IndexOutOfRange("split_by_variable: variable index");
    std::map<unsigned, Poly> groups;
    for (const auto& [m, c] : terms_) {
        Mono rest = m;
        unsigned e = rest[i];
        rest[i] = 0;
        groups.emplace(e, Poly(k_)).first->second.add_term(rest, c);
    }
    return groups;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // Reverse iteration prints the graded-lex leading term first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        bool negative = c < 0;
        Rat a = negative ? Rat(-c) : c;
        if (first) {
            if (negative) out << "-";
            first = false;
        } else {
            out << (negative ? " - " : " + ");
        }
        bool has_vars = mono_degree(m) > 0;
        if (!has_vars) {
            out << rat_to_string(a);
            continue;
        }
        bool printed = false;
        if (a != 1) {
            out << rat_to_string(a);
            printed = true;
        }
        for (int i = 0; i < k_; ++i) {
            if (m[i] == 0) continue;
            if (printed) out << "*";
            out << "z" << (i + 1);
            if (m[i] > 1) out << "^" << m[i];
            printed = true;
        }
    }
    return out.str();
}

std::optional<Poly> divide_by_linear(const Poly& p, const VecQ& form) {
    if (static_cast<int>(form.size()) != p.k())
        throw DimensionMismatch("divide_by_linear: form size differs from ambient");
    int s = -1;
    for (int i = 0; i < p.k(); ++i)
        if (form[i] != 0) {
            s = i;
            break;
        }
    if (s < 0) throw ZeroForm("division by the zero form");
    const Rat& a = form[s];
    // rest = form - a*z_s, free of z_s.
    VecQ rest_coeffs = form;
    rest_coeffs[s] = 0;
    Poly rest = Poly::linear(p.k(), rest_coeffs);

    std::map<unsigned, Poly> groups = p.split_by_variable(s);
    if (groups.empty()) return Poly(p.k());
    unsigned top = groups.rbegin()->first;
    std::vector<Poly> level(top + 1, Poly(p.k()));
    for (auto& [e, q] : groups) level[e] = std::move(q);

    Poly quotient(p.k());
    for (unsigned r = top; r >= 1; --r) {
        Poly q = level[r].scaled(1 / a);
        level[r - 1] -= q * rest;
        for (const auto& [m, c] : q.terms()) {
            Mono shifted = m;
            shifted[s] = r - 1;
            quotient.add_term(shifted, c);
        }
    }
    if (!level[0].is_zero()) return std::nullopt;
    return quotient;
}

}  // namespace meroq

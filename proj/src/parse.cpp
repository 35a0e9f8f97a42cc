#include "meroq/parse.hpp"

#include <cctype>

#include "meroq/errors.hpp"
#include "meroq/poly_factor.hpp"

namespace meroq {

namespace {

struct Parser {
    const std::string& text;
    size_t pos = 0;
    int k;

    Parser(const std::string& t, int ambient) : text(t), k(ambient) {}

    void skip_space() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool peek_is(char c) {
        skip_space();
        return pos < text.size() && text[pos] == c;
    }

    bool consume(char c) {
        if (!peek_is(c)) return false;
        ++pos;
        return true;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw SyntaxError(what + " at position " + std::to_string(pos));
    }

    Int read_integer() {
        skip_space();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected an integer");
        return Int(text.substr(start, pos - start));
    }

    Germ parse_expr() {
        Germ acc = parse_term();
        while (true) {
            if (consume('+'))
                acc = acc + parse_term();
            else if (consume('-'))
                acc = acc - parse_term();
            else
                return acc;
        }
    }

    Germ parse_term() {
        Germ acc = parse_factor();
        while (true) {
            if (consume('*'))
                acc = acc * parse_factor();
            else if (consume('/'))
                acc = divide(acc, parse_factor());
            else
                return acc;
        }
    }

    Germ parse_factor() {
        bool negate = false;
        while (true) {
            if (consume('-'))
                negate = !negate;
            else if (consume('+'))
                ;
            else
                break;
        }
        Germ atom = parse_atom();
        if (consume('^')) {
            skip_space();
            if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
                fail("expected a nonnegative integer exponent");
            Int e = read_integer();
            if (e > 64) fail("exponent too large");
            atom = atom.pow(static_cast<unsigned>(e.get_ui()));
        }
        return negate ? -atom : atom;
    }

    Germ parse_atom() {
        skip_space();
        if (pos >= text.size()) fail("unexpected end of input");
        char c = text[pos];
        if (c == '(') {
            ++pos;
            Germ inner = parse_expr();
            if (!consume(')')) fail("expected ')'");
            return inner;
        }
        if (c == 'z') {
            ++pos;
            Int idx = read_integer();
            if (idx < 1 || idx > k)
                fail("variable z" + idx.get_str() + " outside z1..z" + std::to_string(k));
            return Germ::variable(k, static_cast<int>(idx.get_si()) - 1);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Int value = read_integer();
            return Germ::constant(k, Rat(value));
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    Germ divide(const Germ& lhs, const Germ& rhs) {
        if (rhs.terms().empty()) throw ZeroDivision("division by zero");
        Germ::SingleFraction sf = rhs.as_single_fraction();
        if (sf.num.is_zero()) throw ZeroDivision("division by a germ equal to zero");
        std::optional<LinearFactorization> fac = factor_into_linear_forms(sf.num);
        if (!fac)
            throw NonLinearPole("divisor is not a scalar times a product of linear forms: " +
                                sf.num.str());
        // lhs / rhs = lhs * (product of rhs denominators) / factorization.
        Poly num = Poly::constant(rhs.k(), 1);
        for (const DenFactor& f : sf.den) num = num * f.form.to_poly(rhs.k()).pow(f.power);
        GermTerm recip(num.scaled(1 / fac->scale), std::move(fac->factors));
        return lhs * Germ::from_terms(rhs.k(), {std::move(recip)});
    }
};

}  // namespace

Germ parse(const std::string& text, int k) {
    if (k < 0) throw DimensionMismatch("parse: negative ambient dimension");
    Parser p(text, k);
    Germ g = p.parse_expr();
    p.skip_space();
    if (p.pos != text.size()) p.fail("trailing input");
    return g;
}

}  // namespace meroq

#include <doctest.h>

#include <random>

#include "meroq/errors.hpp"
#include "meroq/germ.hpp"
#include "meroq/parse.hpp"
#include "support/gen.hpp"

using namespace meroq;

namespace {
LinearForm form(const VecQ& c) { return LinearForm::normalized(c).first; }
}  // namespace

TEST_CASE("linear form canonicalization and total order") {
    auto [f, scale] = LinearForm::normalized({Rat(2), Rat(4)});
    CHECK(f.coeffs() == std::vector<Int>{1, 2});
    CHECK(scale == 2);
    auto [g, s2] = LinearForm::normalized({Rat(-1, 2), Rat(1, 3)});
    CHECK(g.coeffs() == std::vector<Int>{3, -2});
    CHECK(s2 == Rat(-1, 6));
    CHECK_THROWS_AS(LinearForm::normalized({Rat(0), Rat(0)}), ZeroForm);

    LinearForm z1 = LinearForm::axis(2, 0), z2 = LinearForm::axis(2, 1);
    LinearForm sum = form({Rat(1), Rat(1)});
    CHECK(z2 < z1);
    CHECK(z1 < sum);
    CHECK(z2 < sum);
    // Trailing-zero embedding does not change identity or order.
    CHECK(z1.embed(4) == LinearForm::axis(2, 0));
    CHECK(form({Rat(1), Rat(1), Rat(0)}) == sum);
    CHECK(sum.eval({Rat(2), Rat(5)}) == 7);
    CHECK(z1.is_axis(0));
    CHECK(!sum.is_axis(0));
}

TEST_CASE("germ term canonical shape") {
    // Proportional denominator forms merge, scalars stay in the numerator.
    Poly one = Poly::constant(2, Rat(1));
    LinearForm sum = form({Rat(1), Rat(1)});
    GermTerm t(one, {{sum, 1}, {sum, 2}});
    REQUIRE(t.den().size() == 1);
    CHECK(t.den()[0].power == 3);
    CHECK(t.den_degree() == 3);
    CHECK(t.den_poly() == (Poly::variable(2, 0) + Poly::variable(2, 1)).pow(3));
    CHECK_THROWS_AS(GermTerm(one, {{sum, 0}}), Error);
}

TEST_CASE("parsing germs from expressions") {
    Germ f = parse("z1/(z1+z2)", 2);
    REQUIRE(f.terms().size() == 1);
    CHECK(f.terms()[0].num() == Poly::variable(2, 0));
    REQUIRE(f.terms()[0].den().size() == 1);
    CHECK(f.terms()[0].den()[0].form == form({Rat(1), Rat(1)}));
    CHECK(f.terms()[0].den()[0].power == 1);

    // Scalars and common factors normalize out of denominators.
    Germ g = parse("(2*z1+4*z2)/(2*z1)", 2);
    REQUIRE(g.terms().size() == 1);
    CHECK(g.terms()[0].num() == Poly::variable(2, 0) + Poly::variable(2, 1).scaled(Rat(2)));
    REQUIRE(g.terms()[0].den().size() == 1);
    CHECK(g.terms()[0].den()[0].form == LinearForm::axis(2, 0));

    // Constants, powers, nested quotients.
    CHECK(parse("1/2", 1).equals(Germ::constant(1, Rat(1, 2))));
    CHECK(parse("-3/4*z1", 1).equals(Germ::variable(1, 0).scaled(Rat(-3, 4))));
    CHECK(parse("(z1+z2)^2/(z1*(z1+z2))", 2).equals(parse("(z1+z2)/z1", 2)));
    CHECK(parse("1/z1^2", 1).equals(parse("1/(z1*z1)", 1)));
    CHECK(parse("z1 - z2 + 1", 2).equals(parse("1 - (z2 - z1)", 2)));
    CHECK(parse("2^6", 1).equals(Germ::constant(1, Rat(64))));

    CHECK_THROWS_AS(parse("1/(z1*z1+z2)", 2), NonLinearPole);
    CHECK_THROWS_AS(parse("1/(z1+1)", 2), NonLinearPole);
    CHECK_THROWS_AS(parse("1/(z1-z1)", 2), ZeroDivision);
    CHECK_THROWS_AS(parse("1/0", 2), ZeroDivision);
    CHECK_THROWS_AS(parse("z3", 2), SyntaxError);
    CHECK_THROWS_AS(parse("z1 +", 2), SyntaxError);
    CHECK_THROWS_AS(parse("z1^-1", 2), SyntaxError);
    CHECK_THROWS_AS(parse("z1^65", 2), SyntaxError);
    CHECK_THROWS_AS(parse("", 2), SyntaxError);
    CHECK_THROWS_AS(parse("(z1", 2), SyntaxError);
}

TEST_CASE("rendering round-trips through the parser") {
    std::vector<std::string> corpus = {
        "z1/(z1+z2)",        "1/(z1*z2*(z1+z2))",          "(z1-z2)^2/(z1+z2)^2",
        "1/2 + 1/z1",        "(2*z1+4*z2)/(2*z1)",         "z1^2 - z2 + 1/2",
        "1/z1 + 1/z1^2",     "-z1/(z1+2*z2)^3 + z2",       "3/4",
    };
    for (const auto& text : corpus) {
        Germ f = parse(text, 2);
        Germ back = parse(f.str(), 2);
        CHECK(back.equals(f));
    }
}

TEST_CASE("sum, product, scaling behave like a commutative ring") {
    Germ a = parse("1/z1", 2);
    CHECK((a + a.scaled(Rat(-1))).terms().empty());
    CHECK((parse("z1/(z1+z2)", 2) * parse("(z1+z2)/z1", 2)).equals(Germ::constant(2, Rat(1))));

    std::mt19937 rng(7201);
    for (int trial = 0; trial < 12; ++trial) {
        int k = gen::uniform(rng, 1, 3);
        Germ f = gen::rand_germ(rng, k, 3, 2, 2, 1);
        Germ g = gen::rand_germ(rng, k, 3, 2, 2, 1);
        Germ h = gen::rand_germ(rng, k, 3, 2, 2, 1);
        CHECK((f + g).equals(g + f));
        CHECK((f * g).equals(g * f));
        CHECK(((f + g) + h).equals(f + (g + h)));
        CHECK(((f * g) * h).equals(f * (g * h)));
        CHECK((f * (g + h)).equals(f * g + f * h));
    }
}

TEST_CASE("mixed-dimension arithmetic embeds automatically") {
    Germ f1 = parse("1/z1", 1);
    Germ g2 = parse("z2", 2);
    Germ sum = f1 + g2;
    CHECK(sum.k() == 2);
    CHECK(sum.equals(parse("1/z1 + z2", 2)));
    CHECK(f1.embed(3).k() == 3);
    CHECK(f1.embed(3).equals(parse("1/z1", 3)));
    CHECK_THROWS_AS(g2.embed(1), DimensionMismatch);
}

TEST_CASE("single-fraction form takes least common denominators") {
    auto sf = parse("1/z1 + 1/z2", 2).as_single_fraction();
    CHECK(sf.num == Poly::variable(2, 0) + Poly::variable(2, 1));
    REQUIRE(sf.den.size() == 2);
    CHECK(sf.den[0].form == LinearForm::axis(2, 1));
    CHECK(sf.den[1].form == LinearForm::axis(2, 0));

    auto holo = parse("z1^2 + 1", 1).as_single_fraction();
    CHECK(holo.den.empty());
    CHECK(holo.num == parse("z1^2 + 1", 1).terms()[0].num());

    auto powers = parse("1/z1 + 1/z1^2", 1).as_single_fraction();
    CHECK(powers.num == Poly::variable(1, 0) + Poly::constant(1, Rat(1)));
    REQUIRE(powers.den.size() == 1);
    CHECK(powers.den[0].power == 2);
}

TEST_CASE("semantic equality by cross-multiplication") {
    CHECK(parse("z1/(z1+z2) + z2/(z1+z2)", 2).equals(Germ::constant(2, Rat(1))));
    CHECK(!parse("1/z1", 2).equals(parse("1/z2", 2)));
    Germ f = parse("z1/(z1+z2)", 2);
    CHECK(f.embed(3).equals(f));
    // The classic two-variable partial-fraction identity.
    CHECK(parse("1/(z1*z2)", 2).equals(parse("1/(z2*(z1+z2)) + 1/(z1*(z1+z2))", 2)));
}

TEST_CASE("directional derivatives by the quotient rule") {
    CHECK(parse("z1^2", 2).directional_derivative({Rat(1), Rat(0)}).equals(parse("2*z1", 2)));
    CHECK(parse("1/z1", 2).directional_derivative({Rat(0), Rat(1)}).terms().empty());
    std::mt19937 rng(7202);
    for (int trial = 0; trial < 8; ++trial) {
        VecQ v = gen::rand_point(rng, 2, 3, 2);
        Germ expected =
            Germ::from_terms(2, {GermTerm(Poly::linear(2, {v[1], -v[0]}).scaled(Rat(-1)),
                                          {{form({Rat(1), Rat(1)}), 2}})});
        CHECK(parse("z1/(z1+z2)", 2).directional_derivative(v).equals(expected));
    }
    CHECK_THROWS_AS(parse("z1", 2).directional_derivative({Rat(1)}), DimensionMismatch);
}

TEST_CASE("independence and dependence subspaces") {
    Germ diff = parse("z1-z2", 2);
    CHECK(diff.indep_subspace() == Subspace::span(2, {{Rat(1), Rat(1)}}));
    CHECK(diff.dep_subspace() == Subspace::span(2, {{Rat(1), Rat(-1)}}));

    Germ f = parse("z1/(z1+z2)", 2);
    CHECK(f.indep_subspace() == Subspace::zero(2));
    CHECK(f.dep_subspace() == Subspace::full(2));

    Germ c = Germ::constant(2, Rat(5));
    CHECK(c.indep_subspace() == Subspace::full(2));
    CHECK(c.dep_subspace() == Subspace::zero(2));

    // A germ factoring through a single form depends exactly on its span.
    Germ g = parse("1/(z1+2*z2)", 2);
    CHECK(g.dep_subspace() == Subspace::span(2, {{Rat(1), Rat(2)}}));

    // Dependence of the embedding is the embedded dependence.
    std::mt19937 rng(7203);
    for (int trial = 0; trial < 8; ++trial) {
        Germ h = gen::rand_germ(rng, 2, 2, 2, 2, 1);
        Subspace dep = h.dep_subspace();
        std::vector<VecQ> rows;
        for (const VecQ& r : dep.basis()) rows.push_back(padded(r, 4));
        CHECK(h.embed(4).dep_subspace() == Subspace::span(4, rows));
    }
}

TEST_CASE("variable support from the independence kernel") {
    CHECK(parse("z1/(z1+z2)", 2).supp() == std::vector<int>{0, 1});
    CHECK(parse("z1-z2", 5).supp() == std::vector<int>{0, 1});
    CHECK(Germ::constant(3, Rat(2)).supp().empty());
    CHECK(parse("1/z2", 3).supp() == std::vector<int>{1});
}

TEST_CASE("holomorphy detection by exact division") {
    Germ f = parse("(z1^2-z2^2)/(z1+z2)", 2);
    CHECK(f.is_holomorphic());
    auto p = f.to_polynomial();
    REQUIRE(p.has_value());
    CHECK(*p == Poly::variable(2, 0) - Poly::variable(2, 1));
    CHECK(!parse("1/z1", 1).is_holomorphic());
    CHECK(!parse("z1/(z1+z2)", 2).is_holomorphic());
    // Holomorphy can be hidden across terms.
    CHECK(parse("1/z1 + (z1-1)/z1", 2).is_holomorphic());
    CHECK(!parse("1/z1 + (z2-1)/z1", 2).is_holomorphic());  // sums to z2/z1
}

TEST_CASE("evaluation away from the pole set") {
    Germ f = parse("z1/(z1+z2)", 2);
    CHECK(f.eval_at({Rat(1), Rat(1)}) == Rat(1, 2));
    CHECK(!f.eval_at({Rat(1), Rat(-1)}).has_value());
    CHECK(parse("z1^2+1", 1).eval_at({Rat(3)}) == Rat(10));
}

TEST_CASE("pole validation against tagged generating sets") {
    CHECK(parse("1/((z1+z2)*z3)", 3).validate_poles(GeneratingSetTag::FeynmanF));
    CHECK(!parse("1/(z1-z2)", 2).validate_poles(GeneratingSetTag::FeynmanF));
    CHECK(parse("1/(z1*(z1+z2))", 2).validate_poles(GeneratingSetTag::ChenC));
    CHECK(!parse("1/z2", 2).validate_poles(GeneratingSetTag::ChenC));
    CHECK(parse("1/z2", 2).validate_poles(GeneratingSetTag::FeynmanF));
    CHECK(!parse("1/(z1+2*z2)", 2).validate_poles(GeneratingSetTag::FeynmanF));
    CHECK(parse("1/(z1-z2)", 2).validate_poles(GeneratingSetTag::Free));
    // Scalar multiples of tagged forms count as the same form.
    CHECK(parse("1/(2*z1+2*z2)", 2).validate_poles(GeneratingSetTag::FeynmanF));
    // Holomorphic germs have no poles to violate.
    CHECK(parse("z1-z2", 2).validate_poles(GeneratingSetTag::ChenC));
}

TEST_CASE("dependence of a product stays inside the sum of dependences") {
    std::mt19937 rng(7204);
    for (int trial = 0; trial < 10; ++trial) {
        int k = gen::uniform(rng, 2, 3);
        Germ f = gen::rand_germ(rng, k, 2, 2, 2, 1);
        Germ g = gen::rand_germ(rng, k, 2, 2, 2, 1);
        Subspace bound = f.dep_subspace().sum(g.dep_subspace());
        CHECK(bound.contains((f * g).dep_subspace()));
    }
}

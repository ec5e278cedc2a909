#include "doctest.h"
#include "sv/poly.hpp"

#include <map>
#include <memory>
#include <vector>

using namespace sv;

namespace {

std::shared_ptr<ParamTable> basic_table() {
    auto t = std::make_shared<ParamTable>();
    for (const char* n : {"a1", "a2", "a3", "a5", "a11", "r2", "s2", "t2"}) t->declare_real(n);
    t->declare_complex("u");
    t->declare_complex("v");
    return t;
}

Poly random_poly(Rng& rng, const ParamTablePtr& ctx, const std::vector<std::string>& vars,
                 int maxTerms = 4, int maxExp = 2) {
    Poly p(GaussRat(), ctx);
    int terms = static_cast<int>(rng.int_in(0, maxTerms));
    for (int t = 0; t < terms; ++t) {
        Poly term(rng.gauss(5, 3), ctx);
        for (const auto& v : vars)
            if (rng.int_in(0, 2) == 0) term = term * Poly::var(v, ctx, static_cast<int>(rng.int_in(1, maxExp)));
        p += term;
    }
    return p;
}

// Independent naive evaluator: direct term-by-term products, no shared code
// with Poly::eval (which uses pow-by-squaring).
GaussRat naive_eval(const Poly& p, const std::map<std::string, GaussRat>& pt) {
    GaussRat total;
    for (const auto& [m, c] : p.terms()) {
        GaussRat prod = c;
        for (const auto& [name, e] : m)
            for (int k = 0; k < e; ++k) prod *= pt.at(name);
        total += prod;
    }
    return total;
}

std::map<std::string, GaussRat> random_point(Rng& rng, const ParamTable& tab) {
    std::map<std::string, GaussRat> pt;
    for (const auto& n : tab.names()) {
        const ParamInfo* pi = tab.find(n);
        if (pi->kind == ParamKind::Real) pt[n] = GaussRat(rng.rat(5, 3));
        else if (pi->kind == ParamKind::Holo) {
            GaussRat z = rng.gauss(5, 3);
            pt[n] = z;
            pt[pi->partner] = z.conj();
        }
    }
    return pt;
}

} // namespace

TEST_CASE("gaussian rational arithmetic is exact") {
    GaussRat i = GaussRat::make_i();
    CHECK(i * i == GaussRat(-1));
    GaussRat q(rat_of(1, 2), rat_of(-3, 4));
    CHECK(q.conj().conj() == q);
    CHECK((q * q.inv()) == GaussRat(1));
    CHECK(q.norm2() == rat_of(1, 4) + rat_of(9, 16));
    Rat root;
    CHECK(rat_sqrt(rat_of(9, 4), root));
    CHECK(root == rat_of(3, 2));
    CHECK_FALSE(rat_sqrt(rat_of(2), root));
    CHECK_FALSE(rat_sqrt(rat_of(-4), root));
}

TEST_CASE("ring axioms on randomized triples") {
    auto tab = basic_table();
    std::vector<std::string> vars{"a1", "a5", "u", "conj(u)"};
    Rng rng(0);
    for (int it = 0; it < 1000; ++it) {
        Poly p = random_poly(rng, tab, vars);
        Poly q = random_poly(rng, tab, vars);
        Poly r = random_poly(rng, tab, vars);
        CHECK((p + q) + r == p + (q + r));
        CHECK(p + q == q + p);
        CHECK(p * q == q * p);
        CHECK(p * (q + r) == p * q + p * r);
        CHECK((p - p).is_zero());
    }
    Rng rng2(0);
    for (int it = 0; it < 1000; ++it) {
        Poly p = random_poly(rng2, tab, vars, 3, 2);
        Poly q = random_poly(rng2, tab, vars, 3, 2);
        Poly r = random_poly(rng2, tab, vars, 3, 2);
        CHECK((p * q) * r == p * (q * r));
    }
}

TEST_CASE("modulus-squared products stay in canonical sparse form") {
    auto tab = basic_table();
    Poly u = Poly::var("u", tab), uc = Poly::var("conj(u)", tab);
    Poly r2 = Poly::var("r2", tab), s2 = Poly::var("s2", tab);
    Poly p = u * uc + r2 * s2;
    CHECK(p.str() == "conj(u)*u + r2*s2");
    CHECK(p.conj() == p);
    CHECK(p.term_count() == 2);
}

TEST_CASE("conjugation is a ring involution") {
    auto tab = basic_table();
    Poly u = Poly::var("u", tab);
    CHECK((Poly::imag_unit(tab) * u).conj() == -(Poly::imag_unit(tab) * Poly::var("conj(u)", tab)));
    Poly r2 = Poly::var("r2", tab), t2 = Poly::var("t2", tab);
    CHECK((r2 + Poly::imag_unit(tab) * t2).conj() == r2 - Poly::imag_unit(tab) * t2);
    CHECK((u * Poly::var("conj(u)", tab)).conj() == u * Poly::var("conj(u)", tab));

    std::vector<std::string> vars{"a1", "r2", "u", "conj(u)", "v", "conj(v)"};
    Rng rng(0);
    for (int it = 0; it < 1000; ++it) {
        Poly p = random_poly(rng, tab, vars);
        Poly q = random_poly(rng, tab, vars);
        CHECK(p.conj().conj() == p);
        CHECK((p * q).conj() == p.conj() * q.conj());
        CHECK((p + q).conj() == p.conj() + q.conj());
    }
}

TEST_CASE("substitution is exact and commutes with arithmetic") {
    auto tab = basic_table();
    std::vector<std::string> vars{"a1", "a5", "u", "conj(u)"};

    SUBCASE("identity substitution") {
        Rng rng(1);
        Poly p = random_poly(rng, tab, vars);
        CHECK(p.substitute({}) == p);
    }
    SUBCASE("homomorphism over random triples") {
        Rng rng(0);
        for (int it = 0; it < 1000; ++it) {
            Poly p = random_poly(rng, tab, vars);
            Poly q = random_poly(rng, tab, vars);
            GaussRat z = rng.gauss(3, 2);
            std::map<std::string, Poly> b{
                {"a1", Poly(GaussRat(rng.rat(3, 2)), tab)},
                {"u", Poly(z, tab)},
                {"conj(u)", Poly(z.conj(), tab)},
            };
            CHECK((p + q).substitute(b) == p.substitute(b) + q.substitute(b));
            CHECK((p * q).substitute(b) == p.substitute(b) * q.substitute(b));
        }
    }
    SUBCASE("complex parameter requires partner") {
        Poly u = Poly::var("u", tab);
        CHECK_THROWS_AS(u.substitute({{"u", Poly(GaussRat(1), tab)}}), std::invalid_argument);
        CHECK_THROWS_AS(u.substitute({{"nope", Poly(GaussRat(1), tab)}}), std::invalid_argument);
    }
    SUBCASE("binding to polynomials") {
        Poly p = Poly::parse("a1^2 - a5*a11", tab);
        Poly b = Poly::parse("a5 + 1", tab);
        Poly got = p.substitute({{"a1", b}});
        CHECK(got == Poly::parse("(a5+1)^2 - a5*a11", tab));
    }
}

TEST_CASE("evaluation agrees with an independent naive evaluator") {
    auto tab = basic_table();
    std::vector<std::string> vars{"a1", "a2", "a3", "r2", "u", "conj(u)", "v", "conj(v)"};
    Rng rng(0);
    for (int it = 0; it < 1000; ++it) {
        Poly p = random_poly(rng, tab, vars, 5, 3);
        auto pt = random_point(rng, *tab);
        CHECK(p.eval(pt) == naive_eval(p, pt));
    }
}

TEST_CASE("squared-binomial products match bit for bit") {
    auto tab = basic_table();
    Poly a1 = Poly::var("a1", tab), a5 = Poly::var("a5", tab), a11 = Poly::var("a11", tab);
    Poly inner = a5 * a5 - a1 * a11;
    Poly six_sq = (inner * inner).scaled(GaussRat(6));
    CHECK(six_sq == Poly::parse("6*(a5^2-a1*a11)^2", tab));
    CHECK(six_sq.str() == "-12*a1*a11*a5^2 + 6*a1^2*a11^2 + 6*a5^4");
}

TEST_CASE("canonical text rendering round-trips exactly") {
    auto tab = basic_table();
    std::vector<std::string> vars{"a1", "a5", "r2", "u", "conj(u)"};
    Rng rng(0);
    for (int it = 0; it < 1000; ++it) {
        Poly p = random_poly(rng, tab, vars, 5, 3);
        CHECK(Poly::parse(p.str(), tab) == p);
    }
    CHECK(Poly().str() == "0");
    CHECK(Poly::parse("0", tab).is_zero());
    CHECK(Poly::parse("(1-1/2*i)*u + i", tab).str() == "i + (1-1/2*i)*u");
    CHECK(Poly::parse("-i*a1 + 2i", tab) == Poly::parse("i*(2 - a1)", tab));
    CHECK(Poly::parse("3a5", tab) == Poly::var("a5", tab).scaled(GaussRat(3)));
    CHECK(Poly::parse("a5/2", tab) == Poly::var("a5", tab).scaled(GaussRat(rat_of(1, 2))));
}

TEST_CASE("parse errors carry positions") {
    auto tab = basic_table();
    CHECK_THROWS_AS(Poly::parse("a1 + zz", tab), ParseError);
    CHECK_THROWS_AS(Poly::parse("(a1 + a5", tab), ParseError);
    CHECK_THROWS_AS(Poly::parse("a1/0", tab), ParseError);
    CHECK_THROWS_AS(Poly::parse("a1 a5 )", tab), ParseError);
    CHECK_THROWS_AS(Poly::parse("u^-1", tab), ParseError);
    try {
        Poly::parse("a1 + zz", tab);
    } catch (const ParseError& e) {
        CHECK(e.pos == 5);
    }
}

TEST_CASE("declared monomial rewrites produce canonical forms") {
    auto tab = std::make_shared<ParamTable>();
    tab->declare_complex("A");
    tab->declare_real("x");
    tab->declare_real("sqrt5");
    tab->add_unit_modulus("A");
    tab->add_square_value("sqrt5", Rat(5));

    CHECK(Poly::parse("A*conj(A)", tab) == Poly(GaussRat(1), tab));
    CHECK(Poly::parse("A^2*conj(A)", tab) == Poly::var("A", tab));
    CHECK(Poly::parse("sqrt5^2", tab) == Poly(GaussRat(5), tab));
    CHECK(Poly::parse("sqrt5^3", tab) == Poly::var("sqrt5", tab).scaled(GaussRat(5)));
    Poly mixed = Poly::parse("x*A*sqrt5", tab) * Poly::parse("conj(A)*sqrt5", tab);
    CHECK(mixed == Poly::var("x", tab).scaled(GaussRat(5)));
}

TEST_CASE("syntactic square detection") {
    auto tab = basic_table();
    SUBCASE("six times a squared binomial") {
        Poly p = Poly::parse("6*(a5^2-a1*a11)^2", tab);
        auto sq = try_square(p);
        REQUIRE(sq.has_value());
        CHECK(sq->first == Rat(6));
        Poly q = sq->second;
        CHECK((q == Poly::parse("a5^2-a1*a11", tab) || q == Poly::parse("a1*a11-a5^2", tab)));
        CHECK((q * q).scaled(GaussRat(6)) == p);
    }
    SUBCASE("rejections") {
        CHECK_FALSE(try_square(Poly::parse("a5^2 - a1", tab)).has_value());
        CHECK_FALSE(try_square(Poly::parse("-a5^2", tab)).has_value());
        CHECK_FALSE(try_square(Poly::parse("a5^2 + a1^2 + 1", tab)).has_value()); // sum of squares, not a square
        CHECK_FALSE(try_square(Poly::parse("i*a5^2", tab)).has_value());
    }
    SUBCASE("zero and constants") {
        auto z = try_square(Poly());
        REQUIRE(z.has_value());
        CHECK(z->first == Rat(0));
        auto c = try_square(Poly::parse("9/4", tab));
        REQUIRE(c.has_value());
        CHECK(c->first * c->second.constant_value().re * c->second.constant_value().re == rat_of(9, 4));
    }
    SUBCASE("random squares recovered") {
        std::vector<std::string> vars{"a1", "a5", "a11"};
        Rng rng(0);
        int found = 0;
        for (int it = 0; it < 1000; ++it) {
            Poly q = random_poly(rng, tab, vars, 3, 2);
            // force real coefficients
            Poly qr(GaussRat(), tab);
            for (auto& [m, c] : q.terms()) {
                Poly t(GaussRat(c.re), tab);
                for (auto& [n, e] : m) t = t * Poly::var(n, tab, e);
                qr += t;
            }
            long k = rng.int_in(1, 7);
            Poly p = (qr * qr).scaled(GaussRat(k));
            auto sq = try_square(p);
            REQUIRE(sq.has_value());
            CHECK((sq->second * sq->second).scaled(GaussRat(sq->first)) == p);
            if (!qr.is_zero()) ++found;
        }
        CHECK(found > 500);
    }
}

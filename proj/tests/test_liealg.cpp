#include "doctest.h"
#include "sv/liealg.hpp"

#include <memory>

using namespace sv;

namespace {

KForm e(std::initializer_list<int> idx, int n = 6) {
    return KForm::basis_elt(std::vector<int>(idx), n);
}

// The solvable test catalog used across this file, canonical tuple notation.
const char* kG1 = "(e^{15},-e^{25},-e^{35},e^{45},0,0)";
const char* kG2 = "(alpha*e^{15} + e^{25},-e^{15} + alpha*e^{25},-alpha*e^{35} + e^{45},-e^{35} - alpha*e^{45},0,0)";
const char* kG3 = "(0,-e^{13},e^{12},0,-e^{46},-e^{45})";
const char* kG4 = "(e^{23},-e^{36},e^{26},-e^{56},e^{46},0)";
const char* kG5 = "(e^{24} + e^{35},e^{26},e^{36},-e^{46},-e^{56},0)";
const char* kG6 = "(e^{24} + e^{35},-e^{36},e^{26},-e^{56},e^{46},0)";
const char* kG7 = "(e^{24} + e^{35},e^{46},e^{56},-e^{26},-e^{36},0)";
const char* kG8 = "(e^{16} - e^{25},e^{15} + e^{26},-e^{36} + e^{45},-e^{35} - e^{46},0,0)";
const char* kG9 = "(e^{45},e^{15} + e^{36},e^{14} - e^{26} + e^{56},-e^{56},e^{46},0)";

ParamTablePtr alpha_table() {
    auto tab = std::make_shared<ParamTable>();
    tab->declare_real("alpha");
    return tab;
}

// All nine with numeric structure constants (the one-parameter family pinned
// at alpha = 2).
std::vector<LieAlg> catalog_instances() {
    std::vector<LieAlg> out;
    out.push_back(LieAlg::parse("s1", kG1));
    out.push_back(LieAlg::parse("s2", kG2, alpha_table()).instantiate({{"alpha", GaussRat(2)}}));
    out.push_back(LieAlg::parse("s3", kG3));
    out.push_back(LieAlg::parse("s4", kG4));
    out.push_back(LieAlg::parse("s5", kG5));
    out.push_back(LieAlg::parse("s6", kG6));
    out.push_back(LieAlg::parse("s7", kG7));
    out.push_back(LieAlg::parse("s8", kG8));
    out.push_back(LieAlg::parse("s9", kG9));
    return out;
}

KForm random_form(Rng& rng, int grade, int n, const ParamTablePtr& ctx) {
    KForm f(grade, n);
    int terms = static_cast<int>(rng.int_in(0, 3));
    for (int t = 0; t < terms; ++t) {
        std::vector<int> idx;
        for (int j = 0; j < grade; ++j) idx.push_back(static_cast<int>(rng.int_in(1, n)));
        f.add_term(idx, Poly(rng.gauss(4, 3), ctx));
    }
    return f;
}

} // namespace

TEST_CASE("tuple notation round-trips") {
    for (const char* s : {kG1, kG3, kG4, kG5, kG6, kG7, kG8, kG9}) {
        LieAlg g = LieAlg::parse("x", s);
        CHECK(g.dim() == 6);
        CHECK(g.str() == s);
    }
    LieAlg g2 = LieAlg::parse("x", kG2, alpha_table());
    CHECK(g2.str() == kG2);
    CHECK(LieAlg::parse("r3", "(0,0,0)").str() == "(0,0,0)");
}

TEST_CASE("tuple parser reports positioned errors") {
    CHECK_THROWS_WITH_AS(LieAlg::parse("x", "e^{12},0"),
                         "expected a parenthesized tuple at position 0", ParseError);
    try {
        LieAlg::parse("x", "(e^{113},0,0)");
        FAIL("expected ParseError");
    } catch (const ParseError& pe) {
        CHECK(std::string(pe.what()) == "component 1: repeated basis index at position 1");
        CHECK(pe.pos == 1);
    }
    try {
        LieAlg::parse("x", "(0,0,e^{17})");
        FAIL("expected ParseError");
    } catch (const ParseError& pe) {
        CHECK(std::string(pe.what()).find("index out of range") != std::string::npos);
        CHECK(pe.pos == 5);
    }
    CHECK_THROWS_WITH_AS(LieAlg::parse("x", "(x*e^{12},0)"),
                         "component 1: unknown parameter 'x' at position 1", ParseError);
    CHECK_THROWS_WITH_AS(LieAlg::parse("x", "(0,e^{12}) x"),
                         "unexpected text after tuple at position 11", ParseError);
    CHECK_THROWS_WITH_AS(LieAlg::parse("x", "(e^{123},0,0)"),
                         "component 1: expected a 2-form at position 1", ParseError);
    CHECK_THROWS_AS(LieAlg::parse("x", "(e^{12},,0)"), ParseError);
}

TEST_CASE("differential extends the structure equations as an antiderivation") {
    LieAlg g4 = LieAlg::parse("s4", kG4);
    CHECK(g4.d(e({1})) == e({2, 3}));
    CHECK(g4.d(e({1, 2})) == e({1, 3, 6}));
    CHECK(g4.d(KForm::basis_elt({}, 6)).is_zero());          // constants are closed
    CHECK(g4.d(e({1, 2, 3, 4, 5, 6})).is_zero());            // top grade
    CHECK_THROWS_AS(g4.d(e({1}, 4)), std::invalid_argument); // dimension mismatch
}

TEST_CASE("differential squares to zero on random forms") {
    std::vector<LieAlg> algs = catalog_instances();
    LieAlg sym = LieAlg::parse("s2", kG2, alpha_table());
    Rng rng(0);
    for (int it = 0; it < 1000; ++it) {
        const LieAlg& g = it % 5 == 0 ? sym : algs[static_cast<std::size_t>(rng.int_in(0, 8))];
        KForm f = random_form(rng, static_cast<int>(rng.int_in(0, 4)), 6, g.params());
        CHECK(g.d(g.d(f)).is_zero());
    }
}

TEST_CASE("differential obeys the graded Leibniz rule on random forms") {
    std::vector<LieAlg> algs = catalog_instances();
    Rng rng(0);
    for (int it = 0; it < 1000; ++it) {
        const LieAlg& g = algs[static_cast<std::size_t>(rng.int_in(0, 8))];
        int ka = static_cast<int>(rng.int_in(0, 3));
        int kb = static_cast<int>(rng.int_in(0, 3));
        KForm a = random_form(rng, ka, 6, g.params());
        KForm b = random_form(rng, kb, 6, g.params());
        KForm lhs = g.d(wedge(a, b));
        KForm rhs = wedge(g.d(a), b);
        KForm sign_b = ka % 2 ? wedge(a, g.d(b)).scaled(GaussRat(-1)) : wedge(a, g.d(b));
        rhs += sign_b;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("jacobi identity holds for the catalog and fails for a broken tuple") {
    for (auto& g : catalog_instances()) CHECK(jacobi_check(g).ok);
    CHECK(jacobi_check(LieAlg::parse("s2", kG2, alpha_table())).ok); // symbolic alpha

    JacobiReport bad = jacobi_check(LieAlg::parse("x", "(e^{23},e^{12},0)"));
    CHECK_FALSE(bad.ok);
    CHECK(bad.witness == 1);
    CHECK(bad.residual == e({1, 2, 3}, 3));
}

TEST_CASE("unimodularity holds for the catalog and fails with a trace witness") {
    for (auto& g : catalog_instances()) CHECK(unimodular_check(g).ok);
    CHECK(unimodular_check(LieAlg::parse("s2", kG2, alpha_table())).ok);

    UnimodularReport bad = unimodular_check(LieAlg::parse("x", "(0,e^{12})"));
    CHECK_FALSE(bad.ok);
    CHECK(bad.witness == 1);
    CHECK(bad.trace == Poly(GaussRat(-1)));
}

TEST_CASE("instantiate binds parameters and validates kinds") {
    LieAlg sym = LieAlg::parse("s2", kG2, alpha_table());
    CHECK_FALSE(sym.is_constant());
    LieAlg fixed = sym.instantiate({{"alpha", GaussRat(1)}}, "s2@1");
    CHECK(fixed.is_constant());
    CHECK(fixed.label() == "s2@1");
    CHECK(fixed.d1(1) == e({1, 5}) + e({2, 5}));
    CHECK_THROWS_AS(sym.instantiate({{"beta", GaussRat(1)}}), std::invalid_argument);
    CHECK_THROWS_AS(sym.instantiate({{"alpha", GaussRat::make_i()}}), std::invalid_argument);
}

TEST_CASE("cohomology of the abelian algebra is the full exterior algebra") {
    LieAlg ab = LieAlg::parse("abelian", "(0,0,0,0,0,0)");
    const int binom6[] = {1, 6, 15, 20, 15, 6, 1};
    for (int k = 0; k <= 6; ++k) CHECK(betti(ab, k) == binom6[k]);
    CHECK(betti(ab, 7) == 0);
    CHECK(betti(ab, -1) == 0);
}

TEST_CASE("cohomology requires numeric structure constants") {
    LieAlg sym = LieAlg::parse("s2", kG2, alpha_table());
    CHECK_THROWS_AS(betti(sym, 1), std::invalid_argument);
}

TEST_CASE("first, third and top Betti numbers of the catalog") {
    std::vector<LieAlg> algs = catalog_instances();
    const int b1[] = {2, 2, 2, 1, 1, 1, 1, 2, 1};
    for (std::size_t i = 0; i < algs.size(); ++i) {
        CHECK(betti(algs[i], 0) == 1);
        CHECK(betti(algs[i], 1) == b1[i]);
        CHECK(betti(algs[i], 3) >= 2); // room for a closed complex volume form
        CHECK(betti(algs[i], 6) == 1); // unimodularity seen through duality
    }
}

TEST_CASE("direct sums and the Kunneth count") {
    LieAlg e2 = LieAlg::parse("e2", "(0,-e^{13},e^{12})");
    LieAlg e11 = LieAlg::parse("e11", "(0,-e^{13},-e^{12})");
    for (int k = 0; k <= 3; ++k) {
        CHECK(betti(e2, k) == 1);
        CHECK(betti(e11, k) == 1);
    }
    LieAlg sum = direct_sum("e2+e11", e2, e11);
    CHECK(sum.dim() == 6);
    CHECK(same_structure(sum, LieAlg::parse("s3", kG3)));
    CHECK(kunneth_b3(e2, e11) == 4);
    CHECK(betti(sum, 3) == 4);
    LieAlg twice = direct_sum("e11+e11", e11, e11);
    CHECK(betti(twice, 3) == 4);
    CHECK(kunneth_b3(e11, e11) == 4);
}

TEST_CASE("closed 3-forms come out echelon-normalized in tuple order") {
    // a block-triangular example with a two-term generator tied to a pivot
    // column earlier in the order
    LieAlg a = LieAlg::parse("A", "(e^{23},e^{26},-e^{36},0,e^{46},0)");
    auto gens = closed_forms(a, 3);
    REQUIRE(gens.size() == 11);
    CHECK(gens[0] == e({1, 2, 3}));
    CHECK(gens[4] == e({2, 3, 5}) - e({1, 4, 6}));
    CHECK(gens[10] == e({4, 5, 6}));

    LieAlg b = LieAlg::parse("B", "(e^{15} + e^{25},e^{25},-e^{35} + e^{45},-e^{45},0,0)");
    auto gensB = closed_forms(b, 3);
    REQUIRE(gensB.size() == 12);
    CHECK(gensB[5] == e({2, 3, 6}) - e({1, 4, 6}));

    // weights (1,-1,-1,1,0,0): a monomial e^{T} is closed iff its weights sum
    // to zero, and every generator stays a pure monomial
    LieAlg g1 = LieAlg::parse("s1", kG1);
    auto gens1 = closed_forms(g1, 3);
    REQUIRE(gens1.size() == 14);
    const std::vector<std::vector<int>> mono = {
        {1, 2, 5}, {1, 2, 6}, {1, 3, 5}, {1, 3, 6}, {1, 4, 5}, {1, 5, 6}, {2, 3, 5},
        {2, 4, 5}, {2, 4, 6}, {2, 5, 6}, {3, 4, 5}, {3, 4, 6}, {3, 5, 6}, {4, 5, 6}};
    for (std::size_t i = 0; i < mono.size(); ++i) CHECK(gens1[i] == KForm::basis_elt(mono[i], 6));
}

TEST_CASE("closed and exact form counts reproduce every Betti number") {
    std::vector<LieAlg> algs = catalog_instances();
    for (auto& g : algs) {
        for (int k = 0; k <= 6; ++k) {
            auto closed = closed_forms(g, k);
            auto exact = exact_forms(g, k);
            for (auto& f : closed) CHECK(g.d(f).is_zero());
            for (auto& w : exact) {
                CHECK(g.d(w.primitive) == w.form);
                CHECK(g.d(w.form).is_zero());
            }
            CHECK(betti(g, k) ==
                  static_cast<int>(closed.size()) - static_cast<int>(exact.size()));
        }
    }
}

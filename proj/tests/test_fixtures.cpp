#include "doctest.h"
#include "sv/fixtures.hpp"
#include "sv/formexpr.hpp"
#include <cstdlib>
#include <map>

using namespace sv;

namespace {

std::string data_file(const char* name) {
    return std::string(SV_TEST_DATA_DIR) + "/" + name;
}

std::vector<AlgebraFixture> all_rows() {
    auto rows = load_fixtures(data_file("table1.json"));
    auto more = load_fixtures(data_file("table2.json"));
    rows.insert(rows.end(), more.begin(), more.end());
    return rows;
}

// Parses a tuple over the row's parameter table and binds the recommended
// instance values.
LieAlg bound(const std::string& label, const std::string& text, const AlgebraFixture& f) {
    LieAlg g = LieAlg::parse(label, text, f.table);
    if (f.params.empty()) return g;
    std::map<std::string, GaussRat> values;
    for (const auto& p : f.params) values[p.name] = GaussRat(p.instance);
    return g.instantiate(values);
}

} // namespace

TEST_CASE("the catalog loads and every tuple string round-trips verbatim") {
    auto decomposable = load_fixtures(data_file("table1.json"));
    auto indecomposable = load_fixtures(data_file("table2.json"));
    REQUIRE(decomposable.size() == 29);
    REQUIRE(indecomposable.size() == 58);

    for (const auto* rows : {&decomposable, &indecomposable})
        for (const auto& f : *rows) {
            CAPTURE(f.label);
            CHECK(f.algebra().str() == f.equations);
            for (const auto& s : f.factors)
                CHECK(LieAlg::parse("factor", s, f.table).str() == s);
        }

    // factor tuples appear exactly on the decomposable side
    for (const auto& f : decomposable) CHECK(f.factors.size() == 2);
    for (const auto& f : indecomposable) CHECK(f.factors.empty());
}

TEST_CASE("every catalogued algebra satisfies the Jacobi identity, also off the recommended instance") {
    Rng rng(0);
    for (const auto& f : all_rows()) {
        CAPTURE(f.label);
        LieAlg g = f.algebra();
        CHECK(jacobi_check(g).ok); // identically in the parameters

        for (int trial = 0; trial < 5 && !f.params.empty(); ++trial) {
            std::map<std::string, GaussRat> values;
            for (const auto& p : f.params) values[p.name] = GaussRat(rng.nonzero_rat());
            CHECK(jacobi_check(g.instantiate(values)).ok);
        }
    }
}

TEST_CASE("every catalogued algebra is unimodular") {
    for (const auto& f : all_rows()) {
        CAPTURE(f.label);
        auto report = unimodular_check(f.algebra());
        CHECK(report.ok);
        CHECK(betti(f.instance(), 6) == 1);
    }
}

TEST_CASE("every catalogued algebra carries at least a plane of closed 3-form classes") {
    for (const auto& f : all_rows()) {
        CAPTURE(f.label);
        CHECK(betti(f.instance(), 3) >= 2);
    }
}

TEST_CASE("decomposable rows rebuild from their factors, with matching Kunneth count") {
    for (const auto& f : load_fixtures(data_file("table1.json"))) {
        CAPTURE(f.label);
        REQUIRE(f.factors.size() == 2);

        LieAlg left = LieAlg::parse("left", f.factors[0], f.table);
        LieAlg right = LieAlg::parse("right", f.factors[1], f.table);
        CHECK(left.dim() + right.dim() == 6);
        CHECK(same_structure(direct_sum("sum", left, right), f.algebra()));

        LieAlg leftInst = bound("left", f.factors[0], f);
        LieAlg rightInst = bound("right", f.factors[1], f);
        CHECK(kunneth_b3(leftInst, rightInst) == betti(f.instance(), 3));
    }
}

TEST_CASE("published trivializing forms are closed, type (3,0), and have nonzero volume") {
    int admitting = 0;
    for (const auto& f : all_rows()) {
        CAPTURE(f.label);
        CHECK(f.has_closed_30_form == !f.psi.empty());
        if (f.psi.empty()) continue;
        ++admitting;

        LieAlg g = f.algebra();
        KForm psi = parse_form(f.psi, f.table);
        REQUIRE(psi.grade() == 3);
        CHECK(g.d(psi).is_zero()); // closed identically in the parameters
        KForm volume = wedge(psi, psi.conj());
        REQUIRE(volume.grade() == 6);
        CHECK_FALSE(volume.is_zero());
    }
    CHECK(admitting == 9);
}

TEST_CASE("nonnegative-lambda flags never sit on an admitting row") {
    int flagged = 0;
    for (const auto& f : all_rows()) {
        CAPTURE(f.label);
        if (!f.lambda_nonneg) continue;
        ++flagged;
        CHECK(*f.lambda_nonneg);
        CHECK_FALSE(f.has_closed_30_form);
    }
    CHECK(flagged == 21);
}

TEST_CASE("the data directory honors the environment override") {
    setenv("SOLVFORM_DATA_DIR", "/nonexistent/override", 1);
    CHECK(default_data_dir() == "/nonexistent/override");
    unsetenv("SOLVFORM_DATA_DIR");
    CHECK(default_data_dir() == SV_TEST_DATA_DIR);
    CHECK(load_fixtures(default_data_dir() + "/table1.json").size() == 29);
}

#pragma once
#include "sv/liealg.hpp"
#include <optional>
#include <string>
#include <vector>

namespace sv {

struct FixtureParam {
    std::string name;
    Rat instance;      // representative value inside the allowed range
    std::string range; // human-readable constraint, informational
};

// One classification-table record: structure equations in tuple notation plus
// the published verdict columns.
struct AlgebraFixture {
    std::string label;
    std::string equations;
    std::vector<FixtureParam> params;
    std::vector<std::string> factors; // decomposable rows: the two summands
    bool has_closed_30_form = false;
    std::string psi;                   // closed (3,0)-form, empty when none exists
    std::optional<bool> lambda_nonneg; // every closed 3-form has lambda >= 0
    ParamTablePtr table;               // shared context for equations, factors and psi

    LieAlg algebra() const;  // symbolic
    LieAlg instance() const; // parameters bound to their representative values
};

std::vector<AlgebraFixture> load_fixtures(const std::string& path);

// Directory holding the shipped fixture files: the SOLVFORM_DATA_DIR
// environment variable when set, else the build-time default.
std::string default_data_dir();

} // namespace sv

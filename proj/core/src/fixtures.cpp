#include "sv/fixtures.hpp"
#include <json.hpp>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace sv {

LieAlg AlgebraFixture::algebra() const { return LieAlg::parse(label, equations, table); }

LieAlg AlgebraFixture::instance() const {
    LieAlg g = algebra();
    if (params.empty()) return g;
    std::map<std::string, GaussRat> values;
    for (const auto& p : params) values[p.name] = GaussRat(p.instance);
    return g.instantiate(values);
}

namespace {

Rat parse_rat(const std::string& text) {
    Rat q;
    if (q.set_str(text, 10) != 0)
        throw std::runtime_error("bad rational literal '" + text + "'");
    q.canonicalize();
    return q;
}

} // namespace

std::vector<AlgebraFixture> load_fixtures(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open fixture file " + path);
    nlohmann::json doc = nlohmann::json::parse(in);

    std::vector<AlgebraFixture> rows;
    for (const auto& r : doc.at("rows")) {
        AlgebraFixture f;
        f.label = r.at("label").get<std::string>();
        f.equations = r.at("equations").get<std::string>();
        for (const auto& p : r.value("params", nlohmann::json::array()))
            f.params.push_back({p.at("name").get<std::string>(),
                                parse_rat(p.at("instance").get<std::string>()),
                                p.value("range", std::string())});
        for (const auto& s : r.value("factors", nlohmann::json::array()))
            f.factors.push_back(s.get<std::string>());
        const auto& expected = r.at("expected");
        f.has_closed_30_form = expected.at("has_closed_30_form").get<bool>();
        f.psi = expected.value("psi", std::string());
        if (expected.contains("lambda_nonneg"))
            f.lambda_nonneg = expected.at("lambda_nonneg").get<bool>();
        if (!f.params.empty()) {
            auto t = std::make_shared<ParamTable>();
            for (const auto& p : f.params) t->declare_real(p.name);
            f.table = t;
        }
        rows.push_back(std::move(f));
    }
    return rows;
}

std::string default_data_dir() {
    if (const char* env = std::getenv("SOLVFORM_DATA_DIR")) return env;
    return SOLVFORM_DATA_DIR;
}

} // namespace sv

#include "sv/cplx.hpp"
#include "sv/fixtures.hpp"
#include "sv/formexpr.hpp"
#include <json.hpp>
#include <fstream>
#include <stdexcept>

namespace sv {

namespace {

constexpr int kDim = 6;
constexpr int kGens = 3;

Poly monomial_poly(const Monomial& m, const GaussRat& c, const ParamTablePtr& ctx) {
    Poly out = Poly::constant(c, ctx);
    for (const auto& [name, e] : m) out *= Poly::var(name, ctx, e);
    return out;
}

// sum_k p_k u^k -> sum_k p_k q^{K-k}; zero iff p is zero in the localization
// at q, because the coefficient ring is a domain and q u == 1 there.
Poly clear_inverse(const Poly& p, const std::string& u, const Poly& q) {
    int top = 0;
    for (const auto& [m, c] : p.terms())
        for (const auto& [name, e] : m)
            if (name == u) top = std::max(top, e);
    if (top == 0) return p;
    std::vector<Poly> powq(static_cast<std::size_t>(top) + 1, Poly(1));
    for (int k = 1; k <= top; ++k)
        powq[static_cast<std::size_t>(k)] = powq[static_cast<std::size_t>(k) - 1] * q;
    Poly out;
    for (const auto& [m, c] : p.terms()) {
        int k = 0;
        Monomial rest;
        for (const auto& [name, e] : m) {
            if (name == u) k = e;
            else rest.emplace_back(name, e);
        }
        out += monomial_poly(rest, c, p.ctx() ? p.ctx() : q.ctx()) * powq[static_cast<std::size_t>(top - k)];
    }
    return out;
}

bool reduces_with(const std::vector<InverseRelation>& inverses, const ParamTablePtr& table, const Poly& p) {
    Poly r = p;
    for (const auto& rel : inverses) {
        r = clear_inverse(r, rel.name, rel.base);
        const ParamInfo* info = table ? table->find(rel.name) : nullptr;
        if (info && info->kind != ParamKind::Real)
            r = clear_inverse(r, info->partner, rel.base.conj());
    }
    return r.is_zero();
}

std::pair<int, int> tuple_bidegree(const std::vector<int>& t) {
    int p = 0, q = 0;
    for (int i : t) (i <= kGens ? p : q)++;
    return {p, q};
}

// Replaces basis index a by repl[a-1]; the replacement forms fix the output
// basis, so this also lowers a complex frame onto a real one.
KForm apply_frame(const KForm& f, const std::vector<KForm>& repl) {
    const BasisKind ob = repl.front().basis();
    const int on = repl.front().n();
    KForm out(f.grade(), on, ob);
    for (const auto& [t, c] : f.comps()) {
        KForm term(0, on, ob);
        term.add_term({}, c);
        for (int a : t) term = wedge(term, repl.at(static_cast<std::size_t>(a) - 1));
        out += term;
    }
    return out;
}

Matrix<Poly> drop_cross(const Matrix<Poly>& m, std::size_t r, std::size_t c) {
    Matrix<Poly> out;
    out.reserve(m.size() - 1);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i == r) continue;
        std::vector<Poly> row;
        row.reserve(m.size() - 1);
        for (std::size_t j = 0; j < m.size(); ++j)
            if (j != c) row.push_back(m[i][j]);
        out.push_back(std::move(row));
    }
    return out;
}

// Cofactor expansion: division free, so it stays valid when the coefficients
// live in a quotient ring where exact division is not available.
Poly det_cofactor(const Matrix<Poly>& m) {
    if (m.size() == 1) return m[0][0];
    Poly out;
    int sign = 1;
    for (std::size_t j = 0; j < m.size(); ++j, sign = -sign) {
        if (m[0][j].is_zero()) continue;
        Poly term = m[0][j] * det_cofactor(drop_cross(m, 0, j));
        out += sign > 0 ? term : -term;
    }
    return out;
}

} // namespace

ComplexStructureEquations::ComplexStructureEquations(std::string label, std::vector<KForm> diffs,
                                                     ParamTablePtr params,
                                                     std::vector<InverseRelation> inverses)
    : label_(std::move(label)), d_(std::move(diffs)), params_(std::move(params)), inv_(std::move(inverses)) {
    if (d_.size() != kGens)
        throw std::invalid_argument("ComplexStructureEquations: expected three differentials");
    for (auto& f : d_) {
        if (f.is_zero()) {
            f = KForm(2, kDim, BasisKind::Complex);
            continue;
        }
        if (f.basis() != BasisKind::Complex || f.n() != kDim || f.grade() != 2)
            throw std::invalid_argument("ComplexStructureEquations: differentials must be 2-forms over the complex basis");
    }
}

bool ComplexStructureEquations::is_constant() const {
    for (const auto& f : d_)
        for (const auto& [t, c] : f.comps())
            if (!c.is_constant()) return false;
    return true;
}

KForm ComplexStructureEquations::d(const KForm& f) const {
    if (!f.is_zero() && f.basis() != BasisKind::Complex)
        throw std::invalid_argument("ComplexStructureEquations::d: complex basis required");
    if (!f.is_zero() && f.n() != kDim)
        throw std::invalid_argument("ComplexStructureEquations::d: dimension mismatch");
    std::vector<KForm> gen(kDim);
    for (int k = 0; k < kGens; ++k) {
        gen[static_cast<std::size_t>(k)] = d_[static_cast<std::size_t>(k)];
        gen[static_cast<std::size_t>(k) + kGens] = d_[static_cast<std::size_t>(k)].conj();
    }
    KForm out(f.grade() + 1, kDim, BasisKind::Complex);
    for (const auto& [t, c] : f.comps()) {
        for (std::size_t j = 0; j < t.size(); ++j) {
            std::vector<int> rest;
            rest.reserve(t.size() - 1);
            for (std::size_t m = 0; m < t.size(); ++m)
                if (m != j) rest.push_back(t[m]);
            KForm piece = wedge(gen[static_cast<std::size_t>(t[j]) - 1],
                                KForm::basis_elt(rest, kDim, BasisKind::Complex));
            out += piece.scaled(j % 2 ? -c : c);
        }
    }
    return out;
}

bool ComplexStructureEquations::integrable() const {
    for (const auto& f : d_)
        for (const auto& [t, c] : f.comps())
            if (tuple_bidegree(t).first == 0) return false;
    return true;
}

bool ComplexStructureEquations::reduces_to_zero(const Poly& p) const {
    return reduces_with(inv_, params_, p);
}

bool ComplexStructureEquations::reduces_to_zero(const KForm& f) const {
    for (const auto& [t, c] : f.comps())
        if (!reduces_to_zero(c)) return false;
    return true;
}

bool ComplexStructureEquations::equivalent_to(const ComplexStructureEquations& o) const {
    if (params_ != o.params_)
        throw std::invalid_argument("equivalent_to: equations live over different parameter tables");
    std::vector<InverseRelation> merged = inv_;
    for (const auto& rel : o.inv_) {
        bool seen = false;
        for (const auto& mine : merged) seen = seen || mine.name == rel.name;
        if (!seen) merged.push_back(rel);
    }
    for (int i = 0; i < kGens; ++i) {
        KForm diff = d_[static_cast<std::size_t>(i)] - o.d_[static_cast<std::size_t>(i)];
        for (const auto& [t, c] : diff.comps())
            if (!reduces_with(merged, params_, c)) return false;
    }
    return true;
}

BigradedDifferential d_bigraded(const ComplexStructureEquations& eqs, const KForm& f, bool split) {
    BigradedDifferential out{eqs.d(f), KForm(f.grade() + 1, kDim, BasisKind::Complex),
                             KForm(f.grade() + 1, kDim, BasisKind::Complex)};
    if (!split) return out;
    if (!eqs.integrable())
        throw std::domain_error("d_bigraded: equations are not integrable; request the unsplit differential");
    for (const auto& [t, c] : f.comps()) {
        auto [p, q] = tuple_bidegree(t);
        KForm piece = eqs.d(KForm::basis_elt(t, kDim, BasisKind::Complex, c));
        for (const auto& [t2, c2] : piece.comps()) {
            // integrability leaves exactly the (p+1,q) and (p,q+1) targets
            if (tuple_bidegree(t2).first == p + 1) out.del.add_term(t2, c2);
            else out.delBar.add_term(t2, c2);
        }
    }
    return out;
}

StructureCheck integrability_and_volume_check(const ComplexStructureEquations& eqs) {
    StructureCheck r;
    r.integrable = eqs.integrable();
    r.dOmega123Zero = eqs.reduces_to_zero(eqs.d(KForm::basis_elt({1, 2, 3}, kDim, BasisKind::Complex)));
    for (int i = 1; i <= kGens; ++i) {
        KForm dd = eqs.d(eqs.d1(i));
        for (const auto& [t, c] : dd.comps())
            if (!eqs.reduces_to_zero(c)) r.jacobiResidual.push_back(c);
    }
    return r;
}

ComplexStructureEquations basis_change(const ComplexStructureEquations& eqs, const FrameChange& change,
                                       const std::string& newLabel) {
    auto shape_ok = [](const Matrix<Poly>& m) {
        if (m.size() != kGens) return false;
        for (const auto& row : m)
            if (row.size() != kGens) return false;
        return true;
    };
    if (!shape_ok(change.holo) || (!change.anti.empty() && !shape_ok(change.anti)))
        throw std::invalid_argument("basis_change: holo and anti must be 3x3");

    Matrix<Poly> frame(kDim, std::vector<Poly>(kDim));
    for (int i = 0; i < kGens; ++i)
        for (int j = 0; j < kGens; ++j) {
            const Poly& h = change.holo[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            Poly a = change.anti.empty() ? Poly() : change.anti[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            frame[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = h;
            frame[static_cast<std::size_t>(i)][static_cast<std::size_t>(j) + kGens] = a;
            frame[static_cast<std::size_t>(i) + kGens][static_cast<std::size_t>(j)] = a.conj();
            frame[static_cast<std::size_t>(i) + kGens][static_cast<std::size_t>(j) + kGens] = h.conj();
        }

    Poly det = det_cofactor(frame);
    Poly detInv = change.detInverse;
    if (detInv.is_zero()) {
        if (!det.is_constant())
            throw std::domain_error("basis_change: nonconstant determinant needs a declared detInverse");
        GaussRat c = det.constant_value();
        if (c.is_zero()) throw std::domain_error("basis_change: frame is singular");
        detInv = Poly::constant(GaussRat(Rat(1)) / c, eqs.params());
    } else if (!eqs.reduces_to_zero(det * detInv - Poly(1))) {
        throw std::invalid_argument("basis_change: detInverse does not invert the frame determinant");
    }

    // old frame in the new one: w^{m+1} = sum_l inv[m][l] eta^{l+1}, with
    // inv = adjugate * detInverse so everything stays polynomial.
    std::vector<KForm> repl(kDim);
    for (int m = 0; m < kDim; ++m) {
        KForm g(1, kDim, BasisKind::Complex);
        for (int l = 0; l < kDim; ++l) {
            Poly cof = det_cofactor(drop_cross(frame, static_cast<std::size_t>(l), static_cast<std::size_t>(m)));
            if ((l + m) % 2) cof = -cof;
            Poly entry = cof * detInv;
            if (!entry.is_zero()) g.add_term({l + 1}, entry);
        }
        repl[static_cast<std::size_t>(m)] = std::move(g);
    }

    std::vector<KForm> diffs;
    diffs.reserve(kGens);
    for (int i = 0; i < kGens; ++i) {
        KForm acc(2, kDim, BasisKind::Complex);
        for (int k = 0; k < kDim; ++k) {
            const Poly& c = frame[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
            if (c.is_zero()) continue;
            KForm dk = k < kGens ? eqs.d1(k + 1) : eqs.d1(k - kGens + 1).conj();
            acc += dk.scaled(c);
        }
        diffs.push_back(apply_frame(acc, repl));
    }
    return ComplexStructureEquations(newLabel.empty() ? eqs.label() + "'" : newLabel, std::move(diffs),
                                     eqs.params(), eqs.inverses());
}

ComplexStructureEquations instantiate(const ComplexStructureEquations& eqs,
                                      const std::map<std::string, GaussRat>& point,
                                      const std::string& newLabel) {
    const ParamTablePtr& table = eqs.params();
    std::map<std::string, Poly> bind;
    std::map<std::string, GaussRat> full;
    for (const auto& [name, val] : point) {
        const ParamInfo* info = table ? table->find(name) : nullptr;
        if (!info) throw std::invalid_argument("instantiate: unknown parameter '" + name + "'");
        if (info->kind == ParamKind::Real && !val.is_real())
            throw std::invalid_argument("instantiate: parameter '" + name + "' takes real values");
        bind[name] = Poly::constant(val, table);
        full[name] = val;
        if (info->kind != ParamKind::Real) {
            bind[info->partner] = Poly::constant(val.conj(), table);
            full[info->partner] = val.conj();
        }
    }
    if (table)
        for (const auto& rw : table->rewrites()) {
            auto ix = full.find(rw.x);
            auto iy = full.find(rw.y);
            if (ix == full.end() || iy == full.end()) continue;
            if (!(ix->second * iy->second == GaussRat(rw.value)))
                throw std::invalid_argument("instantiate: point violates the rewrite " + rw.x + "*" + rw.y);
        }
    for (const auto& rel : eqs.inverses()) {
        auto it = full.find(rel.name);
        if (it == full.end())
            throw std::invalid_argument("instantiate: inverse parameter '" + rel.name + "' not bound");
        if (!(rel.base.eval(full) * it->second == GaussRat(Rat(1))))
            throw std::invalid_argument("instantiate: point violates the inverse relation of '" + rel.name + "'");
    }
    std::vector<KForm> diffs;
    diffs.reserve(kGens);
    for (int i = 1; i <= kGens; ++i) {
        KForm f = eqs.d1(i).subst(bind);
        for (const auto& [t, c] : f.comps())
            if (!c.is_constant())
                throw std::invalid_argument("instantiate: parameter '" + c.param_names().front() + "' left unbound");
        diffs.push_back(std::move(f));
    }
    return ComplexStructureEquations(newLabel.empty() ? eqs.label() : newLabel, std::move(diffs), table, {});
}

RealizedAlgebra realize(const ComplexStructureEquations& eqs, const Matrix<GaussRat>& frame,
                        const std::string& algebraLabel) {
    if (!eqs.is_constant())
        throw std::invalid_argument("realize: equations must be instantiated first");
    if (frame.size() != kGens)
        throw std::invalid_argument("realize: frame must be 3x6");
    for (const auto& row : frame)
        if (row.size() != kDim) throw std::invalid_argument("realize: frame must be 3x6");

    Matrix<GaussRat> split(kDim, std::vector<GaussRat>(kDim));
    for (int i = 0; i < kGens; ++i)
        for (int j = 0; j < kDim; ++j) {
            split[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                frame[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            split[static_cast<std::size_t>(i) + kGens][static_cast<std::size_t>(j)] =
                frame[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].conj();
        }

    Matrix<GaussRat> aug = split;
    for (int i = 0; i < kDim; ++i) {
        aug[static_cast<std::size_t>(i)].resize(2 * kDim);
        aug[static_cast<std::size_t>(i)][static_cast<std::size_t>(kDim + i)] = GaussRat(Rat(1));
    }
    std::vector<int> pivots;
    rref(aug, pivots);
    if (pivots.size() < kDim || pivots.back() != kDim - 1)
        throw std::domain_error("realize: splitting frame is singular");

    std::vector<KForm> wOverE(kDim);
    for (int m = 0; m < kDim; ++m) {
        KForm g(1, kDim, BasisKind::Real);
        for (int j = 0; j < kDim; ++j) {
            const GaussRat& c = split[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)];
            if (!c.is_zero()) g.add_term({j + 1}, Poly::constant(c));
        }
        wOverE[static_cast<std::size_t>(m)] = std::move(g);
    }

    std::vector<KForm> diffs(kDim);
    for (int j = 0; j < kDim; ++j) {
        KForm dej(2, kDim, BasisKind::Real);
        for (int k = 0; k < kDim; ++k) {
            const GaussRat& c = aug[static_cast<std::size_t>(j)][static_cast<std::size_t>(kDim + k)];
            if (c.is_zero()) continue;
            KForm dk = k < kGens ? eqs.d1(k + 1) : eqs.d1(k - kGens + 1).conj();
            dej += apply_frame(dk, wOverE).scaled(c);
        }
        // conjugation symmetry of the split rows keeps these real
        for (const auto& [t, c] : dej.comps())
            if (!c.constant_value().is_real())
                throw std::domain_error("realize: non-real structure constants");
        diffs[static_cast<std::size_t>(j)] = std::move(dej);
    }

    LieAlg g(algebraLabel, std::move(diffs));
    JacobiReport jac = jacobi_check(g);
    if (!jac.ok)
        throw std::domain_error("realize: recovered equations violate the Jacobi identity at e" +
                                std::to_string(jac.witness));
    return {std::move(g), frame};
}

std::string equations_text(const ComplexStructureEquations& eqs) {
    std::string out;
    for (int i = 1; i <= kGens; ++i) {
        if (i > 1) out += "; ";
        out += "dw" + std::to_string(i) + " = " + eqs.d1(i).str();
    }
    return out;
}

ComplexStructureEquations equations_from_text(const std::string& label, const std::string& text,
                                              ParamTablePtr params, std::vector<InverseRelation> inverses) {
    std::vector<KForm> diffs;
    std::size_t start = 0;
    for (int i = 1; i <= kGens; ++i) {
        std::size_t end = i < kGens ? text.find(';', start) : text.size();
        if (end == std::string::npos)
            throw ParseError("expected three equations separated by ';'", text.size());
        const std::string head = "dw" + std::to_string(i);
        std::size_t p = text.find_first_not_of(" \t\n", start);
        if (p == std::string::npos || p + head.size() > end || text.compare(p, head.size(), head) != 0)
            throw ParseError("expected '" + head + "'", p == std::string::npos ? start : p);
        p = text.find_first_not_of(" \t", p + head.size());
        if (p == std::string::npos || p >= end || text[p] != '=')
            throw ParseError("expected '=' after " + head, p == std::string::npos ? end : p);
        ++p;
        KForm f;
        try {
            f = parse_form(text.substr(p, end - p), params, kDim, BasisKind::Complex);
        } catch (const ParseError& pe) {
            std::string msg = pe.what();
            auto cut = msg.rfind(" at position ");
            if (cut != std::string::npos) msg.resize(cut);
            throw ParseError(head + ": " + msg, p + pe.pos);
        }
        if (!f.is_zero() && f.grade() != 2)
            throw ParseError(head + ": expected a 2-form", p);
        diffs.push_back(std::move(f));
        start = end + 1;
    }
    return ComplexStructureEquations(label, std::move(diffs), std::move(params), std::move(inverses));
}

namespace {

GaussRat parse_value(const std::string& text, const ParamTablePtr& table) {
    return Poly::parse(text, table).constant_value();
}

CatalogStage parse_stage(const std::string& s) {
    if (s == "reduced") return CatalogStage::Reduced;
    if (s == "generic") return CatalogStage::Generic;
    if (s == "deformation") return CatalogStage::Deformation;
    throw std::runtime_error("unknown catalog stage '" + s + "'");
}

// base == one bare variable: its inverse participates in normalization as a
// unit-product rewrite, so those denominators cancel syntactically.
std::optional<std::string> single_variable(const Poly& p) {
    if (p.term_count() != 1) return std::nullopt;
    const auto& [m, c] = *p.terms().begin();
    if (m.size() != 1 || m[0].second != 1 || !(c == GaussRat(Rat(1)))) return std::nullopt;
    return m[0].first;
}

} // namespace

std::vector<CatalogEntry> load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open catalog file " + path);
    nlohmann::json doc = nlohmann::json::parse(in);

    std::vector<CatalogEntry> out;
    for (const auto& e : doc.at("entries")) {
        auto table = std::make_shared<ParamTable>();
        for (const auto& p : e.value("params", nlohmann::json::array())) {
            std::string name = p.at("name").get<std::string>();
            std::string kind = p.at("kind").get<std::string>();
            if (kind == "real") table->declare_real(name);
            else if (kind == "complex") table->declare_complex(name);
            else throw std::runtime_error("unknown parameter kind '" + kind + "'");
            if (p.value("unitModulus", false)) table->add_unit_modulus(name);
        }
        struct RawInverse {
            std::string name, kind, base;
        };
        std::vector<RawInverse> raw;
        for (const auto& v : e.value("inverses", nlohmann::json::array())) {
            RawInverse r{v.at("name").get<std::string>(), v.at("kind").get<std::string>(),
                         v.at("base").get<std::string>()};
            if (r.kind == "real") table->declare_real(r.name);
            else if (r.kind == "complex") table->declare_complex(r.name);
            else throw std::runtime_error("unknown parameter kind '" + r.kind + "'");
            raw.push_back(std::move(r));
        }
        std::vector<InverseRelation> inverses;
        for (const auto& r : raw) {
            Poly base = Poly::parse(r.base, table);
            if (auto x = single_variable(base)) {
                table->add_unit_product(*x, r.name);
                if (table->find(r.name)->kind != ParamKind::Real)
                    table->add_unit_product(table->conj_name(*x), table->conj_name(r.name));
            }
            inverses.push_back({r.name, std::move(base)});
        }

        ComplexStructureEquations eqs = equations_from_text(
            e.at("name").get<std::string>(), e.at("equations").get<std::string>(), table, inverses);
        CatalogEntry entry{std::move(eqs),
                           parse_stage(e.at("stage").get<std::string>()),
                           e.value("algebra", std::string()),
                           e.value("parameterNotes", std::string()),
                           e.value("equivalenceNotes", std::string()),
                           {},
                           std::nullopt};
        for (const auto& s : e.value("sideConditions", nlohmann::json::array()))
            entry.sideConditions.push_back(Poly::parse(s.get<std::string>(), table));
        if (e.contains("realization")) {
            const auto& r = e.at("realization");
            CatalogRealization rz;
            rz.algebra = r.at("algebra").get<std::string>();
            for (const auto& [k, v] : r.value("point", nlohmann::json::object()).items())
                rz.point[k] = parse_value(v.get<std::string>(), table);
            for (const auto& [k, v] : r.value("algebraPoint", nlohmann::json::object()).items())
                rz.algebraPoint[k] = parse_value(v.get<std::string>(), nullptr);
            for (const auto& row : r.at("frame")) {
                std::vector<GaussRat> vals;
                for (const auto& s : row) vals.push_back(parse_value(s.get<std::string>(), nullptr));
                if (vals.size() != kDim) throw std::runtime_error("realization frame rows must have six entries");
                rz.frame.push_back(std::move(vals));
            }
            if (rz.frame.size() != kGens) throw std::runtime_error("realization frame must be 3x6");
            entry.realization = std::move(rz);
        }
        out.push_back(std::move(entry));
    }
    return out;
}

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = load_catalog(default_data_dir() + "/catalog.json");
    return entries;
}

} // namespace sv

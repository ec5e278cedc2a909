#include "sv/liealg.hpp"
#include "sv/bareiss.hpp"
#include "sv/formexpr.hpp"
#include <cctype>
#include <functional>
#include <stdexcept>

namespace sv {
namespace {

// Ascending k-element tuples out of 1..n; k = 0 yields the empty tuple.
std::vector<std::vector<int>> tuples(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur;
    cur.reserve(static_cast<std::size_t>(k));
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v <= n; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(1);
    return out;
}

long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::optional<Rat> real_constant(const Poly& p) {
    if (p.is_zero()) return Rat(0);
    if (!p.is_constant()) return std::nullopt;
    GaussRat c = p.constant_value();
    if (!c.is_real()) return std::nullopt;
    return c.re;
}

std::vector<Rat> component_row(const KForm& f,
                               const std::map<std::vector<int>, std::size_t>& index,
                               std::size_t width) {
    std::vector<Rat> row(width, Rat(0));
    for (auto& [t, c] : f.comps()) {
        auto rc = real_constant(c);
        if (!rc) throw std::invalid_argument("cohomology requires an instantiated algebra");
        row[index.at(t)] = *rc;
    }
    return row;
}

// Matrix of d : forms of the given grade -> grade+1, columns and rows indexed
// by ascending tuples. Always at least one row so the column count survives.
Matrix<Rat> d_matrix(const LieAlg& g, int grade) {
    auto cols = tuples(g.dim(), grade);
    auto rows = tuples(g.dim(), grade + 1);
    std::map<std::vector<int>, std::size_t> rowIndex;
    for (std::size_t r = 0; r < rows.size(); ++r) rowIndex[rows[r]] = r;
    Matrix<Rat> m(std::max<std::size_t>(rows.size(), 1),
                  std::vector<Rat>(cols.size(), Rat(0)));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        KForm df = g.d(KForm::basis_elt(cols[c], g.dim(), BasisKind::Real));
        auto row = component_row(df, rowIndex, rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) m[r][c] = row[r];
    }
    return m;
}

} // namespace

LieAlg::LieAlg(std::string label, std::vector<KForm> diffs, ParamTablePtr params)
    : label_(std::move(label)),
      n_(static_cast<int>(diffs.size())),
      d1_(std::move(diffs)),
      params_(std::move(params)) {
    if (n_ == 0) throw std::invalid_argument("LieAlg: empty tuple");
    for (auto& f : d1_) {
        if (f.is_zero()) {
            f = KForm(2, n_, BasisKind::Real);
            continue;
        }
        if (f.basis() != BasisKind::Real)
            throw std::invalid_argument("LieAlg: structure equations use the real basis");
        if (f.grade() != 2)
            throw std::invalid_argument("LieAlg: each component must be a 2-form");
        if (f.n() != n_)
            throw std::invalid_argument("LieAlg: component dimension mismatch");
    }
}

LieAlg LieAlg::parse(const std::string& label, const std::string& text, ParamTablePtr params) {
    std::size_t open = text.find('(');
    std::size_t close = text.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw ParseError("expected a parenthesized tuple", 0);
    for (std::size_t i = 0; i < open; ++i)
        if (!std::isspace(static_cast<unsigned char>(text[i])))
            throw ParseError("unexpected text before tuple", i);
    for (std::size_t i = close + 1; i < text.size(); ++i)
        if (!std::isspace(static_cast<unsigned char>(text[i])))
            throw ParseError("unexpected text after tuple", i);

    std::vector<std::pair<std::string, std::size_t>> comps; // text, offset
    int depth = 0;
    std::size_t start = open + 1;
    for (std::size_t i = open + 1; i < close; ++i) {
        char c = text[i];
        if (c == '(' || c == '{')
            ++depth;
        else if (c == ')' || c == '}')
            --depth;
        else if (c == ',' && depth == 0) {
            comps.emplace_back(text.substr(start, i - start), start);
            start = i + 1;
        }
    }
    comps.emplace_back(text.substr(start, close - start), start);

    int n = static_cast<int>(comps.size());
    std::vector<KForm> diffs;
    diffs.reserve(comps.size());
    for (int k = 1; k <= n; ++k) {
        auto& [ctext, off] = comps[static_cast<std::size_t>(k) - 1];
        KForm f;
        try {
            f = parse_form(ctext, params, n, BasisKind::Real);
        } catch (const ParseError& pe) {
            std::string msg = pe.what();
            auto cut = msg.rfind(" at position ");
            if (cut != std::string::npos) msg.resize(cut);
            throw ParseError("component " + std::to_string(k) + ": " + msg, off + pe.pos);
        }
        if (!f.is_zero() && f.grade() != 2)
            throw ParseError("component " + std::to_string(k) + ": expected a 2-form", off);
        diffs.push_back(std::move(f));
    }
    return LieAlg(label, std::move(diffs), std::move(params));
}

KForm LieAlg::d(const KForm& f) const {
    if (!f.is_zero() && f.basis() != BasisKind::Real)
        throw std::invalid_argument("LieAlg::d: real basis required");
    if (!f.is_zero() && f.n() != n_)
        throw std::invalid_argument("LieAlg::d: dimension mismatch");
    KForm out(f.grade() + 1, n_, BasisKind::Real);
    for (auto& [t, c] : f.comps()) {
        for (std::size_t j = 0; j < t.size(); ++j) {
            std::vector<int> rest;
            rest.reserve(t.size() - 1);
            for (std::size_t m = 0; m < t.size(); ++m)
                if (m != j) rest.push_back(t[m]);
            KForm piece = wedge(d1_[static_cast<std::size_t>(t[j]) - 1],
                                KForm::basis_elt(rest, n_, BasisKind::Real));
            out += piece.scaled(j % 2 ? -c : c);
        }
    }
    return out;
}

LieAlg LieAlg::instantiate(const std::map<std::string, GaussRat>& values,
                           std::string newLabel) const {
    std::map<std::string, Poly> bind;
    for (auto& [name, val] : values) {
        const ParamInfo* info = params_ ? params_->find(name) : nullptr;
        if (!info) throw std::invalid_argument("instantiate: unknown parameter '" + name + "'");
        if (info->kind == ParamKind::Real && !val.is_real())
            throw std::invalid_argument("instantiate: parameter '" + name + "' takes real values");
        bind[name] = Poly::constant(val, params_);
        if (info->kind != ParamKind::Real) bind[info->partner] = Poly::constant(val.conj(), params_);
    }
    std::vector<KForm> diffs;
    diffs.reserve(d1_.size());
    for (auto& f : d1_) diffs.push_back(f.subst(bind));
    return LieAlg(newLabel.empty() ? label_ : std::move(newLabel), std::move(diffs), params_);
}

bool LieAlg::is_constant() const {
    for (auto& f : d1_)
        for (auto& [t, c] : f.comps())
            if (!c.is_constant()) return false;
    return true;
}

std::string LieAlg::str() const {
    std::string out = "(";
    for (int k = 1; k <= n_; ++k) {
        if (k > 1) out += ",";
        out += d1_[static_cast<std::size_t>(k) - 1].str();
    }
    return out + ")";
}

bool same_structure(const LieAlg& a, const LieAlg& b) {
    if (a.dim() != b.dim()) return false;
    for (int k = 1; k <= a.dim(); ++k)
        if (a.d1(k) != b.d1(k)) return false;
    return true;
}

JacobiReport jacobi_check(const LieAlg& g) {
    for (int k = 1; k <= g.dim(); ++k) {
        KForm r = g.d(g.d1(k));
        if (!r.is_zero()) return {false, k, std::move(r)};
    }
    return {};
}

UnimodularReport unimodular_check(const LieAlg& g) {
    for (int i = 1; i <= g.dim(); ++i) {
        Poly tr;
        for (int k = 1; k <= g.dim(); ++k) {
            KForm w = contract(VectorElt::basis(k, g.dim()),
                               contract(VectorElt::basis(i, g.dim()), g.d1(k)));
            tr -= w.coeff({});
        }
        if (!tr.is_zero()) return {false, i, std::move(tr)};
    }
    return {};
}

int betti(const LieAlg& g, int k) {
    if (k < 0 || k > g.dim()) return 0;
    int r1 = rank_rational(d_matrix(g, k));
    int r0 = k == 0 ? 0 : rank_rational(d_matrix(g, k - 1));
    return static_cast<int>(binom(g.dim(), k)) - r1 - r0;
}

LieAlg direct_sum(const std::string& label, const LieAlg& a, const LieAlg& b) {
    ParamTablePtr params = a.params() ? a.params() : b.params();
    if (a.params() && b.params() && a.params() != b.params())
        throw std::invalid_argument("direct_sum: factors use distinct parameter tables");
    int n = a.dim() + b.dim();
    std::vector<KForm> diffs;
    diffs.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= a.dim(); ++k) {
        KForm f(2, n, BasisKind::Real);
        for (auto& [t, c] : a.d1(k).comps()) f.add_term(t, c);
        diffs.push_back(std::move(f));
    }
    for (int k = 1; k <= b.dim(); ++k) {
        KForm f(2, n, BasisKind::Real);
        for (auto& [t, c] : b.d1(k).comps()) {
            std::vector<int> shifted = t;
            for (int& x : shifted) x += a.dim();
            f.add_term(shifted, c);
        }
        diffs.push_back(std::move(f));
    }
    return LieAlg(label, std::move(diffs), std::move(params));
}

int kunneth_b3(const LieAlg& a, const LieAlg& b) {
    int s = 0;
    for (int i = 0; i <= 3; ++i) s += betti(a, i) * betti(b, 3 - i);
    return s;
}

std::vector<KForm> closed_forms(const LieAlg& g, int k) {
    auto cols = tuples(g.dim(), k);
    auto null = nullspace(d_matrix(g, k));
    std::vector<KForm> out;
    out.reserve(null.size());
    for (auto& v : null) {
        auto w = primitive_scaled(std::move(v));
        KForm f(k, g.dim(), BasisKind::Real);
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (w[c] != 0) f.add_term(cols[c], Poly(GaussRat(w[c]), g.params()));
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<ExactWitness> exact_forms(const LieAlg& g, int k) {
    auto rows = tuples(g.dim(), k);
    std::map<std::vector<int>, std::size_t> rowIndex;
    for (std::size_t r = 0; r < rows.size(); ++r) rowIndex[rows[r]] = r;
    Matrix<Rat> acc;
    std::vector<ExactWitness> out;
    for (auto& T : tuples(g.dim(), k - 1)) {
        KForm prim = KForm::basis_elt(T, g.dim(), BasisKind::Real);
        KForm df = g.d(prim);
        if (df.is_zero()) continue;
        Matrix<Rat> trial = acc;
        trial.push_back(component_row(df, rowIndex, rows.size()));
        if (rank_rational(trial) > static_cast<int>(acc.size())) {
            acc.push_back(std::move(trial.back()));
            out.push_back({std::move(df), std::move(prim)});
        }
    }
    return out;
}

} // namespace sv

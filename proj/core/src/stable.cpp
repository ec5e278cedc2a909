#include "sv/stable.hpp"
#include <stdexcept>
#include <string>

namespace sv {

namespace {

// Rebuilds a constant form over another declaration context so it can mix
// with polynomials from that context.
KForm retable(const KForm& f, const ParamTablePtr& ctx) {
    KForm out(f.grade(), f.n(), f.basis());
    for (const auto& [idx, c] : f.comps()) {
        if (!c.is_constant())
            throw std::domain_error("retable: form is not at a rational instance");
        out.add_term(idx, Poly::constant(c.constant_value(), ctx));
    }
    return out;
}

} // namespace

KForm dual_action(const Matrix<Poly>& m, const KForm& alpha) {
    if (alpha.grade() != 1) throw std::invalid_argument("dual_action: expected a 1-form");
    return derivation_action(m, alpha);
}

KForm derivation_action(const Matrix<Poly>& m, const KForm& f) {
    const int n = f.n();
    KForm out(f.grade(), n, f.basis());
    for (const auto& [idx, c] : f.comps()) {
        for (std::size_t s = 0; s < idx.size(); ++s) {
            const int a = idx[s];
            for (int j = 1; j <= n; ++j) {
                const Poly& coef = m[static_cast<std::size_t>(j) - 1][static_cast<std::size_t>(a) - 1];
                if (coef.is_zero()) continue;
                std::vector<int> t = idx;
                t[s] = j;
                out.add_term(t, coef * c);
            }
        }
    }
    return out;
}

KForm algebra_action(const Matrix<Poly>& m, const KForm& f) {
    const int n = f.n();
    KForm out(f.grade(), n, f.basis());
    for (const auto& [idx, c] : f.comps()) {
        KForm term(0, n, f.basis());
        term.add_term({}, c);
        for (int a : idx) {
            KForm img(1, n, f.basis());
            for (int j = 1; j <= n; ++j) {
                const Poly& coef = m[static_cast<std::size_t>(j) - 1][static_cast<std::size_t>(a) - 1];
                if (!coef.is_zero()) img.add_term({j}, coef);
            }
            term = wedge(term, img);
        }
        out += term;
    }
    return out;
}

StableFormAnalysis analyze(const LieAlg& g, const KForm& rho, const Rat& nuScale) {
    if (g.dim() != 6 || rho.n() != 6)
        throw std::invalid_argument("analyze: the construction is specific to dimension 6");
    if (rho.grade() != 3) throw std::invalid_argument("analyze: rho must be a 3-form");
    if (rho.basis() != BasisKind::Real)
        throw std::invalid_argument("analyze: rho must live on the real basis");
    if (sgn(nuScale) == 0) throw std::invalid_argument("analyze: the volume scale must be nonzero");

    // The algebra and the form may declare parameters in different tables as
    // long as one side is constant; rebuild that side on the other's table.
    ParamTablePtr rctx;
    for (const auto& [idx, c] : rho.comps())
        if (c.ctx()) { rctx = c.ctx(); break; }
    const LieAlg* alg = &g;
    std::optional<LieAlg> aligned;
    KForm rhoAligned;
    const KForm* rhoUse = &rho;
    if (g.params() && rctx && g.params() != rctx) {
        if (g.is_constant()) {
            std::vector<KForm> diffs;
            diffs.reserve(static_cast<std::size_t>(g.dim()));
            for (int k = 1; k <= g.dim(); ++k) diffs.push_back(retable(g.d1(k), rctx));
            aligned.emplace(g.label(), std::move(diffs), rctx);
            alg = &*aligned;
        } else {
            rhoAligned = retable(rho, g.params());
            rhoUse = &rhoAligned;
        }
    }

    StableFormAnalysis an;
    an.rho = *rhoUse;
    KForm nu = KForm::basis_elt({1, 2, 3, 4, 5, 6}, 6, BasisKind::Real,
                                Poly::constant(GaussRat(nuScale)));
    an.K.assign(6, std::vector<Poly>(6));
    for (int j = 1; j <= 6; ++j) {
        VectorElt kj = kappa(wedge(contract(VectorElt::basis(j, 6), an.rho), an.rho), nu);
        for (int i = 1; i <= 6; ++i)
            an.K[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j) - 1] = kj.coeff(i);
    }
    an.jTildeStar.assign(6, std::vector<Poly>(6));
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) an.jTildeStar[i][j] = an.K[j][i];

    an.traceJ2 = Poly();
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t k = 0; k < 6; ++k) an.traceJ2 += an.K[i][k] * an.K[k][i];
    an.lambda = an.traceJ2.scaled(GaussRat(Rat(1, 6)));

    // Alternated single-slot action, i.e. one third of the derivation
    // extension on 3-forms; the scale is part of the published convention.
    an.dJrho = alg->d(derivation_action(an.jTildeStar, an.rho).scaled(GaussRat(Rat(1, 3))));
    return an;
}

AlmostComplex almost_complex(const StableFormAnalysis& an) {
    if (!an.lambda.is_constant())
        throw std::domain_error("almost_complex: lambda is not constant; instantiate rho first");
    GaussRat lv = an.lambda.constant_value();
    if (!lv.is_real() || sgn(lv.re) >= 0)
        throw std::domain_error("almost_complex: needs lambda < 0 at the instance");
    Rat abs = -lv.re;

    AlmostComplex ac;
    Int num = abs.get_num(), den = abs.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
        Int rn, rd;
        mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
        Rat root(rn, rd);
        root.canonicalize();
        ac.root = Poly::constant(GaussRat(root));
    } else {
        auto field = std::make_shared<ParamTable>();
        field->declare_real("r");
        field->add_square_value("r", abs);
        ac.field = field;
        ac.root = Poly::var("r", ac.field);
    }

    // 1/root = root/abs lets every entry stay polynomial in the root symbol.
    Poly invRoot = ac.root.scaled(GaussRat(Rat(1) / abs));
    ac.J.assign(6, std::vector<Poly>(6));
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) {
            if (an.jTildeStar[i][j].is_zero()) continue;
            if (!an.jTildeStar[i][j].is_constant())
                throw std::domain_error("almost_complex: K is not constant; instantiate rho first");
            ac.J[i][j] = invRoot.scaled(an.jTildeStar[i][j].constant_value());
        }

    KForm rho = retable(an.rho, ac.field);
    ac.psi = rho + algebra_action(ac.J, rho).scaled(GaussRat::make_i());
    return ac;
}

AdmissibilityReport admissibility_report(const LieAlg& g, unsigned seed, int samples,
                                         const std::vector<KForm>& candidates) {
    if (!g.is_constant())
        throw std::invalid_argument("admissibility_report: instantiate the algebra first");

    AdmissibilityReport rep;
    rep.label = g.label();
    rep.z3 = closed_forms(g, 3);

    auto table = std::make_shared<ParamTable>();
    std::vector<std::string> names;
    names.reserve(rep.z3.size());
    for (std::size_t i = 0; i < rep.z3.size(); ++i)
        names.push_back(table->declare_real("a" + std::to_string(i + 1)));
    rep.coeffs = table;

    std::vector<KForm> diffs;
    diffs.reserve(static_cast<std::size_t>(g.dim()));
    for (int k = 1; k <= g.dim(); ++k) diffs.push_back(retable(g.d1(k), rep.coeffs));
    LieAlg gen(g.label(), std::move(diffs), rep.coeffs);

    rep.genericRho = KForm(3, 6);
    for (std::size_t i = 0; i < rep.z3.size(); ++i)
        rep.genericRho += retable(rep.z3[i], rep.coeffs).scaled(Poly::var(names[i], rep.coeffs));

    StableFormAnalysis an = analyze(gen, rep.genericRho);
    rep.traceJ2 = an.traceJ2;
    for (const auto& [idx, c] : an.dJrho.comps())
        if (!c.is_zero()) rep.closednessConditions.push_back(c);

    rep.squareCertificate = try_square(rep.traceJ2);

    auto consider = [&](const KForm& cand) {
        if (rep.negativityWitness || cand.grade() != 3 || cand.n() != 6) return;
        for (const auto& [idx, c] : cand.comps())
            if (!c.is_constant()) return;
        KForm c = retable(cand, rep.coeffs);
        if (!gen.d(c).is_zero()) return;
        StableFormAnalysis ca = analyze(gen, c);
        if (!ca.dJrho.is_zero()) return;
        GaussRat tv = ca.traceJ2.constant_value();
        if (tv.is_real() && sgn(tv.re) < 0) rep.negativityWitness = c;
    };
    for (const auto& cand : candidates) consider(cand);

    Rng rng(seed);
    for (int s = 0; s < samples && !rep.negativityWitness; ++s) {
        std::map<std::string, GaussRat> point;
        for (const auto& nm : names) point[nm] = GaussRat(rng.rat());
        GaussRat tv = rep.traceJ2.eval(point);
        if (!tv.is_real() || sgn(tv.re) >= 0) continue;
        bool closed = true;
        for (const auto& cond : rep.closednessConditions)
            if (!cond.eval(point).is_zero()) { closed = false; break; }
        if (!closed) continue;
        KForm witness(3, 6);
        for (std::size_t i = 0; i < rep.z3.size(); ++i)
            witness += retable(rep.z3[i], rep.coeffs).scaled(Poly::constant(point[names[i]], rep.coeffs));
        rep.negativityWitness = witness;
    }
    return rep;
}

} // namespace sv

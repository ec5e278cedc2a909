#pragma once
#include "sv/bareiss.hpp"
#include "sv/liealg.hpp"
#include <optional>

namespace sv {

// Hitchin construction for a 3-form rho in dimension 6, relative to the
// volume form nu = nuScale * e^{123456}. The endomorphism K acts on vectors
// by K(X) = kappa(contract(X, rho) ^ rho); rho is stable iff
// lambda = tr(K^2)/6 is nonzero, and lambda < 0 marks the almost-complex
// branch J = K / sqrt(|lambda|).
struct StableFormAnalysis {
    KForm rho;
    Matrix<Poly> K;          // column action: K(e_j) = sum_i K[i][j] e_i
    Poly lambda;
    Matrix<Poly> jTildeStar; // dual action on 1-form coefficient vectors (= K transposed)
    KForm dJrho;             // d of the alternated one-slot action of jTildeStar on rho
    Poly traceJ2;            // tr(jTildeStar^2) = 6 lambda
};

// Matrix action on a 1-form: out_j = sum_i m[j][i] alpha_i.
KForm dual_action(const Matrix<Poly>& m, const KForm& alpha);

// Extension of the 1-form action to k-forms one slot at a time,
// m.(a^b) = (m.a)^b + a^(m.b). For an almost complex structure this sends a
// (3,0)+(0,3) real part to -3 times the imaginary part.
KForm derivation_action(const Matrix<Poly>& m, const KForm& f);

// Extension as an exterior-algebra morphism, m.(a^b) = (m.a)^(m.b).
KForm algebra_action(const Matrix<Poly>& m, const KForm& f);

// rho may carry declared parameters; everything stays polynomial. The scale
// of nu only moves K by 1/nuScale, so signs and zero sets are unchanged.
StableFormAnalysis analyze(const LieAlg& g, const KForm& rho, const Rat& nuScale = Rat(1));

// Almost complex structure of a stable rho with lambda < 0 at a rational
// instance. Entries of J live in Q(sqrt(|lambda|)); the extension collapses
// to Q when |lambda| is a perfect square, and `field` stays null then.
struct AlmostComplex {
    Matrix<Poly> J;      // dual action on 1-forms, jTildeStar / root; J^2 = -Identity exactly
    Poly root;           // sqrt(|lambda|), positive branch
    KForm psi;           // rho + i * algebra_action(J, rho); closed iff dJrho = 0
    ParamTablePtr field; // carries the rewrite r^2 -> |lambda| when needed
};
AlmostComplex almost_complex(const StableFormAnalysis& an);

// Existence scan over the whole space of closed 3-forms: genericRho carries
// one fresh real parameter a1, a2, ... per closed_forms generator, in basis
// order. closednessConditions are the coefficients of d(jTildeStar.rho) in
// ascending tuple order; rho can feed an almost complex structure iff they
// all vanish and traceJ2 < 0 at the point.
struct AdmissibilityReport {
    std::string label;
    std::vector<KForm> z3;
    ParamTablePtr coeffs;
    KForm genericRho;
    Poly traceJ2;
    std::vector<Poly> closednessConditions;
    // traceJ2 == c * q^2 with c >= 0 rational: rules the lambda < 0 branch
    // out everywhere. Syntactic detection, absence proves nothing.
    std::optional<std::pair<Rat, Poly>> squareCertificate;
    // A concrete closed rho with all conditions zero and traceJ2 < 0, found
    // among the supplied candidates or by seeded sampling.
    std::optional<KForm> negativityWitness;
};
AdmissibilityReport admissibility_report(const LieAlg& g, unsigned seed = 0, int samples = 200,
                                         const std::vector<KForm>& candidates = {});

} // namespace sv

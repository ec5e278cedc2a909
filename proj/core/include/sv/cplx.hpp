#pragma once
#include "sv/bareiss.hpp"
#include "sv/liealg.hpp"
#include <optional>
#include <string>
#include <vector>

namespace sv {

// A parameter u declared as the inverse of a polynomial: base * u == 1.
// Single-variable bases also get a monomial rewrite in the parameter table,
// so their products cancel during normalization; general bases are handled
// by denominator clearing inside reduces_to_zero.
struct InverseRelation {
    std::string name;
    Poly base;
};

// Structure equations of a left-invariant complex frame in three generators:
// entry i holds d w^{i+1} as a 2-form over the complex basis, with the
// conjugate differentials implied by d(conj w) = conj(d w). Coefficients may
// carry declared parameters; d^2 = 0 is a property to check, not an input
// assumption, so families violating it off a subvariety are representable.
class ComplexStructureEquations {
public:
    ComplexStructureEquations(std::string label, std::vector<KForm> diffs, ParamTablePtr params = nullptr,
                              std::vector<InverseRelation> inverses = {});

    const std::string& label() const { return label_; }
    const KForm& d1(int i) const { return d_.at(static_cast<std::size_t>(i) - 1); }
    const std::vector<KForm>& diffs() const { return d_; }
    const ParamTablePtr& params() const { return params_; }
    const std::vector<InverseRelation>& inverses() const { return inv_; }
    bool is_constant() const;

    // Extension of the structure equations as an antiderivation on the
    // complex basis, treating parameters as constants.
    KForm d(const KForm& f) const;

    // No (0,2) component in any d w^i.
    bool integrable() const;

    // Zero test modulo the declared inverse relations: each inverse u with
    // base q is cleared by sum_k p_k u^k -> sum_k p_k q^{K-k}, injective
    // because the coefficient ring is a domain and q is invertible.
    bool reduces_to_zero(const Poly& p) const;
    bool reduces_to_zero(const KForm& f) const;

    // Same structure equations modulo the inverse relations. Requires the
    // same parameter table; labels are ignored.
    bool equivalent_to(const ComplexStructureEquations& o) const;

private:
    std::string label_;
    std::vector<KForm> d_;
    ParamTablePtr params_;
    std::vector<InverseRelation> inv_;
};

// d split by target bidegree: del collects the components one step up in the
// first index, delBar one step up in the second. When split is requested the
// equations must be integrable, so d = del + delBar with nothing left over.
struct BigradedDifferential {
    KForm d;
    KForm del;
    KForm delBar;
};
BigradedDifferential d_bigraded(const ComplexStructureEquations& eqs, const KForm& f, bool split = true);

struct StructureCheck {
    bool integrable = false;
    bool dOmega123Zero = false;               // d(w^123) reduces to zero
    std::vector<Poly> jacobiResidual;         // nonzero coefficients of d(d w^i), i = 1..3
};
StructureCheck integrability_and_volume_check(const ComplexStructureEquations& eqs);

// Frame change eta^i = sum_j holo[i][j] w^j + sum_j anti[i][j] conj(w^j).
// The induced 6x6 matrix is closed under conjugation; its inverse is formed
// as adjugate * detInverse, where detInverse must multiply the determinant
// to 1 modulo the relations. Leave detInverse zero when the determinant is a
// nonzero constant.
struct FrameChange {
    Matrix<Poly> holo;           // 3x3
    Matrix<Poly> anti;           // 3x3, empty means zero
    Poly detInverse;
};
ComplexStructureEquations basis_change(const ComplexStructureEquations& eqs, const FrameChange& change,
                                       const std::string& newLabel = "");

// Binds every parameter, including inverses, to exact values; the point must
// satisfy the declared rewrites and inverse relations.
ComplexStructureEquations instantiate(const ComplexStructureEquations& eqs,
                                      const std::map<std::string, GaussRat>& point,
                                      const std::string& newLabel = "");

// Real presentation through a splitting frame: w^{i+1} = sum_j frame[i][j] e^{j+1}
// with frame 3x6 and the six rows w^1..w^3, conj(w^1)..conj(w^3) invertible.
// The recovered d e^j always has real coefficients by conjugation symmetry;
// the Jacobi identity of the result is verified and failures throw.
struct RealizedAlgebra {
    LieAlg algebra;
    Matrix<GaussRat> frame;
};
RealizedAlgebra realize(const ComplexStructureEquations& eqs, const Matrix<GaussRat>& frame,
                        const std::string& algebraLabel);

// "dw1 = 2*i*w13 + w3c3; dw2 = -2*i*w23; dw3 = 0". Parsing accepts any
// expression form; printing is canonical and round-trips exactly.
std::string equations_text(const ComplexStructureEquations& eqs);
ComplexStructureEquations equations_from_text(const std::string& label, const std::string& text,
                                              ParamTablePtr params = nullptr,
                                              std::vector<InverseRelation> inverses = {});

// reduced: a normalized representative from the classification, carrying a
//   realization when one splitting frame reproduces a fixture presentation.
// generic: an ansatz stage whose closure can fail off the side conditions.
// deformation: a family obtained by moving a reduced structure.
enum class CatalogStage { Reduced, Generic, Deformation };

struct CatalogRealization {
    std::string algebra;                         // fixture label it reproduces
    std::map<std::string, GaussRat> point;       // structure parameters to bind first
    std::map<std::string, GaussRat> algebraPoint; // fixture parameters, for symbolic rows
    Matrix<GaussRat> frame;                      // 3x6 splitting
};

struct CatalogEntry {
    ComplexStructureEquations eqs;
    CatalogStage stage = CatalogStage::Reduced;
    std::string algebra;               // underlying algebra label, empty if parameter dependent
    std::string parameterNotes;
    std::string equivalenceNotes;
    std::vector<Poly> sideConditions;  // closure of the family assumes these vanish
    std::optional<CatalogRealization> realization;
};

std::vector<CatalogEntry> load_catalog(const std::string& path);
const std::vector<CatalogEntry>& catalog(); // catalog.json from the default data dir

} // namespace sv

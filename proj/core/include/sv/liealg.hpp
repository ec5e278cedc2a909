#pragma once
#include "sv/kform.hpp"
#include <string>
#include <vector>

namespace sv {

// Real Lie algebra presented through its Chevalley-Eilenberg differential:
// entry k holds d e^{k+1} as a 2-form over the e-basis. The convention is
// da(X,Y) = -a([X,Y]), so d e^k = sum_{i<j} c^k_{ij} e^{ij} encodes the
// brackets [e_i,e_j] = -sum_k c^k_{ij} e_k. Coefficients may involve declared
// parameters; cohomology routines require an instantiated algebra.
class LieAlg {
public:
    LieAlg() = default;
    LieAlg(std::string label, std::vector<KForm> diffs, ParamTablePtr params = nullptr);

    // Tuple notation, e.g. "(0,-e^{13},e^{12},0,-e^{46},-e^{45})"; dimension
    // is the number of components. Errors carry positions in the full text.
    static LieAlg parse(const std::string& label, const std::string& text,
                        ParamTablePtr params = nullptr);

    const std::string& label() const { return label_; }
    int dim() const { return n_; }
    const KForm& d1(int k) const { return d1_.at(static_cast<std::size_t>(k) - 1); }
    const ParamTablePtr& params() const { return params_; }

    // Extension of the structure equations as an antiderivation.
    KForm d(const KForm& f) const;

    LieAlg instantiate(const std::map<std::string, GaussRat>& values,
                       std::string newLabel = "") const;
    bool is_constant() const;

    std::string str() const; // round-trips through parse

private:
    std::string label_;
    int n_ = 0;
    std::vector<KForm> d1_;
    ParamTablePtr params_;
};

// Structure comparison, ignoring labels.
bool same_structure(const LieAlg& a, const LieAlg& b);

struct JacobiReport {
    bool ok = true;
    int witness = 0; // k with d(d e^k) != 0
    KForm residual;
};
JacobiReport jacobi_check(const LieAlg& g);

struct UnimodularReport {
    bool ok = true;
    int witness = 0; // i with tr(ad_{e_i}) != 0
    Poly trace;
};
UnimodularReport unimodular_check(const LieAlg& g);

// Exact k-th Betti number of the Chevalley-Eilenberg complex.
int betti(const LieAlg& g, int k);

LieAlg direct_sum(const std::string& label, const LieAlg& a, const LieAlg& b);

// b3 of a direct sum out of the factors' Betti numbers.
int kunneth_b3(const LieAlg& a, const LieAlg& b);

// Basis of the closed k-forms, echelon-normalized: one generator per free
// coordinate in ascending tuple order, integer-primitive, with coefficient 1
// on the generator's own tuple.
std::vector<KForm> closed_forms(const LieAlg& g, int k);

struct ExactWitness {
    KForm form;      // d(primitive)
    KForm primitive; // a basis (k-1)-form
};
// Spanning set of the exact k-forms, one witness per rank increase,
// primitives scanned in ascending tuple order.
std::vector<ExactWitness> exact_forms(const LieAlg& g, int k);

} // namespace sv

#pragma once
#include "sv/poly.hpp"
#include <map>
#include <vector>

namespace sv {

enum class BasisKind { Real, Complex };
// Complex basis on 6 directions: 1..3 are the (1,0) generators w1..w3,
// 4..6 their conjugates. Bidegree (p,q) counts low/high indices.

// Sorts idx ascending in place. Returns 0 for a repeated index, else the
// permutation parity (+1/-1) absorbed into the coefficient by callers.
int normalize_tuple(std::vector<int>& idx);

class KForm {
public:
    KForm() = default;
    KForm(int grade, int n, BasisKind basis = BasisKind::Real) : n_(n), k_(grade), basis_(basis) {}

    static KForm zero(int grade, int n, BasisKind basis = BasisKind::Real) { return KForm(grade, n, basis); }
    static KForm basis_elt(std::vector<int> idx, int n, BasisKind basis = BasisKind::Real,
                           Poly coeff = Poly(1));

    int n() const { return n_; }
    int grade() const { return k_; }
    BasisKind basis() const { return basis_; }
    bool is_zero() const { return comps_.empty(); }
    const std::map<std::vector<int>, Poly>& comps() const { return comps_; }
    Poly coeff(const std::vector<int>& idx) const;
    void set_coeff(std::vector<int> idx, Poly c);
    void add_term(std::vector<int> idx, const Poly& c); // normalizes, folds sign

    KForm operator-() const;
    KForm& operator+=(const KForm& o);
    KForm& operator-=(const KForm& o);
    friend KForm operator+(KForm a, const KForm& b) { a += b; return a; }
    friend KForm operator-(KForm a, const KForm& b) { a -= b; return a; }
    KForm scaled(const Poly& p) const;
    KForm scaled(const GaussRat& c) const { return scaled(Poly(c)); }
    friend bool operator==(const KForm& a, const KForm& b) {
        return a.k_ == b.k_ && a.n_ == b.n_ && a.basis_ == b.basis_ && a.comps_ == b.comps_;
    }
    friend bool operator!=(const KForm& a, const KForm& b) { return !(a == b); }

    // coefficient conjugation; on the complex basis also swaps w^i <-> conj(w^i)
    KForm conj() const;

    std::pair<int, int> bidegree() const; // complex basis only

    KForm subst(const std::map<std::string, Poly>& bindings) const;

    std::string str() const;

private:
    int n_ = 6;
    int k_ = 0;
    BasisKind basis_ = BasisKind::Real;
    std::map<std::vector<int>, Poly> comps_;
};

struct VectorElt {
    int n = 6;
    std::map<int, Poly> comps;

    VectorElt() = default;
    explicit VectorElt(int dim) : n(dim) {}
    static VectorElt basis(int i, int dim) {
        VectorElt v(dim);
        v.comps[i] = Poly(1);
        return v;
    }
    bool is_zero() const { return comps.empty(); }
    Poly coeff(int i) const {
        auto it = comps.find(i);
        return it == comps.end() ? Poly() : it->second;
    }
    void add(int i, const Poly& c);
    VectorElt scaled(const Poly& p) const;
    friend bool operator==(const VectorElt& a, const VectorElt& b) { return a.n == b.n && a.comps == b.comps; }
};

KForm wedge(const KForm& a, const KForm& b);
KForm contract(const VectorElt& X, const KForm& a);
// The unique X with contract(X, nu) == eta; nu a nonzero constant-coefficient
// volume form.
VectorElt kappa(const KForm& eta, const KForm& nu);

} // namespace sv

#include "sv/kform.hpp"
#include <algorithm>
#include <stdexcept>

namespace sv {

int normalize_tuple(std::vector<int>& idx) {
    int sign = 1;
    for (std::size_t i = 1; i < idx.size(); ++i) { // insertion sort, counting swaps
        int v = idx[i];
        std::size_t j = i;
        while (j > 0 && idx[j - 1] > v) {
            idx[j] = idx[j - 1];
            --j;
            sign = -sign;
        }
        idx[j] = v;
    }
    for (std::size_t i = 1; i < idx.size(); ++i)
        if (idx[i] == idx[i - 1]) return 0;
    return sign;
}

KForm KForm::basis_elt(std::vector<int> idx, int n, BasisKind basis, Poly coeff) {
    KForm f(static_cast<int>(idx.size()), n, basis);
    f.add_term(std::move(idx), coeff);
    return f;
}

Poly KForm::coeff(const std::vector<int>& idx) const {
    auto it = comps_.find(idx);
    return it == comps_.end() ? Poly() : it->second;
}

void KForm::set_coeff(std::vector<int> idx, Poly c) {
    if (static_cast<int>(idx.size()) != k_) throw std::invalid_argument("KForm::set_coeff: grade mismatch");
    if (c.is_zero()) comps_.erase(idx);
    else comps_[std::move(idx)] = std::move(c);
}

void KForm::add_term(std::vector<int> idx, const Poly& c) {
    if (static_cast<int>(idx.size()) != k_) throw std::invalid_argument("KForm::add_term: grade mismatch");
    for (int i : idx)
        if (i < 1 || i > n_) throw std::invalid_argument("KForm::add_term: index out of range");
    int s = normalize_tuple(idx);
    if (s == 0 || c.is_zero()) return;
    Poly v = s == 1 ? c : -c;
    auto it = comps_.find(idx);
    if (it == comps_.end()) comps_.emplace(std::move(idx), std::move(v));
    else {
        it->second += v;
        if (it->second.is_zero()) comps_.erase(it);
    }
}

KForm KForm::operator-() const {
    KForm out(k_, n_, basis_);
    for (auto& [t, c] : comps_) out.comps_.emplace(t, -c);
    return out;
}

static void check_compat(const KForm& a, const KForm& b, const char* who) {
    if (a.n() != b.n() || a.basis() != b.basis())
        throw std::invalid_argument(std::string(who) + ": basis mismatch");
}

KForm& KForm::operator+=(const KForm& o) {
    check_compat(*this, o, "KForm::operator+=");
    if (k_ != o.k_) {
        if (is_zero()) { k_ = o.k_; }
        else if (!o.is_zero()) throw std::invalid_argument("KForm::operator+=: grade mismatch");
    }
    for (auto& [t, c] : o.comps_) {
        auto it = comps_.find(t);
        if (it == comps_.end()) comps_.emplace(t, c);
        else {
            it->second += c;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }
    return *this;
}

KForm& KForm::operator-=(const KForm& o) {
    *this += -o;
    return *this;
}

KForm KForm::scaled(const Poly& p) const {
    KForm out(k_, n_, basis_);
    if (p.is_zero()) return out;
    for (auto& [t, c] : comps_) {
        Poly v = c * p;
        if (!v.is_zero()) out.comps_.emplace(t, std::move(v));
    }
    return out;
}

KForm KForm::conj() const {
    KForm out(k_, n_, basis_);
    if (basis_ == BasisKind::Real) {
        for (auto& [t, c] : comps_) out.comps_.emplace(t, c.conj());
        return out;
    }
    int h = n_ / 2;
    for (auto& [t, c] : comps_) {
        std::vector<int> m(t);
        for (int& i : m) i = i <= h ? i + h : i - h;
        out.add_term(std::move(m), c.conj());
    }
    return out;
}

std::pair<int, int> KForm::bidegree() const {
    if (basis_ != BasisKind::Complex) throw std::domain_error("bidegree: real-basis form");
    int h = n_ / 2;
    std::pair<int, int> pq{-1, -1};
    for (auto& [t, c] : comps_) {
        int p = 0, q = 0;
        for (int i : t) (i <= h ? p : q)++;
        if (pq.first < 0) pq = {p, q};
        else if (pq != std::pair<int, int>{p, q}) throw std::domain_error("bidegree: mixed-type form");
    }
    if (pq.first < 0) return {0, 0};
    return pq;
}

KForm KForm::subst(const std::map<std::string, Poly>& bindings) const {
    KForm out(k_, n_, basis_);
    for (auto& [t, c] : comps_) {
        Poly v = c.substitute(bindings);
        if (!v.is_zero()) out.comps_.emplace(t, std::move(v));
    }
    return out;
}

std::string KForm::str() const {
    if (comps_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [t, c] : comps_) {
        std::string cs = c.str();
        bool neg = cs.size() > 1 && cs[0] == '-' && cs.find(" + ") == std::string::npos &&
                   cs.find(" - ") == std::string::npos;
        bool wrap = c.term_count() > 1;
        std::string body = neg ? cs.substr(1) : cs;
        if (first) {
            first = false;
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        std::string base;
        if (basis_ == BasisKind::Real) {
            base = "e^{";
            for (int i : t) base += std::to_string(i);
            base += "}";
        } else {
            int h = n_ / 2;
            base = "w";
            for (int i : t) base += i <= h ? std::to_string(i) : "c" + std::to_string(i - h);
        }
        if (t.empty()) { out += wrap ? "(" + body + ")" : body; continue; }
        if (body == "1") out += base;
        else out += (wrap ? "(" + body + ")" : body) + "*" + base;
    }
    return out;
}

void VectorElt::add(int i, const Poly& c) {
    if (i < 1 || i > n) throw std::invalid_argument("VectorElt::add: index out of range");
    auto it = comps.find(i);
    if (it == comps.end()) {
        if (!c.is_zero()) comps.emplace(i, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) comps.erase(it);
    }
}

VectorElt VectorElt::scaled(const Poly& p) const {
    VectorElt out(n);
    if (p.is_zero()) return out;
    for (auto& [i, c] : comps) {
        Poly v = c * p;
        if (!v.is_zero()) out.comps.emplace(i, std::move(v));
    }
    return out;
}

KForm wedge(const KForm& a, const KForm& b) {
    check_compat(a, b, "wedge");
    KForm out(a.grade() + b.grade(), a.n(), a.basis());
    // grade > n: every concatenated tuple repeats an index, so out stays 0
    for (auto& [ta, ca] : a.comps())
        for (auto& [tb, cb] : b.comps()) {
            std::vector<int> t;
            t.reserve(ta.size() + tb.size());
            t.insert(t.end(), ta.begin(), ta.end());
            t.insert(t.end(), tb.begin(), tb.end());
            out.add_term(std::move(t), ca * cb);
        }
    return out;
}

KForm contract(const VectorElt& X, const KForm& a) {
    if (X.n != a.n()) throw std::invalid_argument("contract: dimension mismatch");
    if (a.grade() == 0) throw std::invalid_argument("contract: grade-0 input");
    KForm out(a.grade() - 1, a.n(), a.basis());
    for (auto& [t, c] : a.comps()) {
        for (std::size_t p = 0; p < t.size(); ++p) {
            Poly xi = X.coeff(t[p]);
            if (xi.is_zero()) continue;
            std::vector<int> rest;
            rest.reserve(t.size() - 1);
            for (std::size_t q = 0; q < t.size(); ++q)
                if (q != p) rest.push_back(t[q]);
            Poly v = xi * c;
            if (p % 2 == 1) v = -v;
            out.add_term(std::move(rest), v);
        }
    }
    return out;
}

VectorElt kappa(const KForm& eta, const KForm& nu) {
    if (nu.grade() != nu.n() || nu.comps().size() != 1)
        throw std::invalid_argument("kappa: nu must be a volume form");
    const auto& [tnu, cnu] = *nu.comps().begin();
    if (!cnu.is_constant()) throw std::invalid_argument("kappa: nu must have a constant coefficient");
    GaussRat c = cnu.constant_value();
    if (c.is_zero()) throw std::invalid_argument("kappa: nu is zero");
    if (eta.grade() != nu.n() - 1 || eta.n() != nu.n() || eta.basis() != nu.basis())
        throw std::invalid_argument("kappa: eta must have grade n-1 over nu's basis");
    int n = nu.n();
    VectorElt X(n);
    // iota_{e_i} nu = (-1)^{i-1} c e^{1..^i..n}
    for (int i = 1; i <= n; ++i) {
        std::vector<int> complement;
        complement.reserve(n - 1);
        for (int j = 1; j <= n; ++j)
            if (j != i) complement.push_back(j);
        Poly co = eta.coeff(complement);
        if (co.is_zero()) continue;
        GaussRat scale = GaussRat(Rat(i % 2 == 1 ? 1 : -1)) * c.inv();
        X.add(i, co.scaled(scale));
    }
    return X;
}

} // namespace sv

#pragma once
#include "sv/param.hpp"
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sv {

// Sorted by parameter name, exponents > 0.
using Monomial = std::vector<std::pair<std::string, int>>;

// True lexicographic monomial order (earlier names take precedence);
// multiplication-compatible, used by the polynomial square root.
bool lex_less(const Monomial& a, const Monomial& b);

struct ParseError : std::runtime_error {
    std::size_t pos;
    ParseError(const std::string& msg, std::size_t p)
        : std::runtime_error(msg + " at position " + std::to_string(p)), pos(p) {}
};

// Sparse multivariate polynomial over GaussRat. Canonical form: no zero
// coefficients, monomial keys unique and ordered, declared monomial rewrites
// (unit modulus, square values) applied.
class Poly {
public:
    Poly() = default;
    explicit Poly(const GaussRat& c, ParamTablePtr ctx = nullptr) : ctx_(std::move(ctx)) {
        if (!c.is_zero()) terms_[{}] = c;
    }
    explicit Poly(long n) { if (n != 0) terms_[{}] = GaussRat(n); }

    static Poly var(const std::string& name, ParamTablePtr ctx, int exp = 1);
    static Poly constant(const GaussRat& c, ParamTablePtr ctx = nullptr) { return Poly(c, std::move(ctx)); }
    static Poly imag_unit(ParamTablePtr ctx = nullptr) { return Poly(GaussRat::make_i(), std::move(ctx)); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
    GaussRat constant_value() const;
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, GaussRat>& terms() const { return terms_; }
    const ParamTablePtr& ctx() const { return ctx_; }
    Poly with_ctx(ParamTablePtr ctx) const { Poly p = *this; p.ctx_ = std::move(ctx); return p; }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
    friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }
    Poly scaled(const GaussRat& c) const;
    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    // std::map key use (deterministic, not a monomial order)
    friend bool operator<(const Poly& a, const Poly& b) { return a.terms_ < b.terms_; }

    // i -> -i on coefficients, holomorphic <-> antiholomorphic on parameters.
    Poly conj() const;

    // Exact substitution. A bound complex parameter requires its partner bound too.
    Poly substitute(const std::map<std::string, Poly>& bindings) const;

    // Full evaluation; every parameter occurring in the polynomial must be bound.
    GaussRat eval(const std::map<std::string, GaussRat>& point) const;

    std::vector<std::string> param_names() const;
    int degree() const;

    std::string str() const;
    static Poly parse(const std::string& text, ParamTablePtr ctx);

private:
    friend class PolyBuilder;
    void add_term(const Monomial& m, const GaussRat& c);
    void normalize();
    ParamTablePtr ctx_;
    std::map<Monomial, GaussRat> terms_;
};

// p == c * q^2 with c a nonnegative rational (syntactic detection; used for
// trace-nonnegativity certificates). Returns (c, q) on success.
std::optional<std::pair<Rat, Poly>> try_square(const Poly& p);

// Exact quotient num / den; throws std::domain_error when den does not divide
// num. Callers (fraction-free elimination) guarantee divisibility.
Poly divide_exact(const Poly& num, const Poly& den);

} // namespace sv

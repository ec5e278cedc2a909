#include "sv/formexpr.hpp"
#include "sv/poly.hpp"
#include <cctype>
#include <optional>

namespace sv {

namespace {

struct Lexer {
    const std::string& s;
    std::size_t p = 0;

    void skip() {
        while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
    }
    bool eof() {
        skip();
        return p >= s.size();
    }
    char peek() {
        skip();
        return p < s.size() ? s[p] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) { ++p; return true; }
        return false;
    }
    void expect(char c, const char* what) {
        if (!accept(c)) throw ParseError(std::string("expected ") + what, p);
    }
    bool number_ahead() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }
    bool ident_ahead() {
        char c = peek();
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    Int integer() {
        skip();
        std::size_t st = p;
        while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
        if (st == p) throw ParseError("expected integer", p);
        return Int(s.substr(st, p - st));
    }
    Rat rational() {
        Int num = integer();
        if (p < s.size() && s[p] == '/') {
            std::size_t save = p;
            ++p;
            if (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) {
                Int den = integer();
                if (sgn(den) == 0) throw ParseError("zero denominator", save + 1);
                Rat q(num, den);
                q.canonicalize();
                return q;
            }
            p = save; // the '/' was an operator, not part of a literal
        }
        return Rat(num);
    }
    std::string ident() {
        skip();
        std::size_t st = p;
        while (p < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[p])) || s[p] == '_'))
            ++p;
        return s.substr(st, p - st);
    }
};

// e135-style atom: 'e' followed by one digit per index.
std::optional<std::vector<int>> real_atom(const std::string& id) {
    if (id.size() < 2 || id[0] != 'e') return std::nullopt;
    std::vector<int> idx;
    for (std::size_t i = 1; i < id.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(id[i]))) return std::nullopt;
        idx.push_back(id[i] - '0');
    }
    return idx;
}

// w1c3-style atom: 'w' then (digit | 'c' digit)+; 'c' means conjugated, which
// shifts the index into the upper half of the complex basis.
std::optional<std::vector<int>> complex_atom(const std::string& id, int n) {
    if (id.size() < 2 || id[0] != 'w') return std::nullopt;
    const int h = n / 2;
    std::vector<int> idx;
    for (std::size_t i = 1; i < id.size();) {
        bool conj = id[i] == 'c';
        if (conj && ++i == id.size()) return std::nullopt;
        if (!std::isdigit(static_cast<unsigned char>(id[i]))) return std::nullopt;
        int k = id[i] - '0';
        idx.push_back(conj ? k + h : k);
        ++i;
    }
    return idx;
}

struct FormParser {
    Lexer lx;
    ParamTablePtr ctx;
    int n;
    BasisKind basis;

    KForm scalar(const Poly& p) const {
        KForm f(0, n, basis);
        f.add_term({}, p);
        return f;
    }

    KForm basis_form(const std::vector<int>& idx, std::size_t at) const {
        std::vector<int> copy = idx;
        if (normalize_tuple(copy) == 0) throw ParseError("repeated basis index", at);
        try {
            KForm f(static_cast<int>(idx.size()), n, basis);
            f.add_term(idx, Poly(1));
            return f;
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), at);
        }
    }

    KForm parse_primary() {
        if (lx.accept('(')) {
            KForm v = parse_expr();
            lx.expect(')', "')'");
            return v;
        }
        if (lx.number_ahead()) return scalar(Poly(GaussRat(lx.rational()), ctx));
        if (lx.ident_ahead()) {
            lx.skip();
            std::size_t at = lx.p;
            std::string id = lx.ident();
            if (id == "i") return scalar(Poly::imag_unit(ctx));
            if (id == "conj") {
                lx.expect('(', "'('");
                std::string inner = lx.ident();
                lx.expect(')', "')'");
                if (!ctx || !ctx->has(inner))
                    throw ParseError("unknown parameter '" + inner + "'", at);
                return scalar(Poly::var(ctx->conj_name(inner), ctx));
            }
            if (auto idx = real_atom(id)) {
                if (basis != BasisKind::Real)
                    throw ParseError("real basis element in a complex-basis expression", at);
                return basis_form(*idx, at);
            }
            if (auto idx = complex_atom(id, n)) {
                if (basis != BasisKind::Complex)
                    throw ParseError("complex basis element in a real-basis expression", at);
                return basis_form(*idx, at);
            }
            if (id == "e" && lx.p < lx.s.size() && lx.s[lx.p] == '^') {
                std::size_t save = lx.p;
                ++lx.p;
                if (lx.p < lx.s.size() && lx.s[lx.p] == '{') {
                    ++lx.p;
                    std::vector<int> idx;
                    while (lx.p < lx.s.size() &&
                           std::isdigit(static_cast<unsigned char>(lx.s[lx.p]))) {
                        idx.push_back(lx.s[lx.p] - '0');
                        ++lx.p;
                    }
                    lx.expect('}', "'}'");
                    if (idx.empty()) throw ParseError("empty basis element", at);
                    if (basis != BasisKind::Real)
                        throw ParseError("real basis element in a complex-basis expression", at);
                    return basis_form(idx, at);
                }
                lx.p = save;
            }
            if (!ctx || !ctx->has(id)) throw ParseError("unknown parameter '" + id + "'", at);
            return scalar(Poly::var(id, ctx));
        }
        throw ParseError("expected a factor", lx.p);
    }

    KForm wedge_at(const KForm& a, const KForm& b, std::size_t at) const {
        try {
            return wedge(a, b);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), at);
        }
    }

    KForm parse_factor() {
        KForm v = parse_primary();
        if (lx.accept('^')) {
            // basis atoms take their indices inside primary, so '^' here is a
            // scalar power
            std::size_t at = lx.p;
            if (v.grade() != 0) throw ParseError("exponent requires a scalar factor", at);
            Int e = lx.integer();
            if (e < 0 || e > 64) throw ParseError("exponent out of range", at);
            KForm out = scalar(Poly(1));
            for (long k = 0; k < e.get_si(); ++k) out = wedge(out, v);
            return out;
        }
        return v;
    }

    KForm parse_term() {
        KForm v = parse_factor();
        for (;;) {
            std::size_t at = lx.p;
            if (lx.accept('*')) {
                v = wedge_at(v, parse_factor(), at);
            } else if (lx.accept('/')) {
                std::size_t dp = lx.p;
                if (!lx.number_ahead())
                    throw ParseError("denominator must be a rational literal", dp);
                Rat d = lx.rational();
                if (sgn(d) == 0) throw ParseError("zero denominator", dp);
                v = v.scaled(GaussRat(Rat(1) / d));
            } else if (lx.number_ahead() || lx.ident_ahead() || lx.peek() == '(') {
                v = wedge_at(v, parse_factor(), at);
            } else {
                break;
            }
        }
        return v;
    }

    KForm parse_expr() {
        KForm acc(0, n, basis);
        bool neg = lx.accept('-');
        if (!neg) lx.accept('+');
        for (;;) {
            std::size_t at = lx.p;
            KForm t = parse_term();
            if (neg) t = t.scaled(GaussRat(-1));
            try {
                acc += t;
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what(), at);
            }
            if (lx.accept('+')) neg = false;
            else if (lx.accept('-')) neg = true;
            else break;
        }
        return acc;
    }
};

} // namespace

KForm parse_form(const std::string& text, ParamTablePtr ctx, int n, BasisKind basis) {
    FormParser fp{Lexer{text}, std::move(ctx), n, basis};
    KForm v = fp.parse_expr();
    if (!fp.lx.eof()) throw ParseError("trailing input", fp.lx.p);
    return v;
}

} // namespace sv

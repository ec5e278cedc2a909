#include "sv/poly.hpp"
#include <algorithm>
#include <cctype>
#include <sstream>

namespace sv {

bool lex_less(const Monomial& a, const Monomial& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (i < a.size() && j < b.size()) {
            if (a[i].first == b[j].first) {
                if (a[i].second != b[j].second) return a[i].second < b[j].second;
                ++i; ++j;
            } else if (a[i].first < b[j].first) {
                return false; // a has the higher-precedence name with exp > 0
            } else {
                return true;
            }
        } else if (i < a.size()) {
            return false;
        } else {
            return true;
        }
    }
    return false;
}

static Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) out.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first) out.push_back(b[j++]);
        else { out.emplace_back(a[i].first, a[i].second + b[j].second); ++i; ++j; }
    }
    return out;
}

Poly Poly::var(const std::string& name, ParamTablePtr ctx, int exp) {
    if (!ctx || !ctx->has(name)) throw std::invalid_argument("undeclared parameter '" + name + "'");
    Poly p;
    p.ctx_ = std::move(ctx);
    if (exp < 0) throw std::invalid_argument("negative exponent");
    if (exp == 0) { p.terms_[{}] = GaussRat(1); return p; }
    p.terms_[{{name, exp}}] = GaussRat(1);
    p.normalize(); // exp >= 2 may hit a declared square rewrite
    return p;
}

GaussRat Poly::constant_value() const {
    if (terms_.empty()) return GaussRat();
    if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
    throw std::domain_error("polynomial is not constant: " + str());
}

void Poly::add_term(const Monomial& m, const GaussRat& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void Poly::normalize() {
    if (!ctx_ || ctx_->rewrites().empty()) return;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& rw : ctx_->rewrites()) {
            std::map<Monomial, GaussRat> next;
            for (auto& [m, c] : terms_) {
                int ex = 0, ey = 0;
                for (auto& [n, e] : m) {
                    if (n == rw.x) ex = e;
                    if (n == rw.y) ey = e;
                }
                int k = rw.x == rw.y ? ex / 2 : std::min(ex, ey);
                if (k == 0) {
                    auto it = next.find(m);
                    if (it == next.end()) next.emplace(m, c); else { it->second += c; if (it->second.is_zero()) next.erase(it); }
                    continue;
                }
                changed = true;
                Monomial rm;
                for (auto& [n, e] : m) {
                    int drop = (rw.x == rw.y && n == rw.x) ? 2 * k : ((n == rw.x || n == rw.y) ? k : 0);
                    if (e - drop > 0) rm.emplace_back(n, e - drop);
                }
                Rat scale = 1;
                for (int t = 0; t < k; ++t) scale *= rw.value;
                GaussRat nc = c * GaussRat(scale);
                auto it = next.find(rm);
                if (it == next.end()) { if (!nc.is_zero()) next.emplace(rm, nc); }
                else { it->second += nc; if (it->second.is_zero()) next.erase(it); }
            }
            terms_ = std::move(next);
        }
    }
}

static ParamTablePtr merge_ctx(const ParamTablePtr& a, const ParamTablePtr& b) {
    if (a && b && a != b) throw std::invalid_argument("mixing polynomials over distinct parameter tables");
    return a ? a : b;
}

Poly Poly::operator-() const {
    Poly out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

Poly& Poly::operator+=(const Poly& o) {
    ctx_ = merge_ctx(ctx_, o.ctx_);
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    ctx_ = merge_ctx(ctx_, o.ctx_);
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    out.ctx_ = merge_ctx(a.ctx_, b.ctx_);
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_)
            out.add_term(mono_mul(ma, mb), ca * cb);
    out.normalize();
    return out;
}

Poly Poly::scaled(const GaussRat& c) const {
    Poly out;
    out.ctx_ = ctx_;
    if (c.is_zero()) return out;
    for (auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
    return out;
}

Poly Poly::conj() const {
    Poly out;
    out.ctx_ = ctx_;
    for (auto& [m, c] : terms_) {
        Monomial cm;
        cm.reserve(m.size());
        for (auto& [name, e] : m) {
            const std::string& cn = ctx_ ? ctx_->conj_name(name) : name;
            cm.emplace_back(cn, e);
        }
        std::sort(cm.begin(), cm.end());
        out.add_term(cm, c.conj());
    }
    out.normalize();
    return out;
}

Poly Poly::substitute(const std::map<std::string, Poly>& bindings) const {
    if (ctx_) {
        for (auto& [name, val] : bindings) {
            const ParamInfo* pi = ctx_->find(name);
            if (!pi) throw std::invalid_argument("substitute: unknown parameter '" + name + "'");
            if (pi->kind != ParamKind::Real && bindings.find(pi->partner) == bindings.end())
                throw std::invalid_argument("substitute: parameter '" + name +
                                            "' bound without its conjugate partner '" + pi->partner + "'");
        }
    }
    Poly out;
    ParamTablePtr vctx;
    for (auto& [name, val] : bindings) vctx = merge_ctx(vctx, val.ctx());
    out.ctx_ = vctx ? vctx : ctx_;
    for (auto& [m, c] : terms_) {
        Poly term(c, out.ctx_);
        for (auto& [name, e] : m) {
            auto it = bindings.find(name);
            Poly base = it != bindings.end() ? it->second.with_ctx(out.ctx_) : Poly::var(name, ctx_).with_ctx(out.ctx_);
            for (int t = 0; t < e; ++t) term = term * base;
        }
        out += term;
    }
    out.normalize();
    return out;
}

GaussRat Poly::eval(const std::map<std::string, GaussRat>& point) const {
    GaussRat acc;
    for (auto& [m, c] : terms_) {
        GaussRat t = c;
        for (auto& [name, e] : m) {
            auto it = point.find(name);
            if (it == point.end()) throw std::invalid_argument("eval: unbound parameter '" + name + "'");
            GaussRat p(Rat(1));
            GaussRat base = it->second;
            int k = e;
            while (k > 0) { // pow by squaring
                if (k & 1) p *= base;
                base *= base;
                k >>= 1;
            }
            t *= p;
        }
        acc += t;
    }
    return acc;
}

std::vector<std::string> Poly::param_names() const {
    std::vector<std::string> out;
    for (auto& [m, c] : terms_)
        for (auto& [name, e] : m)
            if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    std::sort(out.begin(), out.end());
    return out;
}

int Poly::degree() const {
    int d = 0;
    for (auto& [m, c] : terms_) {
        int t = 0;
        for (auto& [name, e] : m) t += e;
        d = std::max(d, t);
    }
    return d;
}

// ---------- printing ----------

static std::string mono_str(const Monomial& m) {
    std::string s;
    for (auto& [name, e] : m) {
        if (!s.empty()) s += "*";
        s += name;
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

// sign used for "+/-" joining: sign of re, falling back to sign of im
static int coeff_sign(const GaussRat& c) {
    if (sgn(c.re) != 0) return sgn(c.re);
    return sgn(c.im);
}

static std::string coeff_str(const GaussRat& c, bool with_mono) {
    // c is the magnitude (coeff_sign applied by caller)
    if (sgn(c.im) == 0) {
        std::string r = rat_str(c.re);
        if (with_mono && r == "1") return "";
        return r;
    }
    if (sgn(c.re) == 0) {
        std::string i = rat_str(c.im);
        if (i == "1") return "i";
        if (i == "-1") return "-i";
        return i + "*i";
    }
    std::string i = rat_str(abs(c.im));
    std::string istr = (i == "1") ? "i" : i + "*i";
    return "(" + rat_str(c.re) + (sgn(c.im) > 0 ? "+" : "-") + istr + ")";
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [m, c] : terms_) {
        int s = coeff_sign(c);
        GaussRat mag = s < 0 ? -c : c;
        if (first) {
            if (s < 0) out += "-";
            first = false;
        } else {
            out += s < 0 ? " - " : " + ";
        }
        std::string cs = coeff_str(mag, !m.empty());
        out += cs;
        if (!m.empty()) {
            if (!cs.empty()) out += "*";
            out += mono_str(m);
        }
    }
    return out;
}

// ---------- parsing ----------

namespace {

struct Lexer {
    const std::string& s;
    std::size_t p = 0;
    void skip() { while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p; }
    bool eof() { skip(); return p >= s.size(); }
    char peek() { skip(); return p < s.size() ? s[p] : '\0'; }
    bool accept(char c) { skip(); if (p < s.size() && s[p] == c) { ++p; return true; } return false; }
    void expect(char c) {
        skip();
        if (p >= s.size() || s[p] != c) throw ParseError(std::string("expected '") + c + "'", p);
        ++p;
    }
    bool number_ahead() { skip(); return p < s.size() && std::isdigit(static_cast<unsigned char>(s[p])); }
    bool ident_ahead() {
        skip();
        return p < s.size() && (std::isalpha(static_cast<unsigned char>(s[p])) || s[p] == '_');
    }
    Int integer() {
        skip();
        std::size_t start = p;
        while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
        if (start == p) throw ParseError("expected integer", p);
        return Int(s.substr(start, p - start));
    }
    Rat rational() {
        Int num = integer();
        if (p < s.size() && s[p] == '/') {
            std::size_t save = p;
            ++p;
            if (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) {
                Int den = integer();
                if (sgn(den) == 0) throw ParseError("zero denominator", save);
                Rat q(num, den);
                q.canonicalize();
                return q;
            }
            p = save;
        }
        return Rat(num);
    }
    std::string ident() {
        skip();
        std::size_t start = p;
        while (p < s.size() && (std::isalnum(static_cast<unsigned char>(s[p])) || s[p] == '_')) ++p;
        if (start == p) throw ParseError("expected identifier", p);
        return s.substr(start, p - start);
    }
};

struct PolyParser {
    Lexer lx;
    ParamTablePtr ctx;

    Poly expr() {
        Poly acc = term();
        for (;;) {
            if (lx.accept('+')) acc += term();
            else if (lx.accept('-')) acc -= term();
            else return acc;
        }
    }

    bool factor_ahead() {
        char c = lx.peek();
        return lx.number_ahead() || lx.ident_ahead() || c == '(';
    }

    Poly term() {
        Poly acc = signed_factor();
        for (;;) {
            if (lx.accept('*')) { acc = acc * signed_factor(); continue; }
            if (lx.accept('/')) {
                std::size_t at = lx.p;
                if (!lx.number_ahead()) throw ParseError("denominator must be a rational literal", at);
                Rat d = lx.rational();
                if (sgn(d) == 0) throw ParseError("zero denominator", at);
                acc = acc.scaled(GaussRat(Rat(1) / d));
                continue;
            }
            if (factor_ahead()) { acc = acc * signed_factor(); continue; } // juxtaposition
            return acc;
        }
    }

    Poly signed_factor() {
        if (lx.accept('-')) return -signed_factor();
        if (lx.accept('+')) return signed_factor();
        return factor();
    }

    Poly factor() {
        Poly p = primary();
        if (lx.accept('^')) {
            std::size_t at = lx.p;
            Int e = lx.integer();
            if (e < 0 || e > 64) throw ParseError("exponent out of range", at);
            Poly acc(GaussRat(Rat(1)), ctx);
            for (long k = 0; k < e.get_si(); ++k) acc = acc * p;
            return acc;
        }
        return p;
    }

    Poly primary() {
        lx.skip();
        std::size_t at = lx.p;
        if (lx.accept('(')) {
            Poly p = expr();
            lx.expect(')');
            return p;
        }
        if (lx.number_ahead()) return Poly(GaussRat(lx.rational()), ctx);
        if (lx.ident_ahead()) {
            std::string name = lx.ident();
            if (name == "i") return Poly::imag_unit(ctx);
            if (name == "conj" && lx.peek() == '(') {
                lx.expect('(');
                std::size_t nat = lx.p;
                std::string inner = lx.ident();
                lx.expect(')');
                if (!ctx || !ctx->has("conj(" + inner + ")"))
                    throw ParseError("unknown parameter 'conj(" + inner + ")'", nat);
                return Poly::var("conj(" + inner + ")", ctx);
            }
            if (!ctx || !ctx->has(name)) throw ParseError("unknown parameter '" + name + "'", at);
            return Poly::var(name, ctx);
        }
        throw ParseError("expected factor", at);
    }
};

} // namespace

Poly Poly::parse(const std::string& text, ParamTablePtr ctx) {
    PolyParser pp{Lexer{text}, std::move(ctx)};
    Poly p = pp.expr();
    if (!pp.lx.eof()) throw ParseError("trailing input", pp.lx.p);
    return p;
}

// ---------- polynomial square detection ----------

namespace {
std::pair<Monomial, GaussRat> leading(const Poly& p) {
    auto best = p.terms().begin();
    for (auto it = p.terms().begin(); it != p.terms().end(); ++it)
        if (lex_less(best->first, it->first)) best = it;
    return {best->first, best->second};
}

bool mono_div(const Monomial& num, const Monomial& den, Monomial& out) {
    out.clear();
    std::size_t j = 0;
    for (auto& [name, e] : num) {
        while (j < den.size() && den[j].first < name) return false; // den var missing in num
        if (j < den.size() && den[j].first == name) {
            if (den[j].second > e) return false;
            if (e - den[j].second > 0) out.emplace_back(name, e - den[j].second);
            ++j;
        } else {
            out.emplace_back(name, e);
        }
    }
    return j == den.size();
}
} // namespace

std::optional<std::pair<Rat, Poly>> try_square(const Poly& p) {
    if (p.is_zero()) return std::make_pair(Rat(0), Poly());
    for (auto& [m, c] : p.terms())
        if (sgn(c.im) != 0) return std::nullopt;
    auto [lm, lc] = leading(p);
    if (sgn(lc.re) <= 0) return std::nullopt;
    Monomial half;
    for (auto& [name, e] : lm) {
        if (e % 2 != 0) return std::nullopt;
        half.emplace_back(name, e / 2);
    }
    Rat c = lc.re;
    Poly g;
    g = Poly(GaussRat(Rat(1)), p.ctx());
    {
        Poly mono;
        mono = Poly(GaussRat(Rat(1)), p.ctx());
        for (auto& [name, e] : half) mono = mono * Poly::var(name, p.ctx(), e);
        g = mono;
    }
    Monomial prev_lm = lm;
    bool first = true;
    for (std::size_t guard = 0; guard <= 4 * p.term_count() + 16; ++guard) {
        Poly e = p - (g * g).scaled(GaussRat(c));
        if (e.is_zero()) return std::make_pair(c, g);
        auto [em, ec] = leading(e);
        if (!first && !lex_less(em, prev_lm)) return std::nullopt; // not converging
        first = false;
        prev_lm = em;
        Monomial q;
        if (!mono_div(em, half, q)) return std::nullopt;
        GaussRat qc = ec * GaussRat(Rat(1) / (2 * c));
        Poly t(qc, p.ctx());
        for (auto& [name, exp] : q) t = t * Poly::var(name, p.ctx(), exp);
        g += t;
    }
    return std::nullopt;
}

Poly divide_exact(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw std::domain_error("divide_exact: zero divisor");
    if (num.is_zero()) return Poly();
    if (den.is_constant()) return num.scaled(den.constant_value().inv());
    ParamTablePtr ctx = num.ctx() ? num.ctx() : den.ctx();
    auto [dm, dc] = leading(den);
    GaussRat dcInv = dc.inv();
    Poly q, r = num;
    Monomial prev;
    bool first = true;
    while (!r.is_zero()) {
        auto [rm, rc] = leading(r);
        // leading monomials must strictly decrease; a rewrite rule could in
        // principle break that, and then the quotient is not reachable here
        if (!first && !lex_less(rm, prev)) throw std::domain_error("divide_exact: not divisible");
        first = false;
        prev = rm;
        Monomial t;
        if (!mono_div(rm, dm, t)) throw std::domain_error("divide_exact: not divisible");
        Poly part(rc * dcInv, ctx);
        for (auto& [name, exp] : t) part = part * Poly::var(name, ctx, exp);
        q += part;
        r -= part * den;
    }
    return q;
}

} // namespace sv

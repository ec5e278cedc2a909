#pragma once
#include <gmpxx.h>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace sv {

using Int = mpz_class;
using Rat = mpq_class;

inline std::string rat_str(const Rat& q) {
    std::string s = q.get_str();
    return s;
}

inline Rat rat_of(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Exact square root of a nonnegative rational, if it is a perfect square.
inline bool rat_sqrt(const Rat& q, Rat& out) {
    if (sgn(q) < 0) return false;
    const Int& n = q.get_num();
    const Int& d = q.get_den();
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
    if (mpz_perfect_square_p(d.get_mpz_t()) == 0) return false;
    Int rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    out = Rat(rn, rd);
    out.canonicalize();
    return true;
}

// Element of Q(i): exact rational real and imaginary parts.
struct GaussRat {
    Rat re, im;

    GaussRat() : re(0), im(0) {}
    GaussRat(long n) : re(n), im(0) {}
    GaussRat(const Rat& r) : re(r), im(0) {}
    GaussRat(const Rat& r, const Rat& i) : re(r), im(i) {}
    static GaussRat make_i(long k = 1) { return GaussRat(Rat(0), Rat(k)); }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    GaussRat conj() const { return GaussRat(re, -im); }

    GaussRat operator-() const { return GaussRat(-re, -im); }
    GaussRat& operator+=(const GaussRat& o) { re += o.re; im += o.im; return *this; }
    GaussRat& operator-=(const GaussRat& o) { re -= o.re; im -= o.im; return *this; }
    GaussRat& operator*=(const GaussRat& o) {
        Rat r = re * o.re - im * o.im;
        Rat i = re * o.im + im * o.re;
        re = r; im = i;
        return *this;
    }
    friend GaussRat operator+(GaussRat a, const GaussRat& b) { a += b; return a; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { a -= b; return a; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { a *= b; return a; }
    friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
    // container ordering only, not a numeric order on Q(i)
    friend bool operator<(const GaussRat& a, const GaussRat& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    }

    // |q|^2 = q * conj(q), a rational
    Rat norm2() const { return re * re + im * im; }

    GaussRat inv() const {
        Rat n = norm2();
        if (sgn(n) == 0) throw std::domain_error("GaussRat::inv: division by zero");
        return GaussRat(re / n, -im / n);
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) { return a * b.inv(); }

    double to_double() const { return re.get_d(); } // real part; callers check is_real
};

// Deterministic seeded RNG used by every sampling routine.
// mt19937_64 plus explicit modular reductions so streams are identical
// across standard libraries.
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}

    long int_in(long lo, long hi) { // inclusive
        return lo + static_cast<long>(gen() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    Rat rat(long maxAbsNum = 9, long maxDen = 9) {
        long n = int_in(-maxAbsNum, maxAbsNum);
        long d = int_in(1, maxDen);
        return rat_of(n, d);
    }
    Rat nonzero_rat(long maxAbsNum = 9, long maxDen = 9) {
        for (;;) {
            Rat q = rat(maxAbsNum, maxDen);
            if (sgn(q) != 0) return q;
        }
    }
    GaussRat gauss(long maxAbsNum = 9, long maxDen = 9) {
        Rat r = rat(maxAbsNum, maxDen);
        Rat i = rat(maxAbsNum, maxDen);
        return GaussRat(r, i);
    }
};

} // namespace sv

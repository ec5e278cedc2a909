#pragma once
#include "sv/poly.hpp"
#include "sv/rational.hpp"
#include <optional>
#include <vector>

namespace sv {

template <class K>
using Matrix = std::vector<std::vector<K>>;

// Zero test and exact division for the elimination routines.
template <class K>
struct ScalarOps;

template <>
struct ScalarOps<Rat> {
    static bool is_zero(const Rat& x) { return sgn(x) == 0; }
    static Rat div(const Rat& a, const Rat& b) { return a / b; }
};

template <>
struct ScalarOps<Int> {
    static bool is_zero(const Int& x) { return sgn(x) == 0; }
    static Int div(const Int& a, const Int& b) {
        Int q;
        mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
    }
};

template <>
struct ScalarOps<GaussRat> {
    static bool is_zero(const GaussRat& x) { return x.is_zero(); }
    static GaussRat div(const GaussRat& a, const GaussRat& b) { return a * b.inv(); }
};

template <>
struct ScalarOps<Poly> {
    static bool is_zero(const Poly& p) { return p.is_zero(); }
    static Poly div(const Poly& a, const Poly& b) { return divide_exact(a, b); }
};

// One-step fraction-free elimination (Bareiss). Every division is by the
// previous pivot and is exact by the Sylvester identity, so entries never
// leave the ring; valid over Z, over polynomial rings, and over fields.
// Deterministic: pivot is the first nonzero entry scanning down each column.
// Returns the rank; pivot columns are appended to *pivots in order.
template <class K>
int bareiss_echelon(Matrix<K>& m, std::vector<int>* pivots = nullptr) {
    using Ops = ScalarOps<K>;
    const int rows = static_cast<int>(m.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
    int r = 0;
    K prev{};
    bool havePrev = false;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (!Ops::is_zero(m[i][c])) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(m[r], m[pr]);
        for (int i = r + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j) {
                K t = m[r][c] * m[i][j] - m[i][c] * m[r][j];
                m[i][j] = havePrev ? Ops::div(t, prev) : std::move(t);
            }
            m[i][c] = K{};
        }
        prev = m[r][c];
        havePrev = true;
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return r;
}

template <class K>
int rank_of(Matrix<K> m) {
    return bareiss_echelon(m);
}

// Rank of a rational matrix: denominators are cleared row by row, then the
// integer Bareiss echelon runs without ever forming a fraction.
inline int rank_rational(const Matrix<Rat>& m) {
    Matrix<Int> w;
    w.reserve(m.size());
    for (const auto& row : m) {
        Int l = 1;
        for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
        std::vector<Int> out;
        out.reserve(row.size());
        for (const auto& x : row) {
            Rat s = x * Rat(l);
            s.canonicalize();
            out.push_back(s.get_num());
        }
        w.push_back(std::move(out));
    }
    return bareiss_echelon(w);
}

// Reduced row echelon form over a field; pivots are normalized to 1 and
// cleared above and below. Zero rows sink to the bottom and stay in place.
template <class K>
void rref(Matrix<K>& m, std::vector<int>& pivots) {
    using Ops = ScalarOps<K>;
    pivots.clear();
    const int rows = static_cast<int>(m.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (!Ops::is_zero(m[i][c])) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(m[r], m[pr]);
        K piv = m[r][c];
        for (int j = c; j < cols; ++j) m[r][j] = Ops::div(m[r][j], piv);
        for (int i = 0; i < rows; ++i) {
            if (i == r || Ops::is_zero(m[i][c])) continue;
            K f = m[i][c];
            for (int j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
}

// Kernel basis of m (as column-vector solutions of m x = 0): one generator
// per free column in ascending order, with entry 1 at its free column and
// support otherwise only on earlier pivot columns.
template <class K>
Matrix<K> nullspace(Matrix<K> m) {
    const int cols = m.empty() ? 0 : static_cast<int>(m[0].size());
    std::vector<int> pivots;
    rref(m, pivots);
    std::vector<bool> isPivot(cols, false);
    for (int c : pivots) isPivot[c] = true;
    Matrix<K> basis;
    for (int f = 0; f < cols; ++f) {
        if (isPivot[f]) continue;
        std::vector<K> v(cols, K{});
        v[f] = K(1);
        for (std::size_t j = 0; j < pivots.size(); ++j)
            v[pivots[j]] = -m[j][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

// A particular solution of A x = b, or nullopt when inconsistent.
// Free variables are set to zero.
template <class K>
std::optional<std::vector<K>> solve(Matrix<K> a, const std::vector<K>& b) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    for (int i = 0; i < rows; ++i) a[i].push_back(b[i]);
    std::vector<int> pivots;
    rref(a, pivots);
    std::vector<K> x(cols, K{});
    for (std::size_t j = 0; j < pivots.size(); ++j) {
        if (pivots[j] == cols) return std::nullopt; // pivot in the rhs column
        x[pivots[j]] = a[j][cols];
    }
    return x;
}

// Smallest integer multiple of a rational vector, keeping orientation.
inline std::vector<Rat> primitive_scaled(std::vector<Rat> v) {
    Int l = 1, g = 0;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
    for (auto& x : v) {
        x *= Rat(l);
        x.canonicalize();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num().get_mpz_t());
    }
    if (sgn(g) != 0)
        for (auto& x : v) { x /= Rat(g); x.canonicalize(); }
    return v;
}

} // namespace sv

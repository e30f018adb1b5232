#pragma once

// Exact dense linear algebra over the scalar fields, integer Bareiss
// elimination, polynomial Bareiss over Z[eta], and a multimodular
// characteristic polynomial for integer matrices.

#include "matsuo/scalar.hpp"

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

namespace matsuo {

template <class S>
using Matrix = std::vector<std::vector<S>>;

template <class S>
Matrix<S> identity_matrix(std::size_t n) {
    Matrix<S> m(n, std::vector<S>(n, S(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = S(1);
    return m;
}

template <class S>
Matrix<S> multiply(const Matrix<S>& a, const Matrix<S>& b) {
    const std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    Matrix<S> r(n, std::vector<S>(m, S(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (is_zero(a[i][t])) continue;
            for (std::size_t j = 0; j < m; ++j)
                if (!is_zero(b[t][j])) r[i][j] += a[i][t] * b[t][j];
        }
    return r;
}

/// In-place reduced row echelon form; returns pivot columns in row order.
/// Pivot rows are chosen by lowest pivot_weight so symbolic entries stay small.
template <class S>
std::vector<std::size_t> rref(Matrix<S>& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::optional<std::size_t> best;
        for (std::size_t i = r; i < rows; ++i)
            if (!is_zero(m[i][c]) && (!best || pivot_weight(m[i][c]) < pivot_weight(m[*best][c]))) best = i;
        if (!best) continue;
        std::swap(m[r], m[*best]);
        const S inv = S(1) / m[r][c];
        for (std::size_t j = c; j < cols; ++j)
            if (!is_zero(m[r][j])) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || is_zero(m[i][c])) continue;
            const S f = m[i][c];
            for (std::size_t j = c; j < cols; ++j)
                if (!is_zero(m[r][j])) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class S>
std::size_t rank(Matrix<S> m) {
    return rref(m).size();
}

/// Basis of {v : m v = 0}, one vector per free column.
template <class S>
std::vector<std::vector<S>> kernel(Matrix<S> m, std::size_t cols) {
    auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<S>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<S> v(cols, S(0));
        v[f] = S(1);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (!is_zero(m[r][f])) v[pivots[r]] = -m[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class S>
std::optional<Matrix<S>> inverse(const Matrix<S>& a) {
    const std::size_t n = a.size();
    Matrix<S> aug(n, std::vector<S>(2 * n, S(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n + i] = S(1);
    }
    auto pivots = rref(aug);
    if (pivots.size() < n || (n && pivots[n - 1] != n - 1)) return std::nullopt;
    Matrix<S> inv(n, std::vector<S>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

// ---------------------------------------------------------------------------
// Integer elimination.

/// Rank by fraction-free elimination; every division is exact.
inline std::size_t bareiss_rank(Matrix<Integer> m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    Integer prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                m[i][j] = m[i][j] * m[r][c] - m[i][c] * m[r][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    return r;
}

namespace detail {

inline ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

inline ZPoly zsub(ZPoly a, const ZPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Integer(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

/// a / b over Z[x] when b divides a exactly.
inline ZPoly zdivexact(ZPoly a, const ZPoly& b) {
    if (b.empty()) throw arithmetic_error("polynomial division by zero");
    if (a.empty()) return {};
    if (a.size() < b.size()) throw arithmetic_error("inexact polynomial division");
    ZPoly q(a.size() - b.size() + 1, Integer(0));
    for (std::size_t k = q.size(); k-- > 0;) {
        const Integer& top = a[k + b.size() - 1];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), b.back().get_mpz_t())) throw arithmetic_error("inexact polynomial division");
        mpz_divexact(q[k].get_mpz_t(), top.get_mpz_t(), b.back().get_mpz_t());
        for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= q[k] * b[j];
    }
    trim(a);
    if (!a.empty()) throw arithmetic_error("inexact polynomial division");
    trim(q);
    return q;
}

}  // namespace detail

/// Determinant of a matrix over Z[x] by Bareiss elimination.
inline detail::ZPoly bareiss_det(Matrix<detail::ZPoly> m) {
    const std::size_t n = m.size();
    if (n == 0) return {Integer(1)};
    detail::ZPoly prev{Integer(1)};
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].empty()) {
            std::size_t p = k + 1;
            while (p < n && m[p][k].empty()) ++p;
            if (p == n) return {};
            std::swap(m[k], m[p]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = detail::zdivexact(detail::zsub(detail::zmul(m[i][j], m[k][k]), detail::zmul(m[i][k], m[k][j])), prev);
            m[i][k].clear();
        }
        prev = m[k][k];
    }
    detail::ZPoly d = m[n - 1][n - 1];
    if (negate)
        for (auto& c : d) c = -c;
    return d;
}

// ---------------------------------------------------------------------------
// Multimodular characteristic polynomial.

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, a = mulmod(a, a, p))
        if (e & 1) r = mulmod(r, a, p);
    return r;
}

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while (d % 2 == 0) d /= 2, ++s;
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s && composite; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) composite = false;
        }
        if (composite) return false;
    }
    return true;
}

/// Primes just below 2^62, in decreasing order.
inline std::vector<std::uint64_t> large_primes(std::size_t count) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t c = (1ULL << 62) - 1; out.size() < count; c -= 2)
        if (is_prime_u64(c)) out.push_back(c);
    return out;
}

/// Characteristic polynomial det(xI - A) mod p via Hessenberg reduction.
/// Coefficients low to high, monic.
inline std::vector<std::uint64_t> charpoly_mod(std::vector<std::vector<std::uint64_t>> a, std::uint64_t p) {
    const std::size_t n = a.size();
    auto sub = [p](std::uint64_t x, std::uint64_t y) { return x >= y ? x - y : x + p - y; };
    for (std::size_t m = 1; m + 1 < n; ++m) {
        std::size_t piv = m;
        while (piv < n && a[piv][m - 1] == 0) ++piv;
        if (piv == n) continue;
        if (piv != m) {
            std::swap(a[piv], a[m]);
            for (std::size_t i = 0; i < n; ++i) std::swap(a[i][piv], a[i][m]);
        }
        const std::uint64_t inv = powmod(a[m][m - 1], p - 2, p);
        for (std::size_t i = m + 1; i < n; ++i) {
            if (a[i][m - 1] == 0) continue;
            const std::uint64_t u = mulmod(a[i][m - 1], inv, p);
            for (std::size_t j = 0; j < n; ++j) a[i][j] = sub(a[i][j], mulmod(u, a[m][j], p));
            for (std::size_t j = 0; j < n; ++j) a[j][m] = (a[j][m] + mulmod(u, a[j][i], p)) % p;
        }
    }
    // p_k(x) = (x - h_kk) p_{k-1} - sum_{i<k} h_ik prod_{l=i+1}^{k} h_{l,l-1} p_{i-1}
    std::vector<std::vector<std::uint64_t>> P(n + 1);
    P[0] = {1};
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<std::uint64_t> next(k + 1, 0);
        for (std::size_t d = 0; d < P[k - 1].size(); ++d) {
            next[d + 1] = (next[d + 1] + P[k - 1][d]) % p;
            next[d] = sub(next[d], mulmod(a[k - 1][k - 1], P[k - 1][d], p));
        }
        std::uint64_t t = 1;
        for (std::size_t i = k - 1; i-- > 0;) {
            t = mulmod(t, a[i + 1][i], p);
            if (t == 0) break;
            const std::uint64_t c = mulmod(t, a[i][k - 1], p);
            for (std::size_t d = 0; d < P[i].size(); ++d) next[d] = sub(next[d], mulmod(c, P[i][d], p));
        }
        P[k] = std::move(next);
    }
    return P[n];
}

}  // namespace detail

/// Characteristic polynomial det(xI - A) of an integer matrix, exactly.
/// Coefficients low to high. Uses a Hadamard bound on the coefficients.
inline detail::ZPoly charpoly(const Matrix<Integer>& a) {
    const std::size_t n = a.size();
    if (n == 0) return {Integer(1)};
    // |c_{n-m}| <= C(n,m) * r^m with r the largest row 1-norm
    Integer r = 0;
    for (const auto& row : a) {
        Integer s = 0;
        for (const auto& x : row) s += abs(x);
        if (s > r) r = s;
    }
    Integer bound = 0;
    {
        Integer binom = 1, rp = 1;
        for (std::size_t m = 0; m <= n; ++m) {
            Integer term = binom * rp;
            if (term > bound) bound = term;
            binom = binom * static_cast<unsigned long>(n - m) / static_cast<unsigned long>(m + 1);
            rp *= r;
        }
    }
    const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2) + 2;
    const auto primes = detail::large_primes(bits / 61 + 1);
    Integer modulus = 1;
    detail::ZPoly acc(n + 1, Integer(0));
    for (std::uint64_t p : primes) {
        std::vector<std::vector<std::uint64_t>> am(n, std::vector<std::uint64_t>(n));
        Integer pz;
        mpz_set_ui(pz.get_mpz_t(), 0);
        mpz_import(pz.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Integer x;
                mpz_fdiv_r(x.get_mpz_t(), a[i][j].get_mpz_t(), pz.get_mpz_t());
                am[i][j] = mpz_get_ui(x.get_mpz_t());
            }
        auto cp = detail::charpoly_mod(std::move(am), p);
        // CRT: acc = acc + modulus * ((c - acc) * modulus^-1 mod p)
        Integer minv;
        mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), pz.get_mpz_t());
        for (std::size_t k = 0; k <= n; ++k) {
            Integer ck;
            mpz_import(ck.get_mpz_t(), 1, 1, sizeof(cp[k]), 0, 0, &cp[k]);
            Integer delta = (ck - acc[k]) * minv;
            mpz_fdiv_r(delta.get_mpz_t(), delta.get_mpz_t(), pz.get_mpz_t());
            acc[k] += modulus * delta;
        }
        modulus *= pz;
    }
    const Integer half = modulus / 2;
    for (auto& c : acc)
        if (c > half) c -= modulus;
    detail::trim(acc);
    return acc;
}

}  // namespace matsuo

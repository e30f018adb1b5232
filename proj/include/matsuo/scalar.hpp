#pragma once

// Exact scalars: rationals (GMP), univariate polynomials in eta over Q and the
// rational-function field Q(eta).  Everything is canonical after construction,
// so equality is structural.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace matsuo {

using Integer = mpz_class;
using Rational = mpq_class;

struct arithmetic_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct pole_error : arithmetic_error {
    using arithmetic_error::arithmetic_error;
};

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw arithmetic_error("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational parse_rational(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        std::size_t k = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (k == t.size()) return false;
        for (; k < t.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(t[k]))) return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw std::invalid_argument("malformed rational: " + text);
    if (num[0] == '+') num.erase(0, 1);
    Integer n(num), d(den);
    if (d == 0) throw arithmetic_error("zero denominator in " + text);
    Rational r(n, d);
    r.canonicalize();
    return r;
}

namespace detail {

// Dense integer polynomials, index = degree, no trailing zeros.
using ZPoly = std::vector<Integer>;

inline void trim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Integer content(const ZPoly& p) {
    Integer g = 0;
    for (const auto& c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

inline ZPoly primitive_part(ZPoly p) {
    Integer g = content(p);
    if (g == 0) return p;
    if (p.back() < 0) g = -g;
    if (g != 1)
        for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return p;
}

inline void divexact(ZPoly& p, const Integer& d) {
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
}

inline Integer ipow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// Collins' subresultant PRS; returns the primitive gcd with positive leading
// coefficient.  Both inputs nonzero.
inline ZPoly subresultant_gcd(ZPoly a, ZPoly b) {
    if (a.size() < b.size()) std::swap(a, b);
    a = primitive_part(std::move(a));
    b = primitive_part(std::move(b));
    if (b.size() == 1) return ZPoly{1};
    Integer g = 1, h = 1;
    while (true) {
        const unsigned long delta = a.size() - b.size();
        // prem with the exact power lc(b)^(delta+1)
        ZPoly r = a;
        {
            const std::size_t db = b.size() - 1;
            const Integer& lb = b.back();
            unsigned long steps = 0;
            while (!r.empty() && r.size() - 1 >= db) {
                Integer lr = r.back();
                const std::size_t shift = r.size() - 1 - db;
                for (auto& c : r) c *= lb;
                for (std::size_t k = 0; k <= db; ++k) r[k + shift] -= lr * b[k];
                r.pop_back();
                trim(r);
                ++steps;
            }
            if (steps < delta + 1) {
                Integer f = ipow(lb, delta + 1 - steps);
                for (auto& c : r) c *= f;
            }
        }
        if (r.empty()) break;
        if (r.size() == 1) return ZPoly{1};
        a = std::move(b);
        Integer div = g * ipow(h, delta);
        divexact(r, div);
        b = std::move(r);
        g = a.back();
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            Integer num = ipow(g, delta);
            Integer den = ipow(h, delta - 1);
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
    }
    return primitive_part(std::move(b));
}

}  // namespace detail

/// Polynomial in eta with rational coefficients.  coefficients()[k] is the
/// coefficient of eta^k; the zero polynomial has no coefficients.
class EtaPolynomial {
public:
    EtaPolynomial() = default;
    explicit EtaPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
        for (auto& q : c_) q.canonicalize();
        trim();
    }
    EtaPolynomial(const Rational& constant) {  // NOLINT(implicit)
        if (constant != 0) c_.push_back(constant);
    }
    EtaPolynomial(long constant) : EtaPolynomial(Rational(constant)) {}  // NOLINT

    static EtaPolynomial eta() { return EtaPolynomial(std::vector<Rational>{0, 1}); }
    static EtaPolynomial monomial(const Rational& c, std::size_t degree) {
        std::vector<Rational> v(degree + 1, Rational(0));
        v[degree] = c;
        return EtaPolynomial(std::move(v));
    }
    static EtaPolynomial from_integers(const detail::ZPoly& z) {
        EtaPolynomial p;
        p.c_.reserve(z.size());
        for (const auto& x : z) p.c_.emplace_back(x);
        p.trim();
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coefficients() const { return c_; }
    Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
    const Rational& leading() const {
        if (c_.empty()) throw arithmetic_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    Rational operator()(const Rational& x) const {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    EtaPolynomial derivative() const {
        std::vector<Rational> d;
        for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<long>(k));
        return EtaPolynomial(std::move(d));
    }

    EtaPolynomial monic() const {
        if (is_zero()) return *this;
        if (c_.back() == 1) return *this;
        Rational inv = 1 / c_.back();
        EtaPolynomial r = *this;
        for (auto& q : r.c_) q *= inv;
        return r;
    }

    // Smallest positive L with L*p in Z[eta].
    Integer denominator_lcm() const {
        Integer l = 1;
        for (const auto& q : c_)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        return l;
    }

    /// Integer coefficients of the primitive associate with positive leading
    /// coefficient (the content-normalized form).
    detail::ZPoly primitive_integer() const {
        detail::ZPoly z = scaled_integer(denominator_lcm());
        return detail::primitive_part(std::move(z));
    }

    detail::ZPoly scaled_integer(const Integer& scale) const {
        detail::ZPoly z;
        z.reserve(c_.size());
        for (const auto& q : c_) {
            Rational t = q * scale;
            if (t.get_den() != 1) throw arithmetic_error("scale does not clear denominators");
            z.push_back(t.get_num());
        }
        return z;
    }

    EtaPolynomial content_normalized() const { return from_integers(primitive_integer()); }

    EtaPolynomial& operator+=(const EtaPolynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    EtaPolynomial& operator-=(const EtaPolynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }
    EtaPolynomial& operator*=(const Rational& s) {
        if (s == 0) {
            c_.clear();
        } else {
            for (auto& q : c_) q *= s;
        }
        return *this;
    }
    friend EtaPolynomial operator+(EtaPolynomial a, const EtaPolynomial& b) { return a += b; }
    friend EtaPolynomial operator-(EtaPolynomial a, const EtaPolynomial& b) { return a -= b; }
    friend EtaPolynomial operator-(EtaPolynomial a) {
        for (auto& q : a.c_) q = -q;
        return a;
    }
    friend EtaPolynomial operator*(EtaPolynomial a, const Rational& s) { return a *= s; }
    friend EtaPolynomial operator*(const EtaPolynomial& a, const EtaPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.c_.size() == 1) return b * a.c_[0];
        if (b.c_.size() == 1) return a * b.c_[0];
        EtaPolynomial r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
        mpq_t tmp;
        mpq_init(tmp);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                mpq_mul(tmp, a.c_[i].get_mpq_t(), b.c_[j].get_mpq_t());
                mpq_add(r.c_[i + j].get_mpq_t(), r.c_[i + j].get_mpq_t(), tmp);
            }
        }
        mpq_clear(tmp);
        r.trim();
        return r;
    }
    EtaPolynomial& operator*=(const EtaPolynomial& o) { return *this = *this * o; }

    friend bool operator==(const EtaPolynomial& a, const EtaPolynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const EtaPolynomial& a, const EtaPolynomial& b) { return !(a == b); }

    /// Quotient and remainder over Q.
    friend std::pair<EtaPolynomial, EtaPolynomial> divmod(const EtaPolynomial& a,
                                                          const EtaPolynomial& b) {
        if (b.is_zero()) throw arithmetic_error("polynomial division by zero");
        if (a.degree() < b.degree()) return {EtaPolynomial{}, a};
        std::vector<Rational> rem = a.c_;
        std::vector<Rational> quo(a.c_.size() - b.c_.size() + 1, Rational(0));
        const Rational inv = 1 / b.c_.back();
        for (std::size_t k = quo.size(); k-- > 0;) {
            Rational f = rem[k + b.c_.size() - 1] * inv;
            quo[k] = f;
            if (f == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) rem[k + j] -= f * b.c_[j];
        }
        rem.resize(b.c_.size() - 1);
        return {EtaPolynomial(std::move(quo)), EtaPolynomial(std::move(rem))};
    }

    /// Exact division; throws if b does not divide a.
    friend EtaPolynomial exact_quotient(const EtaPolynomial& a, const EtaPolynomial& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw arithmetic_error("inexact polynomial division");
        return q;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

/// Monic gcd over Q (zero only when both inputs are zero).
inline EtaPolynomial gcd(const EtaPolynomial& a, const EtaPolynomial& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return EtaPolynomial(1);
    auto g = detail::subresultant_gcd(a.primitive_integer(), b.primitive_integer());
    return EtaPolynomial::from_integers(g).monic();
}

/// p / gcd(p, p'), content-normalized (integer coefficients, positive lead).
inline EtaPolynomial square_free_part(const EtaPolynomial& p) {
    if (p.is_zero()) throw std::domain_error("square-free part of the zero polynomial");
    if (p.degree() <= 0) return EtaPolynomial(1);
    EtaPolynomial g = gcd(p, p.derivative());
    return exact_quotient(p, g).content_normalized();
}

namespace detail {

// Positive divisors of |n| by trial division; the cofactor after removing
// small primes must be 1 or a probable prime.
inline std::vector<Integer> positive_divisors(Integer n) {
    if (n < 0) n = -n;
    if (n == 0) throw std::domain_error("divisors of zero");
    std::vector<std::pair<Integer, unsigned>> factors;
    auto take = [&](const Integer& p) {
        unsigned e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
            ++e;
        }
        if (e) factors.emplace_back(p, e);
    };
    take(2);
    for (unsigned long p = 3; p <= 1000000 && Integer(p) * p <= n; p += 2) take(Integer(p));
    if (n > 1) {
        if (n > Integer(1000000) * 1000000 && mpz_probab_prime_p(n.get_mpz_t(), 30) == 0)
            throw std::domain_error("integer too large to factor for rational-root search");
        factors.emplace_back(n, 1);
    }
    std::vector<Integer> divs{1};
    for (const auto& [p, e] : factors) {
        const std::size_t base = divs.size();
        Integer pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

}  // namespace detail

/// All rational roots of p, ascending.
inline std::vector<Rational> rational_roots(const EtaPolynomial& p) {
    if (p.is_zero()) throw std::domain_error("rational roots of the zero polynomial");
    std::vector<Rational> roots;
    detail::ZPoly s = square_free_part(p).primitive_integer();
    if (s.size() <= 1) return roots;
    if (s[0] == 0) {
        roots.emplace_back(0);
        s.erase(s.begin());  // squarefree: eta divides exactly once
    }
    if (s.size() > 1) {
        const EtaPolynomial sp = EtaPolynomial::from_integers(s);
        auto nums = detail::positive_divisors(s.front());
        auto dens = detail::positive_divisors(s.back());
        std::vector<Rational> found;
        for (const auto& a : nums)
            for (const auto& b : dens) {
                Integer g;
                mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
                if (g != 1) continue;
                for (int sign : {1, -1}) {
                    Rational r(a * sign, b);
                    r.canonicalize();
                    if (sp(r) == 0) found.push_back(r);
                }
            }
        roots.insert(roots.end(), found.begin(), found.end());
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

/// Element of Q(eta): num/den, reduced, den monic.
class EtaScalar {
public:
    EtaScalar() : den_(1) {}
    EtaScalar(long c) : num_(c), den_(1) {}               // NOLINT(implicit)
    EtaScalar(const Rational& c) : num_(c), den_(1) {}    // NOLINT(implicit)
    EtaScalar(EtaPolynomial p) : num_(std::move(p)), den_(1) {}  // NOLINT(implicit)
    EtaScalar(EtaPolynomial num, EtaPolynomial den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw arithmetic_error("division by zero");
        normalize();
    }

    static EtaScalar eta() { return EtaScalar(EtaPolynomial::eta()); }

    const EtaPolynomial& num() const { return num_; }
    const EtaPolynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    int total_degree() const { return std::max(num_.degree(), 0) + den_.degree(); }

    Rational evaluate(const Rational& x) const {
        Rational d = den_(x);
        if (d == 0) throw pole_error("evaluation at a pole: eta = " + x.get_str());
        return num_(x) / d;
    }

    EtaScalar inverse() const {
        if (is_zero()) throw arithmetic_error("division by zero");
        return EtaScalar(den_, num_);
    }

    EtaScalar& operator+=(const EtaScalar& o) {
        if (den_.is_one() && o.den_.is_one()) {
            num_ += o.num_;
        } else if (den_ == o.den_) {
            num_ += o.num_;
            normalize();
        } else {
            num_ = num_ * o.den_ + o.num_ * den_;
            den_ = den_ * o.den_;
            normalize();
        }
        return *this;
    }
    EtaScalar& operator-=(const EtaScalar& o) { return *this += -o; }
    EtaScalar& operator*=(const EtaScalar& o) {
        if (den_.is_one() && o.den_.is_one()) {
            num_ *= o.num_;
            return *this;
        }
        if (is_zero() || o.is_zero()) return *this = EtaScalar();
        EtaPolynomial g1 = gcd(num_, o.den_);
        EtaPolynomial g2 = gcd(o.num_, den_);
        EtaPolynomial n = exact_quotient(num_, g1) * exact_quotient(o.num_, g2);
        EtaPolynomial d = exact_quotient(den_, g2) * exact_quotient(o.den_, g1);
        num_ = std::move(n);
        den_ = std::move(d);
        fix_monic();
        return *this;
    }
    EtaScalar& operator/=(const EtaScalar& o) { return *this *= o.inverse(); }

    friend EtaScalar operator+(EtaScalar a, const EtaScalar& b) { return a += b; }
    friend EtaScalar operator-(EtaScalar a, const EtaScalar& b) { return a -= b; }
    friend EtaScalar operator*(EtaScalar a, const EtaScalar& b) { return a *= b; }
    friend EtaScalar operator/(EtaScalar a, const EtaScalar& b) { return a /= b; }
    friend EtaScalar operator-(EtaScalar a) {
        a.num_ = -a.num_;
        return a;
    }
    friend bool operator==(const EtaScalar& a, const EtaScalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const EtaScalar& a, const EtaScalar& b) { return !(a == b); }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = EtaPolynomial(1);
            return;
        }
        if (!den_.is_constant()) {
            EtaPolynomial g = gcd(num_, den_);
            if (!g.is_one()) {
                num_ = exact_quotient(num_, g);
                den_ = exact_quotient(den_, g);
            }
        }
        fix_monic();
    }
    void fix_monic() {
        const Rational lc = den_.leading();
        if (lc != 1) {
            Rational inv = 1 / lc;
            num_ *= inv;
            den_ *= inv;
        }
    }

    EtaPolynomial num_;
    EtaPolynomial den_;
};

// Field-generic helpers used by the templated linear algebra.
inline bool is_zero(const Rational& r) { return r == 0; }
inline bool is_zero(const EtaScalar& s) { return s.is_zero(); }

/// Pivot preference: lower is better.
inline std::size_t pivot_weight(const Rational& r) {
    return mpz_sizeinbase(r.get_num_mpz_t(), 2) + mpz_sizeinbase(r.get_den_mpz_t(), 2);
}
inline std::size_t pivot_weight(const EtaScalar& s) { return static_cast<std::size_t>(s.total_degree()); }

inline Rational specialize(const Rational& r, const Rational&) { return r; }
inline Rational specialize(const EtaScalar& s, const Rational& eta0) { return s.evaluate(eta0); }

// ---------------------------------------------------------------------------
// Text form.  Integer-coefficient polynomials in "eta", quotient written as
// "(P)/(Q)"; a denominator of 1 is omitted.

inline std::string format_integer_poly(const detail::ZPoly& z) {
    if (z.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = z.size(); k-- > 0;) {
        const Integer& c = z[k];
        if (c == 0) continue;
        Integer mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        const bool show_coeff = k == 0 || mag != 1;
        if (show_coeff) os << mag.get_str();
        if (k > 0) {
            if (show_coeff) os << "*";
            os << "eta";
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

inline std::string to_string(const EtaPolynomial& p) {
    Integer l = p.denominator_lcm();
    std::string body = format_integer_poly(p.scaled_integer(l));
    if (l == 1) return body;
    return "(" + body + ")/(" + l.get_str() + ")";
}

inline std::string to_string(const EtaScalar& s) {
    if (s.is_zero()) return "0";
    Integer l = s.num().denominator_lcm();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.den().denominator_lcm().get_mpz_t());
    detail::ZPoly n = s.num().scaled_integer(l);
    detail::ZPoly d = s.den().scaled_integer(l);
    Integer g = detail::content(n);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), detail::content(d).get_mpz_t());
    detail::divexact(n, g);
    detail::divexact(d, g);
    if (d.size() == 1 && d[0] == 1) return format_integer_poly(n);
    return "(" + format_integer_poly(n) + ")/(" + format_integer_poly(d) + ")";
}

inline std::ostream& operator<<(std::ostream& os, const EtaPolynomial& p) { return os << to_string(p); }
inline std::ostream& operator<<(std::ostream& os, const EtaScalar& s) { return os << to_string(s); }

namespace detail {

class ScalarParser {
public:
    explicit ScalarParser(const std::string& text) : s_(text) {}

    EtaScalar parse() {
        EtaScalar v = expr();
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("cannot parse scalar '" + s_ + "': " + what);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    EtaScalar expr() {
        EtaScalar v = term();
        while (true) {
            if (eat('+')) {
                v += term();
            } else if (eat('-')) {
                v -= term();
            } else {
                return v;
            }
        }
    }
    EtaScalar term() {
        EtaScalar v = unary();
        while (true) {
            if (eat('*')) {
                v *= unary();
            } else if (eat('/')) {
                EtaScalar d = unary();
                if (d.is_zero()) throw arithmetic_error("division by zero in '" + s_ + "'");
                v /= d;
            } else {
                return v;
            }
        }
    }
    EtaScalar unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    EtaScalar power() {
        EtaScalar base = atom();
        if (eat('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            unsigned long e = std::stoul(s_.substr(start, pos_ - start));
            EtaScalar r(1);
            for (unsigned long k = 0; k < e; ++k) r *= base;
            return r;
        }
        return base;
    }
    EtaScalar atom() {
        skip();
        if (eat('(')) {
            EtaScalar v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (s_.compare(pos_, 3, "eta") == 0) {
            pos_ += 3;
            return EtaScalar::eta();
        }
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("unexpected character at offset " + std::to_string(pos_));
        return EtaScalar(Rational(Integer(s_.substr(start, pos_ - start))));
    }

    std::string s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline EtaScalar parse_scalar(const std::string& text) { return detail::ScalarParser(text).parse(); }

}  // namespace matsuo

#pragma once

// The Matsuo algebra of a Fischer space over Q(eta) or a rational
// specialization: sparse vectors, the product, the Frobenius form, the Gram
// determinant and critical values.

#include "matsuo/fischer_space.hpp"
#include "matsuo/linalg.hpp"

#include <map>
#include <mutex>

namespace matsuo {

struct parameter_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline void require_eta(const Rational& eta0) {
    if (eta0 == 0 || eta0 == 1) throw parameter_error("eta must differ from 0 and 1, got " + to_string(eta0));
}

/// Sparse element of the algebra keyed by point index.
template <class S>
class AlgebraVector {
public:
    AlgebraVector() = default;
    explicit AlgebraVector(const FischerSpace* space) : space_(space) {}

    static AlgebraVector axis(const FischerSpace& sp, int p) {
        AlgebraVector v(&sp);
        v.coeffs_.emplace(p, S(1));
        return v;
    }
    static AlgebraVector from_dense(const FischerSpace& sp, const std::vector<S>& d) {
        AlgebraVector v(&sp);
        for (std::size_t k = 0; k < d.size(); ++k)
            if (!matsuo::is_zero(d[k])) v.coeffs_.emplace(static_cast<int>(k), d[k]);
        return v;
    }

    const FischerSpace* space() const { return space_; }
    const std::map<int, S>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    std::size_t support_size() const { return coeffs_.size(); }

    S operator[](int p) const {
        auto it = coeffs_.find(p);
        return it == coeffs_.end() ? S(0) : it->second;
    }

    void add(int p, const S& c) {
        if (matsuo::is_zero(c)) return;
        auto [it, fresh] = coeffs_.emplace(p, c);
        if (fresh) return;
        it->second += c;
        if (matsuo::is_zero(it->second)) coeffs_.erase(it);
    }

    std::vector<S> dense() const {
        std::vector<S> d(space_ ? space_->size() : 0, S(0));
        for (const auto& [p, c] : coeffs_) d[static_cast<std::size_t>(p)] = c;
        return d;
    }

    AlgebraVector& operator+=(const AlgebraVector& o) {
        check_same(o);
        for (const auto& [p, c] : o.coeffs_) add(p, c);
        return *this;
    }
    AlgebraVector& operator-=(const AlgebraVector& o) {
        check_same(o);
        for (const auto& [p, c] : o.coeffs_) add(p, -c);
        return *this;
    }
    AlgebraVector& operator*=(const S& s) {
        if (matsuo::is_zero(s)) {
            coeffs_.clear();
            return *this;
        }
        for (auto& [p, c] : coeffs_) c *= s;
        return *this;
    }
    friend AlgebraVector operator+(AlgebraVector a, const AlgebraVector& b) { return a += b; }
    friend AlgebraVector operator-(AlgebraVector a, const AlgebraVector& b) { return a -= b; }
    friend AlgebraVector operator*(const S& s, AlgebraVector a) { return a *= s; }
    friend bool operator==(const AlgebraVector& a, const AlgebraVector& b) { return a.coeffs_ == b.coeffs_; }

    void check_same(const AlgebraVector& o) const {
        if (space_ && o.space_ && space_ != o.space_) throw space_error("vectors live in different spaces");
    }
    void bind(const FischerSpace* sp) {
        if (!space_) space_ = sp;
    }

private:
    const FischerSpace* space_ = nullptr;
    std::map<int, S> coeffs_;
};

template <class S>
std::string to_string(const AlgebraVector<S>& v) {
    if (v.is_zero()) return "0";
    std::string out;
    for (const auto& [p, c] : v.coeffs()) {
        if (!out.empty()) out += " + ";
        out += "(" + to_string(c) + ")*" + (v.space() ? v.space()->label(p) : "#" + std::to_string(p));
    }
    return out;
}

template <class S>
nlohmann::json to_json(const AlgebraVector<S>& v) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [p, c] : v.coeffs()) j[v.space() ? v.space()->label(p) : std::to_string(p)] = to_string(c);
    return j;
}

/// Eta as an element of the active field.
template <class S>
S eta_value(const Rational& eta0);
template <>
inline Rational eta_value<Rational>(const Rational& eta0) {
    return eta0;
}
template <>
inline EtaScalar eta_value<EtaScalar>(const Rational&) {
    return EtaScalar::eta();
}

/// Multiplication data for M_eta(space). For S = Rational eta is the
/// specialized value; for S = EtaScalar it is the indeterminate.
template <class S>
class MatsuoAlgebra {
public:
    explicit MatsuoAlgebra(SpacePtr space, const Rational& eta0 = Rational(0))
        : space_(std::move(space)), eta_(eta_value<S>(eta0)), half_(eta_ / S(2)) {
        if constexpr (std::is_same_v<S, Rational>) require_eta(eta0);
        const std::size_t n = space_->size();
        lines_through_.resize(n);
        for (std::size_t x = 0; x < n; ++x)
            for (int q : space_->neighbors(static_cast<int>(x))) {
                const int r = space_->third_or_none(static_cast<int>(x), q);
                if (q < r) lines_through_[x].emplace_back(q, r);
            }
    }

    const FischerSpace& space() const { return *space_; }
    const SpacePtr& space_ptr() const { return space_; }
    std::size_t size() const { return space_->size(); }
    const S& eta() const { return eta_; }
    const S& half_eta() const { return half_; }

    AlgebraVector<S> axis(int p) const { return AlgebraVector<S>::axis(*space_, p); }
    AlgebraVector<S> double_axis(int p, int q) const {
        if (p == q || space_->collinear(p, q)) throw space_error("double axis needs two distinct orthogonal points");
        return axis(p) + axis(q);
    }

    /// Product of two basis points.
    AlgebraVector<S> axis_product(int p, int q) const {
        AlgebraVector<S> v(space_.get());
        if (p == q) {
            v.add(p, S(1));
        } else if (auto r = space_->third(p, q)) {
            v.add(p, half_);
            v.add(q, half_);
            v.add(*r, -half_);
        }
        return v;
    }

    AlgebraVector<S> product(const AlgebraVector<S>& u, const AlgebraVector<S>& v) const {
        check(u);
        check(v);
        AlgebraVector<S> out(space_.get());
        for (const auto& [p, a] : u.coeffs())
            for (const auto& [q, b] : v.coeffs()) {
                if (p == q) {
                    out.add(p, a * b);
                } else if (int r = space_->third_or_none(p, q); r >= 0) {
                    const S h = half_ * a * b;
                    out.add(p, h);
                    out.add(q, h);
                    out.add(r, -h);
                }
            }
        return out;
    }

    /// Dense product, organised per output point to touch each line once.
    std::vector<S> product(const std::vector<S>& u, const std::vector<S>& v) const {
        const std::size_t n = size();
        std::vector<S> nu(n, S(0)), nv(n, S(0));
        std::vector<int> su, sv;
        for (std::size_t k = 0; k < n; ++k) {
            if (!is_zero(u[k])) su.push_back(static_cast<int>(k));
            if (!is_zero(v[k])) sv.push_back(static_cast<int>(k));
        }
        // neighbour sums, gathered from the support only
        for (int p : su)
            for (int x : space_->neighbors(p)) nu[static_cast<std::size_t>(x)] += u[static_cast<std::size_t>(p)];
        for (int p : sv)
            for (int x : space_->neighbors(p)) nv[static_cast<std::size_t>(x)] += v[static_cast<std::size_t>(p)];
        std::vector<S> out(n, S(0));
        for (std::size_t x = 0; x < n; ++x) {
            S line_term(0);
            bool any = false;
            if (!is_zero(u[x]) && !is_zero(nv[x])) line_term += u[x] * nv[x], any = true;
            if (!is_zero(v[x]) && !is_zero(nu[x])) line_term += v[x] * nu[x], any = true;
            for (const auto& [p, q] : lines_through_[x]) {
                const auto pi = static_cast<std::size_t>(p), qi = static_cast<std::size_t>(q);
                if (!is_zero(u[pi]) && !is_zero(v[qi])) line_term -= u[pi] * v[qi], any = true;
                if (!is_zero(u[qi]) && !is_zero(v[pi])) line_term -= u[qi] * v[pi], any = true;
            }
            S c(0);
            if (!is_zero(u[x]) && !is_zero(v[x])) c = u[x] * v[x];
            if (any && !is_zero(line_term)) c += half_ * line_term;
            out[x] = std::move(c);
        }
        return out;
    }

    S frobenius(const AlgebraVector<S>& u, const AlgebraVector<S>& v) const {
        check(u);
        check(v);
        S diag(0), off(0);
        for (const auto& [p, a] : u.coeffs())
            for (const auto& [q, b] : v.coeffs()) {
                if (p == q)
                    diag += a * b;
                else if (space_->collinear(p, q))
                    off += a * b;
            }
        return diag + half_ * off;
    }

    S frobenius(const std::vector<S>& u, const std::vector<S>& v) const {
        S diag(0), off(0);
        for (std::size_t p = 0; p < u.size(); ++p) {
            if (is_zero(u[p])) continue;
            if (!is_zero(v[p])) diag += u[p] * v[p];
            for (int q : space_->neighbors(static_cast<int>(p)))
                if (!is_zero(v[static_cast<std::size_t>(q)])) off += u[p] * v[static_cast<std::size_t>(q)];
        }
        return diag + half_ * off;
    }

private:
    void check(const AlgebraVector<S>& v) const {
        if (v.space() && v.space() != space_.get()) throw space_error("vector belongs to another space");
    }

    SpacePtr space_;
    S eta_, half_;
    std::vector<std::vector<std::pair<int, int>>> lines_through_;
};

template <class S>
AlgebraVector<S> vector_product(const MatsuoAlgebra<S>& m, const AlgebraVector<S>& u, const AlgebraVector<S>& v) {
    if (u.space() && v.space() && u.space() != v.space()) throw space_error("vectors live in different spaces");
    return m.product(u, v);
}

// ---------------------------------------------------------------------------
// Gram matrix and determinant.

struct GramData {
    Matrix<EtaScalar> matrix;
    EtaPolynomial det;  ///< content-normalized, positive leading coefficient
};

/// 0/1 collinearity matrix.
inline Matrix<Integer> collinearity_matrix(const FischerSpace& sp) {
    const std::size_t n = sp.size();
    Matrix<Integer> c(n, std::vector<Integer>(n, Integer(0)));
    for (std::size_t p = 0; p < n; ++p)
        for (int q : sp.neighbors(static_cast<int>(p))) c[p][static_cast<std::size_t>(q)] = 1;
    return c;
}

namespace detail {

inline EtaPolynomial normalize_det(ZPoly z) {
    trim(z);
    if (z.empty()) return EtaPolynomial();
    z = primitive_part(z);
    if (z.back() < 0)
        for (auto& c : z) c = -c;
    return EtaPolynomial::from_integers(z);
}

/// det(2I + eta C) from the characteristic polynomial of C:
/// det(2I + eta C) = (-eta)^n chi_C(-2/eta) = (-1)^n sum_m c_m (-2)^m eta^(n-m).
inline ZPoly det_from_charpoly(const ZPoly& chi) {
    const std::size_t n = chi.size() - 1;
    ZPoly out(n + 1, Integer(0));
    Integer pow2 = 1;
    for (std::size_t m = 0; m <= n; ++m) {
        Integer term = chi[m] * pow2;
        if (m % 2) term = -term;
        if (n % 2) term = -term;
        out[n - m] = term;
        pow2 *= 2;
    }
    trim(out);
    return out;
}

}  // namespace detail

/// Gram determinant of 2*G = 2I + eta*C by Bareiss elimination over Z[eta].
inline EtaPolynomial gram_det_bareiss(const FischerSpace& sp) {
    const std::size_t n = sp.size();
    Matrix<detail::ZPoly> m(n, std::vector<detail::ZPoly>(n));
    for (std::size_t p = 0; p < n; ++p) {
        m[p][p] = {Integer(2)};
        for (int q : sp.neighbors(static_cast<int>(p))) m[p][static_cast<std::size_t>(q)] = {Integer(0), Integer(1)};
    }
    return detail::normalize_det(bareiss_det(std::move(m)));
}

/// The same determinant through the multimodular characteristic polynomial of C.
inline EtaPolynomial gram_det_charpoly(const FischerSpace& sp) {
    return detail::normalize_det(detail::det_from_charpoly(charpoly(collinearity_matrix(sp))));
}

inline constexpr std::size_t kBareissGramLimit = 40;

inline EtaPolynomial gram_det(const FischerSpace& sp) {
    return sp.size() <= kBareissGramLimit ? gram_det_bareiss(sp) : gram_det_charpoly(sp);
}

inline GramData gram(const FischerSpace& sp) {
    const std::size_t n = sp.size();
    GramData g;
    const EtaScalar half = EtaScalar::eta() / 2;
    g.matrix.assign(n, std::vector<EtaScalar>(n, EtaScalar(0)));
    for (std::size_t p = 0; p < n; ++p) {
        g.matrix[p][p] = EtaScalar(1);
        for (int q : sp.neighbors(static_cast<int>(p))) g.matrix[p][static_cast<std::size_t>(q)] = half;
    }
    g.det = gram_det(sp);
    return g;
}

struct CriticalValues {
    std::vector<Rational> roots;          ///< rational roots outside {0, 1}
    std::vector<Rational> excluded_roots; ///< rational roots at 0 or 1
    EtaPolynomial certificate;            ///< square-free part of the determinant
    EtaPolynomial det;
};

namespace detail {

/// Square-free part of chi_C; for symmetric C this is the minimal polynomial.
inline ZPoly distinct_eigenvalue_polynomial(const ZPoly& chi) {
    return square_free_part(EtaPolynomial::from_integers(chi)).primitive_integer();
}

}  // namespace detail

/// Critical values: rational roots of det(2I + eta C). Rational eigenvalues
/// of the symmetric integer matrix C are integers bounded by its row sums,
/// so the rational roots are exactly -2/lambda for those integers.
inline CriticalValues critical_values(const FischerSpace& sp) {
    CriticalValues out;
    const auto c = collinearity_matrix(sp);
    const auto chi = charpoly(c);
    out.det = detail::normalize_det(detail::det_from_charpoly(chi));
    if (sp.size() <= kBareissGramLimit) {
        EtaPolynomial direct = gram_det_bareiss(sp);
        if (direct != out.det) throw arithmetic_error("Gram determinant routes disagree");
    }
    int rho = 0;
    for (std::size_t p = 0; p < sp.size(); ++p) rho = std::max(rho, static_cast<int>(sp.neighbors(static_cast<int>(p)).size()));
    EtaPolynomial chip = EtaPolynomial::from_integers(chi);
    std::vector<Rational> roots;
    for (int lambda = -rho; lambda <= rho; ++lambda) {
        if (lambda == 0 || chip(Rational(lambda)) != 0) continue;
        roots.push_back(make_rational(-2, lambda));
    }
    std::sort(roots.begin(), roots.end());
    for (auto& r : roots) (r == 0 || r == 1 ? out.excluded_roots : out.roots).push_back(r);
    // distinct nonzero eigenvalues of C, transported to eta = -2/lambda
    detail::ZPoly m = detail::distinct_eigenvalue_polynomial(chi);
    while (!m.empty() && m.front() == 0) m.erase(m.begin());
    detail::ZPoly q = detail::det_from_charpoly(m);
    out.certificate = q.empty() ? EtaPolynomial(1) : detail::normalize_det(q);
    return out;
}

/// Cached per space id; the determinant of a 162-point space takes a moment.
inline const CriticalValues& cached_critical_values(const FischerSpace& sp) {
    static std::mutex mu;
    static std::map<std::string, CriticalValues> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(sp.id());
    if (it == cache.end()) it = cache.emplace(sp.id(), critical_values(sp)).first;
    return it->second;
}

/// dim of the kernel of the Gram matrix at eta0.
inline std::size_t radical_dim(const FischerSpace& sp, const Rational& eta0) {
    require_eta(eta0);
    const std::size_t n = sp.size();
    // den * (2I + eta0 C) = 2 den I + num C
    const Integer num = eta0.get_num(), den = eta0.get_den();
    Matrix<Integer> m(n, std::vector<Integer>(n, Integer(0)));
    for (std::size_t p = 0; p < n; ++p) {
        m[p][p] = 2 * den;
        for (int q : sp.neighbors(static_cast<int>(p))) m[p][static_cast<std::size_t>(q)] = num;
    }
    return n - bareiss_rank(std::move(m));
}

inline nlohmann::json critical_report(const FischerSpace& sp, const CriticalValues& cv) {
    nlohmann::json roots = nlohmann::json::array(), excluded = nlohmann::json::array();
    for (const auto& r : cv.roots) roots.push_back(to_string(r));
    for (const auto& r : cv.excluded_roots) excluded.push_back(to_string(r));
    return {{"space", sp.id()},
            {"det_degree", cv.det.degree()},
            {"rational_roots", roots},
            {"excluded_roots", excluded},
            {"squarefree_certificate", to_string(cv.certificate)},
            {"determinant", to_string(cv.det)}};
}

}  // namespace matsuo

#pragma once

// Subalgebra generation by worklist closure over an echelon basis.

#include "matsuo/algebra.hpp"

#include <variant>

namespace matsuo {

struct unsafe_eta_error : parameter_error {
    using parameter_error::parameter_error;
};

/// Symbolic (over Q(eta)) or evaluated at a rational eta0.
struct ScalarMode {
    bool symbolic = true;
    Rational eta0 = 0;
    bool allow_critical = false;

    static ScalarMode symbolic_mode() { return {}; }
    static ScalarMode evaluated(const Rational& r, bool allow_critical = false) { return {false, r, allow_critical}; }

    std::string describe() const { return symbolic ? "symbolic" : "eta=" + to_string(eta0); }
};

inline ScalarMode parse_mode(const std::string& text, bool allow_critical = false) {
    if (text == "symbolic") return ScalarMode::symbolic_mode();
    if (text.rfind("eta=", 0) == 0) return ScalarMode::evaluated(parse_rational(text.substr(4)), allow_critical);
    throw std::invalid_argument("mode must be 'symbolic' or 'eta=<rational>', got '" + text + "'");
}

/// Values where specialization is known to be delicate for this space.
inline std::vector<Rational> unsafe_values(const FischerSpace& sp) {
    std::vector<Rational> out{make_rational(1, 2), Rational(2), Rational(-1)};
    for (const auto& r : cached_critical_values(sp).roots)
        if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
    std::sort(out.begin(), out.end());
    return out;
}

inline bool is_safe_eta(const FischerSpace& sp, const Rational& eta0) {
    if (eta0 == 0 || eta0 == 1) return false;
    auto bad = unsafe_values(sp);
    return std::find(bad.begin(), bad.end(), eta0) == bad.end();
}

inline void check_mode(const FischerSpace& sp, const ScalarMode& mode) {
    if (mode.symbolic) return;
    require_eta(mode.eta0);
    if (!mode.allow_critical && !is_safe_eta(sp, mode.eta0))
        throw unsafe_eta_error("eta=" + to_string(mode.eta0) + " is critical or special for " + sp.id() +
                               "; override with --allow-critical");
}

// ---------------------------------------------------------------------------

/// Reduced echelon basis of dense vectors. Rows are kept sorted by pivot
/// column; the pivot of a new row is its entry of least pivot_weight.
template <class S>
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t dim = 0) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return rows_.size(); }
    const std::vector<std::vector<S>>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    std::vector<S> reduce(std::vector<S> v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const std::size_t c = pivots_[r];
            if (is_zero(v[c])) continue;
            const S f = v[c];
            const auto& row = rows_[r];
            for (std::size_t j = 0; j < dim_; ++j)
                if (!is_zero(row[j])) v[j] -= f * row[j];
        }
        return v;
    }

    static bool all_zero(const std::vector<S>& v) {
        for (const auto& x : v)
            if (!is_zero(x)) return false;
        return true;
    }

    bool contains(const std::vector<S>& v) const { return all_zero(reduce(v)); }

    /// Adds v to the span; returns false if it was already there.
    bool insert(const std::vector<S>& v) {
        std::vector<S> rem = reduce(v);
        std::optional<std::size_t> pc;
        for (std::size_t j = 0; j < dim_; ++j)
            if (!is_zero(rem[j]) && (!pc || pivot_weight(rem[j]) < pivot_weight(rem[*pc]))) pc = j;
        if (!pc) return false;
        const S inv = S(1) / rem[*pc];
        for (auto& x : rem)
            if (!is_zero(x)) x *= inv;
        for (auto& row : rows_) {
            if (is_zero(row[*pc])) continue;
            const S f = row[*pc];
            for (std::size_t j = 0; j < dim_; ++j)
                if (!is_zero(rem[j])) row[j] -= f * rem[j];
        }
        auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), *pc) - pivots_.begin();
        pivots_.insert(pivots_.begin() + pos, *pc);
        rows_.insert(rows_.begin() + pos, std::move(rem));
        return true;
    }

    /// Coordinates of v against rows(); throws if v is outside the span.
    std::vector<S> coordinates(const std::vector<S>& v) const {
        std::vector<S> coords(rows_.size(), S(0));
        for (std::size_t r = 0; r < rows_.size(); ++r) coords[r] = v[pivots_[r]];
        if (!contains(v)) throw std::invalid_argument("vector is not in the span");
        return coords;
    }

    /// Leftmost-pivot reduced echelon form, independent of insertion order.
    Matrix<S> canonical() const {
        Matrix<S> m = rows_;
        rref(m);
        return m;
    }

private:
    std::size_t dim_;
    std::vector<std::vector<S>> rows_;
    std::vector<std::size_t> pivots_;
};

// ---------------------------------------------------------------------------

enum class Role { Single, Double, Other };

inline std::string role_name(Role r) {
    switch (r) {
        case Role::Single: return "single";
        case Role::Double: return "double";
        case Role::Other: return "other";
    }
    return "other";
}

/// Generator with rational coefficients; converted into the active field.
struct Generator {
    std::map<int, Rational> coeffs;
    Role role = Role::Other;
    std::string name;

    static Generator single(const FischerSpace& sp, int p) { return {{{p, Rational(1)}}, Role::Single, sp.label(p)}; }
    static Generator pair(const FischerSpace& sp, int p, int q) {
        Role role = sp.collinear(p, q) ? Role::Other : Role::Double;
        return {{{p, Rational(1)}, {q, Rational(1)}}, role, sp.label(p) + "+" + sp.label(q)};
    }

    template <class S>
    std::vector<S> dense(std::size_t n) const {
        std::vector<S> d(n, S(0));
        for (const auto& [p, c] : coeffs) d.at(static_cast<std::size_t>(p)) += S(c);
        return d;
    }
};

/// Parses "lbl+lbl;lbl" style generator lists; "2*lbl" and "-lbl" are allowed.
inline std::vector<Generator> parse_generators(const FischerSpace& sp, const std::string& spec) {
    std::vector<Generator> gens;
    std::size_t start = 0;
    while (start <= spec.size()) {
        std::size_t end = spec.find(';', start);
        if (end == std::string::npos) end = spec.size();
        std::string item = spec.substr(start, end - start);
        start = end + 1;
        if (item.find_first_not_of(" \t") == std::string::npos) {
            if (end == spec.size()) break;
            throw std::invalid_argument("empty generator in '" + spec + "'");
        }
        Generator g;
        g.name = item;
        // split on + and - outside braces and parentheses
        std::vector<std::pair<int, std::string>> terms;
        int depth = 0, sign = 1;
        std::string cur;
        auto flush = [&] {
            auto b = cur.find_first_not_of(" \t"), e = cur.find_last_not_of(" \t");
            if (b == std::string::npos) throw std::invalid_argument("malformed generator '" + item + "'");
            terms.emplace_back(sign, cur.substr(b, e - b + 1));
            cur.clear();
        };
        for (char ch : item) {
            if (ch == '{' || ch == '(') ++depth;
            if (ch == '}' || ch == ')') --depth;
            if (depth == 0 && (ch == '+' || ch == '-')) {
                if (cur.find_first_not_of(" \t") != std::string::npos) flush();
                sign = ch == '-' ? -1 : 1;
                continue;
            }
            cur += ch;
        }
        flush();
        for (auto& [sg, text] : terms) {
            Rational c(sg);
            auto star = text.find('*');
            if (star != std::string::npos && text.find('(') > star) {
                c *= parse_rational(text.substr(0, star));
                text = text.substr(star + 1);
            }
            g.coeffs[sp.find(text)] += c;
        }
        for (auto it = g.coeffs.begin(); it != g.coeffs.end();)
            it = it->second == 0 ? g.coeffs.erase(it) : std::next(it);
        if (g.coeffs.empty()) throw std::invalid_argument("generator '" + item + "' is zero");
        if (g.coeffs.size() == 1 && g.coeffs.begin()->second == 1) g.role = Role::Single;
        if (g.coeffs.size() == 2) {
            auto a = g.coeffs.begin(), b = std::next(a);
            if (a->second == 1 && b->second == 1 && !sp.collinear(a->first, b->first)) g.role = Role::Double;
        }
        gens.push_back(std::move(g));
    }
    return gens;
}

struct CloseOptions {
    /// Stop as soon as the span reaches this dimension. Only sound when the
    /// bound is the dimension of a known subalgebra containing the generators.
    std::optional<std::size_t> upper_bound;
};

template <class S>
class Subalgebra {
public:
    using Algebra = MatsuoAlgebra<S>;

    Subalgebra(std::shared_ptr<const Algebra> algebra, ScalarMode mode, std::vector<Generator> gens)
        : algebra_(std::move(algebra)), mode_(std::move(mode)), gens_(std::move(gens)), basis_(algebra_->size()) {}

    const Algebra& algebra() const { return *algebra_; }
    const std::shared_ptr<const Algebra>& algebra_ptr() const { return algebra_; }
    const FischerSpace& space() const { return algebra_->space(); }
    const ScalarMode& mode() const { return mode_; }
    const std::vector<Generator>& generators() const { return gens_; }
    const EchelonBasis<S>& basis() const { return basis_; }
    std::size_t dimension() const { return basis_.size(); }
    /// Unreduced products that were accepted into the basis, in order.
    const std::vector<std::vector<S>>& words() const { return words_; }
    bool stopped_at_bound() const { return stopped_at_bound_; }

    std::vector<S> product(const std::vector<S>& u, const std::vector<S>& v) const { return algebra_->product(u, v); }

    bool contains(const std::vector<S>& v) const { return basis_.contains(v); }
    bool contains(const AlgebraVector<S>& v) const { return basis_.contains(v.dense()); }
    std::vector<S> coordinates(const std::vector<S>& v) const { return basis_.coordinates(v); }

    std::vector<AlgebraVector<S>> basis_vectors() const {
        std::vector<AlgebraVector<S>> out;
        for (const auto& r : basis_.rows()) out.push_back(AlgebraVector<S>::from_dense(space(), r));
        return out;
    }

    /// Every product of two basis rows lies in the span.
    bool is_closed() const {
        const auto& rows = basis_.rows();
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = i; j < rows.size(); ++j)
                if (!basis_.contains(product(rows[i], rows[j]))) return false;
        return true;
    }

    /// c[i][j][k]: coefficient of row k in row_i * row_j. Computed on demand.
    const std::vector<Matrix<S>>& structure_constants() const {
        if (!structure_) {
            const auto& rows = basis_.rows();
            const std::size_t d = rows.size();
            std::vector<Matrix<S>> c(d, Matrix<S>(d));
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = i; j < d; ++j) {
                    c[i][j] = coordinates(product(rows[i], rows[j]));
                    c[j][i] = c[i][j];
                }
            structure_ = std::move(c);
        }
        return *structure_;
    }

    void insert_generator(const std::vector<S>& v) {
        if (basis_.insert(v)) words_.push_back(v);
    }

    /// Worklist: every pair (i <= j) of accepted words is multiplied once,
    /// in order of j then i, and non-trivial remainders become new words.
    void run(const CloseOptions& opt) {
        auto reached = [&] { return opt.upper_bound && basis_.size() >= *opt.upper_bound; };
        if (reached()) {
            stopped_at_bound_ = true;
            return;
        }
        for (std::size_t j = 0; j < words_.size(); ++j)
            for (std::size_t i = 0; i <= j; ++i) {
                auto w = product(words_[i], words_[j]);
                if (basis_.insert(w)) {
                    words_.push_back(std::move(w));
                    if (reached()) {
                        stopped_at_bound_ = true;
                        return;
                    }
                }
            }
    }

    nlohmann::json to_json(bool with_structure = false) const {
        nlohmann::json gens = nlohmann::json::array();
        for (const auto& g : gens_) gens.push_back({{"name", g.name}, {"role", role_name(g.role)}});
        nlohmann::json basis = nlohmann::json::array();
        for (const auto& v : basis_vectors()) basis.push_back(matsuo::to_json(v));
        nlohmann::json j{{"space", space().id()},
                         {"mode", mode_.describe()},
                         {"generators", gens},
                         {"dimension", dimension()},
                         {"basis", basis}};
        if (with_structure) {
            nlohmann::json t = nlohmann::json::array();
            for (const auto& plane : structure_constants()) {
                nlohmann::json rows = nlohmann::json::array();
                for (const auto& coords : plane) {
                    nlohmann::json r = nlohmann::json::array();
                    for (const auto& x : coords) r.push_back(to_string(x));
                    rows.push_back(r);
                }
                t.push_back(rows);
            }
            j["structure"] = t;
        }
        return j;
    }

    /// row,col,expansion of basis_row * basis_col in the basis.
    std::string structure_csv() const {
        std::string out = "row,col,expansion\n";
        const auto& c = structure_constants();
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < c.size(); ++j) {
                std::string e;
                for (std::size_t k = 0; k < c.size(); ++k) {
                    if (is_zero(c[i][j][k])) continue;
                    if (!e.empty()) e += " + ";
                    e += "(" + to_string(c[i][j][k]) + ")*r" + std::to_string(k);
                }
                out += std::to_string(i) + "," + std::to_string(j) + ",\"" + (e.empty() ? "0" : e) + "\"\n";
            }
        return out;
    }

private:
    std::shared_ptr<const Algebra> algebra_;
    ScalarMode mode_;
    std::vector<Generator> gens_;
    EchelonBasis<S> basis_;
    std::vector<std::vector<S>> words_;
    bool stopped_at_bound_ = false;
    mutable std::optional<std::vector<Matrix<S>>> structure_;
};

template <class S>
std::shared_ptr<const MatsuoAlgebra<S>> make_algebra(SpacePtr sp, const ScalarMode& mode) {
    if constexpr (std::is_same_v<S, EtaScalar>) {
        if (!mode.symbolic) throw std::invalid_argument("symbolic algebra requested in evaluated mode");
        return std::make_shared<const MatsuoAlgebra<S>>(std::move(sp));
    } else {
        if (mode.symbolic) throw std::invalid_argument("evaluated algebra requested in symbolic mode");
        return std::make_shared<const MatsuoAlgebra<S>>(std::move(sp), mode.eta0);
    }
}

template <class S>
Subalgebra<S> close(std::shared_ptr<const MatsuoAlgebra<S>> algebra, const std::vector<Generator>& gens,
                    const ScalarMode& mode, const CloseOptions& opt = {}) {
    check_mode(algebra->space(), mode);
    Subalgebra<S> A(algebra, mode, gens);
    const std::size_t n = algebra->size();
    for (const auto& g : gens) {
        for (const auto& [p, c] : g.coeffs)
            if (p < 0 || static_cast<std::size_t>(p) >= n) throw space_error("generator point out of range");
        A.insert_generator(g.template dense<S>(n));
    }
    A.run(opt);
    return A;
}

inline Subalgebra<EtaScalar> close_symbolic(SpacePtr sp, const std::vector<Generator>& gens, const CloseOptions& opt = {}) {
    return close<EtaScalar>(make_algebra<EtaScalar>(std::move(sp), ScalarMode::symbolic_mode()), gens,
                            ScalarMode::symbolic_mode(), opt);
}

inline Subalgebra<Rational> close_evaluated(SpacePtr sp, const std::vector<Generator>& gens, const Rational& eta0,
                                            bool allow_critical = false, const CloseOptions& opt = {}) {
    auto mode = ScalarMode::evaluated(eta0, allow_critical);
    return close<Rational>(make_algebra<Rational>(std::move(sp), mode), gens, mode, opt);
}

/// Symbolic closure specialized last: the accepted words are polynomial in
/// eta, so they evaluate at eta0; the evaluated words are then closed again.
inline Subalgebra<Rational> specialize(const Subalgebra<EtaScalar>& A, const Rational& eta0, bool allow_critical = false) {
    auto mode = ScalarMode::evaluated(eta0, allow_critical);
    check_mode(A.space(), mode);
    auto alg = make_algebra<Rational>(A.algebra().space_ptr(), mode);
    Subalgebra<Rational> B(alg, mode, A.generators());
    try {
        for (const auto& w : A.words()) {
            std::vector<Rational> e(w.size());
            for (std::size_t k = 0; k < w.size(); ++k) e[k] = w[k].evaluate(eta0);
            B.insert_generator(e);
        }
    } catch (const pole_error& err) {
        throw unsafe_eta_error(std::string("pole while specializing: ") + err.what());
    }
    B.run({});
    return B;
}

/// Closures of the parts have pairwise zero products and their dimensions add up.
template <class S>
bool is_direct_sum(const Subalgebra<S>& A, const std::vector<std::vector<std::size_t>>& partition) {
    std::vector<bool> seen(A.generators().size(), false);
    std::vector<Subalgebra<S>> parts;
    for (const auto& block : partition) {
        std::vector<Generator> gens;
        for (auto g : block) {
            if (g >= seen.size() || seen[g]) throw std::invalid_argument("partition must cover each generator once");
            seen[g] = true;
            gens.push_back(A.generators()[g]);
        }
        parts.push_back(close<S>(A.algebra_ptr(), gens, A.mode()));
    }
    for (bool s : seen)
        if (!s) throw std::invalid_argument("partition must cover each generator once");
    std::size_t total = 0;
    for (const auto& P : parts) total += P.dimension();
    if (total != A.dimension()) return false;
    for (std::size_t a = 0; a < parts.size(); ++a)
        for (std::size_t b = a + 1; b < parts.size(); ++b)
            for (const auto& u : parts[a].basis().rows())
                for (const auto& v : parts[b].basis().rows())
                    if (!EchelonBasis<S>::all_zero(A.product(u, v))) return false;
    return true;
}

/// Symbolic and evaluated closures at a safe eta0 have equal dimension.
inline bool consistency_check(const SpacePtr& sp, const std::vector<Generator>& gens, const Rational& eta0) {
    if (!is_safe_eta(*sp, eta0)) throw unsafe_eta_error("consistency check needs a safe eta, got " + to_string(eta0));
    return close_symbolic(sp, gens).dimension() == close_evaluated(sp, gens, eta0).dimension();
}

/// Closure in either mode, for callers that only learn the mode at run time.
using AnySubalgebra = std::variant<Subalgebra<EtaScalar>, Subalgebra<Rational>>;

inline AnySubalgebra close_any(const SpacePtr& sp, const std::vector<Generator>& gens, const ScalarMode& mode,
                               const CloseOptions& opt = {}) {
    if (mode.symbolic) return close_symbolic(sp, gens, opt);
    return close_evaluated(sp, gens, mode.eta0, mode.allow_critical, opt);
}

}  // namespace matsuo

#pragma once

// Adjoint eigenspaces, fusion laws, primitivity and Miyamoto involutions.

#include "matsuo/closure.hpp"

#include <set>

namespace matsuo {

struct axis_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Eigenvalues with a symmetric product table of index sets. Eigenvalues in
/// `odd` are negated by the Miyamoto involution.
template <class S>
struct FusionLaw {
    std::string name;
    std::vector<S> values;
    std::vector<std::string> value_names;
    std::vector<std::vector<std::set<std::size_t>>> table;
    std::set<std::size_t> odd;
};

namespace detail {

template <class S>
void require_distinct(const std::vector<S>& values) {
    for (std::size_t a = 0; a < values.size(); ++a)
        for (std::size_t b = a + 1; b < values.size(); ++b)
            if (values[a] == values[b]) throw parameter_error("spectrum collision: two fusion-law eigenvalues coincide");
}

}  // namespace detail

/// J(eta) on {1, 0, eta}.
template <class S>
FusionLaw<S> jordan_law(const S& eta) {
    if constexpr (std::is_same_v<S, Rational>) {
        if (eta == 0 || eta == 1) throw parameter_error("J(eta) needs eta outside {0, 1}");
    }
    FusionLaw<S> law{"J", {S(1), S(0), eta}, {"1", "0", "eta"}, {}, {2}};
    law.table = {{{0}, {}, {2}}, {{}, {1}, {2}}, {{2}, {2}, {0, 1}}};
    detail::require_distinct(law.values);
    return law;
}

/// M(alpha, beta) on {1, 0, alpha, beta}; used here with alpha = 2 eta, beta = eta.
template <class S>
FusionLaw<S> monster_law(const S& alpha, const S& beta) {
    FusionLaw<S> law{"M", {S(1), S(0), alpha, beta}, {"1", "0", "2eta", "eta"}, {}, {3}};
    law.table = {{{0}, {}, {2}, {3}},
                 {{}, {1}, {2}, {3}},
                 {{2}, {2}, {0, 1}, {3}},
                 {{3}, {3}, {3}, {0, 1, 2}}};
    detail::require_distinct(law.values);
    return law;
}

template <class S>
FusionLaw<S> monster_law_for_eta(const S& eta) {
    if constexpr (std::is_same_v<S, Rational>) {
        if (eta == 0 || eta == 1 || eta == make_rational(1, 2))
            throw parameter_error("M(2eta, eta) needs eta outside {0, 1/2, 1}");
    }
    return monster_law<S>(S(2) * eta, eta);
}

template <class S>
FusionLaw<S> law_by_name(const std::string& name, const S& eta) {
    if (name == "J") return jordan_law<S>(eta);
    if (name == "M") return monster_law_for_eta<S>(eta);
    throw std::invalid_argument("fusion law must be J or M, got '" + name + "'");
}

// ---------------------------------------------------------------------------

/// Dense algebra vector from coordinates against the basis rows of A.
template <class S>
std::vector<S> from_coordinates(const Subalgebra<S>& A, const std::vector<S>& coords) {
    std::vector<S> v(A.space().size(), S(0));
    const auto& rows = A.basis().rows();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (is_zero(coords[r])) continue;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!is_zero(rows[r][j])) v[j] += coords[r] * rows[r][j];
    }
    return v;
}

/// Matrix of u -> x u on coordinates (column i is the image of row i).
template <class S>
Matrix<S> adjoint_matrix(const Subalgebra<S>& A, const std::vector<S>& x) {
    if (!A.contains(x)) throw axis_error("axis is not in the subalgebra");
    const auto& rows = A.basis().rows();
    const std::size_t d = rows.size();
    Matrix<S> M(d, std::vector<S>(d, S(0)));
    for (std::size_t i = 0; i < d; ++i) {
        auto c = A.coordinates(A.product(x, rows[i]));
        for (std::size_t k = 0; k < d; ++k) M[k][i] = std::move(c[k]);
    }
    return M;
}

template <class S>
struct EigenDecomposition {
    std::vector<S> values;
    std::vector<std::vector<std::vector<S>>> parts;  ///< coordinate vectors per value

    std::size_t total() const {
        std::size_t t = 0;
        for (const auto& p : parts) t += p.size();
        return t;
    }
};

template <class S>
Matrix<S> shifted(Matrix<S> M, const S& lambda) {
    for (std::size_t i = 0; i < M.size(); ++i) M[i][i] -= lambda;
    return M;
}

template <class S>
EigenDecomposition<S> eigen_decompose(const Subalgebra<S>& A, const std::vector<S>& x, const std::vector<S>& spectrum) {
    if (A.product(x, x) != x) throw axis_error("axis is not an idempotent");
    detail::require_distinct(spectrum);
    const Matrix<S> M = adjoint_matrix(A, x);
    EigenDecomposition<S> out;
    out.values = spectrum;
    for (const auto& lambda : spectrum) out.parts.push_back(kernel(shifted(M, lambda), M.size()));
    if (out.total() != A.dimension())
        throw axis_error("adjoint is not diagonalizable over the given spectrum: eigenspaces span " +
                         std::to_string(out.total()) + " of " + std::to_string(A.dimension()));
    return out;
}

template <class S>
std::size_t eigenspace_dim(const Subalgebra<S>& A, const std::vector<S>& x, const S& lambda) {
    const Matrix<S> M = adjoint_matrix(A, x);
    return M.size() - rank(shifted(M, lambda));
}

template <class S>
bool check_primitive(const Subalgebra<S>& A, const std::vector<S>& x) {
    return eigenspace_dim(A, x, S(1)) == 1;
}

/// prod (ad_x - lambda) over the given values vanishes.
template <class S>
bool annihilated_by(const Subalgebra<S>& A, const std::vector<S>& x, const std::vector<S>& values) {
    const Matrix<S> M = adjoint_matrix(A, x);
    Matrix<S> P = identity_matrix<S>(M.size());
    for (const auto& v : values) P = multiply(P, shifted(M, v));
    for (const auto& row : P)
        for (const auto& e : row)
            if (!is_zero(e)) return false;
    return true;
}

struct FusionViolation {
    std::size_t lambda, mu, left, right, component;
};

template <class S>
struct FusionReport {
    std::string law;
    std::vector<std::string> value_names;
    std::vector<std::size_t> dims;
    std::vector<FusionViolation> violations;

    bool ok() const { return violations.empty(); }

    nlohmann::json to_json(const std::string& axis) const {
        nlohmann::json d = nlohmann::json::object();
        for (std::size_t k = 0; k < dims.size(); ++k) d[value_names[k]] = dims[k];
        nlohmann::json v = nlohmann::json::array();
        for (const auto& x : violations)
            v.push_back({{"lambda", value_names[x.lambda]},
                         {"mu", value_names[x.mu]},
                         {"pair", {x.left, x.right}},
                         {"offending_component", value_names[x.component]}});
        return {{"axis", axis}, {"law", law}, {"eigen_dims", d}, {"violations", v}};
    }
};

namespace detail {

/// Columns: eigenvectors grouped by eigenvalue; also the owner of each column.
template <class S>
std::pair<Matrix<S>, std::vector<std::size_t>> eigenbasis(const EigenDecomposition<S>& dec, std::size_t d) {
    Matrix<S> E(d, std::vector<S>(d, S(0)));
    std::vector<std::size_t> owner;
    std::size_t col = 0;
    for (std::size_t k = 0; k < dec.parts.size(); ++k)
        for (const auto& v : dec.parts[k]) {
            for (std::size_t r = 0; r < d; ++r) E[r][col] = v[r];
            owner.push_back(k);
            ++col;
        }
    return {E, owner};
}

}  // namespace detail

template <class S>
FusionReport<S> check_fusion(const Subalgebra<S>& A, const std::vector<S>& x, const FusionLaw<S>& law) {
    const auto dec = eigen_decompose(A, x, law.values);
    const std::size_t d = A.dimension();
    auto [E, owner] = detail::eigenbasis(dec, d);
    auto Einv = inverse(E);
    if (!Einv) throw axis_error("eigenvectors are not a basis");
    FusionReport<S> rep;
    rep.law = law.name;
    rep.value_names = law.value_names;
    for (const auto& p : dec.parts) rep.dims.push_back(p.size());
    std::vector<std::vector<std::vector<S>>> vecs(dec.parts.size());
    for (std::size_t k = 0; k < dec.parts.size(); ++k)
        for (const auto& c : dec.parts[k]) vecs[k].push_back(from_coordinates(A, c));
    for (std::size_t l = 0; l < vecs.size(); ++l)
        for (std::size_t m = l; m < vecs.size(); ++m) {
            const auto& allowed = law.table[l][m];
            for (std::size_t a = 0; a < vecs[l].size(); ++a)
                for (std::size_t b = (l == m ? a : 0); b < vecs[m].size(); ++b) {
                    const auto c = A.coordinates(A.product(vecs[l][a], vecs[m][b]));
                    std::set<std::size_t> bad;
                    for (std::size_t col = 0; col < d; ++col) {
                        if (allowed.count(owner[col])) continue;
                        S comp(0);
                        for (std::size_t r = 0; r < d; ++r)
                            if (!is_zero((*Einv)[col][r]) && !is_zero(c[r])) comp += (*Einv)[col][r] * c[r];
                        if (!is_zero(comp)) bad.insert(owner[col]);
                    }
                    for (auto nu : bad) rep.violations.push_back({l, m, a, b, nu});
                }
        }
    return rep;
}

// ---------------------------------------------------------------------------

/// Fixes p and every point off its lines; swaps the other two points of each line through p.
inline std::vector<int> miyamoto_point_map(const FischerSpace& sp, int p) {
    std::vector<int> perm(sp.size());
    std::iota(perm.begin(), perm.end(), 0);
    for (int q : sp.neighbors(p)) perm[static_cast<std::size_t>(q)] = sp.third_or_none(p, q);
    return perm;
}

template <class S>
struct MiyamotoMap {
    Matrix<S> matrix;  ///< acts on coordinate columns

    std::vector<S> apply(const std::vector<S>& coords) const {
        std::vector<S> out(matrix.size(), S(0));
        for (std::size_t i = 0; i < matrix.size(); ++i)
            for (std::size_t j = 0; j < coords.size(); ++j)
                if (!is_zero(matrix[i][j]) && !is_zero(coords[j])) out[i] += matrix[i][j] * coords[j];
        return out;
    }

    bool is_involution() const { return multiply(matrix, matrix) == identity_matrix<S>(matrix.size()); }

    /// tau(u v) = tau(u) tau(v) on every pair of basis rows.
    bool is_automorphism(const Subalgebra<S>& A) const {
        const std::size_t d = matrix.size();
        std::vector<std::vector<S>> images(d);
        for (std::size_t i = 0; i < d; ++i) {
            std::vector<S> e(d, S(0));
            e[i] = S(1);
            images[i] = from_coordinates(A, apply(e));
        }
        const auto& rows = A.basis().rows();
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i; j < d; ++j) {
                auto lhs = apply(A.coordinates(A.product(rows[i], rows[j])));
                auto rhs = A.coordinates(A.product(images[i], images[j]));
                if (lhs != rhs) return false;
            }
        return true;
    }

    /// Frobenius form is preserved on all basis pairs.
    bool preserves_form(const Subalgebra<S>& A) const {
        const std::size_t d = matrix.size();
        std::vector<std::vector<S>> images(d);
        for (std::size_t i = 0; i < d; ++i) {
            std::vector<S> e(d, S(0));
            e[i] = S(1);
            images[i] = from_coordinates(A, apply(e));
        }
        const auto& rows = A.basis().rows();
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i; j < d; ++j)
                if (A.algebra().frobenius(rows[i], rows[j]) != A.algebra().frobenius(images[i], images[j])) return false;
        return true;
    }
};

/// E diag(+-1) E^-1, negating the odd eigenspaces. With check_law the fusion
/// law is verified first.
template <class S>
MiyamotoMap<S> miyamoto_algebra_map(const Subalgebra<S>& A, const std::vector<S>& x, const FusionLaw<S>& law,
                                    bool check_law = true) {
    if (check_law) {
        auto rep = check_fusion(A, x, law);
        if (!rep.ok()) throw axis_error("fusion law " + law.name + " fails; no Miyamoto involution");
    }
    const auto dec = eigen_decompose(A, x, law.values);
    const std::size_t d = A.dimension();
    auto [E, owner] = detail::eigenbasis(dec, d);
    auto Einv = inverse(E);
    if (!Einv) throw axis_error("eigenvectors are not a basis");
    for (std::size_t c = 0; c < d; ++c)
        if (law.odd.count(owner[c]))
            for (std::size_t r = 0; r < d; ++r) E[r][c] = -E[r][c];
    return {multiply(E, *Einv)};
}

/// Permutation matrix of a point map on the full algebra (basis = points).
template <class S>
Matrix<S> point_map_matrix(const std::vector<int>& perm) {
    const std::size_t n = perm.size();
    Matrix<S> m(n, std::vector<S>(n, S(0)));
    for (std::size_t p = 0; p < n; ++p) m[static_cast<std::size_t>(perm[p])][p] = S(1);
    return m;
}

/// Subalgebra spanned by every point.
template <class S>
Subalgebra<S> full_algebra(std::shared_ptr<const MatsuoAlgebra<S>> alg, const ScalarMode& mode) {
    std::vector<Generator> gens;
    for (std::size_t p = 0; p < alg->size(); ++p) gens.push_back(Generator::single(alg->space(), static_cast<int>(p)));
    Subalgebra<S> A(alg, mode, gens);
    for (const auto& g : gens) A.insert_generator(g.template dense<S>(alg->size()));
    return A;
}

}  // namespace matsuo

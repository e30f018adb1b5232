#pragma once

// Flip involutions of wreath Fischer spaces, their orbits, fixed
// subalgebras and flip subalgebras.

#include "matsuo/closure.hpp"

#include <deque>

namespace matsuo {

struct flip_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct FlipInvolution {
    SpacePtr space;
    std::vector<int> perm;
    std::string family;  ///< construction tag, empty for user-supplied maps
    int k = 0;
};

struct OrbitDecomposition {
    std::vector<int> singles;
    std::vector<std::pair<int, int>> doubles;
    std::vector<std::pair<int, int>> extras;

    std::size_t orbit_count() const { return singles.size() + doubles.size() + extras.size(); }
};

/// Closed forms for the seven standard flips at n = 2k.
struct FlipFormula {
    std::string family;
    Family space_family;
    long singles, doubles, extras, fixed_dim;
};

inline std::vector<std::string> standard_flip_families() {
    return {"W2A", "W3A", "W2D", "WrA4", "WrA4outer", "Wr3p2", "Wr3x3"};
}

inline std::string canonical_flip_family(const std::string& tag) {
    if (tag == "2Q") return "W2A";
    if (tag == "WrA4inner") return "WrA4";
    for (const auto& f : standard_flip_families())
        if (f == tag) return f;
    throw flip_error("no standard flip for family '" + tag + "'");
}

inline FlipFormula flip_formula(const std::string& tag, long k) {
    const std::string f = canonical_flip_family(tag);
    if (f == "W2A") return {f, Family::W2A, 2 * k, 2 * (k * k - k), 0, 2 * k * k};
    if (f == "W3A") return {f, Family::W3A, k, 3 * (k * k - k), k, 3 * k * k - k};
    if (f == "W2D") return {f, Family::W2D, 2 * k, 4 * k * k - 3 * k, 0, 4 * k * k - k};
    if (f == "WrA4") return {f, Family::WrA4, 4 * k, 12 * k * (k - 1), 4 * k, 12 * k * k - 4 * k};
    if (f == "WrA4outer") return {f, Family::WrA4, 6 * k, 12 * k * k - 9 * k, 0, 12 * k * k - 3 * k};
    if (f == "Wr3p2") return {f, Family::Wr3p2, 9 * k, 27 * k * (k - 1), 9 * k, 27 * k * k - 9 * k};
    return {f, Family::Wr3x3, 3 * k, 9 * k * (k - 1), 3 * k, 9 * k * k - 3 * k};
}

namespace detail {

/// Extends gens -> images to a homomorphism by breadth-first search; the
/// result is validated as an automorphism.
inline GroupAutomorphism extend_automorphism(const GroupPtr& G, const std::vector<std::string>& gens,
                                             const std::vector<std::string>& images) {
    std::vector<int> img(static_cast<std::size_t>(G->order()), -1);
    img[static_cast<std::size_t>(G->identity())] = G->identity();
    std::deque<int> todo{G->identity()};
    while (!todo.empty()) {
        int x = todo.front();
        todo.pop_front();
        for (std::size_t g = 0; g < gens.size(); ++g) {
            int a = G->find(gens[g]), b = G->find(images[g]);
            int y = G->mult(x, a);
            int iy = G->mult(img[static_cast<std::size_t>(x)], b);
            if (img[static_cast<std::size_t>(y)] < 0) {
                img[static_cast<std::size_t>(y)] = iy;
                todo.push_back(y);
            } else if (img[static_cast<std::size_t>(y)] != iy) {
                throw group_error("generator images do not define a homomorphism");
            }
        }
    }
    return GroupAutomorphism(G, img);
}

inline WreathElement block_swap(int n) {
    WreathElement pi = WreathElement::identity(n);
    for (int i = 0; i + 1 < n; i += 2) std::swap(pi.perm[static_cast<std::size_t>(i)], pi.perm[static_cast<std::size_t>(i + 1)]);
    return pi;
}

}  // namespace detail

/// Point permutation induced by an automorphism applied in every coordinate
/// followed by conjugation with a wreath element.
inline std::vector<int> induced_point_map(const FischerSpace& sp, const GroupAutomorphism& phi, const WreathElement& g) {
    const FiniteGroup& T = sp.base();
    std::vector<int> perm(sp.size());
    for (std::size_t p = 0; p < sp.size(); ++p) {
        const Point& pt = sp.point(static_cast<int>(p));
        const Point twisted{phi(pt.t), pt.i, pt.j};
        const Point moved = to_point(T, conjugate(T, to_element(T, sp.n(), twisted), g));
        perm[p] = sp.index_of(moved);
    }
    return perm;
}

inline bool is_involution(const std::vector<int>& perm) {
    for (std::size_t p = 0; p < perm.size(); ++p)
        if (perm[static_cast<std::size_t>(perm[p])] != static_cast<int>(p)) return false;
    return true;
}

inline FlipInvolution standard_flip(const std::string& tag, int k) {
    if (k < 1) throw flip_error("k must be positive");
    const FlipFormula f = flip_formula(tag, k);
    const int n = 2 * k;
    SpacePtr sp = build_named_space(f.space_family, n);
    const GroupPtr& T = sp->base_ptr();
    WreathElement g = detail::block_swap(n);
    GroupAutomorphism phi = GroupAutomorphism::identity(T);
    if (f.family == "W2D") {
        phi = detail::extend_automorphism(T, {"e", "f"}, {"f", "e"});
    } else if (f.family == "WrA4") {
        const int sigma = T->find("(1,2)(3,4)");
        for (auto& b : g.base) b = sigma;
    } else if (f.family == "WrA4outer") {
        phi = detail::extend_automorphism(T, {"(1,2,3)", "(1,2)(3,4)"}, {"(1,2,4)", "(1,2)(3,4)"});
    } else if (f.family == "Wr3p2") {
        std::vector<int> img(27);
        for (int r = 0; r < 3; ++r)
            for (int s = 0; s < 3; ++s)
                for (int t = 0; t < 3; ++t) img[static_cast<std::size_t>(e27_index(r, s, t))] = e27_index(s, r, -t - r * s);
        phi = GroupAutomorphism(T, img);
    } else if (f.family == "Wr3x3") {
        phi = detail::extend_automorphism(T, {"u", "v"}, {"v", "u"});
    }
    FlipInvolution tau{sp, induced_point_map(*sp, phi, g), f.family, k};
    if (!is_involution(tau.perm)) throw flip_error("constructed flip is not an involution");
    return tau;
}

inline OrbitDecomposition classify_orbits(const FischerSpace& sp, const std::vector<int>& perm) {
    if (!sp.is_automorphism(perm)) throw flip_error("permutation is not an automorphism of " + sp.id());
    if (!is_involution(perm)) throw flip_error("permutation is not an involution");
    OrbitDecomposition out;
    for (std::size_t p = 0; p < perm.size(); ++p) {
        const int q = perm[p];
        const int pi = static_cast<int>(p);
        if (q == pi)
            out.singles.push_back(pi);
        else if (pi < q)
            (sp.collinear(pi, q) ? out.extras : out.doubles).emplace_back(pi, q);
    }
    return out;
}

inline OrbitDecomposition classify_orbits(const FlipInvolution& tau) { return classify_orbits(*tau.space, tau.perm); }

/// One orbit vector per orbit: singles, then doubles, then extras.
inline std::vector<Generator> fixed_subalgebra_basis(const FischerSpace& sp, const OrbitDecomposition& orbits) {
    std::vector<Generator> out;
    for (int p : orbits.singles) out.push_back(Generator::single(sp, p));
    for (auto [p, q] : orbits.doubles) out.push_back(Generator::pair(sp, p, q));
    for (auto [p, q] : orbits.extras) out.push_back(Generator::pair(sp, p, q));
    return out;
}

inline std::vector<Generator> flip_generators(const FischerSpace& sp, const OrbitDecomposition& orbits) {
    std::vector<Generator> out;
    for (int p : orbits.singles) out.push_back(Generator::single(sp, p));
    for (auto [p, q] : orbits.doubles) out.push_back(Generator::pair(sp, p, q));
    return out;
}

/// Closure of singles and doubles. The fixed subalgebra is a subalgebra
/// containing them, so its dimension bounds the search.
template <class S>
Subalgebra<S> flip_subalgebra(const FlipInvolution& tau, const ScalarMode& mode) {
    const auto orbits = classify_orbits(tau);
    CloseOptions opt;
    opt.upper_bound = orbits.orbit_count();
    return close<S>(make_algebra<S>(tau.space, mode), flip_generators(*tau.space, orbits), mode, opt);
}

struct FlipReportOptions {
    bool symbolic = true;
    std::vector<Rational> etas;  ///< evaluated modes; critical values are allowed here
    bool double_entry = true;    ///< at critical etas, also specialize the symbolic closure
};

inline nlohmann::json flip_report(const FlipInvolution& tau, const FlipReportOptions& opt) {
    const auto orbits = classify_orbits(tau);
    const std::size_t fixed = orbits.orbit_count();
    nlohmann::json j{{"family", tau.family},
                     {"k", tau.k},
                     {"space", tau.space->id()},
                     {"singles", orbits.singles.size()},
                     {"doubles", orbits.doubles.size()},
                     {"extras", orbits.extras.size()},
                     {"fixed_dim", fixed}};
    bool ok = orbits.singles.size() + 2 * (orbits.doubles.size() + orbits.extras.size()) == tau.space->size();
    std::optional<Subalgebra<EtaScalar>> sym;
    if (opt.symbolic) {
        sym = flip_subalgebra<EtaScalar>(tau, ScalarMode::symbolic_mode());
        j["flip_dim_symbolic"] = sym->dimension();
        j["flip_equals_fixed"] = sym->dimension() == fixed;
        ok = ok && sym->dimension() <= fixed;
    }
    nlohmann::json at = nlohmann::json::object();
    nlohmann::json critical = nlohmann::json::array();
    nlohmann::json entries = nlohmann::json::object();
    for (const auto& eta0 : opt.etas) {
        require_eta(eta0);
        const bool safe = is_safe_eta(*tau.space, eta0);
        if (!safe) critical.push_back(to_string(eta0));
        const auto A = flip_subalgebra<Rational>(tau, ScalarMode::evaluated(eta0, true));
        at[to_string(eta0)] = A.dimension();
        ok = ok && A.dimension() <= fixed;
        if (sym && opt.double_entry && !safe) {
            const auto B = specialize(*sym, eta0, true);
            entries[to_string(eta0)] = B.dimension();
            ok = ok && B.dimension() == A.dimension();
        }
    }
    if (!opt.etas.empty()) {
        j["flip_dims_at"] = at;
        j["critical_etas"] = critical;
    }
    if (!entries.empty()) j["specialized_symbolic_dims_at"] = entries;
    if (!tau.family.empty()) {
        const FlipFormula f = flip_formula(tau.family, tau.k);
        j["expected"] = {{"singles", f.singles}, {"doubles", f.doubles}, {"extras", f.extras}, {"fixed_dim", f.fixed_dim}};
        if (tau.family == "Wr3x3")
            j["note"] = "extras computed from orbits; a count of 9k for this family would contradict the fixed dimension";
    }
    j["consistent"] = ok;
    return j;
}

}  // namespace matsuo

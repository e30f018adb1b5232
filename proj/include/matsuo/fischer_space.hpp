#pragma once

// Fischer spaces of Wr(T, n): the conjugacy class of a transposition in the
// wreath product T wr S_n, with collinearity decided by literal conjugation
// inside the wreath group.

#include "matsuo/group.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

namespace matsuo {

struct space_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Element b*sigma of T wr S_n.  Positions are 0-based here; the base tuple is
/// acted on by sigma on the right, so (b s)(b' s') = b (b' o s) (s s').
struct WreathElement {
    std::vector<int> base;
    std::vector<int> perm;  // i -> perm[i]

    static WreathElement identity(int n) {
        WreathElement g;
        g.base.assign(static_cast<std::size_t>(n), 0);
        g.perm.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) g.perm[static_cast<std::size_t>(i)] = i;
        return g;
    }

    friend bool operator==(const WreathElement&, const WreathElement&) = default;
};

inline WreathElement multiply(const FiniteGroup& T, const WreathElement& x, const WreathElement& y) {
    const std::size_t n = x.perm.size();
    WreathElement r;
    r.base.resize(n);
    r.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto si = static_cast<std::size_t>(x.perm[i]);
        r.base[i] = T.mult(x.base[i], y.base[si]);
        r.perm[i] = y.perm[si];
    }
    return r;
}

inline WreathElement inverse(const FiniteGroup& T, const WreathElement& x) {
    const std::size_t n = x.perm.size();
    WreathElement r;
    r.base.resize(n);
    r.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto si = static_cast<std::size_t>(x.perm[i]);
        r.perm[si] = static_cast<int>(i);
        r.base[si] = T.inv(x.base[i]);
    }
    return r;
}

/// y^-1 x y
inline WreathElement conjugate(const FiniteGroup& T, const WreathElement& x, const WreathElement& y) {
    return multiply(T, multiply(T, inverse(T, y), x), y);
}

inline int element_order(const FiniteGroup& T, const WreathElement& x, int limit = 64) {
    const WreathElement id = WreathElement::identity(static_cast<int>(x.perm.size()));
    WreathElement y = x;
    for (int k = 1; k <= limit; ++k) {
        if (y == id) return k;
        y = multiply(T, y, x);
    }
    throw space_error("element order exceeds search limit");
}

/// Point t.(i,j) = t_i t_j^-1 (i,j) with 1 <= i < j <= n.
struct Point {
    int t = 0;
    int i = 1;
    int j = 2;

    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point& a, const Point& b) {
        if (a.i != b.i) return a.i <=> b.i;
        if (a.j != b.j) return a.j <=> b.j;
        return a.t <=> b.t;
    }
};

/// t.(i,j) for any ordered pair i != j, rewritten with i < j.
inline Point normalize_point(const FiniteGroup& T, int t, int i, int j) {
    if (i == j) throw space_error("point needs two distinct positions");
    if (i < j) return Point{t, i, j};
    return Point{T.inv(t), j, i};
}

inline WreathElement to_element(const FiniteGroup& T, int n, const Point& p) {
    WreathElement g = WreathElement::identity(n);
    g.base[static_cast<std::size_t>(p.i - 1)] = p.t;
    g.base[static_cast<std::size_t>(p.j - 1)] = T.inv(p.t);
    std::swap(g.perm[static_cast<std::size_t>(p.i - 1)], g.perm[static_cast<std::size_t>(p.j - 1)]);
    return g;
}

inline Point to_point(const FiniteGroup& T, const WreathElement& g) {
    std::vector<int> moved;
    for (std::size_t k = 0; k < g.perm.size(); ++k)
        if (g.perm[k] != static_cast<int>(k)) moved.push_back(static_cast<int>(k));
    if (moved.size() != 2) throw space_error("element is not a transposition class member");
    const auto a = static_cast<std::size_t>(moved[0]), b = static_cast<std::size_t>(moved[1]);
    for (std::size_t k = 0; k < g.base.size(); ++k)
        if (k != a && k != b && g.base[k] != T.identity())
            throw space_error("element is not a transposition class member");
    if (g.base[b] != T.inv(g.base[a])) throw space_error("element is not a transposition class member");
    return Point{g.base[a], moved[0] + 1, moved[1] + 1};
}

enum class Family { Wreath, A, W2A, W3A, W2D, W3D, WrA4, Wr3p2, Wr3x3 };

inline std::string family_tag(Family f) {
    switch (f) {
        case Family::Wreath: return "Wr";
        case Family::A: return "A";
        case Family::W2A: return "W2A";
        case Family::W3A: return "W3A";
        case Family::W2D: return "W2D";
        case Family::W3D: return "W3D";
        case Family::WrA4: return "WrA4";
        case Family::Wr3p2: return "Wr3p2";
        case Family::Wr3x3: return "Wr3x3";
    }
    return "?";
}

inline Family parse_family(const std::string& tag) {
    for (Family f : {Family::A, Family::W2A, Family::W3A, Family::W2D, Family::W3D, Family::WrA4,
                     Family::Wr3p2, Family::Wr3x3})
        if (family_tag(f) == tag) return f;
    throw catalog_error("unknown family '" + tag + "'");
}

inline std::string family_base_group(Family f) {
    switch (f) {
        case Family::A: return "C1";
        case Family::W2A: return "C2";
        case Family::W3A: return "C3";
        case Family::W2D: return "V4";
        case Family::W3D: return "S3";
        case Family::WrA4: return "A4";
        case Family::Wr3p2: return "E27";
        case Family::Wr3x3: return "C3xC3";
        case Family::Wreath: break;
    }
    throw catalog_error("generic wreath spaces have no fixed base group");
}

using Line = std::array<int, 3>;

/// The 5-vertex collinearity graph on (a, b, c, d, e).
struct Diagram {
    std::array<std::array<bool, 5>, 5> adjacency{};

    bool edge(int u, int v) const { return adjacency[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]; }
    int edge_count() const {
        int c = 0;
        for (int u = 0; u < 5; ++u)
            for (int v = u + 1; v < 5; ++v) c += edge(u, v);
        return c;
    }
    /// Connected components as vertex lists (vertex 0 = a).
    std::vector<std::vector<int>> components() const {
        std::vector<int> comp(5, -1);
        std::vector<std::vector<int>> out;
        for (int s = 0; s < 5; ++s) {
            if (comp[static_cast<std::size_t>(s)] >= 0) continue;
            out.emplace_back();
            std::vector<int> stack{s};
            comp[static_cast<std::size_t>(s)] = static_cast<int>(out.size()) - 1;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                out.back().push_back(u);
                for (int v = 0; v < 5; ++v)
                    if (edge(u, v) && comp[static_cast<std::size_t>(v)] < 0) {
                        comp[static_cast<std::size_t>(v)] = comp[static_cast<std::size_t>(s)];
                        stack.push_back(v);
                    }
            }
            std::sort(out.back().begin(), out.back().end());
        }
        return out;
    }
    bool connected() const { return components().size() == 1; }

    /// Upper-triangle bits in pair order ab ac ad ae bc bd be cd ce de.
    std::string bits() const {
        std::string s;
        for (int u = 0; u < 5; ++u)
            for (int v = u + 1; v < 5; ++v) s.push_back(edge(u, v) ? '1' : '0');
        return s;
    }

    Diagram relabel(const std::array<int, 5>& perm) const {
        Diagram d;
        for (int u = 0; u < 5; ++u)
            for (int v = 0; v < 5; ++v)
                d.adjacency[static_cast<std::size_t>(perm[static_cast<std::size_t>(u)])]
                           [static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])] = edge(u, v);
        return d;
    }
};

/// The eight relabelings generated by b<->c, d<->e and (b,c)<->(d,e).
inline const std::array<std::array<int, 5>, 8>& generator_symmetries() {
    static const std::array<std::array<int, 5>, 8> sym = {{
        {0, 1, 2, 3, 4},
        {0, 2, 1, 3, 4},
        {0, 1, 2, 4, 3},
        {0, 2, 1, 4, 3},
        {0, 3, 4, 1, 2},
        {0, 4, 3, 1, 2},
        {0, 3, 4, 2, 1},
        {0, 4, 3, 2, 1},
    }};
    return sym;
}

/// Lexicographically minimal bit string over the eight symmetries.
inline std::string canonical_diagram(const Diagram& d) {
    std::string best;
    for (const auto& perm : generator_symmetries()) {
        std::string code = d.relabel(perm).bits();
        if (best.empty() || code < best) best = code;
    }
    return best;
}

inline Diagram diagram_from_bits(const std::string& bits) {
    if (bits.size() != 10) throw space_error("diagram code must have 10 bits");
    Diagram d;
    std::size_t k = 0;
    for (std::size_t u = 0; u < 5; ++u)
        for (std::size_t v = u + 1; v < 5; ++v, ++k) d.adjacency[u][v] = d.adjacency[v][u] = bits[k] == '1';
    return d;
}

class FischerSpace;
using SpacePtr = std::shared_ptr<const FischerSpace>;

class FischerSpace {
public:
    static constexpr std::size_t eager_line_limit = 500;

    FischerSpace(GroupPtr base, int n, Family family = Family::Wreath)
        : base_(std::move(base)), n_(n), family_(family) {
        if (n_ < 2) throw space_error("need at least two positions");
        if (!base_->validate_orders())
            throw space_error("3-transposition violation: base group " + base_->name() +
                              " has an element of order greater than 3");
        const FiniteGroup& T = *base_;
        for (int i = 1; i <= n_; ++i)
            for (int j = i + 1; j <= n_; ++j)
                for (int t = 0; t < T.order(); ++t) points_.push_back(Point{t, i, j});
        elements_.reserve(points_.size());
        for (const auto& p : points_) elements_.push_back(to_element(T, n_, p));

        const std::size_t N = points_.size();
        third_.assign(N * N, -1);
        neighbors_.resize(N);
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t q = p + 1; q < N; ++q) {
                WreathElement prod = multiply(T, elements_[p], elements_[q]);
                int ord = matsuo::element_order(T, prod);
                if (ord > 3) throw space_error("3-transposition violation: product of order " + std::to_string(ord));
                if (ord != 3) continue;
                int r = index_of(to_point(T, conjugate(T, elements_[p], elements_[q])));
                third_[p * N + q] = third_[q * N + p] = r;
                neighbors_[p].push_back(static_cast<int>(q));
                neighbors_[q].push_back(static_cast<int>(p));
            }
        if (N <= eager_line_limit) {
            for_each_line([&](const Line& l) { lines_.push_back(l); });
            lines_materialized_ = true;
        }
    }

    const FiniteGroup& base() const { return *base_; }
    const GroupPtr& base_ptr() const { return base_; }
    int n() const { return n_; }
    Family family() const { return family_; }
    std::size_t size() const { return points_.size(); }
    const Point& point(int idx) const { return points_.at(static_cast<std::size_t>(idx)); }
    const std::vector<Point>& points() const { return points_; }
    const WreathElement& element(int idx) const { return elements_.at(static_cast<std::size_t>(idx)); }

    int index_of(const Point& p) const {
        if (p.i < 1 || p.j > n_ || p.i >= p.j || p.t < 0 || p.t >= base_->order())
            throw space_error("point outside the space");
        const int pairs_before = (p.i - 1) * n_ - (p.i - 1) * p.i / 2 + (p.j - p.i - 1);
        return pairs_before * base_->order() + p.t;
    }
    int index_of(int t, int i, int j) const { return index_of(normalize_point(*base_, t, i, j)); }

    /// Third point on the line through p and q, if they are collinear.
    std::optional<int> third(int p, int q) const {
        int r = third_[static_cast<std::size_t>(p) * size() + static_cast<std::size_t>(q)];
        if (r < 0) return std::nullopt;
        return r;
    }
    int third_or_none(int p, int q) const { return third_[static_cast<std::size_t>(p) * size() + static_cast<std::size_t>(q)]; }
    bool collinear(int p, int q) const { return third_or_none(p, q) >= 0; }
    const std::vector<int>& neighbors(int p) const { return neighbors_.at(static_cast<std::size_t>(p)); }

    /// Number of lines through p.
    int degree(int p) const { return static_cast<int>(neighbors(p).size()) / 2; }

    template <class F>
    void for_each_line(F&& f) const {
        const int N = static_cast<int>(size());
        for (int p = 0; p < N; ++p)
            for (int q : neighbors_[static_cast<std::size_t>(p)]) {
                if (q <= p) continue;
                int r = third_or_none(p, q);
                if (r > q) f(Line{p, q, r});
            }
    }

    std::vector<Line> lines() const {
        if (lines_materialized_) return lines_;
        std::vector<Line> out;
        for_each_line([&](const Line& l) { out.push_back(l); });
        return out;
    }
    std::size_t line_count() const {
        if (lines_materialized_) return lines_.size();
        std::size_t c = 0;
        for_each_line([&](const Line&) { ++c; });
        return c;
    }

    bool connected() const {
        if (size() == 0) return true;
        std::vector<bool> seen(size(), false);
        std::vector<int> stack{0};
        seen[0] = true;
        std::size_t count = 1;
        while (!stack.empty()) {
            int p = stack.back();
            stack.pop_back();
            for (int q : neighbors(p))
                if (!seen[static_cast<std::size_t>(q)]) {
                    seen[static_cast<std::size_t>(q)] = true;
                    ++count;
                    stack.push_back(q);
                }
        }
        return count == size();
    }

    std::string label(int idx) const { return point_label(point(idx)); }

    std::string point_label(const Point& p) const {
        auto pair = [](int i, int j) { return "_{" + std::to_string(i) + "," + std::to_string(j) + "}"; };
        const std::string& t = base_->label(p.t);
        switch (family_) {
            case Family::A: return "b" + pair(p.i, p.j);
            case Family::W2A: return (t == "1" ? "b" : "c") + pair(p.i, p.j);
            case Family::W3A:
                if (t == "1") return "b" + pair(p.i, p.j);
                return t == "u" ? "c" + pair(p.i, p.j) : "c" + pair(p.j, p.i);
            case Family::W2D: {
                static const std::map<std::string, std::string> letter{{"1", "b"}, {"e", "c"}, {"f", "d"}, {"ef", "e"}};
                return letter.at(t) + pair(p.i, p.j);
            }
            case Family::W3D: {
                if (t == "f2") return "d" + pair(p.j, p.i);
                static const std::map<std::string, std::string> letter{
                    {"1", "b"}, {"e", "c"}, {"f", "d"}, {"ef2", "e"}, {"ef", "f"}};
                return letter.at(t) + pair(p.i, p.j);
            }
            default: return t + ".(" + std::to_string(p.i) + "," + std::to_string(p.j) + ")";
        }
    }

    /// Secondary display names (g_{i,j} for d_{j,i} in W3D).
    std::vector<std::string> aliases(int idx) const {
        std::vector<std::string> out;
        const Point& p = point(idx);
        const std::string& t = base_->label(p.t);
        const std::string generic = t + ".(" + std::to_string(p.i) + "," + std::to_string(p.j) + ")";
        if (family_ == Family::W3D && t == "f2")
            out.push_back("g_{" + std::to_string(p.i) + "," + std::to_string(p.j) + "}");
        if (family_ == Family::W3D && t == "f")
            out.push_back("g_{" + std::to_string(p.j) + "," + std::to_string(p.i) + "}");
        const bool symmetric_letter = family_ == Family::A || family_ == Family::W2A || family_ == Family::W2D ||
                                      (family_ == Family::W3D && t != "f" && t != "f2");
        if (symmetric_letter)
            out.push_back(label(idx).substr(0, 1) + "_{" + std::to_string(p.j) + "," + std::to_string(p.i) + "}");
        if (label(idx) != generic) out.push_back(generic);
        return out;
    }

    /// Accepts family labels, their aliases, "t.(i,j)" with any order of i, j,
    /// and "#k" for a raw index.
    int find(const std::string& text) const {
        if (!text.empty() && text[0] == '#') {
            int k = std::stoi(text.substr(1));
            if (k < 0 || static_cast<std::size_t>(k) >= size()) throw space_error("point index out of range: " + text);
            return k;
        }
        static const std::regex generic(R"(^\s*([^.\s]+)\.\((\d+),(\d+)\)\s*$)");
        std::smatch m;
        if (std::regex_match(text, m, generic)) {
            int t = base_->find(m[1]);
            return index_of(t, std::stoi(m[2]), std::stoi(m[3]));
        }
        for (std::size_t k = 0; k < size(); ++k) {
            if (label(static_cast<int>(k)) == text) return static_cast<int>(k);
            for (const auto& a : aliases(static_cast<int>(k)))
                if (a == text) return static_cast<int>(k);
        }
        throw space_error("no point named '" + text + "'");
    }

    /// Diagram on (a, b, c, d, e); b,c and d,e must be non-collinear.
    Diagram diagram_of(int a, std::pair<int, int> bc, std::pair<int, int> de) const {
        const std::array<int, 5> v{a, bc.first, bc.second, de.first, de.second};
        for (int x = 0; x < 5; ++x)
            for (int y = x + 1; y < 5; ++y)
                if (v[static_cast<std::size_t>(x)] == v[static_cast<std::size_t>(y)])
                    throw space_error("invalid configuration: support points must be distinct");
        if (collinear(bc.first, bc.second) || collinear(de.first, de.second))
            throw space_error("invalid configuration: double-axis constituents must be orthogonal");
        Diagram d;
        for (std::size_t x = 0; x < 5; ++x)
            for (std::size_t y = 0; y < 5; ++y)
                d.adjacency[x][y] = x != y && collinear(v[x], v[y]);
        return d;
    }

    /// perm maps every line onto a line.
    bool is_automorphism(const std::vector<int>& perm) const {
        if (perm.size() != size()) return false;
        std::vector<bool> seen(size(), false);
        for (int v : perm) {
            if (v < 0 || static_cast<std::size_t>(v) >= size() || seen[static_cast<std::size_t>(v)]) return false;
            seen[static_cast<std::size_t>(v)] = true;
        }
        bool ok = true;
        for_each_line([&](const Line& l) {
            if (!ok) return;
            auto img = [&](int x) { return perm[static_cast<std::size_t>(x)]; };
            if (third_or_none(img(l[0]), img(l[1])) != img(l[2])) ok = false;
        });
        return ok;
    }

    std::string id() const {
        if (family_ == Family::Wreath) return "Wr(" + base_->name() + "," + std::to_string(n_) + ")";
        return family_tag(family_) + ":" + std::to_string(n_);
    }

private:
    GroupPtr base_;
    int n_;
    Family family_;
    std::vector<Point> points_;
    std::vector<WreathElement> elements_;
    std::vector<int> third_;
    std::vector<std::vector<int>> neighbors_;
    std::vector<Line> lines_;
    bool lines_materialized_ = false;
};

inline SpacePtr build_wreath_space(GroupPtr base, int n) {
    return std::make_shared<const FischerSpace>(std::move(base), n, Family::Wreath);
}

inline SpacePtr build_named_space(Family family, int n) {
    if (family == Family::Wreath) throw catalog_error("generic wreath spaces need a base group");
    return std::make_shared<const FischerSpace>(builtin_group(family_base_group(family)), n, family);
}

inline SpacePtr build_named_space(const std::string& family, int n) { return build_named_space(parse_family(family), n); }

/// "W3A:4" style ambient spec.
inline SpacePtr parse_space_spec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw space_error("space spec must look like FAMILY:n, got '" + spec + "'");
    return build_named_space(spec.substr(0, colon), std::stoi(spec.substr(colon + 1)));
}

inline int point_degree(const FischerSpace& sp, int p) { return sp.degree(p); }

inline std::optional<int> third_point(const FischerSpace& sp, int p, int q) { return sp.third(p, q); }

inline nlohmann::json export_space(const FischerSpace& sp) {
    nlohmann::json j;
    j["family"] = family_tag(sp.family());
    j["n"] = sp.n();
    j["base_group"] = sp.base().name();
    auto& pts = j["points"] = nlohmann::json::array();
    for (std::size_t k = 0; k < sp.size(); ++k) {
        const Point& p = sp.point(static_cast<int>(k));
        pts.push_back({{"label", sp.label(static_cast<int>(k))}, {"t", sp.base().label(p.t)}, {"i", p.i}, {"j", p.j}});
    }
    auto& ls = j["lines"] = nlohmann::json::array();
    sp.for_each_line([&](const Line& l) { ls.push_back({l[0], l[1], l[2]}); });
    return j;
}

inline nlohmann::json space_stats(const FischerSpace& sp) {
    std::map<int, int> degrees;
    for (std::size_t p = 0; p < sp.size(); ++p) ++degrees[sp.degree(static_cast<int>(p))];
    nlohmann::json deg = nlohmann::json::object();
    for (auto [d, c] : degrees) deg[std::to_string(d)] = c;
    nlohmann::json j{{"space", sp.id()},
                     {"base_group", sp.base().name()},
                     {"n", sp.n()},
                     {"points", sp.size()},
                     {"lines", sp.line_count()},
                     {"degree_histogram", deg},
                     {"connected", sp.connected()}};
    if (sp.family() == Family::W2A) {
        // Each triple of positions carries one b-line and three bc-lines.
        const long n = sp.n();
        j["lines_from_line_shapes"] = 4 * (n * (n - 1) * (n - 2) / 6);
    }
    return j;
}

}  // namespace matsuo

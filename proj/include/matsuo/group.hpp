#pragma once

// Finite groups given by Cayley tables, the built-in base groups used for the
// wreath construction, and automorphisms as index permutations.

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace matsuo {

struct group_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct catalog_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A finite group on element indices 0..order-1.  The identity is index 0.
/// Construction validates the table (closure, identity, inverses and the
/// full associativity loop).
class FiniteGroup {
public:
    FiniteGroup(std::string name, std::vector<std::string> labels, std::vector<int> table)
        : name_(std::move(name)), labels_(std::move(labels)), mult_(std::move(table)) {
        validate();
    }

    const std::string& name() const { return name_; }
    int order() const { return static_cast<int>(labels_.size()); }
    int identity() const { return 0; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int x) const { return labels_.at(static_cast<std::size_t>(x)); }
    int mult(int x, int y) const { return mult_[static_cast<std::size_t>(x * order() + y)]; }
    int inv(int x) const { return inv_[static_cast<std::size_t>(x)]; }

    int find(const std::string& label) const {
        for (int k = 0; k < order(); ++k)
            if (labels_[static_cast<std::size_t>(k)] == label) return k;
        throw group_error("no element labelled '" + label + "' in " + name_);
    }

    int power(int x, int e) const {
        int r = identity();
        for (int k = 0; k < e; ++k) r = mult(r, x);
        return r;
    }

    int element_order(int x) const {
        int n = 1;
        for (int y = x; y != identity(); y = mult(y, x)) ++n;
        return n;
    }

    /// True iff every element has order 1, 2 or 3.
    bool validate_orders() const {
        for (int x = 0; x < order(); ++x)
            if (element_order(x) > 3) return false;
        return true;
    }

    /// x^g = g^-1 x g
    int conjugate(int x, int g) const { return mult(mult(inv(g), x), g); }

private:
    void validate() {
        const int n = order();
        if (n <= 0) throw group_error("empty group");
        if (mult_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
            throw group_error("Cayley table has wrong size");
        for (int v : mult_)
            if (v < 0 || v >= n) throw group_error("Cayley table entry out of range");
        for (int x = 0; x < n; ++x)
            if (mult(0, x) != x || mult(x, 0) != x)
                throw group_error("first element is not the identity");
        inv_.assign(static_cast<std::size_t>(n), -1);
        for (int x = 0; x < n; ++x) {
            for (int y = 0; y < n; ++y)
                if (mult(x, y) == 0 && mult(y, x) == 0) {
                    inv_[static_cast<std::size_t>(x)] = y;
                    break;
                }
            if (inv_[static_cast<std::size_t>(x)] < 0)
                throw group_error("element '" + labels_[static_cast<std::size_t>(x)] + "' has no inverse");
        }
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z)
                    if (mult(mult(x, y), z) != mult(x, mult(y, z)))
                        throw group_error("Cayley table is not associative");
    }

    std::string name_;
    std::vector<std::string> labels_;
    std::vector<int> mult_;
    std::vector<int> inv_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Automorphism given by the image of each element index.
class GroupAutomorphism {
public:
    GroupAutomorphism(GroupPtr group, std::vector<int> image)
        : group_(std::move(group)), image_(std::move(image)) {
        const int n = group_->order();
        if (image_.size() != static_cast<std::size_t>(n)) throw group_error("automorphism has wrong size");
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        for (int v : image_) {
            if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
                throw group_error("automorphism is not a bijection");
            seen[static_cast<std::size_t>(v)] = true;
        }
        if (image_[0] != group_->identity()) throw group_error("automorphism moves the identity");
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if ((*this)(group_->mult(x, y)) != group_->mult((*this)(x), (*this)(y)))
                    throw group_error("map is not a homomorphism");
    }

    static GroupAutomorphism identity(GroupPtr g) {
        std::vector<int> id(static_cast<std::size_t>(g->order()));
        std::iota(id.begin(), id.end(), 0);
        return GroupAutomorphism(std::move(g), std::move(id));
    }

    /// Conjugation x -> g^-1 x g by an element of the group.
    static GroupAutomorphism inner(GroupPtr g, int by) {
        std::vector<int> img(static_cast<std::size_t>(g->order()));
        for (int x = 0; x < g->order(); ++x) img[static_cast<std::size_t>(x)] = g->conjugate(x, by);
        return GroupAutomorphism(std::move(g), std::move(img));
    }

    const GroupPtr& group() const { return group_; }
    const std::vector<int>& image() const { return image_; }
    int operator()(int x) const { return image_[static_cast<std::size_t>(x)]; }

    /// Apply *this first, then `after`.
    GroupAutomorphism then(const GroupAutomorphism& after) const {
        if (after.group_ != group_) throw group_error("automorphisms of different groups");
        std::vector<int> img(image_.size());
        for (std::size_t x = 0; x < image_.size(); ++x) img[x] = after(image_[x]);
        return GroupAutomorphism(group_, std::move(img));
    }

    bool is_involution() const {
        for (std::size_t x = 0; x < image_.size(); ++x)
            if ((*this)(image_[x]) != static_cast<int>(x)) return false;
        return true;
    }

private:
    GroupPtr group_;
    std::vector<int> image_;
};

namespace detail {

// Permutations of {0,1,2,3} composed left to right: (p*q)(i) = q(p(i)).
using Perm4 = std::array<int, 4>;

inline std::string cycle_string(const Perm4& p) {
    std::string out;
    std::array<bool, 4> seen{};
    for (int s = 0; s < 4; ++s) {
        if (seen[static_cast<std::size_t>(s)] || p[static_cast<std::size_t>(s)] == s) continue;
        out += "(";
        int x = s;
        bool first = true;
        while (!seen[static_cast<std::size_t>(x)]) {
            seen[static_cast<std::size_t>(x)] = true;
            if (!first) out += ",";
            out += std::to_string(x + 1);
            first = false;
            x = p[static_cast<std::size_t>(x)];
        }
        out += ")";
    }
    return out.empty() ? "()" : out;
}

template <class Elem, class Mul, class Label>
FiniteGroup table_from(std::string name, const std::vector<Elem>& elems, Mul mul, Label label) {
    const std::size_t n = elems.size();
    std::vector<std::string> labels;
    labels.reserve(n);
    for (const auto& e : elems) labels.push_back(label(e));
    std::vector<int> table(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Elem p = mul(elems[i], elems[j]);
            std::size_t k = 0;
            while (k < n && !(elems[k] == p)) ++k;
            if (k == n) throw group_error("generated table is not closed");
            table[i * n + j] = static_cast<int>(k);
        }
    return FiniteGroup(std::move(name), std::move(labels), std::move(table));
}

inline int mod3(int x) { return ((x % 3) + 3) % 3; }

}  // namespace detail

/// Built-in base groups: C1, C2, C3, V4, S3, C3xC3, A4, E27.
///
/// Labels: C2 = {1, e}; C3 = {1, u, u2}; V4 = {1, e, f, ef} (e, f the two
/// coordinate involutions); S3 = {1, f, f2, e, ef, ef2} with e^2 = f^3 =
/// (ef)^2 = 1; C3xC3 = u^r v^s; A4 = even permutations of {1,2,3,4} in cycle
/// notation, composed left to right; E27 = u^r v^s w^t with w = [u,v]
/// central, so v u = u v w^-1.
inline GroupPtr builtin_group(const std::string& name) {
    using detail::mod3;
    if (name == "C1") return std::make_shared<FiniteGroup>("C1", std::vector<std::string>{"1"}, std::vector<int>{0});
    if (name == "C2")
        return std::make_shared<FiniteGroup>("C2", std::vector<std::string>{"1", "e"}, std::vector<int>{0, 1, 1, 0});
    if (name == "C3") {
        std::vector<int> elems{0, 1, 2};
        return std::make_shared<FiniteGroup>(detail::table_from(
            "C3", elems, [](int a, int b) { return (a + b) % 3; },
            [](int a) { return a == 0 ? std::string("1") : a == 1 ? std::string("u") : std::string("u2"); }));
    }
    if (name == "V4") {
        std::vector<int> elems{0, 1, 2, 3};  // bit 0 = e, bit 1 = f
        return std::make_shared<FiniteGroup>(detail::table_from(
            "V4", elems, [](int a, int b) { return a ^ b; },
            [](int a) {
                static const char* names[] = {"1", "e", "f", "ef"};
                return std::string(names[a]);
            }));
    }
    if (name == "S3") {
        // e^a f^b, encoded as 3a + b; f e = e f^-1
        std::vector<int> elems{0, 1, 2, 3, 4, 5};
        return std::make_shared<FiniteGroup>(detail::table_from(
            "S3", elems,
            [](int x, int y) {
                int a = x / 3, b = x % 3, c = y / 3, d = y % 3;
                int nb = (c ? -b : b) + d;
                return 3 * ((a + c) % 2) + mod3(nb);
            },
            [](int x) {
                static const char* names[] = {"1", "f", "f2", "e", "ef", "ef2"};
                return std::string(names[x]);
            }));
    }
    if (name == "C3xC3") {
        std::vector<int> elems;
        for (int r = 0; r < 3; ++r)
            for (int s = 0; s < 3; ++s) elems.push_back(3 * r + s);
        return std::make_shared<FiniteGroup>(detail::table_from(
            "C3xC3", elems, [](int x, int y) { return 3 * ((x / 3 + y / 3) % 3) + (x % 3 + y % 3) % 3; },
            [](int x) {
                int r = x / 3, s = x % 3;
                std::string out;
                if (r) out += r == 1 ? "u" : "u2";
                if (s) out += s == 1 ? "v" : "v2";
                return out.empty() ? std::string("1") : out;
            }));
    }
    if (name == "A4") {
        std::vector<detail::Perm4> elems;
        detail::Perm4 p{0, 1, 2, 3};
        do {
            int inversions = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    if (p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)]) ++inversions;
            if (inversions % 2 == 0) elems.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
        return std::make_shared<FiniteGroup>(detail::table_from(
            "A4", elems,
            [](const detail::Perm4& a, const detail::Perm4& b) {
                detail::Perm4 r{};
                for (std::size_t i = 0; i < 4; ++i) r[i] = b[static_cast<std::size_t>(a[i])];
                return r;
            },
            [](const detail::Perm4& a) { return detail::cycle_string(a); }));
    }
    if (name == "E27") {
        // u^r v^s w^t encoded as 9r + 3s + t
        std::vector<int> elems(27);
        std::iota(elems.begin(), elems.end(), 0);
        return std::make_shared<FiniteGroup>(detail::table_from(
            "E27", elems,
            [](int x, int y) {
                int r = x / 9, s = (x / 3) % 3, t = x % 3;
                int r2 = y / 9, s2 = (y / 3) % 3, t2 = y % 3;
                return 9 * mod3(r + r2) + 3 * mod3(s + s2) + mod3(t + t2 - s * r2);
            },
            [](int x) {
                int e[3] = {x / 9, (x / 3) % 3, x % 3};
                const char* sym[3] = {"u", "v", "w"};
                std::string out;
                for (int k = 0; k < 3; ++k)
                    if (e[k]) out += std::string(sym[k]) + (e[k] == 2 ? "2" : "");
                return out.empty() ? std::string("1") : out;
            }));
    }
    throw catalog_error("unknown base group '" + name + "'");
}

inline int e27_index(int r, int s, int t) {
    return 9 * detail::mod3(r) + 3 * detail::mod3(s) + detail::mod3(t);
}

/// Cayley table text format:
///   order N
///   <N labels, identity first>
///   N rows of N labels (row * column)
inline GroupPtr load_cayley_table(std::istream& in, std::string name = "custom") {
    std::string word;
    int n = 0;
    if (!(in >> word) || word != "order" || !(in >> n) || n <= 0)
        throw group_error("Cayley table must start with 'order N'");
    std::vector<std::string> labels(static_cast<std::size_t>(n));
    std::map<std::string, int> index;
    for (int k = 0; k < n; ++k) {
        if (!(in >> labels[static_cast<std::size_t>(k)])) throw group_error("missing element label");
        if (!index.emplace(labels[static_cast<std::size_t>(k)], k).second)
            throw group_error("duplicate label '" + labels[static_cast<std::size_t>(k)] + "'");
    }
    std::vector<int> table;
    table.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int k = 0; k < n * n; ++k) {
        if (!(in >> word)) throw group_error("Cayley table is truncated");
        auto it = index.find(word);
        if (it == index.end()) throw group_error("unknown label '" + word + "' in table");
        table.push_back(it->second);
    }
    return std::make_shared<FiniteGroup>(std::move(name), std::move(labels), std::move(table));
}

inline GroupPtr load_cayley_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw group_error("cannot open " + path);
    return load_cayley_table(in, path);
}

}  // namespace matsuo

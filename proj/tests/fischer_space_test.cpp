#include "matsuo/fischer_space.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

using namespace matsuo;

namespace {

const std::vector<std::string> kFamilies{"A", "W2A", "W3A", "W2D", "W3D", "WrA4", "Wr3p2", "Wr3x3"};

int pair_index(const FischerSpace& sp, const std::string& a, const std::string& b) {
    auto r = sp.third(sp.find(a), sp.find(b));
    return r ? *r : -1;
}

}  // namespace

TEST(WreathSpace, PointCounts) {
    EXPECT_EQ(build_wreath_space(builtin_group("C3"), 3)->size(), 9u);
    EXPECT_EQ(build_wreath_space(builtin_group("A4"), 2)->size(), 12u);
    for (const auto& fam : kFamilies)
        for (int n : {2, 3, 4}) {
            auto sp = build_named_space(fam, n);
            EXPECT_EQ(sp->size(), static_cast<std::size_t>(sp->base().order() * n * (n - 1) / 2)) << fam << n;
        }
}

TEST(WreathSpace, C2OnThreePositionsByBruteForce) {
    auto T = builtin_group("C2");
    auto sp = build_wreath_space(T, 3);
    ASSERT_EQ(sp->size(), 6u);
    // count collinear pairs directly from product orders; each line has 3 pairs
    int collinear_pairs = 0;
    for (std::size_t p = 0; p < 6; ++p)
        for (std::size_t q = p + 1; q < 6; ++q)
            collinear_pairs += oracle::product_order(*T, 3, sp->point(static_cast<int>(p)), sp->point(static_cast<int>(q))) == 3;
    EXPECT_EQ(collinear_pairs, 12);
    EXPECT_EQ(sp->line_count(), 4u);
}

TEST(WreathSpace, RejectsIllegalBase) {
    std::istringstream in("order 4\n0 1 2 3\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n");
    auto c4 = load_cayley_table(in, "C4");
    EXPECT_THROW(build_wreath_space(c4, 3), space_error);
    EXPECT_THROW(build_wreath_space(builtin_group("C3"), 1), space_error);
}

TEST(ThirdPoint, NamedExamples) {
    auto w3d = build_named_space("W3D", 3);
    EXPECT_EQ(pair_index(*w3d, "c_{1,2}", "e_{2,3}"), w3d->find("g_{1,3}"));
    EXPECT_EQ(w3d->find("g_{1,3}"), w3d->find("d_{3,1}"));

    auto a4 = build_named_space("A", 4);
    EXPECT_EQ(pair_index(*a4, "b_{1,2}", "b_{3,4}"), -1);

    auto w3a = build_named_space("W3A", 4);
    for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j) {
            std::string ij = std::to_string(i) + "," + std::to_string(j);
            std::string ji = std::to_string(j) + "," + std::to_string(i);
            EXPECT_EQ(pair_index(*w3a, "b_{" + ij + "}", "c_{" + ij + "}"), w3a->find("c_{" + ji + "}"));
        }
}

// Every cell of the line table of Wr(S3, n): row y_{j,k}, column x_{i,j}.
TEST(ThirdPoint, S3LineTable) {
    auto sp = build_named_space("W3D", 3);
    const std::vector<std::string> cols{"b", "c", "d", "g", "e", "f"};
    const std::vector<std::vector<std::string>> table{
        {"b", "c", "d", "g", "e", "f"}, {"c", "b", "e", "f", "d", "g"}, {"d", "f", "g", "b", "c", "e"},
        {"g", "e", "b", "d", "f", "c"}, {"e", "g", "f", "c", "b", "d"}, {"f", "d", "c", "e", "g", "b"},
    };
    const std::vector<std::string> rows{"b", "c", "d", "g", "e", "f"};
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) {
            int got = pair_index(*sp, cols[c] + "_{1,2}", rows[r] + "_{2,3}");
            EXPECT_EQ(got, sp->find(table[r][c] + "_{1,3}")) << "row " << rows[r] << " col " << cols[c];
        }
}

TEST(ThirdPoint, SymmetricAndClosesLines) {
    for (const auto& fam : kFamilies) {
        auto sp = build_named_space(fam, 3);
        const int N = static_cast<int>(sp->size());
        for (int p = 0; p < N; ++p)
            for (int q = 0; q < N; ++q) {
                if (p == q) continue;
                auto r = sp->third(p, q);
                EXPECT_EQ(r, sp->third(q, p));
                if (r) {
                    EXPECT_EQ(sp->third(p, *r), q);
                    EXPECT_NE(*r, p);
                    EXPECT_NE(*r, q);
                }
            }
    }
}

TEST(ThirdPoint, MatchesLineFormulasOnSmallSpaces) {
    for (const auto& fam : kFamilies)
        for (int n = 2; n <= 6; ++n) {
            auto sp = build_named_space(fam, n);
            if (sp->size() > 30) continue;
            const auto& T = sp->base();
            for (std::size_t p = 0; p < sp->size(); ++p)
                for (std::size_t q = 0; q < sp->size(); ++q) {
                    if (p == q) continue;
                    auto expect = oracle::formula_third(T, sp->point(static_cast<int>(p)), sp->point(static_cast<int>(q)));
                    auto got = sp->third(static_cast<int>(p), static_cast<int>(q));
                    ASSERT_EQ(expect.has_value(), got.has_value()) << fam << n;
                    if (got) {
                        EXPECT_EQ(sp->point(*got), *expect);
                    }
                }
        }
}

TEST(Degrees, MatchClosedForms) {
    for (int n : {2, 3, 4}) {
        auto w2d = build_named_space("W2D", n);
        auto w3d = build_named_space("W3D", n);
        auto a4 = build_named_space("WrA4", n);
        for (std::size_t p = 0; p < w2d->size(); ++p) EXPECT_EQ(w2d->degree(static_cast<int>(p)), 4 * (n - 2));
        for (std::size_t p = 0; p < w3d->size(); ++p) EXPECT_EQ(w3d->degree(static_cast<int>(p)), 6 * (n - 2) + 1);
        for (std::size_t p = 0; p < a4->size(); ++p) EXPECT_EQ(a4->degree(static_cast<int>(p)), 12 * n - 20);
    }
    EXPECT_EQ(point_degree(*build_named_space("W2D", 4), 0), 8);
    EXPECT_EQ(point_degree(*build_named_space("WrA4", 2), 5), 4);
    EXPECT_EQ(point_degree(*build_named_space("W3D", 3), 11), 7);
}

TEST(Degrees, RegularInEveryFamily) {
    for (const auto& fam : kFamilies)
        for (int n : {2, 3, 4}) {
            auto sp = build_named_space(fam, n);
            for (std::size_t p = 1; p < sp->size(); ++p) EXPECT_EQ(sp->degree(static_cast<int>(p)), sp->degree(0)) << fam << n;
        }
}

TEST(NamedSpaces, CountsAndLabels) {
    auto a = build_named_space("A", 4);
    EXPECT_EQ(a->size(), 6u);
    EXPECT_EQ(a->line_count(), 4u);
    EXPECT_EQ(a->label(0), "b_{1,2}");
    EXPECT_EQ(build_named_space("W2D", 3)->size(), 12u);
    EXPECT_EQ(build_named_space("W3D", 2)->size(), 6u);
    EXPECT_EQ(build_named_space("W3D", 3)->size(), 18u);
    auto w2a = build_named_space("W2A", 4);
    EXPECT_EQ(w2a->find("c_{2,1}"), w2a->find("c_{1,2}"));
    EXPECT_EQ(w2a->find("e.(1,2)"), w2a->find("c_{1,2}"));
    EXPECT_THROW(build_named_space("W5Z", 3), catalog_error);
    EXPECT_THROW(w2a->find("z_{1,2}"), space_error);
}

TEST(NamedSpaces, W2ALineCountIsFourPerTriple) {
    for (int n : {3, 4, 5}) {
        auto sp = build_named_space("W2A", n);
        EXPECT_EQ(sp->line_count(), static_cast<std::size_t>(4 * n * (n - 1) * (n - 2) / 6));
        EXPECT_EQ(space_stats(*sp)["lines_from_line_shapes"], sp->line_count());
    }
}

TEST(NamedSpaces, ConnectedSingleClass) {
    for (const auto& fam : kFamilies) {
        auto sp = build_named_space(fam, 3);
        EXPECT_TRUE(sp->connected()) << fam;
    }
}

TEST(Diagrams, EdgesFollowCollinearity) {
    auto sp = build_named_space("W3A", 4);
    const int a = sp->find("b_{1,2}");
    // pick orthogonal pairs avoiding a
    std::vector<std::pair<int, int>> orth;
    const int N = static_cast<int>(sp->size());
    for (int p = 0; p < N; ++p)
        for (int q = p + 1; q < N; ++q)
            if (p != a && q != a && !sp->collinear(p, q)) orth.emplace_back(p, q);
    ASSERT_GT(orth.size(), 2u);
    int checked = 0;
    for (std::size_t x = 0; x < orth.size() && checked < 200; ++x)
        for (std::size_t y = x + 1; y < orth.size() && checked < 200; ++y) {
            auto [b, c] = orth[x];
            auto [d, e] = orth[y];
            if (b == d || b == e || c == d || c == e) continue;
            Diagram dg = sp->diagram_of(a, {b, c}, {d, e});
            const std::array<int, 5> v{a, b, c, d, e};
            for (int s = 0; s < 5; ++s)
                for (int t = 0; t < 5; ++t)
                    if (s != t) {
                        EXPECT_EQ(dg.edge(s, t), oracle::product_order(sp->base(), 4, sp->point(v[static_cast<std::size_t>(s)]),
                                                                       sp->point(v[static_cast<std::size_t>(t)])) == 3);
                    }
            ++checked;
        }
    EXPECT_EQ(checked, 200);
    EXPECT_THROW(sp->diagram_of(a, {sp->find("b_{1,3}"), sp->find("b_{2,3}")}, orth[0]), space_error);
}

TEST(Diagrams, CanonicalCodes) {
    Diagram empty;
    EXPECT_EQ(canonical_diagram(empty), "0000000000");
    for (const auto& perm : generator_symmetries()) EXPECT_EQ(canonical_diagram(empty.relabel(perm)), "0000000000");

    auto with_edges = [](std::initializer_list<std::pair<int, int>> edges) {
        Diagram d;
        for (auto [u, v] : edges) d.adjacency[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] =
                                      d.adjacency[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = true;
        return d;
    };
    EXPECT_EQ(canonical_diagram(with_edges({{0, 1}})), canonical_diagram(with_edges({{0, 2}})));
    EXPECT_EQ(canonical_diagram(with_edges({{0, 1}, {0, 3}})), canonical_diagram(with_edges({{0, 2}, {0, 4}})));
    EXPECT_NE(canonical_diagram(with_edges({{0, 1}})), canonical_diagram(with_edges({{1, 3}})));
    Diagram d = with_edges({{0, 1}, {2, 3}});
    EXPECT_EQ(diagram_from_bits(d.bits()).bits(), d.bits());
    EXPECT_EQ(d.components().size(), 3u);
}

TEST(Automorphisms, IdentityAndBrokenTransposition) {
    auto sp = build_named_space("W3A", 3);
    std::vector<int> id(sp->size());
    std::iota(id.begin(), id.end(), 0);
    EXPECT_TRUE(sp->is_automorphism(id));
    // swap two collinear points and fix everything else
    const int p = 0;
    const int q = sp->neighbors(p).front();
    ASSERT_GE(sp->degree(p), 2);
    std::vector<int> swap = id;
    std::swap(swap[static_cast<std::size_t>(p)], swap[static_cast<std::size_t>(q)]);
    EXPECT_FALSE(sp->is_automorphism(swap));
    std::vector<int> not_bijection(sp->size(), 0);
    EXPECT_FALSE(sp->is_automorphism(not_bijection));
}

TEST(Export, JsonShape) {
    auto sp = build_named_space("A", 3);
    auto j = export_space(*sp);
    EXPECT_EQ(j["family"], "A");
    EXPECT_EQ(j["points"].size(), 3u);
    EXPECT_EQ(j["lines"].size(), 1u);
    EXPECT_EQ(j["points"][0]["label"], "b_{1,2}");
    EXPECT_EQ(j["points"][2]["i"], 2);
}

#include "matsuo/axial.hpp"
#include "matsuo/flip.hpp"

#include <gtest/gtest.h>

#include <regex>

using namespace matsuo;

namespace {

int swap_index(int i) { return i % 2 ? i + 1 : i - 1; }

}  // namespace

TEST(StandardFlip, InvolutiveAutomorphisms) {
    for (const auto& fam : standard_flip_families())
        for (int k = 1; k <= 3; ++k) {
            auto tau = standard_flip(fam, k);
            EXPECT_TRUE(tau.space->is_automorphism(tau.perm)) << fam << k;
            EXPECT_TRUE(is_involution(tau.perm)) << fam << k;
            EXPECT_EQ(tau.space->n(), 2 * k);
        }
    EXPECT_THROW(standard_flip("W3D", 2), flip_error);
    EXPECT_THROW(standard_flip("W2A", 0), flip_error);
    EXPECT_EQ(standard_flip("2Q", 2).perm, standard_flip("W2A", 2).perm);
}

TEST(StandardFlip, TwoQSinglesAreTheBlockPairs) {
    auto tau = standard_flip("2Q", 2);
    auto orbits = classify_orbits(tau);
    std::set<std::string> labels;
    for (int p : orbits.singles) labels.insert(tau.space->label(p));
    EXPECT_EQ(labels, (std::set<std::string>{"b_{1,2}", "c_{1,2}", "b_{3,4}", "c_{3,4}"}));
}

TEST(StandardFlip, W2DSwapsLettersCAndD) {
    auto tau = standard_flip("W2D", 2);
    const std::regex re("([bcde])_\\{(\\d),(\\d)\\}");
    const std::map<char, char> letter{{'b', 'b'}, {'c', 'd'}, {'d', 'c'}, {'e', 'e'}};
    for (std::size_t p = 0; p < tau.space->size(); ++p) {
        const std::string l = tau.space->label(static_cast<int>(p));
        std::smatch m;
        ASSERT_TRUE(std::regex_match(l, m, re)) << l;
        int i = swap_index(std::stoi(m[2])), j = swap_index(std::stoi(m[3]));
        if (i > j) std::swap(i, j);
        const std::string want = std::string(1, letter.at(m[1].str()[0])) + "_{" + std::to_string(i) + "," + std::to_string(j) + "}";
        EXPECT_EQ(tau.space->label(tau.perm[p]), want) << l;
    }
}

TEST(StandardFlip, Wr3p2Formula) {
    auto tau = standard_flip("Wr3p2", 2);
    const FiniteGroup& T = tau.space->base();
    std::map<int, std::array<int, 3>> exps;
    for (int r = 0; r < 3; ++r)
        for (int s = 0; s < 3; ++s)
            for (int t = 0; t < 3; ++t) exps[e27_index(r, s, t)] = {r, s, t};
    for (std::size_t p = 0; p < tau.space->size(); ++p) {
        const Point pt = tau.space->point(static_cast<int>(p));
        const auto [r, s, t] = exps.at(pt.t);
        // u^r v^s w^t.(i,j) -> u^s v^r w^(-t-rs).(i^pi, j^pi)
        const Point want = normalize_point(T, e27_index(s, r, -t - r * s), swap_index(pt.i), swap_index(pt.j));
        EXPECT_EQ(tau.space->point(tau.perm[p]), want);
    }
}

TEST(Orbits, CountsMatchFormulas) {
    for (const auto& fam : standard_flip_families())
        for (int k = 1; k <= 3; ++k) {
            auto tau = standard_flip(fam, k);
            auto o = classify_orbits(tau);
            auto f = flip_formula(fam, k);
            EXPECT_EQ(static_cast<long>(o.singles.size()), f.singles) << fam << k;
            EXPECT_EQ(static_cast<long>(o.doubles.size()), f.doubles) << fam << k;
            EXPECT_EQ(static_cast<long>(o.extras.size()), f.extras) << fam << k;
            EXPECT_EQ(static_cast<long>(o.orbit_count()), f.fixed_dim) << fam << k;
            EXPECT_EQ(o.singles.size() + 2 * (o.doubles.size() + o.extras.size()), tau.space->size());
            for (auto [p, q] : o.doubles) EXPECT_FALSE(tau.space->collinear(p, q));
            for (auto [p, q] : o.extras) EXPECT_TRUE(tau.space->collinear(p, q));
        }
}

TEST(Orbits, FixedDimensionFormulas) {
    for (long k = 1; k <= 3; ++k) {
        EXPECT_EQ(flip_formula("W2A", k).fixed_dim, 2 * k * k);
        EXPECT_EQ(flip_formula("W3A", k).fixed_dim, 3 * k * k - k);
        EXPECT_EQ(flip_formula("W2D", k).fixed_dim, 4 * k * k - k);
        EXPECT_EQ(flip_formula("WrA4", k).fixed_dim, 12 * k * k - 4 * k);
        EXPECT_EQ(flip_formula("WrA4outer", k).fixed_dim, 12 * k * k - 3 * k);
        EXPECT_EQ(flip_formula("Wr3p2", k).fixed_dim, 27 * k * k - 9 * k);
        EXPECT_EQ(flip_formula("Wr3x3", k).fixed_dim, 9 * k * k - 3 * k);
        // extras are 3k orbit pairs for this family
        EXPECT_EQ(flip_formula("Wr3x3", k).extras, 3 * k);
    }
}

TEST(Orbits, RejectsBadPermutations) {
    auto sp = build_named_space("A", 4);
    std::vector<int> cycle{1, 2, 0, 3, 4, 5};
    EXPECT_THROW(classify_orbits(*sp, cycle), flip_error);
    std::vector<int> id{0, 1, 2, 3, 4, 5};
    auto o = classify_orbits(*sp, id);
    EXPECT_EQ(o.singles.size(), 6u);
    // swap two points without moving their lines
    std::vector<int> bad{1, 0, 2, 3, 4, 5};
    EXPECT_THROW(classify_orbits(*sp, bad), flip_error);
}

TEST(FixedSubalgebra, BasisSizesAndClosure) {
    for (const auto& [fam, k, dim] : std::vector<std::tuple<std::string, int, std::size_t>>{
             {"W2D", 2, 14}, {"WrA4", 2, 40}, {"WrA4outer", 2, 42}, {"W3A", 2, 10}, {"W2A", 3, 18}, {"Wr3x3", 2, 30}}) {
        auto tau = standard_flip(fam, k);
        auto basis = fixed_subalgebra_basis(*tau.space, classify_orbits(tau));
        ASSERT_EQ(basis.size(), dim) << fam;
        MatsuoAlgebra<EtaScalar> M(tau.space);
        EchelonBasis<EtaScalar> span(tau.space->size());
        std::vector<std::vector<EtaScalar>> vs;
        for (const auto& g : basis) {
            vs.push_back(g.dense<EtaScalar>(tau.space->size()));
            EXPECT_TRUE(span.insert(vs.back()));
        }
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i; j < vs.size(); ++j) EXPECT_TRUE(span.contains(M.product(vs[i], vs[j]))) << fam;
    }
}

TEST(FlipSubalgebra, KnownDimensions) {
    const auto sym = ScalarMode::symbolic_mode();
    EXPECT_EQ(flip_subalgebra<EtaScalar>(standard_flip("W2A", 2), sym).dimension(), 8u);
    EXPECT_EQ(flip_subalgebra<EtaScalar>(standard_flip("W3A", 2), sym).dimension(), 9u);
    EXPECT_EQ(flip_subalgebra<EtaScalar>(standard_flip("W2D", 2), sym).dimension(), 14u);
    EXPECT_EQ(flip_subalgebra<EtaScalar>(standard_flip("WrA4outer", 2), sym).dimension(), 42u);
    EXPECT_EQ(flip_subalgebra<EtaScalar>(standard_flip("W2A", 3), sym).dimension(), 18u);
    EXPECT_EQ(flip_subalgebra<EtaScalar>(standard_flip("W2D", 3), sym).dimension(), 33u);
}

TEST(FlipSubalgebra, Wr3x3AtTwo) {
    auto tau = standard_flip("Wr3x3", 2);
    FlipReportOptions opt;
    opt.etas = {Rational(2), Rational(5)};
    auto j = flip_report(tau, opt);
    EXPECT_EQ(j["flip_dim_symbolic"], 30);
    EXPECT_EQ(j["flip_dims_at"]["2"], 29);
    EXPECT_EQ(j["flip_dims_at"]["5"], 30);
    EXPECT_EQ(j["specialized_symbolic_dims_at"]["2"], 29);
    EXPECT_EQ(j["critical_etas"], nlohmann::json::array({"2"}));
    EXPECT_TRUE(j["flip_equals_fixed"].get<bool>());
    EXPECT_TRUE(j["consistent"].get<bool>());
    EXPECT_EQ(j["extras"], 6);
    EXPECT_TRUE(j.contains("note"));
}

TEST(FlipSubalgebra, GeneratorRoles) {
    auto tau = standard_flip("W3A", 2);
    auto A = flip_subalgebra<EtaScalar>(tau, ScalarMode::symbolic_mode());
    std::size_t singles = 0, doubles = 0;
    for (const auto& g : A.generators()) {
        singles += g.role == Role::Single;
        doubles += g.role == Role::Double;
    }
    EXPECT_EQ(singles, 2u);
    EXPECT_EQ(doubles, 6u);
    EXPECT_EQ(A.generators().size(), 8u);
}

TEST(FlipSubalgebra, DoublesPrimitiveInFixedSubalgebra) {
    for (const auto& fam : {"W2A", "W3A", "W2D", "Wr3x3"}) {
        auto tau = standard_flip(fam, 2);
        auto orbits = classify_orbits(tau);
        auto M = close_symbolic(tau.space, fixed_subalgebra_basis(*tau.space, orbits));
        EXPECT_EQ(M.dimension(), orbits.orbit_count());
        for (auto [p, q] : orbits.doubles) {
            std::vector<EtaScalar> x(tau.space->size(), EtaScalar(0));
            x[static_cast<std::size_t>(p)] = x[static_cast<std::size_t>(q)] = EtaScalar(1);
            EXPECT_TRUE(check_primitive(M, x)) << fam << " " << tau.space->label(p);
        }
    }
}

TEST(FlipReport, CountsAndEquality) {
    FlipReportOptions opt;
    auto w2d = flip_report(standard_flip("W2D", 2), opt);
    EXPECT_EQ(w2d["fixed_dim"], 14);
    EXPECT_EQ(w2d["flip_dim_symbolic"], 14);
    EXPECT_TRUE(w2d["flip_equals_fixed"].get<bool>());
    auto w3a = flip_report(standard_flip("W3A", 2), opt);
    EXPECT_EQ(w3a["fixed_dim"], 10);
    EXPECT_EQ(w3a["flip_dim_symbolic"], 9);
    EXPECT_FALSE(w3a["flip_equals_fixed"].get<bool>());
    EXPECT_EQ(w3a["expected"]["doubles"], 6);
    opt.symbolic = false;
    opt.etas = {Rational(3)};
    auto ev = flip_report(standard_flip("W2A", 2), opt);
    EXPECT_FALSE(ev.contains("flip_dim_symbolic"));
    EXPECT_EQ(ev["flip_dims_at"]["3"], 8);
    EXPECT_TRUE(ev["critical_etas"].empty());
}

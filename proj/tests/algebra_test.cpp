#include "matsuo/algebra.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace matsuo;

namespace {

using Vec = AlgebraVector<EtaScalar>;

EtaScalar half() { return EtaScalar::eta() / 2; }

Vec random_vector(const FischerSpace& sp, std::mt19937& rng, int terms = 3) {
    std::uniform_int_distribution<int> pt(0, static_cast<int>(sp.size()) - 1), co(-3, 3), pick(0, 3);
    Vec v(&sp);
    for (int t = 0; t < terms; ++t) {
        EtaScalar c(co(rng));
        if (pick(rng) == 0) c = c * EtaScalar::eta() + 1;
        v.add(pt(rng), c);
    }
    return v;
}

std::map<int, EtaScalar> as_map(const Vec& v) { return v.coeffs(); }

const std::vector<std::string> kSmall{"A:3", "A:4", "W2A:3", "W3A:3", "W2D:3", "W3D:2", "WrA4:2", "Wr3x3:2", "W3A:4"};

}  // namespace

TEST(AxisProduct, Examples) {
    auto sp = build_named_space("A", 4);
    MatsuoAlgebra<EtaScalar> M(sp);
    const int b12 = sp->find("b_{1,2}"), b13 = sp->find("b_{1,3}"), b23 = sp->find("b_{2,3}"), b34 = sp->find("b_{3,4}");
    EXPECT_EQ(M.axis_product(b12, b12), M.axis(b12));
    EXPECT_TRUE(M.axis_product(b12, b34).is_zero());
    Vec expect = half() * (M.axis(b12) + M.axis(b13) - M.axis(b23));
    EXPECT_EQ(M.axis_product(b12, b13), expect);
}

TEST(VectorProduct, OrthogonalAndDoubleAxes) {
    auto sp = build_named_space("A", 4);
    MatsuoAlgebra<EtaScalar> M(sp);
    const int b12 = sp->find("b_{1,2}"), b34 = sp->find("b_{3,4}");
    Vec x = M.double_axis(b12, b34);
    EXPECT_EQ(M.product(x, x), x);
    // three pairwise orthogonal points need n >= 6
    auto big = build_named_space("A", 6);
    MatsuoAlgebra<EtaScalar> B(big);
    Vec ab = B.axis(big->find("b_{1,2}")) + B.axis(big->find("b_{3,4}"));
    EXPECT_TRUE(B.product(ab, B.axis(big->find("b_{5,6}"))).is_zero());
    EXPECT_THROW(M.double_axis(b12, sp->find("b_{1,3}")), space_error);
}

TEST(VectorProduct, MatchesDefinitionOracle) {
    std::mt19937 rng(17);
    for (const auto& spec : kSmall) {
        auto sp = parse_space_spec(spec);
        MatsuoAlgebra<EtaScalar> M(sp);
        for (int trial = 0; trial < 20; ++trial) {
            Vec u = random_vector(*sp, rng), v = random_vector(*sp, rng);
            EXPECT_EQ(as_map(M.product(u, v)), oracle::definition_product(*sp, u.coeffs(), v.coeffs())) << spec;
            // dense route agrees with the sparse one
            EXPECT_EQ(Vec::from_dense(*sp, M.product(u.dense(), v.dense())), M.product(u, v)) << spec;
        }
    }
}

TEST(VectorProduct, CommutativeAndBilinear) {
    std::mt19937 rng(5);
    for (const auto& spec : kSmall) {
        auto sp = parse_space_spec(spec);
        MatsuoAlgebra<EtaScalar> M(sp);
        for (int trial = 0; trial < 15; ++trial) {
            Vec u = random_vector(*sp, rng), v = random_vector(*sp, rng), w = random_vector(*sp, rng);
            EtaScalar alpha = EtaScalar::eta() - 3;
            EXPECT_EQ(M.product(u, v), M.product(v, u));
            EXPECT_EQ(M.product(u, alpha * v + w), alpha * M.product(u, v) + M.product(u, w));
        }
    }
}

TEST(VectorProduct, IdempotentsAndMismatch) {
    for (const auto& spec : kSmall) {
        auto sp = parse_space_spec(spec);
        MatsuoAlgebra<EtaScalar> M(sp);
        const int n = static_cast<int>(sp->size());
        for (int p = 0; p < n; ++p) {
            EXPECT_EQ(M.product(M.axis(p), M.axis(p)), M.axis(p));
            for (int q = p + 1; q < n; ++q)
                if (!sp->collinear(p, q)) {
                    Vec x = M.double_axis(p, q);
                    EXPECT_EQ(M.product(x, x), x);
                }
        }
    }
    auto a = build_named_space("A", 3), b = build_named_space("A", 3);
    MatsuoAlgebra<EtaScalar> Ma(a);
    EXPECT_THROW(Ma.product(Vec::axis(*a, 0), Vec::axis(*b, 0)), space_error);
}

TEST(Frobenius, BasisValuesAndAssociativity) {
    auto sp = build_named_space("A", 3);
    MatsuoAlgebra<EtaScalar> M(sp);
    EXPECT_EQ(M.frobenius(M.axis(0), M.axis(0)), EtaScalar(1));
    EXPECT_EQ(M.frobenius(M.axis(0), M.axis(1)), half());
    // (a b, c) = (a, b c) on the line {a, b, c}
    EXPECT_EQ(M.frobenius(M.product(M.axis(0), M.axis(1)), M.axis(2)),
              M.frobenius(M.axis(0), M.product(M.axis(1), M.axis(2))));

    std::mt19937 rng(23);
    for (const auto& spec : kSmall) {
        auto s = parse_space_spec(spec);
        MatsuoAlgebra<EtaScalar> A(s);
        for (int trial = 0; trial < 15; ++trial) {
            Vec u = random_vector(*s, rng), v = random_vector(*s, rng), w = random_vector(*s, rng);
            EXPECT_EQ(A.frobenius(A.product(u, v), w), A.frobenius(u, A.product(v, w))) << spec;
            EXPECT_EQ(A.frobenius(u, v), A.frobenius(v, u));
            EXPECT_EQ(A.frobenius(u.dense(), v.dense()), A.frobenius(u, v));
        }
    }
}

TEST(Evaluated, SpecializationIsAHomomorphism) {
    std::mt19937 rng(31);
    auto sp = parse_space_spec("W3A:3");
    MatsuoAlgebra<EtaScalar> S(sp);
    const Rational r = make_rational(5, 3);
    MatsuoAlgebra<Rational> R(sp, r);
    for (int trial = 0; trial < 20; ++trial) {
        Vec u = random_vector(*sp, rng), v = random_vector(*sp, rng);
        auto sym = S.product(u.dense(), v.dense());
        std::vector<Rational> ue, ve;
        for (const auto& x : u.dense()) ue.push_back(x.evaluate(r));
        for (const auto& x : v.dense()) ve.push_back(x.evaluate(r));
        auto ev = R.product(ue, ve);
        for (std::size_t k = 0; k < sym.size(); ++k) EXPECT_EQ(sym[k].evaluate(r), ev[k]);
    }
    EXPECT_THROW(MatsuoAlgebra<Rational>(sp, Rational(1)), parameter_error);
    EXPECT_THROW(MatsuoAlgebra<Rational>(sp, Rational(0)), parameter_error);
}

TEST(Gram, MatrixShape) {
    for (const auto& spec : kSmall) {
        auto sp = parse_space_spec(spec);
        auto g = gram(*sp);
        for (std::size_t p = 0; p < sp->size(); ++p) {
            EXPECT_EQ(g.matrix[p][p], EtaScalar(1));
            for (std::size_t q = 0; q < sp->size(); ++q) {
                EXPECT_EQ(g.matrix[p][q], g.matrix[q][p]);
                if (p != q) EXPECT_TRUE(g.matrix[p][q].is_zero() || g.matrix[p][q] == half());
            }
        }
    }
}

TEST(Gram, DeterminantExamples) {
    EXPECT_EQ(gram(*build_named_space("A", 2)).det, EtaPolynomial(1));
    auto line = gram(*build_named_space("A", 3)).det;
    EXPECT_EQ(rational_roots(line), (std::vector<Rational>{-1, 2}));
    // (1 + eta)(1 - eta/2)^2 up to a constant
    EXPECT_EQ(line, EtaPolynomial(std::vector<Rational>{4, 0, -3, 1}));
}

TEST(Gram, RoutesAgreeWithFieldElimination) {
    for (const auto& spec : {"A:3", "A:4", "W2A:3", "W3A:3", "W3D:2", "WrA4:2", "Wr3x3:2"}) {
        auto sp = parse_space_spec(spec);
        const auto bareiss = gram_det_bareiss(*sp);
        EXPECT_EQ(bareiss, gram_det_charpoly(*sp)) << spec;
        // det(G) over Q(eta), then compare up to a rational factor
        EtaScalar d = oracle::field_determinant(gram(*sp).matrix);
        ASSERT_TRUE(d.is_polynomial());
        EXPECT_EQ(d.num().content_normalized().monic(), bareiss.monic()) << spec;
    }
    for (const auto& spec : {"W2D:4", "W3A:5", "W3D:3"}) {
        auto sp = parse_space_spec(spec);
        EXPECT_EQ(gram_det_bareiss(*sp), gram_det_charpoly(*sp)) << spec;
    }
}

TEST(CriticalValues, Examples) {
    auto cv = critical_values(*build_named_space("A", 3));
    EXPECT_EQ(cv.roots, (std::vector<Rational>{-1, 2}));
    EXPECT_EQ(cv.certificate, EtaPolynomial(std::vector<Rational>{-2, -1, 1}));
    auto none = critical_values(*build_named_space("A", 2));
    EXPECT_TRUE(none.roots.empty());
    EXPECT_EQ(none.det, EtaPolynomial(1));
}

TEST(CriticalValues, RootsAreExactlyTheRationalRootsOfTheDeterminant) {
    for (const auto& spec : {"A:4", "W2A:4", "W3A:4", "W2D:3", "W3D:3", "WrA4:2", "Wr3x3:2"}) {
        auto sp = parse_space_spec(spec);
        auto cv = critical_values(*sp);
        auto all = rational_roots(cv.det);
        std::vector<Rational> merged = cv.roots;
        merged.insert(merged.end(), cv.excluded_roots.begin(), cv.excluded_roots.end());
        std::sort(merged.begin(), merged.end());
        EXPECT_EQ(merged, all) << spec;
        for (const auto& r : cv.roots) EXPECT_EQ(cv.certificate(r), 0);
        EXPECT_EQ(gcd(cv.certificate, cv.certificate.derivative()), EtaPolynomial(1));
    }
}

TEST(RadicalDim, Examples) {
    auto sp = build_named_space("A", 3);
    EXPECT_EQ(radical_dim(*sp, make_rational(1, 3)), 0u);
    EXPECT_GE(radical_dim(*sp, Rational(2)), 1u);
    EXPECT_GE(radical_dim(*sp, Rational(-1)), 1u);
    EXPECT_THROW(radical_dim(*sp, Rational(1)), parameter_error);
    EXPECT_THROW(radical_dim(*sp, Rational(0)), parameter_error);
}

TEST(RadicalDim, PositiveExactlyAtRoots) {
    for (const auto& spec : {"A:4", "W2A:4", "W3A:4", "W2D:3", "WrA4:2", "Wr3x3:2"}) {
        auto sp = parse_space_spec(spec);
        auto cv = critical_values(*sp);
        for (const auto& r : cv.roots) {
            const auto dim = radical_dim(*sp, r);
            EXPECT_GT(dim, 0u) << spec << " at " << r;
            // cross-check with a field rank of the Gram matrix
            Matrix<Rational> g(sp->size(), std::vector<Rational>(sp->size(), Rational(0)));
            for (std::size_t p = 0; p < sp->size(); ++p) {
                g[p][p] = 1;
                for (int q : sp->neighbors(static_cast<int>(p))) g[p][static_cast<std::size_t>(q)] = r / 2;
            }
            EXPECT_EQ(dim, sp->size() - rank(g));
        }
        EXPECT_EQ(radical_dim(*sp, make_rational(13, 17)), 0u) << spec;
    }
}

TEST(Charpoly, MatchesFieldComputation) {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> v(-5, 5);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 6;
        Matrix<Integer> a(n, std::vector<Integer>(n));
        for (auto& row : a)
            for (auto& x : row) x = v(rng);
        auto chi = charpoly(a);
        // chi(t) = det(tI - A) at a few integers
        for (int t : {-2, 0, 3}) {
            Matrix<Rational> m(n, std::vector<Rational>(n));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) m[i][j] = (i == j ? t : 0) - Rational(a[i][j]);
            Matrix<EtaScalar> me(n, std::vector<EtaScalar>(n));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) me[i][j] = EtaScalar(m[i][j]);
            EXPECT_EQ(EtaScalar(EtaPolynomial::from_integers(chi)(Rational(t))), oracle::field_determinant(me));
        }
    }
}

#include <gtest/gtest.h>

#include <cmath>

#include "shady/lp.hpp"
#include "shady/matrix.hpp"
#include "shady/mpoly.hpp"
#include "shady/random.hpp"
#include "shady/rational.hpp"

using namespace shady;

TEST(Rational, CanonicalForm) {
    EXPECT_EQ(to_string(frac(6, -4)), "-3//2");
    EXPECT_EQ(to_string(frac(0, 7)), "0//1");
    EXPECT_EQ(to_string(Rational(5)), "5//1");
    EXPECT_EQ(frac(1, 3) + frac(1, 6), frac(1, 2));
}

TEST(Rational, Parse) {
    EXPECT_EQ(parse_rational("84/83"), frac(84, 83));
    EXPECT_EQ(parse_rational(" -39//40 "), frac(-39, 40));
    EXPECT_EQ(parse_rational("12"), Rational(12));
    EXPECT_EQ(parse_rational("+3/6"), frac(1, 2));
    EXPECT_EQ(parse_rational("43084159464618720881//5777554117512961187"),
              make_rational(Integer("43084159464618720881"), Integer("5777554117512961187")));
    EXPECT_THROW(parse_rational("1.5"), ParseError);
    EXPECT_THROW(parse_rational("1/0"), ParseError);
    EXPECT_THROW(parse_rational(""), ParseError);
    EXPECT_THROW(parse_rational("1/2/3"), ParseError);
    EXPECT_THROW(parse_rational("x"), ParseError);
}

TEST(Rational, PrintParseRoundTrip) {
    Rng rng(3);
    for (int i = 0; i < 500; ++i) {
        Rational q = rng.rational_in_unit(1000) * Rational(rng.uniform(-100000, 100000));
        EXPECT_EQ(parse_rational(to_string(q)), q);
    }
}

TEST(Rational, RoundToRational) {
    EXPECT_EQ(round_to_rational(0.5, 10), frac(1, 2));
    EXPECT_EQ(round_to_rational(0.3333333, 10), frac(1, 3));
    EXPECT_EQ(round_to_rational(3.14159265, 1000), frac(355, 113));
    EXPECT_EQ(round_to_rational(-3.14159265, 1000), frac(-355, 113));
    EXPECT_EQ(round_to_rational(0.0, 5), Rational(0));
    EXPECT_EQ(round_to_rational(2.0, 1), Rational(2));
    EXPECT_THROW(round_to_rational(1.0, 0), std::domain_error);
}

// Brute force over all denominators for the best approximation.
TEST(Rational, RoundToRationalMatchesBruteForce) {
    Rng rng(11);
    for (int t = 0; t < 200; ++t) {
        double x = static_cast<double>(rng.uniform(-1000000, 1000000)) / 77777.0;
        const long max_den = rng.uniform(1, 60);
        Rational got = round_to_rational(x, max_den);
        Rational exact(x);
        Rational best_err = -1;
        for (long q = 1; q <= max_den; ++q) {
            Integer p0 = Integer(floor(x * static_cast<double>(q)));
            for (Integer p = p0 - 1; p <= p0 + 2; ++p) {
                Rational cand = make_rational(p, Integer(q));
                Rational err = abs(cand - exact);
                if (best_err < 0 || err < best_err) best_err = err;
            }
        }
        EXPECT_EQ(abs(got - exact), best_err) << x << " " << max_den;
        EXPECT_LE(got.get_den(), max_den);
    }
}

TEST(Rational, SqrtBounds) {
    EXPECT_EQ(sqrt_upper(Rational(4), 100), Rational(2));
    EXPECT_EQ(sqrt_lower(Rational(4), 100), Rational(2));
    Rational up = sqrt_upper(Rational(2), 1000000);
    Rational lo = sqrt_lower(Rational(2), 1000000);
    EXPECT_GE(up * up, Rational(2));
    EXPECT_LT(lo * lo, Rational(2));
    EXPECT_LT(up - lo, frac(1, 100000000));
    EXPECT_EQ(sqrt_upper(Rational(2), 12), frac(17, 12));
    EXPECT_THROW(sqrt_upper(Rational(-1), 10), std::domain_error);
}

TEST(Matrix, ArithmeticAndSolve) {
    Matrix a{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
    Vector b{1, 2, 3};
    Vector x = solve_linear(a, b);
    EXPECT_EQ(a * x, b);
    EXPECT_EQ(a * inverse(a), Matrix::identity(3));
    EXPECT_EQ(determinant(a), Rational(18));
    EXPECT_EQ(rank(a), 3u);
    EXPECT_EQ(a.transpose(), a);
    EXPECT_EQ(a.trace(), Rational(9));
    Matrix s{{1, 2}, {2, 4}};
    EXPECT_EQ(rank(s), 1u);
    EXPECT_THROW(solve_linear(s, Vector{1, 1}), SingularMatrix);
    EXPECT_THROW(inverse(s), SingularMatrix);
}

TEST(Matrix, VectorHelpers) {
    Vector u{1, 0, 0}, v{0, 1, 0};
    EXPECT_EQ(cross(u, v), (Vector{0, 0, 1}));
    EXPECT_EQ(dot(u + v, u - v), Rational(0));
    EXPECT_EQ(squared_norm(Vector{3, 4}), Rational(25));
    EXPECT_TRUE(is_zero(Vector{0, 0}));
    EXPECT_EQ(determinant3(u, v, cross(u, v)), Rational(1));
}

TEST(Matrix, LdlReconstructs) {
    Rng rng(5);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 6));
        Matrix b(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) b(i, j) = rng.rational_in_unit(9);
        Matrix m = b * b.transpose() + Matrix::identity(n);
        auto f = ldl_decompose(m);
        for (std::size_t i = 0; i < n; ++i) {
            EXPECT_EQ(f.lower(i, i), Rational(1));
            EXPECT_GT(f.diagonal[i], 0);
            for (std::size_t j = i + 1; j < n; ++j) EXPECT_EQ(f.lower(i, j), Rational(0));
        }
        EXPECT_EQ(f.lower * Matrix::diagonal(f.diagonal) * f.lower.transpose(), m);
    }
}

TEST(Matrix, LdlRejectsIndefinite) {
    Matrix m{{1, 2}, {2, 1}};
    try {
        ldl_decompose(m);
        FAIL();
    } catch (const NotPositiveDefinite& e) {
        EXPECT_EQ(e.pivot(), 1u);
    }
    EXPECT_THROW(ldl_decompose(Matrix{{0}}), NotPositiveDefinite);
    EXPECT_THROW(ldl_decompose(Matrix{{1, 2}, {3, 4}}), std::invalid_argument);
}

TEST(MPoly, Arithmetic) {
    const std::size_t n = 2;
    MPoly x = MPoly::variable(n, 0), y = MPoly::variable(n, 1), one = MPoly::constant(n, 1);
    MPoly p = (x + y) * (x - y);
    EXPECT_EQ(p, x * x - y * y);
    EXPECT_EQ(p.degree(), 2u);
    EXPECT_EQ(p.coefficient({2, 0}), Rational(1));
    EXPECT_EQ(p.coefficient({1, 1}), Rational(0));
    EXPECT_TRUE((p - p).is_zero());
    EXPECT_EQ(to_string(one - x), "[0,0]=1//1 ; [1,0]=-1//1");
    EXPECT_EQ(to_string(MPoly(n)), "0");
    Vector pt{frac(1, 2), 3};
    EXPECT_EQ(p.evaluate(pt), frac(1, 4) - 9);
    EXPECT_THROW(x + MPoly::variable(3, 0), VariableCountMismatch);
}

TEST(MPoly, WeightedSumExpansion) {
    const std::size_t n = 3;
    MPoly x = MPoly::variable(n, 0), z = MPoly::variable(n, 2);
    std::vector<std::pair<MPoly, MPoly>> terms = {{x, x}, {frac(1, 2) * z, z + x}};
    MPoly expected = x * x + frac(1, 2) * (z * z) + frac(1, 2) * (z * x);
    EXPECT_EQ(poly_expand_weighted_sum(terms), expected);
}

TEST(MPoly, MonomialBasis) {
    auto b = monomial_basis(2, 2);
    ASSERT_EQ(b.size(), 6u);
    EXPECT_EQ(b.front(), (Monomial{0, 0}));
    EXPECT_TRUE(std::is_sorted(b.begin(), b.end()));
    EXPECT_EQ(monomial_basis(8, 3).size(), 165u);  // C(11, 3)
    EXPECT_EQ(monomial_basis(1, 1).size(), 2u);
}

TEST(Lp, SmallOptimum) {
    // max x + y s.t. x + 2y <= 4, 3x + y <= 6  ->  optimum at (8/5, 6/5).
    LinearProgram lp;
    lp.num_vars = 2;
    lp.objective = {-1, -1};
    lp.rows = {{{1, 2}, Relation::LessEqual, 4}, {{3, 1}, Relation::LessEqual, 6}};
    auto s = solve_lp(lp);
    ASSERT_EQ(s.status, LpStatus::Optimal);
    EXPECT_EQ(s.x, (Vector{frac(8, 5), frac(6, 5)}));
    EXPECT_EQ(s.objective, frac(-14, 5));
}

TEST(Lp, InfeasibleAndUnbounded) {
    LinearProgram lp;
    lp.num_vars = 1;
    lp.rows = {{{1}, Relation::GreaterEqual, 2}, {{1}, Relation::LessEqual, 1}};
    EXPECT_EQ(solve_lp(lp).status, LpStatus::Infeasible);
    LinearProgram un;
    un.num_vars = 1;
    un.objective = {-1};
    un.rows = {{{1}, Relation::GreaterEqual, 0}};
    EXPECT_EQ(solve_lp(un).status, LpStatus::Unbounded);
}

TEST(Lp, FreeVariables) {
    LinearProgram lp;
    lp.num_vars = 2;
    lp.is_free = {true, true};
    lp.objective = {1, 0};
    lp.rows = {{{1, 1}, Relation::Equal, -3}, {{0, 1}, Relation::LessEqual, 1}};
    auto s = solve_lp(lp);
    ASSERT_EQ(s.status, LpStatus::Optimal);
    EXPECT_EQ(s.x, (Vector{-4, 1}));
}

// Strong duality on random feasible bounded problems: b^T pi = c^T x, A^T pi <= c.
TEST(Lp, StandardFormDuals) {
    Rng rng(17);
    for (int t = 0; t < 40; ++t) {
        const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 4));
        const std::size_t n = m + static_cast<std::size_t>(rng.uniform(1, 4));
        std::vector<Vector> a(m, Vector(n));
        for (auto& row : a)
            for (auto& x : row) x = rng.rational_in_unit(5);
        Vector x0(n);
        for (auto& x : x0) x = Rational(rng.uniform(0, 3));
        Vector b(m);
        for (std::size_t i = 0; i < m; ++i) b[i] = dot(a[i], x0);
        Vector c(n);
        for (auto& x : c) x = Rational(rng.uniform(0, 5));  // c >= 0 keeps it bounded
        auto r = solve_standard_form<Rational>(a, b, c);
        ASSERT_EQ(r.status, LpStatus::Optimal);
        for (std::size_t i = 0; i < m; ++i) EXPECT_EQ(dot(a[i], r.x), b[i]);
        for (const auto& x : r.x) EXPECT_GE(x, 0);
        EXPECT_EQ(dot(b, r.duals), r.objective);
        for (std::size_t j = 0; j < n; ++j) {
            Rational col = 0;
            for (std::size_t i = 0; i < m; ++i) col += a[i][j] * r.duals[i];
            EXPECT_LE(col, c[j]);
        }
    }
}

TEST(Lp, DoubleWarmStartAgreesOnFeasibility) {
    std::vector<std::vector<double>> a = {{1, 1, 0}, {0, 1, 1}};
    auto r = solve_standard_form<double>(a, {1, 1});
    ASSERT_EQ(r.status, LpStatus::Optimal);
    EXPECT_NEAR(r.x[0] + r.x[1], 1.0, 1e-12);
    auto bad = solve_standard_form<double>({{1, 1}}, {-1});
    EXPECT_EQ(bad.status, LpStatus::Infeasible);
}

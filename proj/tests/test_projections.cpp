#include <gtest/gtest.h>

#include "shady/polytope.hpp"
#include "shady/projections.hpp"
#include "shady/random.hpp"

using namespace shady;

TEST(Projection, FromKernelAndImage) {
    Rng rng(2);
    for (int t = 0; t < 50; ++t) {
        Vector u = rng.nonzero_vector(3), w = rng.nonzero_vector(3);
        if (dot(u, w) == 0) continue;
        auto p = projection_from_kernel_image(u, w);
        EXPECT_EQ(p.rank, 2u);
        EXPECT_TRUE(is_projection(p.P, 2));
        EXPECT_TRUE(is_zero(p.P * u));
        Vector x = rng.vector(3);
        EXPECT_EQ(dot(w, p.P * x), Rational(0));
    }
    EXPECT_THROW(projection_from_kernel_image({1, 0, 0}, {0, 1, 0}), DegeneratePair);
}

TEST(Projection, IsProjection) {
    EXPECT_TRUE(is_projection(Matrix::identity(3), 3));
    EXPECT_FALSE(is_projection(Matrix::identity(3), 2));
    EXPECT_FALSE(is_projection(Matrix{{1, 1}, {0, 1}}, 2));
    EXPECT_FALSE(is_projection(Matrix(2, 3), 0));
}

TEST(Projection, WitnessMatrixOnI) {
    const Polytope i = make_icosahedron_I();
    const Matrix p = icosahedron_witness_projection();
    EXPECT_TRUE(is_projection(p, 2));
    const auto norm = operator_norm(i, p);
    EXPECT_EQ(norm.value, make_rational(Integer("14386149522"), Integer("14205071903")));
    // The attaining pair really attains it.
    EXPECT_EQ(dot(i.normals()[norm.normal_index], p * i.half_vertices()[norm.half_vertex_index]), norm.value);
    const auto w = make_witness(i, ProjectionMatrix{p, 2}, "I");
    EXPECT_EQ(w.bound, norm.value);
    EXPECT_EQ(w.polytope_id, "I");
}

TEST(Projection, CoordinateProjectionsOfTheCube) {
    const Polytope cube = make_cube();
    EXPECT_EQ(operator_norm(cube, Matrix::diagonal({1, 1, 0})).value, Rational(1));
    EXPECT_EQ(operator_norm(cube, Matrix::identity(3)).value, Rational(1));
    // Projection onto the plane x + y + z = 0 along (1,1,1).
    auto p = projection_from_kernel_image({1, 1, 1}, {1, 1, 1});
    EXPECT_EQ(operator_norm(cube, p.P).value, frac(4, 3));
    EXPECT_THROW(operator_norm(cube, Matrix::identity(2)), std::invalid_argument);
}

// ||x||_C via vertices agrees with the operator norm as a max over the unit ball.
TEST(Projection, OperatorNormMatchesPointwiseMaximum) {
    Rng rng(9);
    for (int t = 0; t < 10; ++t) {
        const Polytope c = random_symmetric_polytope(rng, 4);
        Matrix a(3, 3);
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t s = 0; s < 3; ++s) a(r, s) = rng.rational_in_unit(10);
        Rational best = 0;
        for (const auto& v : c.vertices()) best = std::max(best, norm_point(c, a * v));
        EXPECT_EQ(operator_norm(c, a).value, best);
    }
}

// Norms are invariant under simultaneous similarity: ||T P T^-1||_{TC} = ||P||_C.
TEST(Projection, SimilarityInvariance) {
    Rng rng(4);
    const Polytope i = make_icosahedron_I();
    const Matrix p = icosahedron_witness_projection();
    for (int t = 0; t < 5; ++t) {
        Matrix m(3, 3);
        do {
            for (std::size_t r = 0; r < 3; ++r)
                for (std::size_t s = 0; s < 3; ++s) m(r, s) = rng.rational_in_unit(6);
        } while (determinant(m) == 0);
        const Polytope ti = transform(i, m);
        EXPECT_EQ(operator_norm(ti, m * p * inverse(m)).value, operator_norm(i, p).value);
    }
    const Matrix t = john_transform();
    EXPECT_EQ(operator_norm(make_john_J(), t * p * inverse(t)).value, icosahedron_witness_norm());
}

TEST(Projection, GrunbaumBound) {
    const Rational g2 = grunbaum_upper_bound(2);
    // (2/3)(1 + sqrt(4)/2) = 4/3 exactly.
    EXPECT_EQ(g2, frac(4, 3));
    const Rational g3 = grunbaum_upper_bound(3);
    EXPECT_GE(g3, Rational(0.5 * (1 + std::sqrt(5.0))) - frac(1, 1000000));
    EXPECT_GE(g2, icosahedron_witness_norm());
    EXPECT_THROW(grunbaum_upper_bound(1), std::invalid_argument);
}

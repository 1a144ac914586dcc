#include <gtest/gtest.h>

#include <map>

#include "shady/random.hpp"
#include "shady/shady_tests.hpp"

using namespace shady;

TEST(GeneralPosition, Examples) {
    EXPECT_TRUE(general_position({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    EXPECT_FALSE(general_position({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}));
    EXPECT_TRUE(general_position(half_normals(make_icosahedron_I())));
    EXPECT_TRUE(general_position(half_normals(make_john_J())));
    EXPECT_TRUE(general_position({}));
}

TEST(CoversAllPlanes, CubeIsRefutedWithWitness) {
    const Polytope cube = make_cube();
    const auto cov = covers_all_planes(cube);
    EXPECT_FALSE(cov.covers);
    ASSERT_TRUE(cov.witness.has_value());
    EXPECT_FALSE(is_zero(*cov.witness));
    EXPECT_LE(count_pairs_met(cube, *cov.witness), 2u);
    EXPECT_EQ(count_pairs_met(cube, {0, 0, 1}), 2u);
    EXPECT_FALSE(simple_shady_test(cube));
}

// The witness for I is exact: its plane contains an edge of I and crosses only two facet pairs.
TEST(CoversAllPlanes, IcosahedronWitness) {
    const Polytope i = make_icosahedron_I();
    const auto cov = covers_all_planes(i);
    ASSERT_FALSE(cov.covers);
    ASSERT_TRUE(cov.witness.has_value());
    EXPECT_EQ(count_pairs_met(i, *cov.witness), 2u);
    EXPECT_EQ(cov.missed_pairs.size(), i.half_normal_indices().size() - 2);
    const Vector n{1, frac(106, 61), frac(26, 61)};
    EXPECT_EQ(dot(n, Vector{-1, frac(3, 5), frac(-1, 10)}), Rational(0));
    EXPECT_EQ(dot(n, Vector{frac(-3, 5), frac(1, 10), 1}), Rational(0));
    EXPECT_EQ(count_pairs_met(i, n), 2u);
    EXPECT_FALSE(simple_shady_test(i));
}

// Sampling oracle: a random plane meeting fewer than 3 pairs refutes coverage.
TEST(CoversAllPlanes, AgreesWithRandomPlaneOracle) {
    Rng rng(31);
    std::vector<Polytope> bodies = {make_octahedron(), make_cube(), make_icosahedron_I()};
    for (int t = 0; t < 5; ++t) bodies.push_back(random_symmetric_polytope_between(rng, 8, 12));
    for (const auto& c : bodies) {
        const auto cov = covers_all_planes(c);
        bool oracle_refutes = false;
        for (int s = 0; s < 2000 && !oracle_refutes; ++s)
            oracle_refutes = count_pairs_met(c, rng.nonzero_vector(3, 1000)) < 3;
        if (oracle_refutes) EXPECT_FALSE(cov.covers);
        if (!cov.covers) {
            ASSERT_TRUE(cov.witness.has_value());
            EXPECT_LT(count_pairs_met(c, *cov.witness), 3u);
        }
    }
}

TEST(DecideShady, IcosahedronAndJohnPositionAreShady) {
    const auto di = decide_shady_codim_one(make_icosahedron_I());
    EXPECT_TRUE(di.shady);
    EXPECT_FALSE(di.norm_one.has_value());
    EXPECT_GT(di.smallest_norm, 1);
    const auto dj = decide_shady_codim_one(make_john_J());
    EXPECT_TRUE(dj.shady);
    EXPECT_EQ(dj.smallest_norm, di.smallest_norm);  // norms are invariant under linear maps
}

TEST(DecideShady, FindsNormOneProjections) {
    Rng rng(12);
    std::vector<Polytope> bodies = {make_octahedron(), make_cube()};
    for (int t = 0; t < 5; ++t) bodies.push_back(random_symmetric_polytope(rng, 5));
    for (const auto& c : bodies) {
        const auto d = decide_shady_codim_one(c);
        EXPECT_FALSE(d.shady);
        ASSERT_TRUE(d.norm_one.has_value());
        EXPECT_TRUE(is_projection(d.norm_one->P, 2));
        EXPECT_EQ(operator_norm(c, d.norm_one->P).value, Rational(1));
    }
}

TEST(Triangulation, OctahedronAndCube) {
    const auto oct = triangulate_symmetric(make_octahedron());
    EXPECT_EQ(oct.vertices.size(), 6u);
    EXPECT_EQ(oct.edges.size(), 12u);
    EXPECT_EQ(oct.triangles.size(), 8u);
    const auto cube = triangulate_symmetric(make_cube());
    EXPECT_EQ(cube.edges.size(), 18u);
    EXPECT_EQ(cube.triangles.size(), 12u);
}

TEST(Triangulation, SymmetryAndCounting) {
    Rng rng(44);
    std::vector<Polytope> bodies = {make_octahedron(), make_cube(), make_icosahedron_I(), make_john_J()};
    for (int t = 0; t < 20; ++t) bodies.push_back(random_symmetric_polytope_between(rng, 6, 12));
    for (const auto& c : bodies) {
        const auto t = triangulate_symmetric(c);
        const long v = static_cast<long>(t.vertices.size()), e = static_cast<long>(t.edges.size()),
                   f = static_cast<long>(t.triangles.size());
        EXPECT_EQ(v - e + f, 2);
        EXPECT_EQ(2 * e, 3 * f);
        std::set<std::pair<std::size_t, std::size_t>> edges(t.edges.begin(), t.edges.end());
        for (auto [a, b] : t.edges) EXPECT_TRUE(edges.count(std::minmax(t.antipode[a], t.antipode[b])));
        // Each edge lies in exactly two triangles; triangles cover each facet's area.
        std::map<std::pair<std::size_t, std::size_t>, int> uses;
        for (const auto& tri : t.triangles)
            for (int k = 0; k < 3; ++k) ++uses[std::minmax(tri[k], tri[(k + 1) % 3])];
        for (const auto& [edge, count] : uses) EXPECT_EQ(count, 2);
        for (std::size_t k = 0; k < t.triangles.size(); ++k) {
            const auto& h = c.normals()[t.triangle_facet[k]];
            for (std::size_t vi : t.triangles[k]) EXPECT_EQ(dot(h, t.vertices[vi]), Rational(1));
        }
        if (v == 10) EXPECT_EQ(e, 24);
    }
}

TEST(FourCycle, OctahedronAndCube) {
    const auto oct = triangulate_symmetric(make_octahedron());
    const auto cyc = find_symmetric_4cycle(oct);
    EXPECT_NE(cyc.w, cyc.v);
    EXPECT_NE(cyc.w, -cyc.v);
    // Octahedron: every pair of non-antipodal vertices spans a 4-cycle.
    EXPECT_EQ(all_symmetric_4cycles(oct).size(), 6u * 4u);

    const auto cube = triangulate_symmetric(make_cube());
    const auto all = all_symmetric_4cycles(cube);
    ASSERT_FALSE(all.empty());
    const auto c = find_symmetric_4cycle(cube);
    EXPECT_NE(std::find(all.begin(), all.end(), std::make_pair(c.v_index, c.w_index)), all.end());
    // The found v has maximal degree.
    std::vector<std::size_t> degree(cube.vertices.size());
    for (auto [a, b] : cube.edges) ++degree[a], ++degree[b];
    EXPECT_EQ(degree[c.v_index], *std::max_element(degree.begin(), degree.end()));
}

TEST(FourCycle, TenVertexInstancesHaveHighDegreeVertex) {
    Rng rng(6);
    for (int t = 0; t < 20; ++t) {
        const auto tri = triangulate_symmetric(random_symmetric_polytope(rng, 5));
        std::vector<std::size_t> degree(tri.vertices.size());
        for (auto [a, b] : tri.edges) ++degree[a], ++degree[b];
        EXPECT_GE(*std::max_element(degree.begin(), degree.end()), 5u);
        EXPECT_NO_THROW(find_symmetric_4cycle(tri));
    }
}

TEST(FourCycle, IcosahedronHasNone) {
    EXPECT_THROW(find_symmetric_4cycle(triangulate_symmetric(make_icosahedron_I())), NoCycleFound);
}

TEST(NormOneProjection, CubeAndOctahedron) {
    for (const auto& c : {make_cube(), make_octahedron()}) {
        const auto w = norm_one_projection(c);
        EXPECT_EQ(w.bound, Rational(1));
        EXPECT_TRUE(is_projection(w.projection.P, 2));
        EXPECT_EQ(operator_norm(c, w.projection.P).value, Rational(1));
    }
}

TEST(NormOneProjection, RandomTenVertexPolytopes) {
    Rng rng(77);
    for (int t = 0; t < 30; ++t) {
        const Polytope c = random_symmetric_polytope(rng, 5);
        const auto w = norm_one_projection(c);
        EXPECT_TRUE(is_projection(w.projection.P, 2));
        EXPECT_EQ(operator_norm(c, w.projection.P).value, Rational(1));
    }
}

TEST(NormOneProjection, SmallerPolytopes) {
    Rng rng(78);
    for (int t = 0; t < 10; ++t) {
        const Polytope c = random_symmetric_polytope(rng, 4);
        EXPECT_EQ(norm_one_projection(c).bound, Rational(1));
    }
}

// No triangulation 4-cycle of I yields a norm-one projection (consistency with shadiness).
TEST(NormOneProjection, NoneForIcosahedron) {
    const Polytope i = make_icosahedron_I();
    const auto tri = triangulate_symmetric(i);
    for (std::size_t v = 0; v < tri.vertices.size(); ++v)
        for (std::size_t w = 0; w < tri.vertices.size(); ++w) {
            if (w == v || w == tri.antipode[v]) continue;
            try {
                EXPECT_GT(operator_norm(i, projection_for_cycle(i, v, w).P).value, 1);
            } catch (const DegenerateKernel&) {
            } catch (const DegeneratePair&) {
            }
        }
}

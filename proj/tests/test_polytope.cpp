#include <gtest/gtest.h>

#include <sstream>

#include "shady/polytope.hpp"
#include "shady/random.hpp"

using namespace shady;

namespace {

// h^T x <= 1 on every vertex, equality exactly on the listed facet vertices, and
// the facet is cyclically ordered counter-clockwise seen from outside.
void expect_consistent(const Polytope& c) {
    ASSERT_EQ(c.facets().size(), c.normals().size());
    EXPECT_TRUE(std::is_sorted(c.vertices().begin(), c.vertices().end()));
    EXPECT_TRUE(std::is_sorted(c.normals().begin(), c.normals().end()));
    for (std::size_t f = 0; f < c.facets().size(); ++f) {
        const auto& h = c.normals()[f];
        const auto& fv = c.facets()[f];
        ASSERT_GE(fv.size(), 3u);
        for (std::size_t v = 0; v < c.vertices().size(); ++v) {
            const Rational val = dot(h, c.vertices()[v]);
            EXPECT_LE(val, 1);
            EXPECT_EQ(val == 1, std::find(fv.begin(), fv.end(), v) != fv.end());
        }
        EXPECT_EQ(fv.front(), *std::min_element(fv.begin(), fv.end()));
        for (std::size_t k = 0; k < fv.size(); ++k) {
            const Vector& a = c.vertices()[fv[k]];
            const Vector& b = c.vertices()[fv[(k + 1) % fv.size()]];
            const Vector& d = c.vertices()[fv[(k + 2) % fv.size()]];
            EXPECT_GT(dot(cross(b - a, d - b), h), 0);
        }
    }
    for (std::size_t v = 0; v < c.vertices().size(); ++v)
        EXPECT_EQ(c.vertices()[c.antipodal_vertex(v)], -c.vertices()[v]);
    for (std::size_t f = 0; f < c.normals().size(); ++f)
        EXPECT_EQ(c.normals()[c.antipodal_normal(f)], -c.normals()[f]);
    EXPECT_EQ(c.half_vertices().size() * 2, c.vertices().size());
    for (const auto& v : c.half_vertices()) EXPECT_TRUE(Polytope::first_nonzero_positive(v));
}

}  // namespace

TEST(Polytope, Icosahedron) {
    const Polytope i = make_icosahedron_I();
    EXPECT_EQ(i.dim(), 3u);
    EXPECT_EQ(i.vertices().size(), 12u);
    EXPECT_EQ(i.normals().size(), 20u);
    for (const auto& f : i.facets()) EXPECT_EQ(f.size(), 3u);
    expect_consistent(i);
    EXPECT_EQ(i.half_vertices().size() * i.normals().size(), 120u);
}

TEST(Polytope, EnclosingConstantsOfI) {
    const auto k = enclosing_constants(make_icosahedron_I());
    EXPECT_EQ(k.R_sq, frac(137, 100));
    EXPECT_EQ(k.r_sq, frac(27, 100));
    EXPECT_EQ(k.C_sq, frac(137, 27));
    EXPECT_GE(k.C_upper * k.C_upper, k.C_sq);
    EXPECT_LT(k.C_upper * k.C_upper - k.C_sq, frac(1, 100000));
}

TEST(Polytope, JohnPosition) {
    const Polytope j = make_john_J();
    EXPECT_EQ(j.vertices().size(), 12u);
    EXPECT_EQ(j.normals().size(), 20u);
    expect_consistent(j);
    const auto k = enclosing_constants(j);
    EXPECT_EQ(k.R_sq, frac(10143, 5000));
    EXPECT_LE(k.C_sq, frac(961, 400));
    EXPECT_LE(k.C_upper, frac(31, 20));
}

TEST(Polytope, CubeAndOctahedron) {
    const Polytope cube = make_cube();
    EXPECT_EQ(cube.vertices().size(), 8u);
    EXPECT_EQ(cube.normals().size(), 6u);
    for (const auto& f : cube.facets()) EXPECT_EQ(f.size(), 4u);
    expect_consistent(cube);
    const auto kc = enclosing_constants(cube);
    EXPECT_EQ(kc.R_sq, Rational(3));
    EXPECT_EQ(kc.C_sq, Rational(3));

    const Polytope oct = make_octahedron();
    EXPECT_EQ(oct.vertices().size(), 6u);
    EXPECT_EQ(oct.normals().size(), 8u);
    expect_consistent(oct);
    EXPECT_EQ(enclosing_constants(oct).C_sq, Rational(3));
}

TEST(Polytope, InteriorPointsAreDropped) {
    auto pts = antipodal_closure({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {frac(1, 10), frac(1, 10), frac(1, 10)},
                                  {frac(1, 2), frac(1, 2), 0}});
    const Polytope c = facets_from_vertices(pts);
    EXPECT_EQ(c.vertices().size(), 6u);
    EXPECT_EQ(c.normals().size(), 8u);
}

TEST(Polytope, DegenerateInputs) {
    EXPECT_THROW(facets_from_vertices({}), DegenerateInput);
    EXPECT_THROW(facets_from_vertices({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), DegenerateInput);  // not symmetric
    EXPECT_THROW(facets_from_vertices(antipodal_closure({{1, 0, 0}, {0, 1, 0}})), DegenerateInput);  // flat
    EXPECT_THROW(facets_from_vertices(antipodal_closure({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 0}})),
                 DegenerateInput);
    EXPECT_THROW(facets_from_vertices({{1, 0}, {-1, 0}}), DegenerateInput);
}

TEST(Polytope, NormOfPoints) {
    const Polytope cube = make_cube();
    EXPECT_EQ(norm_point(cube, {frac(1, 2), -3, 2}), Rational(3));
    const Polytope i = make_icosahedron_I();
    for (const auto& v : i.vertices()) EXPECT_EQ(norm_point(i, v), Rational(1));
    EXPECT_EQ(norm_point(i, {0, 0, 0}), Rational(0));
}

TEST(Polytope, TransformMatchesRecomputedHull) {
    Rng rng(21);
    for (int t = 0; t < 10; ++t) {
        const Polytope c = random_symmetric_polytope(rng, 4);
        Matrix m(3, 3);
        do {
            for (std::size_t a = 0; a < 3; ++a)
                for (std::size_t b = 0; b < 3; ++b) m(a, b) = rng.rational_in_unit(8);
        } while (determinant(m) == 0);
        const Polytope direct = transform(c, m);
        std::vector<Vector> images;
        for (const auto& v : c.vertices()) images.push_back(m * v);
        const Polytope hull = facets_from_vertices(images);
        EXPECT_EQ(direct.vertices(), hull.vertices());
        EXPECT_EQ(direct.normals(), hull.normals());
        EXPECT_EQ(direct.facets(), hull.facets());
    }
}

TEST(Polytope, RandomPolytopesAreConsistent) {
    Rng rng(8);
    for (int t = 0; t < 20; ++t) {
        const Polytope c = random_symmetric_polytope_between(rng, 8, 12);
        EXPECT_GE(c.vertices().size(), 8u);
        EXPECT_LE(c.vertices().size(), 12u);
        expect_consistent(c);
        // Euler's formula for the boundary complex.
        std::size_t edges2 = 0;
        for (const auto& f : c.facets()) edges2 += f.size();
        EXPECT_EQ(static_cast<long>(c.vertices().size()) - static_cast<long>(edges2 / 2) +
                      static_cast<long>(c.facets().size()),
                  2);
    }
}

TEST(Polytope, ReadAndWrite) {
    std::istringstream in("# half of the octahedron\n1;0;0\n0;1//1;0\n\n0;0;2/2\n");
    auto rows = read_rational_rows(in);
    ASSERT_EQ(rows.size(), 3u);
    const Polytope c = facets_from_vertices(antipodal_closure(rows));
    EXPECT_EQ(c.vertices(), make_octahedron().vertices());
    std::ostringstream v;
    write_vertices(v, c);
    std::istringstream back(v.str());
    EXPECT_EQ(read_rational_rows(back), c.vertices());
    std::ostringstream obj;
    write_obj(obj, c);
    EXPECT_NE(obj.str().find("\nf 1 "), std::string::npos);

    std::istringstream bad("1;0;0\n1;x;0\n");
    try {
        read_rational_rows(bad);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    std::istringstream ragged("1;0;0\n1;0\n");
    EXPECT_THROW(read_rational_rows(ragged), ParseError);
}

TEST(Polytope, Builtins) {
    EXPECT_EQ(builtin_polytope("I").vertices(), make_icosahedron_I().vertices());
    EXPECT_EQ(builtin_polytope("J").vertices(), make_john_J().vertices());
    EXPECT_EQ(builtin_polytope("cube").vertices().size(), 8u);
    EXPECT_THROW(builtin_polytope("dodecahedron"), std::invalid_argument);
}

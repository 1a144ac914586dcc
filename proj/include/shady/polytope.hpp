#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "shady/errors.hpp"
#include "shady/matrix.hpp"
#include "shady/rational.hpp"

namespace shady {

/// Centrally symmetric convex polytope, stored in canonical form: vertices and
/// normals sorted lexicographically, each facet listed as vertex indices in
/// counter-clockwise order seen from outside, starting at its lex-smallest vertex.
/// Every normal h satisfies h^T x <= 1 on the body with equality on its facet.
class Polytope {
public:
    Polytope() = default;

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<Vector>& vertices() const noexcept { return vertices_; }
    const std::vector<Vector>& normals() const noexcept { return normals_; }
    /// facets()[i] is the facet whose supporting plane is normals()[i]^T x = 1.
    const std::vector<std::vector<std::size_t>>& facets() const noexcept { return facets_; }
    /// One vertex per antipodal pair (first nonzero coordinate positive), sorted.
    const std::vector<Vector>& half_vertices() const noexcept { return half_vertices_; }
    std::size_t antipodal_vertex(std::size_t i) const { return vertex_antipode_.at(i); }
    std::size_t antipodal_normal(std::size_t i) const { return normal_antipode_.at(i); }

    /// Indices of normals whose first nonzero coordinate is positive: one per facet pair.
    std::vector<std::size_t> half_normal_indices() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < normals_.size(); ++i)
            if (first_nonzero_positive(normals_[i])) out.push_back(i);
        return out;
    }

    std::size_t vertex_index(const Vector& v) const {
        auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
        if (it == vertices_.end() || *it != v) throw std::out_of_range("not a vertex");
        return static_cast<std::size_t>(it - vertices_.begin());
    }

    static bool first_nonzero_positive(const Vector& v) {
        for (const auto& x : v)
            if (x != 0) return x > 0;
        return false;
    }

    /// Builds the canonical form from raw parts (facet vertex sets in any order).
    static Polytope canonical(std::vector<Vector> vertices, std::vector<Vector> normals,
                              std::vector<std::vector<std::size_t>> facet_sets);

private:
    std::size_t dim_ = 0;
    std::vector<Vector> vertices_;
    std::vector<Vector> normals_;
    std::vector<std::vector<std::size_t>> facets_;
    std::vector<Vector> half_vertices_;
    std::vector<std::size_t> vertex_antipode_;
    std::vector<std::size_t> normal_antipode_;
};

namespace detail {

inline std::vector<std::size_t> sort_permutation(const std::vector<Vector>& items) {
    std::vector<std::size_t> order(items.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return items[a] < items[b]; });
    return order;
}

inline std::size_t find_sorted(const std::vector<Vector>& sorted, const Vector& v) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    if (it == sorted.end() || *it != v) throw DegenerateInput("polytope is not centrally symmetric");
    return static_cast<std::size_t>(it - sorted.begin());
}

}  // namespace detail

inline Polytope Polytope::canonical(std::vector<Vector> vertices, std::vector<Vector> normals,
                                    std::vector<std::vector<std::size_t>> facet_sets) {
    if (normals.size() != facet_sets.size()) throw std::invalid_argument("one facet per normal expected");
    Polytope p;
    p.dim_ = vertices.empty() ? 0 : vertices.front().size();

    auto vorder = detail::sort_permutation(vertices);
    std::vector<std::size_t> vnew(vertices.size());
    for (std::size_t k = 0; k < vorder.size(); ++k) {
        vnew[vorder[k]] = k;
        p.vertices_.push_back(std::move(vertices[vorder[k]]));
    }
    auto norder = detail::sort_permutation(normals);
    for (std::size_t k = 0; k < norder.size(); ++k) {
        const std::size_t old = norder[k];
        p.normals_.push_back(std::move(normals[old]));
        std::vector<std::size_t> f;
        for (std::size_t v : facet_sets[old]) f.push_back(vnew[v]);
        p.facets_.push_back(std::move(f));
    }

    for (std::size_t i = 0; i < p.vertices_.size(); ++i)
        p.vertex_antipode_.push_back(detail::find_sorted(p.vertices_, -p.vertices_[i]));
    for (std::size_t i = 0; i < p.normals_.size(); ++i)
        p.normal_antipode_.push_back(detail::find_sorted(p.normals_, -p.normals_[i]));
    for (const auto& v : p.vertices_)
        if (first_nonzero_positive(v)) p.half_vertices_.push_back(v);

    if (p.dim_ == 3) {
        // Cyclic order around the facet, starting at the lex-smallest vertex.
        for (std::size_t fi = 0; fi < p.facets_.size(); ++fi) {
            auto& f = p.facets_[fi];
            std::sort(f.begin(), f.end());
            const Vector& h = p.normals_[fi];
            const Vector& p0 = p.vertices_[f.front()];
            std::sort(f.begin() + 1, f.end(), [&](std::size_t a, std::size_t b) {
                return dot(cross(p.vertices_[a] - p0, p.vertices_[b] - p0), h) > 0;
            });
        }
    } else {
        for (auto& f : p.facets_) std::sort(f.begin(), f.end());
    }
    return p;
}

/// Exact V->H conversion for a centrally symmetric point set in R^3. Points that
/// are not extreme are dropped; coplanar vertices share one facet.
inline Polytope facets_from_vertices(std::vector<Vector> points) {
    if (points.empty()) throw DegenerateInput("no points");
    const std::size_t d = points.front().size();
    if (d != 3) throw DegenerateInput("facet enumeration is implemented for d = 3");
    for (const auto& p : points)
        if (p.size() != d) throw DegenerateInput("points of mixed dimension");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    for (const auto& p : points) {
        if (is_zero(p)) throw DegenerateInput("origin listed as a vertex");
        if (!std::binary_search(points.begin(), points.end(), -p))
            throw DegenerateInput("point set is not centrally symmetric");
    }
    if (rank(Matrix::from_rows(points)) < d) throw DegenerateInput("points do not span R^3");

    const std::size_t n = points.size();
    std::set<Vector> normal_set;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                Vector normal = cross(points[j] - points[i], points[k] - points[i]);
                if (is_zero(normal)) continue;
                Rational offset = dot(normal, points[i]);
                if (offset == 0) continue;  // planes through the origin cut the interior
                Vector h = (1 / offset) * normal;
                if (normal_set.count(h)) continue;
                bool supporting = std::all_of(points.begin(), points.end(),
                                              [&](const Vector& p) { return dot(h, p) <= 1; });
                if (supporting) normal_set.insert(std::move(h));
            }

    std::vector<Vector> normals(normal_set.begin(), normal_set.end());
    // A point is a vertex iff the normals tight at it have full rank.
    std::vector<Vector> vertices;
    for (const auto& p : points) {
        std::vector<Vector> tight;
        for (const auto& h : normals)
            if (dot(h, p) == 1) tight.push_back(h);
        if (tight.size() >= d && rank(Matrix::from_rows(tight)) == d) vertices.push_back(p);
    }
    std::vector<std::vector<std::size_t>> facet_sets;
    for (const auto& h : normals) {
        std::vector<std::size_t> f;
        for (std::size_t v = 0; v < vertices.size(); ++v)
            if (dot(h, vertices[v]) == 1) f.push_back(v);
        facet_sets.push_back(std::move(f));
    }
    return Polytope::canonical(std::move(vertices), std::move(normals), std::move(facet_sets));
}

/// ||x||_C as the maximum of h^T x over the normals.
inline Rational norm_point(const Polytope& c, const Vector& x) {
    Rational best = 0;
    for (const auto& h : c.normals()) {
        Rational v = dot(h, x);
        if (v > best) best = v;
    }
    return best;
}

struct EnclosingConstants {
    Rational r_sq;     ///< squared radius of the largest inscribed ball
    Rational R_sq;     ///< squared radius of the smallest enclosing ball
    Rational C_sq;     ///< R_sq / r_sq
    Rational C_upper;  ///< rational with C_upper^2 >= C_sq
};

inline EnclosingConstants enclosing_constants(const Polytope& c, const Integer& max_den = 1000000) {
    EnclosingConstants k;
    Rational max_h_sq = 0;
    for (const auto& h : c.normals()) max_h_sq = std::max(max_h_sq, squared_norm(h));
    k.r_sq = 1 / max_h_sq;
    k.R_sq = 0;
    for (const auto& v : c.vertices()) k.R_sq = std::max(k.R_sq, squared_norm(v));
    k.C_sq = k.R_sq / k.r_sq;
    k.C_upper = sqrt_upper(k.C_sq, max_den);
    return k;
}

/// Image T C. Normals map as T^{-T} h, so the facet structure carries over.
inline Polytope transform(const Polytope& c, const Matrix& t) {
    Matrix inv_t = inverse(t);  // throws SingularMatrix
    Matrix inv_tt = inv_t.transpose();
    std::vector<Vector> vertices;
    for (const auto& v : c.vertices()) vertices.push_back(t * v);
    std::vector<Vector> normals;
    for (const auto& h : c.normals()) normals.push_back(inv_tt * h);
    return Polytope::canonical(std::move(vertices), std::move(normals), c.facets());
}

inline std::vector<Vector> antipodal_closure(std::vector<Vector> points) {
    const std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i) points.push_back(-points[i]);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return points;
}

/// The 12-vertex body with a = -3/5, b = -1/5, c = 1/10.
inline Polytope make_icosahedron_I() {
    const Rational a = frac(-3, 5), b = frac(-1, 5), c = frac(1, 10), one = 1;
    std::vector<Vector> half = {{one, a, c}, {one, b, c}, {c, one, a}, {c, one, b}, {a, c, one}, {b, c, one}};
    return facets_from_vertices(antipodal_closure(std::move(half)));
}

/// The linear map bringing I approximately into John position.
inline Matrix john_transform() {
    return Matrix{{frac(11, 10), frac(11, 10), frac(11, 10)},
                  {frac(7, 10), frac(1, 5), frac(-9, 10)},
                  {frac(3, 5), frac(-9, 10), frac(3, 10)}};
}

inline Polytope make_john_J() { return transform(make_icosahedron_I(), john_transform()); }

inline Polytope make_cube() {
    std::vector<Vector> pts;
    for (int x : {-1, 1})
        for (int y : {-1, 1})
            for (int z : {-1, 1}) pts.push_back({Rational(x), Rational(y), Rational(z)});
    return facets_from_vertices(std::move(pts));
}

inline Polytope make_octahedron() {
    std::vector<Vector> pts;
    for (std::size_t i = 0; i < 3; ++i)
        for (int s : {-1, 1}) {
            Vector v(3, Rational(0));
            v[i] = s;
            pts.push_back(std::move(v));
        }
    return facets_from_vertices(std::move(pts));
}

inline Polytope builtin_polytope(std::string_view name) {
    if (name == "I") return make_icosahedron_I();
    if (name == "J") return make_john_J();
    if (name == "cube") return make_cube();
    if (name == "octahedron") return make_octahedron();
    throw std::invalid_argument("unknown builtin polytope '" + std::string(name) + "'");
}

/// Parses `;`-separated rationals, one row per non-empty line; `#` starts a comment.
inline std::vector<Vector> read_rational_rows(std::istream& in) {
    std::vector<Vector> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        if (detail::trim(line).empty()) continue;
        Vector row;
        std::stringstream ss(line);
        std::string field;
        try {
            while (std::getline(ss, field, ';')) row.push_back(parse_rational(field));
        } catch (const ParseError& e) {
            throw ParseError(e.what(), lineno);
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError("inconsistent row length", lineno);
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::vector<Vector> read_rational_rows(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_rational_rows(in);
}

/// Polytope file: vertex rows; the antipodal closure is taken so half lists work too.
inline Polytope read_polytope(const std::filesystem::path& path) {
    return facets_from_vertices(antipodal_closure(read_rational_rows(path)));
}

inline void write_vertices(std::ostream& out, const Polytope& c) {
    for (const auto& v : c.vertices()) out << to_string(v) << '\n';
}

/// Wavefront OBJ mesh (decimal coordinates, for viewing only).
inline void write_obj(std::ostream& out, const Polytope& c) {
    out << "# " << c.vertices().size() << " vertices, " << c.facets().size() << " facets\n";
    for (const auto& v : c.vertices()) {
        out << 'v';
        for (const auto& x : v) out << ' ' << x.get_d();
        out << '\n';
    }
    for (const auto& f : c.facets()) {
        out << 'f';
        for (std::size_t i : f) out << ' ' << (i + 1);
        out << '\n';
    }
}

}  // namespace shady

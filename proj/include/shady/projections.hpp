#pragma once

#include <cstddef>
#include <string>

#include "shady/errors.hpp"
#include "shady/matrix.hpp"
#include "shady/polytope.hpp"

namespace shady {

struct ProjectionMatrix {
    Matrix P;
    std::size_t rank = 0;
};

/// The projection with kernel span{u} and image w^perp: P x = x - (w^T x / w^T u) u.
inline ProjectionMatrix projection_from_kernel_image(const Vector& u, const Vector& w) {
    if (u.size() != w.size()) throw std::invalid_argument("u and w differ in dimension");
    Rational wu = dot(w, u);
    if (wu == 0) throw DegeneratePair();
    const std::size_t d = u.size();
    Matrix p = Matrix::identity(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) p(i, j) -= u[i] * w[j] / wu;
    return {std::move(p), d - 1};
}

inline bool is_projection(const Matrix& p, std::size_t k) {
    if (!p.is_square()) return false;
    return p.trace() == Rational(static_cast<unsigned long>(k)) && p * p == p;
}

struct OperatorNorm {
    Rational value;
    std::size_t normal_index = 0;       ///< into normals()
    std::size_t half_vertex_index = 0;  ///< into half_vertices()
};

/// ||A||_C = max over h in H, v in V' of h^T A v.
inline OperatorNorm operator_norm(const Polytope& c, const Matrix& a) {
    if (a.rows() != c.dim() || a.cols() != c.dim()) throw std::invalid_argument("operator dimension mismatch");
    OperatorNorm best;
    bool first = true;
    for (std::size_t vi = 0; vi < c.half_vertices().size(); ++vi) {
        Vector av = a * c.half_vertices()[vi];
        for (std::size_t hi = 0; hi < c.normals().size(); ++hi) {
            Rational val = dot(c.normals()[hi], av);
            if (first || val > best.value) {
                best = {val, hi, vi};
                first = false;
            }
        }
    }
    return best;
}

/// Outward rational bound on (2/(k+1)) (1 + ((k-1)/2) sqrt(k+2)), good to ~1e-6.
inline Rational grunbaum_upper_bound(unsigned k) {
    if (k < 2) throw std::invalid_argument("grunbaum_upper_bound needs k >= 2");
    Rational root = sqrt_upper(Rational(k + 2), 1000000);
    Rational kk(k);
    return Rational(2) / (kk + 1) * (1 + (kk - 1) / 2 * root);
}

struct ShadinessWitness {
    ProjectionMatrix projection;
    Rational bound;  ///< ||P||_C, an upper bound on s_k(C)
    std::string polytope_id;
    Vector h;  ///< attaining normal
    Vector v;  ///< attaining half vertex
};

inline ShadinessWitness make_witness(const Polytope& c, ProjectionMatrix p, std::string id) {
    OperatorNorm norm = operator_norm(c, p.P);
    ShadinessWitness w;
    w.bound = norm.value;
    w.h = c.normals()[norm.normal_index];
    w.v = c.half_vertices()[norm.half_vertex_index];
    w.projection = std::move(p);
    w.polytope_id = std::move(id);
    return w;
}

/// Rank-2 rational projection near the optimum for I.
inline Matrix icosahedron_witness_projection() {
    return Matrix{{frac(82602121, 79729122), frac(54836807, 79729122), frac(-722323, 13288187)},
                  {frac(-4217717, 79729122), frac(-774259, 79729122), frac(1060409, 13288187)},
                  {frac(695635, 39864561), frac(13277555, 39864561), frac(12938397, 13288187)}};
}

inline const Rational& icosahedron_witness_norm() {
    static const Rational value = make_rational(Integer("14386149522"), Integer("14205071903"));
    return value;
}

}  // namespace shady

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "shady/errors.hpp"
#include "shady/matrix.hpp"
#include "shady/polytope.hpp"
#include "shady/rational.hpp"

namespace shady {

/// Reproducible across platforms: only raw mt19937_64 output is used, never the
/// implementation-defined std distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    /// Uniform-ish integer in [lo, hi].
    long uniform(long lo, long hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(engine_() % span);
    }

    /// p/q with q in 1..max_den and p in [-q, q].
    Rational rational_in_unit(long max_den = 64) {
        long q = uniform(1, max_den);
        return frac(uniform(-q, q), q);
    }

    Vector vector(std::size_t d, long max_den = 64) {
        Vector v(d);
        for (auto& x : v) x = rational_in_unit(max_den);
        return v;
    }

    Vector nonzero_vector(std::size_t d, long max_den = 64) {
        for (;;) {
            Vector v = vector(d, max_den);
            if (!is_zero(v)) return v;
        }
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// Hull of `points` random points and their antipodes, redrawn until every point
/// is a vertex.
inline Polytope random_symmetric_polytope(Rng& rng, std::size_t points = 5, long max_den = 64) {
    for (;;) {
        std::vector<Vector> pts;
        for (std::size_t i = 0; i < points; ++i) pts.push_back(rng.vector(3, max_den));
        try {
            Polytope c = facets_from_vertices(antipodal_closure(pts));
            if (c.vertices().size() == 2 * points) return c;
        } catch (const DegenerateInput&) {
        }
    }
}

/// Random centrally symmetric polytope with a vertex count in [min_vertices, max_vertices].
inline Polytope random_symmetric_polytope_between(Rng& rng, std::size_t min_vertices, std::size_t max_vertices,
                                                  long max_den = 64) {
    for (;;) {
        std::size_t points = static_cast<std::size_t>(rng.uniform(static_cast<long>((min_vertices + 1) / 2),
                                                                   static_cast<long>(max_vertices / 2)));
        std::vector<Vector> pts;
        for (std::size_t i = 0; i < points; ++i) pts.push_back(rng.vector(3, max_den));
        try {
            Polytope c = facets_from_vertices(antipodal_closure(pts));
            std::size_t nv = c.vertices().size();
            if (nv >= min_vertices && nv <= max_vertices) return c;
        } catch (const DegenerateInput&) {
        }
    }
}

}  // namespace shady

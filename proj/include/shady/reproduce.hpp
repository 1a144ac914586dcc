#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "shady/farkas.hpp"
#include "shady/polytope.hpp"
#include "shady/projections.hpp"
#include "shady/random.hpp"
#include "shady/shady_tests.hpp"
#include "shady/sos.hpp"

namespace shady {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

struct ReproduceOptions {
    unsigned jobs = 4;
    std::uint64_t seed = 0;
    std::filesystem::path work_dir = std::filesystem::temp_directory_path() / "shady-reproduce";
};

namespace repro {

inline std::string yes(bool b) { return b ? "yes" : "no"; }

inline CriterionResult timed(int id, std::string title, double limit_seconds,
                             const std::function<bool(std::ostringstream&)>& body) {
    CriterionResult r;
    r.id = id;
    r.title = std::move(title);
    std::ostringstream detail;
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail << "exception: " << e.what();
        ok = false;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.seconds > limit_seconds) {
        detail << " ; runtime " << r.seconds << " s exceeds " << limit_seconds << " s";
        ok = false;
    }
    r.passed = ok;
    r.detail = detail.str();
    return r;
}

inline CriterionResult projection_norm() {
    return timed(1, "exact norm of the rank-2 projection for I", 1.0, [](std::ostringstream& out) {
        const Polytope i = make_icosahedron_I();
        const Matrix p = icosahedron_witness_projection();
        const Rational norm = operator_norm(i, p).value;
        const bool proj = is_projection(p, 2);
        out << "norm = " << to_string(norm) << ", projection of rank 2: " << yes(proj);
        return proj && norm == icosahedron_witness_norm();
    });
}

inline CriterionResult enclosing() {
    return timed(2, "enclosing constants of I and J", 1.0, [](std::ostringstream& out) {
        const auto ci = enclosing_constants(make_icosahedron_I());
        const auto cj = enclosing_constants(make_john_J());
        out << "R_sq(I) = " << to_string(ci.R_sq) << ", C_sq(I) = " << to_string(ci.C_sq)
            << ", C_sq(J) = " << to_string(cj.C_sq) << " (<= 961/400: " << yes(cj.C_sq <= frac(961, 400)) << ")";
        return ci.R_sq == frac(137, 100) && cj.C_sq <= frac(961, 400);
    });
}

inline CriterionResult global_bound() {
    return timed(3, "global lower bound from the grid campaign", 1e-3, [](std::ostringstream& out) {
        const Rational b = global_lower_bound(frac(84, 83), 1400, frac(31, 20));
        out << "bound = " << to_string(b) << " ~ " << b.get_d();
        return b >= frac(101, 100);
    });
}

inline CriterionResult campaign(const ReproduceOptions& opt) {
    return timed(4, "Farkas campaign for J, n = 25, alpha* = 84/83", 600.0, [&](std::ostringstream& out) {
        const Polytope j = make_john_J();
        const unsigned n = 25;
        const Rational alpha = frac(84, 83);
        const auto dir = opt.work_dir / "campaign";
        std::filesystem::remove_all(dir);
        CampaignOptions co;
        co.jobs = opt.jobs;
        co.tag = "farkas-certificates-J";
        const auto summary = run_campaign(j, n, alpha, dir, co);
        // Every raw grid point must be one of the certified directions.
        const auto grid = build_grid(n);
        std::set<Vector> unique(grid.points.begin(), grid.points.end());
        std::size_t raw_covered = 0;
        for (unsigned f = 0; f < 3; ++f)
            for (long k = -25; k <= 25; ++k)
                for (long l = -25; l <= 25; ++l) raw_covered += unique.count(raw_grid_point(n, f, k, l));
        std::size_t reverified = 0, lines = 0;
        std::set<Vector> seen;
        for (const auto& file : summary.files) {
            for (const auto& cert : read_certificates(file, alpha)) {
                ++lines;
                seen.insert(cert.w);
                if (verify_certificate(j, cert)) ++reverified;
            }
        }
        out << "unique directions " << summary.grid_points << " covering " << raw_covered << "/" << summary.raw_points
            << " raw points; certified " << summary.certified << ", re-verified " << reverified << "/" << lines
            << "; min lambda " << (summary.min_lambda ? to_string(*summary.min_lambda) : "-") << " ~ "
            << (summary.min_lambda ? summary.min_lambda->get_d() : 0.0);
        return summary.raw_points == 7803 && raw_covered == 7803 && summary.certified == summary.grid_points &&
               lines == summary.grid_points && reverified == lines && seen == unique;
    });
}

inline CriterionResult duality(const ReproduceOptions& opt) {
    return timed(5, "Farkas duality on random polytopes", 300.0, [&](std::ostringstream& out) {
        Rng rng(opt.seed * 7919 + 5);
        std::size_t cases = 0, agree = 0, certs = 0, ties = 0, exact_agree = 0;
        for (int t = 0; t < 50; ++t) {
            const Polytope c = random_symmetric_polytope_between(rng, 8, 12);
            for (int k = 0; k < 4; ++k) {
                const Vector w = rng.nonzero_vector(3);
                const Rational lambda = relative_projection_lp(c, w).lambda;
                for (const Rational& alpha : {Rational(1), frac(101, 100)}) {
                    ++cases;
                    if (lambda == alpha) ++ties;
                    auto attempt = [&](const GenerateOptions& go) {
                        try {
                            auto cert = generate_certificate(c, w, alpha, go);
                            return static_cast<bool>(verify_certificate(c, cert));
                        } catch (const BoundFails& e) {
                            if (e.lambda() != lambda) throw std::logic_error("BoundFails reports a different lambda");
                            return false;
                        }
                    };
                    const bool ok = attempt({});
                    const bool ok_exact = attempt({false, true});
                    certs += ok;
                    agree += ok == (lambda >= alpha);
                    exact_agree += ok_exact == ok;
                }
            }
        }
        out << cases << " cases, " << certs << " certified, agreement with lambda >= alpha*: " << agree << "/" << cases
              << ", exact ties " << ties << ", warm-start/exact-only agreement " << exact_agree << "/" << cases;
        return agree == cases && exact_agree == cases;
    });
}

inline const char* reference_sample_line() {
    return "1//1;-39//40;-164//175;40;57;115;43084159464618720881//5777554117512961187;"
           "14135303314411071435//5777554117512961187;3689530486357540849//5777554117512961187";
}

inline CriterionResult file_format(const ReproduceOptions& opt) {
    return timed(6, "certificate file format", 60.0, [&](std::ostringstream& out) {
        const std::string line = reference_sample_line();
        const auto cert = parse_certificate_line(line, 1, 3, frac(84, 83));
        const Integer den("5777554117512961187");
        const bool parsed = cert.w == Vector{1, frac(-39, 40), frac(-164, 175)} &&
                            cert.support == std::vector<std::size_t>{40, 57, 115} &&
                            cert.y_values[0] == make_rational(Integer("43084159464618720881"), den) &&
                            cert.y_values[1] == make_rational(Integer("14135303314411071435"), den) &&
                            cert.y_values[2] == make_rational(Integer("3689530486357540849"), den);
        // Round trip of self-generated canonical files, plain and gzip.
        const Polytope j = make_john_J();
        std::vector<FarkasCertificate> certs;
        const auto grid = build_grid(2);
        for (const auto& w : grid.points) certs.push_back(generate_certificate(j, w, frac(84, 83)));
        certs.push_back(cert);
        std::filesystem::create_directories(opt.work_dir);
        std::string canonical;
        for (const auto& c : certs) canonical += format_certificate(c);
        auto raw_bytes = [](const std::filesystem::path& f) {
            std::ifstream in(f, std::ios::binary);
            std::ostringstream ss;
            ss << in.rdbuf();
            return ss.str();
        };
        bool round_trip = true;
        for (const char* name : {"format.csv", "format.csv.gz"}) {
            const auto a = opt.work_dir / name;
            const auto b = opt.work_dir / (std::string("again-") + name);
            write_certificates(certs, a);
            write_certificates(read_certificates(a, frac(84, 83)), b);
            round_trip = round_trip && detail::read_file_bytes(a) == canonical && raw_bytes(a) == raw_bytes(b);
        }
        const bool line_exact = format_certificate(cert) == line + "\n";
        out << "sample parses: " << yes(parsed) << ", sample re-serialises byte-identically: " << yes(line_exact)
            << ", write(read(f)) == f on " << certs.size() << "-line files (csv, csv.gz): " << yes(round_trip);
        return parsed && line_exact && round_trip;
    });
}

inline Rational reference_delta() {
    return make_rational(Integer("2894536936604222153"), Integer("164025000000000"));
}

inline CriterionResult delta() {
    return timed(7, "Delta for omega_sq = 1397537/270000, r = 3, n = 8", 1.0, [](std::ostringstream& out) {
        const Rational omega_sq = frac(1397537, 270000);
        const Rational d = delta_bound(omega_sq, 3, 8).delta;
        const Rational expected = reference_delta();
        out << "computed " << to_string(d) << ", expected " << to_string(expected) << ", difference "
            << to_string(d - expected);
        if (d != expected && d - expected == 1)
            out << " (the expected value is the sum over non-constant monomials only; the constant monomial contributes 1)";
        return d == expected;
    });
}

inline Monomial random_multi_index(Rng& rng, std::size_t n, std::uint32_t max_weight) {
    Monomial a(n, 0);
    const long w = rng.uniform(0, max_weight);
    for (long k = 0; k < w; ++k) ++a[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1))];
    return a;
}

inline MPoly random_poly(Rng& rng, std::size_t n, std::uint32_t max_weight, int terms) {
    MPoly p(n);
    for (int t = 0; t < terms; ++t) p.add_term(random_multi_index(rng, n, max_weight), rng.rational_in_unit(16));
    return p;
}

/// Univariate system x - 2 >= 0, 9/4 - x^2 >= 0 (empty) with a hand-built floating Gram matrix.
struct ToySos {
    ConstraintSystem sys;
    std::vector<WeightedSos> q;
    std::vector<MPoly> p;
    GramData floating;
};

inline ToySos toy_sos_instance() {
    ToySos t;
    t.sys.n = 1;
    t.sys.omega_sq = frac(9, 4);
    t.sys.alpha_star = 0;
    const MPoly x = MPoly::variable(1, 0);
    t.sys.G = {x - MPoly::constant(1, 2), box_polynomial(1, 0, frac(9, 4))};
    t.sys.box_begin = 1;
    // -1 - 3 (x - 2) - 1.1 (9/4 - x^2) = 2.525 - 3 x + 1.1 x^2, positive definite Gram below.
    t.q = {{{round_to_rational(3.0, 1000), MPoly::constant(1, 1)}}, {{round_to_rational(1.1, 1000), MPoly::constant(1, 1)}}};
    t.floating.basis = monomial_basis(1, 1);
    t.floating.Q = round_to_rational(std::vector<std::vector<double>>{{2.525, -1.5}, {-1.5, 1.1}}, 1000);
    return t;
}

inline WeightedSosCertificate toy_sos_certificate() {
    const ToySos t = toy_sos_instance();
    const GramData q = gram_project(t.floating, gram_target(t.sys, t.q, t.p));
    return finalize_certificate(t.sys, q, t.q, t.p);
}

/// Every single-coefficient perturbation of the certificate must break verification.
inline std::pair<std::size_t, std::size_t> tamper_all(const ConstraintSystem& sys, const WeightedSosCertificate& cert) {
    const Rational eps = make_rational(Integer(1), Integer(1000000000));
    std::size_t tried = 0, rejected = 0;
    auto check = [&](const WeightedSosCertificate& c) {
        ++tried;
        rejected += !verify_sos_certificate(sys, c);
    };
    auto tamper_block = [&](auto get_block) {
        WeightedSosCertificate base = cert;
        auto& block = get_block(base);
        for (std::size_t t = 0; t < block.size(); ++t) {
            {
                WeightedSosCertificate c = cert;
                get_block(c)[t].gamma += eps;
                check(c);
            }
            for (const auto& [m, coef] : block[t].s.terms()) {
                WeightedSosCertificate c = cert;
                get_block(c)[t].s.add_term(m, eps);
                check(c);
            }
        }
    };
    tamper_block([](WeightedSosCertificate& c) -> WeightedSos& { return c.q0; });
    for (std::size_t j = 0; j < cert.q.size(); ++j)
        tamper_block([j](WeightedSosCertificate& c) -> WeightedSos& { return c.q[j]; });
    for (std::size_t i = 0; i < cert.p.size(); ++i)
        for (const auto& [m, coef] : cert.p[i].terms()) {
            WeightedSosCertificate c = cert;
            c.p[i].add_term(m, eps);
            check(c);
        }
    {
        WeightedSosCertificate c = cert;
        c.target += eps;
        check(c);
    }
    return {tried, rejected};
}

inline CriterionResult sos_identities(const ReproduceOptions& opt) {
    return timed(8, "SOS identities and the toy pipeline", 120.0, [&](std::ostringstream& out) {
        Rng rng(opt.seed * 7919 + 8);
        std::size_t monomial_ok = 0, offset_ok = 0;
        for (int t = 0; t < 200; ++t) {
            const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 8));
            const Monomial alpha = random_multi_index(rng, n, 6);
            const auto pt = decompose_one_minus_monomial(alpha);
            MPoly lhs = MPoly::constant(n, 1);
            lhs.add_term(alpha, -1);
            MPoly rhs(n);
            for (std::size_t i = 0; i < n; ++i) {
                MPoly one_minus = MPoly::constant(n, 1) - MPoly::variable(n, i);
                rhs.add_product(one_minus, pt[i]);
            }
            monomial_ok += lhs == rhs;

            const Rational omega_sq = frac(1397537, 270000);
            const auto dec = offset_decomposition(omega_sq, alpha);
            MPoly lhs2 = MPoly::constant(n, dec.delta);
            lhs2.add_term(alpha + alpha, -1);
            MPoly rhs2(n);
            bool weights_ok = true;
            for (std::size_t i = 0; i < n; ++i) {
                for (const auto& sq : dec.p[i]) weights_ok = weights_ok && sq.gamma > 0;
                rhs2.add_product(expand(dec.p[i], n), box_polynomial(n, i, omega_sq));
            }
            offset_ok += lhs2 == rhs2 && weights_ok;
        }
        std::size_t gram_ok = 0;
        for (int t = 0; t < 100; ++t) {
            const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
            const auto r = static_cast<std::uint32_t>(rng.uniform(1, 2));
            GramData g{monomial_basis(n, r), Matrix(0, 0)};
            const std::size_t m = g.basis.size();
            g.Q = Matrix(m, m);
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = a; b < m; ++b) g.Q(a, b) = g.Q(b, a) = rng.rational_in_unit(32);
            const MPoly h = random_poly(rng, n, 2 * r, 6);
            const GramData q = gram_project(g, h);
            const GramData qq = gram_project(q, h);
            gram_ok += gram_polynomial(q) == h && q.Q.is_symmetric() && qq.Q == q.Q;
        }
        const ToySos toy = toy_sos_instance();
        const auto cert = toy_sos_certificate();
        const bool toy_ok = static_cast<bool>(verify_sos_certificate(toy.sys, cert));
        const auto [tried, rejected] = tamper_all(toy.sys, cert);
        out << "one-minus-monomial identity " << monomial_ok << "/200, offset identity " << offset_ok << "/200, Gram projection "
            << gram_ok << "/100, toy certificate verifies: " << yes(toy_ok) << ", tampered copies rejected "
            << rejected << "/" << tried;
        return monomial_ok == 200 && offset_ok == 200 && gram_ok == 100 && toy_ok && tried > 0 && rejected == tried;
    });
}

inline CriterionResult simple_test() {
    return timed(9, "simple shadiness test on I and the cube", 60.0, [](std::ostringstream& out) {
        const Polytope i = make_icosahedron_I();
        const Polytope cube = make_cube();
        const bool gp = general_position(half_normals(i));
        const auto cov = covers_all_planes(i);
        const bool si = gp && cov.covers;
        const bool sc = simple_shady_test(cube);
        out << "I: general position " << yes(gp) << ", every plane meets >= 3 facet pairs " << yes(cov.covers);
        if (cov.witness)
            out << " (plane with normal (" << to_string(*cov.witness, ',') << ") meets " << count_pairs_met(i, *cov.witness)
                << ")";
        out << ", simple test " << yes(si) << "; cube simple test " << yes(sc);
        if (!si) out << "; exact decision for I: shady = " << yes(decide_shady_codim_one(i).shady);
        return si && !sc;
    });
}

inline bool is_norm_one_projection(const Polytope& c, const ShadinessWitness& w) {
    const Matrix& p = w.projection.P;
    return p * p == p && p.trace() == 2 && operator_norm(c, p).value == 1 && w.bound == 1;
}

inline CriterionResult nonshady(const ReproduceOptions& opt) {
    return timed(10, "norm-one projections for 10-vertex polytopes", 300.0, [&](std::ostringstream& out) {
        Rng rng(opt.seed * 7919 + 10);
        std::size_t ok = 0;
        for (int t = 0; t < 100; ++t) {
            const Polytope c = random_symmetric_polytope(rng, 5);
            ok += is_norm_one_projection(c, norm_one_projection(c));
        }
        const Polytope cube = make_cube(), oct = make_octahedron();
        const bool cube_ok = is_norm_one_projection(cube, norm_one_projection(cube));
        const bool oct_ok = is_norm_one_projection(oct, norm_one_projection(oct));
        out << "random: " << ok << "/100, cube: " << yes(cube_ok) << ", octahedron: " << yes(oct_ok);
        return ok == 100 && cube_ok && oct_ok;
    });
}

inline CriterionResult counting(const ReproduceOptions& opt) {
    return timed(11, "triangulation counting identities", 60.0, [&](std::ostringstream& out) {
        Rng rng(opt.seed * 7919 + 10);  // same instances as criterion 10
        std::vector<Polytope> all;
        for (int t = 0; t < 100; ++t) all.push_back(random_symmetric_polytope(rng, 5));
        const std::size_t random_count = all.size();
        for (auto c : {make_cube(), make_octahedron(), make_icosahedron_I(), make_john_J()}) all.push_back(c);
        std::size_t euler = 0, edge_face = 0, ten = 0, ten_24 = 0;
        for (std::size_t k = 0; k < all.size(); ++k) {
            const auto t = triangulate_symmetric(all[k]);
            const long v = static_cast<long>(t.vertices.size()), e = static_cast<long>(t.edges.size()),
                       f = static_cast<long>(t.triangles.size());
            euler += v - e + f == 2;
            edge_face += 2 * e == 3 * f;
            if (v == 10) {
                ++ten;
                ten_24 += e == 24;
            }
        }
        out << "triangulations " << all.size() << " (" << random_count << " random), Euler " << euler
            << ", 2E = 3F " << edge_face << ", 10-vertex with 24 edges " << ten_24 << "/" << ten;
        return euler == all.size() && edge_face == all.size() && ten_24 == ten && ten >= random_count;
    });
}

}  // namespace repro

/// Runs the selected acceptance criteria (all when `ids` is empty) in order.
inline std::vector<CriterionResult> reproduce(const ReproduceOptions& opt, const std::set<int>& ids = {}) {
    std::vector<std::function<CriterionResult()>> all = {
        [] { return repro::projection_norm(); },  [] { return repro::enclosing(); },
        [] { return repro::global_bound(); },     [&] { return repro::campaign(opt); },
        [&] { return repro::duality(opt); },      [&] { return repro::file_format(opt); },
        [] { return repro::delta(); },            [&] { return repro::sos_identities(opt); },
        [] { return repro::simple_test(); },      [&] { return repro::nonshady(opt); },
        [&] { return repro::counting(opt); },
    };
    std::vector<CriterionResult> out;
    for (std::size_t k = 0; k < all.size(); ++k)
        if (ids.empty() || ids.count(static_cast<int>(k + 1))) out.push_back(all[k]());
    return out;
}

}  // namespace shady

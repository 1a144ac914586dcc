#pragma once

#include <zlib.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "shady/errors.hpp"
#include "shady/lp.hpp"
#include "shady/matrix.hpp"
#include "shady/polytope.hpp"
#include "shady/rational.hpp"

namespace shady {

/// The direction w admits a projection onto w^perp of norm lambda <= alpha*.
class BoundFails : public Error {
public:
    BoundFails(Vector w, Rational lambda)
        : Error("bound fails at w = (" + shady::to_string(w, ',') + "): lambda = " + shady::to_string(lambda)),
          w_(std::move(w)), lambda_(std::move(lambda)) {}

    const Vector& w() const noexcept { return w_; }
    const Rational& lambda() const noexcept { return lambda_; }

private:
    Vector w_;
    Rational lambda_;
};

/// Rows (h^T v) w - (w^T v) h - alpha* w over (v, h) in V' x H, v-major.
struct FarkasMatrix {
    std::vector<Vector> rows;
    Vector w;
    Rational alpha_star;
};

inline Vector farkas_row(const Vector& v, const Vector& h, const Vector& w, const Rational& alpha_star) {
    const Rational hv = dot(h, v), wv = dot(w, v);
    Vector row(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) row[i] = (hv - alpha_star) * w[i] - wv * h[i];
    return row;
}

inline FarkasMatrix build_farkas_matrix(const Polytope& c, const Vector& w, const Rational& alpha_star) {
    FarkasMatrix a{{}, w, alpha_star};
    a.rows.reserve(c.half_vertices().size() * c.normals().size());
    for (const auto& v : c.half_vertices())
        for (const auto& h : c.normals()) a.rows.push_back(farkas_row(v, h, w, alpha_star));
    return a;
}

inline std::size_t farkas_row_count(const Polytope& c) { return c.half_vertices().size() * c.normals().size(); }

struct FarkasCertificate {
    Vector w;
    std::vector<std::size_t> support;  ///< 1-based row indices, ascending
    Vector y_values;
    Rational alpha_star;
};

enum class VerifyStatus { Ok, DimensionMismatch, TooManyEntries, IndexOutOfRange, DuplicateIndex, NonPositive, EquationFails };

inline const char* to_string(VerifyStatus s) {
    switch (s) {
        case VerifyStatus::Ok: return "ok";
        case VerifyStatus::DimensionMismatch: return "dimension mismatch";
        case VerifyStatus::TooManyEntries: return "more than d entries";
        case VerifyStatus::IndexOutOfRange: return "row index out of range";
        case VerifyStatus::DuplicateIndex: return "duplicate row index";
        case VerifyStatus::NonPositive: return "non-positive multiplier";
        case VerifyStatus::EquationFails: return "A^T y != w";
    }
    return "?";
}

struct VerifyResult {
    VerifyStatus status = VerifyStatus::Ok;
    explicit operator bool() const noexcept { return status == VerifyStatus::Ok; }
};

/// Exact check of A^T y = w with y > 0. A true result proves lambda(w^perp) > alpha*.
inline VerifyResult verify_certificate(const Polytope& c, const FarkasCertificate& cert) {
    const std::size_t d = c.dim();
    if (cert.w.size() != d || cert.support.size() != cert.y_values.size()) return {VerifyStatus::DimensionMismatch};
    if (cert.support.size() > d) return {VerifyStatus::TooManyEntries};
    const std::size_t nh = c.normals().size();
    const std::size_t rows = farkas_row_count(c);
    std::set<std::size_t> seen;
    for (std::size_t idx : cert.support) {
        if (idx < 1 || idx > rows) return {VerifyStatus::IndexOutOfRange};
        if (!seen.insert(idx).second) return {VerifyStatus::DuplicateIndex};
    }
    for (const auto& y : cert.y_values)
        if (y <= 0) return {VerifyStatus::NonPositive};
    Vector sum(d, Rational(0));
    for (std::size_t k = 0; k < cert.support.size(); ++k) {
        const std::size_t r = cert.support[k] - 1;
        Vector row = farkas_row(c.half_vertices()[r / nh], c.normals()[r % nh], cert.w, cert.alpha_star);
        for (std::size_t i = 0; i < d; ++i) sum[i] += cert.y_values[k] * row[i];
    }
    if (sum != cert.w) return {VerifyStatus::EquationFails};
    return {};
}

struct RelativeProjection {
    Rational lambda;  ///< norm of the best projection onto w^perp
    Vector u;         ///< its kernel direction, normalised by w^T u = 1
};

namespace detail {

// min alpha over (u, alpha) with w^T u = 1 and h^T v - (w^T v)(h^T u) <= alpha for h in
// `normals`, v in `points`. Solved through the dual, which has only d + 1 rows:
//   max sum_r y_r h^T v + t  s.t.  sum_r y_r (w^T v) h + t w = 0,  sum y = 1,  y >= 0.
inline RelativeProjection min_norm_fixed_image(const std::vector<Vector>& points, const std::vector<Vector>& normals,
                                               const Vector& w) {
    const std::size_t d = w.size();
    if (is_zero(w)) throw std::invalid_argument("direction must be nonzero");
    const std::size_t r = points.size() * normals.size();
    const std::size_t cols = r + 2;  // y, t+, t-
    std::vector<Vector> a(d + 1, Vector(cols, Rational(0)));
    Vector b(d + 1, Rational(0));
    b[d] = 1;
    Vector cost(cols, Rational(0));
    std::size_t j = 0;
    for (const auto& v : points) {
        const Rational wv = dot(w, v);
        for (const auto& h : normals) {
            for (std::size_t i = 0; i < d; ++i) a[i][j] = wv * h[i];
            a[d][j] = 1;
            cost[j] = -dot(h, v);
            ++j;
        }
    }
    for (std::size_t i = 0; i < d; ++i) {
        a[i][r] = w[i];
        a[i][r + 1] = -w[i];
    }
    cost[r] = -1;
    cost[r + 1] = 1;
    auto res = solve_standard_form<Rational>(a, b, cost);
    if (res.status != LpStatus::Optimal) throw Unbounded("relative projection LP has no finite optimum");
    RelativeProjection out;
    out.u.resize(d);
    for (std::size_t i = 0; i < d; ++i) out.u[i] = -res.duals[i];
    // Recompute the norm of the projection with kernel u exactly.
    bool first = true;
    for (const auto& v : points) {
        const Rational wv = dot(w, v);
        for (const auto& h : normals) {
            Rational val = dot(h, v) - wv * dot(h, out.u);
            if (first || val > out.lambda) out.lambda = val;
            first = false;
        }
    }
    if (dot(w, out.u) != 1 || out.lambda != -res.objective)
        throw std::logic_error("relative projection LP: dual solution inconsistent");
    return out;
}

}  // namespace detail

/// Best projection onto w^perp: min alpha over (u, alpha) with w^T u = 1 and
/// h^T v - (w^T v)(h^T u) <= alpha on H x V'. u is the kernel direction.
inline RelativeProjection relative_projection_lp(const Polytope& c, const Vector& w) {
    if (w.size() != c.dim()) throw std::invalid_argument("direction has wrong dimension");
    return detail::min_norm_fixed_image(c.half_vertices(), c.normals(), w);
}

/// Best projection with kernel span{w}: the same LP on the polar body, since
/// ||P||_C = ||P^T||_{C polar}. The returned u is the normal of the image plane.
inline RelativeProjection fixed_kernel_lp(const Polytope& c, const Vector& w) {
    if (w.size() != c.dim()) throw std::invalid_argument("direction has wrong dimension");
    std::vector<Vector> half_normals;
    for (std::size_t i : c.half_normal_indices()) half_normals.push_back(c.normals()[i]);
    return detail::min_norm_fixed_image(half_normals, c.vertices(), w);
}

namespace detail {

inline std::vector<Vector> farkas_transpose(const FarkasMatrix& a, std::size_t d) {
    std::vector<Vector> at(d, Vector(a.rows.size()));
    for (std::size_t r = 0; r < a.rows.size(); ++r)
        for (std::size_t i = 0; i < d; ++i) at[i][r] = a.rows[r][i];
    return at;
}

inline std::optional<FarkasCertificate> certificate_from_support(const Polytope& c, const FarkasMatrix& a,
                                                                  const std::vector<std::size_t>& support) {
    const std::size_t d = c.dim();
    if (support.size() != d) return std::nullopt;
    Matrix b(d, d);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t i = 0; i < d; ++i) b(i, k) = a.rows[support[k]][i];
    Vector y;
    try {
        y = solve_linear(b, a.w);
    } catch (const SingularMatrix&) {
        return std::nullopt;
    }
    FarkasCertificate cert{a.w, {}, {}, a.alpha_star};
    std::vector<std::pair<std::size_t, Rational>> entries;
    for (std::size_t k = 0; k < d; ++k) {
        if (y[k] < 0) return std::nullopt;
        if (y[k] > 0) entries.emplace_back(support[k] + 1, y[k]);
    }
    std::sort(entries.begin(), entries.end());
    for (auto& [idx, val] : entries) {
        cert.support.push_back(idx);
        cert.y_values.push_back(std::move(val));
    }
    if (!verify_certificate(c, cert)) return std::nullopt;
    return cert;
}

}  // namespace detail

struct GenerateOptions {
    bool float_warm_start = true;
    bool exact_fallback = true;  ///< otherwise a bad floating support raises NumericalSupportMismatch
};

/// Finds y >= 0 with at most d positive entries and A^T y = w. Such y exists iff
/// lambda(w^perp) > alpha*; otherwise BoundFails carries the exact lambda.
inline FarkasCertificate generate_certificate(const Polytope& c, const Vector& w, const Rational& alpha_star,
                                              const GenerateOptions& options = {}) {
    const std::size_t d = c.dim();
    if (w.size() != d) throw std::invalid_argument("direction has wrong dimension");
    if (is_zero(w)) throw std::invalid_argument("direction must be nonzero");
    const FarkasMatrix a = build_farkas_matrix(c, w, alpha_star);
    const auto at = detail::farkas_transpose(a, d);

    if (options.float_warm_start) {
        std::vector<std::vector<double>> atf(d, std::vector<double>(a.rows.size()));
        std::vector<double> wf(d);
        for (std::size_t i = 0; i < d; ++i) {
            wf[i] = w[i].get_d();
            for (std::size_t r = 0; r < a.rows.size(); ++r) atf[i][r] = at[i][r].get_d();
        }
        auto approx = solve_standard_form<double>(atf, wf);
        if (approx.status == LpStatus::Optimal) {
            std::vector<std::size_t> support;
            for (std::size_t col : approx.basis)
                if (col < a.rows.size()) support.push_back(col);
            std::sort(support.begin(), support.end());
            if (auto cert = detail::certificate_from_support(c, a, support)) return *cert;
        }
        if (!options.exact_fallback)
            throw NumericalSupportMismatch("floating support admits no exact non-negative solution");
    }

    auto exact = solve_standard_form<Rational>(at, w);
    if (exact.status != LpStatus::Optimal) throw BoundFails(w, relative_projection_lp(c, w).lambda);
    FarkasCertificate cert{w, {}, {}, alpha_star};
    for (std::size_t r = 0; r < exact.x.size(); ++r)
        if (exact.x[r] > 0) {
            cert.support.push_back(r + 1);
            cert.y_values.push_back(exact.x[r]);
        }
    if (auto status = verify_certificate(c, cert); !status)
        throw std::logic_error(std::string("generated certificate fails verification: ") + to_string(status.status));
    return cert;
}

/// Directions W~ on the faces x_i = 1 of the cube, first occurrence kept.
struct DirectionGrid {
    unsigned n = 0;
    std::vector<Vector> points;
    std::vector<unsigned> facet;  ///< cube facet (0-based coordinate) where each point first occurs
};

inline std::size_t raw_grid_size(unsigned n) { return 3 * static_cast<std::size_t>(2 * n + 1) * (2 * n + 1); }

/// Raw grid point for cube facet f and offsets k, l in [-n, n].
inline Vector raw_grid_point(unsigned n, unsigned f, long k, long l) {
    Vector p(3);
    const long nn = static_cast<long>(n);
    p[f] = 1;
    p[f == 0 ? 1 : 0] = frac(k, nn);
    p[f == 2 ? 1 : 2] = frac(l, nn);
    return p;
}

inline DirectionGrid build_grid(unsigned n) {
    if (n < 1) throw std::invalid_argument("grid needs n >= 1");
    DirectionGrid g;
    g.n = n;
    std::set<Vector> seen;
    const long nn = static_cast<long>(n);
    for (unsigned f = 0; f < 3; ++f)
        for (long k = -nn; k <= nn; ++k)
            for (long l = -nn; l <= nn; ++l) {
                Vector p = raw_grid_point(n, f, k, l);
                if (!seen.insert(p).second) continue;
                g.points.push_back(std::move(p));
                g.facet.push_back(f);
            }
    return g;
}

/// Outward rational bound on 1/(n sqrt 2): 7072/(10^4 n), since (7072/10^4)^2 >= 1/2.
inline Rational epsilon_bar(unsigned n) { return make_rational(Integer(7072), Integer(10000) * n); }

/// alpha* / (1 + eps (C + C^2)), a lower bound on every rank-2 projection norm when
/// all grid directions are certified and C bounds ||x||_2 / ||x||_C from above.
inline Rational global_lower_bound_eps(const Rational& alpha_star, const Rational& eps_bar, const Rational& c_upper) {
    return alpha_star / (1 + eps_bar * (c_upper + c_upper * c_upper));
}

inline Rational global_lower_bound(const Rational& alpha_star, unsigned n, const Rational& c_upper) {
    if (alpha_star <= 0 || n == 0 || c_upper <= 0) throw std::invalid_argument("global_lower_bound needs positive inputs");
    return global_lower_bound_eps(alpha_star, epsilon_bar(n), c_upper);
}

// ---- certificate files ------------------------------------------------------

namespace detail {

inline bool is_gzip_path(const std::filesystem::path& p) { return p.extension() == ".gz"; }

inline std::string read_file_bytes(const std::filesystem::path& path) {
    if (is_gzip_path(path)) {
        gzFile f = gzopen(path.string().c_str(), "rb");
        if (!f) throw std::runtime_error("cannot open " + path.string());
        std::string out;
        char buf[1 << 16];
        int got;
        while ((got = gzread(f, buf, sizeof buf)) > 0) out.append(buf, static_cast<std::size_t>(got));
        int err = 0;
        const char* msg = gzerror(f, &err);
        gzclose(f);
        if (got < 0 || err < 0) throw std::runtime_error("gzip read failed for " + path.string() + ": " + msg);
        return out;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace detail

/// Writes to a plain or gzip file depending on the extension.
class CertificateWriter {
public:
    explicit CertificateWriter(const std::filesystem::path& path) : gzip_(detail::is_gzip_path(path)) {
        if (gzip_) {
            gz_ = gzopen(path.string().c_str(), "wb");
            if (!gz_) throw std::runtime_error("cannot write " + path.string());
        } else {
            out_.open(path, std::ios::binary | std::ios::trunc);
            if (!out_) throw std::runtime_error("cannot write " + path.string());
        }
    }
    CertificateWriter(const CertificateWriter&) = delete;
    CertificateWriter& operator=(const CertificateWriter&) = delete;
    ~CertificateWriter() {
        if (gz_) gzclose(gz_);
    }

    void write(std::string_view text) {
        if (text.empty()) return;
        if (gzip_) {
            if (gzwrite(gz_, text.data(), static_cast<unsigned>(text.size())) != static_cast<int>(text.size()))
                throw std::runtime_error("gzip write failed");
        } else {
            out_.write(text.data(), static_cast<std::streamsize>(text.size()));
            if (!out_) throw std::runtime_error("write failed");
        }
    }

    void flush() {
        if (gzip_)
            gzflush(gz_, Z_SYNC_FLUSH);
        else
            out_.flush();
    }

private:
    bool gzip_;
    gzFile gz_ = nullptr;
    std::ofstream out_;
};

/// One line: w_1;..;w_d;k_1;..;k_d;y_1;..;y_d with unused slots written as 0 and 0//1.
inline std::string format_certificate(const FarkasCertificate& cert) {
    const std::size_t d = cert.w.size();
    std::string line;
    for (const auto& x : cert.w) line += to_string(x) + ';';
    for (std::size_t k = 0; k < d; ++k) line += (k < cert.support.size() ? std::to_string(cert.support[k]) : "0") + ';';
    for (std::size_t k = 0; k < d; ++k) {
        line += k < cert.y_values.size() ? to_string(cert.y_values[k]) : "0//1";
        line += k + 1 < d ? ";" : "\n";
    }
    return line;
}

inline FarkasCertificate parse_certificate_line(std::string_view line, std::size_t line_no, std::size_t d = 3,
                                                const Rational& alpha_star = 0) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(';', start);
        fields.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    if (fields.size() != 3 * d)
        throw ParseError("expected " + std::to_string(3 * d) + " fields, got " + std::to_string(fields.size()), line_no);
    FarkasCertificate cert;
    cert.alpha_star = alpha_star;
    try {
        for (std::size_t i = 0; i < d; ++i) cert.w.push_back(parse_rational(fields[i]));
        bool padding = false;
        for (std::size_t k = 0; k < d; ++k) {
            Integer idx = detail::parse_integer(fields[d + k]);
            Rational y = parse_rational(fields[2 * d + k]);
            if (idx < 0 || !idx.fits_ulong_p()) throw ParseError("bad row index", line_no);
            if (idx == 0) {
                if (y != 0) throw ParseError("padding slot with nonzero value", line_no);
                padding = true;
                continue;
            }
            if (padding) throw ParseError("row index after padding", line_no);
            cert.support.push_back(idx.get_ui());
            cert.y_values.push_back(std::move(y));
        }
    } catch (const ParseError& e) {
        if (e.line() != 0) throw;
        throw ParseError(e.what(), line_no);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line_no);
    }
    return cert;
}

inline std::vector<FarkasCertificate> parse_certificates(std::string_view text, std::size_t d = 3,
                                                         const Rational& alpha_star = 0) {
    std::vector<FarkasCertificate> out;
    std::size_t line_no = 0, start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) out.push_back(parse_certificate_line(line, line_no, d, alpha_star));
        start = end + 1;
    }
    return out;
}

inline std::vector<FarkasCertificate> read_certificates(const std::filesystem::path& path, const Rational& alpha_star = 0,
                                                        std::size_t d = 3) {
    return parse_certificates(detail::read_file_bytes(path), d, alpha_star);
}

inline void write_certificates(const std::vector<FarkasCertificate>& certs, const std::filesystem::path& path) {
    CertificateWriter out(path);
    for (const auto& c : certs) out.write(format_certificate(c));
}

// ---- campaign ---------------------------------------------------------------

struct CampaignOptions {
    unsigned jobs = 1;
    std::size_t batch = 256;
    bool gzip = false;
    std::string tag = "C";
    bool resume = true;
};

struct CampaignSummary {
    std::size_t grid_points = 0;  ///< unique directions
    std::size_t raw_points = 0;
    std::size_t certified = 0;    ///< newly generated
    std::size_t resumed = 0;      ///< taken over from existing files after re-verification
    std::size_t support_histogram[4] = {0, 0, 0, 0};
    std::optional<Rational> min_lambda;
    Vector min_lambda_w;
    std::vector<std::filesystem::path> files;
    double seconds = 0;
};

inline std::string campaign_file_name(const std::string& tag, unsigned n, const Rational& alpha_star, unsigned facet,
                                      bool gzip) {
    return tag + "-" + std::to_string(n) + "-" + alpha_star.get_num().get_str() + "_" + alpha_star.get_den().get_str() +
           "-" + std::to_string(facet + 1) + (gzip ? ".csv.gz" : ".csv");
}

/// Certifies every grid direction; one file per cube facet, written in grid order
/// and flushed per batch. Existing files are re-verified and their leading run of
/// matching directions is kept, so an interrupted run resumes where it stopped.
inline CampaignSummary run_campaign(const Polytope& c, unsigned n, const Rational& alpha_star,
                                    const std::filesystem::path& out_dir, const CampaignOptions& options = {}) {
    if (c.dim() != 3) throw std::invalid_argument("campaigns are implemented for d = 3");
    const auto t0 = std::chrono::steady_clock::now();
    std::filesystem::create_directories(out_dir);
    const DirectionGrid grid = build_grid(n);
    CampaignSummary summary;
    summary.grid_points = grid.points.size();
    summary.raw_points = raw_grid_size(n);
    const unsigned jobs = std::max(1u, options.jobs);

    for (unsigned f = 0; f < 3; ++f) {
        std::vector<std::size_t> todo;
        for (std::size_t i = 0; i < grid.points.size(); ++i)
            if (grid.facet[i] == f) todo.push_back(i);
        const auto path = out_dir / campaign_file_name(options.tag, n, alpha_star, f, options.gzip);
        summary.files.push_back(path);

        std::vector<FarkasCertificate> kept;
        if (options.resume && std::filesystem::exists(path)) {
            std::vector<FarkasCertificate> old;
            try {
                old = read_certificates(path, alpha_star);
            } catch (const std::exception&) {
                old.clear();  // unreadable (e.g. truncated) file: start over
            }
            for (auto& cert : old) {
                if (kept.size() >= todo.size() || cert.w != grid.points[todo[kept.size()]]) break;
                if (!verify_certificate(c, cert)) break;
                kept.push_back(std::move(cert));
            }
        }
        summary.resumed += kept.size();

        CertificateWriter writer(path);
        for (const auto& cert : kept) writer.write(format_certificate(cert));
        writer.flush();

        for (std::size_t begin = kept.size(); begin < todo.size(); begin += options.batch) {
            const std::size_t end = std::min(todo.size(), begin + options.batch);
            const std::size_t count = end - begin;
            std::vector<FarkasCertificate> certs(count);
            std::vector<Rational> lambdas(count);
            std::vector<std::exception_ptr> errors(count);
            std::atomic<std::size_t> next{0};
            auto work = [&] {
                for (std::size_t k; (k = next.fetch_add(1)) < count;) {
                    try {
                        const Vector& w = grid.points[todo[begin + k]];
                        lambdas[k] = relative_projection_lp(c, w).lambda;
                        if (lambdas[k] <= alpha_star) throw BoundFails(w, lambdas[k]);
                        certs[k] = generate_certificate(c, w, alpha_star);
                    } catch (...) {
                        errors[k] = std::current_exception();
                    }
                }
            };
            std::vector<std::thread> pool;
            for (unsigned t = 1; t < std::min<std::size_t>(jobs, count); ++t) pool.emplace_back(work);
            work();
            for (auto& t : pool) t.join();
            std::string chunk;
            for (std::size_t k = 0; k < count; ++k) {
                if (errors[k]) {
                    writer.write(chunk);
                    writer.flush();
                    std::rethrow_exception(errors[k]);
                }
                chunk += format_certificate(certs[k]);
                ++summary.certified;
                ++summary.support_histogram[std::min<std::size_t>(3, certs[k].support.size())];
                if (!summary.min_lambda || lambdas[k] < *summary.min_lambda) {
                    summary.min_lambda = lambdas[k];
                    summary.min_lambda_w = certs[k].w;
                }
            }
            writer.write(chunk);
            writer.flush();
        }
    }
    summary.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return summary;
}

struct FileCheck {
    std::size_t lines = 0;
    std::size_t verified = 0;
    std::size_t first_failure_line = 0;  ///< 1-based, 0 when every line verified
    VerifyStatus first_failure = VerifyStatus::Ok;
};

/// Re-verifies every certificate of a file, in parallel over lines.
inline FileCheck check_certificate_file(const Polytope& c, const std::filesystem::path& path, const Rational& alpha_star,
                                        unsigned jobs = 1) {
    const auto certs = read_certificates(path, alpha_star, c.dim());
    std::vector<VerifyStatus> status(certs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < certs.size();) status[k] = verify_certificate(c, certs[k]).status;
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < std::max(1u, jobs); ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    FileCheck out;
    out.lines = certs.size();
    for (std::size_t k = 0; k < certs.size(); ++k) {
        if (status[k] == VerifyStatus::Ok) {
            ++out.verified;
        } else if (out.first_failure_line == 0) {
            out.first_failure_line = k + 1;
            out.first_failure = status[k];
        }
    }
    return out;
}

}  // namespace shady

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shady/errors.hpp"
#include "shady/matrix.hpp"
#include "shady/mpoly.hpp"
#include "shady/polytope.hpp"
#include "shady/rational.hpp"

namespace shady {

/// Equalities F = 0 and inequalities G >= 0 over n variables. The last n entries of
/// G, starting at box_begin, are the box bounds omega_sq - x_i^2.
struct ConstraintSystem {
    std::size_t n = 0;
    std::vector<MPoly> F;
    std::vector<MPoly> G;
    std::size_t box_begin = 0;
    Rational omega_sq;
    Rational alpha_star;
};

inline MPoly box_polynomial(std::size_t n, std::size_t i, const Rational& omega_sq) {
    MPoly g = MPoly::constant(n, omega_sq);
    Monomial m(n, 0);
    m[i] = 2;
    g.add_term(std::move(m), -1);
    return g;
}

/// Entries of a d x d matrix variable P with the trace fixed to k: P_ij is x_(row-major
/// index) except P_dd = k - sum_{i<d} P_ii.
inline std::vector<std::vector<MPoly>> trace_fixed_matrix(std::size_t d, long k) {
    const std::size_t n = d * d - 1;
    std::vector<std::vector<MPoly>> p(d, std::vector<MPoly>(d, MPoly(n)));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (i * d + j < n) p[i][j] = MPoly::variable(n, i * d + j);
    MPoly last = MPoly::constant(n, Rational(k));
    for (std::size_t i = 0; i + 1 < d; ++i) last -= p[i][i];
    p[d - 1][d - 1] = std::move(last);
    return p;
}

/// System whose real solutions are the rank-k projections P (P^2 = P, tr P = k) with
/// h^T P v <= alpha* on H x V'. The caller supplies c_sq, an upper bound on the
/// squared ratio ||x||_2 / ||x||_C, which justifies the box |P_ij| <= alpha* sqrt(c_sq).
inline ConstraintSystem build_constraint_system(const std::vector<Vector>& half_vertices,
                                                const std::vector<Vector>& normals, std::size_t d, long k,
                                                const Rational& alpha_star, const Rational& omega_sq,
                                                const Rational& c_sq) {
    if (d < 2) throw std::invalid_argument("dimension must be at least 2");
    if (k < 1 || k >= static_cast<long>(d)) throw std::invalid_argument("rank must lie in 1..d-1");
    if (omega_sq < alpha_star * alpha_star * c_sq)
        throw InvalidBound("omega_sq = " + to_string(omega_sq) + " is below alpha*^2 C^2 = " +
                           to_string(alpha_star * alpha_star * c_sq));
    ConstraintSystem sys;
    sys.n = d * d - 1;
    sys.omega_sq = omega_sq;
    sys.alpha_star = alpha_star;
    const auto p = trace_fixed_matrix(d, k);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            MPoly f(sys.n);
            for (std::size_t l = 0; l < d; ++l) f.add_product(p[i][l], p[l][j]);
            f -= p[i][j];
            sys.F.push_back(std::move(f));
        }
    for (const auto& v : half_vertices)
        for (const auto& h : normals) {
            MPoly g = MPoly::constant(sys.n, alpha_star);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    if (h[i] != 0 && v[j] != 0) g -= (h[i] * v[j]) * p[i][j];
            sys.G.push_back(std::move(g));
        }
    sys.box_begin = sys.G.size();
    for (std::size_t i = 0; i < sys.n; ++i) sys.G.push_back(box_polynomial(sys.n, i, omega_sq));
    return sys;
}

inline ConstraintSystem build_constraint_system(const Polytope& c, long k, const Rational& alpha_star,
                                                const Rational& omega_sq) {
    return build_constraint_system(c.half_vertices(), c.normals(), c.dim(), k, alpha_star, omega_sq,
                                   enclosing_constants(c).C_sq);
}

// ---- weighted sums of squares ----------------------------------------------

struct WeightedSquare {
    Rational gamma;  ///< > 0
    MPoly s;
};

/// sum gamma_i s_i^2
using WeightedSos = std::vector<WeightedSquare>;

inline MPoly expand(const WeightedSos& q, std::size_t n) {
    MPoly out(n);
    for (const auto& t : q) out.add_product(t.s, t.s, t.gamma);
    return out;
}

/// target = q0 + sum_j q_j G_j + sum_i p_i F_i with every q a weighted sum of squares.
struct WeightedSosCertificate {
    WeightedSos q0;
    std::vector<WeightedSos> q;  ///< one per inequality
    std::vector<MPoly> p;        ///< one per equality
    Rational target = -1;
};

struct SosReport {
    bool ok = false;
    std::string reason;
    std::optional<Monomial> mismatch;  ///< first differing monomial (lexicographic)
    Rational expected;                 ///< coefficient of target there
    Rational actual;                   ///< coefficient of the expansion there
    explicit operator bool() const noexcept { return ok; }
};

/// Expands the certificate exactly. Success proves the system has no real solution.
inline SosReport verify_sos_certificate(const ConstraintSystem& sys, const WeightedSosCertificate& cert) {
    SosReport r;
    if (cert.target >= 0) {
        r.reason = "target is not negative";
        return r;
    }
    if (cert.q.size() != sys.G.size() || cert.p.size() != sys.F.size()) {
        r.reason = "block count does not match the system";
        return r;
    }
    auto check_block = [&](const WeightedSos& q) {
        for (const auto& t : q) {
            if (t.gamma <= 0) {
                r.reason = "non-positive weight " + to_string(t.gamma);
                return false;
            }
            if (t.s.nvars() != sys.n) {
                r.reason = "variable count mismatch";
                return false;
            }
        }
        return true;
    };
    if (!check_block(cert.q0)) return r;
    for (const auto& q : cert.q)
        if (!check_block(q)) return r;
    for (const auto& p : cert.p)
        if (p.nvars() != sys.n) {
            r.reason = "variable count mismatch";
            return r;
        }
    MPoly total = expand(cert.q0, sys.n);
    for (std::size_t j = 0; j < cert.q.size(); ++j)
        if (!cert.q[j].empty()) total.add_product(expand(cert.q[j], sys.n), sys.G[j]);
    for (std::size_t i = 0; i < cert.p.size(); ++i) total.add_product(cert.p[i], sys.F[i]);
    const MPoly target = MPoly::constant(sys.n, cert.target);
    if (total == target) {
        r.ok = true;
        return r;
    }
    auto a = total.terms().begin(), ae = total.terms().end();
    auto b = target.terms().begin(), be = target.terms().end();
    while (a != ae || b != be) {
        if (b == be || (a != ae && a->first < b->first)) {
            r.mismatch = a->first;
            r.actual = a->second;
            break;
        }
        if (a == ae || b->first < a->first) {
            r.mismatch = b->first;
            r.expected = b->second;
            break;
        }
        if (a->second != b->second) {
            r.mismatch = a->first;
            r.actual = a->second;
            r.expected = b->second;
            break;
        }
        ++a;
        ++b;
    }
    r.reason = "identity fails at monomial " + to_string(*r.mismatch) + ": expected " + to_string(r.expected) +
               ", got " + to_string(r.actual);
    return r;
}

// ---- constructive decompositions -------------------------------------------

/// p_1..p_n with non-negative integer coefficients and 1 - x^alpha = sum (1 - x_i) p_i,
/// from 1 - x^alpha = (1 - x_i) + x_i (1 - x^beta), peeling the smallest index first.
inline std::vector<MPoly> decompose_one_minus_monomial(const Monomial& alpha) {
    const std::size_t n = alpha.size();
    std::vector<MPoly> p(n, MPoly(n));
    Monomial prefix(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::uint32_t e = 0; e < alpha[i]; ++e) {
            p[i].add_term(prefix, 1);
            ++prefix[i];
        }
    return p;
}

struct OffsetDecomposition {
    Rational delta;                ///< omega_sq^|alpha|
    std::vector<WeightedSos> p;    ///< delta - x^(2 alpha) = sum p_i (omega_sq - x_i^2)
};

/// Substitutes x_i -> x_i^2 / omega_sq into the previous identity and clears denominators.
inline OffsetDecomposition offset_decomposition(const Rational& omega_sq, const Monomial& alpha) {
    if (omega_sq <= 0) throw std::invalid_argument("omega_sq must be positive");
    const std::size_t n = alpha.size();
    const std::uint32_t w = weight(alpha);
    OffsetDecomposition out;
    out.delta = 1;
    for (std::uint32_t e = 0; e < w; ++e) out.delta *= omega_sq;
    out.p.assign(n, {});
    const auto tilde = decompose_one_minus_monomial(alpha);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [beta, c] : tilde[i].terms()) {
            Rational gamma = c;
            for (std::uint32_t e = weight(beta) + 1; e < w; ++e) gamma *= omega_sq;
            out.p[i].push_back({gamma, MPoly::monomial(beta)});
        }
    return out;
}

struct DeltaBound {
    Rational delta;
    /// delta - sum_{alpha in basis} x^(2 alpha) = sum_i membership[i] (omega_sq - x_i^2)
    std::vector<WeightedSos> membership;
};

/// Sum of offset_decomposition over every alpha of weight <= r, with equal squares merged.
inline DeltaBound delta_bound(const Rational& omega_sq, std::uint32_t r, std::size_t n) {
    if (n < 1) throw std::invalid_argument("delta_bound needs n >= 1");
    DeltaBound out;
    out.delta = 0;
    std::vector<std::map<Monomial, Rational>> merged(n);
    for (const auto& alpha : monomial_basis(n, r)) {
        auto dec = offset_decomposition(omega_sq, alpha);
        out.delta += dec.delta;
        for (std::size_t i = 0; i < n; ++i)
            for (auto& t : dec.p[i]) merged[i][t.s.terms().begin()->first] += t.gamma;
    }
    out.membership.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        for (auto& [m, g] : merged[i]) out.membership[i].push_back({g, MPoly::monomial(m)});
    return out;
}

/// sum_{j=0}^r C(n+j-1, j) omega_sq^j
inline Rational delta_closed_form(const Rational& omega_sq, std::uint32_t r, std::size_t n) {
    Rational total = 0, power = 1;
    Integer count = 1;  // C(n-1, 0)
    for (std::uint32_t j = 0; j <= r; ++j) {
        if (j > 0) {
            count = count * (n + j - 1) / j;
            power *= omega_sq;
        }
        total += Rational(count) * power;
    }
    return total;
}

// ---- Gram matrices ----------------------------------------------------------

struct GramData {
    std::vector<Monomial> basis;
    Matrix Q;
};

inline MPoly gram_polynomial(const GramData& g) {
    const std::size_t n = g.basis.empty() ? 0 : g.basis.front().size();
    MPoly out(n);
    for (std::size_t a = 0; a < g.basis.size(); ++a)
        for (std::size_t b = 0; b < g.basis.size(); ++b) out.add_term(g.basis[a] + g.basis[b], g.Q(a, b));
    return out;
}

/// Orthogonal projection of Q' onto the Gram matrices of h:
/// Q_ab = Q'_ab - (sum_{a'+b' = a+b} Q'_a'b' - h_(a+b)) / #(a+b).
inline GramData gram_project(const GramData& qp, const MPoly& h) {
    const std::size_t m = qp.basis.size();
    if (qp.Q.rows() != m || qp.Q.cols() != m) throw std::invalid_argument("Gram matrix does not match its basis");
    if (m == 0) throw std::invalid_argument("empty basis");
    if (h.nvars() != qp.basis.front().size()) throw VariableCountMismatch(qp.basis.front().size(), h.nvars());
    std::map<Monomial, std::pair<Rational, long>> sums;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            auto& s = sums[qp.basis[a] + qp.basis[b]];
            s.first += qp.Q(a, b);
            ++s.second;
        }
    for (const auto& [mono, c] : h.terms())
        if (!sums.count(mono)) throw DegreeOverflow("monomial " + to_string(mono) + " is not a product of basis elements");
    std::map<Monomial, Rational> shift;
    for (const auto& [mono, s] : sums) shift[mono] = (s.first - h.coefficient(mono)) / Rational(s.second);
    GramData out{qp.basis, qp.Q};
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) out.Q(a, b) -= shift[qp.basis[a] + qp.basis[b]];
    return out;
}

/// Best rational approximations, entry by entry.
inline Matrix round_to_rational(const std::vector<std::vector<double>>& values, const Integer& max_den) {
    Matrix out(values.size(), values.empty() ? 0 : values.front().size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i].size() != out.cols()) throw std::invalid_argument("ragged matrix");
        for (std::size_t j = 0; j < values[i].size(); ++j) out(i, j) = round_to_rational(values[i][j], max_den);
    }
    return out;
}

inline Vector round_to_rational(const std::vector<double>& values, const Integer& max_den) {
    Vector out;
    out.reserve(values.size());
    for (double v : values) out.push_back(round_to_rational(v, max_den));
    return out;
}

/// -1 - sum_j q_j G_j - sum_i p_i F_i, the polynomial the Gram matrix must represent.
inline MPoly gram_target(const ConstraintSystem& sys, const std::vector<WeightedSos>& q_terms,
                         const std::vector<MPoly>& p_terms) {
    MPoly h = MPoly::constant(sys.n, -1);
    for (std::size_t j = 0; j < q_terms.size(); ++j) h.add_product(expand(q_terms[j], sys.n), sys.G.at(j), -1);
    for (std::size_t i = 0; i < p_terms.size(); ++i) h.add_product(p_terms[i], sys.F.at(i), -1);
    return h;
}

/// With [x]^T Q [x] = -1 - sum q_j G_j - sum p_i F_i and Q + I/(2 delta) = L D L^T,
///   -1 = 2 (q0 + sum q_j G_j + sum p_i F_i) + (delta - [x]^T [x]) / delta,
/// where q0 = sum D_i (L_i^T [x])^2 and the last term is spread over the box bounds.
inline WeightedSosCertificate finalize_certificate(const ConstraintSystem& sys, const GramData& q,
                                                   const std::vector<WeightedSos>& q_terms,
                                                   const std::vector<MPoly>& p_terms) {
    if (q.basis.empty()) throw std::invalid_argument("empty basis");
    const std::size_t n = q.basis.front().size();
    if (n != sys.n) throw VariableCountMismatch(sys.n, n);
    std::uint32_t r = 0;
    for (const auto& b : q.basis) r = std::max(r, weight(b));
    if (q.basis != monomial_basis(n, r)) throw std::invalid_argument("Gram basis must be all monomials of weight <= r");
    if (q_terms.size() != sys.G.size() || p_terms.size() != sys.F.size())
        throw std::invalid_argument("multiplier count does not match the system");
    if (sys.box_begin + n != sys.G.size()) throw std::invalid_argument("system lacks box bounds");
    for (std::size_t i = 0; i < n; ++i)
        if (!(sys.G[sys.box_begin + i] == box_polynomial(n, i, sys.omega_sq)))
            throw std::invalid_argument("G[" + std::to_string(sys.box_begin + i) + "] is not the box bound");

    const DeltaBound db = delta_bound(sys.omega_sq, r, n);
    Matrix shifted = q.Q;
    const Rational half_inv = 1 / (2 * db.delta);
    for (std::size_t a = 0; a < shifted.rows(); ++a) shifted(a, a) += half_inv;
    const LdlFactors ldl = ldl_decompose(shifted);

    WeightedSosCertificate cert;
    cert.target = -1;
    for (std::size_t i = 0; i < q.basis.size(); ++i) {
        MPoly s(n);
        for (std::size_t a = i; a < q.basis.size(); ++a) s.add_term(q.basis[a], ldl.lower(a, i));
        cert.q0.push_back({2 * ldl.diagonal[i], std::move(s)});
    }
    cert.q = q_terms;
    for (auto& block : cert.q)
        for (auto& t : block) t.gamma *= 2;
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& t : db.membership[i]) cert.q[sys.box_begin + i].push_back({t.gamma / db.delta, t.s});
    cert.p = p_terms;
    for (auto& p : cert.p) p *= Rational(2);
    return cert;
}

// ---- text formats -----------------------------------------------------------

namespace detail {

inline Monomial parse_monomial(std::string_view text, std::size_t n) {
    text = trim(text);
    if (text.size() < 2 || text.front() != '[' || text.back() != ']') throw ParseError("bad monomial '" + std::string(text) + "'");
    text = text.substr(1, text.size() - 2);
    Monomial m;
    while (!trim(text).empty()) {
        std::size_t comma = text.find(',');
        std::string_view part = trim(text.substr(0, comma));
        Integer e = parse_integer(part);
        if (e < 0 || !e.fits_uint_p()) throw ParseError("bad exponent '" + std::string(part) + "'");
        m.push_back(static_cast<std::uint32_t>(e.get_ui()));
        if (comma == std::string_view::npos) break;
        text = text.substr(comma + 1);
    }
    if (m.size() != n) throw ParseError("monomial has " + std::to_string(m.size()) + " exponents, expected " + std::to_string(n));
    return m;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(';', start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline void parse_terms_into(MPoly& p, std::span<const std::string_view> fields) {
    if (fields.size() == 1 && fields[0] == "0") return;
    for (auto f : fields) {
        std::size_t eq = f.find('=');
        if (eq == std::string_view::npos) throw ParseError("term without '=': '" + std::string(f) + "'");
        p.add_term(parse_monomial(f.substr(0, eq), p.nvars()), parse_rational(f.substr(eq + 1)));
    }
}

}  // namespace detail

/// `[e1,...,en]=a//b ; ...` or `0`.
inline MPoly parse_mpoly(std::string_view text, std::size_t n) {
    MPoly p(n);
    auto fields = detail::split_fields(text);
    detail::parse_terms_into(p, fields);
    return p;
}

inline std::string format_weighted_square(const WeightedSquare& t) { return to_string(t.gamma) + " ; " + to_string(t.s); }

/// Line-oriented format:
///   nvars <n>
///   shape <#G> <#F>
///   target <a//b>
///   q0 <count>            followed by <count> lines `gamma ; [e]=c ; ...`
///   q <j> <count>         likewise, for each inequality with a nonempty multiplier
///   p <i>                 followed by one polynomial line, for each nonzero p_i
inline void write_sos_certificate(std::ostream& out, const WeightedSosCertificate& cert, std::size_t n) {
    out << "nvars " << n << "\nshape " << cert.q.size() << ' ' << cert.p.size() << "\ntarget " << to_string(cert.target)
        << "\nq0 " << cert.q0.size() << '\n';
    for (const auto& t : cert.q0) out << format_weighted_square(t) << '\n';
    for (std::size_t j = 0; j < cert.q.size(); ++j) {
        if (cert.q[j].empty()) continue;
        out << "q " << j << ' ' << cert.q[j].size() << '\n';
        for (const auto& t : cert.q[j]) out << format_weighted_square(t) << '\n';
    }
    for (std::size_t i = 0; i < cert.p.size(); ++i) {
        if (cert.p[i].is_zero()) continue;
        out << "p " << i << '\n' << to_string(cert.p[i]) << '\n';
    }
}

namespace detail {

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    // Next non-empty, non-comment line; false at end of input.
    bool next(std::string& line) {
        while (std::getline(in_, line)) {
            ++number_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            auto t = trim(line);
            if (t.empty() || t.front() == '#') continue;
            line = std::string(t);
            return true;
        }
        return false;
    }

    std::string require(const char* what) {
        std::string line;
        if (!next(line)) throw ParseError(std::string("unexpected end of input, expected ") + what, number_);
        return line;
    }

    std::size_t line() const noexcept { return number_; }

private:
    std::istream& in_;
    std::size_t number_ = 0;
};

inline std::size_t parse_count(std::istringstream& ss, const LineReader& r) {
    long long v = -1;
    if (!(ss >> v) || v < 0) throw ParseError("expected a non-negative count", r.line());
    return static_cast<std::size_t>(v);
}

inline WeightedSquare parse_weighted_square(std::string_view line, std::size_t n) {
    auto fields = split_fields(line);
    WeightedSquare t{parse_rational(fields[0]), MPoly(n)};
    parse_terms_into(t.s, std::span<const std::string_view>(fields).subspan(1));
    return t;
}

template <class F>
auto with_line(const LineReader& r, F&& f) {
    try {
        return f();
    } catch (const ParseError& e) {
        if (e.line() != 0) throw;
        throw ParseError(e.what(), r.line());
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), r.line());
    } catch (const VariableCountMismatch& e) {
        throw ParseError(e.what(), r.line());
    }
}

}  // namespace detail

inline WeightedSosCertificate read_sos_certificate(std::istream& in, std::size_t* nvars = nullptr) {
    detail::LineReader r(in);
    WeightedSosCertificate cert;
    std::size_t n = 0;
    bool have_n = false, have_shape = false;
    std::string line;
    while (r.next(line)) {
        std::istringstream ss(line);
        std::string key;
        ss >> key;
        if (key == "nvars") {
            n = detail::parse_count(ss, r);
            have_n = true;
        } else if (key == "shape") {
            cert.q.assign(detail::parse_count(ss, r), {});
            cert.p.assign(detail::parse_count(ss, r), MPoly(n));
            have_shape = true;
        } else if (key == "target") {
            std::string value;
            ss >> value;
            cert.target = detail::with_line(r, [&] { return parse_rational(value); });
        } else if (key == "q0" || key == "q") {
            if (!have_n || !have_shape) throw ParseError("nvars and shape must precede blocks", r.line());
            WeightedSos* block = &cert.q0;
            if (key == "q") {
                std::size_t j = detail::parse_count(ss, r);
                if (j >= cert.q.size()) throw ParseError("inequality index out of range", r.line());
                block = &cert.q[j];
            }
            std::size_t count = detail::parse_count(ss, r);
            for (std::size_t t = 0; t < count; ++t) {
                std::string body = r.require("a weighted square");
                block->push_back(detail::with_line(r, [&] { return detail::parse_weighted_square(body, n); }));
            }
        } else if (key == "p") {
            if (!have_n || !have_shape) throw ParseError("nvars and shape must precede blocks", r.line());
            std::size_t i = detail::parse_count(ss, r);
            if (i >= cert.p.size()) throw ParseError("equality index out of range", r.line());
            std::string body = r.require("a polynomial");
            cert.p[i] = detail::with_line(r, [&] { return parse_mpoly(body, n); });
        } else {
            throw ParseError("unknown record '" + key + "'", r.line());
        }
    }
    if (!have_n || !have_shape) throw ParseError("missing nvars or shape header", r.line());
    if (nvars) *nvars = n;
    return cert;
}

/// Line-oriented format:
///   nvars <n>
///   omega_sq <a//b>
///   alpha_star <a//b>
///   eq <poly>       one per equality, in order
///   ineq <poly>     one per inequality, in order
///   box_begin <j>
inline void write_constraint_system(std::ostream& out, const ConstraintSystem& sys) {
    out << "nvars " << sys.n << "\nomega_sq " << to_string(sys.omega_sq) << "\nalpha_star " << to_string(sys.alpha_star)
        << '\n';
    for (const auto& f : sys.F) out << "eq " << to_string(f) << '\n';
    for (const auto& g : sys.G) out << "ineq " << to_string(g) << '\n';
    out << "box_begin " << sys.box_begin << '\n';
}

inline ConstraintSystem read_constraint_system(std::istream& in) {
    detail::LineReader r(in);
    ConstraintSystem sys;
    bool have_n = false, have_box = false;
    std::string line;
    while (r.next(line)) {
        std::size_t sp = line.find(' ');
        std::string key = line.substr(0, sp);
        std::string_view rest = sp == std::string::npos ? std::string_view{} : std::string_view(line).substr(sp + 1);
        if (key == "nvars") {
            std::istringstream ss{std::string(rest)};
            sys.n = detail::parse_count(ss, r);
            have_n = true;
        } else if (key == "omega_sq") {
            sys.omega_sq = detail::with_line(r, [&] { return parse_rational(rest); });
        } else if (key == "alpha_star") {
            sys.alpha_star = detail::with_line(r, [&] { return parse_rational(rest); });
        } else if (key == "eq" || key == "ineq") {
            if (!have_n) throw ParseError("nvars must come first", r.line());
            MPoly p = detail::with_line(r, [&] { return parse_mpoly(rest, sys.n); });
            (key == "eq" ? sys.F : sys.G).push_back(std::move(p));
        } else if (key == "box_begin") {
            std::istringstream ss{std::string(rest)};
            sys.box_begin = detail::parse_count(ss, r);
            have_box = true;
        } else {
            throw ParseError("unknown record '" + key + "'", r.line());
        }
    }
    if (!have_n) throw ParseError("missing nvars", r.line());
    if (!have_box) sys.box_begin = sys.G.size();
    return sys;
}

}  // namespace shady

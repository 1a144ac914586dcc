#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "shady/errors.hpp"
#include "shady/rational.hpp"

namespace shady {

/// Exponent multi-index; its length is the variable count.
using Monomial = std::vector<std::uint32_t>;

inline std::uint32_t weight(const Monomial& m) { return std::accumulate(m.begin(), m.end(), std::uint32_t{0}); }

inline Monomial operator+(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline std::string to_string(const Monomial& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(m[i]);
    }
    return out + "]";
}

/// Sparse polynomial over Q in a fixed number of variables. Terms are kept in
/// lexicographic order of their exponent tuples and never hold a zero coefficient.
class MPoly {
public:
    using Terms = std::map<Monomial, Rational>;

    explicit MPoly(std::size_t nvars = 0) : nvars_(nvars) {}

    static MPoly constant(std::size_t nvars, const Rational& c) {
        MPoly p(nvars);
        p.add_term(Monomial(nvars, 0), c);
        return p;
    }

    static MPoly variable(std::size_t nvars, std::size_t index) {
        Monomial m(nvars, 0);
        m.at(index) = 1;
        return monomial(std::move(m));
    }

    static MPoly monomial(Monomial exponents, const Rational& coefficient = 1) {
        MPoly p(exponents.size());
        p.add_term(std::move(exponents), coefficient);
        return p;
    }

    std::size_t nvars() const noexcept { return nvars_; }
    const Terms& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    std::uint32_t degree() const {
        std::uint32_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, weight(m));
        return d;
    }

    void add_term(Monomial m, const Rational& c) {
        if (m.size() != nvars_) throw VariableCountMismatch(nvars_, m.size());
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(std::move(m), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    MPoly& operator+=(const MPoly& o) {
        check(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }

    MPoly& operator-=(const MPoly& o) {
        check(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    MPoly& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
        } else {
            for (auto& [m, c] : terms_) c *= s;
        }
        return *this;
    }

    /// this += factor * a * b, without materialising the product.
    void add_product(const MPoly& a, const MPoly& b, const Rational& factor = 1) {
        check(a);
        check(b);
        if (factor == 0) return;
        Monomial m(nvars_);
        for (const auto& [ma, ca] : a.terms_) {
            Rational fa = factor * ca;
            for (const auto& [mb, cb] : b.terms_) {
                for (std::size_t i = 0; i < nvars_; ++i) m[i] = ma[i] + mb[i];
                add_term(m, fa * cb);
            }
        }
    }

    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator-(MPoly a) { return a *= Rational(-1); }
    friend MPoly operator*(const Rational& s, MPoly a) { return a *= s; }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r(a.nvars_);
        r.add_product(a, b);
        return r;
    }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    friend bool operator==(const MPoly& a, const MPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    Rational evaluate(std::span<const Rational> point) const {
        if (point.size() != nvars_) throw VariableCountMismatch(nvars_, point.size());
        Rational total = 0;
        for (const auto& [m, c] : terms_) {
            Rational t = c;
            for (std::size_t i = 0; i < nvars_; ++i)
                for (std::uint32_t e = 0; e < m[i]; ++e) t *= point[i];
            total += t;
        }
        return total;
    }

private:
    void check(const MPoly& o) const {
        if (o.nvars_ != nvars_) throw VariableCountMismatch(nvars_, o.nvars_);
    }

    std::size_t nvars_;
    Terms terms_;
};

/// Text form `[e1,...,en]=a//b ; ...`, or `0` for the zero polynomial.
inline std::string to_string(const MPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        if (!first) out += " ; ";
        first = false;
        out += to_string(m) + "=" + to_string(c);
    }
    return out;
}

/// Sum of coef_i * factor_i, expanded exactly.
inline MPoly poly_expand_weighted_sum(std::span<const std::pair<MPoly, MPoly>> terms) {
    if (terms.empty()) return MPoly(0);
    const std::size_t n = terms.front().first.nvars();
    MPoly out(n);
    for (const auto& [coef, factor] : terms) {
        if (coef.nvars() != n) throw VariableCountMismatch(n, coef.nvars());
        if (factor.nvars() != n) throw VariableCountMismatch(n, factor.nvars());
        out.add_product(coef, factor);
    }
    return out;
}

/// All multi-indices of weight <= r in n variables, lexicographically ascending.
inline std::vector<Monomial> monomial_basis(std::size_t n, std::uint32_t r) {
    std::vector<Monomial> out;
    Monomial cur(n, 0);
    // Depth-first over coordinates in increasing exponent order yields lex order.
    auto rec = [&](auto&& self, std::size_t i, std::uint32_t budget) -> void {
        if (i == n) {
            out.push_back(cur);
            return;
        }
        for (std::uint32_t e = 0; e <= budget; ++e) {
            cur[i] = e;
            self(self, i + 1, budget - e);
        }
        cur[i] = 0;
    };
    rec(rec, 0, r);
    return out;
}

}  // namespace shady

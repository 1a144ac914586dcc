#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>
#include <utility>

#include "shady/errors.hpp"

namespace shady {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) {
        throw std::domain_error("zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational frac(long num, long den) { return make_rational(Integer(num), Integer(den)); }

/// Canonical text form `a//b`; the denominator is always printed.
inline std::string to_string(const Rational& q) {
    return q.get_num().get_str() + "//" + q.get_den().get_str();
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline Integer parse_integer(std::string_view s) {
    std::string_view digits = s;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    if (digits.empty()) throw ParseError("empty integer");
    for (char ch : digits) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) {
            throw ParseError("not an integer: '" + std::string(s) + "'");
        }
    }
    std::string text(s.front() == '+' ? s.substr(1) : s);
    return Integer(text, 10);
}

}  // namespace detail

/// Parses `a//b`, `a/b` or a bare integer. Decimal notation is rejected so that
/// no certified quantity ever passes through floating point.
inline Rational parse_rational(std::string_view text) {
    std::string_view s = detail::trim(text);
    if (s.empty()) throw ParseError("empty rational");
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        return Rational(detail::parse_integer(s));
    }
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!den.empty() && den.front() == '/') den.remove_prefix(1);
    Integer d = detail::parse_integer(den);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    return make_rational(detail::parse_integer(num), d);
}

/// Largest k >= 0 with holds(k), for a predicate that is true at 0 and monotone.
template <class Pred>
Integer largest_true(Pred holds) {
    Integer lo = 0;
    Integer hi = 1;
    while (holds(hi)) {
        lo = hi;
        hi *= 2;
    }
    while (hi - lo > 1) {
        Integer mid = (lo + hi) / 2;
        if (holds(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

/// Stern-Brocot bracketing of a positive threshold t described by the monotone
/// predicate at_or_above(p, q) <=> p/q >= t. Returns the largest fraction below t
/// and the smallest fraction at or above t, both with denominator <= max_den.
template <class Pred>
std::pair<Rational, Rational> bracket_threshold(Pred at_or_above, const Integer& max_den) {
    Integer a = 0, b = 1;  // lower: predicate false
    Integer c = 1, d = 0;  // upper: predicate true (1/0 is +infinity)
    for (;;) {
        Integer k = largest_true([&](const Integer& k) {
            Integer p = a + k * c;
            Integer q = b + k * d;
            return q <= max_den && !at_or_above(p, q);
        });
        if (k > 0) {
            a += k * c;
            b += k * d;
        }
        Integer j = largest_true([&](const Integer& j) {
            Integer p = c + j * a;
            Integer q = d + j * b;
            return q <= max_den && at_or_above(p, q);
        });
        if (j > 0) {
            c += j * a;
            d += j * b;
        }
        if (k == 0 && j == 0) break;
    }
    if (d == 0) {
        // max_den == 0 cannot happen for valid input; keep the interface total.
        throw std::domain_error("no upper approximation within the denominator bound");
    }
    return {make_rational(a, b), make_rational(c, d)};
}

/// Smallest p/q with q <= max_den and (p/q)^2 >= x.
inline Rational sqrt_upper(const Rational& x, const Integer& max_den) {
    if (x < 0) throw std::domain_error("sqrt of a negative rational");
    if (x == 0) return Rational(0);
    const Integer& xn = x.get_num();
    const Integer& xd = x.get_den();
    auto ge = [&](const Integer& p, const Integer& q) { return p * p * xd >= xn * q * q; };
    return bracket_threshold(ge, max_den).second;
}

/// Largest p/q with q <= max_den and (p/q)^2 <= x (strictly below sqrt(x) unless exact).
inline Rational sqrt_lower(const Rational& x, const Integer& max_den) {
    if (x < 0) throw std::domain_error("sqrt of a negative rational");
    if (x == 0) return Rational(0);
    const Integer& xn = x.get_num();
    const Integer& xd = x.get_den();
    auto ge = [&](const Integer& p, const Integer& q) { return p * p * xd >= xn * q * q; };
    auto [lo, hi] = bracket_threshold(ge, max_den);
    if (hi * hi == x) return hi;
    return lo;
}

/// Best rational approximation of a (finite) double with denominator <= max_den.
/// Ties go to the smaller denominator. Deterministic.
inline Rational round_to_rational(double value, const Integer& max_den) {
    if (max_den < 1) throw std::domain_error("max_den must be >= 1");
    Rational exact(value);  // exact dyadic value
    if (exact == 0) return Rational(0);
    bool negative = exact < 0;
    Rational target = negative ? Rational(-exact) : exact;
    const Integer& tn = target.get_num();
    const Integer& td = target.get_den();
    auto ge = [&](const Integer& p, const Integer& q) { return p * td >= tn * q; };
    auto [lo, hi] = bracket_threshold(ge, max_den);
    Rational dlo = target - lo;
    Rational dhi = hi - target;
    Rational best;
    if (dlo < dhi) {
        best = lo;
    } else if (dhi < dlo) {
        best = hi;
    } else {
        best = lo.get_den() <= hi.get_den() ? lo : hi;
    }
    return negative ? Rational(-best) : best;
}

}  // namespace shady

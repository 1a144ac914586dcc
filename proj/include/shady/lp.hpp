#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "shady/matrix.hpp"
#include "shady/rational.hpp"

namespace shady {

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <class T>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
    static int sign(const Rational& v) { return sgn(v); }
};

template <>
struct ScalarOps<double> {
    static constexpr double eps = 1e-9;
    static int sign(double v) { return v > eps ? 1 : (v < -eps ? -1 : 0); }
};

template <class T>
struct StandardFormResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<T> x;         ///< primal solution (size n)
    std::vector<T> duals;     ///< simplex multipliers pi with A^T pi <= c, b^T pi = c^T x
    T objective{};
    std::vector<std::size_t> basis;  ///< basic column per row; >= n marks an artificial
};

namespace detail {

// Dense tableau for  min c^T x,  A x = b,  x >= 0  with one artificial column per row.
template <class T>
class Tableau {
public:
    Tableau(const std::vector<std::vector<T>>& a, const std::vector<T>& b)
        : m_(a.size()), n_(a.empty() ? 0 : a.front().size()), t_(m_, std::vector<T>(n_ + m_)), rhs_(m_),
          sign_(m_, 1), basis_(m_), reduced_(n_ + m_) {
        for (std::size_t i = 0; i < m_; ++i) {
            if (a[i].size() != n_) throw std::invalid_argument("ragged constraint matrix");
            sign_[i] = ScalarOps<T>::sign(b[i]) < 0 ? -1 : 1;
            for (std::size_t j = 0; j < n_; ++j) t_[i][j] = sign_[i] < 0 ? T(-a[i][j]) : a[i][j];
            t_[i][n_ + i] = 1;
            rhs_[i] = sign_[i] < 0 ? T(-b[i]) : b[i];
            basis_[i] = n_ + i;
        }
    }

    std::size_t rows() const { return m_; }
    std::size_t structural() const { return n_; }

    // Phase one: minimise the sum of artificials. Returns false when infeasible.
    bool phase_one() {
        for (std::size_t j = 0; j < n_ + m_; ++j) {
            T d = 0;
            if (j < n_)
                for (std::size_t i = 0; i < m_; ++i) d -= t_[i][j];
            reduced_[j] = d;
        }
        cost_.assign(n_ + m_, T(0));
        for (std::size_t j = n_; j < n_ + m_; ++j) cost_[j] = 1;
        if (run(n_ + m_) != LpStatus::Optimal) throw std::logic_error("phase one cannot be unbounded");
        T infeasibility = 0;
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] >= n_) infeasibility += rhs_[i];
        if (ScalarOps<T>::sign(infeasibility) > 0) return false;
        // Drive zero-level artificials out where a structural column can replace them.
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (ScalarOps<T>::sign(t_[i][j]) != 0) {
                    pivot(i, j);
                    break;
                }
            }
        }
        return true;
    }

    LpStatus phase_two(const std::vector<T>& c) {
        cost_.assign(n_ + m_, T(0));
        for (std::size_t j = 0; j < n_; ++j) cost_[j] = c[j];
        for (std::size_t j = 0; j < n_ + m_; ++j) {
            T d = cost_[j];
            for (std::size_t i = 0; i < m_; ++i) {
                const T& cb = cost_[basis_[i]];
                if (ScalarOps<T>::sign(cb) != 0) d -= cb * t_[i][j];
            }
            reduced_[j] = d;
        }
        return run(n_);
    }

    StandardFormResult<T> result(LpStatus status) const {
        StandardFormResult<T> r;
        r.status = status;
        r.basis = basis_;
        r.x.assign(n_, T(0));
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_) r.x[basis_[i]] = rhs_[i];
        r.duals.assign(m_, T(0));
        for (std::size_t i = 0; i < m_; ++i) {
            T pi = -reduced_[n_ + i];
            r.duals[i] = sign_[i] < 0 ? T(-pi) : pi;
        }
        T obj = 0;
        for (std::size_t j = 0; j < n_; ++j) obj += cost_[j] * r.x[j];
        r.objective = obj;
        return r;
    }

private:
    // Bland's rule; only columns below `allowed` may enter.
    LpStatus run(std::size_t allowed) {
        const std::size_t cap = 50000;
        for (std::size_t iter = 0; iter < cap; ++iter) {
            std::size_t enter = allowed;
            for (std::size_t j = 0; j < allowed; ++j) {
                if (ScalarOps<T>::sign(reduced_[j]) < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == allowed) return LpStatus::Optimal;
            std::size_t leave = m_;
            T best{};
            for (std::size_t i = 0; i < m_; ++i) {
                if (ScalarOps<T>::sign(t_[i][enter]) <= 0) continue;
                T ratio = rhs_[i] / t_[i][enter];
                if (leave == m_) {
                    leave = i;
                    best = ratio;
                    continue;
                }
                int cmp = ScalarOps<T>::sign(T(ratio - best));
                if (cmp < 0 || (cmp == 0 && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m_) return LpStatus::Unbounded;
            pivot(leave, enter);
        }
        throw std::runtime_error("simplex iteration cap reached");
    }

    void pivot(std::size_t r, std::size_t c) {
        const std::size_t width = n_ + m_;
        T inv = T(1) / t_[r][c];
        for (std::size_t j = 0; j < width; ++j)
            if (t_[r][j] != T(0)) t_[r][j] *= inv;
        rhs_[r] *= inv;
        t_[r][c] = 1;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            T f = t_[i][c];
            if (f == T(0)) continue;
            for (std::size_t j = 0; j < width; ++j)
                if (t_[r][j] != T(0)) t_[i][j] -= f * t_[r][j];
            rhs_[i] -= f * rhs_[r];
            t_[i][c] = 0;
        }
        T f = reduced_[c];
        if (f != T(0)) {
            for (std::size_t j = 0; j < width; ++j)
                if (t_[r][j] != T(0)) reduced_[j] -= f * t_[r][j];
            reduced_[c] = 0;
        }
        basis_[r] = c;
    }

    std::size_t m_, n_;
    std::vector<std::vector<T>> t_;
    std::vector<T> rhs_;
    std::vector<int> sign_;
    std::vector<std::size_t> basis_;
    std::vector<T> reduced_;
    std::vector<T> cost_;
};

}  // namespace detail

/// Two-phase primal simplex with Bland's rule for  min c^T x  s.t.  A x = b, x >= 0.
/// Exact for T = Rational; the double instantiation is only used as a warm start.
/// An empty cost vector asks for feasibility only.
template <class T>
StandardFormResult<T> solve_standard_form(const std::vector<std::vector<T>>& a, const std::vector<T>& b,
                                          const std::vector<T>& c = {}) {
    if (a.size() != b.size()) throw std::invalid_argument("row count mismatch");
    detail::Tableau<T> tab(a, b);
    if (!tab.phase_one()) {
        StandardFormResult<T> r;
        r.status = LpStatus::Infeasible;
        return r;
    }
    std::vector<T> cost = c.empty() ? std::vector<T>(tab.structural(), T(0)) : c;
    if (cost.size() != tab.structural()) throw std::invalid_argument("cost size mismatch");
    LpStatus status = tab.phase_two(cost);
    return tab.result(status);
}

enum class Relation { LessEqual, Equal, GreaterEqual };

struct LpRow {
    Vector coefficients;
    Relation relation = Relation::LessEqual;
    Rational rhs = 0;
};

/// General form: minimise objective^T x over rows, with optionally free variables.
struct LinearProgram {
    std::size_t num_vars = 0;
    Vector objective;  ///< empty means feasibility only
    std::vector<LpRow> rows;
    std::vector<bool> is_free;  ///< empty means all variables are >= 0
};

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Vector x;
    Rational objective = 0;
};

inline LpSolution solve_lp(const LinearProgram& lp) {
    const std::size_t n = lp.num_vars;
    std::vector<bool> free_var = lp.is_free.empty() ? std::vector<bool>(n, false) : lp.is_free;
    if (free_var.size() != n) throw std::invalid_argument("is_free size mismatch");
    // Column layout: x+ (n), x- for free vars, one slack per inequality.
    std::vector<std::size_t> neg_col(n, SIZE_MAX);
    std::size_t cols = n;
    for (std::size_t j = 0; j < n; ++j)
        if (free_var[j]) neg_col[j] = cols++;
    std::vector<std::size_t> slack_col(lp.rows.size(), SIZE_MAX);
    for (std::size_t i = 0; i < lp.rows.size(); ++i)
        if (lp.rows[i].relation != Relation::Equal) slack_col[i] = cols++;

    std::vector<Vector> a(lp.rows.size(), Vector(cols));
    Vector b(lp.rows.size());
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        const auto& row = lp.rows[i];
        if (row.coefficients.size() != n) throw std::invalid_argument("row length mismatch");
        for (std::size_t j = 0; j < n; ++j) {
            a[i][j] = row.coefficients[j];
            if (free_var[j]) a[i][neg_col[j]] = -row.coefficients[j];
        }
        if (row.relation == Relation::LessEqual) a[i][slack_col[i]] = 1;
        if (row.relation == Relation::GreaterEqual) a[i][slack_col[i]] = -1;
        b[i] = row.rhs;
    }
    Vector c;
    if (!lp.objective.empty()) {
        if (lp.objective.size() != n) throw std::invalid_argument("objective size mismatch");
        c.assign(cols, Rational(0));
        for (std::size_t j = 0; j < n; ++j) {
            c[j] = lp.objective[j];
            if (free_var[j]) c[neg_col[j]] = -lp.objective[j];
        }
    }
    auto res = solve_standard_form<Rational>(a, b, c);
    LpSolution out;
    out.status = res.status;
    if (res.status != LpStatus::Optimal) return out;
    out.x.assign(n, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
        out.x[j] = res.x[j];
        if (free_var[j]) out.x[j] -= res.x[neg_col[j]];
    }
    if (!lp.objective.empty()) out.objective = dot(lp.objective, out.x);
    return out;
}

}  // namespace shady

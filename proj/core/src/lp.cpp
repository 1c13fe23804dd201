#include "paratile/lp.hpp"

namespace paratile {

void LpProblem::add_le(Vec row, Rational rhs) {
    a_le.push_back(std::move(row));
    b_le.push_back(std::move(rhs));
}

void LpProblem::add_ge(Vec row, Rational rhs) { add_le(-row, -rhs); }

void LpProblem::add_eq(Vec row, Rational rhs) {
    a_eq.push_back(std::move(row));
    b_eq.push_back(std::move(rhs));
}

namespace {

class Tableau {
public:
    // rows_[i] has ncols_ + 1 entries; the last one is the right-hand side.
    Mat rows_;
    Vec cost_;  // reduced costs, last entry = -objective value
    std::vector<std::size_t> basis_;
    std::size_t ncols_ = 0;

    void pivot(std::size_t r, std::size_t c) {
        Rational inv = 1 / rows_[r][c];
        for (auto& x : rows_[r])
            if (sgn(x) != 0) x *= inv;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == r || sgn(rows_[i][c]) == 0) continue;
            Rational f = rows_[i][c];
            for (std::size_t j = 0; j <= ncols_; ++j)
                if (sgn(rows_[r][j]) != 0) rows_[i][j] -= f * rows_[r][j];
        }
        if (sgn(cost_[c]) != 0) {
            Rational f = cost_[c];
            for (std::size_t j = 0; j <= ncols_; ++j)
                if (sgn(rows_[r][j]) != 0) cost_[j] -= f * rows_[r][j];
        }
        basis_[r] = c;
    }

    // Minimizes the current cost row over columns allowed by `usable`. Returns false if unbounded.
    bool run(const std::vector<bool>& usable) {
        for (;;) {
            std::size_t enter = ncols_;
            for (std::size_t j = 0; j < ncols_; ++j)
                if (usable[j] && sgn(cost_[j]) < 0) {
                    enter = j;
                    break;
                }
            if (enter == ncols_) return true;
            std::size_t leave = rows_.size();
            Rational best;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (sgn(rows_[i][enter]) <= 0) continue;
                Rational ratio = rows_[i][ncols_] / rows_[i][enter];
                if (leave == rows_.size() || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == rows_.size()) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

LpResult solve_lp(const LpProblem& p) {
    const std::size_t n = p.nvars;
    const std::size_t m1 = p.a_le.size();
    const std::size_t m2 = p.a_eq.size();
    const std::size_t m = m1 + m2;
    if (p.b_le.size() != m1 || p.b_eq.size() != m2) throw InvalidInput("solve_lp: rhs size mismatch");
    // Columns: x+ (n), x- (n), slack (m1), artificial (m).
    const std::size_t art0 = 2 * n + m1;
    Tableau t;
    t.ncols_ = art0 + m;
    t.rows_.assign(m, Vec(t.ncols_ + 1, Rational(0)));
    t.basis_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Vec& a = i < m1 ? p.a_le[i] : p.a_eq[i - m1];
        Rational rhs = i < m1 ? p.b_le[i] : p.b_eq[i - m1];
        if (a.size() != n) throw InvalidInput("solve_lp: row size mismatch");
        Vec& row = t.rows_[i];
        for (std::size_t j = 0; j < n; ++j) {
            row[j] = a[j];
            row[n + j] = -a[j];
        }
        if (i < m1) row[2 * n + i] = 1;
        row[t.ncols_] = rhs;
        if (sgn(rhs) < 0)
            for (auto& x : row) x = -x;
        row[art0 + i] = 1;
        t.basis_[i] = art0 + i;
    }
    // Phase 1: minimize the sum of artificials.
    t.cost_.assign(t.ncols_ + 1, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= t.ncols_; ++j)
            if (j < art0 || j == t.ncols_) t.cost_[j] -= t.rows_[i][j];
    std::vector<bool> usable(t.ncols_, true);
    t.run(usable);
    LpResult result;
    if (sgn(t.cost_[t.ncols_]) != 0) {
        result.status = LpStatus::infeasible;
        return result;
    }
    // Drive artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < t.rows_.size();) {
        if (t.basis_[i] < art0) {
            ++i;
            continue;
        }
        std::size_t c = art0;
        for (std::size_t j = 0; j < art0; ++j)
            if (sgn(t.rows_[i][j]) != 0) {
                c = j;
                break;
            }
        if (c == art0) {
            t.rows_.erase(t.rows_.begin() + static_cast<long>(i));
            t.basis_.erase(t.basis_.begin() + static_cast<long>(i));
            continue;
        }
        t.pivot(i, c);
        ++i;
    }
    for (std::size_t j = art0; j < t.ncols_; ++j) usable[j] = false;
    // Phase 2: minimize -objective.
    t.cost_.assign(t.ncols_ + 1, Rational(0));
    if (!p.objective.empty()) {
        if (p.objective.size() != n) throw InvalidInput("solve_lp: objective size mismatch");
        for (std::size_t j = 0; j < n; ++j) {
            t.cost_[j] = -p.objective[j];
            t.cost_[n + j] = p.objective[j];
        }
        for (std::size_t i = 0; i < t.rows_.size(); ++i) {
            Rational cb = t.cost_[t.basis_[i]];
            if (sgn(cb) == 0) continue;
            for (std::size_t j = 0; j <= t.ncols_; ++j)
                if (sgn(t.rows_[i][j]) != 0) t.cost_[j] -= cb * t.rows_[i][j];
        }
        if (!t.run(usable)) {
            result.status = LpStatus::unbounded;
            return result;
        }
    }
    Vec y(t.ncols_, Rational(0));
    for (std::size_t i = 0; i < t.rows_.size(); ++i) y[t.basis_[i]] = t.rows_[i][t.ncols_];
    result.x.assign(n, Rational(0));
    for (std::size_t j = 0; j < n; ++j) result.x[j] = y[j] - y[n + j];
    result.value = p.objective.empty() ? Rational(0) : dot(p.objective, result.x);
    result.status = LpStatus::optimal;
    return result;
}

bool lp_feasible(const LpProblem& problem, Vec* witness) {
    LpProblem q = problem;
    q.objective.clear();
    LpResult r = solve_lp(q);
    if (r.status != LpStatus::optimal) return false;
    if (witness) *witness = r.x;
    return true;
}

bool strict_homogeneous_feasible(const Mat& strict_lt, const Mat& equalities, std::size_t nvars,
                                 Vec* witness) {
    LpProblem p;
    p.nvars = nvars;
    for (const auto& row : strict_lt) p.add_le(row, -1);
    for (const auto& row : equalities) p.add_eq(row, 0);
    if (strict_lt.empty()) {
        // Any x in the subspace works, including 0; callers asking for a nonzero point handle that.
        if (witness) *witness = zero_vec(nvars);
        return true;
    }
    return lp_feasible(p, witness);
}

}  // namespace paratile

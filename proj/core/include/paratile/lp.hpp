#pragma once

#include "paratile/rational.hpp"

namespace paratile {

/// maximize objective·x  subject to  a_le x <= b_le,  a_eq x = b_eq,  x free.
/// An empty objective asks for feasibility only.
struct LpProblem {
    std::size_t nvars = 0;
    Mat a_le;
    Vec b_le;
    Mat a_eq;
    Vec b_eq;
    Vec objective;

    void add_le(Vec row, Rational rhs);
    void add_ge(Vec row, Rational rhs);
    void add_eq(Vec row, Rational rhs);
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    Vec x;
    Rational value;
};

/// Exact two-phase simplex with Bland's rule.
LpResult solve_lp(const LpProblem& problem);

/// Convenience wrapper: is the system feasible? Fills `witness` when it is.
bool lp_feasible(const LpProblem& problem, Vec* witness = nullptr);

/// Is there x with a x < 0 (all strict) and e x = 0? Homogeneous systems only.
/// Decided exactly as feasibility of a x <= -1, e x = 0.
bool strict_homogeneous_feasible(const Mat& strict_lt, const Mat& equalities, std::size_t nvars,
                                 Vec* witness = nullptr);

}  // namespace paratile

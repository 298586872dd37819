#pragma once

#include <cassert>
#include <vector>

#include "lvcap/rational.hpp"

namespace lvcap {

// Exact two-phase simplex over rationals, Bland's rule.
//
//   maximize c.x   subject to  A x <= b,  x >= 0
//
// b entries may be negative (phase 1 runs with artificial variables).
// Problem sizes here are tiny (a dozen rows, a few hundred columns), so a
// dense rational tableau is plenty.

struct LpResult {
    bool feasible = false;
    bool bounded = false;
    Rational value;
    std::vector<Rational> x; // structural variables only
};

class SimplexSolver {
public:
    LpResult solve_max(const std::vector<std::vector<Rational>>& A,
                       const std::vector<Rational>& b,
                       const std::vector<Rational>& c) {
        m_ = static_cast<int>(A.size());
        n_ = static_cast<int>(c.size());
        int cols = n_ + m_; // structural + slack
        art_begin_ = cols;
        rows_.assign(m_, {});
        rhs_.assign(m_, Rational(0));
        basis_.assign(m_, -1);

        int art_count = 0;
        for (int i = 0; i < m_; ++i)
            if (b[i] < Rational(0)) ++art_count;
        int total = cols + art_count;

        int next_art = cols;
        for (int i = 0; i < m_; ++i) {
            rows_[i].assign(total, Rational(0));
            bool neg = b[i] < Rational(0);
            for (int j = 0; j < n_; ++j)
                rows_[i][j] = neg ? -A[i][j] : A[i][j];
            rows_[i][n_ + i] = neg ? Rational(-1) : Rational(1);
            rhs_[i] = neg ? -b[i] : b[i];
            if (neg) {
                rows_[i][next_art] = Rational(1);
                basis_[i] = next_art++;
            } else {
                basis_[i] = n_ + i;
            }
        }
        total_ = total;

        LpResult res;
        if (art_count > 0) {
            obj_.assign(total_, Rational(0));
            obj_value_ = Rational(0);
            for (int j = art_begin_; j < total_; ++j) obj_[j] = Rational(-1);
            restore_invariant();
            run(/*allow_artificial=*/true);
            if (obj_value_ < Rational(0)) return res; // infeasible
            evict_artificials();
        }

        obj_.assign(total_, Rational(0));
        obj_value_ = Rational(0);
        for (int j = 0; j < n_; ++j) obj_[j] = c[j];
        restore_invariant();
        res.feasible = true;
        res.bounded = run(/*allow_artificial=*/false);
        if (!res.bounded) return res;
        res.value = obj_value_;
        res.x.assign(n_, Rational(0));
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < n_) res.x[basis_[i]] = rhs_[i];
        return res;
    }

private:
    void restore_invariant() {
        for (int i = 0; i < m_; ++i) {
            Rational f = obj_[basis_[i]];
            if (!f.is_zero()) {
                for (int j = 0; j < total_; ++j) obj_[j] -= f * rows_[i][j];
                obj_value_ += f * rhs_[i];
            }
        }
    }

    void pivot(int r, int jc) {
        Rational piv = rows_[r][jc];
        assert(!piv.is_zero());
        for (int j = 0; j < total_; ++j) rows_[r][j] /= piv;
        rhs_[r] /= piv;
        for (int i = 0; i < m_; ++i) {
            if (i == r) continue;
            Rational f = rows_[i][jc];
            if (f.is_zero()) continue;
            for (int j = 0; j < total_; ++j) rows_[i][j] -= f * rows_[r][j];
            rhs_[i] -= f * rhs_[r];
        }
        Rational f = obj_[jc];
        if (!f.is_zero()) {
            for (int j = 0; j < total_; ++j) obj_[j] -= f * rows_[r][j];
            obj_value_ += f * rhs_[r];
        }
        basis_[r] = jc;
    }

    // Returns false when the objective is unbounded.
    bool run(bool allow_artificial) {
        int limit = allow_artificial ? total_ : art_begin_;
        for (;;) {
            int enter = -1;
            for (int j = 0; j < limit; ++j)
                if (obj_[j] > Rational(0)) { enter = j; break; } // Bland: smallest index
            if (enter < 0) return true;
            int leave = -1;
            Rational best;
            for (int i = 0; i < m_; ++i) {
                if (rows_[i][enter] > Rational(0)) {
                    Rational ratio = rhs_[i] / rows_[i][enter];
                    if (leave < 0 || ratio < best ||
                        (ratio == best && basis_[i] < basis_[leave])) {
                        leave = i;
                        best = ratio;
                    }
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }

    void evict_artificials() {
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < art_begin_) continue;
            int jc = -1;
            for (int j = 0; j < art_begin_; ++j)
                if (!rows_[i][j].is_zero()) { jc = j; break; }
            if (jc >= 0) pivot(i, jc);
            // A fully zero row is redundant; the artificial stays basic at 0
            // and is simply never allowed to re-enter.
        }
    }

    int m_ = 0, n_ = 0, total_ = 0, art_begin_ = 0;
    std::vector<std::vector<Rational>> rows_;
    std::vector<Rational> rhs_;
    std::vector<int> basis_;
    std::vector<Rational> obj_;
    Rational obj_value_;
};

inline LpResult lp_max(const std::vector<std::vector<Rational>>& A,
                       const std::vector<Rational>& b,
                       const std::vector<Rational>& c) {
    SimplexSolver s;
    return s.solve_max(A, b, c);
}

} // namespace lvcap

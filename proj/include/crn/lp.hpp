#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace crn {

enum class LpStatus { optimal, infeasible, unbounded };

enum class LpSense : char { le = '<', eq = '=', ge = '>' };

struct LpRow {
    std::vector<double> a;
    LpSense sense = LpSense::le;
    double b = 0.0;
};

/// maximize c.x subject to the rows, x >= 0.
struct LinearProgram {
    int num_vars = 0;
    std::vector<double> objective;
    std::vector<LpRow> rows;

    void add_row(std::vector<double> a, LpSense sense, double b) {
        rows.push_back({std::move(a), sense, b});
    }
};

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    double objective = 0.0;
    std::vector<double> x;
    std::vector<double> dual;  // one multiplier per row (sign-normalized rows)
    int iterations = 0;
};

/// Dense two-phase primal simplex. Pivot selection follows Bland's rule
/// (lowest eligible index for both the entering and the leaving variable),
/// which rules out cycling on degenerate instances at the cost of speed —
/// the oracle's programs are small, so transparency wins.
class SimplexSolver {
public:
    explicit SimplexSolver(double tol = 1e-9) : tol_(tol) {}

    LpSolution solve(const LinearProgram& lp) {
        const int m = static_cast<int>(lp.rows.size());
        const int n = lp.num_vars;
        for (const auto& r : lp.rows)
            if (static_cast<int>(r.a.size()) != n)
                throw std::invalid_argument("LP row width does not match variable count");

        // Sign-normalize so every right-hand side is nonnegative.
        std::vector<std::vector<double>> A(m, std::vector<double>(n));
        std::vector<double> b(m);
        std::vector<LpSense> sense(m);
        for (int i = 0; i < m; ++i) {
            double flip = lp.rows[i].b < 0.0 ? -1.0 : 1.0;
            for (int j = 0; j < n; ++j) A[i][j] = flip * lp.rows[i].a[j];
            b[i] = flip * lp.rows[i].b;
            sense[i] = lp.rows[i].sense;
            if (flip < 0.0) {
                if (sense[i] == LpSense::le) sense[i] = LpSense::ge;
                else if (sense[i] == LpSense::ge) sense[i] = LpSense::le;
            }
        }

        // Column layout: structural, then one slack/surplus per inequality,
        // then one artificial per >=/= row.
        int cols = n;
        std::vector<int> slack_col(m, -1), art_col(m, -1), marker(m, -1);
        for (int i = 0; i < m; ++i)
            if (sense[i] != LpSense::eq) slack_col[i] = cols++;
        int first_art = cols;
        for (int i = 0; i < m; ++i)
            if (sense[i] != LpSense::le) art_col[i] = cols++;

        tab_.assign(m, std::vector<double>(cols + 1, 0.0));
        basis_.assign(m, -1);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) tab_[i][j] = A[i][j];
            tab_[i][cols] = b[i];
            if (slack_col[i] >= 0) tab_[i][slack_col[i]] = sense[i] == LpSense::le ? 1.0 : -1.0;
            if (art_col[i] >= 0) tab_[i][art_col[i]] = 1.0;
            basis_[i] = art_col[i] >= 0 ? art_col[i] : slack_col[i];
            marker[i] = sense[i] == LpSense::le ? slack_col[i] : art_col[i];
        }
        num_cols_ = cols;
        first_art_ = first_art;

        LpSolution sol;

        // Phase 1: drive the artificial variables to zero.
        if (first_art < cols) {
            std::vector<double> c1(cols, 0.0);
            for (int j = first_art; j < cols; ++j) c1[j] = -1.0;
            set_objective(c1);
            if (!iterate(sol.iterations, false)) throw std::logic_error("phase 1 unbounded");
            if (-zrow_[num_cols_] < -tol_) {
                sol.status = LpStatus::infeasible;
                return sol;
            }
            expel_artificials();
        }

        // Phase 2 on the real objective, artificials banned.
        std::vector<double> c2(cols, 0.0);
        for (int j = 0; j < n; ++j) c2[j] = lp.objective[j];
        set_objective(c2);
        if (!iterate(sol.iterations, true)) {
            sol.status = LpStatus::unbounded;
            return sol;
        }

        sol.status = LpStatus::optimal;
        sol.x.assign(n, 0.0);
        for (int i = 0; i < m; ++i)
            if (basis_[i] < n) sol.x[basis_[i]] = tab_[i][num_cols_];
        sol.objective = -zrow_[num_cols_];
        // Each row carries a column whose original coefficients are the unit
        // vector e_i, so its reduced cost is exactly -y_i.
        sol.dual.assign(m, 0.0);
        for (int i = 0; i < m; ++i) sol.dual[i] = -zrow_[marker[i]];
        return sol;
    }

private:
    // zrow_ holds the reduced costs and, in the last slot, minus the current
    // objective value; a single elimination rule then updates everything.
    void set_objective(const std::vector<double>& c) {
        cost_ = c;
        zrow_.assign(num_cols_ + 1, 0.0);
        for (int j = 0; j <= num_cols_; ++j) {
            double zj = 0.0;
            for (size_t i = 0; i < basis_.size(); ++i) zj += cost_[basis_[i]] * tab_[i][j];
            zrow_[j] = (j < num_cols_ ? c[j] : 0.0) - zj;
        }
    }

    bool iterate(int& iterations, bool ban_artificials) {
        const int m = static_cast<int>(tab_.size());
        for (;;) {
            int enter = -1;
            int limit = ban_artificials ? first_art_ : num_cols_;
            for (int j = 0; j < limit; ++j) {
                if (zrow_[j] > tol_) {
                    enter = j;
                    break;  // Bland: first improving column
                }
            }
            if (enter < 0) return true;

            int leave = -1;
            double best_ratio = 0.0;
            for (int i = 0; i < m; ++i) {
                if (tab_[i][enter] <= tol_) continue;
                double ratio = tab_[i][num_cols_] / tab_[i][enter];
                if (leave < 0 || ratio < best_ratio - tol_ ||
                    (std::abs(ratio - best_ratio) <= tol_ && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
            if (++iterations > 200000) throw std::logic_error("simplex iteration cap hit");
        }
    }

    void pivot(int row, int col) {
        double piv = tab_[row][col];
        for (double& v : tab_[row]) v /= piv;
        for (size_t i = 0; i < tab_.size(); ++i) {
            if (static_cast<int>(i) == row) continue;
            double factor = tab_[i][col];
            if (factor == 0.0) continue;
            for (int j = 0; j <= num_cols_; ++j) tab_[i][j] -= factor * tab_[row][j];
        }
        double zfac = zrow_[col];
        if (zfac != 0.0)
            for (int j = 0; j <= num_cols_; ++j) zrow_[j] -= zfac * tab_[row][j];
        basis_[row] = col;
    }

    /// After phase 1, pivot basic artificials out on any nonzero structural
    /// column; rows with none are redundant and keep a zero-valued artificial
    /// that phase 2 is banned from touching.
    void expel_artificials() {
        for (size_t i = 0; i < basis_.size(); ++i) {
            if (basis_[i] < first_art_) continue;
            for (int j = 0; j < first_art_; ++j) {
                if (std::abs(tab_[i][j]) > tol_) {
                    pivot(static_cast<int>(i), j);
                    break;
                }
            }
        }
    }

    double tol_;
    int num_cols_ = 0;
    int first_art_ = 0;
    std::vector<std::vector<double>> tab_;
    std::vector<double> zrow_;
    std::vector<double> cost_;
    std::vector<int> basis_;
};

inline LpSolution lp_solve(const LinearProgram& lp, double tol = 1e-9) {
    return SimplexSolver(tol).solve(lp);
}

}  // namespace crn

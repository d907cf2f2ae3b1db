#include "silva/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kahan.hpp"

namespace silva::lp {

std::size_t LinearProgram::add_variable(std::string name, double objective_coeff) {
    for (const auto& existing : names_) {
        if (existing == name) {
            throw std::invalid_argument("LinearProgram: duplicate variable name '" + name + "'");
        }
    }
    if (!constraints_.empty()) {
        throw std::invalid_argument(
            "LinearProgram: all variables must be added before the first constraint");
    }
    names_.push_back(std::move(name));
    objective_.push_back(objective_coeff);
    return objective_.size() - 1;
}

void LinearProgram::add_constraint(std::vector<double> coeffs, Relation relation, double rhs,
                                   std::string name) {
    if (coeffs.size() != objective_.size()) {
        throw std::invalid_argument("LinearProgram: constraint '" + name + "' has " +
                                    std::to_string(coeffs.size()) + " coefficients, expected " +
                                    std::to_string(objective_.size()));
    }
    constraints_.push_back(Constraint{std::move(coeffs), relation, rhs, std::move(name)});
}

void LinearProgram::set_objective_coefficient(std::size_t var, double coeff) {
    objective_.at(var) = coeff;
}

std::string to_string(Status s) {
    switch (s) {
        case Status::Optimal: return "optimal";
        case Status::Infeasible: return "infeasible";
        case Status::Unbounded: return "unbounded";
    }
    return "unknown";
}

namespace {

// Dense tableau with the objective in the last row and the right-hand side
// in the last column. The objective row holds reduced costs d_j for the
// current basis and -value in its rhs cell, so a pivot updates it like any
// other row.
//
//   columns:  [0, n)            structural variables
//             [n, n+s)          slack (+1) or surplus (-1), one per inequality
//             [n+s, n+s+a)      artificials, one per >= or = row
//             n+s+a             right-hand side
struct Tableau {
    std::size_t num_rows = 0;  // constraint rows only
    std::size_t num_cols = 0;  // including the rhs column
    std::vector<double> cells;
    std::vector<std::size_t> basis;    // basis[r] = basic column of row r
    std::vector<char> is_artificial;   // per column
    std::vector<char> is_basic;        // per column
    std::size_t pivots = 0;
    PivotBackend backend = PivotBackend::Auto;
    double pivot_tol = 1e-9;

    double& at(std::size_t r, std::size_t c) { return cells[r * num_cols + c]; }
    double at(std::size_t r, std::size_t c) const { return cells[r * num_cols + c]; }
    std::size_t rhs_col() const { return num_cols - 1; }
    double* objective_row() { return cells.data() + num_rows * num_cols; }

    void pivot(std::size_t row, std::size_t col) {
        double* pr = cells.data() + row * num_cols;
        const double pivot_value = pr[col];
        for (std::size_t j = 0; j < num_cols; ++j) pr[j] /= pivot_value;
        pr[col] = 1.0;
        TableauView view{cells.data(), num_rows + 1, num_cols};
        eliminate(view, row, col, backend);
        is_basic[basis[row]] = 0;
        basis[row] = col;
        is_basic[col] = 1;
        ++pivots;
    }

    // Bland's rule: the lowest-index eligible column with an improving
    // reduced cost, then the minimum-ratio row with the lowest basic index.
    enum class Step { Done, Pivoted, Unbounded };

    Step bland_step() {
        const double* obj = cells.data() + num_rows * num_cols;
        std::size_t entering = num_cols;
        for (std::size_t j = 0; j + 1 < num_cols; ++j) {
            if (is_basic[j] || is_artificial[j]) continue;
            if (obj[j] > pivot_tol) {
                entering = j;
                break;
            }
        }
        if (entering == num_cols) return Step::Done;

        std::size_t leaving = num_rows;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < num_rows; ++r) {
            const double a = at(r, entering);
            if (a <= pivot_tol) continue;
            const double b = std::max(at(r, rhs_col()), 0.0);
            const double ratio = b / a;
            if (ratio < best_ratio ||
                (ratio == best_ratio && leaving < num_rows && basis[r] < basis[leaving])) {
                best_ratio = ratio;
                leaving = r;
            }
        }
        if (leaving == num_rows) return Step::Unbounded;
        pivot(leaving, entering);
        return Step::Pivoted;
    }
};

}  // namespace

Solution solve(const LinearProgram& lp, const SolverOptions& options) {
    const std::size_t n = lp.num_variables();
    const std::size_t m = lp.num_constraints();

    // Count auxiliary columns after normalizing every rhs to be nonnegative.
    std::size_t num_slack = 0;
    std::size_t num_artificial = 0;
    std::vector<Relation> relation(m);
    std::vector<double> sign(m, 1.0);
    for (std::size_t r = 0; r < m; ++r) {
        const Constraint& row = lp.constraints()[r];
        relation[r] = row.relation;
        if (row.rhs < 0.0) {
            sign[r] = -1.0;
            if (row.relation == Relation::LessEqual) relation[r] = Relation::GreaterEqual;
            if (row.relation == Relation::GreaterEqual) relation[r] = Relation::LessEqual;
        }
        if (relation[r] != Relation::Equal) ++num_slack;
        if (relation[r] != Relation::LessEqual) ++num_artificial;
    }

    Tableau t;
    t.num_rows = m;
    t.num_cols = n + num_slack + num_artificial + 1;
    t.cells.assign((m + 1) * t.num_cols, 0.0);
    t.basis.resize(m);
    t.is_artificial.assign(t.num_cols, 0);
    t.is_basic.assign(t.num_cols, 0);
    t.backend = options.backend;
    t.pivot_tol = options.pivot_tol;

    std::size_t next_slack = n;
    std::size_t next_artificial = n + num_slack;
    for (std::size_t r = 0; r < m; ++r) {
        const Constraint& row = lp.constraints()[r];
        for (std::size_t j = 0; j < n; ++j) t.at(r, j) = sign[r] * row.coeffs[j];
        t.at(r, t.rhs_col()) = sign[r] * row.rhs;
        switch (relation[r]) {
            case Relation::LessEqual:
                t.at(r, next_slack) = 1.0;
                t.basis[r] = next_slack++;
                break;
            case Relation::GreaterEqual:
                t.at(r, next_slack++) = -1.0;
                [[fallthrough]];
            case Relation::Equal:
                t.at(r, next_artificial) = 1.0;
                t.is_artificial[next_artificial] = 1;
                t.basis[r] = next_artificial++;
                break;
        }
        t.is_basic[t.basis[r]] = 1;
    }

    if (num_artificial > 0) {
        // Phase one: drive sum of artificials to zero. With the artificials
        // basic, the priced-out reduced costs are the column sums over their
        // rows, and the rhs cell carries the current infeasibility.
        double* obj = t.objective_row();
        for (std::size_t r = 0; r < m; ++r) {
            if (!t.is_artificial[t.basis[r]]) continue;
            for (std::size_t j = 0; j < t.num_cols; ++j) obj[j] += t.at(r, j);
        }
        // Basic artificial columns price to exactly zero.
        for (std::size_t r = 0; r < m; ++r) {
            if (t.is_artificial[t.basis[r]]) obj[t.basis[r]] = 0.0;
        }

        while (t.bland_step() == Tableau::Step::Pivoted) {
        }
        const double infeasibility = t.objective_row()[t.rhs_col()];
        if (infeasibility > options.phase1_tol) {
            return Solution{Status::Infeasible, {}, 0.0, t.pivots};
        }

        // Kick leftover artificials out of the basis; rows that offer no
        // pivot are redundant and get dropped.
        for (std::size_t r = t.num_rows; r-- > 0;) {
            if (!t.is_artificial[t.basis[r]]) continue;
            std::size_t col = t.num_cols;
            for (std::size_t j = 0; j + 1 < t.num_cols; ++j) {
                if (t.is_artificial[j] || t.is_basic[j]) continue;
                if (std::abs(t.at(r, j)) > options.pivot_tol) {
                    col = j;
                    break;
                }
            }
            if (col < t.num_cols) {
                t.pivot(r, col);
            } else {
                t.is_basic[t.basis[r]] = 0;
                t.cells.erase(t.cells.begin() + static_cast<std::ptrdiff_t>(r * t.num_cols),
                              t.cells.begin() + static_cast<std::ptrdiff_t>((r + 1) * t.num_cols));
                t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(r));
                --t.num_rows;
            }
        }
    }

    // Phase two: restore the real objective, priced out for the current basis.
    {
        double* obj = t.objective_row();
        std::fill(obj, obj + t.num_cols, 0.0);
        for (std::size_t j = 0; j < n; ++j) obj[j] = lp.objective()[j];
        for (std::size_t r = 0; r < t.num_rows; ++r) {
            const std::size_t b = t.basis[r];
            const double cb = b < n ? lp.objective()[b] : 0.0;
            if (cb == 0.0) continue;
            for (std::size_t j = 0; j < t.num_cols; ++j) obj[j] -= cb * t.at(r, j);
        }
        for (std::size_t r = 0; r < t.num_rows; ++r) obj[t.basis[r]] = 0.0;
    }

    for (;;) {
        const Tableau::Step step = t.bland_step();
        if (step == Tableau::Step::Unbounded) {
            return Solution{Status::Unbounded, {}, 0.0, t.pivots};
        }
        if (step == Tableau::Step::Done) break;
    }

    std::vector<double> x(n, 0.0);
    for (std::size_t r = 0; r < t.num_rows; ++r) {
        if (t.basis[r] < n) x[t.basis[r]] = t.at(r, t.rhs_col());
    }
    const double value = objective_value(lp, x);
    return Solution{Status::Optimal, std::move(x), value, t.pivots};
}

double max_violation(const LinearProgram& lp, std::span<const double> x) {
    double worst = 0.0;
    for (double xi : x) worst = std::max(worst, -xi);
    for (const Constraint& row : lp.constraints()) {
        detail::KahanAccumulator acc;
        for (std::size_t j = 0; j < row.coeffs.size(); ++j) acc.add(row.coeffs[j] * x[j]);
        const double lhs = acc.value();
        switch (row.relation) {
            case Relation::LessEqual: worst = std::max(worst, lhs - row.rhs); break;
            case Relation::GreaterEqual: worst = std::max(worst, row.rhs - lhs); break;
            case Relation::Equal: worst = std::max(worst, std::abs(lhs - row.rhs)); break;
        }
    }
    return worst;
}

double objective_value(const LinearProgram& lp, std::span<const double> x) {
    detail::KahanAccumulator acc;
    for (std::size_t j = 0; j < x.size(); ++j) acc.add(lp.objective()[j] * x[j]);
    return acc.value();
}

}  // namespace silva::lp

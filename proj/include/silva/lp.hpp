#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "silva/pivot_kernel.hpp"

namespace silva::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Constraint {
    std::vector<double> coeffs;
    Relation relation = Relation::LessEqual;
    double rhs = 0.0;
    std::string name;
};

// Standard-form program: maximize c.x subject to the constraint rows, with
// every variable implicitly >= 0. Free variables are not supported.
class LinearProgram {
public:
    // Returns the column index of the new variable. Names must be unique.
    std::size_t add_variable(std::string name, double objective_coeff = 0.0);

    // Coefficient vector length must equal the current variable count.
    void add_constraint(std::vector<double> coeffs, Relation relation, double rhs,
                        std::string name = {});

    void set_objective_coefficient(std::size_t var, double coeff);

    std::size_t num_variables() const noexcept { return objective_.size(); }
    std::size_t num_constraints() const noexcept { return constraints_.size(); }
    const std::vector<double>& objective() const noexcept { return objective_; }
    const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
    const std::vector<std::string>& variable_names() const noexcept { return names_; }

private:
    std::vector<std::string> names_;
    std::vector<double> objective_;
    std::vector<Constraint> constraints_;
};

enum class Status { Optimal, Infeasible, Unbounded };

std::string to_string(Status s);

struct Solution {
    Status status = Status::Infeasible;
    std::vector<double> x;         // one value per variable; empty unless Optimal
    double objective_value = 0.0;  // meaningful only when Optimal
    std::size_t pivots = 0;

    bool is_optimal() const noexcept { return status == Status::Optimal; }
};

// All solver tolerances in one place.
struct SolverOptions {
    double pivot_tol = 1e-9;     // reduced-cost and pivot-element eligibility
    double phase1_tol = 1e-8;    // residual infeasibility accepted after phase one
    double residual_tol = 1e-8;  // constraint residual accepted in a solution
    PivotBackend backend = PivotBackend::Auto;
};

// Two-phase primal simplex on a dense tableau with Bland's anti-cycling rule.
Solution solve(const LinearProgram& lp, const SolverOptions& options = {});

// Largest constraint or nonnegativity violation of x, for checking solutions.
double max_violation(const LinearProgram& lp, std::span<const double> x);

// Objective c.x with compensated summation.
double objective_value(const LinearProgram& lp, std::span<const double> x);

}  // namespace silva::lp

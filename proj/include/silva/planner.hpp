#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "silva/forest.hpp"
#include "silva/lp.hpp"

namespace silva::planner {

// Everything that defines one planning problem. Ages are 1-based model ages;
// vectors indexed by age class use slot i-1 for class i.
struct Scenario {
    int stages = 0;            // planning horizon T
    int age_classes = 0;       // number of age classes L
    int min_harvest_age = 0;   // youngest harvestable class
    int max_planting_age = 0;  // oldest plantable class, below min_harvest_age
    double total_area = 0.0;   // upper bound on standing area, hectares

    forest::ForestState initial;           // distribution before stage 0
    std::vector<double> carbon_per_ha;     // absorption per hectare and stage, by age
    std::vector<double> carbon_floor;      // required absorption per stage, length T
    std::vector<double> timber_yield;      // harvest yield per hectare, by age
    std::vector<double> planting_cost;     // planting cost in yield units, by age
    std::vector<double> terminal_lo;       // end-of-horizon box, lower bounds
    std::vector<double> terminal_hi;       // end-of-horizon box, upper bounds
    forest::TransitionOperator transition;

    // Throws std::invalid_argument with a field-named message.
    void validate() const;
};

struct Violation {
    std::string constraint;
    int stage = 0;
    double residual = 0.0;
};

// A solved or replayed management trajectory: states[t] is the distribution
// after stage t (states[0] is the scenario's initial state), actions[t] is
// the harvest/planting applied during stage t.
struct PlanTrajectory {
    std::vector<forest::ForestState> states;        // length T + 1
    std::vector<forest::ManagementAction> actions;  // length T
    double objective_value = 0.0;
    bool feasible = false;
    std::vector<Violation> violations;
};

class InfeasibleScenario : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnboundedModel : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Assembles the scenario into a linear program over the variables
//   v[t][i]  t = 1..T, i = 1..L          standing area
//   u[t][i]  t = 0..T-1, i = l..L        harvest
//   w[t][i]  t = 0..T-1, i = 1..l0       planting
// with equality rows for the dynamics, inequality rows for the area cap,
// carbon floors, harvest availability and the terminal box, and an objective
// that trades harvest yield against planting cost.
lp::LinearProgram build_lp(const Scenario& scenario);

// Solves the assembled program and reconstructs the trajectory, re-rolling
// the dynamics forward from the initial state as a consistency check.
// Throws InfeasibleScenario or UnboundedModel when no plan exists.
PlanTrajectory solve_plan(const Scenario& scenario, const lp::SolverOptions& options = {});

// Total harvest yield minus planting cost over the horizon.
double evaluate_objective(const Scenario& scenario, const PlanTrajectory& traj);

// Re-verifies every constraint class against the trajectory and reports
// named residuals; never throws on a violation.
std::pair<bool, std::vector<Violation>> check_feasibility(const Scenario& scenario,
                                                          const PlanTrajectory& traj,
                                                          double tolerance = 1e-8);

// Best-effort explanation of why no feasible trajectory can exist, from
// simple bound arguments; empty when no cheap certificate applies.
std::string diagnose_infeasibility(const Scenario& scenario);

}  // namespace silva::planner

#include "silva/planner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "kahan.hpp"

namespace silva::planner {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

void require_length(const std::vector<double>& v, int expected, const char* field) {
    if (static_cast<int>(v.size()) != expected) {
        throw std::invalid_argument(std::string(field) + ": expected length " +
                                    std::to_string(expected) + ", got " +
                                    std::to_string(v.size()));
    }
}

void require_nonnegative(const std::vector<double>& v, const char* field) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] >= 0.0)) {
            throw std::invalid_argument(std::string(field) + ": negative entry " +
                                        std::to_string(v[i]) + " at index " + std::to_string(i));
        }
    }
}

// Column layout of the planning program: the state block, then the harvest
// block, then the planting block, each stage-major.
struct VariableLayout {
    int stages;        // T
    int classes;       // L
    int harvest_from;  // l
    int plant_to;      // l0

    int harvest_span() const { return classes - harvest_from + 1; }

    // v[t][i], t in 1..T
    std::size_t state(int t, int i) const {
        return static_cast<std::size_t>((t - 1) * classes + (i - 1));
    }
    // u[t][i], t in 0..T-1, i in l..L
    std::size_t harvest(int t, int i) const {
        return static_cast<std::size_t>(stages * classes + t * harvest_span() +
                                        (i - harvest_from));
    }
    // w[t][i], t in 0..T-1, i in 1..l0
    std::size_t plant(int t, int i) const {
        return static_cast<std::size_t>(stages * classes + stages * harvest_span() +
                                        t * plant_to + (i - 1));
    }
    std::size_t total() const {
        return static_cast<std::size_t>(stages) *
               static_cast<std::size_t>(classes + harvest_span() + plant_to);
    }
};

std::string bracket(const char* base, int a) { return std::string(base) + "[" + std::to_string(a) + "]"; }

std::string bracket(const char* base, int a, int b) {
    return std::string(base) + "[" + std::to_string(a) + "][" + std::to_string(b) + "]";
}

}  // namespace

void Scenario::validate() const {
    require(stages >= 1, "T: must be at least 1, got " + std::to_string(stages));
    require(age_classes >= 1, "L: must be at least 1, got " + std::to_string(age_classes));
    require(1 <= max_planting_age && max_planting_age < min_harvest_age &&
                min_harvest_age <= age_classes,
            "l0: must satisfy 1 <= l0 < l <= L, got l0 = " + std::to_string(max_planting_age) +
                ", l = " + std::to_string(min_harvest_age) + ", L = " +
                std::to_string(age_classes));
    require(total_area > 0.0, "S: must be positive, got " + std::to_string(total_area));

    require(static_cast<int>(initial.num_classes()) == age_classes,
            "v0: expected length " + std::to_string(age_classes) + ", got " +
                std::to_string(initial.num_classes()));
    require(initial.total_area() <= total_area + 1e-9,
            "v0: total area " + std::to_string(initial.total_area()) + " exceeds S = " +
                std::to_string(total_area));

    require_length(carbon_per_ha, age_classes, "gamma");
    require_nonnegative(carbon_per_ha, "gamma");
    require_length(carbon_floor, stages, "Gamma");
    require_nonnegative(carbon_floor, "Gamma");
    require_length(timber_yield, age_classes, "mu");
    require_nonnegative(timber_yield, "mu");
    require_length(planting_cost, age_classes, "eta");
    require_nonnegative(planting_cost, "eta");
    require_length(terminal_lo, age_classes, "terminal_lo");
    require_length(terminal_hi, age_classes, "terminal_hi");
    for (int i = 0; i < age_classes; ++i) {
        require(terminal_lo[static_cast<std::size_t>(i)] <=
                    terminal_hi[static_cast<std::size_t>(i)],
                "terminal_lo: entry " + std::to_string(i) + " exceeds terminal_hi");
    }
    require(static_cast<int>(transition.order()) == age_classes,
            "matrix: transition operator order " + std::to_string(transition.order()) +
                " does not match L = " + std::to_string(age_classes));
}

lp::LinearProgram build_lp(const Scenario& scenario) {
    scenario.validate();
    const int T = scenario.stages;
    const int L = scenario.age_classes;
    const int l = scenario.min_harvest_age;
    const int l0 = scenario.max_planting_age;
    const VariableLayout layout{T, L, l, l0};
    const auto& A = scenario.transition;

    lp::LinearProgram program;
    for (int t = 1; t <= T; ++t) {
        for (int i = 1; i <= L; ++i) program.add_variable(bracket("v", t, i));
    }
    for (int t = 0; t < T; ++t) {
        for (int i = l; i <= L; ++i) {
            program.add_variable(bracket("u", t, i),
                                 scenario.timber_yield[static_cast<std::size_t>(i - 1)]);
        }
    }
    for (int t = 0; t < T; ++t) {
        for (int i = 1; i <= l0; ++i) {
            program.add_variable(bracket("w", t, i),
                                 -scenario.planting_cost[static_cast<std::size_t>(i - 1)]);
        }
    }

    const std::size_t n = program.num_variables();

    // Dynamics: v[t+1] = A(v[t] - u[t]) + w[t]; stage 0 folds the known
    // initial state into the right-hand side.
    for (int t = 0; t < T; ++t) {
        for (int i = 1; i <= L; ++i) {
            std::vector<double> row(n, 0.0);
            row[layout.state(t + 1, i)] = 1.0;
            double rhs = 0.0;
            for (int j = 1; j <= L; ++j) {
                const double a = A.entry(static_cast<std::size_t>(i - 1),
                                         static_cast<std::size_t>(j - 1));
                if (a == 0.0) continue;
                if (t == 0) {
                    rhs += a * scenario.initial.areas()[static_cast<std::size_t>(j - 1)];
                } else {
                    row[layout.state(t, j)] -= a;
                }
                if (j >= l) row[layout.harvest(t, j)] += a;
            }
            if (i <= l0) row[layout.plant(t, i)] = -1.0;
            program.add_constraint(std::move(row), lp::Relation::Equal, rhs, bracket("dyn", t, i));
        }
    }

    for (int t = 1; t <= T; ++t) {
        std::vector<double> row(n, 0.0);
        for (int i = 1; i <= L; ++i) row[layout.state(t, i)] = 1.0;
        program.add_constraint(std::move(row), lp::Relation::LessEqual, scenario.total_area,
                               bracket("area", t));
    }

    for (int t = 1; t <= T; ++t) {
        std::vector<double> row(n, 0.0);
        for (int i = 1; i <= L; ++i) {
            row[layout.state(t, i)] = scenario.carbon_per_ha[static_cast<std::size_t>(i - 1)];
        }
        program.add_constraint(std::move(row), lp::Relation::GreaterEqual,
                               scenario.carbon_floor[static_cast<std::size_t>(t - 1)],
                               bracket("carbon", t));
    }

    // Harvest availability u[t] <= v[t]; at stage 0 the bound is a constant.
    for (int t = 0; t < T; ++t) {
        for (int i = l; i <= L; ++i) {
            std::vector<double> row(n, 0.0);
            row[layout.harvest(t, i)] = 1.0;
            double rhs = 0.0;
            if (t == 0) {
                rhs = scenario.initial.areas()[static_cast<std::size_t>(i - 1)];
            } else {
                row[layout.state(t, i)] = -1.0;
            }
            program.add_constraint(std::move(row), lp::Relation::LessEqual, rhs,
                                   bracket("cut", t, i));
        }
    }

    for (int i = 1; i <= L; ++i) {
        std::vector<double> row(n, 0.0);
        row[layout.state(T, i)] = 1.0;
        program.add_constraint(std::move(row), lp::Relation::GreaterEqual,
                               scenario.terminal_lo[static_cast<std::size_t>(i - 1)],
                               bracket("terminal_lo", i));
    }
    for (int i = 1; i <= L; ++i) {
        std::vector<double> row(n, 0.0);
        row[layout.state(T, i)] = 1.0;
        program.add_constraint(std::move(row), lp::Relation::LessEqual,
                               scenario.terminal_hi[static_cast<std::size_t>(i - 1)],
                               bracket("terminal_hi", i));
    }

    return program;
}

PlanTrajectory solve_plan(const Scenario& scenario, const lp::SolverOptions& options) {
    const lp::LinearProgram program = build_lp(scenario);
    const lp::Solution solution = lp::solve(program, options);

    if (solution.status == lp::Status::Infeasible) {
        std::string reason = diagnose_infeasibility(scenario);
        if (reason.empty()) reason = "no trajectory satisfies the constraints";
        throw InfeasibleScenario("scenario is infeasible: " + reason);
    }
    if (solution.status == lp::Status::Unbounded) {
        throw UnboundedModel(
            "planning program is unbounded; the scenario is mis-specified "
            "(check the area bound S and the yield coefficients)");
    }

    const int T = scenario.stages;
    const int L = scenario.age_classes;
    const int l = scenario.min_harvest_age;
    const int l0 = scenario.max_planting_age;
    const VariableLayout layout{T, L, l, l0};
    const auto value = [&](std::size_t var) { return std::max(solution.x[var], 0.0); };

    PlanTrajectory traj;
    traj.states.reserve(static_cast<std::size_t>(T) + 1);
    traj.states.push_back(scenario.initial);
    for (int t = 1; t <= T; ++t) {
        std::vector<double> areas(static_cast<std::size_t>(L));
        for (int i = 1; i <= L; ++i) areas[static_cast<std::size_t>(i - 1)] = value(layout.state(t, i));
        traj.states.emplace_back(std::move(areas));
    }
    traj.actions.reserve(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t) {
        std::vector<double> harvest(static_cast<std::size_t>(L), 0.0);
        std::vector<double> plant(static_cast<std::size_t>(L), 0.0);
        for (int i = l; i <= L; ++i) harvest[static_cast<std::size_t>(i - 1)] = value(layout.harvest(t, i));
        for (int i = 1; i <= l0; ++i) plant[static_cast<std::size_t>(i - 1)] = value(layout.plant(t, i));
        traj.actions.emplace_back(std::move(harvest), std::move(plant), l, l0);
    }

    // Re-roll the dynamics from the initial state; the solver's states must
    // be reproducible from its own actions.
    forest::ForestState rolled = scenario.initial;
    for (int t = 0; t < T; ++t) {
        rolled = forest::managed_step(rolled, traj.actions[static_cast<std::size_t>(t)],
                                      scenario.transition, 1e-7);
        double deviation = 0.0;
        for (int i = 0; i < L; ++i) {
            deviation = std::max(deviation,
                                 std::abs(rolled.areas()[static_cast<std::size_t>(i)] -
                                          traj.states[static_cast<std::size_t>(t + 1)]
                                              .areas()[static_cast<std::size_t>(i)]));
        }
        if (deviation > 1e-7) {
            throw std::runtime_error("solve_plan: solver trajectory deviates from the forward "
                                     "dynamics by " + std::to_string(deviation) + " at stage " +
                                     std::to_string(t));
        }
    }

    traj.objective_value = evaluate_objective(scenario, traj);
    auto [feasible, violations] = check_feasibility(scenario, traj);
    traj.feasible = feasible;
    traj.violations = std::move(violations);
    return traj;
}

double evaluate_objective(const Scenario& scenario, const PlanTrajectory& traj) {
    const int T = scenario.stages;
    const int L = scenario.age_classes;
    if (static_cast<int>(traj.actions.size()) != T) {
        throw std::invalid_argument("evaluate_objective: expected " + std::to_string(T) +
                                    " actions, got " + std::to_string(traj.actions.size()));
    }
    detail::KahanAccumulator acc;
    for (int t = 0; t < T; ++t) {
        const auto& action = traj.actions[static_cast<std::size_t>(t)];
        if (static_cast<int>(action.num_classes()) != L) {
            throw std::invalid_argument("evaluate_objective: action at stage " +
                                        std::to_string(t) + " has " +
                                        std::to_string(action.num_classes()) +
                                        " classes, expected " + std::to_string(L));
        }
        for (int i = scenario.min_harvest_age; i <= L; ++i) {
            acc.add(scenario.timber_yield[static_cast<std::size_t>(i - 1)] *
                    action.harvest()[static_cast<std::size_t>(i - 1)]);
        }
        for (int i = 1; i <= scenario.max_planting_age; ++i) {
            acc.add(-scenario.planting_cost[static_cast<std::size_t>(i - 1)] *
                    action.plant()[static_cast<std::size_t>(i - 1)]);
        }
    }
    return acc.value();
}

std::pair<bool, std::vector<Violation>> check_feasibility(const Scenario& scenario,
                                                          const PlanTrajectory& traj,
                                                          double tolerance) {
    scenario.validate();
    const int T = scenario.stages;
    const int L = scenario.age_classes;
    if (static_cast<int>(traj.states.size()) != T + 1) {
        throw std::invalid_argument("check_feasibility: expected " + std::to_string(T + 1) +
                                    " states, got " + std::to_string(traj.states.size()));
    }
    if (static_cast<int>(traj.actions.size()) != T) {
        throw std::invalid_argument("check_feasibility: expected " + std::to_string(T) +
                                    " actions, got " + std::to_string(traj.actions.size()));
    }
    for (int t = 0; t <= T; ++t) {
        if (static_cast<int>(traj.states[static_cast<std::size_t>(t)].num_classes()) != L) {
            throw std::invalid_argument("check_feasibility: state at stage " + std::to_string(t) +
                                        " has wrong number of age classes");
        }
        if (t < T && static_cast<int>(traj.actions[static_cast<std::size_t>(t)].num_classes()) != L) {
            throw std::invalid_argument("check_feasibility: action at stage " + std::to_string(t) +
                                        " has wrong number of age classes");
        }
    }

    std::vector<Violation> violations;
    const auto report = [&](const char* name, int stage, double residual) {
        if (residual > tolerance) violations.push_back({name, stage, residual});
    };

    {
        double deviation = 0.0;
        for (int i = 0; i < L; ++i) {
            deviation = std::max(deviation,
                                 std::abs(traj.states[0].areas()[static_cast<std::size_t>(i)] -
                                          scenario.initial.areas()[static_cast<std::size_t>(i)]));
        }
        report("initial_state", 0, deviation);
    }

    for (int t = 0; t < T; ++t) {
        const auto& state = traj.states[static_cast<std::size_t>(t)];
        const auto& action = traj.actions[static_cast<std::size_t>(t)];
        const auto& next = traj.states[static_cast<std::size_t>(t + 1)];

        double over_harvest = 0.0;
        std::vector<double> remaining(static_cast<std::size_t>(L));
        for (int i = 0; i < L; ++i) {
            const double left = state.areas()[static_cast<std::size_t>(i)] -
                                action.harvest()[static_cast<std::size_t>(i)];
            over_harvest = std::max(over_harvest, -left);
            remaining[static_cast<std::size_t>(i)] = std::max(left, 0.0);
        }
        report("harvest_bound", t, over_harvest);

        double age_violation = 0.0;
        for (int i = 1; i < scenario.min_harvest_age; ++i) {
            age_violation = std::max(age_violation, action.harvest()[static_cast<std::size_t>(i - 1)]);
        }
        report("harvest_age", t, age_violation);
        double plant_violation = 0.0;
        for (int i = scenario.max_planting_age + 1; i <= L; ++i) {
            plant_violation = std::max(plant_violation, action.plant()[static_cast<std::size_t>(i - 1)]);
        }
        report("planting_age", t, plant_violation);

        const std::vector<double> advanced = scenario.transition.apply(remaining);
        double dynamics_residual = 0.0;
        for (int i = 0; i < L; ++i) {
            const double predicted = advanced[static_cast<std::size_t>(i)] +
                                     action.plant()[static_cast<std::size_t>(i)];
            dynamics_residual = std::max(dynamics_residual,
                                         std::abs(predicted - next.areas()[static_cast<std::size_t>(i)]));
        }
        report("dynamics", t, dynamics_residual);
    }

    for (int t = 0; t <= T; ++t) {
        const auto& state = traj.states[static_cast<std::size_t>(t)];
        double negative = 0.0;
        for (double a : state.areas()) negative = std::max(negative, -a);
        report("nonnegativity", t, negative);
        report("area", t, state.total_area() - scenario.total_area);
        if (t >= 1) {
            detail::KahanAccumulator carbon;
            for (int i = 0; i < L; ++i) {
                carbon.add(scenario.carbon_per_ha[static_cast<std::size_t>(i)] *
                           state.areas()[static_cast<std::size_t>(i)]);
            }
            report("carbon", t,
                   scenario.carbon_floor[static_cast<std::size_t>(t - 1)] - carbon.value());
        }
    }

    {
        const auto& last = traj.states[static_cast<std::size_t>(T)];
        double lo = 0.0;
        double hi = 0.0;
        for (int i = 0; i < L; ++i) {
            lo = std::max(lo, scenario.terminal_lo[static_cast<std::size_t>(i)] -
                                  last.areas()[static_cast<std::size_t>(i)]);
            hi = std::max(hi, last.areas()[static_cast<std::size_t>(i)] -
                                  scenario.terminal_hi[static_cast<std::size_t>(i)]);
        }
        report("terminal_lo", T, lo);
        report("terminal_hi", T, hi);
    }

    return {violations.empty(), std::move(violations)};
}

std::string diagnose_infeasibility(const Scenario& scenario) {
    const double gamma_max =
        scenario.carbon_per_ha.empty()
            ? 0.0
            : *std::max_element(scenario.carbon_per_ha.begin(), scenario.carbon_per_ha.end());
    const double best_possible = gamma_max * scenario.total_area;
    for (int t = 1; t <= scenario.stages; ++t) {
        const double floor = scenario.carbon_floor[static_cast<std::size_t>(t - 1)];
        if (floor > best_possible + 1e-12) {
            return "carbon floor Gamma[" + std::to_string(t) + "] = " + std::to_string(floor) +
                   " exceeds the maximum achievable sequestration max(gamma) * S = " +
                   std::to_string(best_possible) + " at stage " + std::to_string(t);
        }
    }
    detail::KahanAccumulator lo_total;
    for (double lo : scenario.terminal_lo) lo_total.add(std::max(lo, 0.0));
    if (lo_total.value() > scenario.total_area + 1e-12) {
        return "terminal_lo: lower bounds total " + std::to_string(lo_total.value()) +
               ", above the area cap S = " + std::to_string(scenario.total_area);
    }
    return {};
}

}  // namespace silva::planner

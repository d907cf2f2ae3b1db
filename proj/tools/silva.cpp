// Batch front end: scenario planning and replay, the majority-cycle
// construction, and the entropy calculator.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "silva/info.hpp"
#include "silva/planner.hpp"
#include "silva/scenario_io.hpp"
#include "silva/social_choice.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitUnbounded = 3;

std::string fixed6(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return buf;
}

json violations_to_json(const std::vector<silva::planner::Violation>& violations) {
    json list = json::array();
    for (const auto& v : violations) {
        list.push_back({{"constraint", v.constraint}, {"stage", v.stage}, {"residual", v.residual}});
    }
    return list;
}

json stage_totals(const silva::planner::Scenario& scenario,
                  const silva::planner::PlanTrajectory& traj) {
    json area = json::array();
    json carbon = json::array();
    for (const auto& state : traj.states) {
        area.push_back(state.total_area());
        double absorbed = 0.0;
        for (std::size_t i = 0; i < state.areas().size(); ++i) {
            absorbed += scenario.carbon_per_ha[i] * state.areas()[i];
        }
        carbon.push_back(absorbed);
    }
    return json{{"area_by_stage", area}, {"carbon_by_stage", carbon}};
}

void write_summary(const fs::path& out_dir, const json& summary) {
    std::ofstream out(out_dir / "summary.json");
    out << summary.dump(2) << '\n';
}

// Plans one scenario file into out_dir; returns the exit code and appends
// console lines to log (directory runs print per-scenario blocks in order).
int plan_one(const fs::path& scenario_path, const fs::path& out_dir, std::string& log) {
    silva::planner::Scenario scenario;
    try {
        scenario = silva::io::load_scenario(scenario_path);
    } catch (const silva::io::ParseError& err) {
        log += scenario_path.string() + ": " + err.what() + "\n";
        return kExitUsage;
    }

    fs::create_directories(out_dir);
    try {
        const silva::planner::PlanTrajectory traj = silva::planner::solve_plan(scenario);
        silva::io::write_trajectory_csv(out_dir / "trajectory.csv", traj);
        json summary = stage_totals(scenario, traj);
        summary["status"] = "optimal";
        summary["objective_value"] = traj.objective_value;
        summary["feasible"] = traj.feasible;
        summary["violations"] = violations_to_json(traj.violations);
        write_summary(out_dir, summary);
        log += scenario_path.string() + ": optimal, objective = " + fixed6(traj.objective_value) +
               "\n  wrote " + (out_dir / "trajectory.csv").string() + ", " +
               (out_dir / "summary.json").string() + "\n";
        return traj.feasible ? kExitOk : kExitInfeasible;
    } catch (const silva::planner::InfeasibleScenario& err) {
        write_summary(out_dir, json{{"status", "infeasible"}, {"message", err.what()}});
        log += scenario_path.string() + ": infeasible\n  " + err.what() + "\n";
        return kExitInfeasible;
    } catch (const silva::planner::UnboundedModel& err) {
        write_summary(out_dir, json{{"status", "unbounded"}, {"message", err.what()}});
        log += scenario_path.string() + ": unbounded\n  " + err.what() + "\n";
        return kExitUnbounded;
    }
}

int cmd_plan(const fs::path& scenario_path, const fs::path& out_dir) {
    if (!fs::is_directory(scenario_path)) {
        std::string log;
        const int code = plan_one(scenario_path, out_dir, log);
        std::cout << log;
        return code;
    }

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(scenario_path)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        std::cerr << scenario_path.string() << ": no .json scenarios found\n";
        return kExitUsage;
    }

    std::vector<std::string> logs(files.size());
    std::vector<int> codes(files.size(), kExitOk);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t i = 0; i < files.size(); ++i) {
        codes[i] = plan_one(files[i], out_dir / files[i].stem(), logs[i]);
    }
    int exit_code = kExitOk;
    for (std::size_t i = 0; i < files.size(); ++i) {
        std::cout << logs[i];
        if (codes[i] != kExitOk && exit_code == kExitOk) exit_code = codes[i];
    }
    return exit_code;
}

int cmd_simulate(const fs::path& scenario_path, const fs::path& policy_path,
                 const fs::path& out_dir) {
    silva::planner::Scenario scenario;
    silva::io::Policy policy;
    try {
        scenario = silva::io::load_scenario(scenario_path);
        policy = silva::io::load_policy(policy_path, scenario);
    } catch (const silva::io::ParseError& err) {
        std::cerr << err.what() << '\n';
        return kExitUsage;
    }

    const int L = scenario.age_classes;
    silva::planner::PlanTrajectory traj;
    traj.states.push_back(scenario.initial);
    try {
        for (int t = 0; t < scenario.stages; ++t) {
            // Bounds are relaxed here: a policy file is untrusted input, and
            // its age-bound or stock violations belong in the feasibility
            // report rather than in an exception.
            traj.actions.emplace_back(policy.harvest[static_cast<std::size_t>(t)],
                                      policy.plant[static_cast<std::size_t>(t)], 1, L);
            traj.states.push_back(silva::forest::managed_step(
                traj.states.back(), traj.actions.back(), scenario.transition,
                std::numeric_limits<double>::infinity()));
        }
    } catch (const std::exception& err) {
        std::cerr << "policy: " << err.what() << '\n';
        return kExitUsage;
    }

    traj.objective_value = silva::planner::evaluate_objective(scenario, traj);
    auto [feasible, violations] = silva::planner::check_feasibility(scenario, traj);
    traj.feasible = feasible;
    traj.violations = violations;

    fs::create_directories(out_dir);
    silva::io::write_trajectory_csv(out_dir / "trajectory.csv", traj);
    json summary = stage_totals(scenario, traj);
    summary["status"] = feasible ? "feasible" : "infeasible";
    summary["objective_value"] = traj.objective_value;
    summary["feasible"] = feasible;
    summary["violations"] = violations_to_json(violations);
    write_summary(out_dir, summary);

    std::cout << "status: " << (feasible ? "feasible" : "infeasible")
              << ", objective = " << fixed6(traj.objective_value) << '\n';
    for (const auto& v : violations) {
        if (v.constraint == "harvest_bound") {
            std::cout << "  stage " << v.stage << ": harvest exceeds stock by "
                      << fixed6(v.residual) << '\n';
        } else {
            std::cout << "  stage " << v.stage << ": " << v.constraint << " violated by "
                      << fixed6(v.residual) << '\n';
        }
    }
    return feasible ? kExitOk : kExitInfeasible;
}

int cmd_condorcet(int n) {
    namespace sc = silva::social_choice;
    if (n < 3) {
        std::cerr << "condorcet: need --n of at least 3, got " << n << '\n';
        return kExitUsage;
    }
    const sc::PreferenceProfile profile = sc::condorcet_profile(n);
    std::cout << "candidates: " << n << ", representatives: " << profile.num_representatives()
              << "\nrepresentative preferences:\n";
    for (int rep = 1; rep <= profile.num_representatives(); ++rep) {
        std::cout << "  rep " << rep << ":";
        bool first = true;
        for (const auto& [i, j] : profile.preferences(rep)) {
            std::cout << (first ? " " : ", ") << 'a' << i << " > a" << j;
            first = false;
        }
        std::cout << '\n';
    }
    const sc::MajorityGraph graph = sc::majority_aggregate(profile);
    std::cout << "majority edges (support share):\n";
    for (const auto& edge : graph.edges()) {
        std::cout << "  a" << edge.winner << " > a" << edge.loser << "  [" << edge.support.str()
                  << "]\n";
    }
    if (const auto cycle = sc::find_cycle(graph)) {
        std::cout << "cycle: ";
        for (int c : *cycle) std::cout << 'a' << c << " -> ";
        std::cout << 'a' << cycle->front() << '\n';
    } else {
        std::cout << "cycle: none\n";
    }
    return kExitOk;
}

int cmd_entropy(const std::vector<double>& probs) {
    try {
        const silva::info::DiscreteState state(probs);
        const double h = silva::info::entropy(state);
        const double max_h = std::log2(static_cast<double>(state.size()));
        std::cout << "H = " << fixed6(h) << " bits (max " << fixed6(max_h) << ")\n";
        return kExitOk;
    } catch (const std::invalid_argument& err) {
        std::string message = err.what();
        if (const auto colon = message.find(": "); colon != std::string::npos) {
            message = message.substr(colon + 2);
        }
        std::cerr << "entropy: " << message << '\n';
        return kExitUsage;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"age-structured forest planning workbench"};
    app.require_subcommand(1);

    std::string scenario_arg;
    std::string policy_arg;
    std::string out_arg;
    int candidates = 0;
    std::vector<double> probs;

    CLI::App* plan = app.add_subcommand(
        "plan", "solve a scenario (or every scenario in a directory) for the optimal plan");
    plan->add_option("--scenario", scenario_arg, "scenario JSON file or directory")->required();
    plan->add_option("--out", out_arg, "output directory")->required();

    CLI::App* simulate =
        app.add_subcommand("simulate", "replay a harvest/planting policy through the dynamics");
    simulate->add_option("--scenario", scenario_arg, "scenario JSON file")->required();
    simulate->add_option("--policy", policy_arg, "policy JSON or trajectory CSV")->required();
    simulate->add_option("--out", out_arg, "output directory")->required();

    CLI::App* condorcet =
        app.add_subcommand("condorcet", "build the majority-cycle profile on n candidates");
    condorcet->add_option("--n", candidates, "number of candidates (>= 3)")->required();

    CLI::App* entropy = app.add_subcommand("entropy", "entropy of a discrete distribution, in bits");
    entropy->add_option("probs", probs, "probabilities summing to 1")->expected(-1)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (plan->parsed()) return cmd_plan(scenario_arg, out_arg);
        if (simulate->parsed()) return cmd_simulate(scenario_arg, policy_arg, out_arg);
        if (condorcet->parsed()) return cmd_condorcet(candidates);
        if (entropy->parsed()) return cmd_entropy(probs);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
